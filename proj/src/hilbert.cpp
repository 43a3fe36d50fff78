#include <algorithm>
#include <bit>

#include "unproj/groebner.hpp"

namespace unproj {

// ---------------------------------------------------------------- dimension

namespace {

/// Smallest number of variables meeting every support set (branch and bound).
class HittingSet {
public:
  explicit HittingSet(std::vector<std::uint64_t> edges) : edges_(std::move(edges)) {}

  int solve(int upper) {
    best_ = upper;
    search(0, 0);
    return best_;
  }

private:
  void search(std::uint64_t chosen, int size) {
    if (size >= best_) return;
    // first edge not yet hit, preferring the smallest
    const std::uint64_t* pick = nullptr;
    int pick_size = 65;
    for (const auto& e : edges_) {
      if (e & chosen) continue;
      int s = std::popcount(e);
      if (s < pick_size) {
        pick_size = s;
        pick = &e;
      }
    }
    if (!pick) {
      best_ = size;
      return;
    }
    if (size + 1 >= best_) return;
    std::uint64_t e = *pick;
    while (e) {
      std::uint64_t bit = e & (~e + 1);
      search(chosen | bit, size + 1);
      e ^= bit;
    }
  }

  std::vector<std::uint64_t> edges_;
  int best_ = 0;
};

}  // namespace

int krull_dimension_of_monomials(const std::vector<Monomial>& lms, std::size_t nvars) {
  if (nvars > 64) throw Error("krull_dimension: more than 64 variables");
  std::vector<std::uint64_t> edges;
  for (const auto& m : lms) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m[i]) s |= std::uint64_t{1} << i;
    if (s == 0) return -1;  // unit ideal: empty quotient
    edges.push_back(s);
  }
  std::sort(edges.begin(), edges.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::uint64_t> minimal;
  for (auto e : edges) {
    bool redundant = false;
    for (auto m : minimal)
      if ((m & e) == m) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(e);
  }
  const int cover = HittingSet(minimal).solve(static_cast<int>(nvars) + 1);
  return static_cast<int>(nvars) - cover;
}

int krull_dimension(const GroebnerBasis& basis) {
  return krull_dimension_of_monomials(leading_monomials(basis.elements), basis.ring()->nvars());
}

// ---------------------------------------------------------------- Hilbert series

namespace {

using Series = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("Hilbert numerator overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("Hilbert numerator overflow");
  return r;
}

void add_into(Series& acc, const Series& s, std::int64_t shift) {
  if (acc.size() < s.size() + shift) acc.resize(s.size() + shift, 0);
  for (std::size_t i = 0; i < s.size(); ++i) acc[i + shift] = checked_add(acc[i + shift], s[i]);
}

Series mul(const Series& a, const Series& b) {
  Series r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

void trim(Series& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

using Mono = std::vector<Exp>;

class HilbertSplitter {
public:
  explicit HilbertSplitter(const std::vector<int>& w) : w_(w), n_(w.size()) {}

  std::int64_t degree(const Mono& m) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += static_cast<std::int64_t>(m[i]) * w_[i];
    return d;
  }

  static bool divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

  static std::vector<Mono> minimalize(std::vector<Mono> g) {
    std::sort(g.begin(), g.end(), [](const Mono& a, const Mono& b) {
      int sa = 0, sb = 0;
      for (auto e : a) sa += e;
      for (auto e : b) sb += e;
      if (sa != sb) return sa < sb;
      return a < b;
    });
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<Mono> out;
    for (auto& m : g) {
      bool red = false;
      for (const auto& o : out)
        if (divides(o, m)) {
          red = true;
          break;
        }
      if (!red) out.push_back(std::move(m));
    }
    return out;
  }

  /// Numerator for k[x]/(gens), gens minimal.
  Series numerator(const std::vector<Mono>& gens) {
    // base case: pairwise coprime generators
    bool coprime = true;
    std::vector<int> count(n_, 0);
    for (const auto& m : gens)
      for (std::size_t i = 0; i < n_; ++i)
        if (m[i]) ++count[i];
    for (int c : count)
      if (c > 1) coprime = false;
    if (coprime) {
      Series r{1};
      for (const auto& m : gens) {
        Series f(degree(m) + 1, 0);
        f[0] = 1;
        f.back() = -1;
        r = mul(r, f);
      }
      return r;
    }
    // pivot: most frequent variable, median exponent among generators using it
    std::size_t x = 0;
    for (std::size_t i = 1; i < n_; ++i)
      if (count[i] > count[x]) x = i;
    std::vector<Exp> es;
    Exp pure = 0;
    for (const auto& m : gens) {
      if (!m[x]) continue;
      es.push_back(m[x]);
      bool is_pure = true;
      for (std::size_t i = 0; i < n_; ++i)
        if (i != x && m[i]) is_pure = false;
      if (is_pure) pure = m[x];
    }
    std::sort(es.begin(), es.end());
    Exp e = es[es.size() / 2];
    if (pure && e >= pure) e = pure - 1;
    if (e == 0) e = 1;
    Mono p(n_, 0);
    p[x] = e;

    std::vector<Mono> sum = gens;
    sum.push_back(p);
    sum = minimalize(std::move(sum));

    std::vector<Mono> quot;
    quot.reserve(gens.size());
    for (const auto& m : gens) {
      Mono q = m;
      q[x] = q[x] > e ? q[x] - e : 0;
      quot.push_back(std::move(q));
    }
    quot = minimalize(std::move(quot));

    Series r = numerator(sum);
    add_into(r, numerator(quot), static_cast<std::int64_t>(e) * w_[x]);
    return r;
  }

private:
  std::vector<int> w_;
  std::size_t n_;
};

}  // namespace

HilbertNumerator hilbert_numerator_of_monomials(const std::vector<Monomial>& gens,
                                                const std::vector<int>& weights) {
  std::vector<Mono> g;
  for (const auto& m : gens) {
    if (m.size() != weights.size()) throw Error("hilbert numerator: monomial arity mismatch");
    g.push_back(m.exps);
  }
  HilbertSplitter h(weights);
  HilbertNumerator out;
  out.weights = weights;
  out.coefficients = h.numerator(HilbertSplitter::minimalize(std::move(g)));
  trim(out.coefficients);
  return out;
}

HilbertNumerator hilbert_numerator(const GroebnerBasis& basis) {
  for (const auto& g : basis.ideal.generators())
    if (!weighted_degree(g).homogeneous())
      throw NotHomogeneous("hilbert_numerator: generator " + g.to_string() + " is not homogeneous");
  return hilbert_numerator_of_monomials(leading_monomials(basis.elements), basis.ring()->weights());
}

bool HilbertNumerator::palindromic() const {
  const auto& c = coefficients;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != c[c.size() - 1 - i]) return false;
  return true;
}

std::vector<std::int64_t> HilbertNumerator::hilbert_function(int upto) const {
  std::vector<std::int64_t> s(upto + 1, 0);
  for (std::size_t i = 0; i < coefficients.size() && static_cast<int>(i) <= upto; ++i)
    s[i] = coefficients[i];
  for (int w : weights)
    for (int d = w; d <= upto; ++d) s[d] = checked_add(s[d], s[d - w]);
  return s;
}

std::string HilbertNumerator::to_string() const {
  std::string out;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    std::int64_t c = coefficients[d];
    if (!c) continue;
    std::int64_t a = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (d == 0) {
      out += std::to_string(a);
    } else {
      if (a != 1) out += std::to_string(a) + "*";
      out += d == 1 ? std::string("t") : "t^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace unproj
