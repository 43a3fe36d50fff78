#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "unproj/fano.hpp"
#include "unproj/parallel.hpp"
#include "unproj/rng.hpp"

namespace unproj {

namespace {

struct ExpHash {
  std::size_t operator()(const std::vector<Exp>& e) const {
    std::size_t h = 0;
    for (Exp x : e) h = h * 0x9e3779b97f4a7c15ull + x + 1;
    return h;
  }
};

/// Standard monomials of A/Q degree by degree, with index lookup.
class StandardMonomials {
public:
  StandardMonomials(const GroebnerBasis& basis)
      : ring_(basis.ring()), lms_(leading_monomials(basis.elements)) {
    monos_.push_back({std::vector<Exp>(ring_->nvars(), 0)});
    if (is_leading(monos_[0][0])) monos_[0].clear();
    index_.emplace_back();
    if (!monos_[0].empty()) index_[0][monos_[0][0]] = 0;
  }

  const std::vector<std::vector<Exp>>& at(int d) {
    while (static_cast<int>(monos_.size()) <= d) extend();
    return monos_[d];
  }

  std::uint32_t index(int d, const std::vector<Exp>& e) const { return index_[d].at(e); }

private:
  bool is_leading(const std::vector<Exp>& e) const {
    for (const auto& lm : lms_) {
      bool div = true;
      for (std::size_t i = 0; i < e.size() && div; ++i) div = lm[i] <= e[i];
      if (div) return true;
    }
    return false;
  }

  // every divisor of a standard monomial is standard, so degree d comes from
  // multiplying degree d - w_v by x_v
  void extend() {
    const int d = static_cast<int>(monos_.size());
    std::unordered_map<std::vector<Exp>, std::uint32_t, ExpHash> idx;
    std::vector<std::vector<Exp>> out;
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
      const int e = d - ring_->weight(v);
      if (e < 0) continue;
      for (const auto& s : monos_[e]) {
        std::vector<Exp> m = s;
        ++m[v];
        if (idx.count(m) || is_leading(m)) continue;
        idx.emplace(m, static_cast<std::uint32_t>(out.size()));
        out.push_back(std::move(m));
      }
    }
    monos_.push_back(std::move(out));
    index_.push_back(std::move(idx));
  }

  Ring ring_;
  std::vector<Monomial> lms_;
  std::vector<std::vector<std::vector<Exp>>> monos_;
  std::vector<std::unordered_map<std::vector<Exp>, std::uint32_t, ExpHash>> index_;
};

/// Row echelon form over Z/p with lazily reduced 64-bit accumulation.
/// Candidates are first tested against random vectors of the annihilator of
/// the rows (a probe); a candidate on which every probe vanishes is dropped
/// without elimination. Dropping only shrinks the span, and an independent
/// candidate passes the probes with probability 1/p^2.
class Echelon {
public:
  Echelon(std::size_t width, std::uint64_t p) : width_(width), p_(p), pivot_(width, -1) {
    const std::uint64_t sq = (p - 1) * (p - 1);
    lazy_ = std::max<std::uint64_t>(1, (~std::uint64_t{0} - p) / sq / 2);
  }

  bool full() const { return rows_.size() == width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::uint32_t>& row(std::size_t i) const { return rows_[i]; }
  void release() {
    std::vector<std::vector<std::uint32_t>>().swap(rows_);
    std::vector<std::vector<std::uint32_t>>().swap(probes_);
  }

  /// Reduces v (entries < p) and keeps it when independent.
  bool insert(std::vector<std::uint64_t>& v) {
    if (!probes_.empty()) {
      bool zero = true;
      for (const auto& k : probes_) zero = zero && dot(k, v) == 0;
      if (zero) return false;
    }
    if (reduce_and_keep(v)) return true;
    // the probes predate some rows
    if (rows_.size() >= kProbeFrom) refresh_probes();
    return false;
  }

private:
  static constexpr std::size_t kProbes = 2;
  static constexpr std::size_t kProbeFrom = 16;

  bool reduce_and_keep(std::vector<std::uint64_t>& v) {
    std::uint64_t pending = 0;
    for (std::size_t c = 0; c < width_; ++c) {
      std::uint64_t x = v[c] % p_;
      if (!x) continue;
      const long pr = pivot_[c];
      if (pr < 0) {
        const std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(p_));
        std::vector<std::uint32_t> r(width_, 0);
        for (std::size_t k = c; k < width_; ++k) r[k] = static_cast<std::uint32_t>(v[k] % p_ * inv % p_);
        pivot_[c] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(r));
        return true;
      }
      if (++pending >= lazy_) {
        for (std::size_t k = c; k < width_; ++k) v[k] %= p_;
        pending = 1;
      }
      const std::uint64_t f = p_ - x;
      const std::uint32_t* b = rows_[pr].data();
      std::uint64_t* dst = v.data();
      for (std::size_t k = c + 1; k < width_; ++k) dst[k] += f * b[k];
    }
    return false;
  }

  std::uint64_t dot(const std::vector<std::uint32_t>& k, const std::vector<std::uint64_t>& v) const {
    std::uint64_t acc = 0, pending = 0;
    for (std::size_t i = 0; i < width_; ++i) {
      if (!k[i] || !v[i]) continue;
      acc += k[i] * (v[i] % p_);
      if (++pending == lazy_) {
        acc %= p_;
        pending = 0;
      }
    }
    return acc % p_;
  }

  // Random free coordinates, then each pivot coordinate solved from its row,
  // from the last pivot to the first (rows are normalized at the pivot).
  void refresh_probes() {
    Rng rng = Rng(rows_.size()).stream("probes");
    probes_.assign(kProbes, std::vector<std::uint32_t>(width_, 0));
    for (auto& k : probes_) {
      for (std::size_t c = 0; c < width_; ++c)
        if (pivot_[c] < 0) k[c] = rng.nonzero_mod(static_cast<std::uint32_t>(p_));
      for (std::size_t c = width_; c-- > 0;) {
        if (pivot_[c] < 0) continue;
        const auto& r = rows_[pivot_[c]];
        std::uint64_t acc = 0, pending = 0;
        for (std::size_t j = c + 1; j < width_; ++j) {
          if (!r[j] || !k[j]) continue;
          acc += static_cast<std::uint64_t>(r[j]) * k[j];
          if (++pending == lazy_) {
            acc %= p_;
            pending = 0;
          }
        }
        acc %= p_;
        k[c] = static_cast<std::uint32_t>(acc ? p_ - acc : 0);
      }
    }
  }

  std::size_t width_;
  std::uint64_t p_;
  std::uint64_t lazy_;
  std::vector<long> pivot_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::vector<std::uint32_t>> probes_;
};

using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Tracks V_d = ((Q + added)/Q)_d degree by degree. When V_{d - w_v} is full,
/// every monomial of degree d divisible by x_v lies in Q + added, so degree d
/// is examined in A/(Q + (those x_v)), which is much smaller.
class FillingCertifier {
public:
  FillingCertifier(const GroebnerBasis& basis, std::size_t max_columns)
      : ring_(basis.ring()), max_columns_(max_columns) {
    if (!ring_->field().is_prime()) throw Error("quasi-smoothness needs a prime field");
    if (ring_->nvars() > 64) throw Error("filling certificate supports at most 64 variables");
    p_ = ring_->field().characteristic();
    for (std::size_t v = 0; v < ring_->nvars(); ++v) max_weight_ = std::max(max_weight_, ring_->weight(v));
    contexts_.push_back(std::make_unique<Context>(0, basis));
  }

  /// Adds homogeneous polynomials (already reduced modulo Q) and returns the
  /// first d with pieces d .. d+r-1 all full, if any. Above the added degrees
  /// the scan stops once dim (A/(Q + added))_d has not dropped over r degrees.
  std::optional<int> add(const std::vector<Polynomial>& polys) {
    for (const auto& f : polys) {
      if (f.is_zero()) continue;
      auto info = weighted_degree(f);
      if (!info.homogeneous()) throw NotHomogeneous("filling certificate needs homogeneous input");
      if (info.degree < kMaxDegree) added_[static_cast<int>(info.degree)].push_back(f);
    }
    const int top = added_.empty() ? 0 : added_.rbegin()->first;
    std::vector<std::size_t> corank;
    int run = 0;
    for (int d = 0; d < kMaxDegree; ++d) {
      if (static_cast<int>(spaces_.size()) <= d) spaces_.emplace_back();
      std::uint64_t mask = 0;
      for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        const int e = d - ring_->weight(v);
        if (e >= 0 && spaces_[e] && spaces_[e]->full) mask |= std::uint64_t{1} << v;
      }
      const int ctx = context(mask);
      std::unique_ptr<Space>& sp = spaces_[d];
      if (!sp || (!sp->full && sp->ctx != ctx)) {
        const std::size_t width = contexts_[ctx]->std.at(d).size();
        if (width > max_columns_) return std::nullopt;
        sp = std::make_unique<Space>(ctx, width, p_, next_generation_++, ring_->nvars());
      }
      if (!sp->full) fill(d, *sp);
      if (sp->echelon.full() && !sp->full) {
        sp->full = true;
        sp->echelon.release();
      }
      corank.push_back(sp->full ? 0 : contexts_[sp->ctx]->std.at(d).size() - sp->echelon.rank());
      run = sp->full ? run + 1 : 0;
      if (run == max_weight_) return d - max_weight_ + 1;
      if (d > top && d >= max_weight_ && corank[d] > 0 && corank[d] >= corank[d - max_weight_])
        return std::nullopt;
    }
    return std::nullopt;
  }

private:
  static constexpr int kMaxDegree = 400;

  struct Context {
    Context(std::uint64_t m, GroebnerBasis b) : mask(m), gb(std::move(b)), std(gb) {}
    std::uint64_t mask;
    GroebnerBasis gb;
    StandardMonomials std;
  };

  struct Space {
    Space(int c, std::size_t w, std::uint64_t p, std::uint64_t g, std::size_t nvars)
        : ctx(c), generation(g), echelon(w, p), consumed(nvars, {0, 0}) {}
    int ctx;
    /// Distinguishes rebuilt spaces, whose rows are not those of the old one.
    std::uint64_t generation;
    Echelon echelon;
    bool full = false;
    std::size_t added_used = 0;
    /// Per variable: (source generation, source rows already multiplied in).
    std::vector<std::pair<std::uint64_t, std::size_t>> consumed;
  };

  int context(std::uint64_t mask) {
    for (std::size_t i = 0; i < contexts_.size(); ++i)
      if (contexts_[i]->mask == mask) return static_cast<int>(i);
    std::vector<Polynomial> gens = contexts_[0]->gb.elements;
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
      if (mask >> v & 1) gens.push_back(Polynomial::variable(ring_, v));
    contexts_.push_back(std::make_unique<Context>(mask, buchberger(IdealPresentation(ring_, gens))));
    return static_cast<int>(contexts_.size()) - 1;
  }

  void fill(int d, Space& sp) {
    Context& c = *contexts_[sp.ctx];
    auto& added = added_[d];
    for (; sp.added_used < added.size() && !sp.echelon.full(); ++sp.added_used) {
      const Polynomial& f = added[sp.added_used];
      auto v = to_dense(c.mask ? reduce(f, c.gb) : f, c, d);
      sp.echelon.insert(v);
    }
    for (std::size_t var = 0; var < ring_->nvars() && !sp.echelon.full(); ++var) {
      if (c.mask >> var & 1) continue;
      const int e = d - ring_->weight(var);
      if (e < 0 || !spaces_[e]) continue;
      const Space& src = *spaces_[e];
      if (src.full) continue;
      auto& [gen, used] = sp.consumed[var];
      if (gen != src.generation) {
        gen = src.generation;
        used = 0;
      }
      for (; used < src.echelon.rank() && !sp.echelon.full(); ++used) {
        auto v = multiply(src.echelon.row(used), src.ctx, e, var, sp.ctx, d);
        sp.echelon.insert(v);
      }
    }
  }

  std::uint32_t coeff(const Polynomial& f, std::size_t t) const {
    return static_cast<std::uint32_t>(f.coeff(t).get_num().get_ui());
  }

  std::vector<std::uint64_t> to_dense(const Polynomial& f, Context& c, int d) {
    std::vector<std::uint64_t> v(c.std.at(d).size(), 0);
    for (std::size_t t = 0; t < f.nterms(); ++t) {
      auto e = f.exps(t);
      v[c.std.index(d, std::vector<Exp>(e.begin(), e.end()))] = coeff(f, t);
    }
    return v;
  }

  /// Normal forms in context dst of x_var * s for the standard monomials s of
  /// degree e in context src.
  const std::vector<SparseRow>& mult_map(int src, int e, std::size_t var, int dst) {
    auto key = std::make_tuple(src, e, var, dst);
    auto it = mult_.find(key);
    if (it != mult_.end()) return it->second;
    Context& to = *contexts_[dst];
    const int d = e + ring_->weight(var);
    const auto& from = contexts_[src]->std.at(e);
    std::vector<Polynomial> shifted;
    shifted.reserve(from.size());
    for (const auto& s : from) {
      std::vector<Exp> m = s;
      ++m[var];
      shifted.push_back(Polynomial::monomial(ring_, m, Rational(1)));
    }
    std::vector<Polynomial> nf = reduce_all(shifted, to.gb);
    std::vector<SparseRow> rows(from.size());
    for (std::size_t i = 0; i < from.size(); ++i)
      for (std::size_t t = 0; t < nf[i].nterms(); ++t) {
        auto ex = nf[i].exps(t);
        rows[i].emplace_back(to.std.index(d, std::vector<Exp>(ex.begin(), ex.end())), coeff(nf[i], t));
      }
    return mult_[key] = std::move(rows);
  }

  std::vector<std::uint64_t> multiply(const std::vector<std::uint32_t>& b, int src, int e, std::size_t var,
                                      int dst, int d) {
    const auto& m = mult_map(src, e, var, dst);
    std::vector<std::uint64_t> out(contexts_[dst]->std.at(d).size(), 0);
    for (std::size_t s = 0; s < b.size(); ++s) {
      if (!b[s]) continue;
      for (auto [c, x] : m[s]) out[c] = (out[c] + static_cast<std::uint64_t>(b[s]) * x) % p_;
    }
    return out;
  }

  Ring ring_;
  std::size_t max_columns_;
  std::uint64_t p_ = 0;
  int max_weight_ = 1;
  std::vector<std::unique_ptr<Context>> contexts_;
  std::vector<std::unique_ptr<Space>> spaces_;
  std::uint64_t next_generation_ = 1;
  std::map<int, std::vector<Polynomial>> added_;
  std::map<std::tuple<int, int, std::size_t, int>, std::vector<SparseRow>> mult_;
};

Polynomial scaled_sum(const Ring& r, const std::vector<std::uint32_t>& coeffs,
                      const std::vector<const Polynomial*>& polys) {
  Polynomial out(r);
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (coeffs[i] && !polys[i]->is_zero())
      out += polys[i]->scaled(Rational(static_cast<unsigned long>(coeffs[i])));
  return out;
}

/// det(R M C) modulo the basis, by expansion over row subsets with a
/// reduction after every step.
Polynomial evaluate_one(const JacobianData& j, const MinorSample& s, const GroebnerBasis& basis) {
  const Ring& r = basis.ring();
  const std::size_t nv = j.matrix.size();
  const std::size_t ng = nv ? j.matrix[0].size() : 0;
  // RM: 6 x ngens
  std::vector<std::vector<Polynomial>> rm(6, std::vector<Polynomial>(ng, Polynomial(r)));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t g = 0; g < ng; ++g) {
      std::vector<std::uint32_t> c;
      std::vector<const Polynomial*> p;
      for (std::size_t v = 0; v < nv; ++v)
        if (s.row_mix[a][v]) {
          c.push_back(s.row_mix[a][v]);
          p.push_back(&j.matrix[v][g]);
        }
      rm[a][g] = scaled_sum(r, c, p);
    }
  PolyMatrix m(6, std::vector<Polynomial>(6, Polynomial(r)));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<std::uint32_t> c;
      std::vector<const Polynomial*> p;
      for (std::size_t g = 0; g < ng; ++g)
        if (s.col_mix[g][b]) {
          c.push_back(s.col_mix[g][b]);
          p.push_back(&rm[a][g]);
        }
      m[a][b] = reduce(scaled_sum(r, c, p), basis);
    }
  std::vector<Polynomial> dp(64, Polynomial(r));
  dp[0] = Polynomial::constant(r, Rational(1));
  for (unsigned mask = 1; mask < 64; ++mask) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Polynomial acc(r);
    std::size_t pos = 0;
    for (std::size_t col = 0; col < 6; ++col) {
      if (!(mask >> col & 1u)) continue;
      const Polynomial& sub = dp[mask ^ (1u << col)];
      if (!sub.is_zero() && !m[row][col].is_zero()) {
        Polynomial t = m[row][col] * sub;
        if ((row + pos) % 2) acc -= t;
        else acc += t;
      }
      ++pos;
    }
    dp[mask] = reduce(acc, basis);
  }
  return dp[63];
}

}  // namespace

std::vector<MinorPattern> minor_patterns(const FanoIdeal& x) {
  const Ring& a = x.ambient;
  const std::size_t nv = a->nvars(), ng = x.generators.size();
  if (nv < 6 || ng < 6) throw Error("minor sampling needs at least 6 variables and 6 generators");
  std::map<int, int> weights;
  for (std::size_t v = 0; v < nv; ++v) ++weights[a->weight(v)];
  std::map<std::int64_t, int> degrees;
  for (std::size_t g = 0; g < ng; ++g) {
    auto info = weighted_degree(x.generators[g]);
    if (!info.homogeneous()) throw NotHomogeneous("generator " + x.labels.at(g) + " is not homogeneous");
    ++degrees[info.degree];
  }
  // all multisets of size 6 drawn from classes with the given sizes
  auto multisets = [](const auto& classes) {
    using Key = typename std::decay_t<decltype(classes)>::key_type;
    std::vector<std::vector<Key>> out;
    std::vector<Key> cur;
    std::vector<std::pair<Key, int>> cls(classes.begin(), classes.end());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (cur.size() == 6) {
        out.push_back(cur);
        return;
      }
      if (i == cls.size()) return;
      for (int k = 0; k <= cls[i].second && cur.size() + k <= 6; ++k) {
        for (int j = 0; j < k; ++j) cur.push_back(cls[i].first);
        self(self, i + 1);
        cur.resize(cur.size() - k);
      }
    };
    rec(rec, 0);
    return out;
  };
  std::vector<MinorPattern> out;
  for (const auto& rows : multisets(weights))
    for (const auto& cols : multisets(degrees)) {
      MinorPattern m{rows, cols, 0};
      for (auto d : cols) m.degree += d;
      for (auto w : rows) m.degree -= w;
      out.push_back(std::move(m));
    }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.degree < r.degree; });
  return out;
}

std::vector<MinorSample> sample_minors(const FanoIdeal& x, std::size_t first, std::size_t count,
                                       std::uint64_t seed) {
  const Ring& a = x.ambient;
  if (!a->field().is_prime()) throw Error("minor sampling needs a prime field");
  const std::uint32_t p = a->field().characteristic();
  const std::size_t nv = a->nvars(), ng = x.generators.size();
  const auto patterns = minor_patterns(x);
  std::vector<std::int64_t> gdeg(ng);
  for (std::size_t g = 0; g < ng; ++g) gdeg[g] = weighted_degree(x.generators[g]).degree;
  std::vector<MinorSample> out;
  for (std::size_t i = first; i < first + count; ++i) {
    const MinorPattern& pat = patterns[i % patterns.size()];
    Rng rng = Rng(seed).stream("minors." + std::to_string(i));
    MinorSample s;
    s.degree = pat.degree;
    s.row_mix.assign(6, std::vector<std::uint32_t>(nv, 0));
    s.col_mix.assign(ng, std::vector<std::uint32_t>(6, 0));
    for (std::size_t k = 0; k < 6; ++k) {
      for (std::size_t v = 0; v < nv; ++v)
        if (a->weight(v) == pat.row_weights[k]) s.row_mix[k][v] = rng.nonzero_mod(p);
      for (std::size_t g = 0; g < ng; ++g)
        if (gdeg[g] == pat.col_degrees[k]) s.col_mix[g][k] = rng.nonzero_mod(p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Polynomial> evaluate_minors(const JacobianData& j, const std::vector<MinorSample>& s,
                                        const GroebnerBasis& basis) {
  std::vector<Polynomial> out(s.size());
  const long count = static_cast<long>(s.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long i = 0; i < count; ++i) out[i] = evaluate_one(j, s[i], basis);
  return out;
}

std::vector<Polynomial> evaluate_minors_serial(const JacobianData& j,
                                               const std::vector<MinorSample>& s,
                                               const GroebnerBasis& basis) {
  std::vector<Polynomial> out;
  out.reserve(s.size());
  for (const auto& m : s) out.push_back(evaluate_one(j, m, basis));
  return out;
}

std::optional<int> fills_all_large_degrees(const GroebnerBasis& basis,
                                           const std::vector<Polynomial>& extra,
                                           std::size_t max_columns) {
  FillingCertifier c(basis, max_columns);
  return c.add(reduce_all(extra, basis));
}

QuasismoothCertificate quasismooth_certificate(const FanoIdeal& x, const GroebnerBasis& basis,
                                               const QuasismoothBudget& budget, std::uint64_t seed) {
  QuasismoothCertificate cert;
  cert.seed = seed;
  const Ring& a = x.ambient;
  if (!a->field().is_prime()) throw Error("quasi-smoothness certificate needs a prime field");
  cert.prime = a->field().characteristic();
  if (!same_ring(basis.ring(), a)) throw RingMismatch("basis is not over the ambient ring");
  const int dim = krull_dimension(basis);
  if (dim != 4) throw Error("degenerate draw: dim A/Q = " + std::to_string(dim) + ", expected 4");

  const JacobianData j = jacobian(x);
  FillingCertifier filling(basis, budget.max_columns);
  while (cert.minors_used < budget.max_minors) {
    const std::size_t n = std::min(budget.batch, budget.max_minors - cert.minors_used);
    auto samples = sample_minors(x, cert.minors_used, n, seed);
    auto minors = evaluate_minors(j, samples, basis);
    cert.minors_used += n;
    for (const auto& m : minors) cert.minors_nonzero += !m.is_zero();
    if (auto d = filling.add(minors)) {
      cert.conclusive = true;
      cert.certified_degree = *d;
      cert.dimension = *d == 0 ? -1 : 0;
      return cert;
    }
  }
  return cert;
}

}  // namespace unproj
