#include "unproj/pfaffian.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace unproj {

// ---------------------------------------------------------------- matrices

SkewMatrix::SkewMatrix(Ring ring, int size) : ring_(std::move(ring)), n_(size) {
  if (size < 1) throw Error("skew matrix size must be positive");
}

void SkewMatrix::check_index(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_)
    throw Error("skew matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                ") out of range");
}

Polynomial SkewMatrix::entry(int i, int j) const {
  check_index(i, j);
  if (i == j) return Polynomial(ring_);
  auto it = upper_.find({std::min(i, j), std::max(i, j)});
  if (it == upper_.end()) return Polynomial(ring_);
  return i < j ? it->second : -it->second;
}

void SkewMatrix::set(int i, int j, Polynomial p) {
  check_index(i, j);
  if (i == j) {
    if (!p.is_zero()) throw Error("skew matrix diagonal must be zero");
    return;
  }
  if (!same_ring(p.ring(), ring_)) throw RingMismatch("skew matrix entry from another ring");
  if (i > j) {
    std::swap(i, j);
    p = -p;
  }
  if (p.is_zero())
    upper_.erase({i, j});
  else
    upper_[{i, j}] = std::move(p);
}

PolyMatrix SkewMatrix::materialize() const {
  PolyMatrix m(n_, std::vector<Polynomial>(n_, Polynomial(ring_)));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) m[i - 1][j - 1] = entry(i, j);
  return m;
}

bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
  return a.n_ == b.n_ && same_ring(a.ring_, b.ring_) && a.upper_ == b.upper_;
}

namespace {

Polynomial pf_rec(const SkewMatrix& m, const std::vector<int>& idx) {
  if (idx.empty()) return Polynomial::constant(m.ring(), Rational(1));
  Polynomial acc(m.ring());
  const int a = idx[0];
  for (std::size_t k = 1; k < idx.size(); ++k) {
    Polynomial e = m.entry(a, idx[k]);
    if (e.is_zero()) continue;
    std::vector<int> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    Polynomial term = e * pf_rec(m, rest);
    if (k % 2 == 1)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace

Polynomial pfaffian(const SkewMatrix& m) {
  if (m.size() % 2) throw Error("pfaffian of an odd-size matrix");
  std::vector<int> idx(m.size());
  std::iota(idx.begin(), idx.end(), 1);
  return pf_rec(m, idx);
}

std::vector<Polynomial> maximal_pfaffians(const SkewMatrix& m) {
  if (m.size() != 5) throw Error("maximal_pfaffians expects a 5x5 matrix");
  std::vector<Polynomial> out;
  for (int del = 1; del <= 5; ++del) {
    std::vector<int> idx;
    for (int i = 1; i <= 5; ++i)
      if (i != del) idx.push_back(i);
    out.push_back(pf_rec(m, idx));
  }
  return out;
}

SkewMatrix generic_skew(int size, const FieldSpec& field) {
  std::vector<std::string> names;
  for (int i = 1; i <= size; ++i)
    for (int j = i + 1; j <= size; ++j) names.push_back("m" + std::to_string(i) + std::to_string(j));
  Ring r = RingSpec::make(names, field);
  SkewMatrix m(r, size);
  for (int i = 1; i <= size; ++i)
    for (int j = i + 1; j <= size; ++j)
      m.set(i, j, Polynomial::variable(r, "m" + std::to_string(i) + std::to_string(j)));
  return m;
}

namespace {

void check_perm(const std::array<int, 5>& s) {
  std::array<int, 5> t = s;
  std::sort(t.begin(), t.end());
  for (int i = 0; i < 5; ++i)
    if (t[i] != i + 1) throw Error("not a permutation of 1..5");
}

}  // namespace

SkewMatrix conjugate(const SkewMatrix& m, const std::array<int, 5>& sigma) {
  if (m.size() != 5) throw Error("conjugate expects a 5x5 matrix");
  check_perm(sigma);
  SkewMatrix out(m.ring(), 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) out.set(i, j, m.entry(sigma[i - 1], sigma[j - 1]));
  return out;
}

// ---------------------------------------------------------------- formats

bool VariableCI::contains(const Polynomial& p) const {
  std::array<std::size_t, 4> idx{};
  std::array<bool, 4> present{};
  for (int k = 0; k < 4; ++k) {
    auto i = p.ring()->index_of(generators[k]);
    present[k] = i.has_value();
    if (i) idx[k] = *i;
  }
  for (std::size_t t = 0; t < p.nterms(); ++t) {
    auto e = p.exps(t);
    bool hit = false;
    for (int k = 0; k < 4 && !hit; ++k) hit = present[k] && e[idx[k]] > 0;
    if (!hit) return false;
  }
  return true;
}

bool VariableCI::has(const std::string& var) const {
  return std::find(generators.begin(), generators.end(), var) != generators.end();
}

std::string VariableCI::to_string() const {
  return "(" + generators[0] + "," + generators[1] + "," + generators[2] + "," + generators[3] + ")";
}

FormatKind FormatKind::tom(int i) {
  if (i < 1 || i > 5) throw Error("Tom index out of range");
  return {Kind::Tom, i, 0};
}

FormatKind FormatKind::jerry(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > 5 || i == j) throw Error("Jerry indices out of range");
  return {Kind::Jerry, i, j};
}

FormatKind FormatKind::parse(const std::string& s) {
  std::string digits;
  std::string word;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits += c;
    else if (std::isalpha(static_cast<unsigned char>(c)))
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if ((word == "tom" || word == "t") && digits.size() == 1) return tom(digits[0] - '0');
  if ((word == "jerry" || word == "j") && digits.size() == 2)
    return jerry(digits[0] - '0', digits[1] - '0');
  throw ParseError("unknown format '" + s + "'");
}

bool FormatKind::constrains(int k, int l) const {
  if (kind == Kind::Tom) return k != i && l != i;
  return k == i || k == j || l == i || l == j;
}

std::string FormatKind::to_string() const {
  if (kind == Kind::Tom) return "Tom" + std::to_string(i);
  return "Jerry" + std::to_string(i) + std::to_string(j);
}

FormatKind FormatKind::transformed(const std::array<int, 5>& sigma) const {
  check_perm(sigma);
  std::array<int, 6> inv{};
  for (int a = 1; a <= 5; ++a) inv[sigma[a - 1]] = a;
  if (kind == Kind::Tom) return tom(inv[i]);
  return jerry(inv[i], inv[j]);
}

FormatCheck format_check(const SkewMatrix& m, const VariableCI& j, const FormatKind& f) {
  FormatCheck out;
  for (int k = 1; k <= m.size(); ++k)
    for (int l = k + 1; l <= m.size(); ++l) {
      if (!f.constrains(k, l)) continue;
      if (!j.contains(m.entry(k, l))) {
        out.ok = false;
        out.violations.emplace_back(k, l);
      }
    }
  return out;
}

// ---------------------------------------------------------------- classification

std::string to_string(TripleCase c) {
  switch (c) {
    case TripleCase::TTT: return "TTT";
    case TripleCase::JJJ: return "JJJ";
    case TripleCase::TTJ: return "TTJ";
    case TripleCase::TJJ: return "TJJ";
  }
  return "?";
}

TripleCase parse_triple_case(const std::string& s) {
  std::string u;
  for (char c : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u == "TTT") return TripleCase::TTT;
  if (u == "JJJ") return TripleCase::JJJ;
  if (u == "TTJ") return TripleCase::TTJ;
  if (u == "TJJ") return TripleCase::TJJ;
  throw ParseError("unknown case '" + s + "' (expected TTT, JJJ, TTJ or TJJ)");
}

std::string to_string(const TripleFormats& t) {
  return t[0].to_string() + "+" + t[1].to_string() + "+" + t[2].to_string();
}

TripleFormatSpec triple_constraints(const TripleFormats& formats) {
  TripleFormatSpec s;
  s.formats = formats;
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l) {
      auto& row = s.table[{k, l}];
      for (int t = 0; t < 3; ++t)
        if (formats[t].constrains(k, l)) row.push_back(t + 1);
    }
  return s;
}

namespace {

/// Canonical order of a tuple: formats of the same kind are unordered, so the
/// Tom part and the Jerry part are each sorted.
TripleFormats normalize(TripleFormats t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<TripleFormats> all_tuples(TripleCase c) {
  std::vector<FormatKind> toms, jerries;
  for (int i = 1; i <= 5; ++i) toms.push_back(FormatKind::tom(i));
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) jerries.push_back(FormatKind::jerry(i, j));
  std::vector<TripleFormats> out;
  const std::size_t nt = toms.size(), nj = jerries.size();
  switch (c) {
    case TripleCase::TTT:
      for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = a + 1; b < nt; ++b)
          for (std::size_t d = b + 1; d < nt; ++d) out.push_back({toms[a], toms[b], toms[d]});
      break;
    case TripleCase::JJJ:
      for (std::size_t a = 0; a < nj; ++a)
        for (std::size_t b = a + 1; b < nj; ++b)
          for (std::size_t d = b + 1; d < nj; ++d) out.push_back({jerries[a], jerries[b], jerries[d]});
      break;
    case TripleCase::TTJ:
      for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = a + 1; b < nt; ++b)
          for (std::size_t d = 0; d < nj; ++d) out.push_back({toms[a], toms[b], jerries[d]});
      break;
    case TripleCase::TJJ:
      for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = 0; b < nj; ++b)
          for (std::size_t d = b + 1; d < nj; ++d) out.push_back({toms[a], jerries[b], jerries[d]});
      break;
  }
  return out;
}

/// Representatives in the order the classification lists them.
std::vector<TripleFormats> listed_representatives(TripleCase c) {
  using F = FormatKind;
  switch (c) {
    case TripleCase::TTT: return {{F::tom(1), F::tom(2), F::tom(3)}};
    case TripleCase::JJJ:
      return {{F::jerry(1, 2), F::jerry(1, 3), F::jerry(1, 4)},
              {F::jerry(1, 2), F::jerry(1, 3), F::jerry(2, 3)},
              {F::jerry(1, 2), F::jerry(1, 4), F::jerry(2, 3)},
              {F::jerry(1, 4), F::jerry(1, 5), F::jerry(2, 3)}};
    case TripleCase::TTJ:
      return {{F::tom(1), F::tom(2), F::jerry(1, 2)},
              {F::tom(1), F::tom(2), F::jerry(1, 3)},
              {F::tom(1), F::tom(2), F::jerry(3, 4)}};
    case TripleCase::TJJ:
      return {{F::tom(1), F::jerry(1, 2), F::jerry(1, 3)},
              {F::tom(1), F::jerry(1, 2), F::jerry(2, 3)},
              {F::tom(1), F::jerry(1, 2), F::jerry(3, 4)},
              {F::tom(1), F::jerry(2, 3), F::jerry(2, 4)},
              {F::tom(1), F::jerry(2, 3), F::jerry(4, 5)}};
  }
  return {};
}

}  // namespace

std::size_t triple_count(TripleCase c) { return all_tuples(c).size(); }

std::vector<OrbitClass> enumerate_triple_classes(TripleCase c) {
  auto tuples = all_tuples(c);
  std::array<int, 5> sigma{1, 2, 3, 4, 5};
  std::vector<std::array<int, 5>> perms;
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::set<TripleFormats> seen;
  std::vector<OrbitClass> orbits;
  std::vector<std::set<TripleFormats>> members;
  for (const auto& t : tuples) {
    TripleFormats n = normalize(t);
    if (seen.count(n)) continue;
    std::set<TripleFormats> orbit;
    for (const auto& p : perms)
      orbit.insert(normalize({t[0].transformed(p), t[1].transformed(p), t[2].transformed(p)}));
    seen.insert(orbit.begin(), orbit.end());
    OrbitClass oc;
    oc.which = c;
    oc.canonical = *orbit.begin();
    oc.orbit_size = orbit.size();
    orbits.push_back(oc);
    members.push_back(std::move(orbit));
  }

  auto reps = listed_representatives(c);
  if (reps.size() != orbits.size())
    throw Error("classification of " + to_string(c) + ": found " + std::to_string(orbits.size()) +
                " orbits, expected " + std::to_string(reps.size()));
  std::vector<OrbitClass> ordered;
  std::vector<bool> used(orbits.size(), false);
  for (const auto& r : reps) {
    std::size_t hit = orbits.size();
    for (std::size_t o = 0; o < orbits.size(); ++o)
      if (members[o].count(normalize(r))) {
        if (hit != orbits.size()) throw Error("representative in two orbits");
        hit = o;
      }
    if (hit == orbits.size() || used[hit])
      throw Error("classification of " + to_string(c) + ": representative " + to_string(r) +
                  " does not pick out a new orbit");
    used[hit] = true;
    OrbitClass oc = orbits[hit];
    oc.representative = r;
    ordered.push_back(oc);
  }
  return ordered;
}

// ---------------------------------------------------------------- Tom(1,2,3)

std::array<VariableCI, 3> tom123_ideals() {
  return {VariableCI{{"z2", "z3", "z5", "z7"}}, VariableCI{{"z1", "z2", "z4", "z5"}},
          VariableCI{{"z1", "z2", "z3", "z6"}}};
}

Ring tom123_ring(const FieldSpec& field) {
  std::vector<std::string> names;
  for (int i = 1; i <= 7; ++i) names.push_back("z" + std::to_string(i));
  for (int i = 1; i <= 25; ++i) names.push_back("c" + std::to_string(i));
  return RingSpec::make(names, field);
}

Tom123 build_tom123(const Ring& ring) {
  for (int i = 1; i <= 7; ++i)
    if (!ring->has("z" + std::to_string(i)))
      throw Error("build_tom123: ring lacks z" + std::to_string(i));
  for (int i = 1; i <= 25; ++i)
    if (!ring->has("c" + std::to_string(i)))
      throw Error("build_tom123: ring lacks c" + std::to_string(i));
  // entry -> list of (c index, z index)
  static const std::vector<std::tuple<int, int, std::vector<std::pair<int, int>>>> layout = {
      {1, 2, {{1, 1}, {2, 2}, {3, 3}, {4, 6}}},
      {1, 3, {{5, 1}, {6, 2}, {7, 4}, {8, 5}}},
      {1, 4, {{9, 1}, {10, 2}}},
      {1, 5, {{11, 1}, {12, 2}}},
      {2, 3, {{13, 2}, {14, 3}, {15, 5}, {16, 7}}},
      {2, 4, {{17, 2}, {18, 3}}},
      {2, 5, {{19, 2}, {20, 3}}},
      {3, 4, {{21, 2}, {22, 5}}},
      {3, 5, {{23, 2}, {24, 5}}},
      {4, 5, {{25, 2}}},
  };
  Tom123 out{SkewMatrix(ring, 5), tom123_ideals()};
  for (const auto& [i, j, terms] : layout) {
    Polynomial e(ring);
    for (auto [c, z] : terms)
      e += Polynomial::variable(ring, "c" + std::to_string(c)) *
           Polynomial::variable(ring, "z" + std::to_string(z));
    out.matrix.set(i, j, e);
  }
  return out;
}

GenericTriple generic_triple(const TripleFormats& formats, const FieldSpec& field) {
  auto ideals = tom123_ideals();
  auto spec = triple_constraints(formats);
  // minimal squarefree generators of each needed intersection
  std::map<std::pair<int, int>, std::vector<std::vector<std::string>>> gens;
  std::size_t ncoef = 0;
  for (const auto& [pos, ts] : spec.table) {
    std::vector<std::set<std::string>> prods;
    if (ts.empty()) {
      for (int z = 1; z <= 7; ++z) prods.push_back({"z" + std::to_string(z)});
    } else {
      prods.push_back({});
      for (int t : ts) {
        std::vector<std::set<std::string>> next;
        for (const auto& p : prods)
          for (const auto& g : ideals[t - 1].generators) {
            auto q = p;
            q.insert(g);
            next.push_back(q);
          }
        prods = std::move(next);
      }
      std::sort(prods.begin(), prods.end(),
                [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
      std::vector<std::set<std::string>> minimal;
      for (const auto& p : prods) {
        bool red = false;
        for (const auto& m : minimal)
          if (std::includes(p.begin(), p.end(), m.begin(), m.end())) red = true;
        if (!red) minimal.push_back(p);
      }
      prods = std::move(minimal);
    }
    for (const auto& p : prods) gens[pos].emplace_back(p.begin(), p.end());
    ncoef += prods.size();
  }
  std::vector<std::string> names;
  for (int z = 1; z <= 7; ++z) names.push_back("z" + std::to_string(z));
  for (std::size_t c = 1; c <= ncoef; ++c) names.push_back("c" + std::to_string(c));
  Ring ring = RingSpec::make(names, field);
  GenericTriple out{SkewMatrix(ring, 5), ideals, ncoef};
  std::size_t c = 0;
  for (const auto& [pos, list] : gens) {
    Polynomial e(ring);
    for (const auto& mono : list) {
      Polynomial t = Polynomial::variable(ring, "c" + std::to_string(++c));
      for (const auto& v : mono) t *= Polynomial::variable(ring, v);
      e += t;
    }
    out.matrix.set(pos.first, pos.second, e);
  }
  return out;
}

}  // namespace unproj
