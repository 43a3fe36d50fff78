#include "unproj/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "unproj/detail/poly_access.hpp"

namespace unproj {

using detail::PolyAccess;
using detail::TermWriter;
using detail::with_field;

namespace {

void check_same(const Polynomial& a, const Polynomial& b, const char* op) {
  if (!a.ring() || !b.ring()) throw RingMismatch(std::string(op) + ": polynomial without ring");
  if (!same_ring(a.ring(), b.ring()))
    throw RingMismatch(std::string(op) + ": operands live in different rings");
}

inline Exp add_exp(Exp a, Exp b) {
  unsigned s = static_cast<unsigned>(a) + b;
  if (s > 0xFFFFu) throw Error("exponent overflow");
  return static_cast<Exp>(s);
}

template <class F>
Polynomial merge(const Polynomial& a, const Polynomial& b, const F& f, bool subtract) {
  Polynomial out(a.ring());
  PolyAccess::reserve(out, a.nterms() + b.nterms());
  TermWriter<F> w(out, f);
  const auto& ca = PolyAccess::coeffs<F>(a);
  const auto& cb = PolyAccess::coeffs<F>(b);
  const std::size_t n = a.nvars();
  const Exp* ea = PolyAccess::exps(a).data();
  const Exp* eb = PolyAccess::exps(b).data();
  std::size_t i = 0, j = 0;
  while (i < a.nterms() || j < b.nterms()) {
    int c;
    if (i == a.nterms())
      c = -1;
    else if (j == b.nterms())
      c = 1;
    else
      c = compare_monomials(ea + i * n, a.term_degree(i), eb + j * n, b.term_degree(j), n);
    if (c > 0) {
      w.push(ea + i * n, a.term_degree(i), ca[i]);
      ++i;
    } else if (c < 0) {
      w.push(eb + j * n, b.term_degree(j), subtract ? f.neg(cb[j]) : cb[j]);
      ++j;
    } else {
      w.push(ea + i * n, a.term_degree(i), subtract ? f.sub(ca[i], cb[j]) : f.add(ca[i], cb[j]));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Sorts a buffer of unsorted terms and combines equal monomials.
template <class F>
Polynomial canonicalize(const Ring& ring, const std::vector<Exp>& exps,
                        const std::vector<std::int64_t>& degs,
                        const std::vector<typename F::value_type>& cs, const F& f) {
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> idx(degs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return compare_monomials(exps.data() + x * n, degs[x], exps.data() + y * n, degs[y], n) > 0;
  });
  Polynomial out(ring);
  PolyAccess::reserve(out, idx.size());
  TermWriter<F> w(out, f);
  std::size_t k = 0;
  while (k < idx.size()) {
    std::size_t first = idx[k];
    typename F::value_type c = cs[first];
    std::size_t m = k + 1;
    while (m < idx.size() &&
           compare_monomials(exps.data() + first * n, degs[first], exps.data() + idx[m] * n,
                             degs[idx[m]], n) == 0) {
      c = f.add(c, cs[idx[m]]);
      ++m;
    }
    w.push(exps.data() + first * n, degs[first], c);
    k = m;
  }
  return out;
}

template <class F>
Polynomial multiply(const Polynomial& a, const Polynomial& b, const F& f) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  const std::size_t n = a.nvars();
  const auto& ca = PolyAccess::coeffs<F>(a);
  const auto& cb = PolyAccess::coeffs<F>(b);
  if (a.nterms() == 1 || b.nterms() == 1) {
    // single-term factor preserves the order of the other one
    const Polynomial& one = a.nterms() == 1 ? a : b;
    const Polynomial& many = a.nterms() == 1 ? b : a;
    const auto& co = a.nterms() == 1 ? ca : cb;
    const auto& cm = a.nterms() == 1 ? cb : ca;
    Polynomial out(a.ring());
    PolyAccess::reserve(out, many.nterms());
    TermWriter<F> w(out, f);
    std::vector<Exp> e(n);
    auto eo = one.exps(0);
    for (std::size_t i = 0; i < many.nterms(); ++i) {
      auto em = many.exps(i);
      for (std::size_t v = 0; v < n; ++v) e[v] = add_exp(em[v], eo[v]);
      w.push(e.data(), many.term_degree(i) + one.term_degree(0), f.mul(cm[i], co[0]));
    }
    return out;
  }
  std::vector<Exp> exps(a.nterms() * b.nterms() * n);
  std::vector<std::int64_t> degs(a.nterms() * b.nterms());
  std::vector<typename F::value_type> cs(a.nterms() * b.nterms());
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.nterms(); ++i) {
    auto ei = a.exps(i);
    for (std::size_t j = 0; j < b.nterms(); ++j, ++k) {
      auto ej = b.exps(j);
      Exp* dst = exps.data() + k * n;
      for (std::size_t v = 0; v < n; ++v) dst[v] = add_exp(ei[v], ej[v]);
      degs[k] = a.term_degree(i) + b.term_degree(j);
      cs[k] = f.mul(ca[i], cb[j]);
    }
  }
  return canonicalize(a.ring(), exps, degs, cs, f);
}

std::string coeff_text(const Rational& c) { return c.get_str(); }

}  // namespace

// ---------------------------------------------------------------- builders

Polynomial Polynomial::constant(const Ring& ring, const Rational& c) {
  std::vector<Exp> zero(ring->nvars(), 0);
  return monomial(ring, zero, c);
}

Polynomial Polynomial::variable(const Ring& ring, std::size_t index) {
  if (index >= ring->nvars()) throw Error("variable index out of range");
  std::vector<Exp> e(ring->nvars(), 0);
  e[index] = 1;
  return monomial(ring, e, Rational(1));
}

Polynomial Polynomial::variable(const Ring& ring, const std::string& name) {
  return variable(ring, ring->require_index(name));
}

Polynomial Polynomial::monomial(const Ring& ring, std::span<const Exp> exps, const Rational& c) {
  if (exps.size() != ring->nvars()) throw Error("monomial arity does not match ring");
  Polynomial out(ring);
  with_field(*ring, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    TermWriter<F> w(out, f);
    w.push(exps.data(), ring->degree(exps), f.from_rational(c));
  });
  return out;
}

Polynomial Polynomial::from_terms(const Ring& ring,
                                  const std::vector<std::pair<Rational, std::vector<Exp>>>& terms) {
  const std::size_t n = ring->nvars();
  return with_field(*ring, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    std::vector<Exp> exps;
    std::vector<std::int64_t> degs;
    std::vector<typename F::value_type> cs;
    exps.reserve(terms.size() * n);
    for (const auto& [c, e] : terms) {
      if (e.size() != n) throw Error("term arity does not match ring");
      exps.insert(exps.end(), e.begin(), e.end());
      degs.push_back(ring->degree(e));
      cs.push_back(f.from_rational(c));
    }
    return canonicalize(ring, exps, degs, cs, f);
  });
}

// ---------------------------------------------------------------- queries

bool Polynomial::is_constant() const {
  return is_zero() || (nterms() == 1 && degs_[0] == 0 &&
                       std::all_of(exps_.begin(), exps_.end(), [](Exp e) { return e == 0; }));
}

Rational Polynomial::coeff(std::size_t i) const {
  if (i >= nterms()) throw Error("term index out of range");
  if (ring_->field().is_prime()) return Rational(static_cast<unsigned long>(zp_[i]));
  return qq_[i];
}

Monomial Polynomial::leading_monomial() const {
  if (is_zero()) throw Error("zero polynomial has no leading monomial");
  auto e = exps(0);
  return Monomial{std::vector<Exp>(e.begin(), e.end())};
}

std::int64_t Polynomial::max_degree() const {
  if (is_zero()) return 0;
  return *std::max_element(degs_.begin(), degs_.end());
}

Exp Polynomial::degree_in(std::size_t var) const {
  Exp d = 0;
  for (std::size_t i = 0; i < nterms(); ++i) d = std::max(d, exps_[i * nvars() + var]);
  return d;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) return false;
  return a.exps_ == b.exps_ && a.degs_ == b.degs_ && a.zp_ == b.zp_ && a.qq_ == b.qq_;
}

// ---------------------------------------------------------------- arithmetic

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  with_field(*ring_, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    for (auto& c : PolyAccess::coeffs<F>(out)) c = f.neg(c);
  });
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  check_same(a, b, "add");
  return with_field(*a.ring(), [&](const auto& f) { return merge(a, b, f, false); });
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  check_same(a, b, "subtract");
  return with_field(*a.ring(), [&](const auto& f) { return merge(a, b, f, true); });
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same(a, b, "multiply");
  return with_field(*a.ring(), [&](const auto& f) { return multiply(a, b, f); });
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(ring_);
  with_field(*ring_, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    auto s = f.from_rational(c);
    if (f.is_zero(s)) return;
    out = *this;
    for (auto& x : PolyAccess::coeffs<F>(out)) x = f.mul(x, s);
  });
  return out;
}

Polynomial Polynomial::shifted(std::span<const Exp> e, const Rational& c) const {
  return *this * monomial(ring_, e, c);
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return with_field(*ring_, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    Polynomial out = *this;
    auto& cs = PolyAccess::coeffs<F>(out);
    auto inv = f.inv(cs[0]);
    for (auto& x : cs) x = f.mul(x, inv);
    return out;
  });
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars()) throw Error("derivative: variable index out of range");
  return with_field(*ring_, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    // d/dx keeps the relative order of the surviving terms only within a
    // degree, so rebuild canonically.
    std::vector<Exp> exps;
    std::vector<std::int64_t> degs;
    std::vector<typename F::value_type> cs;
    const auto& src = PolyAccess::coeffs<F>(*this);
    for (std::size_t i = 0; i < nterms(); ++i) {
      auto e = this->exps(i);
      if (e[var] == 0) continue;
      std::size_t at = exps.size();
      exps.insert(exps.end(), e.begin(), e.end());
      exps[at + var] -= 1;
      degs.push_back(degs_[i] - ring_->weight(var));
      cs.push_back(f.mul(src[i], f.from_int(static_cast<long>(e[var]))));
    }
    return canonicalize(ring_, exps, degs, cs, f);
  });
}

std::uint32_t Polynomial::evaluate(std::span<const std::uint32_t> point) const {
  if (!ring_->field().is_prime()) throw Error("evaluate: prime-field ring required");
  if (point.size() != nvars()) throw Error("evaluate: point arity does not match ring");
  PrimeOps f{ring_->field().characteristic()};
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < nterms(); ++i) {
    std::uint32_t t = zp_[i];
    auto e = exps(i);
    for (std::size_t v = 0; v < nvars() && t; ++v)
      for (Exp k = 0; k < e[v]; ++k) t = f.mul(t, point[v] % f.p);
    acc = f.add(acc, t);
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (!ring_ || is_zero()) return "0";
  std::string out;
  const bool prime = ring_->field().is_prime();
  const std::uint32_t p = ring_->field().characteristic();
  for (std::size_t i = 0; i < nterms(); ++i) {
    Rational c = prime ? Rational(static_cast<unsigned long>(zp_[i])) : qq_[i];
    if (prime && zp_[i] > p / 2) c = -Rational(static_cast<unsigned long>(p - zp_[i]));
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = monomial_to_string(*ring_, exps(i));
    if (mono == "1")
      out += coeff_text(c);
    else if (c == 1)
      out += mono;
    else
      out += coeff_text(c) + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------- degree

DegreeInfo weighted_degree(const Polynomial& p) {
  DegreeInfo info;
  if (p.is_zero()) return info;
  std::set<std::int64_t> ds;
  for (std::size_t i = 0; i < p.nterms(); ++i) ds.insert(p.term_degree(i));
  if (ds.size() == 1) {
    info.kind = DegreeInfo::Kind::Homogeneous;
    info.degree = *ds.begin();
    info.degrees = {info.degree};
  } else {
    info.kind = DegreeInfo::Kind::NotHomogeneous;
    info.degrees.assign(ds.begin(), ds.end());
  }
  return info;
}

bool all_homogeneous(std::span<const Polynomial> polys) {
  return std::all_of(polys.begin(), polys.end(),
                     [](const Polynomial& p) { return weighted_degree(p).homogeneous(); });
}

// ---------------------------------------------------------------- parsing

namespace {

class PolyParser {
public:
  PolyParser(const std::string& text, const Ring& ring) : ring_(ring) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  Polynomial parse() {
    if (s_.empty()) throw ParseError("empty polynomial");
    std::vector<std::pair<Rational, std::vector<Exp>>> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto term = parse_term();
      if (sign < 0) term.first = -term.first;
      terms.push_back(std::move(term));
    }
    try {
      return Polynomial::from_terms(ring_, terms);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why +
                     " in '" + s_ + "'");
  }

  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  bool at_ident() const {
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }

  mpz_class parse_int() {
    std::size_t b = pos_;
    while (at_digit()) ++pos_;
    if (b == pos_) fail("expected integer");
    return mpz_class(s_.substr(b, pos_ - b));
  }

  std::pair<Rational, std::vector<Exp>> parse_term() {
    Rational coeff(1);
    std::vector<Exp> exps(ring_->nvars(), 0);
    bool any = false;
    while (true) {
      if (at_digit()) {
        mpz_class num = parse_int();
        mpz_class den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
          ++pos_;
          den = parse_int();
          if (den == 0) fail("zero denominator");
        }
        coeff *= Rational(num, den);
        coeff.canonicalize();
      } else if (at_ident()) {
        std::size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          ++pos_;
        std::string name = s_.substr(b, pos_ - b);
        auto idx = ring_->index_of(name);
        if (!idx) {
          pos_ = b;
          fail("unknown variable '" + name + "'");
        }
        unsigned long e = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          mpz_class ez = parse_int();
          if (ez > 0xFFFF) fail("exponent too large");
          e = ez.get_ui();
        }
        unsigned long total = exps[*idx] + e;
        if (total > 0xFFFF) fail("exponent too large");
        exps[*idx] = static_cast<Exp>(total);
      } else {
        fail(pos_ < s_.size() ? std::string("unexpected character '") + s_[pos_] + "'"
                              : std::string("unexpected end of input"));
      }
      any = true;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      // juxtaposition "3x" is accepted as a product
      if (at_ident()) continue;
      break;
    }
    if (!any) fail("empty term");
    return {coeff, exps};
  }

  std::string s_;
  std::size_t pos_ = 0;
  Ring ring_;
};

}  // namespace

Polynomial parse_poly(const std::string& text, const Ring& ring) {
  return PolyParser(text, ring).parse();
}

// ---------------------------------------------------------------- division

Polynomial exact_divide(const Polynomial& p, const Polynomial& d) {
  check_same(p, d, "exact_divide");
  if (d.is_zero()) throw Error("exact_divide: division by zero");
  return with_field(*p.ring(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    const std::size_t n = p.nvars();
    const auto lc_inv = f.inv(PolyAccess::coeffs<F>(d)[0]);
    auto ld = d.exps(0);
    Polynomial rem = p;
    std::vector<Exp> qe;
    std::vector<std::int64_t> qd;
    std::vector<typename F::value_type> qc;
    std::vector<Exp> shift(n);
    while (!rem.is_zero()) {
      auto lr = rem.exps(0);
      if (!divides(ld.data(), lr.data(), n))
        throw Error("exact_divide: division is not exact (remainder has leading term " +
                    monomial_to_string(*p.ring(), lr) + ")");
      for (std::size_t v = 0; v < n; ++v) shift[v] = lr[v] - ld[v];
      auto c = f.mul(PolyAccess::coeffs<F>(rem)[0], lc_inv);
      qe.insert(qe.end(), shift.begin(), shift.end());
      qd.push_back(rem.term_degree(0) - d.term_degree(0));
      qc.push_back(c);
      Polynomial term(p.ring());
      TermWriter<F>(term, f).push(shift.data(), qd.back(), c);
      rem = merge(rem, multiply(term, d, f), f, true);
    }
    return canonicalize(p.ring(), qe, qd, qc, f);
  });
}

// ---------------------------------------------------------------- substitution

Substitution& Substitution::assign(const std::string& var, Polynomial image) {
  if (!map_.emplace(var, std::move(image)).second)
    throw Error("substitution assigns '" + var + "' twice");
  return *this;
}

const Polynomial* Substitution::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

Rational carry_coefficient(const Rational& c, const FieldSpec& from, const FieldSpec& to) {
  if (from.is_prime() && !(to == from))
    throw Error("cannot move coefficients from " + from.to_string() + " to " + to.to_string());
  return c;
}

}  // namespace

Polynomial substitute(const Polynomial& p, const Substitution& s, const Ring& target) {
  const RingSpec& src = *p.ring();
  const std::size_t n = src.nvars();
  std::vector<Polynomial> images(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < p.nterms(); ++i) {
    auto e = p.exps(i);
    for (std::size_t v = 0; v < n; ++v)
      if (e[v]) used[v] = true;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const std::string& name = src.name(v);
    if (const Polynomial* img = s.find(name)) {
      if (!same_ring(img->ring(), target))
        throw RingMismatch("substitution image of '" + name + "' is not in the target ring");
      if (s.graded()) {
        auto info = weighted_degree(*img);
        if (!info.homogeneous() ||
            (info.kind == DegreeInfo::Kind::Homogeneous && info.degree != src.weight(v)))
          throw Error("graded substitution: image of '" + name + "' is not homogeneous of degree " +
                      std::to_string(src.weight(v)));
      }
      images[v] = *img;
    } else if (used[v]) {
      auto idx = target->index_of(name);
      if (!idx) throw Error("substitution leaves '" + name + "' unassigned and the target lacks it");
      if (s.graded() && target->weight(*idx) != src.weight(v))
        throw Error("graded substitution: weight of '" + name + "' differs in the target");
      images[v] = Polynomial::variable(target, *idx);
    }
  }
  // powers cache per variable
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t v, Exp e) -> const Polynomial& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(Polynomial::constant(target, Rational(1)));
    while (pw.size() <= e) pw.push_back(pw.back() * images[v]);
    return pw[e];
  };
  Polynomial acc(target);
  std::vector<Polynomial> parts;
  parts.reserve(p.nterms());
  for (std::size_t i = 0; i < p.nterms(); ++i) {
    Polynomial t = Polynomial::constant(target, carry_coefficient(p.coeff(i), src.field(), target->field()));
    auto e = p.exps(i);
    for (std::size_t v = 0; v < n && !t.is_zero(); ++v)
      if (e[v]) t = t * power(v, e[v]);
    parts.push_back(std::move(t));
  }
  // pairwise summation keeps merges balanced
  while (parts.size() > 1) {
    std::vector<Polynomial> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return parts.empty() ? acc : parts.front();
}

Polynomial change_ring(const Polynomial& p, const Ring& target) {
  if (same_ring(p.ring(), target)) return p;
  const RingSpec& src = *p.ring();
  std::vector<std::optional<std::size_t>> map(src.nvars());
  for (std::size_t v = 0; v < src.nvars(); ++v) map[v] = target->index_of(src.name(v));
  std::vector<std::pair<Rational, std::vector<Exp>>> terms;
  terms.reserve(p.nterms());
  for (std::size_t i = 0; i < p.nterms(); ++i) {
    std::vector<Exp> e(target->nvars(), 0);
    auto se = p.exps(i);
    for (std::size_t v = 0; v < src.nvars(); ++v) {
      if (!se[v]) continue;
      if (!map[v]) throw Error("change_ring: target lacks variable '" + src.name(v) + "'");
      e[*map[v]] = se[v];
    }
    terms.emplace_back(carry_coefficient(p.coeff(i), src.field(), target->field()), std::move(e));
  }
  return Polynomial::from_terms(target, terms);
}

// ---------------------------------------------------------------- linear blocks

std::vector<std::vector<Polynomial>> linear_coefficient_matrix(std::span<const Polynomial> polys,
                                                               std::span<const std::string> block) {
  std::vector<std::vector<Polynomial>> q;
  if (polys.empty()) return q;
  const Ring& ring = polys.front().ring();
  std::vector<std::size_t> bidx;
  for (const auto& b : block) bidx.push_back(ring->require_index(b));
  for (const auto& p : polys) {
    if (!same_ring(p.ring(), ring)) throw RingMismatch("linear_coefficient_matrix: mixed rings");
    std::vector<std::vector<std::pair<Rational, std::vector<Exp>>>> row(block.size());
    for (std::size_t i = 0; i < p.nterms(); ++i) {
      auto e = p.exps(i);
      int hits = 0;
      std::size_t which = 0;
      int bdeg = 0;
      for (std::size_t k = 0; k < bidx.size(); ++k) {
        if (e[bidx[k]]) {
          ++hits;
          which = k;
          bdeg += e[bidx[k]];
        }
      }
      if (hits != 1 || bdeg != 1)
        throw Error("linear_coefficient_matrix: term " + monomial_to_string(*ring, e) +
                    " has block-degree " + std::to_string(bdeg));
      std::vector<Exp> rest(e.begin(), e.end());
      rest[bidx[which]] = 0;
      row[which].emplace_back(p.coeff(i), std::move(rest));
    }
    std::vector<Polynomial> qrow;
    for (auto& terms : row) qrow.push_back(Polynomial::from_terms(ring, terms));
    q.push_back(std::move(qrow));
  }
  return q;
}

Polynomial determinant(const PolyMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) throw Error("determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != k) throw Error("determinant: matrix is not square");
  if (k > 20) throw Error("determinant: size too large for subset expansion");
  const Ring& ring = m[0][0].ring();
  std::vector<Polynomial> dp(std::size_t{1} << k, Polynomial(ring));
  dp[0] = Polynomial::constant(ring, Rational(1));
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t rows = static_cast<std::size_t>(std::popcount(mask));
    const std::size_t r = rows - 1;
    Polynomial acc(ring);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask >> j & 1u)) continue;
      const Polynomial& sub = dp[mask ^ (std::size_t{1} << j)];
      if (!m[r][j].is_zero() && !sub.is_zero()) {
        Polynomial t = m[r][j] * sub;
        if ((r + pos) % 2) acc -= t;
        else acc += t;
      }
      ++pos;
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

}  // namespace unproj
