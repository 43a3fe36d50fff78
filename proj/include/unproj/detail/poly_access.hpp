#ifndef UNPROJ_DETAIL_POLY_ACCESS_HPP
#define UNPROJ_DETAIL_POLY_ACCESS_HPP

#include <type_traits>

#include "unproj/polynomial.hpp"

namespace unproj::detail {

/// Raw access to the flat term storage for the algebra kernels.
struct PolyAccess {
  static std::vector<Exp>& exps(Polynomial& p) { return p.exps_; }
  static const std::vector<Exp>& exps(const Polynomial& p) { return p.exps_; }
  static std::vector<std::int64_t>& degs(Polynomial& p) { return p.degs_; }
  static const std::vector<std::int64_t>& degs(const Polynomial& p) { return p.degs_; }

  template <class F>
  static auto& coeffs(Polynomial& p) {
    if constexpr (std::is_same_v<F, PrimeOps>)
      return p.zp_;
    else
      return p.qq_;
  }
  template <class F>
  static const auto& coeffs(const Polynomial& p) {
    if constexpr (std::is_same_v<F, PrimeOps>)
      return p.zp_;
    else
      return p.qq_;
  }

  static void reserve(Polynomial& p, std::size_t n) {
    p.exps_.reserve(n * p.nvars());
    p.degs_.reserve(n);
  }
};

template <class Fn>
decltype(auto) with_field(const RingSpec& ring, Fn&& fn) {
  if (ring.field().is_prime()) return fn(PrimeOps{ring.field().characteristic()});
  return fn(RationalOps{});
}

/// Appends terms in strictly decreasing order; zero coefficients are dropped.
template <class F>
class TermWriter {
public:
  TermWriter(Polynomial& p, const F& f) : p_(p), f_(f) {}

  void push(const Exp* e, std::int64_t deg, const typename F::value_type& c) {
    if (f_.is_zero(c)) return;
    auto& ex = PolyAccess::exps(p_);
    ex.insert(ex.end(), e, e + p_.nvars());
    PolyAccess::degs(p_).push_back(deg);
    PolyAccess::coeffs<F>(p_).push_back(c);
  }

private:
  Polynomial& p_;
  const F& f_;
};

}  // namespace unproj::detail

#endif  // UNPROJ_DETAIL_POLY_ACCESS_HPP
