#ifndef UNPROJ_FIELD_HPP
#define UNPROJ_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace unproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class RingMismatch : public Error {
public:
  using Error::Error;
};

using Rational = mpq_class;

/// Coefficient field: the rationals or Z/p with 2 < p < 2^31, p prime.
class FieldSpec {
public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  static FieldSpec prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::PrimeField; }
  std::uint32_t characteristic() const { return p_; }

  /// "QQ" or "ZZ/p".
  std::string to_string() const;
  /// Accepts "QQ", "ZZ/p" and "GF(p)".
  static FieldSpec parse(const std::string& text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
  FieldSpec(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Inverse of a modulo p by the extended Euclidean algorithm; throws on a = 0.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Arithmetic in Z/p on canonical representatives in [0, p-1].
struct PrimeOps {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p);
  }
  value_type inv(value_type a) const { return inverse_mod(a, p); }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  /// a -= b*c
  void submul(value_type& a, value_type b, value_type c) const { a = sub(a, mul(b, c)); }
  value_type from_rational(const Rational& q) const;
  Rational to_rational(value_type a) const { return Rational(static_cast<unsigned long>(a)); }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
};

struct RationalOps {
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error("division by zero in QQ");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a / b; }
  void submul(value_type& a, const value_type& b, const value_type& c) const { a -= b * c; }
  value_type from_rational(const Rational& q) const { return q; }
  Rational to_rational(const value_type& a) const { return a; }
  value_type from_int(long v) const { return Rational(v); }
};

}  // namespace unproj

#endif  // UNPROJ_FIELD_HPP
