#include "unproj/field.hpp"

#include <cctype>

namespace unproj {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p <= 2 || p >= (1u << 31) || !unproj::is_prime(p))
    throw Error("prime field characteristic must be an odd prime below 2^31, got " +
                std::to_string(p));
  return FieldSpec(Kind::PrimeField, p);
}

std::string FieldSpec::to_string() const {
  return kind_ == Kind::Rationals ? std::string("QQ") : "ZZ/" + std::to_string(p_);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "QQ") return rationals();
  std::string digits;
  if (t.rfind("ZZ/", 0) == 0) {
    digits = t.substr(3);
  } else if (t.rfind("GF(", 0) == 0 && t.size() > 4 && t.back() == ')') {
    digits = t.substr(3, t.size() - 4);
  } else {
    throw ParseError("unknown field '" + text + "'");
  }
  if (digits.empty() || digits.size() > 10) throw ParseError("bad characteristic in '" + text + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad characteristic in '" + text + "'");
  std::uint64_t p = std::stoull(digits);
  if (p >= (1ull << 31)) throw ParseError("characteristic too large in '" + text + "'");
  return prime(static_cast<std::uint32_t>(p));
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  if (r1 == 0) throw Error("zero has no inverse modulo " + std::to_string(p));
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw Error("element not invertible modulo " + std::to_string(p));
  std::int64_t v = s0 % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(v < 0 ? v + p : v);
}

PrimeOps::value_type PrimeOps::from_rational(const Rational& q) const {
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0)
    throw Error("coefficient " + q.get_str() + " has denominator divisible by " + std::to_string(p));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return mul(n, inverse_mod(d, p));
}

}  // namespace unproj
