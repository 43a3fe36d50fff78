#ifndef UNPROJ_POLYNOMIAL_HPP
#define UNPROJ_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unproj/field.hpp"
#include "unproj/ring.hpp"

namespace unproj {

namespace detail {
struct PolyAccess;
}

/// Sparse polynomial in canonical form: terms strictly decreasing in the
/// ring order, no zero coefficients.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, const Rational& c);
  static Polynomial variable(const Ring& ring, std::size_t index);
  static Polynomial variable(const Ring& ring, const std::string& name);
  static Polynomial monomial(const Ring& ring, std::span<const Exp> exps, const Rational& c);
  /// Builds from unordered terms; equal monomials are combined.
  static Polynomial from_terms(const Ring& ring,
                               const std::vector<std::pair<Rational, std::vector<Exp>>>& terms);

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->nvars(); }
  std::size_t nterms() const { return degs_.size(); }
  bool is_zero() const { return degs_.empty(); }
  bool is_constant() const;

  std::span<const Exp> exps(std::size_t i) const {
    return {exps_.data() + i * nvars(), nvars()};
  }
  std::int64_t term_degree(std::size_t i) const { return degs_[i]; }
  /// Coefficient as a rational; prime-field coefficients map to their
  /// representative in [0, p-1].
  Rational coeff(std::size_t i) const;

  Monomial leading_monomial() const;
  Rational leading_coeff() const { return coeff(0); }
  std::int64_t leading_degree() const { return degs_.at(0); }
  /// Largest weighted degree among terms; 0 for the zero polynomial.
  std::int64_t max_degree() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scaled(const Rational& c) const;
  /// Multiplies by c * x^exps.
  Polynomial shifted(std::span<const Exp> exps, const Rational& c) const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  /// Formal partial derivative.
  Polynomial derivative(std::size_t var) const;
  /// Degree in variable var (max exponent), 0 for the zero polynomial.
  Exp degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Evaluation at a point of the prime field; requires a prime-field ring.
  std::uint32_t evaluate(std::span<const std::uint32_t> point) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::size_t memory_terms() const { return nterms(); }

private:
  friend struct detail::PolyAccess;

  Ring ring_;
  std::vector<Exp> exps_;
  std::vector<std::int64_t> degs_;
  std::vector<std::uint32_t> zp_;
  std::vector<Rational> qq_;
};

/// Result of a homogeneity query.
struct DegreeInfo {
  enum class Kind { Zero, Homogeneous, NotHomogeneous };
  Kind kind = Kind::Zero;
  std::int64_t degree = 0;
  /// Distinct degrees present, ascending; filled for NotHomogeneous.
  std::vector<std::int64_t> degrees;

  bool homogeneous() const { return kind != Kind::NotHomogeneous; }
};

DegreeInfo weighted_degree(const Polynomial& p);

/// True iff every polynomial is homogeneous (zero counts as homogeneous).
bool all_homogeneous(std::span<const Polynomial> polys);

Polynomial parse_poly(const std::string& text, const Ring& ring);

/// q with q*d == p; throws Error if d does not divide p.
Polynomial exact_divide(const Polynomial& p, const Polynomial& d);

/// Simultaneous substitution of ring variables by polynomials of a target ring.
class Substitution {
public:
  Substitution() = default;
  Substitution& assign(const std::string& var, Polynomial image);
  Substitution& set_graded(bool g) {
    graded_ = g;
    return *this;
  }
  bool graded() const { return graded_; }
  const std::map<std::string, Polynomial>& assignments() const { return map_; }
  const Polynomial* find(const std::string& var) const;

private:
  std::map<std::string, Polynomial> map_;
  bool graded_ = false;
};

/// Image of p under the ring map defined by s; unassigned variables map to
/// the target variable with the same name. Coefficients are carried into the
/// target field.
Polynomial substitute(const Polynomial& p, const Substitution& s, const Ring& target);

/// Moves p into a ring that contains all of its variables by name.
Polynomial change_ring(const Polynomial& p, const Ring& target);

/// Matrix Q with polys[i] == sum_k Q[i][k] * block[k]; each term of each
/// input must contain exactly one block variable, to the first power.
std::vector<std::vector<Polynomial>> linear_coefficient_matrix(
    std::span<const Polynomial> polys, std::span<const std::string> block);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Determinant by Laplace expansion over column subsets; small sizes only.
Polynomial determinant(const PolyMatrix& m);

}  // namespace unproj

#endif  // UNPROJ_POLYNOMIAL_HPP
