#ifndef UNPROJ_GROEBNER_HPP
#define UNPROJ_GROEBNER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unproj/polynomial.hpp"

namespace unproj {

/// A computation ran past its configured resource caps.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class NotInIdeal : public Error {
public:
  using Error::Error;
};

class NotHomogeneous : public Error {
public:
  using Error::Error;
};

/// Generators of an ideal; zero generators are dropped.
class IdealPresentation {
public:
  IdealPresentation() = default;
  IdealPresentation(Ring ring, std::vector<Polynomial> gens);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

private:
  Ring ring_;
  std::vector<Polynomial> gens_;
};

struct GbBudget {
  /// Cap on the total number of terms stored in the basis.
  std::size_t max_basis_terms = 50000;
  /// Cap on the number of S-pairs reduced.
  std::size_t max_pairs = 2000000;
};

struct GbStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t pairs_skipped = 0;
};

struct GroebnerBasis {
  IdealPresentation ideal;
  std::vector<Polynomial> elements;
  bool reduced = false;
  GbStats stats;

  const Ring& ring() const { return ideal.ring(); }
  std::size_t total_terms() const;
};

/// Reduced Groebner basis by Buchberger's algorithm with the normal (sugar)
/// strategy and the Gebauer-Moeller criteria. Single-threaded and
/// deterministic for a fixed generator order.
GroebnerBasis buchberger(const IdealPresentation& ideal, const GbBudget& budget = {});

struct DivisionRecord {
  /// quotients[i] belongs to divisors[i].
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Full multivariate division: each term is reduced by the first divisor
/// whose leading monomial divides it. f == sum q_i d_i + remainder.
DivisionRecord divide(const Polynomial& f, std::span<const Polynomial> divisors);

/// Division by the basis elements, with quotients.
DivisionRecord normal_form(const Polynomial& f, const GroebnerBasis& basis);

/// Remainder only; cheaper than normal_form.
Polynomial reduce(const Polynomial& f, const GroebnerBasis& basis);

/// Remainders of many polynomials against one basis, reduced concurrently by
/// worker_count() OpenMP threads. Results are in input order and identical to
/// reduce_all_serial.
std::vector<Polynomial> reduce_all(std::span<const Polynomial> fs, const GroebnerBasis& basis);
std::vector<Polynomial> reduce_all_serial(std::span<const Polynomial> fs,
                                          const GroebnerBasis& basis);

bool in_ideal(const Polynomial& f, const GroebnerBasis& basis);

/// Cofactors b with f - sum b_i targets[i] in the modulus ideal. Tries greedy
/// division by [targets, modulus] first and falls back to a cofactor-tracking
/// basis of targets + modulus. Throws NotInIdeal when no such b exists.
std::vector<Polynomial> lift_cofactors(const Polynomial& f, std::span<const Polynomial> targets,
                                       const GroebnerBasis& modulus,
                                       const GbBudget& budget = {});

/// True iff every S-polynomial of basis pairs reduces to zero.
bool spair_certificate(std::span<const Polynomial> basis);

/// Dimension of R/I from the leading-term ideal: n minus the smallest set of
/// variables meeting the support of every leading monomial.
int krull_dimension(const GroebnerBasis& basis);
int krull_dimension_of_monomials(const std::vector<Monomial>& lms, std::size_t nvars);

struct HilbertNumerator {
  /// coefficients[d] multiplies t^d; trailing zeros trimmed.
  std::vector<std::int64_t> coefficients;
  /// one factor (1 - t^w) per ring variable
  std::vector<int> weights;

  bool palindromic() const;
  /// Values of the Hilbert function in degrees 0..upto.
  std::vector<std::int64_t> hilbert_function(int upto) const;
  /// "1 - 20*t^4 + ..."
  std::string to_string() const;
  bool operator==(const HilbertNumerator&) const = default;
};

/// Numerator of the Hilbert series of R/(monomials) by pivot splitting.
HilbertNumerator hilbert_numerator_of_monomials(const std::vector<Monomial>& gens,
                                                const std::vector<int>& weights);

/// Requires homogeneous generators.
HilbertNumerator hilbert_numerator(const GroebnerBasis& basis);

std::vector<Monomial> leading_monomials(std::span<const Polynomial> polys);

}  // namespace unproj

#endif  // UNPROJ_GROEBNER_HPP
