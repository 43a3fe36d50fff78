#ifndef UNPROJ_FANO_HPP
#define UNPROJ_FANO_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unproj/groebner.hpp"
#include "unproj/unprojection.hpp"

namespace unproj {

/// Parameters of one member of a family. Overrides fix individual scalars by
/// name ("c7", "l12") instead of drawing them.
struct ConstructionParams {
  int id = 14885;
  std::uint64_t seed = 1;
  std::uint32_t prime = 1021;
  std::map<std::string, Rational> overrides;
};

/// Fixed data of a supported family.
struct FanoTarget {
  int id = 0;
  std::vector<std::string> ambient_names;
  std::vector<int> ambient_weights;
  /// Coefficients c_k kept as variables before psi.
  std::set<int> symbolic;
  /// Number of scalars l_1..l_n in psi.
  int form_count = 0;
  /// Expected Hilbert numerator, indexed by degree.
  std::vector<std::int64_t> numerator;
  /// Expected orbifold points: (stratum weight r, count, type tag).
  struct Basket {
    int r;
    int count;
    std::vector<int> type;
  };
  std::vector<Basket> baskets;
};

/// Targets for 14885 and 12979; throws Error for other ids.
const FanoTarget& fano_target(int id);

struct FanoIdeal {
  Ring ambient;
  std::vector<Polynomial> generators;
  std::vector<std::string> labels;
  ConstructionParams params;
  /// Number of discarded draws before this one.
  int retries = 0;
};

/// The image under psi of the unprojection ideal, for one draw. `attempt`
/// selects an independent draw from the same seed; no checks are made.
FanoIdeal build_fano_ideal(const ConstructionParams& params, int attempt = 0,
                           const GbBudget& budget = {});

/// build_fano_ideal with re-draws while the codimension is not 6 or the
/// numerator differs from the target.
struct ConstructedFamily {
  FanoIdeal ideal;
  GroebnerBasis basis;
  /// Reasons for each discarded draw.
  std::vector<std::string> rejected;
};

ConstructedFamily construct_family(const ConstructionParams& params, int max_retries = 5,
                                   const GbBudget& budget = {});

struct HilbertReport {
  int dimension = 0;
  int codimension = 0;
  HilbertNumerator numerator;
  bool palindromic = false;
  /// Top numerator degree minus the sum of the weights: the twist k with
  /// omega = (A/Q)(k) for a Gorenstein quotient.
  std::int64_t canonical_twist = 0;
  /// Numerator equals the stored target of params.id.
  std::optional<bool> matches_target;
};

HilbertReport hilbert_report(const FanoIdeal& x, const GroebnerBasis& basis);

/// matrix[v][g] = d generator_g / d variable_v.
struct JacobianData {
  std::vector<std::vector<Polynomial>> matrix;
};

JacobianData jacobian(const FanoIdeal& x);

/// Sum_v w_v x_v dg/dx_v == deg(g) g for every generator.
bool euler_identity_holds(const FanoIdeal& x, const JacobianData& j);

struct QuasismoothBudget {
  std::size_t max_minors = 2000;
  std::size_t batch = 100;
  /// Degrees whose graded piece of A/Q exceeds this size are not examined.
  std::size_t max_columns = 8000;
};

/// One-sided certificate that V(Q + sampled minors) is the vertex only.
struct QuasismoothCertificate {
  std::size_t minors_used = 0;
  /// Sampled minors that are nonzero modulo Q.
  std::size_t minors_nonzero = 0;
  /// 0 once certified (-1 if the sampled ideal is the unit ideal); unset when
  /// inconclusive.
  std::optional<int> dimension;
  /// Q plus the samples contains every monomial of degrees d .. d+r-1 (r the
  /// largest weight), hence of every degree >= d.
  int certified_degree = 0;
  bool conclusive = false;
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
};

/// A sampled element of the ideal of 6x6 Jacobian minors: det(R M C) with M the
/// Jacobian, R mixing variables of one weight per row and C mixing generators
/// of one degree per column. By Cauchy-Binet this is a combination of 6x6
/// minors, and it is homogeneous.
struct MinorSample {
  /// 6 x nvars and ngens x 6, entries in [0, p).
  std::vector<std::vector<std::uint32_t>> row_mix;
  std::vector<std::vector<std::uint32_t>> col_mix;
  std::int64_t degree = 0;
};

/// The weight classes of the 6 rows and the degree classes of the 6 columns of
/// a sampled minor. Samples of one pattern span the minors with those row
/// weights and column degrees.
struct MinorPattern {
  std::vector<int> row_weights;
  std::vector<std::int64_t> col_degrees;
  std::int64_t degree = 0;
};

/// Every pattern allowed by the class sizes, by ascending minor degree.
std::vector<MinorPattern> minor_patterns(const FanoIdeal& x);

/// Samples first .. first+count-1 of the sequence that visits the patterns of
/// minor_patterns round-robin, so pattern k gets its (j+1)-th draw at sample
/// j * patterns + k. Sample i draws its nonzero mixing scalars from the
/// stream "minors.<i>". On a locus of dimension k where only one pattern is
/// nonzero, k + 1 general draws of it have no common zero.
std::vector<MinorSample> sample_minors(const FanoIdeal& x, std::size_t first, std::size_t count,
                                       std::uint64_t seed);

/// The sampled minors reduced modulo the basis of Q, on worker_count() threads.
std::vector<Polynomial> evaluate_minors(const JacobianData& j, const std::vector<MinorSample>& s,
                                        const GroebnerBasis& basis);
/// Single-threaded reference with identical output.
std::vector<Polynomial> evaluate_minors_serial(const JacobianData& j,
                                               const std::vector<MinorSample>& s,
                                               const GroebnerBasis& basis);

/// Adds sampled minors in batches until Q plus the samples is certified to
/// contain all monomials of large degree, by linear algebra in the graded
/// pieces of A/Q over the prime field. Requires a prime field and dim A/Q = 4.
QuasismoothCertificate quasismooth_certificate(const FanoIdeal& x, const GroebnerBasis& basis,
                                               const QuasismoothBudget& budget = {},
                                               std::uint64_t seed = 1);

/// Certificate for an explicit list of homogeneous polynomials: whether
/// basis + extra contains all monomials of degrees d .. d+r-1 for some d with
/// graded piece size at most max_columns.
std::optional<int> fills_all_large_degrees(const GroebnerBasis& basis,
                                           const std::vector<Polynomial>& extra,
                                           std::size_t max_columns = 8000);

struct OrbifoldStratum {
  /// The weight r whose coordinate stratum is examined.
  int r = 0;
  /// Variables left nonzero on the stratum.
  std::vector<std::string> variables;
  /// Krull dimension of the restricted quotient (1 for finitely many points).
  int cone_dimension = 0;
  /// Stabilized Hilbert function value at multiples of r.
  std::int64_t points = 0;
  /// Hilbert function values at the last two multiples examined differ.
  bool unstable = false;
  /// 1/r(a,b,c), empty when the type could not be certified.
  std::vector<int> type;
  /// Jacobian rows of the variables whose weight is prime to r vanish identically on the stratum.
  bool coprime_rows_vanish = false;
};

/// One entry per expected basket of the target (or per singular stratum of the
/// ambient when the id has no target). Throws Error when a stratum meets X in
/// positive dimension.
std::vector<OrbifoldStratum> orbifold_report(const FanoIdeal& x, std::uint64_t seed = 1);

std::string orbifold_type_string(int r, const std::vector<int>& type);

}  // namespace unproj

#endif  // UNPROJ_FANO_HPP
