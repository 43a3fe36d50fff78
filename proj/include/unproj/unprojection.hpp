#ifndef UNPROJ_UNPROJECTION_HPP
#define UNPROJ_UNPROJECTION_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unproj/groebner.hpp"
#include "unproj/pfaffian.hpp"

namespace unproj {

/// Fundamental calculation for the generic Tom_1 matrix N in J = (z1,z2,z3,z4),
/// over QQ in k[x1..x4, z1..z4, m<ij>_<k>].
struct GenericTomData {
  Ring ring;
  SkewMatrix N;
  /// P[i] is the pfaffian with row/column i+1 deleted, i = 0..4.
  std::vector<Polynomial> P;
  /// (P1..P4)^t = Q (z1..z4)^t
  PolyMatrix Q;
  /// H[i][j]: (-1)^(j+1) times the minor of Q without row i and column j (0-based here).
  std::array<std::vector<Polynomial>, 4> H;
  /// g = H_j / x_j, independent of j
  std::vector<Polynomial> g;
};

/// Name of the generic coefficient m_ij^k, e.g. "m23_1".
std::string generic_coeff_name(int i, int j, int k);

/// Computes and certifies the data; throws Error if an identity fails.
GenericTomData compute_generic_fundamental_data();

/// Cached copy of compute_generic_fundamental_data().
const GenericTomData& generic_fundamental_data();

/// How the coefficients c1..c25 of Tom(1,2,3) are treated: each is either a
/// field scalar or kept as a ring variable.
struct CoefficientChoice {
  std::map<int, Rational> scalars;

  bool symbolic(int c) const { return !scalars.count(c); }
  static CoefficientChoice all_symbolic() { return {}; }
};

/// Grading derived from a coefficient choice: symbolic c's have weight 1,
/// z_i has weight 1 when every coefficient next to it is symbolic and 2
/// otherwise. The Tom(1,2,3) entries are then homogeneous of degree 2.
struct Tom123Grading {
  std::map<std::string, int> weights;
  /// False when some entry is not homogeneous under these weights.
  bool consistent = true;
};

Tom123Grading tom123_grading(const CoefficientChoice& choice);

/// Tom(1,2,3) data in k[z1..z7, symbolic c's] with the derived grading.
struct TripleUnprojectionData {
  Ring ring;
  CoefficientChoice choice;
  bool graded = true;
  SkewMatrix matrix;
  std::array<VariableCI, 3> ideals;
  IdealPresentation I;
  /// phi[t][k] is the image of the k-th generator of J_{t+1}.
  std::array<std::vector<Polynomial>, 3> phi;
  /// deg h - deg p, the same for the four generators when homogeneous.
  std::array<std::int64_t, 3> phi_degree{};
  bool phi_homogeneous = true;
};

/// Builds the data; the phi images come from the matching route.
TripleUnprojectionData tom123_unprojection_data(const FieldSpec& field,
                                                const CoefficientChoice& choice);

/// Images of the generators of J_t (t = 1..3) obtained by conjugating Tom(1,2,3)
/// into Tom_1 form and substituting its entries into the generic g.
std::vector<Polynomial> phi_images(const SkewMatrix& tom123, const std::array<VariableCI, 3>& ideals,
                                   int t);

/// The phi_1 images through the three-step chain N -> D1 -> D2 -> Tom(1,2,3):
/// relabel, set eleven coefficients to zero, then substitute the x's and
/// rename the c's. Ring: tom123_ring over the given field.
std::vector<Polynomial> phi1_images_by_chain(const FieldSpec& field);

/// Permutation used to bring the Tom_t structure to Tom_1 (1-based images).
std::array<int, 5> tom_to_first(int t);

/// p_a h_b - p_b h_a for all pairs a < b (six per t).
std::vector<Polynomial> well_definedness_witnesses(const TripleUnprojectionData& d, int t);

/// Cofactors expressing u in J_s: u must lie in the ideal of J_s's variables;
/// returns b with u == sum b_k p_k exactly.
std::vector<Polynomial> split_over_variables(const Polynomial& u, const VariableCI& j);

/// phi_s applied to u in J_s (any representative works modulo I).
Polynomial apply_phi(const TripleUnprojectionData& d, int s, const Polynomial& u);

struct Coupling {
  int s = 0, t = 0;
  Polynomial r;
  Polynomial A;
  /// A p - phi_s(phi_t(p)) reduced to zero for all four generators p of J_t.
  bool verified = false;
};

/// A_st with phi_s(phi_t(p)) = A_st p mod I for p in J_t (r_st = 0).
Coupling compute_coupling(const TripleUnprojectionData& d, const GroebnerBasis& gbI, int s, int t,
                          const GbBudget& budget = {});

struct UnprojectionIdeal {
  Ring ring;
  std::vector<Polynomial> generators;
  /// "pf1".."pf5", "T*z2", ..., "T*S"
  std::vector<std::string> labels;
  bool homogeneous = false;
};

/// The 20 generators: 5 pfaffians, 12 relations T p - phi_1(p), S q - phi_2(q),
/// W r - phi_3(r), and T S - A12, T W - A13, S W - A23. T, S, W get weights
/// phi_degree.
UnprojectionIdeal build_unprojection_ideal(const TripleUnprojectionData& d, const Coupling& a12,
                                           const Coupling& a13, const Coupling& a23);

/// Everything above with r = 0 and the default budget.
struct UnprojectionRun {
  TripleUnprojectionData data;
  GroebnerBasis gbI;
  Coupling a12, a13, a23;
  UnprojectionIdeal ideal;
};

UnprojectionRun run_tom123_unprojection(const FieldSpec& field, const CoefficientChoice& choice,
                                        const GbBudget& budget = {});

/// Coefficients c_k drawn uniformly from 1..p-1 for every k not in `symbolic`.
CoefficientChoice random_choice(std::uint32_t p, std::uint64_t seed, const std::set<int>& symbolic,
                                const std::string& stream = "coefficients");

/// The fifteen coefficients set to zero in the dimension count for I.
const std::vector<int>& dimension_count_zero_coefficients();

struct DimensionCount {
  /// Krull dimension of the 17-variable specialized quotient.
  int specialized_dimension = 0;
  /// Upper bound dim R/I <= specialized + 15 and lower bound 32 - 3.
  int dim_R_mod_I = 0;
  std::array<int, 3> dim_mod_J{};
  /// dim of R/(I + J_t + J_s) for (1,2), (1,3), (2,3)
  std::array<int, 3> dim_mod_pair{};
  std::array<int, 3> codim_pair{};
};

DimensionCount tom123_dimension_count(const FieldSpec& field);

}  // namespace unproj

#endif  // UNPROJ_UNPROJECTION_HPP
