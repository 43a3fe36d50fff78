#include "unproj/fano.hpp"

#include "unproj/rng.hpp"

namespace unproj {

namespace {

std::string suffix(int attempt) { return attempt == 0 ? "" : ".retry" + std::to_string(attempt); }

/// Scalar for `name`: the override when present, otherwise the next draw.
Rational scalar(const ConstructionParams& p, const std::string& name, Rng& rng) {
  Rational drawn(static_cast<unsigned long>(rng.nonzero_mod(p.prime)));
  auto it = p.overrides.find(name);
  return it == p.overrides.end() ? drawn : it->second;
}

/// sum_k l_{first+k} * monos[k]
Polynomial general_form(const Ring& a, const ConstructionParams& p, Rng& rng, int first,
                        const std::vector<std::string>& monos) {
  Polynomial f(a);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    Rational l = scalar(p, "l" + std::to_string(first + static_cast<int>(k)), rng);
    f += Polynomial::constant(a, l) * parse_poly(monos[k], a);
  }
  return f;
}

}  // namespace

const FanoTarget& fano_target(int id) {
  static const FanoTarget t14885{
      14885,
      {"w1", "w2", "w3", "z1", "z2", "z3", "z5", "T", "S", "W"},
      {1, 1, 1, 2, 2, 2, 2, 2, 2, 2},
      {},
      39,
      {1, 0, 0, 0, -20, 0, 64, 0, -90, 0, 64, 0, -20, 0, 0, 0, 1},
      {{2, 8, {1, 1, 1}}}};
  static const FanoTarget t12979{
      12979,
      {"z1", "c5", "c9", "z2", "z3", "z5", "z6", "T", "S", "W"},
      {1, 1, 1, 2, 2, 2, 2, 2, 3, 3},
      {1, 5, 9, 11},
      28,
      {1, 0, 0, 0, -11, -8, 23, 32, -13, -48, -13, 32, 23, -8, -11, 0, 0, 0, 1},
      {{2, 4, {1, 1, 1}}, {3, 2, {1, 1, 2}}}};
  if (id == 14885) return t14885;
  if (id == 12979) return t12979;
  throw Error("unsupported family id " + std::to_string(id) + " (expected 14885 or 12979)");
}

FanoIdeal build_fano_ideal(const ConstructionParams& params, int attempt, const GbBudget& budget) {
  const FanoTarget& target = fano_target(params.id);
  if (!is_prime(params.prime) || params.prime < 3) throw Error("prime must be an odd prime");
  const FieldSpec field = FieldSpec::prime(params.prime);

  // coefficients c_k
  Rng crng = Rng(params.seed).stream("coefficients" + suffix(attempt));
  CoefficientChoice choice;
  for (int k = 1; k <= 25; ++k) {
    Rational v = scalar(params, "c" + std::to_string(k), crng);
    if (!target.symbolic.count(k)) choice.scalars[k] = v;
  }
  UnprojectionRun run = run_tom123_unprojection(field, choice, budget);
  const UnprojectionIdeal& un = run.ideal;
  if (!un.homogeneous) throw Error("unprojection ideal is not homogeneous for this draw");

  FanoIdeal x;
  x.params = params;
  x.retries = attempt;
  x.ambient = RingSpec::make(target.ambient_names, target.ambient_weights, field);
  const Ring& a = x.ambient;

  Rng lrng = Rng(params.seed).stream("forms" + suffix(attempt));
  Substitution psi;
  psi.set_graded(true);
  if (params.id == 14885) {
    const std::vector<std::string> monos = {"z1", "z2", "z3", "z5", "T", "S", "W",
                                            "w1^2", "w1*w2", "w1*w3", "w2^2", "w2*w3", "w3^2"};
    psi.assign("z4", general_form(a, params, lrng, 1, monos));
    psi.assign("z6", general_form(a, params, lrng, 14, monos));
    psi.assign("z7", general_form(a, params, lrng, 27, monos));
  } else {
    psi.assign("c1", general_form(a, params, lrng, 1, {"z1", "c5", "c9"}));
    psi.assign("c11", general_form(a, params, lrng, 4, {"z1", "c5", "c9"}));
    const std::vector<std::string> monos = {"z2",    "z3",    "z5",   "z6",    "T",   "z1^2",
                                            "z1*c5", "z1*c9", "c5^2", "c5*c9", "c9^2"};
    psi.assign("z4", general_form(a, params, lrng, 7, monos));
    psi.assign("z7", general_form(a, params, lrng, 18, monos));
  }
  for (std::size_t i = 0; i < un.generators.size(); ++i) {
    x.generators.push_back(substitute(un.generators[i], psi, a));
    x.labels.push_back(un.labels[i]);
  }
  return x;
}

ConstructedFamily construct_family(const ConstructionParams& params, int max_retries,
                                   const GbBudget& budget) {
  const FanoTarget& target = fano_target(params.id);
  ConstructedFamily out;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    FanoIdeal x = build_fano_ideal(params, attempt, budget);
    GroebnerBasis gb = buchberger(IdealPresentation(x.ambient, x.generators), budget);
    int dim = krull_dimension(gb);
    if (dim != 4) {
      out.rejected.push_back("draw " + std::to_string(attempt) + ": codimension " +
                             std::to_string(10 - dim));
      continue;
    }
    HilbertNumerator h = hilbert_numerator(gb);
    if (h.coefficients != target.numerator) {
      out.rejected.push_back("draw " + std::to_string(attempt) + ": numerator " + h.to_string());
      continue;
    }
    out.ideal = std::move(x);
    out.basis = std::move(gb);
    return out;
  }
  throw Error("no admissible draw for id " + std::to_string(params.id) + " after " +
              std::to_string(max_retries + 1) + " attempts");
}

HilbertReport hilbert_report(const FanoIdeal& x, const GroebnerBasis& basis) {
  HilbertReport r;
  r.dimension = krull_dimension(basis);
  r.codimension = static_cast<int>(x.ambient->nvars()) - r.dimension;
  r.numerator = hilbert_numerator(basis);
  r.palindromic = r.numerator.palindromic();
  r.canonical_twist = static_cast<std::int64_t>(r.numerator.coefficients.size()) - 1;
  for (std::size_t v = 0; v < x.ambient->nvars(); ++v) r.canonical_twist -= x.ambient->weight(v);
  if (x.params.id == 14885 || x.params.id == 12979)
    r.matches_target = r.numerator.coefficients == fano_target(x.params.id).numerator;
  return r;
}

JacobianData jacobian(const FanoIdeal& x) {
  JacobianData j;
  const std::size_t n = x.ambient->nvars();
  j.matrix.assign(n, {});
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& g : x.generators) j.matrix[v].push_back(g.derivative(v));
  return j;
}

bool euler_identity_holds(const FanoIdeal& x, const JacobianData& j) {
  const Ring& a = x.ambient;
  for (std::size_t g = 0; g < x.generators.size(); ++g) {
    const Polynomial& f = x.generators[g];
    auto info = weighted_degree(f);
    if (!info.homogeneous()) return false;
    Polynomial lhs(a);
    for (std::size_t v = 0; v < a->nvars(); ++v)
      lhs += Polynomial::constant(a, a->weight(v)) * Polynomial::variable(a, v) * j.matrix[v][g];
    if (lhs != Polynomial::constant(a, info.degree) * f) return false;
  }
  return true;
}

}  // namespace unproj
