#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "unproj/groebner.hpp"
#include "unproj/unprojection.hpp"

using namespace unproj;

namespace {

const std::uint64_t kSeeds[] = {1, 2, 3};
const std::uint32_t kPrimes[] = {1021, 32003};

}  // namespace

TEST_CASE("generic fundamental calculation over QQ") {
  const GenericTomData& d = generic_fundamental_data();
  const Ring& r = d.ring;
  CHECK(r->nvars() == 32);
  REQUIRE(d.P.size() == 5);
  // P_0 is the pfaffian without row 1, quadratic in both z and m
  CHECK(weighted_degree(d.P[0]).degree == 4);
  for (int i = 1; i < 5; ++i) {
    Polynomial back(r);
    for (int k = 0; k < 4; ++k)
      back += d.Q[i - 1][k] * Polynomial::variable(r, "z" + std::to_string(k + 1));
    CHECK(back == d.P[i]);
  }
  // x_i H_j = x_j H_i for all 16 ordered pairs
  int pairs = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Polynomial xi = Polynomial::variable(r, "x" + std::to_string(i + 1));
      Polynomial xj = Polynomial::variable(r, "x" + std::to_string(j + 1));
      bool ok = true;
      for (int k = 0; k < 4; ++k) ok = ok && xi * d.H[j][k] == xj * d.H[i][k];
      CHECK(ok);
      ++pairs;
    }
  CHECK(pairs == 16);
  REQUIRE(d.g.size() == 4);
  for (int k = 0; k < 4; ++k) {
    for (int z = 1; z <= 4; ++z) CHECK_FALSE(d.g[k].involves(r->require_index("z" + std::to_string(z))));
    // degree 2 in x and 3 in the m's
    std::int64_t xdeg = 0, mdeg = 0;
    for (std::size_t t = 0; t < d.g[k].nterms(); ++t) {
      auto e = d.g[k].exps(t);
      std::int64_t xs = 0, ms = 0;
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (r->name(v)[0] == 'x') xs += e[v];
        if (r->name(v)[0] == 'm') ms += e[v];
      }
      if (t == 0) xdeg = xs, mdeg = ms;
      CHECK(xs == xdeg);
      CHECK(ms == mdeg);
    }
    CHECK(xdeg == 2);
    CHECK(mdeg == 3);
    for (int j = 0; j < 4; ++j)
      CHECK(d.g[k] * Polynomial::variable(r, "x" + std::to_string(j + 1)) == d.H[j][k]);
  }
}

TEST_CASE("generic images are well defined modulo the generic pfaffians") {
  // p_a g_b - p_b g_a lies in the pfaffian ideal of N
  const GenericTomData& d = generic_fundamental_data();
  const Ring& r = d.ring;
  GroebnerBasis gb = buchberger(IdealPresentation(r, d.P));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Polynomial za = Polynomial::variable(r, "z" + std::to_string(a + 1));
      Polynomial zb = Polynomial::variable(r, "z" + std::to_string(b + 1));
      CHECK(in_ideal(za * d.g[b] - zb * d.g[a], gb));
    }
}

TEST_CASE("tom_to_first brings Tom_t to Tom_1") {
  for (int t = 1; t <= 3; ++t)
    CHECK(FormatKind::tom(t).transformed(tom_to_first(t)) == FormatKind::tom(1));
  CHECK_THROWS_AS(tom_to_first(4), Error);
}

TEST_CASE("phi_1 through the chain agrees with the matching route") {
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(1021)}) {
    Ring r = tom123_ring(f);
    Tom123 t = build_tom123(r);
    auto matching = phi_images(t.matrix, t.ideals, 1);
    auto chain = phi1_images_by_chain(f);
    REQUIRE(matching.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(matching[k] == chain[k]);
  }
}

TEST_CASE("gradings of the three specializations") {
  auto all = tom123_grading(CoefficientChoice::all_symbolic());
  CHECK(all.consistent);
  for (int z = 1; z <= 7; ++z) CHECK(all.weights["z" + std::to_string(z)] == 1);

  CoefficientChoice scalar = random_choice(1021, 1, {});
  auto s = tom123_grading(scalar);
  CHECK(s.consistent);
  for (int z = 1; z <= 7; ++z) CHECK(s.weights["z" + std::to_string(z)] == 2);

  auto mixed = tom123_grading(random_choice(1021, 1, {1, 5, 9, 11}));
  CHECK(mixed.consistent);
  CHECK(mixed.weights["z1"] == 1);
  for (int z = 2; z <= 7; ++z) CHECK(mixed.weights["z" + std::to_string(z)] == 2);

  auto bad = tom123_grading(random_choice(1021, 1, {1}));
  CHECK_FALSE(bad.consistent);
}

TEST_CASE("symbolic phi images have degree 7 and T has weight 6") {
  auto d = tom123_unprojection_data(FieldSpec::prime(1021), CoefficientChoice::all_symbolic());
  CHECK(d.graded);
  CHECK(d.phi_homogeneous);
  for (int t = 0; t < 3; ++t) {
    CHECK(d.phi_degree[t] == 6);
    for (const auto& h : d.phi[t]) CHECK(weighted_degree(h).degree == 7);
  }
}

TEST_CASE("phi images are well defined and land in the other ideals") {
  for (std::uint32_t p : kPrimes)
    for (std::uint64_t seed : kSeeds) {
      auto d = tom123_unprojection_data(FieldSpec::prime(p), random_choice(p, seed, {}));
      REQUIRE(d.phi_homogeneous);
      GroebnerBasis gb = buchberger(d.I);
      for (int t = 1; t <= 3; ++t) {
        for (const auto& w : well_definedness_witnesses(d, t)) CHECK(in_ideal(w, gb));
        for (int s = 1; s <= 3; ++s) {
          if (s == t) continue;
          for (const auto& h : d.phi[t - 1]) CHECK(d.ideals[s - 1].contains(h));
        }
      }
    }
}

TEST_CASE("split_over_variables reconstructs its input") {
  Ring r = RingSpec::make({"a", "b", "c", "d", "e"}, FieldSpec::prime(1021));
  VariableCI j{{"a", "b", "c", "d"}};
  Polynomial u = parse_poly("a^2*e + 3*b*c - d*e^2 + a*b", r);
  auto b = split_over_variables(u, j);
  Polynomial back(r);
  for (int k = 0; k < 4; ++k) back += b[k] * Polynomial::variable(r, j.generators[k]);
  CHECK(back == u);
  CHECK_THROWS_AS(split_over_variables(parse_poly("a + e^2", r), j), NotInIdeal);
}

TEST_CASE("couplings hold on every generator and do not depend on the lift") {
  auto d = tom123_unprojection_data(FieldSpec::prime(1021), random_choice(1021, 7, {}));
  GroebnerBasis gb = buchberger(d.I);
  for (int s = 1; s <= 3; ++s)
    for (int t = 1; t <= 3; ++t) {
      if (s == t) continue;
      Coupling c = compute_coupling(d, gb, s, t);
      CHECK(c.verified);
      auto info = weighted_degree(c.A);
      CHECK(info.homogeneous());
      CHECK(info.degree == d.phi_degree[s - 1] + d.phi_degree[t - 1]);
      // a second lift, through the last generator, gives the same class
      const auto& gens = d.ideals[t - 1].generators;
      Polynomial p4 = Polynomial::variable(d.ring, gens[3]);
      Polynomial u = apply_phi(d, s, d.phi[t - 1][3]);
      std::vector<Polynomial> target{p4};
      Polynomial a2 = lift_cofactors(u, target, gb)[0];
      CHECK(in_ideal((a2 - c.A) * Polynomial::variable(d.ring, gens[0]), gb));
    }
}

TEST_CASE("symbolic couplings have degree 12") {
  auto run = run_tom123_unprojection(FieldSpec::prime(1021), CoefficientChoice::all_symbolic());
  CHECK(weighted_degree(run.a12.A).degree == 12);
  CHECK(weighted_degree(run.a13.A).degree == 12);
  CHECK(weighted_degree(run.a23.A).degree == 12);
  CHECK(run.ideal.generators.size() == 20);
  CHECK(run.ideal.homogeneous);
}

TEST_CASE("the unprojection ideal has 20 generators and codimension 6") {
  for (std::uint64_t seed : kSeeds) {
    auto run = run_tom123_unprojection(FieldSpec::prime(1021), random_choice(1021, seed, {}));
    const auto& u = run.ideal;
    CHECK(u.generators.size() == 20);
    CHECK(u.labels.size() == 20);
    CHECK(u.homogeneous);
    CHECK(u.ring->nvars() == 10);
    GroebnerBasis gb = buchberger(IdealPresentation(u.ring, u.generators));
    CHECK(krull_dimension(gb) == 4);
  }
}

TEST_CASE("pfaffian stage Hilbert numerator") {
  auto d = tom123_unprojection_data(FieldSpec::prime(1021), random_choice(1021, 1, {}));
  HilbertNumerator h = hilbert_numerator(buchberger(d.I));
  CHECK(h.to_string() == "1 - 5*t^4 + 5*t^6 - t^10");
  // codimension 3: the numerator is anti-symmetric
  const auto& c = h.coefficients;
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == -c[c.size() - 1 - i]);
}

TEST_CASE("dimension count for the pfaffian ideal and the pairwise sums") {
  DimensionCount c = tom123_dimension_count(FieldSpec::prime(1021));
  CHECK(c.specialized_dimension == 14);
  CHECK(c.dim_R_mod_I == 29);
  for (int k = 0; k < 3; ++k) {
    CHECK(c.dim_mod_J[k] == 28);
    CHECK(c.dim_mod_pair[k] == 26);
    CHECK(c.codim_pair[k] == 3);
  }
}
