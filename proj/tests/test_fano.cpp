#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "unproj/fano.hpp"
#include "unproj/parallel.hpp"

#include <algorithm>
#include <random>

using namespace unproj;

namespace {

const std::uint64_t kSeeds[] = {1, 2, 3};
const std::uint32_t kPrimes[] = {1021, 32003};

std::uint32_t power(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  for (a %= p; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return static_cast<std::uint32_t>(r);
}

/// d/de f(x + e*e_v) at e = 0 by interpolation through deg+1 evaluations.
std::uint32_t derivative_by_interpolation(const Polynomial& f, std::vector<std::uint32_t> x,
                                          std::size_t v, std::uint32_t p) {
  const std::size_t n = f.degree_in(v) + 1;
  const std::uint32_t base = x[v];
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x[v] = static_cast<std::uint32_t>((base + i) % p);
    const std::uint64_t fi = f.evaluate(x);
    // L_i'(0) = sum_{k != i} (prod_{m != i,k} (0 - m)) / prod_{m != i} (i - m)
    std::uint64_t denom = 1;
    for (std::size_t m = 0; m < n; ++m)
      if (m != i) denom = denom * ((i + p - m) % p) % p;
    std::uint64_t num = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      std::uint64_t t = 1;
      for (std::size_t m = 0; m < n; ++m)
        if (m != i && m != k) t = t * ((p - m % p) % p) % p;
      num = (num + t) % p;
    }
    out = (out + fi * num % p * power(denom, p - 2, p)) % p;
  }
  return static_cast<std::uint32_t>(out);
}

}  // namespace

TEST_CASE("both families have codimension 6 and the target numerator") {
  for (int id : {14885, 12979})
    for (std::uint32_t p : kPrimes)
      for (std::uint64_t seed : kSeeds) {
        ConstructionParams params;
        params.id = id;
        params.prime = p;
        params.seed = seed;
        ConstructedFamily f = construct_family(params);
        CHECK(f.ideal.generators.size() == 20);
        CHECK(f.ideal.ambient->nvars() == 10);
        HilbertReport h = hilbert_report(f.ideal, f.basis);
        CHECK(h.codimension == 6);
        CHECK(h.numerator.coefficients == fano_target(id).numerator);
        CHECK(h.palindromic);
        CHECK(h.matches_target == true);
        CHECK(all_homogeneous(f.ideal.generators));
      }
}

TEST_CASE("construction is reproducible from the seed") {
  ConstructionParams params;
  params.id = 12979;
  params.seed = 5;
  FanoIdeal a = build_fano_ideal(params), b = build_fano_ideal(params);
  REQUIRE(a.generators.size() == b.generators.size());
  for (std::size_t i = 0; i < a.generators.size(); ++i) CHECK(a.generators[i] == b.generators[i]);
  FanoIdeal c = build_fano_ideal(params, 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) differs = differs || a.generators[i] != c.generators[i];
  CHECK(differs);
  CHECK(c.retries == 1);
}

TEST_CASE("overrides replace single scalars and keep the ideal homogeneous") {
  ConstructionParams params;
  params.overrides["c2"] = Rational(7);
  params.overrides["l3"] = Rational(11);
  FanoIdeal a = build_fano_ideal(params);
  CHECK(all_homogeneous(a.generators));
  ConstructionParams plain;
  FanoIdeal b = build_fano_ideal(plain);
  bool differs = false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) differs = differs || a.generators[i] != b.generators[i];
  CHECK(differs);
}

TEST_CASE("unsupported ids and primes are rejected") {
  CHECK_THROWS_AS(fano_target(1), Error);
  ConstructionParams params;
  params.prime = 1000;
  CHECK_THROWS_AS(build_fano_ideal(params), Error);
}

TEST_CASE("Jacobian entries are the partial derivatives") {
  ConstructedFamily f = construct_family({});
  const FanoIdeal& x = f.ideal;
  JacobianData j = jacobian(x);
  REQUIRE(j.matrix.size() == 10);
  REQUIRE(j.matrix[0].size() == 20);
  CHECK(euler_identity_holds(x, j));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint32_t> pt(10);
    for (auto& c : pt) c = rng() % 1021;
    const std::size_t v = rng() % 10, g = rng() % 20;
    CHECK(j.matrix[v][g].evaluate(pt) == derivative_by_interpolation(x.generators[g], pt, v, 1021));
  }
}

TEST_CASE("Euler identity for 12979") {
  ConstructionParams params;
  params.id = 12979;
  FanoIdeal x = build_fano_ideal(params);
  CHECK(euler_identity_holds(x, jacobian(x)));
}

TEST_CASE("the unprojection variable enters T*z2 linearly") {
  auto run = run_tom123_unprojection(FieldSpec::prime(1021), random_choice(1021, 1, {}));
  FanoIdeal x;
  x.ambient = run.ideal.ring;
  x.generators = run.ideal.generators;
  x.labels = run.ideal.labels;
  JacobianData j = jacobian(x);
  const std::size_t t = x.ambient->require_index("T");
  auto it = std::find(x.labels.begin(), x.labels.end(), "T*z2");
  REQUIRE(it != x.labels.end());
  CHECK(j.matrix[t][it - x.labels.begin()] == Polynomial::variable(x.ambient, "z2"));
}

TEST_CASE("filling certificate on small ideals") {
  auto r = RingSpec::make({"x", "y"}, FieldSpec::prime(1021));
  GroebnerBasis gb = buchberger(IdealPresentation(r, {parse_poly("x^2", r)}));
  // (x^2, y^3) contains every monomial of degree >= 4
  CHECK(fills_all_large_degrees(gb, {parse_poly("y^3", r)}) == 4);
  // (x^2, x*y) leaves the line x = 0
  CHECK_FALSE(fills_all_large_degrees(gb, {parse_poly("x*y", r)}).has_value());
  CHECK(fills_all_large_degrees(gb, {parse_poly("1", r)}) == 0);

  auto w = RingSpec::make({"a", "b"}, {1, 2}, FieldSpec::prime(1021));
  GroebnerBasis gw = buchberger(IdealPresentation(w, {parse_poly("a^4 - b^2", w)}));
  CHECK(fills_all_large_degrees(gw, {parse_poly("a*b", w)}).has_value());
  CHECK_FALSE(fills_all_large_degrees(gw, {parse_poly("a^2 - b", w)}).has_value());
}

TEST_CASE("parallel minor evaluation matches the serial reference") {
  ConstructedFamily f = construct_family({});
  JacobianData j = jacobian(f.ideal);
  auto samples = sample_minors(f.ideal, 0, 6, 9);
  for (const auto& s : samples) {
    CHECK(s.row_mix.size() == 6);
    CHECK(s.col_mix.size() == 20);
  }
  set_worker_count(2);
  auto par = evaluate_minors(j, samples, f.basis);
  set_worker_count(0);
  auto ser = evaluate_minors_serial(j, samples, f.basis);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i] == ser[i]);
    CHECK(reduce(par[i], f.basis) == par[i]);
    if (!par[i].is_zero()) CHECK(weighted_degree(par[i]).degree == samples[i].degree);
  }
  // same seed and stream give the same samples
  auto again = sample_minors(f.ideal, 0, 6, 9);
  for (std::size_t i = 0; i < samples.size(); ++i) CHECK(again[i].row_mix == samples[i].row_mix);
}

TEST_CASE("the certificate refuses a degenerate draw") {
  ConstructedFamily f = construct_family({});
  FanoIdeal x = f.ideal;
  x.generators.resize(10);
  GroebnerBasis gb = buchberger(IdealPresentation(x.ambient, x.generators));
  REQUIRE(krull_dimension(gb) != 4);
  CHECK_THROWS_WITH_AS(quasismooth_certificate(x, gb), doctest::Contains("degenerate"), Error);
}

TEST_CASE("orbifold points of 14885") {
  ConstructedFamily f = construct_family({});
  auto report = orbifold_report(f.ideal);
  REQUIRE(report.size() == 1);
  CHECK(report[0].r == 2);
  CHECK(report[0].cone_dimension == 1);
  CHECK(report[0].points == 8);
  CHECK_FALSE(report[0].unstable);
  CHECK(report[0].coprime_rows_vanish);
  CHECK(orbifold_type_string(2, report[0].type) == "1/2(1,1,1)");
}

TEST_CASE("orbifold points of 12979") {
  ConstructionParams params;
  params.id = 12979;
  ConstructedFamily f = construct_family(params);
  auto report = orbifold_report(f.ideal);
  REQUIRE(report.size() == 2);
  CHECK(report[0].points == 4);
  CHECK(orbifold_type_string(2, report[0].type) == "1/2(1,1,1)");
  CHECK(report[1].points == 2);
  CHECK(orbifold_type_string(3, report[1].type) == "1/3(1,1,2)");
}

TEST_CASE("a stratum inside X is a degenerate draw") {
  ConstructedFamily f = construct_family({});
  FanoIdeal x = f.ideal;
  const Polynomial w1 = Polynomial::variable(x.ambient, "w1");
  for (auto& g : x.generators) g = g * w1;
  CHECK_THROWS_WITH_AS(orbifold_report(x), doctest::Contains("degenerate"), Error);
}

TEST_CASE("canonical twist is -1 for both families") {
  for (int id : {14885, 12979}) {
    ConstructionParams params;
    params.id = id;
    ConstructedFamily f = construct_family(params);
    CHECK(hilbert_report(f.ideal, f.basis).canonical_twist == -1);
  }
}
