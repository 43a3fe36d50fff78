#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "unproj/fano.hpp"
#include "unproj/groebner.hpp"
#include "unproj/pfaffian.hpp"
#include "unproj/unprojection.hpp"

using namespace unproj;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int n, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) o.require(false, "runtime over " + std::to_string(static_cast<int>(limit_s)) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %2d %-40s %8.1f s%s%s\n", o.ok ? "PASS" : "FAIL", n, name, s,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

const std::uint64_t kSeeds[] = {1, 2, 3};
const std::uint32_t kPrimes[] = {1021, 32003};

Polynomial var(const Ring& r, const std::string& name) { return Polynomial::variable(r, name); }

void pfaffian_formulas(Outcome& o) {
  auto g = generic_skew(5, FieldSpec::rationals());
  auto pfs = maximal_pfaffians(g);
  const char* printed[] = {
      "m23*m45 - m24*m35 + m25*m34", "m13*m45 - m14*m35 + m15*m34", "m12*m45 - m14*m25 + m15*m24",
      "m12*m35 - m13*m25 + m15*m23", "m12*m34 - m13*m24 + m14*m23"};
  o.require(pfs.size() == 5, "five pfaffians");
  for (int i = 0; i < 5 && i < static_cast<int>(pfs.size()); ++i)
    o.require(pfs[i] == parse_poly(printed[i], g.ring()), "pfaffian " + std::to_string(i + 1));
}

void classification(Outcome& o) {
  const std::pair<TripleCase, std::size_t> want[] = {
      {TripleCase::TTT, 1}, {TripleCase::JJJ, 4}, {TripleCase::TTJ, 3}, {TripleCase::TJJ, 5}};
  for (auto [c, n] : want) o.require(enumerate_triple_classes(c).size() == n, to_string(c) + " count");
  const std::vector<std::string> reps = {
      "Tom1+Tom2+Tom3",          "Jerry12+Jerry13+Jerry14", "Jerry12+Jerry13+Jerry23",
      "Jerry12+Jerry14+Jerry23", "Jerry14+Jerry15+Jerry23", "Tom1+Tom2+Jerry12",
      "Tom1+Tom2+Jerry13",       "Tom1+Tom2+Jerry34",       "Tom1+Jerry12+Jerry13",
      "Tom1+Jerry12+Jerry23",    "Tom1+Jerry12+Jerry34",    "Tom1+Jerry23+Jerry24",
      "Tom1+Jerry23+Jerry45"};
  std::vector<std::string> got;
  for (auto c : {TripleCase::TTT, TripleCase::JJJ, TripleCase::TTJ, TripleCase::TJJ})
    for (const auto& cls : enumerate_triple_classes(c)) got.push_back(to_string(cls.representative));
  o.require(got == reps, "representatives");
}

void fundamental(Outcome& o) {
  const GenericTomData& d = compute_generic_fundamental_data();
  const Ring& r = d.ring;
  o.require(d.P.size() == 5 && d.Q.size() == 4 && d.H.size() == 4 && d.g.size() == 4, "shapes");
  for (int i = 1; i < 5; ++i) {
    Polynomial back(r);
    for (int k = 0; k < 4; ++k) back += d.Q[i - 1][k] * var(r, "z" + std::to_string(k + 1));
    o.require(back == d.P[i], "Q extraction row " + std::to_string(i));
  }
  int pairs = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool ok = true;
      for (int k = 0; k < 4; ++k)
        ok = ok && var(r, "x" + std::to_string(i + 1)) * d.H[j][k] ==
                       var(r, "x" + std::to_string(j + 1)) * d.H[i][k];
      o.require(ok, "x_i H_j pair");
      pairs += ok;
    }
  o.require(pairs == 16, "16 pairs");
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j)
      o.require(d.g[k] * var(r, "x" + std::to_string(j + 1)) == d.H[j][k], "g x_j = H_j");
}

void dimension_count(Outcome& o) {
  DimensionCount c = tom123_dimension_count(FieldSpec::prime(1021));
  o.require(c.specialized_dimension == 14, "dimension " + std::to_string(c.specialized_dimension));
  for (int k = 0; k < 3; ++k)
    o.require(c.codim_pair[k] == 3, "pair codimension " + std::to_string(c.codim_pair[k]));
}

void well_defined(Outcome& o) {
  int instances = 0;
  for (std::uint32_t p : kPrimes)
    for (std::uint64_t seed : kSeeds) {
      auto d = tom123_unprojection_data(FieldSpec::prime(p), random_choice(p, seed, {}));
      GroebnerBasis gb = buchberger(d.I);
      for (int t = 1; t <= 3; ++t) {
        for (const auto& w : well_definedness_witnesses(d, t)) o.require(in_ideal(w, gb), "witness");
        for (int s = 1; s <= 3; ++s)
          if (s != t)
            for (const auto& h : d.phi[t - 1]) o.require(d.ideals[s - 1].contains(h), "inclusion");
      }
      ++instances;
    }
  o.require(instances == 6, "instances");
}

void unprojection_ideal(Outcome& o) {
  for (std::uint64_t seed : kSeeds) {
    auto run = run_tom123_unprojection(FieldSpec::prime(1021), random_choice(1021, seed, {}));
    const auto& u = run.ideal;
    o.require(u.generators.size() == 20, "generator count");
    o.require(u.homogeneous, "homogeneous");
    o.require(u.ring->nvars() == 10, "ambient");
    o.require(krull_dimension(buchberger(IdealPresentation(u.ring, u.generators))) == 4, "dimension");
  }
}

ConstructedFamily family(int id) {
  ConstructionParams p;
  p.id = id;
  return construct_family(p);
}

void numerator_14885(Outcome& o) {
  ConstructedFamily f = family(14885);
  HilbertReport h = hilbert_report(f.ideal, f.basis);
  const std::vector<std::int64_t> want = {1, 0, 0, 0, -20, 0, 64, 0, -90, 0, 64, 0, -20, 0, 0, 0, 1};
  o.require(h.numerator.coefficients == want, "numerator " + h.numerator.to_string());
  o.require(h.palindromic, "palindromic");
  o.require(h.codimension == 6, "codimension");
}

void singularities_14885(Outcome& o) {
  ConstructedFamily f = family(14885);
  auto strata = orbifold_report(f.ideal);
  o.require(strata.size() == 1, "one stratum");
  for (const auto& s : strata) {
    o.require(s.r == 2 && s.points == 8 && !s.unstable, "8 points");
    o.require(s.coprime_rows_vanish, "first three rows vanish");
  }
  QuasismoothCertificate c = quasismooth_certificate(f.ideal, f.basis);
  o.require(c.conclusive && c.dimension == 0, "quasismooth certificate");
}

void family_12979(Outcome& o) {
  ConstructedFamily f = family(12979);
  HilbertReport h = hilbert_report(f.ideal, f.basis);
  const std::vector<std::int64_t> want = {1,   0,  0,  0,   -11, -8,  23, 32, -13, -48,
                                          -13, 32, 23, -8, -11, 0,   0,  0,  1};
  o.require(h.numerator.coefficients == want, "numerator " + h.numerator.to_string());
  auto strata = orbifold_report(f.ideal);
  bool two = false, three = false;
  for (const auto& s : strata) {
    if (s.r == 2) two = s.points == 4 && s.type == std::vector<int>{1, 1, 1};
    if (s.r == 3) three = s.points == 2 && s.type == std::vector<int>{1, 1, 2};
  }
  o.require(two, "4 x 1/2(1,1,1)");
  o.require(three, "2 x 1/3(1,1,2)");
  QuasismoothCertificate c = quasismooth_certificate(f.ideal, f.basis);
  o.require(c.conclusive && c.dimension == 0, "quasismooth certificate");
}

void pfaffian_stage(Outcome& o) {
  auto d = tom123_unprojection_data(FieldSpec::prime(1021), random_choice(1021, 1, {}));
  HilbertNumerator h = hilbert_numerator(buchberger(d.I));
  const std::vector<std::int64_t> want = {1, 0, 0, 0, -5, 0, 5, 0, 0, 0, -1};
  o.require(h.coefficients == want, "numerator " + h.to_string());
}

void property_suites(Outcome& o) {
  const std::string dir = UNPROJ_TEST_BIN_DIR;
  const std::vector<std::string> runs = {
      dir + "/test_ring_core", dir + "/test_groebner",
      dir + "/test_fano -tc='*Euler*,*Jacobian*,*filling*,*parallel*'"};
  for (const auto& cmd : runs) {
    int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    o.require(rc == 0, cmd.substr(dir.size() + 1));
  }
}

}  // namespace

int main() {
  criterion(1, "pfaffian formulas", 1, pfaffian_formulas);
  criterion(2, "classification counts", 1, classification);
  criterion(3, "fundamental calculation over QQ", 30, fundamental);
  criterion(4, "dimension 14, pairwise codimension 3", 120, dimension_count);
  criterion(5, "well-definedness and inclusions", 300, well_defined);
  criterion(6, "20 generators, homogeneous, dimension 4", 300, unprojection_ideal);
  criterion(7, "14885 numerator", 600, numerator_14885);
  criterion(8, "14885 orbifold points, quasismooth", 1800, singularities_14885);
  criterion(9, "12979 numerator, baskets, quasismooth", 1800, family_12979);
  criterion(10, "pfaffian stage numerator", 60, pfaffian_stage);
  criterion(11, "property suites", 300, property_suites);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
