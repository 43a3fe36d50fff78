#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "unproj/groebner.hpp"
#include "unproj/pfaffian.hpp"

using namespace unproj;

namespace {

/// Transcription of the constraint tables of the 13 classes: "12:3" means
/// entry (1,2) lies in J3; "45:-" means unconstrained.
const std::vector<std::pair<const char*, const char*>> kTables = {
    {"Tom1+Tom2+Tom3", "12:3 13:2 14:23 15:23 23:1 24:13 25:13 34:12 35:12 45:123"},
    {"Jerry12+Jerry13+Jerry14", "12:123 13:123 14:123 15:123 23:12 24:13 25:1 34:23 35:2 45:3"},
    {"Jerry12+Jerry13+Jerry23", "12:123 13:123 14:12 15:12 23:123 24:13 25:13 34:23 35:23 45:-"},
    {"Jerry12+Jerry14+Jerry23", "12:123 13:123 14:12 15:12 23:13 24:123 25:13 34:23 35:3 45:2"},
    {"Jerry14+Jerry15+Jerry23", "12:123 13:123 14:12 15:12 23:3 24:13 25:23 34:13 35:23 45:12"},
    {"Tom1+Tom2+Jerry12", "12:3 13:23 14:23 15:23 23:13 24:13 25:13 34:12 35:12 45:12"},
    {"Tom1+Tom2+Jerry13", "12:3 13:23 14:23 15:23 23:13 24:1 25:1 34:123 35:123 45:12"},
    {"Tom1+Tom2+Jerry34", "12:- 13:23 14:23 15:2 23:13 24:13 25:1 34:123 35:123 45:123"},
    {"Tom1+Jerry12+Jerry13", "12:23 13:23 14:23 15:23 23:123 24:12 25:12 34:13 35:13 45:1"},
    {"Tom1+Jerry12+Jerry23", "12:23 13:23 14:2 15:2 23:123 24:123 25:123 34:13 35:13 45:1"},
    {"Tom1+Jerry12+Jerry34", "12:2 13:23 14:23 15:2 23:123 24:123 25:12 34:13 35:13 45:13"},
    {"Tom1+Jerry23+Jerry24", "12:23 13:2 14:3 15:- 23:123 24:123 25:123 34:123 35:12 45:13"},
    {"Tom1+Jerry23+Jerry45", "12:2 13:2 14:3 15:3 23:12 24:123 25:123 34:123 35:123 45:13"},
};

TripleFormats parse_triple(const std::string& s) {
  std::istringstream is(s);
  std::string a, b, c;
  std::getline(is, a, '+');
  std::getline(is, b, '+');
  std::getline(is, c, '+');
  return {FormatKind::parse(a), FormatKind::parse(b), FormatKind::parse(c)};
}

std::map<std::pair<int, int>, std::vector<int>> parse_table(const std::string& s) {
  std::map<std::pair<int, int>, std::vector<int>> t;
  std::istringstream is(s);
  std::string item;
  while (is >> item) {
    auto& row = t[{item[0] - '0', item[1] - '0'}];
    for (std::size_t k = 3; k < item.size(); ++k)
      if (item[k] != '-') row.push_back(item[k] - '0');
  }
  return t;
}

/// Determinant by the Leibniz formula (independent of the library's expansion).
Polynomial leibniz(const PolyMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  Polynomial acc(m[0][0].ring());
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    Polynomial t = Polynomial::constant(acc.ring(), Rational(inv % 2 ? -1 : 1));
    for (int i = 0; i < n && !t.is_zero(); ++i) t *= m[i][p[i]];
    acc += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

}  // namespace

TEST_CASE("small pfaffians") {
  auto g2 = generic_skew(2, FieldSpec::rationals());
  CHECK(pfaffian(g2) == Polynomial::variable(g2.ring(), "m12"));
  auto g4 = generic_skew(4, FieldSpec::rationals());
  auto pf = pfaffian(g4);
  CHECK(pf == parse_poly("m12*m34 - m13*m24 + m14*m23", g4.ring()));
  CHECK(pf * pf == leibniz(g4.materialize()));
  SkewMatrix zero(g4.ring(), 4);
  CHECK(pfaffian(zero).is_zero());
  CHECK_THROWS(pfaffian(generic_skew(3, FieldSpec::rationals())));
}

TEST_CASE("maximal pfaffians of the generic 5x5 matrix") {
  auto g = generic_skew(5, FieldSpec::rationals());
  auto pfs = maximal_pfaffians(g);
  const char* printed[] = {
      "m23*m45 - m24*m35 + m25*m34", "m13*m45 - m14*m35 + m15*m34", "m12*m45 - m14*m25 + m15*m24",
      "m12*m35 - m13*m25 + m15*m23", "m12*m34 - m13*m24 + m14*m23"};
  for (int i = 0; i < 5; ++i) CHECK(pfs[i] == parse_poly(printed[i], g.ring()));
  SkewMatrix row1(g.ring(), 5);
  for (int j = 2; j <= 5; ++j) row1.set(1, j, g.entry(1, j));
  for (const auto& p : maximal_pfaffians(row1)) CHECK(p.is_zero());
}

TEST_CASE("pfaffian squared is the determinant for random matrices") {
  std::mt19937_64 rng(11);
  auto r = RingSpec::make({"x", "y", "z"}, FieldSpec::prime(1009));
  for (int trial = 0; trial < 10; ++trial) {
    const int n = trial % 2 ? 6 : 4;
    SkewMatrix m(r, n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::vector<std::pair<Rational, std::vector<Exp>>> t;
        for (int k = 0; k < 2; ++k)
          t.emplace_back(Rational(static_cast<long>(rng() % 1009)),
                         std::vector<Exp>{Exp(rng() % 2), Exp(rng() % 2), Exp(rng() % 2)});
        m.set(i, j, Polynomial::from_terms(r, t));
      }
    auto pf = pfaffian(m);
    CHECK(pf * pf == leibniz(m.materialize()));
    CHECK(pf * pf == determinant(m.materialize()));
  }
}

TEST_CASE("Tom(1,2,3) matrix and its ideals") {
  auto r = tom123_ring(FieldSpec::rationals());
  auto t = build_tom123(r);
  CHECK(t.matrix.entry(4, 5) == parse_poly("c25*z2", r));
  CHECK(t.matrix.entry(2, 3) == parse_poly("c13*z2 + c14*z3 + c15*z5 + c16*z7", r));
  CHECK(t.matrix.entry(1, 2) == parse_poly("c1*z1 + c2*z2 + c3*z3 + c4*z6", r));
  for (int k = 0; k < 3; ++k) CHECK(format_check(t.matrix, t.ideals[k], FormatKind::tom(k + 1)).ok);
  for (const auto& p : maximal_pfaffians(t.matrix)) {
    auto d = weighted_degree(p);
    CHECK(d.kind == DegreeInfo::Kind::Homogeneous);
    CHECK(d.degree == 4);
    for (const auto& j : t.ideals) CHECK(j.contains(p));
  }
  SkewMatrix bad(r, 5);
  bad.set(3, 4, Polynomial::variable(r, "z1"));
  auto fc = format_check(bad, t.ideals[0], FormatKind::tom(1));
  CHECK_FALSE(fc.ok);
  REQUIRE(fc.violations.size() == 1);
  CHECK(fc.violations[0] == std::pair<int, int>{3, 4});
  CHECK(format_check(SkewMatrix(r, 5), t.ideals[1], FormatKind::jerry(1, 2)).ok);
}

TEST_CASE("conjugation moves formats and keeps the pfaffian ideal") {
  auto r = tom123_ring(FieldSpec::prime(1021));
  auto t = build_tom123(r);
  std::array<int, 5> id{1, 2, 3, 4, 5};
  CHECK(conjugate(t.matrix, id) == t.matrix);
  std::array<int, 5> swap12{2, 1, 3, 4, 5};
  auto a = conjugate(t.matrix, swap12);
  CHECK(format_check(a, t.ideals[1], FormatKind::tom(1)).ok);
  CHECK(FormatKind::tom(2).transformed(swap12) == FormatKind::tom(1));
  std::array<int, 5> cyc{3, 1, 2, 4, 5};
  auto b = conjugate(t.matrix, cyc);
  CHECK(format_check(b, t.ideals[2], FormatKind::tom(1)).ok);
  CHECK(FormatKind::tom(3).transformed(cyc) == FormatKind::tom(1));

  // ideal equality on random scalar specializations of the c's
  std::mt19937_64 rng(3);
  std::vector<std::string> zs;
  for (int i = 1; i <= 7; ++i) zs.push_back("z" + std::to_string(i));
  auto rz = RingSpec::make(zs, FieldSpec::prime(1021));
  for (int trial = 0; trial < 5; ++trial) {
    Substitution s;
    for (int c = 1; c <= 25; ++c)
      s.assign("c" + std::to_string(c),
               Polynomial::constant(rz, Rational(static_cast<long>(1 + rng() % 1020))));
    std::vector<Polynomial> p0, p1;
    for (const auto& p : maximal_pfaffians(t.matrix)) p0.push_back(substitute(p, s, rz));
    for (const auto& p : maximal_pfaffians(b)) p1.push_back(substitute(p, s, rz));
    auto g0 = buchberger(IdealPresentation(rz, p0));
    auto g1 = buchberger(IdealPresentation(rz, p1));
    for (const auto& p : p1) CHECK(in_ideal(p, g0));
    for (const auto& p : p0) CHECK(in_ideal(p, g1));
  }
}

TEST_CASE("classification of triple formats") {
  struct Want {
    TripleCase c;
    std::size_t classes;
    std::size_t total;
  };
  // totals: C(5,3), C(10,3), C(5,2)*10, 5*C(10,2)
  for (auto w : {Want{TripleCase::TTT, 1, 10}, Want{TripleCase::JJJ, 4, 120},
                 Want{TripleCase::TTJ, 3, 100}, Want{TripleCase::TJJ, 5, 225}}) {
    auto cls = enumerate_triple_classes(w.c);
    CHECK(cls.size() == w.classes);
    CHECK(triple_count(w.c) == w.total);
    std::size_t sum = 0;
    for (const auto& o : cls) sum += o.orbit_size;
    CHECK(sum == w.total);
  }
  auto jjj = enumerate_triple_classes(TripleCase::JJJ);
  CHECK(to_string(jjj[2].representative) == "Jerry12+Jerry14+Jerry23");
  CHECK(to_string(jjj[2].canonical) == "Jerry12+Jerry13+Jerry24");
  CHECK(to_string(jjj[3].representative) == "Jerry14+Jerry15+Jerry23");
  // orbit sizes by direct counting: stars 20, triangles 10, paths 60, path plus edge 30
  CHECK(jjj[0].orbit_size == 20);
  CHECK(jjj[1].orbit_size == 10);
  CHECK(jjj[2].orbit_size == 60);
  CHECK(jjj[3].orbit_size == 30);
}

TEST_CASE("constraint tables of the 13 classes") {
  std::set<std::string> reps;
  for (auto c : {TripleCase::TTT, TripleCase::JJJ, TripleCase::TTJ, TripleCase::TJJ})
    for (const auto& o : enumerate_triple_classes(c)) reps.insert(to_string(o.representative));
  CHECK(reps.size() == 13);
  for (const auto& [name, table] : kTables) {
    CAPTURE(name);
    CHECK(reps.count(name) == 1);
    auto formats = parse_triple(name);
    CHECK(triple_constraints(formats).table == parse_table(table));
    auto g = generic_triple(formats, FieldSpec::prime(1021));
    for (int t = 0; t < 3; ++t) CHECK(format_check(g.matrix, g.ideals[t], formats[t]).ok);
    for (const auto& p : maximal_pfaffians(g.matrix))
      for (const auto& j : g.ideals) CHECK(j.contains(p));
  }
}
