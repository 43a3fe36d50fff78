#include "unproj/unprojection.hpp"

#include <mutex>

#include "unproj/rng.hpp"

namespace unproj {

namespace {

Polynomial var(const Ring& r, const std::string& name) { return Polynomial::variable(r, name); }

std::string zname(int k) { return "z" + std::to_string(k); }
std::string cname(int k) { return "c" + std::to_string(k); }
std::string xname(int k) { return "x" + std::to_string(k); }

}  // namespace

std::string generic_coeff_name(int i, int j, int k) {
  return "m" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(k);
}

// ---------------------------------------------------------------- fundamental calculation

GenericTomData compute_generic_fundamental_data() {
  std::vector<std::string> names;
  for (int k = 1; k <= 4; ++k) names.push_back(xname(k));
  for (int k = 1; k <= 4; ++k) names.push_back(zname(k));
  for (int i = 2; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int k = 1; k <= 4; ++k) names.push_back(generic_coeff_name(i, j, k));
  GenericTomData d;
  d.ring = RingSpec::make(names, FieldSpec::rationals());
  const Ring& r = d.ring;

  d.N = SkewMatrix(r, 5);
  for (int k = 1; k <= 4; ++k) d.N.set(1, k + 1, var(r, xname(k)));
  for (int i = 2; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      Polynomial e(r);
      for (int k = 1; k <= 4; ++k) e += var(r, generic_coeff_name(i, j, k)) * var(r, zname(k));
      d.N.set(i, j, e);
    }
  d.P = maximal_pfaffians(d.N);

  std::vector<std::string> zs{"z1", "z2", "z3", "z4"};
  std::vector<Polynomial> linear(d.P.begin() + 1, d.P.end());
  d.Q = linear_coefficient_matrix(linear, zs);
  for (int i = 0; i < 4; ++i) {
    Polynomial back(r);
    for (int k = 0; k < 4; ++k) {
      for (const auto& z : zs)
        if (d.Q[i][k].involves(r->require_index(z)))
          throw Error("fundamental calculation: Q is not z-free");
      back += d.Q[i][k] * var(r, zs[k]);
    }
    if (back != linear[i]) throw Error("fundamental calculation: Q does not reproduce P");
  }

  for (int i = 0; i < 4; ++i) {
    d.H[i].assign(4, Polynomial(r));
    for (int j = 0; j < 4; ++j) {
      PolyMatrix minor;
      for (int a = 0; a < 4; ++a) {
        if (a == i) continue;
        std::vector<Polynomial> row;
        for (int b = 0; b < 4; ++b)
          if (b != j) row.push_back(d.Q[a][b]);
        minor.push_back(std::move(row));
      }
      Polynomial det = determinant(minor);
      d.H[i][j] = j % 2 == 0 ? det : -det;
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        if (var(r, xname(i + 1)) * d.H[j][k] != var(r, xname(j + 1)) * d.H[i][k])
          throw Error("fundamental calculation: x_i H_j != x_j H_i");

  const Polynomial x1 = var(r, "x1");
  for (int k = 0; k < 4; ++k) d.g.push_back(exact_divide(d.H[0][k], x1));
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      if (d.g[k] * var(r, xname(j + 1)) != d.H[j][k])
        throw Error("fundamental calculation: g x_j != H_j");
  return d;
}

const GenericTomData& generic_fundamental_data() {
  static std::once_flag once;
  static std::unique_ptr<GenericTomData> data;
  std::call_once(once, [] { data = std::make_unique<GenericTomData>(compute_generic_fundamental_data()); });
  return *data;
}

// ---------------------------------------------------------------- phi

std::array<int, 5> tom_to_first(int t) {
  switch (t) {
    case 1: return {1, 2, 3, 4, 5};
    case 2: return {2, 1, 3, 4, 5};
    case 3: return {3, 1, 2, 4, 5};
  }
  throw Error("tom_to_first: t must be 1, 2 or 3");
}

std::vector<Polynomial> phi_images(const SkewMatrix& tom123, const std::array<VariableCI, 3>& ideals,
                                   int t) {
  const GenericTomData& gd = generic_fundamental_data();
  const Ring& target = tom123.ring();
  const SkewMatrix m = conjugate(tom123, tom_to_first(t));
  const VariableCI& j = ideals.at(t - 1);
  if (!format_check(m, j, FormatKind::tom(1)).ok)
    throw Error("phi_images: conjugated matrix is not Tom_1 in J_" + std::to_string(t));

  Substitution s;
  for (int k = 1; k <= 4; ++k) {
    s.assign(xname(k), m.entry(1, k + 1));
    s.assign(zname(k), var(target, j.generators[k - 1]));
  }
  std::vector<std::string> block(j.generators.begin(), j.generators.end());
  for (int a = 2; a <= 5; ++a)
    for (int b = a + 1; b <= 5; ++b) {
      std::vector<Polynomial> entry{m.entry(a, b)};
      PolyMatrix coeff;
      try {
        coeff = linear_coefficient_matrix(entry, block);
      } catch (const Error& e) {
        throw Error("phi_images: entry (" + std::to_string(a) + "," + std::to_string(b) +
                    ") is not linear over J_" + std::to_string(t) + ": " + e.what());
      }
      for (int k = 1; k <= 4; ++k) s.assign(generic_coeff_name(a, b, k), coeff[0][k - 1]);
    }
  std::vector<Polynomial> h;
  for (const auto& g : gd.g) h.push_back(substitute(g, s, target));
  return h;
}

std::vector<Polynomial> phi1_images_by_chain(const FieldSpec& field) {
  const GenericTomData& gd = generic_fundamental_data();
  std::vector<std::string> dnames;
  for (int k = 1; k <= 4; ++k) dnames.push_back(xname(k));
  for (int k = 1; k <= 7; ++k) dnames.push_back(zname(k));
  for (int k = 1; k <= 24; ++k) dnames.push_back(cname(k));
  Ring d = RingSpec::make(dnames, field);

  // N -> D1: z relabelling and m -> c
  Substitution s1;
  const int zmap[4] = {2, 3, 5, 7};
  for (int k = 1; k <= 4; ++k) s1.assign(zname(k), var(d, zname(zmap[k - 1])));
  int next = 1;
  for (int i = 2; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int k = 1; k <= 4; ++k) s1.assign(generic_coeff_name(i, j, k), var(d, cname(next++)));

  // D1 -> D2
  Substitution s2;
  for (int c : {7, 8, 11, 12, 14, 16, 18, 20, 22, 23, 24}) s2.assign(cname(c), Polynomial(d));

  // D2 -> Tom(1,2,3)
  Ring t = tom123_ring(field);
  Substitution s3;
  s3.assign("x1", parse_poly("c1*z1 + c2*z2 + c3*z3 + c4*z6", t));
  s3.assign("x2", parse_poly("c5*z1 + c6*z2 + c7*z4 + c8*z5", t));
  s3.assign("x3", parse_poly("c9*z1 + c10*z2", t));
  s3.assign("x4", parse_poly("c11*z1 + c12*z2", t));
  const std::pair<int, int> rename[] = {{1, 13}, {2, 14}, {3, 15}, {4, 16},  {5, 17},  {6, 18}, {9, 19},
                                        {10, 20}, {13, 21}, {15, 22}, {17, 23}, {19, 24}, {21, 25}};
  for (auto [from, to] : rename) s3.assign(cname(from), var(t, cname(to)));

  std::vector<Polynomial> h;
  for (const auto& g : gd.g) {
    Polynomial g1 = substitute(g, s1, d);
    Polynomial g2 = substitute(g1, s2, d);
    h.push_back(substitute(g2, s3, t));
  }
  return h;
}

// ---------------------------------------------------------------- specialization

Tom123Grading tom123_grading(const CoefficientChoice& choice) {
  Ring full = tom123_ring(FieldSpec::rationals());
  Tom123 t = build_tom123(full);
  Tom123Grading g;
  for (int c = 1; c <= 25; ++c)
    if (choice.symbolic(c)) g.weights[cname(c)] = 1;
  std::map<int, bool> all_symbolic;
  for (int z = 1; z <= 7; ++z) all_symbolic[z] = true;
  std::vector<std::pair<int, int>> pairs;  // (c, z) per term
  for (const auto& [pos, e] : t.matrix.upper()) {
    for (std::size_t i = 0; i < e.nterms(); ++i) {
      int c = 0, z = 0;
      auto ex = e.exps(i);
      for (std::size_t v = 0; v < ex.size(); ++v) {
        if (!ex[v]) continue;
        const std::string& n = full->name(v);
        if (n[0] == 'c') c = std::stoi(n.substr(1));
        if (n[0] == 'z') z = std::stoi(n.substr(1));
      }
      pairs.emplace_back(c, z);
      if (!choice.symbolic(c)) all_symbolic[z] = false;
    }
  }
  for (int z = 1; z <= 7; ++z) g.weights[zname(z)] = all_symbolic[z] ? 1 : 2;
  for (auto [c, z] : pairs) {
    int deg = g.weights[zname(z)] + (choice.symbolic(c) ? 1 : 0);
    if (deg != 2) g.consistent = false;
  }
  return g;
}

TripleUnprojectionData tom123_unprojection_data(const FieldSpec& field,
                                                const CoefficientChoice& choice) {
  TripleUnprojectionData d;
  d.choice = choice;
  Tom123Grading grading = tom123_grading(choice);
  d.graded = grading.consistent;

  std::vector<std::string> names;
  std::vector<int> weights;
  for (int z = 1; z <= 7; ++z) {
    names.push_back(zname(z));
    weights.push_back(grading.consistent ? grading.weights[zname(z)] : 1);
  }
  for (int c = 1; c <= 25; ++c)
    if (choice.symbolic(c)) {
      names.push_back(cname(c));
      weights.push_back(1);
    }
  d.ring = RingSpec::make(names, weights, field);

  Ring full = tom123_ring(field);
  Tom123 t = build_tom123(full);
  Substitution s;
  for (const auto& [c, v] : choice.scalars) {
    if (c < 1 || c > 25) throw Error("coefficient index c" + std::to_string(c) + " out of range");
    s.assign(cname(c), Polynomial::constant(d.ring, v));
  }
  d.matrix = SkewMatrix(d.ring, 5);
  for (const auto& [pos, e] : t.matrix.upper()) d.matrix.set(pos.first, pos.second, substitute(e, s, d.ring));
  d.ideals = t.ideals;
  d.I = IdealPresentation(d.ring, maximal_pfaffians(d.matrix));

  for (int k = 0; k < 3; ++k) {
    d.phi[k] = phi_images(d.matrix, d.ideals, k + 1);
    std::optional<std::int64_t> deg;
    for (int a = 0; a < 4; ++a) {
      auto info = weighted_degree(d.phi[k][a]);
      if (info.kind != DegreeInfo::Kind::Homogeneous) {
        d.phi_homogeneous = false;
        continue;
      }
      std::int64_t w = d.ring->weight(d.ring->require_index(d.ideals[k].generators[a]));
      std::int64_t delta = info.degree - w;
      if (deg && *deg != delta) d.phi_homogeneous = false;
      deg = delta;
    }
    d.phi_degree[k] = deg.value_or(0);
  }
  return d;
}

std::vector<Polynomial> well_definedness_witnesses(const TripleUnprojectionData& d, int t) {
  const auto& gens = d.ideals.at(t - 1).generators;
  const auto& h = d.phi[t - 1];
  std::vector<Polynomial> out;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      out.push_back(var(d.ring, gens[a]) * h[b] - var(d.ring, gens[b]) * h[a]);
  return out;
}

std::vector<Polynomial> split_over_variables(const Polynomial& u, const VariableCI& j) {
  const Ring& r = u.ring();
  std::array<std::size_t, 4> idx{};
  for (int k = 0; k < 4; ++k) idx[k] = r->require_index(j.generators[k]);
  std::array<std::vector<std::pair<Rational, std::vector<Exp>>>, 4> terms;
  for (std::size_t i = 0; i < u.nterms(); ++i) {
    auto e = u.exps(i);
    int hit = -1;
    for (int k = 0; k < 4 && hit < 0; ++k)
      if (e[idx[k]]) hit = k;
    if (hit < 0) throw NotInIdeal("element is not in " + j.to_string());
    std::vector<Exp> q(e.begin(), e.end());
    --q[idx[hit]];
    terms[hit].emplace_back(u.coeff(i), std::move(q));
  }
  std::vector<Polynomial> b;
  for (auto& t : terms) b.push_back(Polynomial::from_terms(r, t));
  return b;
}

Polynomial apply_phi(const TripleUnprojectionData& d, int s, const Polynomial& u) {
  auto b = split_over_variables(u, d.ideals.at(s - 1));
  Polynomial out(d.ring);
  for (int k = 0; k < 4; ++k)
    if (!b[k].is_zero()) out += b[k] * d.phi[s - 1][k];
  return out;
}

Coupling compute_coupling(const TripleUnprojectionData& d, const GroebnerBasis& gbI, int s, int t,
                          const GbBudget& budget) {
  if (s == t || s < 1 || s > 3 || t < 1 || t > 3) throw Error("compute_coupling: need distinct s, t in 1..3");
  Coupling c;
  c.s = s;
  c.t = t;
  c.r = Polynomial(d.ring);
  const auto& gens = d.ideals[t - 1].generators;
  const Polynomial p1 = var(d.ring, gens[0]);
  const Polynomial u = apply_phi(d, s, d.phi[t - 1][0]);
  std::vector<Polynomial> target{p1};
  c.A = reduce(lift_cofactors(u, target, gbI, budget)[0], gbI);
  c.verified = true;
  for (int k = 0; k < 4; ++k) {
    Polynomial p = var(d.ring, gens[k]);
    Polynomial diff = c.A * p - apply_phi(d, s, d.phi[t - 1][k]);
    if (!reduce(diff, gbI).is_zero()) c.verified = false;
  }
  if (!c.verified)
    throw Error("compute_coupling: A_" + std::to_string(s) + std::to_string(t) +
                " fails on a generator of J_" + std::to_string(t));
  return c;
}

UnprojectionIdeal build_unprojection_ideal(const TripleUnprojectionData& d, const Coupling& a12,
                                           const Coupling& a13, const Coupling& a23) {
  if (a12.s != 1 || a12.t != 2 || a13.s != 1 || a13.t != 3 || a23.s != 2 || a23.t != 3)
    throw Error("build_unprojection_ideal: couplings must be A12, A13, A23");
  UnprojectionIdeal u;
  std::vector<std::string> names = d.ring->names();
  std::vector<int> weights = d.ring->weights();
  const char* extra[3] = {"T", "S", "W"};
  for (int k = 0; k < 3; ++k) {
    names.push_back(extra[k]);
    weights.push_back(static_cast<int>(std::max<std::int64_t>(1, d.phi_degree[k])));
  }
  u.ring = RingSpec::make(names, weights, d.ring->field());
  const Ring& r = u.ring;
  auto lift = [&](const Polynomial& p) { return change_ring(p, r); };

  auto pf = d.I.generators();
  for (std::size_t i = 0; i < pf.size(); ++i) {
    u.generators.push_back(lift(pf[i]));
    u.labels.push_back("pf" + std::to_string(i + 1));
  }
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 4; ++a) {
      const std::string& z = d.ideals[k].generators[a];
      u.generators.push_back(var(r, extra[k]) * var(r, z) - lift(d.phi[k][a]));
      u.labels.push_back(std::string(extra[k]) + "*" + z);
    }
  u.generators.push_back(var(r, "T") * var(r, "S") - lift(a12.A));
  u.labels.push_back("T*S");
  u.generators.push_back(var(r, "T") * var(r, "W") - lift(a13.A));
  u.labels.push_back("T*W");
  u.generators.push_back(var(r, "S") * var(r, "W") - lift(a23.A));
  u.labels.push_back("S*W");
  u.homogeneous = d.graded && d.phi_homogeneous && all_homogeneous(u.generators);
  return u;
}

UnprojectionRun run_tom123_unprojection(const FieldSpec& field, const CoefficientChoice& choice,
                                        const GbBudget& budget) {
  UnprojectionRun run;
  run.data = tom123_unprojection_data(field, choice);
  run.gbI = buchberger(run.data.I, budget);
  run.a12 = compute_coupling(run.data, run.gbI, 1, 2, budget);
  run.a13 = compute_coupling(run.data, run.gbI, 1, 3, budget);
  run.a23 = compute_coupling(run.data, run.gbI, 2, 3, budget);
  run.ideal = build_unprojection_ideal(run.data, run.a12, run.a13, run.a23);
  return run;
}

CoefficientChoice random_choice(std::uint32_t p, std::uint64_t seed, const std::set<int>& symbolic,
                                const std::string& stream) {
  Rng rng = Rng(seed).stream(stream);
  CoefficientChoice c;
  for (int k = 1; k <= 25; ++k) {
    std::uint32_t v = rng.nonzero_mod(p);
    if (!symbolic.count(k)) c.scalars[k] = Rational(static_cast<unsigned long>(v));
  }
  return c;
}

// ---------------------------------------------------------------- dimension count

const std::vector<int>& dimension_count_zero_coefficients() {
  static const std::vector<int> zeros = {1, 2, 3, 5, 6, 7, 9, 12, 13, 15, 16, 18, 19, 21, 23};
  return zeros;
}

DimensionCount tom123_dimension_count(const FieldSpec& field) {
  DimensionCount out;
  Ring full = tom123_ring(field);
  Tom123 t = build_tom123(full);
  auto pf = maximal_pfaffians(t.matrix);

  // 17-variable specialization
  std::vector<std::string> names;
  for (int z = 1; z <= 7; ++z) names.push_back(zname(z));
  const auto& zeros = dimension_count_zero_coefficients();
  for (int c = 1; c <= 25; ++c)
    if (std::find(zeros.begin(), zeros.end(), c) == zeros.end()) names.push_back(cname(c));
  Ring r17 = RingSpec::make(names, field);
  Substitution s;
  for (int c : zeros) s.assign(cname(c), Polynomial(r17));
  std::vector<Polynomial> hat;
  for (const auto& p : pf) hat.push_back(substitute(p, s, r17));
  out.specialized_dimension = krull_dimension(buchberger(IdealPresentation(r17, hat)));

  const int nvars = static_cast<int>(full->nvars());
  const int upper = out.specialized_dimension + static_cast<int>(zeros.size());
  const int lower = nvars - 3;  // pfaffian ideals have codimension at most 3
  out.dim_R_mod_I = upper == lower ? upper : -1;

  auto dim_with = [&](std::vector<const VariableCI*> js) {
    std::vector<Polynomial> gens;
    for (auto* j : js)
      for (const auto& g : j->generators) gens.push_back(var(full, g));
    gens.insert(gens.end(), pf.begin(), pf.end());
    return krull_dimension(buchberger(IdealPresentation(full, gens)));
  };
  for (int k = 0; k < 3; ++k) out.dim_mod_J[k] = dim_with({&t.ideals[k]});
  const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    out.dim_mod_pair[k] = dim_with({&t.ideals[pairs[k].first], &t.ideals[pairs[k].second]});
    out.codim_pair[k] = out.dim_R_mod_I - out.dim_mod_pair[k];
  }
  return out;
}

}  // namespace unproj
