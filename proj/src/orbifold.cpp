#include <algorithm>
#include <numeric>

#include "unproj/fano.hpp"
#include "unproj/rng.hpp"

namespace unproj {

namespace {

/// Restriction of the ambient to the variables of weight divisible by r.
struct Stratum {
  Ring ring;
  Substitution restrict;
  std::vector<std::size_t> kept;
};

Stratum make_stratum(const Ring& a, int r) {
  Stratum s;
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t v = 0; v < a->nvars(); ++v)
    if (a->weight(v) % r == 0) {
      names.push_back(a->name(v));
      weights.push_back(a->weight(v));
      s.kept.push_back(v);
    }
  if (names.empty()) throw Error("no variable has weight divisible by " + std::to_string(r));
  s.ring = RingSpec::make(names, weights, a->field());
  for (std::size_t v = 0; v < a->nvars(); ++v)
    if (a->weight(v) % r != 0) s.restrict.assign(a->name(v), Polynomial(s.ring));
  return s;
}

/// Whether the rho x rho minors of `block` have no common zero with the
/// stratum ideal away from the vertex, by sampling mixed minors.
bool rank_at_least(const std::vector<std::vector<Polynomial>>& block, const std::vector<int>& row_w,
                   const std::vector<std::int64_t>& col_d, std::size_t rho,
                   const std::vector<Polynomial>& stratum_gens, const Ring& z, Rng& rng) {
  if (rho == 0) return true;
  const std::size_t nr = block.size(), nc = nr ? block[0].size() : 0;
  if (rho > nr || rho > nc) return false;
  const std::uint32_t p = z->field().characteristic();
  std::vector<Polynomial> extra;
  for (std::size_t samples = 8; samples <= 64; samples *= 2) {
    while (extra.size() < samples) {
      std::vector<std::size_t> rows(nr), cols(nc);
      std::iota(rows.begin(), rows.end(), 0);
      std::iota(cols.begin(), cols.end(), 0);
      for (std::size_t i = 0; i < rho; ++i) {
        std::swap(rows[i], rows[i + rng.next() % (nr - i)]);
        std::swap(cols[i], cols[i + rng.next() % (nc - i)]);
      }
      // mix within the weight class of each chosen row and degree class of
      // each chosen column, which keeps the minor homogeneous
      std::vector<std::vector<Rational>> rm(rho, std::vector<Rational>(nr)), cm(nc, std::vector<Rational>(rho));
      for (std::size_t a = 0; a < rho; ++a) {
        for (std::size_t v = 0; v < nr; ++v)
          if (row_w[v] == row_w[rows[a]]) rm[a][v] = Rational(static_cast<unsigned long>(rng.nonzero_mod(p)));
        for (std::size_t g = 0; g < nc; ++g)
          if (col_d[g] == col_d[cols[a]]) cm[g][a] = Rational(static_cast<unsigned long>(rng.nonzero_mod(p)));
      }
      PolyMatrix m(rho, std::vector<Polynomial>(rho, Polynomial(z)));
      for (std::size_t a = 0; a < rho; ++a)
        for (std::size_t b = 0; b < rho; ++b)
          for (std::size_t v = 0; v < nr; ++v) {
            if (rm[a][v] == 0) continue;
            for (std::size_t g = 0; g < nc; ++g)
              if (cm[g][b] != 0 && !block[v][g].is_zero()) m[a][b] += block[v][g].scaled(rm[a][v] * cm[g][b]);
          }
      extra.push_back(determinant(m));
    }
    std::vector<Polynomial> gens = stratum_gens;
    bool any = false;
    for (const auto& e : extra)
      if (!e.is_zero()) {
        gens.push_back(e);
        any = true;
      }
    if (!any) continue;
    if (krull_dimension(buchberger(IdealPresentation(z, gens))) <= 0) return true;
  }
  return false;
}

OrbifoldStratum examine(const FanoIdeal& x, const JacobianData& j, int r, Rng& rng) {
  const Ring& a = x.ambient;
  Stratum s = make_stratum(a, r);
  OrbifoldStratum out;
  out.r = r;
  for (auto v : s.kept) out.variables.push_back(a->name(v));

  std::vector<Polynomial> gens;
  for (const auto& g : x.generators) {
    Polynomial h = substitute(g, s.restrict, s.ring);
    if (!h.is_zero()) gens.push_back(std::move(h));
  }
  GroebnerBasis gb = buchberger(IdealPresentation(s.ring, gens));
  out.cone_dimension = krull_dimension(gb);

  const std::size_t nv = a->nvars(), ng = x.generators.size();
  out.coprime_rows_vanish = true;
  std::vector<std::vector<Polynomial>> restricted(nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t g = 0; g < ng; ++g) {
      restricted[v].push_back(substitute(j.matrix[v][g], s.restrict, s.ring));
      if (a->weight(v) % r != 0 && !restricted[v].back().is_zero()) out.coprime_rows_vanish = false;
    }
  if (out.cone_dimension > 1)
    throw Error("degenerate draw: the weight-" + std::to_string(r) + " stratum meets X in positive dimension");
  if (out.cone_dimension != 1) return out;

  // the restricted ideal lives in weights divisible by r, so the Hilbert
  // function at multiples of r settles to the number of points
  HilbertNumerator h = hilbert_numerator(gb);
  const int top = static_cast<int>(h.coefficients.size()) + 4 * r;
  const int last = top / r * r;
  auto hf = h.hilbert_function(last);
  out.points = hf[last];
  out.unstable = hf[last] != hf[last - r];

  // Jacobian blocks by character mod r: rows with w_v = chi pair with
  // generators of degree = chi, every other entry vanishes on the stratum
  std::vector<std::int64_t> gdeg(ng);
  for (std::size_t g = 0; g < ng; ++g) gdeg[g] = weighted_degree(x.generators[g]).degree;
  std::vector<int> kernel(r, 0);
  std::size_t total_rank = 0;
  for (int chi = 0; chi < r; ++chi) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t v = 0; v < nv; ++v)
      if (a->weight(v) % r == chi) rows.push_back(v);
    for (std::size_t g = 0; g < ng; ++g)
      if (((gdeg[g] % r) + r) % r == chi) cols.push_back(g);
    std::vector<std::vector<Polynomial>> block;
    std::vector<int> row_w;
    std::vector<std::int64_t> col_d;
    for (auto v : rows) {
      block.emplace_back();
      for (auto g : cols) block.back().push_back(restricted[v][g]);
      row_w.push_back(a->weight(v));
    }
    for (auto g : cols) col_d.push_back(gdeg[g]);
    std::size_t rho = std::min(rows.size(), cols.size());
    while (rho > 0 && !rank_at_least(block, row_w, col_d, rho, gb.elements, s.ring, rng)) --rho;
    total_rank += rho;
    kernel[chi] = static_cast<int>(rows.size() - rho);
  }
  // the rank can only be certified from below; a total of codim X pins every block
  const std::size_t codim = nv - 4;
  if (total_rank == codim && kernel[0] >= 1) {
    --kernel[0];  // the Euler direction
    for (int chi = 0; chi < r; ++chi)
      for (int k = 0; k < kernel[chi]; ++k) out.type.push_back(chi);
  }
  return out;
}

}  // namespace

std::vector<OrbifoldStratum> orbifold_report(const FanoIdeal& x, std::uint64_t seed) {
  const Ring& a = x.ambient;
  if (!a->field().is_prime()) throw Error("orbifold report needs a prime field");
  std::vector<int> rs;
  if (x.params.id == 14885 || x.params.id == 12979) {
    for (const auto& b : fano_target(x.params.id).baskets) rs.push_back(b.r);
  } else {
    for (std::size_t v = 0; v < a->nvars(); ++v)
      for (int r = 2; r <= a->weight(v); ++r)
        if (a->weight(v) % r == 0) rs.push_back(r);
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  const JacobianData j = jacobian(x);
  std::vector<OrbifoldStratum> out;
  for (int r : rs) {
    Rng rng = Rng(seed).stream("orbifold." + std::to_string(r));
    out.push_back(examine(x, j, r, rng));
  }
  return out;
}

std::string orbifold_type_string(int r, const std::vector<int>& type) {
  std::string s = "1/" + std::to_string(r) + "(";
  for (std::size_t i = 0; i < type.size(); ++i) s += (i ? "," : "") + std::to_string(type[i]);
  return s + ")";
}

}  // namespace unproj
