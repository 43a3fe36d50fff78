#include "unproj/groebner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>

#include "unproj/detail/reducer.hpp"
#include "unproj/parallel.hpp"

namespace unproj {

using detail::DivisorView;
using detail::make_view;
using detail::PolyAccess;
using detail::Reducer;
using detail::with_field;

IdealPresentation::IdealPresentation(Ring ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (!same_ring(g.ring(), ring_)) throw RingMismatch("ideal generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

std::size_t GroebnerBasis::total_terms() const {
  std::size_t t = 0;
  for (const auto& e : elements) t += e.nterms();
  return t;
}

namespace {

std::vector<Exp> lcm_of(std::span<const Exp> a, std::span<const Exp> b) {
  std::vector<Exp> l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(std::span<const Exp> a, std::span<const Exp> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

/// Buchberger state. With tracking enabled every element carries cofactors
/// expressing it in terms of the first `ntracked` inputs.
template <class F>
class Engine {
public:
  struct Elem {
    Polynomial p;
    std::int64_t sugar;
    bool active = true;
    bool from_modulus = false;
    std::vector<Polynomial> cof;
  };
  struct Pair {
    std::uint32_t i, j;
    std::vector<Exp> lcm;
    std::int64_t lcmdeg;
    std::int64_t sugar;
    std::uint64_t seq;
    bool alive = true;
  };

  Engine(const Ring& ring, const F& f, const GbBudget& budget, std::size_t ntracked)
      : ring_(ring), f_(f), budget_(budget), ntracked_(ntracked), reducer_(ring, f) {}

  /// Adds an input generator; cof is its tracked expression (empty when untracked).
  void add_input(const Polynomial& g, std::vector<Polynomial> cof, bool from_modulus) {
    if (g.is_zero()) return;
    Elem e;
    auto inv = f_.inv(PolyAccess::coeffs<F>(g)[0]);
    Rational invq = f_.to_rational(inv);
    e.p = g.monic();
    for (auto& c : cof) c = c.scaled(invq);
    e.cof = std::move(cof);
    e.sugar = g.max_degree();
    e.from_modulus = from_modulus;
    if (!from_modulus) {
      // inputs may be reducible by what is already there
      e = reduce_elem(std::move(e));
      if (e.p.is_zero()) return;
      e.from_modulus = false;
    }
    insert(std::move(e));
  }

  void run() {
    while (!queue_.empty()) {
      const std::size_t pi = queue_.top().second;
      queue_.pop();
      if (!pairs_[pi].alive) continue;
      pairs_[pi].alive = false;
      const Pair& pr = pairs_[pi];
      if (++stats_.pairs_reduced > budget_.max_pairs)
        throw BudgetExceeded("Groebner basis: more than " + std::to_string(budget_.max_pairs) +
                             " S-pairs");
      Elem s = spoly(pr);
      Elem h = reduce_elem(std::move(s));
      if (h.p.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      insert(std::move(h));
      check_budget();
    }
  }

  /// Active elements, tails fully reduced, monic, sorted by leading monomial.
  std::vector<Polynomial> reduced_basis() {
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i].active) act.push_back(i);
    std::vector<Polynomial> out;
    for (std::size_t i : act) {
      std::vector<DivisorView<F>> divs;
      for (std::size_t j : act)
        if (j != i) divs.push_back(make_view(elems_[j].p, f_));
      out.push_back(reducer_.run(elems_[i].p, divs, nullptr).monic());
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
      return compare_monomials(a.exps(0).data(), a.term_degree(0), b.exps(0).data(),
                               b.term_degree(0), a.nvars()) < 0;
    });
    return out;
  }

  std::vector<const Elem*> active() const {
    std::vector<const Elem*> out;
    for (const auto& e : elems_)
      if (e.active) out.push_back(&e);
    return out;
  }

  const GbStats& stats() const { return stats_; }

private:
  Elem spoly(const Pair& pr) {
    const Elem& a = elems_[pr.i];
    const Elem& b = elems_[pr.j];
    const std::size_t n = ring_->nvars();
    std::vector<Exp> ma(n), mb(n);
    auto la = a.p.exps(0), lb = b.p.exps(0);
    for (std::size_t v = 0; v < n; ++v) {
      ma[v] = pr.lcm[v] - la[v];
      mb[v] = pr.lcm[v] - lb[v];
    }
    Elem s;
    s.p = a.p.shifted(ma, Rational(1)) - b.p.shifted(mb, Rational(1));
    s.sugar = pr.sugar;
    if (ntracked_) {
      s.cof.resize(ntracked_, Polynomial(ring_));
      for (std::size_t k = 0; k < ntracked_; ++k)
        s.cof[k] = a.cof[k].shifted(ma, Rational(1)) - b.cof[k].shifted(mb, Rational(1));
    }
    return s;
  }

  Elem reduce_elem(Elem s) {
    std::vector<DivisorView<F>> divs;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (!elems_[i].active) continue;
      divs.push_back(make_view(elems_[i].p, f_));
      ids.push_back(i);
    }
    Elem h;
    h.sugar = s.sugar;
    if (!ntracked_) {
      h.p = reducer_.run(s.p, divs, nullptr);
    } else {
      std::vector<Polynomial> q;
      h.p = reducer_.run(s.p, divs, &q);
      h.cof = std::move(s.cof);
      for (std::size_t d = 0; d < q.size(); ++d) {
        if (q[d].is_zero()) continue;
        for (std::size_t k = 0; k < ntracked_; ++k)
          if (!elems_[ids[d]].cof[k].is_zero()) h.cof[k] -= q[d] * elems_[ids[d]].cof[k];
      }
    }
    if (!h.p.is_zero()) {
      Rational inv = f_.to_rational(f_.inv(PolyAccess::coeffs<F>(h.p)[0]));
      h.p = h.p.monic();
      for (auto& c : h.cof) c = c.scaled(inv);
    }
    return h;
  }

  void check_budget() {
    std::size_t terms = 0;
    for (const auto& e : elems_)
      if (e.active) terms += e.p.nterms();
    if (terms > budget_.max_basis_terms)
      throw BudgetExceeded("Groebner basis: more than " + std::to_string(budget_.max_basis_terms) +
                           " basis terms");
  }

  /// Gebauer-Moeller update followed by insertion of h.
  void insert(Elem h) {
    const std::size_t n = ring_->nvars();
    const auto hi = static_cast<std::uint32_t>(elems_.size());
    auto lh = h.p.exps(0);
    std::vector<Exp> lhv(lh.begin(), lh.end());
    const std::int64_t hdeg = h.p.term_degree(0);

    struct Cand {
      std::uint32_t g;
      std::vector<Exp> lcm;
      bool coprime;
    };
    std::vector<Cand> c;
    for (std::uint32_t g = 0; g < elems_.size(); ++g) {
      if (!elems_[g].active) continue;
      if (h.from_modulus && elems_[g].from_modulus) continue;
      auto lg = elems_[g].p.exps(0);
      c.push_back({g, lcm_of(lh, lg), coprime(lh, lg)});
    }
    // chain criterion among the new pairs
    std::vector<char> keep(c.size(), 0);
    for (std::size_t a = 0; a < c.size(); ++a) {
      bool ok = c[a].coprime;
      if (!ok) {
        ok = true;
        for (std::size_t b = 0; b < c.size() && ok; ++b) {
          if (b == a) continue;
          // remaining candidates (b > a) and already kept ones (b < a, keep[b])
          if (b < a && !keep[b]) continue;
          if (divides(c[b].lcm.data(), c[a].lcm.data(), n)) ok = false;
        }
      }
      keep[a] = ok;
    }
    // old pairs that h makes redundant
    for (std::size_t pi : live_) {
      Pair& p = pairs_[pi];
      if (!p.alive) continue;
      if (!divides(lhv.data(), p.lcm.data(), n)) continue;
      auto li = elems_[p.i].p.exps(0), lj = elems_[p.j].p.exps(0);
      if (lcm_of(li, lh) != p.lcm && lcm_of(lj, lh) != p.lcm) {
        p.alive = false;
        ++stats_.pairs_skipped;
      }
    }
    std::vector<std::size_t> live;
    for (std::size_t pi : live_)
      if (pairs_[pi].alive) live.push_back(pi);
    live_.swap(live);

    for (std::size_t a = 0; a < c.size(); ++a) {
      if (!keep[a] || c[a].coprime) {
        ++stats_.pairs_skipped;
        continue;
      }
      const Elem& g = elems_[c[a].g];
      Pair p;
      p.i = c[a].g;
      p.j = hi;
      p.lcmdeg = ring_->degree(c[a].lcm);
      p.sugar = std::max(g.sugar + p.lcmdeg - g.p.term_degree(0), h.sugar + p.lcmdeg - hdeg);
      p.lcm = std::move(c[a].lcm);
      p.seq = seq_++;
      pairs_.push_back(std::move(p));
      const std::size_t pi = pairs_.size() - 1;
      live_.push_back(pi);
      queue_.push({key(pairs_[pi]), pi});
    }
    for (auto& e : elems_)
      if (e.active && divides(lhv.data(), e.p.exps(0).data(), n)) e.active = false;
    elems_.push_back(std::move(h));
  }

  struct Key {
    std::int64_t sugar;
    std::int64_t lcmdeg;
    const std::vector<Exp>* lcm;
    std::uint64_t seq;
  };
  Key key(const Pair& p) const { return {p.sugar, p.lcmdeg, &p.lcm, p.seq}; }
  struct KeyGreater {
    bool operator()(const std::pair<Key, std::size_t>& x, const std::pair<Key, std::size_t>& y) const {
      const Key& a = x.first;
      const Key& b = y.first;
      if (a.sugar != b.sugar) return a.sugar > b.sugar;
      if (a.lcmdeg != b.lcmdeg) return a.lcmdeg > b.lcmdeg;
      int c = compare_monomials(a.lcm->data(), a.lcmdeg, b.lcm->data(), b.lcmdeg, a.lcm->size());
      if (c != 0) return c > 0;
      return a.seq > b.seq;
    }
  };

  Ring ring_;
  F f_;
  GbBudget budget_;
  std::size_t ntracked_;
  Reducer<F> reducer_;
  std::vector<Elem> elems_;
  std::deque<Pair> pairs_;
  std::vector<std::size_t> live_;
  std::priority_queue<std::pair<Key, std::size_t>, std::vector<std::pair<Key, std::size_t>>,
                      KeyGreater>
      queue_;
  std::uint64_t seq_ = 0;
  GbStats stats_;
};

template <class F>
std::vector<DivisorView<F>> views(std::span<const Polynomial> ps, const F& f) {
  std::vector<DivisorView<F>> v;
  v.reserve(ps.size());
  for (const auto& p : ps) v.push_back(make_view(p, f));
  return v;
}

void check_operand(const Polynomial& f, const Ring& ring, const char* what) {
  if (!same_ring(f.ring(), ring)) throw RingMismatch(std::string(what) + ": ring mismatch");
}

}  // namespace

GroebnerBasis buchberger(const IdealPresentation& ideal, const GbBudget& budget) {
  GroebnerBasis gb;
  gb.ideal = ideal;
  with_field(*ideal.ring(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    Engine<F> eng(ideal.ring(), f, budget, 0);
    for (const auto& g : ideal.generators()) eng.add_input(g, {}, false);
    eng.run();
    gb.elements = eng.reduced_basis();
    gb.stats = eng.stats();
  });
  gb.reduced = true;
  return gb;
}

DivisionRecord divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  for (const auto& d : divisors) {
    check_operand(d, f.ring(), "divide");
    if (d.is_zero()) throw Error("divide: zero divisor");
  }
  DivisionRecord rec;
  with_field(*f.ring(), [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    Reducer<F> r(f.ring(), fld);
    rec.remainder = r.run(f, views(divisors, fld), &rec.quotients);
  });
  return rec;
}

DivisionRecord normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  check_operand(f, basis.ring(), "normal_form");
  return divide(f, basis.elements);
}

Polynomial reduce(const Polynomial& f, const GroebnerBasis& basis) {
  check_operand(f, basis.ring(), "reduce");
  return with_field(*f.ring(), [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    Reducer<F> r(f.ring(), fld);
    return r.run(f, views(std::span<const Polynomial>(basis.elements), fld), nullptr);
  });
}

std::vector<Polynomial> reduce_all_serial(std::span<const Polynomial> fs, const GroebnerBasis& basis) {
  for (const auto& f : fs) check_operand(f, basis.ring(), "reduce_all");
  std::vector<Polynomial> out(fs.size());
  with_field(*basis.ring(), [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    Reducer<F> r(basis.ring(), fld);
    auto divs = views(std::span<const Polynomial>(basis.elements), fld);
    for (std::size_t i = 0; i < fs.size(); ++i) out[i] = r.run(fs[i], divs, nullptr);
  });
  return out;
}

std::vector<Polynomial> reduce_all(std::span<const Polynomial> fs, const GroebnerBasis& basis) {
  for (const auto& f : fs) check_operand(f, basis.ring(), "reduce_all");
  std::vector<Polynomial> out(fs.size());
  with_field(*basis.ring(), [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    auto divs = views(std::span<const Polynomial>(basis.elements), fld);
    const long count = static_cast<long>(fs.size());
#pragma omp parallel num_threads(worker_count())
    {
      Reducer<F> r(basis.ring(), fld);
#pragma omp for schedule(dynamic, 1)
      for (long i = 0; i < count; ++i) out[i] = r.run(fs[i], divs, nullptr);
    }
  });
  return out;
}

bool in_ideal(const Polynomial& f, const GroebnerBasis& basis) { return reduce(f, basis).is_zero(); }

std::vector<Polynomial> lift_cofactors(const Polynomial& f, std::span<const Polynomial> targets,
                                       const GroebnerBasis& modulus, const GbBudget& budget) {
  const Ring& ring = modulus.ring();
  check_operand(f, ring, "lift_cofactors");
  for (const auto& t : targets) check_operand(t, ring, "lift_cofactors");
  std::vector<Polynomial> b(targets.size(), Polynomial(ring));

  auto certify = [&](const std::vector<Polynomial>& cof) {
    Polynomial r = f;
    for (std::size_t i = 0; i < targets.size(); ++i) r -= cof[i] * targets[i];
    return reduce(r, modulus).is_zero();
  };

  // greedy division by [targets, modulus]
  std::vector<Polynomial> divs;
  std::vector<std::size_t> tindex;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!targets[i].is_zero()) {
      divs.push_back(targets[i]);
      tindex.push_back(i);
    }
  const std::size_t nt = divs.size();
  divs.insert(divs.end(), modulus.elements.begin(), modulus.elements.end());
  auto rec = divide(f, divs);
  if (rec.remainder.is_zero()) {
    for (std::size_t k = 0; k < nt; ++k) b[tindex[k]] = rec.quotients[k];
    if (!certify(b)) throw Error("lift_cofactors: reconstruction failed");
    return b;
  }

  // cofactor-tracking basis of targets + modulus
  with_field(*ring, [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    Engine<F> eng(ring, fld, budget, nt);
    // the modulus basis goes in first so the targets are reduced against it
    for (const auto& m : modulus.elements)
      eng.add_input(m, std::vector<Polynomial>(nt, Polynomial(ring)), true);
    for (std::size_t k = 0; k < nt; ++k) {
      std::vector<Polynomial> cof(nt, Polynomial(ring));
      cof[k] = Polynomial::constant(ring, Rational(1));
      eng.add_input(divs[k], std::move(cof), false);
    }
    eng.run();
    auto act = eng.active();
    std::vector<Polynomial> ps;
    for (auto* e : act) ps.push_back(e->p);
    Reducer<F> r(ring, fld);
    std::vector<Polynomial> q;
    Polynomial rem = r.run(f, views(std::span<const Polynomial>(ps), fld), &q);
    if (!rem.is_zero()) throw NotInIdeal("lift_cofactors: element is not in the ideal");
    std::vector<Polynomial> acc(nt, Polynomial(ring));
    for (std::size_t d = 0; d < act.size(); ++d) {
      if (q[d].is_zero()) continue;
      for (std::size_t k = 0; k < nt; ++k)
        if (!act[d]->cof[k].is_zero()) acc[k] += q[d] * act[d]->cof[k];
    }
    // modulus reduction of each cofactor keeps them small; the sum changes by
    // an element of the modulus ideal times a target, which is harmless
    for (std::size_t k = 0; k < nt; ++k) b[tindex[k]] = acc[k];
  });
  if (!certify(b)) throw Error("lift_cofactors: reconstruction failed");
  return b;
}

bool spair_certificate(std::span<const Polynomial> basis) {
  if (basis.empty()) return true;
  const Ring& ring = basis.front().ring();
  const std::size_t n = ring->nvars();
  return with_field(*ring, [&](const auto& fld) {
    using F = std::decay_t<decltype(fld)>;
    Reducer<F> r(ring, fld);
    auto divs = views(basis, fld);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        auto li = basis[i].exps(0), lj = basis[j].exps(0);
        if (coprime(li, lj)) continue;
        auto l = lcm_of(li, lj);
        std::vector<Exp> mi(n), mj(n);
        for (std::size_t v = 0; v < n; ++v) {
          mi[v] = l[v] - li[v];
          mj[v] = l[v] - lj[v];
        }
        Polynomial s = basis[i].monic().shifted(mi, Rational(1)) -
                       basis[j].monic().shifted(mj, Rational(1));
        if (!r.run(s, divs, nullptr).is_zero()) return false;
      }
    }
    return true;
  });
}

std::vector<Monomial> leading_monomials(std::span<const Polynomial> polys) {
  std::vector<Monomial> out;
  for (const auto& p : polys)
    if (!p.is_zero()) out.push_back(p.leading_monomial());
  return out;
}

}  // namespace unproj
