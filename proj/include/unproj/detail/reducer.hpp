#ifndef UNPROJ_DETAIL_REDUCER_HPP
#define UNPROJ_DETAIL_REDUCER_HPP

#include <algorithm>
#include <vector>

#include "unproj/detail/poly_access.hpp"

namespace unproj::detail {

/// Leading data of a divisor, cached for the divisibility scan.
template <class F>
struct DivisorView {
  const Polynomial* poly;
  const Exp* lm;
  std::int64_t lmdeg;
  std::uint64_t mask;
  typename F::value_type lc_inv;
};

template <class F>
DivisorView<F> make_view(const Polynomial& p, const F& f) {
  return {&p, p.exps(0).data(), p.term_degree(0), support_mask(p.exps(0).data(), p.nvars()),
          f.inv(PolyAccess::coeffs<F>(p)[0])};
}

/// Division of one polynomial at a time by a list of divisors. Pending terms
/// live in a hash table keyed by monomial with a max-heap over the keys, so
/// each monomial is visited once in decreasing order.
template <class F>
class Reducer {
public:
  using V = typename F::value_type;

  Reducer(const Ring& ring, const F& f) : ring_(ring), f_(f), n_(ring->nvars()), tmp_(n_) {
    std::uint64_t s = 0x9E3779B97F4A7C15ull;
    keys_.resize(n_);
    for (auto& k : keys_) {
      s += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      k = z ^ (z >> 31);
    }
  }

  /// Reduces p by divs. When quotients is non-null it receives one quotient
  /// per divisor. With top_only, reduction stops at the first irreducible term.
  Polynomial run(const Polynomial& p, const std::vector<DivisorView<F>>& divs,
                 std::vector<Polynomial>* quotients, bool top_only = false) {
    clear(p.nterms() * 4 + 16);
    const auto& pc = PolyAccess::coeffs<F>(p);
    for (std::size_t i = 0; i < p.nterms(); ++i) add(p.exps(i).data(), nullptr, p.term_degree(i), pc[i]);

    std::vector<TermWriter<F>> qw;
    if (quotients) {
      quotients->assign(divs.size(), Polynomial(ring_));
      qw.reserve(divs.size());
      for (auto& q : *quotients) qw.emplace_back(q, f_);
    }
    Polynomial rem(ring_);
    TermWriter<F> rw(rem, f_);
    bool stop = false;
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp());
      const std::uint32_t idx = heap_.back();
      heap_.pop_back();
      V c = coefs_[idx];
      if (f_.is_zero(c)) continue;
      const Exp* m = &pool_[idx * n_];
      const std::int64_t deg = degs_[idx];
      const DivisorView<F>* hit = nullptr;
      if (!stop) {
        const std::uint64_t mm = support_mask(m, n_);
        for (const auto& d : divs) {
          if (d.lmdeg <= deg && (d.mask & ~mm) == 0 && divides(d.lm, m, n_)) {
            hit = &d;
            break;
          }
        }
      }
      if (!hit) {
        rw.push(m, deg, c);
        if (top_only) stop = true;
        continue;
      }
      const V q = f_.mul(c, hit->lc_inv);
      std::vector<Exp> shift(n_);
      for (std::size_t v = 0; v < n_; ++v) shift[v] = m[v] - hit->lm[v];
      const std::int64_t sdeg = deg - hit->lmdeg;
      if (quotients) qw[static_cast<std::size_t>(hit - divs.data())].push(shift.data(), sdeg, q);
      const Polynomial& g = *hit->poly;
      const auto& gc = PolyAccess::coeffs<F>(g);
      for (std::size_t j = 1; j < g.nterms(); ++j)
        add(g.exps(j).data(), shift.data(), g.term_degree(j) + sdeg, f_.neg(f_.mul(q, gc[j])));
    }
    return rem;
  }

private:
  struct Cmp {
    const Reducer* r;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return compare_monomials(&r->pool_[a * r->n_], r->degs_[a], &r->pool_[b * r->n_], r->degs_[b],
                               r->n_) < 0;
    }
  };
  Cmp cmp() const { return Cmp{this}; }

  void clear(std::size_t expected) {
    pool_.clear();
    degs_.clear();
    coefs_.clear();
    hashes_.clear();
    heap_.clear();
    std::size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    table_.assign(cap, -1);
  }

  void add(const Exp* a, const Exp* b, std::int64_t deg, const V& c) {
    std::uint64_t h = 0;
    if (b) {
      for (std::size_t v = 0; v < n_; ++v) {
        tmp_[v] = static_cast<Exp>(a[v] + b[v]);
        h += keys_[v] * tmp_[v];
      }
    } else {
      for (std::size_t v = 0; v < n_; ++v) {
        tmp_[v] = a[v];
        h += keys_[v] * tmp_[v];
      }
    }
    const std::size_t mask = table_.size() - 1;
    std::size_t slot = static_cast<std::size_t>(h ^ (h >> 29)) & mask;
    while (true) {
      std::int32_t at = table_[slot];
      if (at < 0) break;
      if (hashes_[at] == h && degs_[at] == deg &&
          std::equal(tmp_.begin(), tmp_.end(), pool_.begin() + at * n_)) {
        coefs_[at] = f_.add(coefs_[at], c);
        return;
      }
      slot = (slot + 1) & mask;
    }
    const auto idx = static_cast<std::uint32_t>(degs_.size());
    pool_.insert(pool_.end(), tmp_.begin(), tmp_.end());
    degs_.push_back(deg);
    coefs_.push_back(c);
    hashes_.push_back(h);
    table_[slot] = static_cast<std::int32_t>(idx);
    heap_.push_back(idx);
    std::push_heap(heap_.begin(), heap_.end(), cmp());
    if (degs_.size() * 2 > table_.size()) grow();
  }

  void grow() {
    std::vector<std::int32_t> t(table_.size() * 2, -1);
    const std::size_t mask = t.size() - 1;
    for (std::size_t i = 0; i < hashes_.size(); ++i) {
      std::uint64_t h = hashes_[i];
      std::size_t slot = static_cast<std::size_t>(h ^ (h >> 29)) & mask;
      while (t[slot] >= 0) slot = (slot + 1) & mask;
      t[slot] = static_cast<std::int32_t>(i);
    }
    table_.swap(t);
  }

  Ring ring_;
  F f_;
  std::size_t n_;
  std::vector<std::uint64_t> keys_;
  std::vector<Exp> tmp_;
  std::vector<Exp> pool_;
  std::vector<std::int64_t> degs_;
  std::vector<V> coefs_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::int32_t> table_;
  std::vector<std::uint32_t> heap_;
};

}  // namespace unproj::detail

#endif  // UNPROJ_DETAIL_REDUCER_HPP
