#ifndef UNPROJ_RING_HPP
#define UNPROJ_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "unproj/field.hpp"

namespace unproj {

using Exp = std::uint16_t;

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/// Polynomial ring k[x_1..x_n] with positive integer weights, ordered by
/// weighted degree and then reverse lexicographically.
class RingSpec {
public:
  RingSpec(std::vector<std::string> names, std::vector<int> weights, FieldSpec field);

  static Ring make(std::vector<std::string> names, std::vector<int> weights, FieldSpec field);
  /// All weights equal to one.
  static Ring make(std::vector<std::string> names, FieldSpec field);

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }
  const FieldSpec& field() const { return field_; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require_index(const std::string& name) const;
  bool has(const std::string& name) const { return index_of(name).has_value(); }

  /// "ring ZZ/1021 vars x:1,y:2 order grevlex"
  std::string header() const;
  static Ring parse_header(const std::string& line);

  Ring with_field(const FieldSpec& f) const;
  Ring with_weights(std::vector<int> weights) const;

  bool same_as(const RingSpec& o) const {
    return names_ == o.names_ && weights_ == o.weights_ && field_ == o.field_;
  }

  std::int64_t degree(std::span<const Exp> exps) const;

private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
  FieldSpec field_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || a->same_as(*b); }

/// Three-way comparison in the weighted reverse lexicographic order.
/// Returns >0 if a is larger.
inline int compare_monomials(const Exp* a, std::int64_t da, const Exp* b, std::int64_t db,
                             std::size_t n) {
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

inline bool divides(const Exp* a, const Exp* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Bitmask of variables with positive exponent (variable i maps to bit i mod 64).
inline std::uint64_t support_mask(const Exp* a, std::size_t n) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) m |= std::uint64_t{1} << (i & 63);
  return m;
}

/// Exponent vector owned by value; used at API boundaries.
struct Monomial {
  std::vector<Exp> exps;

  std::size_t size() const { return exps.size(); }
  Exp operator[](std::size_t i) const { return exps[i]; }
  bool operator==(const Monomial&) const = default;
};

std::string monomial_to_string(const RingSpec& ring, std::span<const Exp> exps);

}  // namespace unproj

#endif  // UNPROJ_RING_HPP
