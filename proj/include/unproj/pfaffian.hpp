#ifndef UNPROJ_PFAFFIAN_HPP
#define UNPROJ_PFAFFIAN_HPP

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "unproj/polynomial.hpp"

namespace unproj {

/// Skew-symmetric matrix stored by its upper triangle; indices are 1-based.
class SkewMatrix {
public:
  SkewMatrix() = default;
  SkewMatrix(Ring ring, int size);

  int size() const { return n_; }
  const Ring& ring() const { return ring_; }

  /// Entry (i, j) for any i, j; (j, i) is the negative and the diagonal is 0.
  Polynomial entry(int i, int j) const;
  void set(int i, int j, Polynomial p);

  /// Full matrix, 0-based.
  PolyMatrix materialize() const;

  /// Nonzero upper-triangle entries keyed by (i, j) with i < j.
  const std::map<std::pair<int, int>, Polynomial>& upper() const { return upper_; }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b);

private:
  void check_index(int i, int j) const;

  Ring ring_;
  int n_ = 0;
  std::map<std::pair<int, int>, Polynomial> upper_;
};

/// Pfaffian of an even-size matrix, by expansion along the first row.
Polynomial pfaffian(const SkewMatrix& m);

/// Pfaffians of the principal 4x4 submatrices with row/column i removed, i = 1..5.
std::vector<Polynomial> maximal_pfaffians(const SkewMatrix& m);

/// Matrix whose (i, j) entry is the variable m<i><j> of a fresh ring.
SkewMatrix generic_skew(int size, const FieldSpec& field);

/// The matrix with entries m(sigma(i), sigma(j)), i.e. P M P^t for the
/// permutation matrix with P[i][sigma(i)] = 1. sigma is 1-based: sigma[i-1] = sigma(i).
SkewMatrix conjugate(const SkewMatrix& m, const std::array<int, 5>& sigma);

/// Complete intersection generated by four distinct ring variables.
struct VariableCI {
  std::array<std::string, 4> generators;

  /// Exact membership: every term is divisible by a generator.
  bool contains(const Polynomial& p) const;
  bool has(const std::string& var) const;
  std::string to_string() const;
};

/// Tom_i or Jerry_ij.
struct FormatKind {
  enum class Kind { Tom, Jerry };
  Kind kind = Kind::Tom;
  int i = 1;
  int j = 0;

  static FormatKind tom(int i);
  static FormatKind jerry(int i, int j);
  /// "Tom1", "Jerry23"; also accepts "T1", "J23".
  static FormatKind parse(const std::string& s);

  /// True iff entry (k, l) has to lie in the ideal for this format.
  bool constrains(int k, int l) const;
  std::string to_string() const;

  /// Format of conjugate(m, sigma) when m has this format.
  FormatKind transformed(const std::array<int, 5>& sigma) const;

  auto operator<=>(const FormatKind&) const = default;
};

struct FormatCheck {
  bool ok = true;
  /// Constrained entries (k, l) that are not in the ideal.
  std::vector<std::pair<int, int>> violations;
};

FormatCheck format_check(const SkewMatrix& m, const VariableCI& j, const FormatKind& f);

enum class TripleCase { TTT, JJJ, TTJ, TJJ };

std::string to_string(TripleCase c);
TripleCase parse_triple_case(const std::string& s);

/// Three formats; format t goes with ideal J_t.
using TripleFormats = std::array<FormatKind, 3>;

std::string to_string(const TripleFormats& t);

struct TripleFormatSpec {
  TripleFormats formats;
  /// For each upper entry (k, l): the (1-based) indices t whose ideal must
  /// contain it. Unconstrained entries map to an empty list.
  std::map<std::pair<int, int>, std::vector<int>> table;
};

TripleFormatSpec triple_constraints(const TripleFormats& formats);

struct OrbitClass {
  TripleCase which;
  /// Representative named in the classification of section 4.
  TripleFormats representative;
  /// Lexicographically least member of the orbit.
  TripleFormats canonical;
  std::size_t orbit_size = 0;
};

/// Number of index tuples in a case (formats of one kind are unordered).
std::size_t triple_count(TripleCase c);

/// S5 orbits on the tuples of a case, ordered as in the classification.
std::vector<OrbitClass> enumerate_triple_classes(TripleCase c);

/// Ideals J1 = (z2,z3,z5,z7), J2 = (z1,z2,z4,z5), J3 = (z1,z2,z3,z6).
std::array<VariableCI, 3> tom123_ideals();

/// k[z1..z7, c1..c25] with all weights 1.
Ring tom123_ring(const FieldSpec& field);

struct Tom123 {
  SkewMatrix matrix;
  std::array<VariableCI, 3> ideals;
};

/// The Tom1+Tom2+Tom3 matrix in the ideals above; ring must contain z1..z7 and
/// c1..c25.
Tom123 build_tom123(const Ring& ring);

struct GenericTriple {
  SkewMatrix matrix;
  std::array<VariableCI, 3> ideals;
  std::size_t coefficient_count = 0;
};

/// Generic matrix of a triple format in the ideals of tom123_ideals(): every
/// entry is a combination, with fresh coefficient variables, of the minimal
/// generators of the intersection of its constraining ideals (all z's when
/// unconstrained).
GenericTriple generic_triple(const TripleFormats& formats, const FieldSpec& field);

}  // namespace unproj

#endif  // UNPROJ_PFAFFIAN_HPP
