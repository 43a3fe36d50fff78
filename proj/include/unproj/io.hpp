#ifndef UNPROJ_IO_HPP
#define UNPROJ_IO_HPP

#include <string>
#include <vector>

#include "unproj/pfaffian.hpp"
#include "unproj/polynomial.hpp"

namespace unproj {

/// Ring header line, then one generator per line. A label, when present, is
/// written as a trailing comment.
struct IdealFile {
  Ring ring;
  std::vector<Polynomial> generators;
  std::vector<std::string> labels;
};

/// `#` starts a comment; blank lines are skipped. A comment that follows a
/// generator on the same line becomes its label.
IdealFile parse_ideal_file(const std::string& text);
std::string format_ideal_file(const IdealFile& f);

/// Ring header line, `skew n`, then `i j <polynomial>` for upper-triangle
/// entries; omitted entries are zero.
SkewMatrix parse_matrix_file(const std::string& text);
std::string format_matrix_file(const SkewMatrix& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace unproj

#endif  // UNPROJ_IO_HPP
