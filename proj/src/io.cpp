#include "unproj/io.hpp"

#include <fstream>
#include <sstream>

namespace unproj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits a line into its content and its comment, both trimmed.
std::pair<std::string, std::string> split_comment(const std::string& line) {
  const auto h = line.find('#');
  if (h == std::string::npos) return {trim(line), ""};
  return {trim(line.substr(0, h)), trim(line.substr(h + 1))};
}

/// Non-empty content lines with their comments and 1-based line numbers.
struct Line {
  int number;
  std::string content;
  std::string comment;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    auto [content, comment] = split_comment(line);
    if (!content.empty()) out.push_back({n, content, comment});
  }
  return out;
}

std::string at_line(int n, const std::string& msg) { return "line " + std::to_string(n) + ": " + msg; }

}  // namespace

IdealFile parse_ideal_file(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("ideal file: missing ring header");
  IdealFile f;
  try {
    f.ring = RingSpec::parse_header(lines[0].content);
  } catch (const ParseError& e) {
    throw ParseError(at_line(lines[0].number, e.what()));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      f.generators.push_back(parse_poly(lines[i].content, f.ring));
    } catch (const ParseError& e) {
      throw ParseError(at_line(lines[i].number, e.what()));
    }
    f.labels.push_back(lines[i].comment);
  }
  return f;
}

std::string format_ideal_file(const IdealFile& f) {
  std::ostringstream os;
  os << f.ring->header() << '\n';
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    os << f.generators[i].to_string();
    if (i < f.labels.size() && !f.labels[i].empty()) os << "  # " << f.labels[i];
    os << '\n';
  }
  return os.str();
}

SkewMatrix parse_matrix_file(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.size() < 2) throw ParseError("matrix file: expected a ring header and a 'skew n' line");
  Ring ring;
  try {
    ring = RingSpec::parse_header(lines[0].content);
  } catch (const ParseError& e) {
    throw ParseError(at_line(lines[0].number, e.what()));
  }
  std::istringstream hs(lines[1].content);
  std::string kw, extra;
  int n = 0;
  if (!(hs >> kw >> n) || kw != "skew" || n < 1 || (hs >> extra))
    throw ParseError(at_line(lines[1].number, "expected 'skew <size>'"));
  SkewMatrix m(ring, n);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    std::istringstream ls(lines[k].content);
    int i = 0, j = 0;
    if (!(ls >> i >> j)) throw ParseError(at_line(lines[k].number, "expected 'i j <polynomial>'"));
    if (i < 1 || j > n || i >= j)
      throw ParseError(at_line(lines[k].number, "entry must satisfy 1 <= i < j <= " + std::to_string(n)));
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (rest.empty()) throw ParseError(at_line(lines[k].number, "missing polynomial"));
    try {
      m.set(i, j, parse_poly(rest, ring));
    } catch (const ParseError& e) {
      throw ParseError(at_line(lines[k].number, e.what()));
    }
  }
  return m;
}

std::string format_matrix_file(const SkewMatrix& m) {
  std::ostringstream os;
  os << m.ring()->header() << '\n' << "skew " << m.size() << '\n';
  for (const auto& [ij, p] : m.upper()) os << ij.first << ' ' << ij.second << ' ' << p.to_string() << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace unproj
