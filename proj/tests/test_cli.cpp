#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "unproj/io.hpp"
#include "unproj/parallel.hpp"

using namespace unproj;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  set_worker_count(1);
  std::ostringstream out, err;
  int s = cli::run(args, out, err);
  set_worker_count(0);
  return {s, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("unproj_test_" + name)).string();
}

std::string golden(const std::string& name) {
  return read_text_file(std::string(UNPROJ_GOLDEN_DIR) + "/" + name);
}

const char* kSmallIdeal =
    "ring ZZ/1021 vars x:1,y:1,z:1 order grevlex\n"
    "# three points in the plane\n"
    "x*z - y^2  # q1\n"
    "x*y - z^2\n"
    "\n"
    "x^2 - y*z\n";

}  // namespace

TEST_CASE("ideal files round trip with labels and comments") {
  IdealFile f = parse_ideal_file(kSmallIdeal);
  CHECK(f.ring->nvars() == 3);
  REQUIRE(f.generators.size() == 3);
  CHECK(f.labels[0] == "q1");
  CHECK(f.labels[1].empty());
  IdealFile g = parse_ideal_file(format_ideal_file(f));
  CHECK(g.ring->same_as(*f.ring));
  for (int i = 0; i < 3; ++i) CHECK(g.generators[i] == change_ring(f.generators[i], g.ring));
  CHECK(g.labels == f.labels);
}

TEST_CASE("malformed ideal files report the line") {
  CHECK_THROWS_WITH_AS(parse_ideal_file("ring ZZ/1021 vars x order grevlex\nx +\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_ideal_file("ring QQ vars x:a order grevlex\n"), ParseError);
  CHECK_THROWS_AS(parse_ideal_file("# nothing\n"), ParseError);
}

TEST_CASE("matrix files round trip") {
  const std::string text =
      "ring QQ vars a,b,c,d,e,f order grevlex\n"
      "skew 4\n"
      "1 2 a\n1 3 b\n1 4 c\n2 3 d\n2 4 e\n3 4 f  # last\n";
  SkewMatrix m = parse_matrix_file(text);
  CHECK(m.size() == 4);
  CHECK(pfaffian(m) == parse_poly("a*f - b*e + c*d", m.ring()));
  CHECK(parse_matrix_file(format_matrix_file(m)) == m);
  CHECK_THROWS_AS(parse_matrix_file("ring QQ vars a order grevlex\nskew 4\n2 1 a\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_file("ring QQ vars a order grevlex\nsquare 4\n"), ParseError);
}

TEST_CASE("classify lists the four JJJ classes") {
  Result r = run({"classify", "--case", "JJJ"});
  CHECK(r.status == 0);
  CHECK(r.out.find("config.command: classify") == 0);
  CHECK(r.out.find("class_count: 4") != std::string::npos);
}

TEST_CASE("reports match the golden files") {
  CHECK(run({"classify", "--case", "TJJ", "--report", "json"}).out == golden("classify_tjj.json"));
  const std::string in = temp_path("cubic.ideal");
  write_text_file(in, kSmallIdeal);
  Result h = run({"gb", "hilbert", "--in", in});
  CHECK(h.status == 0);
  std::string expected = golden("cubic_hilbert.txt");
  // the input path is echoed in the configuration block
  const std::string marker = "@IN@";
  expected.replace(expected.find(marker), marker.size(), in);
  CHECK(h.out == expected);
  std::remove(in.c_str());
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args = {"unproject", "build", "--seed", "4", "--report", "json"};
  Result a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"generators\": 20") != std::string::npos);
  CHECK(a.out.find("\"codimension\": 6") != std::string::npos);
  CHECK(a.out.find("{\n  \"config\"") == 0);
}

TEST_CASE("gb subcommands") {
  const std::string in = temp_path("gb.ideal");
  write_text_file(in, kSmallIdeal);
  Result d = run({"gb", "dim", "--in", in});
  CHECK(d.status == 0);
  CHECK(d.out.find("\ndimension: 1\n") != std::string::npos);
  CHECK(d.out.find("\ncodimension: 2\n") != std::string::npos);
  Result nf = run({"gb", "nf", "--in", in, "--poly", "x^3 - y^3"});
  CHECK(nf.status == 0);
  CHECK(nf.out.find("in_ideal: ") != std::string::npos);
  Result b = run({"gb", "basis", "--in", in});
  CHECK(b.status == 0);
  CHECK(b.out.find("ring ZZ/1021 vars x:1,y:1,z:1 order grevlex") != std::string::npos);
  std::remove(in.c_str());
}

TEST_CASE("a malformed ring header is a usage error") {
  const std::string in = temp_path("bad-ring.ideal");
  write_text_file(in, "ring ZZ/1021 vars x:1,,y order grevlex\nx\n");
  Result r = run({"gb", "dim", "--in", in});
  CHECK(r.status == 1);
  CHECK(r.err.find("error") != std::string::npos);
  std::remove(in.c_str());
  CHECK(run({"gb", "dim", "--in", temp_path("missing.ideal")}).status == 1);
  CHECK(run({"classify", "--case", "XYZ"}).status == 1);
  CHECK(run({"fano", "build", "--id", "1"}).status == 1);
  CHECK(run({"fano", "build", "--prime", "1000"}).status == 1);
  CHECK(run({}).status == 1);
}

TEST_CASE("format check reports violations with status 2") {
  const std::string in = temp_path("tom.matrix");
  // entry (2,3) is not in (z1,z2,z3,z4)
  write_text_file(in,
                  "ring QQ vars z1,z2,z3,z4,w order grevlex\nskew 5\n"
                  "1 2 w\n1 3 w^2\n1 4 w\n1 5 w\n2 3 w\n2 4 z1\n2 5 z2\n3 4 z3\n3 5 z4\n4 5 z1 + z2\n");
  Result bad = run({"format", "check", "--in", in, "--format", "Tom1", "--ideal", "z1,z2,z3,z4"});
  CHECK(bad.status == 2);
  CHECK(bad.out.find("ok: false") != std::string::npos);
  write_text_file(in,
                  "ring QQ vars z1,z2,z3,z4,w order grevlex\nskew 5\n"
                  "1 2 w\n1 3 w^2\n1 4 w\n1 5 w\n2 3 z4\n2 4 z1\n2 5 z2\n3 4 z3\n3 5 z4\n4 5 z1 + z2\n");
  Result ok = run({"format", "check", "--in", in, "--format", "Tom1", "--ideal", "z1,z2,z3,z4"});
  CHECK(ok.status == 0);
  Result pf = run({"pfaffian", "eval", "--in", in});
  CHECK(pf.status == 0);
  CHECK(pf.out.find("pfaffians: [") != std::string::npos);
  std::remove(in.c_str());
}

TEST_CASE("fano build writes a file that fano verify accepts") {
  const std::string path = temp_path("q12979.ideal");
  Result b = run({"fano", "build", "--id", "12979", "--seed", "2", "--out", path});
  CHECK(b.status == 0);
  CHECK(b.out.find("numerator.matches: true") != std::string::npos);
  Result v = run({"fano", "verify", "--id", "12979", "--seed", "2", "--in", path, "--no-quasismooth",
                  "--report", "json"});
  CHECK(v.status == 0);
  for (const char* key : {"\"id\"", "\"seed\"", "\"prime\"", "\"codimension\"", "\"numerator\"",
                          "\"palindromic\"", "\"orbifold\"", "\"quasismooth\"", "\"retries\""})
    CHECK(v.out.find(key) != std::string::npos);
  CHECK(v.out.find("\"matches\": false") == std::string::npos);
  // a file whose variables belong to the other family
  CHECK(run({"fano", "verify", "--id", "14885", "--in", path, "--no-quasismooth"}).status == 1);
  std::remove(path.c_str());
}

TEST_CASE("help lists every flag") {
  const std::map<std::vector<std::string>, std::vector<std::string>> flags = {
      {{"pfaffian", "eval"}, {"--in", "--out", "--report"}},
      {{"format", "check"}, {"--in", "--format", "--ideal", "--report"}},
      {{"classify"}, {"--case", "--report"}},
      {{"unproject", "build"}, {"--prime", "--seed", "--out", "--report", "--budget", "--spec", "--symbolic-cs"}},
      {{"unproject", "verify"}, {"--in", "--report", "--budget"}},
      {{"fano", "build"}, {"--prime", "--seed", "--out", "--report", "--id", "--max-retries"}},
      {{"fano", "verify"},
       {"--prime", "--seed", "--in", "--report", "--budget", "--id", "--max-retries", "--no-quasismooth"}},
      {{"gb", "basis"}, {"--in", "--out", "--report", "--budget"}},
      {{"gb", "dim"}, {"--in", "--report", "--budget"}},
      {{"gb", "hilbert"}, {"--in", "--report", "--budget"}},
      {{"gb", "nf"}, {"--in", "--poly", "--report", "--budget"}},
  };
  for (const auto& [path, expected] : flags) {
    auto args = path;
    args.push_back("--help");
    Result r = run(args);
    CHECK(r.status == 0);
    for (const auto& f : expected) CHECK_MESSAGE(r.out.find(f) != std::string::npos, f);
    CHECK(r.out.find("UNPROJ_THREADS") != std::string::npos);
  }
}
