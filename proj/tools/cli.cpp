#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "unproj/fano.hpp"
#include "unproj/io.hpp"
#include "unproj/parallel.hpp"

namespace unproj::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad input files, flags or names; reported with exit status 1.
class UsageError : public Error {
public:
  using Error::Error;
};

struct Options {
  std::uint32_t prime = 1021;
  std::uint64_t seed = 1;
  std::string in;
  std::string out;
  std::string report = "text";
  /// Basis-term cap for Groebner computations.
  std::size_t gb_budget = 50000;
  /// Minor cap for the quasi-smoothness certificate.
  std::size_t minor_budget = 2000;
  int id = 14885;
  int max_retries = 5;
  bool no_quasismooth = false;
  std::string triple_case;
  std::string format;
  std::string ideal;
  std::string spec = "tom123";
  std::string symbolic_cs;
  std::string poly;
};

FieldSpec field_of(std::uint32_t p) { return p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p); }

std::string read_input(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::set<int> parse_indices(const std::string& s) {
  std::set<int> out;
  for (const auto& t : split_list(s)) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || k < 1 || k > 25) throw UsageError("--symbolic-cs: bad coefficient index '" + t + "'");
    out.insert(k);
  }
  return out;
}

std::vector<std::string> to_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object()) render_text(*it, key + ".", out);
    else if (it->is_string()) out << key << ": " << it->get<std::string>() << '\n';
    else out << key << ": " << it->dump() << '\n';
  }
}

/// Writes the report, with the ideal inline unless it went to --out.
void emit(const Options& o, Json report, const std::string& ideal_text, std::ostream& out) {
  if (!ideal_text.empty() && !o.out.empty()) write_text_file(o.out, ideal_text);
  const bool inline_ideal = !ideal_text.empty() && o.out.empty();
  if (o.report == "json") {
    if (inline_ideal) {
      Json lines = Json::array();
      std::istringstream is(ideal_text);
      for (std::string l; std::getline(is, l);) lines.push_back(l);
      report["ideal"] = lines;
    }
    out << report.dump(2) << '\n';
  } else {
    render_text(report, "", out);
    if (inline_ideal) out << '\n' << ideal_text;
  }
}

Json numerator_json(const std::vector<std::int64_t>& computed, const std::vector<std::int64_t>* target) {
  Json j;
  j["computed"] = computed;
  j["text"] = HilbertNumerator{computed, {}}.to_string();
  if (target) {
    j["target"] = *target;
    j["matches"] = computed == *target;
  }
  return j;
}

// ---- commands ----

int pfaffian_eval(const Options& o, Json report, std::ostream& out) {
  SkewMatrix m = parsing([&] { return parse_matrix_file(read_input(o.in)); });
  report["size"] = m.size();
  std::string ideal;
  if (m.size() == 5) {
    auto pf = maximal_pfaffians(m);
    report["pfaffians"] = to_strings(pf);
    IdealFile f{m.ring(), pf, {"Pf1", "Pf2", "Pf3", "Pf4", "Pf5"}};
    if (!o.out.empty()) ideal = format_ideal_file(f);
  } else if (m.size() % 2 == 0) {
    report["pfaffian"] = pfaffian(m).to_string();
  } else {
    throw UsageError("pfaffian eval: odd size other than 5");
  }
  emit(o, report, ideal, out);
  return kOk;
}

int format_check_cmd(const Options& o, Json report, std::ostream& out) {
  SkewMatrix m = parsing([&] { return parse_matrix_file(read_input(o.in)); });
  if (m.size() != 5) throw UsageError("format check needs a 5x5 matrix");
  FormatKind f = parsing([&] { return FormatKind::parse(o.format); });
  auto names = split_list(o.ideal);
  if (names.size() != 4) throw UsageError("--ideal needs four variables");
  VariableCI j;
  for (int k = 0; k < 4; ++k) {
    if (!m.ring()->has(names[k])) throw UsageError("--ideal: unknown variable " + names[k]);
    j.generators[k] = names[k];
  }
  FormatCheck c = format_check(m, j, f);
  report["format"] = f.to_string();
  report["ok"] = c.ok;
  Json v = Json::array();
  for (auto [a, b] : c.violations) v.push_back({a, b});
  report["violations"] = v;
  emit(o, report, "", out);
  return c.ok ? kOk : kMismatch;
}

int classify_cmd(const Options& o, Json report, std::ostream& out) {
  TripleCase c = parsing([&] { return parse_triple_case(o.triple_case); });
  auto classes = enumerate_triple_classes(c);
  report["case"] = to_string(c);
  report["tuples"] = triple_count(c);
  report["class_count"] = classes.size();
  Json list = Json::array();
  for (const auto& k : classes)
    list.push_back({{"representative", to_string(k.representative)},
                    {"canonical", to_string(k.canonical)},
                    {"orbit_size", k.orbit_size}});
  report["classes"] = list;
  emit(o, report, "", out);
  return kOk;
}

int unproject_build(const Options& o, Json report, std::ostream& out) {
  if (o.spec != "tom123") throw UsageError("--spec: only tom123 is supported");
  const std::set<int> symbolic = parse_indices(o.symbolic_cs);
  const FieldSpec field = field_of(o.prime);
  CoefficientChoice choice = random_choice(o.prime ? o.prime : 1021, o.seed, symbolic);
  if (!tom123_grading(choice).consistent)
    throw UsageError("--symbolic-cs: this set of symbolic coefficients admits no consistent grading");
  GbBudget budget;
  budget.max_basis_terms = o.gb_budget;
  UnprojectionRun run = run_tom123_unprojection(field, choice, budget);
  const UnprojectionIdeal& u = run.ideal;

  report["generators"] = u.generators.size();
  report["variables"] = u.ring->nvars();
  Json degrees = Json::object();
  for (std::size_t i = 0; i < u.generators.size(); ++i)
    degrees[u.labels[i]] = weighted_degree(u.generators[i]).degree;
  report["degrees"] = degrees;
  Json weights = Json::object();
  for (std::size_t v = 0; v < u.ring->nvars(); ++v) weights[u.ring->name(v)] = u.ring->weight(v);
  report["weights"] = weights;
  report["homogeneous"] = u.homogeneous;
  report["couplings_verified"] = run.a12.verified && run.a13.verified && run.a23.verified;
  int status = kOk;
  try {
    GroebnerBasis gb = buchberger(IdealPresentation(u.ring, u.generators), budget);
    report["codimension"] = static_cast<int>(u.ring->nvars()) - krull_dimension(gb);
    if (report["codimension"] != 6) status = kMismatch;
  } catch (const BudgetExceeded&) {
    report["codimension"] = nullptr;
    report["codimension_status"] = "basis budget exceeded";
    status = kInconclusive;
  }
  if (u.generators.size() != 20 || !u.homogeneous || !report["couplings_verified"].get<bool>())
    status = kMismatch;
  emit(o, report, format_ideal_file({u.ring, u.generators, u.labels}), out);
  return status;
}

int unproject_verify(const Options& o, Json report, std::ostream& out) {
  IdealFile f = parsing([&] { return parse_ideal_file(read_input(o.in)); });
  GbBudget budget;
  budget.max_basis_terms = o.gb_budget;
  report["generators"] = f.generators.size();
  const bool homogeneous = all_homogeneous(f.generators);
  report["homogeneous"] = homogeneous;
  if (!homogeneous) {
    emit(o, report, "", out);
    return kMismatch;
  }
  GroebnerBasis gb = buchberger(IdealPresentation(f.ring, f.generators), budget);
  const int dim = krull_dimension(gb);
  HilbertNumerator h = hilbert_numerator(gb);
  report["dimension"] = dim;
  report["codimension"] = static_cast<int>(f.ring->nvars()) - dim;
  report["numerator"] = numerator_json(h.coefficients, nullptr);
  report["palindromic"] = h.palindromic();
  emit(o, report, "", out);
  return report["codimension"] == 6 && h.palindromic() ? kOk : kMismatch;
}

int fano_build(const Options& o, Json report, std::ostream& out) {
  ConstructionParams p;
  p.id = o.id;
  p.seed = o.seed;
  p.prime = o.prime;
  ConstructedFamily fam = construct_family(p, o.max_retries);
  HilbertReport h = hilbert_report(fam.ideal, fam.basis);
  report["id"] = o.id;
  report["seed"] = o.seed;
  report["prime"] = o.prime;
  report["codimension"] = h.codimension;
  report["numerator"] = numerator_json(h.numerator.coefficients, &fano_target(o.id).numerator);
  report["palindromic"] = h.palindromic;
  report["retries"] = fam.ideal.retries;
  report["rejected"] = fam.rejected;
  emit(o, report, format_ideal_file({fam.ideal.ambient, fam.ideal.generators, fam.ideal.labels}), out);
  return kOk;
}

int fano_verify(const Options& o, Json report, std::ostream& out) {
  const FanoTarget& target = fano_target(o.id);
  FanoIdeal x;
  GroebnerBasis gb;
  std::optional<int> retries;
  if (o.in.empty()) {
    ConstructionParams p;
    p.id = o.id;
    p.seed = o.seed;
    p.prime = o.prime;
    ConstructedFamily fam = construct_family(p, o.max_retries);
    x = std::move(fam.ideal);
    gb = std::move(fam.basis);
    retries = x.retries;
  } else {
    IdealFile f = parsing([&] { return parse_ideal_file(read_input(o.in)); });
    if (!f.ring->field().is_prime()) throw UsageError("fano verify needs an ideal over a prime field");
    if (f.ring->names() != target.ambient_names)
      throw UsageError("the ideal's variables differ from the ambient of id " + std::to_string(o.id));
    x.ambient = f.ring;
    x.generators = f.generators;
    x.labels = f.labels;
    x.params.id = o.id;
    x.params.seed = o.seed;
    x.params.prime = f.ring->field().characteristic();
    gb = buchberger(IdealPresentation(x.ambient, x.generators));
  }
  HilbertReport h = hilbert_report(x, gb);
  bool mismatch = h.codimension != 6 || !h.palindromic || !*h.matches_target;

  report["id"] = o.id;
  report["seed"] = o.seed;
  report["prime"] = x.params.prime;
  report["codimension"] = h.codimension;
  report["numerator"] = numerator_json(h.numerator.coefficients, &target.numerator);
  report["palindromic"] = h.palindromic;
  report["canonical_twist"] = h.canonical_twist;

  Json orb = Json::array();
  auto strata = orbifold_report(x, o.seed);
  for (const auto& s : strata) {
    const FanoTarget::Basket* b = nullptr;
    for (const auto& t : target.baskets)
      if (t.r == s.r) b = &t;
    Json e;
    e["r"] = s.r;
    e["stratum"] = s.variables;
    e["points"] = s.points;
    e["stable"] = !s.unstable;
    e["type"] = s.type.empty() ? Json(nullptr) : Json(orbifold_type_string(s.r, s.type));
    e["coprime_rows_vanish"] = s.coprime_rows_vanish;
    if (b) {
      e["target"] = std::to_string(b->count) + " x " + orbifold_type_string(b->r, b->type);
      const bool ok = !s.unstable && s.points == b->count && s.type == b->type;
      e["matches"] = ok;
      mismatch = mismatch || !ok;
    }
    orb.push_back(e);
  }
  report["orbifold"] = orb;

  int status = mismatch ? kMismatch : kOk;
  Json qs;
  if (o.no_quasismooth) {
    qs["skipped"] = true;
  } else {
    QuasismoothBudget budget;
    budget.max_minors = o.minor_budget;
    QuasismoothCertificate c = quasismooth_certificate(x, gb, budget, o.seed);
    qs["minors_used"] = c.minors_used;
    qs["minors_nonzero"] = c.minors_nonzero;
    qs["dimension"] = c.dimension ? Json(*c.dimension) : Json(nullptr);
    qs["conclusive"] = c.conclusive;
    qs["certified_degree"] = c.conclusive ? Json(c.certified_degree) : Json(nullptr);
    if (!c.conclusive && status == kOk) status = kInconclusive;
  }
  report["quasismooth"] = qs;
  report["retries"] = retries ? Json(*retries) : Json(nullptr);
  emit(o, report, "", out);
  return status;
}

int gb_cmd(const std::string& what, const Options& o, Json report, std::ostream& out) {
  IdealFile f = parsing([&] { return parse_ideal_file(read_input(o.in)); });
  GbBudget budget;
  budget.max_basis_terms = o.gb_budget;
  GroebnerBasis gb = buchberger(IdealPresentation(f.ring, f.generators), budget);
  std::string ideal;
  if (what == "basis") {
    report["size"] = gb.elements.size();
    ideal = format_ideal_file({f.ring, gb.elements, {}});
  } else if (what == "dim") {
    const int d = krull_dimension(gb);
    report["dimension"] = d;
    report["codimension"] = static_cast<int>(f.ring->nvars()) - d;
  } else if (what == "hilbert") {
    HilbertNumerator h = hilbert_numerator(gb);
    report["numerator"] = numerator_json(h.coefficients, nullptr);
    report["palindromic"] = h.palindromic();
  } else {
    if (o.poly.empty()) throw UsageError("gb nf needs --poly");
    Polynomial p = parsing([&] { return parse_poly(o.poly, f.ring); });
    report["input"] = p.to_string();
    Polynomial r = reduce(p, gb);
    report["normal_form"] = r.to_string();
    report["in_ideal"] = r.is_zero();
  }
  emit(o, report, ideal, out);
  return kOk;
}

struct Flags {
  CLI::App* app;
  Options* o;

  Flags& prime(bool allow_zero = false) {
    app->add_option("--prime", o->prime,
                    allow_zero ? "Coefficient field Z/p (0 for QQ)" : "Coefficient field Z/p")
        ->capture_default_str()
        ->check([allow_zero](const std::string& s) -> std::string {
          unsigned long long v = 0;
          try {
            v = std::stoull(s);
          } catch (const std::exception&) {
            return "not a number";
          }
          if (v == 0 && allow_zero) return "";
          if (v < 3 || v > 65521 || !unproj::is_prime(v)) return "must be an odd prime below 65536";
          return "";
        });
    return *this;
  }
  Flags& seed() {
    app->add_option("--seed", o->seed, "Seed for every random draw")->capture_default_str();
    return *this;
  }
  Flags& in(const std::string& what, bool required = true) {
    auto* opt = app->add_option("--in", o->in, what);
    if (required) opt->required();
    return *this;
  }
  Flags& out(const std::string& what) {
    app->add_option("--out", o->out, what);
    return *this;
  }
  Flags& report() {
    app->add_option("--report", o->report, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "json"}));
    return *this;
  }
  Flags& budget(std::size_t& target, const std::string& what) {
    app->add_option("--budget", target, what)->capture_default_str()->check(CLI::PositiveNumber);
    return *this;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for parallel Kustin-Miller unprojection and two Fano 3-folds", "unproj"};
  app.require_subcommand(1);
  app.footer(
      "Environment: UNPROJ_THREADS caps the worker count of the parallel kernels.\n"
      "Exit status: 0 ok, 1 usage or parse error, 2 verification mismatch, 3 inconclusive.");
  Options o;
  std::string command;

  auto* pf = app.add_subcommand("pfaffian", "Pfaffians of skew-symmetric matrices")->require_subcommand(1);
  auto* pf_eval = pf->add_subcommand("eval", "Pfaffian (even size) or maximal pfaffians (size 5)");
  Flags{pf_eval, &o}.in("Matrix file").out("Ideal file of the maximal pfaffians").report();

  auto* fmt = app.add_subcommand("format", "Tom and Jerry formats")->require_subcommand(1);
  auto* fmt_check = fmt->add_subcommand("check", "Whether a 5x5 matrix has a format for an ideal");
  Flags{fmt_check, &o}.in("Matrix file").report();
  fmt_check->add_option("--format", o.format, "Tom1..Tom5 or Jerry12..Jerry45")->required();
  fmt_check->add_option("--ideal", o.ideal, "Four variables generating the ideal, comma separated")->required();

  auto* cls = app.add_subcommand("classify", "S5 classes of triple formats");
  Flags{cls, &o}.report();
  cls->add_option("--case", o.triple_case, "TTT, JJJ, TTJ or TJJ")->required();

  auto* un = app.add_subcommand("unproject", "Parallel unprojection of Tom(1,2,3)")->require_subcommand(1);
  auto* un_build = un->add_subcommand("build", "Build the 20-generator unprojection ideal");
  Flags{un_build, &o}.prime(true).seed().out("Ideal file for the generators").report().budget(
      o.gb_budget, "Cap on basis terms in Groebner computations");
  un_build->add_option("--spec", o.spec, "Triple matrix")->capture_default_str()->check(CLI::IsMember({"tom123"}));
  un_build->add_option("--symbolic-cs", o.symbolic_cs, "Coefficients kept symbolic, e.g. 1,5,9,11");
  auto* un_verify = un->add_subcommand("verify", "Codimension, numerator and symmetry of an ideal file");
  Flags{un_verify, &o}.in("Ideal file").report().budget(o.gb_budget, "Cap on basis terms in Groebner computations");

  auto* fano = app.add_subcommand("fano", "Fano 3-folds 14885 and 12979")->require_subcommand(1);
  auto* fano_b = fano->add_subcommand("build", "Construct a general member");
  Flags{fano_b, &o}.prime().seed().out("Ideal file for the generators").report();
  auto* fano_v = fano->add_subcommand("verify", "Numerator, orbifold points and quasi-smoothness");
  Flags{fano_v, &o}.prime().seed().in("Ideal file (built from --id/--seed/--prime when absent)", false).report().budget(
      o.minor_budget, "Maximal number of sampled 6x6 minors");
  fano_v->add_flag("--no-quasismooth", o.no_quasismooth, "Skip the quasi-smoothness certificate");
  for (auto* s : {fano_b, fano_v}) {
    s->add_option("--id", o.id, "Family id")->capture_default_str()->check(CLI::IsMember({14885, 12979}));
    s->add_option("--max-retries", o.max_retries, "Re-draws allowed after a degenerate draw")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }

  auto* gb = app.add_subcommand("gb", "Groebner bases of ideal files")->require_subcommand(1);
  std::map<CLI::App*, std::string> gb_cmds;
  for (const char* name : {"basis", "dim", "hilbert", "nf"}) {
    const std::string n = name;
    auto* s = gb->add_subcommand(n, n == "basis"     ? "Reduced Groebner basis"
                                    : n == "dim"     ? "Krull dimension and codimension"
                                    : n == "hilbert" ? "Hilbert series numerator"
                                                     : "Normal form of a polynomial");
    Flags f{s, &o};
    f.in("Ideal file").report().budget(o.gb_budget, "Cap on basis terms in Groebner computations");
    if (n == "basis") f.out("Ideal file for the basis");
    if (n == "nf") s->add_option("--poly", o.poly, "Polynomial to reduce")->required();
    gb_cmds[s] = n;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  // the echoed configuration restates every effective option
  auto config = [&](const std::string& cmd, std::initializer_list<const char*> keys) {
    Json c;
    c["command"] = cmd;
    for (std::string k : keys) {
      if (k == "prime") c[k] = o.prime;
      else if (k == "seed") c[k] = o.seed;
      else if (k == "in") c[k] = o.in;
      else if (k == "out") c[k] = o.out;
      else if (k == "budget") c[k] = o.gb_budget;
      else if (k == "minor_budget") c["budget"] = o.minor_budget;
      else if (k == "id") c[k] = o.id;
      else if (k == "max_retries") c[k] = o.max_retries;
      else if (k == "quasismooth") c[k] = !o.no_quasismooth;
      else if (k == "case") c[k] = o.triple_case;
      else if (k == "format") c[k] = o.format;
      else if (k == "ideal") c[k] = o.ideal;
      else if (k == "spec") c[k] = o.spec;
      else if (k == "symbolic_cs") c[k] = o.symbolic_cs;
      else if (k == "poly") c[k] = o.poly;
    }
    c["report"] = o.report;
    c["threads"] = worker_count();
    Json r;
    r["config"] = c;
    return r;
  };

  try {
    if (*pf_eval) return pfaffian_eval(o, config("pfaffian eval", {"in", "out"}), out);
    if (*fmt_check) return format_check_cmd(o, config("format check", {"in", "format", "ideal"}), out);
    if (*cls) return classify_cmd(o, config("classify", {"case"}), out);
    if (*un_build)
      return unproject_build(
          o, config("unproject build", {"spec", "prime", "seed", "symbolic_cs", "out", "budget"}), out);
    if (*un_verify) return unproject_verify(o, config("unproject verify", {"in", "budget"}), out);
    if (*fano_b)
      return fano_build(o, config("fano build", {"id", "seed", "prime", "max_retries", "out"}), out);
    if (*fano_v)
      return fano_verify(
          o, config("fano verify", {"id", "seed", "prime", "in", "max_retries", "minor_budget", "quasismooth"}),
          out);
    for (auto [s, name] : gb_cmds)
      if (*s) {
        Json c = name == "basis" ? config("gb basis", {"in", "out", "budget"})
                 : name == "nf"  ? config("gb nf", {"in", "poly", "budget"})
                                 : config("gb " + name, {"in", "budget"});
        return gb_cmd(name, o, c, out);
      }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  }
  err << app.help();
  return kUsage;
}

}  // namespace unproj::cli
