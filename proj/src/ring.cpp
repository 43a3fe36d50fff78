#include "unproj/ring.hpp"

#include <cctype>
#include <sstream>

namespace unproj {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

RingSpec::RingSpec(std::vector<std::string> names, std::vector<int> weights, FieldSpec field)
    : names_(std::move(names)), weights_(std::move(weights)), field_(field) {
  if (names_.size() != weights_.size())
    throw Error("ring: " + std::to_string(names_.size()) + " variables but " +
                std::to_string(weights_.size()) + " weights");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i])) throw Error("ring: invalid variable name '" + names_[i] + "'");
    if (weights_[i] < 1) throw Error("ring: weight of " + names_[i] + " must be positive");
    if (!index_.emplace(names_[i], i).second)
      throw Error("ring: duplicate variable name '" + names_[i] + "'");
  }
}

Ring RingSpec::make(std::vector<std::string> names, std::vector<int> weights, FieldSpec field) {
  return std::make_shared<const RingSpec>(std::move(names), std::move(weights), field);
}

Ring RingSpec::make(std::vector<std::string> names, FieldSpec field) {
  std::vector<int> w(names.size(), 1);
  return make(std::move(names), std::move(w), field);
}

std::optional<std::size_t> RingSpec::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RingSpec::require_index(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw Error("variable '" + name + "' not in ring");
  return *i;
}

std::string RingSpec::header() const {
  std::ostringstream os;
  os << "ring " << field_.to_string() << " vars ";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) os << ',';
    os << names_[i] << ':' << weights_[i];
  }
  os << " order grevlex";
  return os.str();
}

Ring RingSpec::parse_header(const std::string& line) {
  std::istringstream is(line);
  std::string kw, field, vars_kw, vars, order_kw, order, extra;
  if (!(is >> kw) || kw != "ring") throw ParseError("ring header must start with 'ring'");
  if (!(is >> field)) throw ParseError("ring header: missing field");
  if (!(is >> vars_kw) || vars_kw != "vars") throw ParseError("ring header: expected 'vars'");
  // variable list may contain spaces after commas; read up to "order"
  std::string tok;
  while (is >> tok && tok != "order") vars += tok;
  if (tok != "order") throw ParseError("ring header: expected 'order'");
  if (!(is >> order) || order != "grevlex")
    throw ParseError("ring header: only 'order grevlex' is supported");
  if (is >> extra) throw ParseError("ring header: trailing text '" + extra + "'");

  FieldSpec f = FieldSpec::parse(field);
  std::vector<std::string> names;
  std::vector<int> weights;
  std::istringstream vs(vars);
  std::string item;
  while (std::getline(vs, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError("ring header: empty variable entry");
    auto colon = item.find(':');
    std::string name = trim(item.substr(0, colon));
    int w = 1;
    if (colon != std::string::npos) {
      std::string ws = trim(item.substr(colon + 1));
      if (ws.empty() || ws.size() > 6) throw ParseError("ring header: bad weight for " + name);
      for (char c : ws)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError("ring header: bad weight for " + name);
      w = std::stoi(ws);
    }
    names.push_back(name);
    weights.push_back(w);
  }
  if (names.empty()) throw ParseError("ring header: no variables");
  try {
    return make(std::move(names), std::move(weights), f);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Ring RingSpec::with_field(const FieldSpec& f) const { return make(names_, weights_, f); }

Ring RingSpec::with_weights(std::vector<int> weights) const {
  return make(names_, std::move(weights), field_);
}

std::int64_t RingSpec::degree(std::span<const Exp> exps) const {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) d += static_cast<std::int64_t>(exps[i]) * weights_[i];
  return d;
}

std::string monomial_to_string(const RingSpec& ring, std::span<const Exp> exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!exps[i]) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (exps[i] > 1) out += '^' + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace unproj
