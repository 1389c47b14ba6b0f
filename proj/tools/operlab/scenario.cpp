#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "operlab/errors.hpp"

namespace operlab::cli {

namespace {

const std::vector<std::pair<Pipeline, std::string>>& table() {
  static const std::vector<std::pair<Pipeline, std::string>> t{
      {Pipeline::Spectrum, "spectrum"},         {Pipeline::Bethe, "bethe"},
      {Pipeline::OperVerify, "oper-verify"},    {Pipeline::Monodromy, "monodromy"},
      {Pipeline::BalancedScan, "balanced-scan"}, {Pipeline::HeckeScan, "hecke-scan"},
      {Pipeline::ChiralCheck, "chiral-check"}};
  return t;
}

bool exact_literal(const std::string& s) {
  static const std::regex re(R"(^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$)");
  return std::regex_match(s, re);
}

double to_double(const std::string& field, const std::string& s) {
  if (exact_literal(s)) return parse_rational(s).get_d();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field + ": expected a number, got '" + s + "'");
  }
}

std::vector<std::string> scalars(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) throw ConfigError(field + ": expected a list");
  std::vector<std::string> out;
  for (const auto& e : node) {
    if (!e.IsScalar()) throw ConfigError(field + ": entries must be scalars");
    out.push_back(e.Scalar());
  }
  return out;
}

std::vector<double> numbers(const YAML::Node& node, const std::string& field) {
  std::vector<double> out;
  for (const auto& s : scalars(node, field)) out.push_back(to_double(field, s));
  return out;
}

template <class T>
void read(const YAML::Node& parent, const char* key, T& target, const std::string& prefix) {
  const auto node = parent[key];
  if (!node) return;
  const std::string field = prefix + key;
  if (!node.IsScalar()) throw ConfigError(field + ": expected a scalar");
  if constexpr (std::is_same_v<T, double>) {
    target = to_double(field, node.Scalar());
  } else if constexpr (std::is_same_v<T, int>) {
    try {
      target = node.as<int>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field + ": expected an integer");
    }
  } else if constexpr (std::is_same_v<T, bool>) {
    try {
      target = node.as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field + ": expected true or false");
    }
  } else {
    target = node.Scalar();
  }
}

void positive(double v, const std::string& field) {
  if (!(v > 0)) throw ConfigError(field + ": must be positive");
}

void parse_config(const YAML::Node& node, Scenario& s) {
  if (!node.IsMap()) throw ConfigError("config: expected a mapping");
  for (const char* key : {"t", "lambda", "n"})
    if (!node[key]) throw ConfigError(std::string("config.") + key + ": required");
  const auto t = scalars(node["t"], "config.t");
  const auto lambda = scalars(node["lambda"], "config.lambda");
  int n = 0;
  read(node, "n", n, "config.");
  if (n < 0) throw ConfigError("config.n: must be non-negative");
  if (t.size() != lambda.size()) throw ConfigError("config: t and lambda must have the same length");
  if (t.size() < 2) throw ConfigError("config.t: need at least two finite points");

  bool exact = true;
  for (const auto& v : t) exact = exact && exact_literal(v);
  for (const auto& v : lambda) exact = exact && exact_literal(v);
  try {
    if (exact) {
      std::vector<Rational> tq, lq;
      for (const auto& v : t) tq.push_back(parse_rational(v));
      for (const auto& v : lambda) lq.push_back(parse_rational(v));
      s.exact = make_config(tq, lq, n);
      validate(*s.exact);
      s.config = to_complex(*s.exact);
    } else {
      std::vector<cplx> tc, lc;
      for (const auto& v : t) tc.emplace_back(to_double("config.t", v), 0.0);
      for (const auto& v : lambda) lc.emplace_back(to_double("config.lambda", v), 0.0);
      s.config = make_config(tc, lc, n);
    }
    validate(s.config);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  s.has_config = true;
}

void parse_knobs(const YAML::Node& node, Knobs& k) {
  read(node, "tol", k.tol, "knobs.");
  read(node, "draws", k.draws, "knobs.");
  read(node, "bae_tol", k.bae_tol, "knobs.");
  read(node, "seeds", k.seeds, "knobs.");
  read(node, "ode_tol", k.ode_tol, "knobs.");
  read(node, "classify_tol", k.classify_tol, "knobs.");
  read(node, "capped", k.capped, "knobs.");
  read(node, "stencil_h", k.stencil_h, "knobs.");
  if (node["mu"]) k.mu = scalars(node["mu"], "knobs.mu");
  for (const auto& v : k.mu) to_double("knobs.mu", v);
  positive(k.tol, "knobs.tol");
  positive(k.draws, "knobs.draws");
  positive(k.bae_tol, "knobs.bae_tol");
  positive(k.seeds, "knobs.seeds");
  positive(k.ode_tol, "knobs.ode_tol");
  positive(k.classify_tol, "knobs.classify_tol");
  positive(k.stencil_h, "knobs.stencil_h");
  if (k.capped != "auto" && k.capped != "true" && k.capped != "false")
    throw ConfigError("knobs.capped: expected auto, true or false");
}

void parse_balanced(const YAML::Node& node, BalancedKnobs& b) {
  if (!node || !node.IsMap()) throw ConfigError("balanced: section required for balanced-scan");
  if (!node["t"]) throw ConfigError("balanced.t: required");
  b.t = numbers(node["t"], "balanced.t");
  if (b.t.size() != 3) throw ConfigError("balanced.t: exactly three finite points");
  for (std::size_t i = 1; i < b.t.size(); ++i)
    if (!(b.t[i - 1] < b.t[i])) throw ConfigError("balanced.t: points must be strictly increasing");
  b.c_imag = node["c_imag"] ? numbers(node["c_imag"], "balanced.c_imag") : std::vector<double>(4, 0.0);
  if (b.c_imag.size() != 4) throw ConfigError("balanced.c_imag: four entries (three points and infinity)");
  read(node, "lo", b.lo, "balanced.");
  read(node, "hi", b.hi, "balanced.");
  read(node, "step", b.step, "balanced.");
  read(node, "a_tol", b.a_tol, "balanced.");
  if (!(b.lo < b.hi)) throw ConfigError("balanced: lo must be below hi");
  positive(b.step, "balanced.step");
  positive(b.a_tol, "balanced.a_tol");
}

void parse_hecke(const YAML::Node& node, HeckeKnobs& h) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError("hecke: expected a mapping");
  read(node, "mode", h.mode, "hecke.");
  if (h.mode != "beta" && h.mode != "3pt") throw ConfigError("hecke.mode: expected beta or 3pt");
  read(node, "a", h.a, "hecke.");
  read(node, "b", h.b, "hecke.");
  read(node, "c", h.c, "hecke.");
  if (node["x"]) h.x = numbers(node["x"], "hecke.x");
  read(node, "solution", h.solution, "hecke.");
  read(node, "re_lo", h.re_lo, "hecke.");
  read(node, "re_hi", h.re_hi, "hecke.");
  read(node, "im_lo", h.im_lo, "hecke.");
  read(node, "im_hi", h.im_hi, "hecke.");
  read(node, "nx", h.nx, "hecke.");
  read(node, "ny", h.ny, "hecke.");
  read(node, "pde", h.pde, "hecke.");
  read(node, "pde_h", h.pde_h, "hecke.");
  positive(h.nx, "hecke.nx");
  positive(h.ny, "hecke.ny");
  positive(h.pde_h, "hecke.pde_h");
  if (h.solution < 0) throw ConfigError("hecke.solution: must be non-negative");
  if (!(h.re_lo < h.re_hi) || !(h.im_lo < h.im_hi)) throw ConfigError("hecke: grid bounds must be increasing");
  if (h.im_lo * h.im_hi <= 0) throw ConfigError("hecke: grid must not meet the real axis");
  if (h.mode == "3pt" && h.c == 0.0) throw ConfigError("hecke.c: must be non-zero");
  for (double x : h.x)
    if (x == 0.0 || x == 1.0) throw ConfigError("hecke.x: must avoid 0 and 1");
}

void parse_chiral(const YAML::Node& node, ChiralKnobs& c) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError("chiral: expected a mapping");
  if (node["x"]) c.x = scalars(node["x"], "chiral.x");
  for (const auto& v : c.x)
    if (!exact_literal(v)) throw ConfigError("chiral.x: sample points must be integers or fractions");
  if (c.x.empty()) throw ConfigError("chiral.x: at least one sample point");
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [p, n] : table()) v.push_back(n);
    return v;
  }();
  return names;
}

std::optional<Pipeline> parse_pipeline(const std::string& name) {
  for (const auto& [p, n] : table())
    if (n == name) return p;
  return std::nullopt;
}

const char* to_string(Pipeline p) {
  for (const auto& [q, n] : table())
    if (q == p) return n.c_str();
  return "?";
}

Scenario parse_scenario(const std::string& text, Pipeline kind) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("scenario: top level must be a mapping");
  Scenario s;
  s.kind = kind;
  if (root["pipeline"]) {
    const auto p = parse_pipeline(root["pipeline"].Scalar());
    if (!p) throw ConfigError("pipeline: unknown name '" + root["pipeline"].Scalar() + "'");
    if (*p != kind) throw ConfigError("pipeline: file declares '" + root["pipeline"].Scalar() + "'");
  }
  if (root["knobs"]) parse_knobs(root["knobs"], s.knobs);
  else parse_knobs(YAML::Node(YAML::NodeType::Map), s.knobs);
  if (root["config"]) parse_config(root["config"], s);
  parse_hecke(root["hecke"], s.hecke);
  parse_chiral(root["chiral"], s.chiral);

  const bool needs_config = kind != Pipeline::BalancedScan && !(kind == Pipeline::HeckeScan && s.hecke.mode == "3pt");
  if (needs_config && !s.has_config) throw ConfigError("config: section required for this pipeline");
  if (kind == Pipeline::BalancedScan) parse_balanced(root["balanced"], s.balanced);
  if (kind == Pipeline::ChiralCheck && !s.exact)
    throw ConfigError("config: chiral-check needs exact (integer or fraction) entries");
  return s;
}

Scenario load_scenario(const std::string& path, Pipeline kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), kind);
}

}  // namespace operlab::cli
