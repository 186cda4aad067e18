#include "config.hpp"

#include "nullmodel/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>

namespace nullmodel::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
T get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

std::int64_t get_int(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

EpsilonRule eps_from_json(const json& j) {
  if (j.is_string()) return parse_eps(j.get<std::string>(), 20, 0.25);
  if (j.is_number()) {
    try {
      return EpsilonRule::fixed(j.get<double>());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("epsilon: ") + e.what());
    }
  }
  reject_unknown(j, {"mode", "eps", "m_min", "eps_cap"}, "epsilon");
  const auto mode = j.contains("mode") ? get<std::string>(j, "mode") : std::string("fixed");
  try {
    if (mode == "fixed") return EpsilonRule::fixed(j.contains("eps") ? get<double>(j, "eps") : 0.0);
    if (mode == "auto") {
      if (j.contains("eps")) throw ConfigError("epsilon.eps is not used in auto mode");
      return EpsilonRule::automatic(j.contains("m_min") ? get_int(j, "m_min") : 20,
                                    j.contains("eps_cap") ? get<double>(j, "eps_cap") : 0.25);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("epsilon: ") + e.what());
  }
  throw ConfigError("epsilon.mode must be 'fixed' or 'auto'");
}

json eps_to_json(const EpsilonRule& r) {
  if (r.mode == EpsilonRule::Mode::fixed) return json{{"mode", "fixed"}, {"eps", r.eps}};
  return json{{"mode", "auto"}, {"m_min", r.m_min}, {"eps_cap", r.eps_cap}};
}

} // namespace

EpsilonRule parse_eps(const std::string& text, std::int64_t m_min, double eps_cap) {
  try {
    if (text == "auto") return EpsilonRule::automatic(m_min, eps_cap);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError("eps must be 'auto' or a number, got '" + text + "'");
    }
    return EpsilonRule::fixed(v);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  reject_unknown(j, {"model", "n", "tau", "x_min", "nu", "strategy", "realizations", "seed", "stats", "epsilon",
                     "binning", "bins_per_decade", "fit_window", "overlay", "output"},
                 "config");
  for (const char* key : {"model", "n", "tau", "realizations"}) {
    if (!j.contains(key)) throw ConfigError(std::string("missing required config key '") + key + "'");
  }
  ExperimentConfig c;
  c.model = get<std::string>(j, "model");
  c.n = get_int(j, "n");
  c.tau = get<double>(j, "tau");
  c.realizations = get_int(j, "realizations");
  if (j.contains("x_min")) c.x_min = get_int(j, "x_min");
  if (j.contains("nu")) c.nu = get<double>(j, "nu");
  if (j.contains("strategy")) c.strategy = get<std::string>(j, "strategy");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("stats")) c.stats = get<std::vector<std::string>>(j, "stats");
  if (j.contains("epsilon")) c.eps = eps_from_json(j["epsilon"]);
  if (j.contains("binning")) c.binning = get<std::string>(j, "binning");
  if (j.contains("bins_per_decade")) c.bins_per_decade = static_cast<int>(get_int(j, "bins_per_decade"));
  if (j.contains("fit_window")) {
    auto w = get<std::vector<double>>(j, "fit_window");
    if (w.size() != 2 || !(w[0] > 0.0) || !(w[0] < w[1])) {
      throw ConfigError("fit_window must be [k_lo, k_hi] with 0 < k_lo < k_hi");
    }
    c.fit_window = std::pair{w[0], w[1]};
  }
  if (j.contains("overlay")) c.overlay = get<bool>(j, "overlay");
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, {"annd", "clustering", "summary"}, "output");
    if (o.contains("annd")) c.output.annd = get<std::string>(o, "annd");
    if (o.contains("clustering")) c.output.clustering = get<std::string>(o, "clustering");
    if (o.contains("summary")) c.output.summary = get<std::string>(o, "summary");
  }

  if (c.realizations < 1) throw ConfigError("realizations must be >= 1");
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.nu && c.model != "hrg") throw ConfigError("nu applies to the hrg model only");
  if (c.stats.empty()) throw ConfigError("stats must not be empty");
  for (const auto& s : c.stats) {
    if (s != "annd" && s != "clustering") throw ConfigError("unknown statistic '" + s + "'");
  }
  if (c.binning != "log" && c.binning != "raw") throw ConfigError("binning must be 'log' or 'raw'");
  if (c.bins_per_decade < 1) throw ConfigError("bins_per_decade must be >= 1");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j{{"model", c.model},
         {"n", c.n},
         {"tau", c.tau},
         {"x_min", c.x_min},
         {"realizations", c.realizations},
         {"seed", c.seed},
         {"stats", c.stats},
         {"epsilon", eps_to_json(c.eps)},
         {"binning", c.binning},
         {"bins_per_decade", c.bins_per_decade},
         {"overlay", c.overlay}};
  if (c.nu) j["nu"] = *c.nu;
  if (!c.strategy.empty()) j["strategy"] = c.strategy;
  if (c.fit_window) j["fit_window"] = {c.fit_window->first, c.fit_window->second};
  return j;
}

ModelSpec model_spec(const std::string& model, std::int64_t n, double tau, std::int64_t x_min,
                     std::optional<double> nu, const std::string& strategy) {
  ModelSpec m;
  // unknown names are configuration mistakes, not domain violations
  try {
    m.kind = parse_model_kind(model);
    if (!strategy.empty() && m.kind == ModelKind::irg) m.irg_strategy = parse_irg_strategy(strategy);
    if (!strategy.empty() && m.kind == ModelKind::hrg) m.hrg_strategy = parse_hrg_strategy(strategy);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!strategy.empty() && m.kind == ModelKind::ecm) throw ConfigError("the ecm model has no strategy option");
  if (n < 1) throw DomainError("n must be >= 1");
  m.n = static_cast<std::size_t>(n);
  m.law = PowerLawSpec::make(tau, x_min);
  if (nu) {
    if (m.kind != ModelKind::hrg) throw ConfigError("--nu applies to the hrg model only");
    m.nu = *nu;
  }
  if (m.kind == ModelKind::hrg) HrgParams::make(m.n, tau, m.nu);
  return m;
}

EnsembleOptions ensemble_options(const ExperimentConfig& c, unsigned threads) {
  EnsembleOptions o;
  o.realizations = c.realizations;
  o.seed = c.seed;
  o.stats.clear();
  for (const auto& s : c.stats) o.stats.push_back(parse_statistic(s));
  o.binning = parse_binning(c.binning, c.bins_per_decade);
  o.eps = c.eps;
  o.threads = threads;
  return o;
}

} // namespace nullmodel::cli
