#pragma once

#include "nullmodel/ensemble.hpp"
#include "nullmodel/models.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace nullmodel::cli {

// Bad flags, malformed or unknown config keys. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OutputPaths {
  std::string annd;
  std::string clustering;
  std::string summary;
};

struct ExperimentConfig {
  std::string model;
  std::int64_t n = 0;
  double tau = 0.0;
  std::int64_t x_min = 1;
  std::optional<double> nu; // hrg only
  std::string strategy;     // empty: model default
  std::int64_t realizations = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> stats{"annd"};
  EpsilonRule eps = EpsilonRule::fixed(0.0);
  std::string binning = "log";
  int bins_per_decade = 16;
  std::optional<std::pair<double, double>> fit_window;
  bool overlay = false;
  OutputPaths output;
};

// Throws ConfigError on unknown keys, wrong types or missing required keys.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& c);

// "auto" or a number in [0,1).
EpsilonRule parse_eps(const std::string& text, std::int64_t m_min, double eps_cap);

// Model spec from the scalar fields; domain checks happen here.
ModelSpec model_spec(const std::string& model, std::int64_t n, double tau, std::int64_t x_min,
                     std::optional<double> nu, const std::string& strategy);

EnsembleOptions ensemble_options(const ExperimentConfig& c, unsigned threads);

} // namespace nullmodel::cli
