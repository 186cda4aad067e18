#include "config.hpp"
#include "output.hpp"

#include "nullmodel/ensemble.hpp"
#include "nullmodel/errors.hpp"
#include "nullmodel/graph.hpp"
#include "nullmodel/models.hpp"
#include "nullmodel/stats.hpp"
#include "nullmodel/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>

using namespace nullmodel;
using namespace nullmodel::cli;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_io = 3;
constexpr int exit_domain = 4;

void write_json(const json& j, const std::string& path) {
  OutputSink sink(path);
  sink.stream() << j.dump(2) << '\n';
  sink.close();
}

unsigned resolve_threads(const CLI::Option* flag, unsigned from_flag) {
  if (flag->count() > 0) {
    if (from_flag < 1) throw ConfigError("--threads must be >= 1");
    return from_flag;
  }
  const char* env = std::getenv("NULLMODEL_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  const std::string text(env);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 1 || v > 4096) throw ConfigError("NULLMODEL_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

// ---- generate ----

struct GenerateArgs {
  std::string model;
  std::int64_t n = 0;
  double tau = 0.0;
  std::int64_t x_min = 1;
  double nu = 1.0;
  CLI::Option* nu_flag = nullptr;
  std::string strategy;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  const auto spec = model_spec(a.model, a.n, a.tau, a.x_min,
                               a.nu_flag->count() ? std::optional<double>(a.nu) : std::nullopt, a.strategy);
  const auto outcome = generate(spec, SeedSpec{a.seed, a.stream});
  const auto& g = graph_of(outcome);

  json meta{{"model", std::string(to_string(spec.kind))},
            {"n", a.n},
            {"tau", a.tau},
            {"x_min", a.x_min},
            {"seed", a.seed},
            {"stream", a.stream},
            {"edges", g.num_edges()}};
  if (const auto* e = std::get_if<EcmOutcome>(&outcome)) {
    meta["L_n"] = e->L_n;
    meta["erased_degree_sum"] = 2 * g.num_edges();
  } else if (const auto* i = std::get_if<IrgOutcome>(&outcome)) {
    meta["strategy"] = std::string(to_string(spec.irg_strategy));
    meta["mu_n"] = i->mu_n;
  } else {
    meta["nu"] = spec.nu;
    meta["strategy"] = std::string(to_string(spec.hrg_strategy));
    meta["R"] = std::get<HrgOutcome>(outcome).params.R;
  }

  OutputSink sink(a.out);
  write_edge_list(g, sink.stream());
  sink.close();
  write_json(meta, a.out + ".json");
}

// ---- annd / clustering / ingest ----

struct GraphArgs {
  std::string input;
  std::string out = "-";
  std::string eps = "0";
  std::int64_t m_min = 20;
  double eps_cap = 0.25;
};

std::vector<AnndRow> band_rows(const SimpleGraph& g, const EpsilonRule& rule) {
  const DegreeClassIndex index(g);
  std::vector<AnndRow> rows;
  for (std::int64_t k = 1; k <= index.max_degree(); ++k) {
    auto b = index.band(k, rule);
    if (b.empty) continue;
    rows.push_back({k, b.members, b.eps, b.value});
  }
  return rows;
}

SimpleGraph load_graph(const std::string& path) {
  auto file = read_edge_list(path);
  return build_simple_graph(file.n, std::move(file.edges));
}

void cmd_annd(const GraphArgs& a) {
  const auto rule = parse_eps(a.eps, a.m_min, a.eps_cap);
  const auto g = load_graph(a.input);
  OutputSink sink(a.out);
  write_band_csv(sink.stream(), band_rows(g, rule));
  sink.close();
}

void cmd_clustering(const GraphArgs& a) {
  const auto g = load_graph(a.input);
  OutputSink sink(a.out);
  write_clustering_csv(sink.stream(), clustering_curve(g));
  sink.close();
}

void cmd_ingest(const GraphArgs& a, const std::string& prefix) {
  const auto rule = parse_eps(a.eps, a.m_min, a.eps_cap);
  auto file = read_edge_list(a.input);
  const auto labels = file.labels.size();
  const auto g = build_simple_graph(file.n, std::move(file.edges));
  {
    OutputSink sink(prefix + "_annd.csv");
    write_band_csv(sink.stream(), band_rows(g, rule));
    sink.close();
  }
  {
    OutputSink sink(prefix + "_clustering.csv");
    write_clustering_csv(sink.stream(), clustering_curve(g));
    sink.close();
  }
  std::int64_t degree_sum = 0;
  for (auto d : g.degrees()) degree_sum += d;
  write_json(json{{"vertices", g.num_vertices()},
                  {"labels", labels},
                  {"edges", g.num_edges()},
                  {"max_degree", g.max_degree()},
                  {"mean_degree", g.num_vertices() ? static_cast<double>(degree_sum) / g.num_vertices() : 0.0}},
             prefix + ".json");
}

// ---- ensemble ----

struct EnsembleArgs {
  std::string config;
  json overrides = json::object();
  unsigned threads = 1;
  CLI::Option* threads_flag = nullptr;
};

void cmd_ensemble(const EnsembleArgs& a) {
  json base = json::object();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot open config file '" + a.config + "'");
    try {
      base = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + a.config + "': " + e.what());
    }
    if (!base.is_object()) throw ConfigError("config must be a JSON object");
  }
  base.merge_patch(a.overrides);
  const auto cfg = parse_config(base);
  const unsigned threads = resolve_threads(a.threads_flag, a.threads);

  const auto spec = model_spec(cfg.model, cfg.n, cfg.tau, cfg.x_min, cfg.nu, cfg.strategy);
  const auto options = ensemble_options(cfg, threads);
  if (cfg.stats.size() > 1) {
    for (const auto& s : cfg.stats) {
      const auto& path = s == "annd" ? cfg.output.annd : cfg.output.clustering;
      if (path.empty() || path == "-") {
        throw ConfigError("several statistics requested; give output." + s + " a file path");
      }
    }
  }

  const auto summaries = ensemble_run(spec, options);

  json results = json::array();
  for (const auto& s : summaries) {
    const bool annd = s.stat == Statistic::annd;
    std::function<double(double)> overlay;
    if (annd && cfg.overlay) {
      const double C = theory::tail_constant(spec.kind, spec.law.tau, spec.law.c, spec.law.mu, spec.nu);
      const double n = static_cast<double>(cfg.n);
      const double tau = spec.law.tau;
      overlay = [C, n, tau](double k) { return C * theory::tail_scale(n, k, tau); };
    }
    OutputSink sink(annd ? cfg.output.annd : cfg.output.clustering);
    write_ensemble_csv(sink.stream(), s, overlay);
    sink.close();

    json r{{"stat", std::string(to_string(s.stat))}, {"rows", s.rows.size()}};
    if (cfg.fit_window) {
      const auto curve = s.median_curve();
      try {
        const auto f = fit_loglog_slope(curve, cfg.fit_window->first, cfg.fit_window->second);
        r["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
      } catch (const InsufficientData& e) {
        r["fit"] = nullptr;
        r["fit_error"] = e.what();
      }
    }
    results.push_back(std::move(r));
  }
  if (!cfg.output.summary.empty()) write_json(json{{"config", to_json(cfg)}, {"results", results}}, cfg.output.summary);
}

// ---- theory ----

struct TheoryArgs {
  std::string model;
  double n = 0;
  double tau = 0;
  std::int64_t x_min = 1;
  double nu = 1.0;
  CLI::Option* nu_flag = nullptr;
  double c = 0;
  CLI::Option* c_flag = nullptr;
  double mu = 0;
  CLI::Option* mu_flag = nullptr;
  double tol = 1e-8;
  std::vector<double> ks;
  std::string out = "-";
};

void cmd_theory(const TheoryArgs& a) {
  ModelKind kind;
  try {
    kind = parse_model_kind(a.model);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (a.nu_flag->count() && kind != ModelKind::hrg) throw ConfigError("--nu applies to the hrg model only");
  auto law = PowerLawSpec::make(a.tau, a.x_min);
  if (a.c_flag->count()) law.c = a.c;
  if (a.mu_flag->count()) law.mu = a.mu;
  if (!(law.c > 0.0) || !(law.mu > 0.0)) throw DomainError("c and mu must be positive");
  if (!(a.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

  const auto p = theory::predict(kind, a.n, law, a.nu, a.tol);
  json j{{"model", std::string(to_string(kind))},
         {"n", p.n},
         {"tau", p.tau},
         {"x_min", p.x_min},
         {"threshold_k", p.thresholds.threshold_k},
         {"cutoff_k", p.thresholds.cutoff_k},
         {"plateau_prefactor", p.plateau_prefactor},
         {"plateau_scale", p.plateau_scale},
         {"stable_alpha", p.stable_alpha},
         {"tail_constant", p.tail_constant},
         {"tail_exponent", p.tail_exponent}};
  json prov{{"threshold_k", "n^((tau-2)/(tau-1)), end of the plateau regime"},
            {"cutoff_k", "n^(1/(tau-1)), natural degree cutoff"},
            {"plateau_prefactor", "scale of the stable limit of a(k) for fixed k"},
            {"plateau_scale", "n^((3-tau)/(tau-1)) growth of a(k) for fixed k"},
            {"stable_alpha", "index (tau-1)/2 of the one-sided stable limit law"},
            {"tail_exponent", "a(k) decays like k^(tau-3) above the threshold"}};
  switch (kind) {
  case ModelKind::ecm:
    prov["tail_constant"] = "erased configuration model limit -c mu^(2-tau) Gamma(2-tau) of a(k) n^(tau-3) k^(3-tau)";
    break;
  case ModelKind::irg:
    prov["tail_constant"] = "rank-1 inhomogeneous random graph limit c mu^(2-tau) / ((3-tau)(tau-2))";
    break;
  case ModelKind::hrg:
    prov["tail_constant"] = "hyperbolic random graph limit with the connection-angle integral";
    break;
  }
  if (kind != ModelKind::hrg) {
    j["c"] = p.c;
    j["mu"] = p.mu;
  } else {
    j["nu"] = p.nu;
    j["hrg_integral"] = {{"value", p.integral->value},
                         {"error_estimate", p.integral->error_estimate},
                         {"tolerance", p.integral->tolerance}};
    prov["hrg_integral"] = "int_0^inf x^(1-tau) min(acos(1-2x^2)/pi, 1) dx by adaptive Simpson";
  }
  j["provenance"] = prov;
  if (!a.ks.empty()) {
    json curve = json::array();
    for (const auto& pt : theory::predicted_curve(p, a.ks)) {
      curve.push_back({{"k", pt.k}, {"regime", pt.plateau ? "plateau" : "tail"}, {"value", pt.value}});
    }
    j["curve"] = curve;
  }
  write_json(j, a.out);
}

void add_eps_options(CLI::App* cmd, GraphArgs& a) {
  cmd->add_option("--eps", a.eps, "band half-width: a number in [0,1) or 'auto'")->capture_default_str();
  cmd->add_option("--m-min", a.m_min, "minimum band occupancy for --eps auto")->capture_default_str();
  cmd->add_option("--eps-cap", a.eps_cap, "largest eps tried by --eps auto")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-degree correlations in scale-free null models"};
  app.require_subcommand(1);
  const std::vector<std::string> models{"ecm", "irg", "hrg"};

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "sample one graph and write an edge list plus a JSON sidecar");
  g->add_option("--model", gen.model)->required()->check(CLI::IsMember(models));
  g->add_option("--n", gen.n)->required();
  g->add_option("--tau", gen.tau)->required();
  g->add_option("--x-min", gen.x_min)->capture_default_str();
  gen.nu_flag = g->add_option("--nu", gen.nu, "hrg density parameter");
  g->add_option("--strategy", gen.strategy, "irg: naive|pruned|skipping, hrg: naive|band");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--stream", gen.stream)->capture_default_str();
  g->add_option("--out", gen.out)->required();

  GraphArgs annd_args;
  auto* an = app.add_subcommand("annd", "average nearest-neighbor degree a(k) of an edge-list file");
  an->add_option("--input", annd_args.input)->required();
  an->add_option("--out", annd_args.out, "output CSV, '-' for stdout")->capture_default_str();
  add_eps_options(an, annd_args);

  GraphArgs cl_args;
  auto* cl = app.add_subcommand("clustering", "mean local clustering c(k) of an edge-list file");
  cl->add_option("--input", cl_args.input)->required();
  cl->add_option("--out", cl_args.out, "output CSV, '-' for stdout")->capture_default_str();

  GraphArgs in_args;
  std::string prefix;
  auto* in = app.add_subcommand("ingest", "a(k), c(k) and a summary for an external edge list");
  in->add_option("--input", in_args.input)->required();
  in->add_option("--out-prefix", prefix, "writes <prefix>_annd.csv, <prefix>_clustering.csv, <prefix>.json")
      ->required();
  add_eps_options(in, in_args);

  EnsembleArgs ens;
  auto* en = app.add_subcommand("ensemble", "statistics over many realizations");
  en->add_option("--config", ens.config, "JSON experiment config; flags below override its keys");
  ens.threads_flag = en->add_option("--threads", ens.threads, "worker threads (fallback: NULLMODEL_THREADS)");
  std::string e_model, e_strategy, e_binning, e_eps, e_out_annd, e_out_cl, e_summary;
  std::int64_t e_n = 0, e_x_min = 1, e_R = 0, e_m_min = 20, e_bins = 16;
  std::uint64_t e_seed = 0;
  double e_tau = 0, e_nu = 1, e_eps_cap = 0.25;
  std::vector<std::string> e_stats;
  std::vector<double> e_window;
  bool e_overlay = false;
  auto* o_model = en->add_option("--model", e_model)->check(CLI::IsMember(models));
  auto* o_n = en->add_option("--n", e_n);
  auto* o_tau = en->add_option("--tau", e_tau);
  auto* o_x_min = en->add_option("--x-min", e_x_min);
  auto* o_nu = en->add_option("--nu", e_nu);
  auto* o_strategy = en->add_option("--strategy", e_strategy);
  auto* o_R = en->add_option("--realizations,-R", e_R);
  auto* o_seed = en->add_option("--seed", e_seed);
  auto* o_stats = en->add_option("--stats", e_stats, "annd and/or clustering");
  auto* o_eps = en->add_option("--eps", e_eps, "a number in [0,1) or 'auto'");
  en->add_option("--m-min", e_m_min)->capture_default_str();
  en->add_option("--eps-cap", e_eps_cap)->capture_default_str();
  auto* o_binning = en->add_option("--binning", e_binning)->check(CLI::IsMember({"log", "raw"}));
  auto* o_bins = en->add_option("--bins-per-decade", e_bins);
  auto* o_window = en->add_option("--fit-window", e_window, "k_lo k_hi")->expected(2);
  auto* o_overlay = en->add_flag("--overlay", e_overlay, "add the pred_tail column to the annd CSV");
  auto* o_out_annd = en->add_option("--out-annd", e_out_annd);
  auto* o_out_cl = en->add_option("--out-clustering", e_out_cl);
  auto* o_summary = en->add_option("--summary", e_summary, "JSON summary with slope fits");

  TheoryArgs th;
  auto* t = app.add_subcommand("theory", "closed-form predictions as JSON");
  t->add_option("--model", th.model)->required()->check(CLI::IsMember(models));
  t->add_option("--n", th.n)->required();
  t->add_option("--tau", th.tau)->required();
  t->add_option("--x-min", th.x_min)->capture_default_str();
  th.nu_flag = t->add_option("--nu", th.nu);
  th.c_flag = t->add_option("--c", th.c, "override the law constant c");
  th.mu_flag = t->add_option("--mu", th.mu, "override the mean mu");
  t->add_option("--tol", th.tol, "quadrature tolerance")->capture_default_str();
  t->add_option("--k", th.ks, "also evaluate the predicted curve at these k");
  t->add_option("--out", th.out, "output JSON, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (g->parsed()) {
      cmd_generate(gen);
    } else if (an->parsed()) {
      cmd_annd(annd_args);
    } else if (cl->parsed()) {
      cmd_clustering(cl_args);
    } else if (in->parsed()) {
      cmd_ingest(in_args, prefix);
    } else if (en->parsed()) {
      auto& ov = ens.overrides;
      if (o_model->count()) ov["model"] = e_model;
      if (o_n->count()) ov["n"] = e_n;
      if (o_tau->count()) ov["tau"] = e_tau;
      if (o_x_min->count()) ov["x_min"] = e_x_min;
      if (o_nu->count()) ov["nu"] = e_nu;
      if (o_strategy->count()) ov["strategy"] = e_strategy;
      if (o_R->count()) ov["realizations"] = e_R;
      if (o_seed->count()) ov["seed"] = e_seed;
      if (o_stats->count()) ov["stats"] = e_stats;
      if (o_eps->count()) {
        if (e_eps == "auto") {
          ov["epsilon"] = {{"mode", "auto"}, {"m_min", e_m_min}, {"eps_cap", e_eps_cap}};
        } else {
          const auto rule = parse_eps(e_eps, e_m_min, e_eps_cap);
          ov["epsilon"] = {{"mode", "fixed"}, {"eps", rule.eps}};
        }
      }
      if (o_binning->count()) ov["binning"] = e_binning;
      if (o_bins->count()) ov["bins_per_decade"] = e_bins;
      if (o_window->count()) ov["fit_window"] = e_window;
      if (o_overlay->count()) ov["overlay"] = e_overlay;
      if (o_out_annd->count()) ov["output"]["annd"] = e_out_annd;
      if (o_out_cl->count()) ov["output"]["clustering"] = e_out_cl;
      if (o_summary->count()) ov["output"]["summary"] = e_summary;
      cmd_ensemble(ens);
    } else if (t->parsed()) {
      cmd_theory(th);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const ParseError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const StructuralError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const InsufficientData& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_ok;
}
