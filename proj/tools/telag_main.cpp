// Command-line surface: simulate the test systems, scan transfer entropy
// over lags, analyze a Tetouan-schema power dataset, and reproduce the fixed
// experiment grid. Emits plot-ready CSV curves plus JSON metadata and a run
// manifest sufficient to recreate every result file bit-exactly.
//
// Exit codes: 0 success, 1 internal/reproduction failure, 2 usage error,
// 3 input/configuration error, 4 numerical degeneracy.

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "telag/telag.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitDegenerate = 4;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::size_t default_jobs() {
  if (const char* env = std::getenv("TELAG_JOBS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (const char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else if (!out.empty() && out.back() != '_')
      out.push_back('_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

telag::Norm parse_norm(const std::string& name) {
  if (name == "chebyshev") return telag::Norm::chebyshev;
  if (name == "euclidean") return telag::Norm::euclidean;
  throw telag::ConfigError("unknown norm '" + name + "'");
}

telag::KnnBackend parse_backend(const std::string& name) {
  if (name == "auto") return telag::KnnBackend::automatic;
  if (name == "brute") return telag::KnnBackend::brute_force;
  if (name == "kdtree") return telag::KnnBackend::kd_tree;
  throw telag::ConfigError("unknown backend '" + name + "'");
}

void parse_hour_range(const std::string& text, unsigned& lo, unsigned& hi) {
  const auto sep = text.find("..");
  if (sep == std::string::npos)
    throw telag::ConfigError("lag hours: expected LO..HI, got '" + text + "'");
  try {
    lo = static_cast<unsigned>(std::stoul(text.substr(0, sep)));
    hi = static_cast<unsigned>(std::stoul(text.substr(sep + 2)));
  } catch (const std::exception&) {
    throw telag::ConfigError("lag hours: expected LO..HI, got '" + text + "'");
  }
}

ordered_json estimator_json(const telag::EstimatorConfig& cfg) {
  ordered_json j;
  j["k"] = cfg.k;
  j["norm"] = cfg.norm == telag::Norm::chebyshev ? "chebyshev" : "euclidean";
  j["jitter_scale"] = cfg.jitter_scale;
  j["seed"] = cfg.seed;
  j["backend"] = cfg.backend == telag::KnnBackend::automatic
                     ? "auto"
                     : (cfg.backend == telag::KnnBackend::brute_force ? "brute" : "kdtree");
  return j;
}

void write_curve_csv(const std::string& path, const telag::TeCurve& curve,
                     std::size_t lag_divisor = 1) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(curve.entries.size());
  for (const auto& [lag, te] : curve.entries)
    rows.push_back({std::to_string(lag / lag_divisor), telag::format_double(te)});
  telag::write_csv(path, {"lag", "te_nats"}, rows);
}

ordered_json curve_json(const telag::TeCurve& curve, std::size_t lag_divisor = 1) {
  ordered_json j;
  ordered_json lags = ordered_json::array();
  ordered_json values = ordered_json::array();
  for (const auto& [lag, te] : curve.entries) {
    lags.push_back(lag / lag_divisor);
    values.push_back(te);
  }
  j["lags"] = lags;
  j["te_nats"] = values;
  j["identified_lag"] = curve.identified_lag / lag_divisor;
  j["max_te_nats"] = curve.max_te;
  return j;
}

void write_json(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw telag::IoError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

double to_display(double nats, bool bits) { return bits ? nats / std::log(2.0) : nats; }

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  int system = 1;
  std::size_t lag = 1;
  double mu1 = 0.0, mu2 = 0.0, delta1 = 0.001, delta2 = 0.001;
  double alpha = 0.2, beta = 0.8;
  std::size_t length = 500;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  Stopwatch watch;
  telag::SimulatorSpec spec;
  spec.system = telag::system_from_int(args.system);
  spec.lag = args.lag;
  spec.mu1 = args.mu1;
  spec.mu2 = args.mu2;
  spec.delta1 = args.delta1;
  spec.delta2 = args.delta2;
  spec.alpha = args.alpha;
  spec.beta = args.beta;
  spec.length = args.length;
  spec.seed = args.seed;

  const telag::Trajectory tr = telag::simulate(spec);
  for (const auto& w : tr.warnings) std::cerr << "warning: " << w << '\n';
  telag::write_trajectory_csv(args.out, tr);

  telag::RunManifest manifest;
  manifest.command = "simulate";
  manifest.parameters = {{"system", args.system},   {"lag", args.lag},
                         {"mu1", args.mu1},         {"mu2", args.mu2},
                         {"delta1", args.delta1},   {"delta2", args.delta2},
                         {"alpha", args.alpha},     {"beta", args.beta},
                         {"length", args.length},   {"seed", args.seed}};
  manifest.outputs = {args.out};
  manifest.wall_clock_ms = watch.ms();
  manifest.write(args.out + ".manifest.json");

  std::cout << "wrote " << args.out << " (" << tr.state.size() << " samples, true lag "
            << tr.true_lag << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
  std::string input;
  std::string x_col = "x";
  std::string y_col = "y";
  bool self = false;
  std::string direction = "x_to_y";
  std::size_t lag_min = 1, lag_max = 8;
  std::size_t history_order = 1;
  std::size_t k = 3;
  std::string norm = "chebyshev";
  std::string backend = "auto";
  double jitter = 0.0;
  std::uint64_t seed = 0;
  std::size_t jobs = default_jobs();
  bool bits = false;
  std::string out;
};

int run_scan(const ScanArgs& args) {
  Stopwatch watch;
  telag::LagScanConfig cfg;
  cfg.lag_min = args.lag_min;
  cfg.lag_max = args.lag_max;
  cfg.history_order = args.history_order;
  cfg.estimator.k = args.k;
  cfg.estimator.norm = parse_norm(args.norm);
  cfg.estimator.backend = parse_backend(args.backend);
  cfg.estimator.jitter_scale = args.jitter;
  cfg.estimator.seed = args.seed;
  cfg.jobs = args.jobs;

  const std::string digest = telag::file_digest(args.input);
  const std::vector<double> x = telag::read_series_column(args.input, args.x_col);

  struct NamedCurve {
    std::string suffix;
    std::string direction;
    telag::TeCurve curve;
  };
  std::vector<NamedCurve> curves;
  if (args.self) {
    curves.push_back({"", "self", telag::self_scan(x, cfg)});
  } else {
    const std::vector<double> y = telag::read_series_column(args.input, args.y_col);
    if (args.direction == "x_to_y") {
      curves.push_back({"", "x_to_y", telag::scan_lags(x, y, cfg)});
    } else if (args.direction == "y_to_x") {
      cfg.direction = telag::Direction::y_to_x;
      curves.push_back({"", "y_to_x", telag::scan_lags(x, y, cfg)});
    } else if (args.direction == "both") {
      const telag::BidirectionalScan both = telag::scan_both(x, y, cfg);
      curves.push_back({".x_to_y", "x_to_y", both.forward});
      curves.push_back({".y_to_x", "y_to_x", both.backward});
    } else {
      throw telag::ConfigError("unknown direction '" + args.direction + "'");
    }
  }

  telag::RunManifest manifest;
  manifest.command = "scan";
  manifest.parameters = {{"input", args.input},
                         {"x_col", args.x_col},
                         {"y_col", args.y_col},
                         {"self", args.self},
                         {"direction", args.direction},
                         {"lag_min", args.lag_min},
                         {"lag_max", args.lag_max},
                         {"history_order", args.history_order},
                         {"estimator", estimator_json(cfg.estimator)},
                         {"jobs", args.jobs}};
  manifest.inputs = {{args.input, digest}};

  for (const auto& nc : curves) {
    const std::string csv_path = args.out + nc.suffix + ".csv";
    const std::string json_path = args.out + nc.suffix + ".json";
    write_curve_csv(csv_path, nc.curve);

    ordered_json doc;
    doc["tool"] = std::string(telag::kToolName);
    doc["version"] = std::string(telag::kVersion);
    doc["command"] = "scan";
    doc["direction"] = nc.direction;
    doc["input"] = {{"path", args.input}, {"digest", digest}};
    doc["x_col"] = args.x_col;
    if (!args.self) doc["y_col"] = args.y_col;
    doc["history_order"] = args.history_order;
    doc["estimator"] = estimator_json(cfg.estimator);
    doc["curve"] = curve_json(nc.curve);
    write_json(json_path, doc);

    manifest.outputs.push_back(csv_path);
    manifest.outputs.push_back(json_path);

    const char* unit = args.bits ? "bits" : "nats";
    std::cout << (nc.direction == "self" ? std::string("self") : nc.direction)
              << ": identified lag " << nc.curve.identified_lag << " (max TE "
              << telag::format_double(to_display(nc.curve.max_te, args.bits)) << ' ' << unit
              << ")\n";
  }

  manifest.wall_clock_ms = watch.ms();
  manifest.write(args.out + ".manifest.json");
  return 0;
}

// ---------------------------------------------------------------------------
// analyze-tetouan

struct AnalyzeArgs {
  std::string input;
  std::string schema_path;
  std::string window = "2017-10-23..2017-10-27";
  std::string lag_hours = "1..24";
  std::size_t k = 3;
  std::size_t history_order = 1;
  std::uint64_t seed = 0;
  std::string norm = "chebyshev";
  std::string backend = "auto";
  double jitter = 0.0;
  std::size_t jobs = default_jobs();
  bool forward_fill = false;
  bool resample_hourly = false;
  bool bits = false;
  std::string out_dir;
};

int run_analyze(const AnalyzeArgs& args) {
  Stopwatch watch;
  const telag::DatasetSchema schema = args.schema_path.empty()
                                          ? telag::DatasetSchema::tetouan()
                                          : telag::DatasetSchema::from_json_file(args.schema_path);
  const telag::DayWindow window = telag::DayWindow::parse(args.window);
  telag::LoadOptions options;
  options.forward_fill = args.forward_fill;
  options.hourly_mean = args.resample_hourly;

  unsigned hour_lo = 1, hour_hi = 24;
  parse_hour_range(args.lag_hours, hour_lo, hour_hi);

  const std::string digest = telag::file_digest(args.input);
  const telag::LoadedDataset data = telag::load_csv(args.input, schema, window, options);
  const auto lags = telag::lag_grid_hours(hour_lo, hour_hi, data.sample_interval_s);
  const std::size_t per_hour = static_cast<std::size_t>(3600 / data.sample_interval_s);

  telag::EstimatorConfig est;
  est.k = args.k;
  est.norm = parse_norm(args.norm);
  est.backend = parse_backend(args.backend);
  est.jitter_scale = args.jitter;
  est.seed = args.seed;

  const auto matrix = telag::pairwise_scan_matrix(data.factors, data.targets, lags,
                                                  args.history_order, est, args.jobs);

  fs::create_directories(args.out_dir);
  telag::RunManifest manifest;
  manifest.command = "analyze-tetouan";
  manifest.parameters = {{"input", args.input},
                         {"schema", args.schema_path},
                         {"window", args.window},
                         {"lag_hours", args.lag_hours},
                         {"history_order", args.history_order},
                         {"estimator", estimator_json(est)},
                         {"forward_fill", args.forward_fill},
                         {"resample_hourly", args.resample_hourly},
                         {"jobs", args.jobs},
                         {"samples_per_series", data.factors.front().size()},
                         {"sample_interval_s", data.sample_interval_s}};
  manifest.inputs = {{args.input, digest}};

  std::vector<std::vector<std::string>> summary_rows;
  for (const auto& pc : matrix) {
    const std::string name =
        "te_" + sanitize_name(pc.factor) + "__" + sanitize_name(pc.target) + ".csv";
    const std::string path = (fs::path(args.out_dir) / name).string();
    write_curve_csv(path, pc.curve, per_hour);
    manifest.outputs.push_back(path);
    summary_rows.push_back({pc.factor, pc.target,
                            std::to_string(pc.curve.identified_lag / per_hour),
                            telag::format_double(pc.curve.max_te)});
  }
  const std::string summary_path = (fs::path(args.out_dir) / "summary.csv").string();
  telag::write_csv(summary_path, {"factor", "network", "identified_lag_hours", "max_te_nats"},
                   summary_rows);
  manifest.outputs.push_back(summary_path);
  manifest.wall_clock_ms = watch.ms();
  manifest.write((fs::path(args.out_dir) / "manifest.json").string());

  const char* unit = args.bits ? "bits" : "nats";
  for (const auto& pc : matrix)
    std::cout << pc.factor << " -> " << pc.target << ": identified lag "
              << pc.curve.identified_lag / per_hour << " h (max TE "
              << telag::format_double(to_display(pc.curve.max_te, args.bits)) << ' ' << unit
              << ")\n";
  std::cout << "wrote " << matrix.size() << " curves to " << args.out_dir << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// repro

struct ReproArgs {
  std::string suite = "all";
  std::string out_dir;
  std::size_t jobs = default_jobs();
};

int run_repro(const ReproArgs& args) {
  Stopwatch watch;
  std::vector<int> systems;
  if (args.suite == "all") {
    systems = {1, 2, 3, 4};
  } else if (args.suite.size() == 4 && args.suite.rfind("sim", 0) == 0 &&
             args.suite[3] >= '1' && args.suite[3] <= '4') {
    systems = {args.suite[3] - '0'};
  } else {
    throw telag::ConfigError("unknown suite '" + args.suite + "' (use sim1..sim4 or all)");
  }

  const auto grid = telag::repro_grid(systems);
  std::vector<telag::ReproResult> results;
  results.reserve(grid.size());
  for (const auto& c : grid) results.push_back(telag::run_repro_case(c, args.jobs));

  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    telag::RunManifest manifest;
    manifest.command = "repro";
    manifest.parameters = {{"suite", args.suite},
                           {"seed_base", telag::kReproSeedBase},
                           {"jobs", args.jobs}};
    for (const int s : systems) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : results) {
        if (static_cast<int>(r.c.system) != s) continue;
        for (const auto& [lag, te] : r.curve.entries)
          rows.push_back({std::to_string(r.c.true_lag), std::to_string(lag),
                          telag::format_double(te)});
      }
      const std::string path =
          (fs::path(args.out_dir) / ("sim" + std::to_string(s) + "_curves.csv")).string();
      telag::write_csv(path, {"true_lag", "lag", "te_nats"}, rows);
      manifest.outputs.push_back(path);
    }
    std::vector<std::vector<std::string>> summary;
    for (const auto& r : results)
      summary.push_back({std::to_string(static_cast<int>(r.c.system)),
                         std::to_string(r.c.true_lag),
                         std::to_string(r.curve.identified_lag), r.pass ? "pass" : "fail"});
    const std::string summary_path = (fs::path(args.out_dir) / "summary.csv").string();
    telag::write_csv(summary_path, {"system", "true_lag", "identified_lag", "result"}, summary);
    manifest.outputs.push_back(summary_path);
    manifest.wall_clock_ms = watch.ms();
    manifest.write((fs::path(args.out_dir) / "manifest.json").string());
  }

  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << "sim" << static_cast<int>(r.c.system) << " true_lag=" << r.c.true_lag
              << " identified=" << r.curve.identified_lag << ' '
              << (r.pass ? "PASS" : "FAIL") << '\n';
    if (r.pass) ++passed;
  }
  std::cout << passed << '/' << results.size() << " correct\n";
  if (passed != results.size()) {
    std::cerr << "failed cases:\n";
    for (const auto& r : results)
      if (!r.pass)
        std::cerr << "  sim" << static_cast<int>(r.c.system) << " true_lag=" << r.c.true_lag
                  << " identified=" << r.curve.identified_lag << '\n';
    return kExitInternal;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonparametric time-lag identification via copula-entropy transfer entropy"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a seeded trajectory CSV");
  sim_cmd->add_option("--system", sim.system, "System id (1..4)")
      ->required()
      ->check(CLI::Range(1, 4));
  sim_cmd->add_option("--lag", sim.lag, "True lag in samples")->required();
  sim_cmd->add_option("--mu1", sim.mu1, "Mean of the state noise");
  sim_cmd->add_option("--mu2", sim.mu2, "Mean of the output noise");
  sim_cmd->add_option("--delta1", sim.delta1, "Variance of the state noise");
  sim_cmd->add_option("--delta2", sim.delta2, "Variance of the output noise");
  sim_cmd->add_option("--alpha", sim.alpha, "System 4 one-step coefficient");
  sim_cmd->add_option("--beta", sim.beta, "System 4 delayed coefficient");
  sim_cmd->add_option("--length", sim.length, "Series length");
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Scan transfer entropy over a lag range");
  scan_cmd->add_option("--input", scan.input, "Input CSV path")->required();
  scan_cmd->add_option("--x-col", scan.x_col, "Source column name");
  scan_cmd->add_option("--y-col", scan.y_col, "Target column name");
  scan_cmd->add_flag("--self", scan.self, "Scan a series against itself");
  scan_cmd->add_option("--direction", scan.direction, "x_to_y, y_to_x, or both");
  scan_cmd->add_option("--lag-min", scan.lag_min, "Smallest lag");
  scan_cmd->add_option("--lag-max", scan.lag_max, "Largest lag");
  scan_cmd->add_option("--history-order", scan.history_order, "Target history depth");
  scan_cmd->add_option("--k", scan.k, "Neighbor count");
  scan_cmd->add_option("--norm", scan.norm, "chebyshev or euclidean");
  scan_cmd->add_option("--backend", scan.backend, "auto, brute, or kdtree");
  scan_cmd->add_option("--jitter", scan.jitter, "Uniform jitter scale before ranking");
  scan_cmd->add_option("--seed", scan.seed, "Seed for jitter substreams");
  scan_cmd->add_option("--jobs", scan.jobs, "Parallel lag evaluations");
  scan_cmd->add_flag("--bits", scan.bits, "Display TE in bits (files stay in nats)");
  scan_cmd->add_option("--out", scan.out, "Output path prefix")->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze-tetouan", "Factor-by-network TE lag analysis of a power CSV");
  analyze_cmd->add_option("--input", analyze.input, "Dataset CSV path")->required();
  analyze_cmd->add_option("--schema", analyze.schema_path, "JSON schema remapping columns");
  analyze_cmd->add_option("--window", analyze.window, "Inclusive day window START..END");
  analyze_cmd->add_option("--lag-hours", analyze.lag_hours, "Hourly lag range LO..HI");
  analyze_cmd->add_option("--k", analyze.k, "Neighbor count");
  analyze_cmd->add_option("--history-order", analyze.history_order, "Target history depth");
  analyze_cmd->add_option("--norm", analyze.norm, "chebyshev or euclidean");
  analyze_cmd->add_option("--backend", analyze.backend, "auto, brute, or kdtree");
  analyze_cmd->add_option("--jitter", analyze.jitter, "Uniform jitter scale before ranking");
  analyze_cmd->add_option("--seed", analyze.seed, "Seed for jitter substreams");
  analyze_cmd->add_option("--jobs", analyze.jobs, "Parallel pair evaluations");
  analyze_cmd->add_flag("--forward-fill", analyze.forward_fill, "Fill sampling gaps");
  analyze_cmd->add_flag("--resample-hourly", analyze.resample_hourly, "Hourly-mean resampling");
  analyze_cmd->add_flag("--bits", analyze.bits, "Display TE in bits (files stay in nats)");
  analyze_cmd->add_option("--out-dir", analyze.out_dir, "Output directory")->required();

  ReproArgs repro;
  auto* repro_cmd =
      app.add_subcommand("repro", "Run the fixed 4x4 lag-identification grid with published seeds");
  repro_cmd->add_option("--suite", repro.suite, "sim1, sim2, sim3, sim4, or all");
  repro_cmd->add_option("--out-dir", repro.out_dir, "Optional output directory for curve tables");
  repro_cmd->add_option("--jobs", repro.jobs, "Parallel lag evaluations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (scan_cmd->parsed()) return run_scan(scan);
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (repro_cmd->parsed()) return run_repro(repro);
    return kExitUsage;
  } catch (const telag::InsufficientSampleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const telag::DegenerateSampleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const telag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
