// saca: command-line front end for the SACA shared library.
//
//   saca cluster   --input FILE | --preset NAME[:SEED]  [-c N] [--plot out.svg] ...
//   saca benchmark --input FILE --truth-col K           (SACA vs best-grid DBSCAN)
//   saca generate  --preset NAME[:SEED] --output FILE
//
// Exit status: 0 success, 2 input error, 3 "Decrease C", 1 anything else.

#include <saca/saca.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitDecreaseC = 3;
constexpr std::uint64_t kDefaultPresetSeed = 42;

int exit_code(saca_status status) {
  switch (status) {
    case SACA_OK: return kExitOk;
    case SACA_ERR_INPUT:
    case SACA_ERR_DEGENERATE: return kExitInput;
    case SACA_ERR_DECREASE_C: return kExitDecreaseC;
    default: return kExitFailure;
  }
}

// Carries a library failure up to main().
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

void check(saca_status status) {
  if (status != SACA_OK) fail(exit_code(status), saca_last_error());
}

struct DatasetDeleter {
  void operator()(saca_dataset* d) const { saca_dataset_destroy(d); }
};
struct ResultDeleter {
  void operator()(saca_result* r) const { saca_result_destroy(r); }
};
using DatasetPtr = std::unique_ptr<saca_dataset, DatasetDeleter>;
using ResultPtr = std::unique_ptr<saca_result, ResultDeleter>;

// ---- input ----------------------------------------------------------------

struct InputOptions {
  std::string path;
  std::string preset;
  std::optional<int> truth_col;
  std::string delimiter;
  bool header = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* input = cmd->add_option("--input", in.path, "Delimited text file, one point per row");
  auto* preset = cmd->add_option("--preset", in.preset, "Synthetic preset, optionally NAME:SEED");
  input->excludes(preset);
  preset->excludes(input);
  cmd->add_option("--truth-col", in.truth_col, "Zero-based column holding ground-truth labels")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--delimiter", in.delimiter, "Field separator (default: commas and/or whitespace; 'tab' for tabs)");
  cmd->add_flag("--header", in.header, "Skip the first data row");
}

char parse_delimiter(const std::string& text) {
  if (text.empty()) return 0;
  if (text == "tab" || text == "\\t") return '\t';
  if (text.size() != 1) fail(kExitInput, "delimiter must be a single character: '" + text + "'");
  return text[0];
}

std::pair<std::string, std::uint64_t> split_preset(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, kDefaultPresetSeed};
  const std::string seed = spec.substr(colon + 1);
  try {
    std::size_t used = 0;
    const auto value = std::stoull(seed, &used);
    if (used != seed.size()) throw std::invalid_argument(seed);
    return {spec.substr(0, colon), value};
  } catch (const std::exception&) {
    fail(kExitInput, "invalid preset seed '" + seed + "'");
  }
}

json describe_input(const InputOptions& in) {
  if (!in.preset.empty()) {
    const auto [name, seed] = split_preset(in.preset);
    return {{"preset", name}, {"seed", seed}};
  }
  json j = {{"path", in.path}, {"header", in.header}};
  j["delimiter"] = in.delimiter.empty() ? json(nullptr) : json(in.delimiter);
  j["truth_col"] = in.truth_col ? json(*in.truth_col) : json(nullptr);
  return j;
}

DatasetPtr load_input(const InputOptions& in) {
  saca_dataset* raw = nullptr;
  if (!in.preset.empty()) {
    const auto [name, seed] = split_preset(in.preset);
    check(saca_dataset_generate(name.c_str(), seed, &raw));
  } else if (!in.path.empty()) {
    saca_load_options options;
    saca_load_options_default(&options);
    options.delimiter = parse_delimiter(in.delimiter);
    options.has_header = in.header ? 1 : 0;
    options.label_column = in.truth_col ? *in.truth_col : -1;
    check(saca_dataset_load(in.path.c_str(), &options, &raw));
  } else {
    fail(kExitInput, "one of --input or --preset is required");
  }
  return DatasetPtr(raw);
}

std::vector<int32_t> truth_of(const saca_dataset* data) {
  std::vector<int32_t> truth(saca_dataset_size(data));
  check(saca_dataset_truth(data, truth.data(), truth.size()));
  return truth;
}

std::vector<int32_t> labels_of(const saca_result* result) {
  std::vector<int32_t> labels(saca_result_size(result));
  check(saca_result_labels(result, labels.data(), labels.size()));
  return labels;
}

// ---- metrics --------------------------------------------------------------

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json evaluation_json(const saca_evaluation& e) {
  json j;
  j["silhouette"] = e.has_silhouette ? number(e.silhouette) : json(nullptr);
  j["calinski_harabasz"] = e.has_calinski_harabasz ? number(e.calinski_harabasz) : json(nullptr);
  j["davies_bouldin"] = e.has_davies_bouldin ? number(e.davies_bouldin) : json(nullptr);
  j["ari"] = e.has_external ? number(e.ari) : json(nullptr);
  j["ami"] = e.has_external ? number(e.ami) : json(nullptr);
  j["completeness"] = e.has_external ? number(e.completeness) : json(nullptr);
  j["dropped_points"] = e.dropped_points;
  return j;
}

saca_evaluation evaluate(const saca_dataset* data, const std::vector<int32_t>& labels, bool noise_as_cluster) {
  std::vector<int32_t> truth;
  if (saca_dataset_has_truth(data)) truth = truth_of(data);
  saca_evaluation e{};
  check(saca_evaluate(data, labels.data(), labels.size(), truth.empty() ? nullptr : truth.data(),
                      noise_as_cluster ? 1 : 0, &e));
  return e;
}

// ---- cluster --------------------------------------------------------------

struct ClusterOptions {
  InputOptions input;
  std::string algo = "saca";
  int c = 1;
  bool use_center = false;
  bool exclude_outliers = false;
  double z_threshold = 10.0;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::optional<int> min_pts;
  std::string noise_policy;
  std::string labels_out = "labels.txt";
  std::string metrics_out;
  std::string plot;
  std::vector<int> plot_dims;
  std::string replay;
};

bool noise_as_cluster(const ClusterOptions& o) {
  if (o.noise_policy.empty()) return o.algo == "dbscan";
  return o.noise_policy == "cluster";
}

json config_json(const ClusterOptions& o) {
  json j = {{"algo", o.algo}, {"noise_policy", noise_as_cluster(o) ? "cluster" : "drop"}};
  if (o.algo == "saca") {
    j["c"] = o.c;
    j["use_center"] = o.use_center;
    j["z_threshold"] = o.z_threshold;
    j["exclude_outliers"] = o.exclude_outliers;
    j["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  } else {
    j["eps"] = *o.eps;
    j["min_pts"] = *o.min_pts;
  }
  return j;
}

// Fills `o` from a RunRecord written by an earlier `cluster` run.
void apply_record(ClusterOptions& o) {
  std::ifstream in(o.replay);
  if (!in) fail(kExitInput, "cannot open run record '" + o.replay + "'");
  json record;
  try {
    in >> record;
    const json& input = record.at("input");
    o.input = InputOptions{};
    if (input.contains("preset")) {
      o.input.preset = input.at("preset").get<std::string>() + ":" +
                       std::to_string(input.at("seed").get<std::uint64_t>());
    } else {
      o.input.path = input.at("path").get<std::string>();
      o.input.header = input.value("header", false);
      if (!input.at("delimiter").is_null()) o.input.delimiter = input.at("delimiter").get<std::string>();
      if (!input.at("truth_col").is_null()) o.input.truth_col = input.at("truth_col").get<int>();
    }
    const json& config = record.at("config");
    o.algo = config.at("algo").get<std::string>();
    o.noise_policy = config.at("noise_policy").get<std::string>();
    if (o.algo == "saca") {
      o.c = config.at("c").get<int>();
      o.use_center = config.at("use_center").get<bool>();
      o.z_threshold = config.at("z_threshold").get<double>();
      o.exclude_outliers = config.at("exclude_outliers").get<bool>();
      o.seed.reset();
      if (!config.at("seed").is_null()) o.seed = config.at("seed").get<std::uint64_t>();
    } else {
      o.eps = config.at("eps").get<double>();
      o.min_pts = config.at("min_pts").get<int>();
    }
  } catch (const json::exception& e) {
    fail(kExitInput, "malformed run record '" + o.replay + "': " + e.what());
  }
}

void write_labels(const std::string& path, const std::vector<int32_t>& labels) {
  std::ofstream out(path);
  if (!out) fail(kExitInput, "cannot write labels to '" + path + "'");
  for (const auto label : labels) out << label << '\n';
  if (!out) fail(kExitInput, "failed writing labels to '" + path + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(kExitInput, "cannot write '" + path + "'");
  out << text;
}

int run_cluster(ClusterOptions o) {
  if (!o.replay.empty()) apply_record(o);
  if (o.algo == "dbscan" && (!o.eps || !o.min_pts)) fail(kExitInput, "--algo dbscan requires --eps and --min-pts");
  if (o.algo == "saca" && (o.eps || o.min_pts)) fail(kExitInput, "--eps/--min-pts only apply to --algo dbscan");
  if (!o.plot_dims.empty() && o.plot_dims.size() != 2) fail(kExitInput, "--plot-dims takes two coordinates, e.g. 0,1");

  auto data = load_input(o.input);

  saca_result* raw = nullptr;
  const auto start = std::chrono::steady_clock::now();
  if (o.algo == "saca") {
    saca_config config;
    saca_config_default(&config);
    config.c = o.c;
    config.use_center = o.use_center ? 1 : 0;
    config.z_threshold = o.z_threshold;
    config.exclude_outliers = o.exclude_outliers ? 1 : 0;
    config.has_seed = o.seed ? 1 : 0;
    config.seed = o.seed.value_or(0);
    check(saca_cluster(data.get(), &config, &raw));
  } else {
    check(saca_dbscan(data.get(), *o.eps, *o.min_pts, &raw));
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  ResultPtr result(raw);
  const auto labels = labels_of(result.get());

  json record;
  record["input"] = describe_input(o.input);
  record["points"] = saca_dataset_size(data.get());
  record["dims"] = saca_dataset_dims(data.get());
  record["config"] = config_json(o);
  if (o.algo == "saca") {
    saca_threshold t{};
    check(saca_result_threshold(result.get(), &t));
    record["threshold"] = {{"sigma_opt", t.sigma_opt}, {"L", t.max_min_distance}, {"T", t.threshold},
                           {"radius", t.radius}};
    record["outlier_count"] = saca_result_outlier_count(result.get());
    record["core_count"] = saca_result_core_count(result.get());
    record["pruned_count"] = saca_result_pruned_count(result.get());
  } else {
    record["threshold"] = nullptr;
    record["outlier_count"] = nullptr;
  }
  record["num_clusters"] = saca_result_num_clusters(result.get());
  record["wall_time_ms"] = elapsed.count();
  record["metrics"] = evaluation_json(evaluate(data.get(), labels, noise_as_cluster(o)));

  write_labels(o.labels_out, labels);
  if (!o.metrics_out.empty()) write_text(o.metrics_out, record.dump(2) + "\n");
  if (!o.plot.empty()) {
    const int ax = o.plot_dims.empty() ? -1 : o.plot_dims[0];
    const int ay = o.plot_dims.empty() ? -1 : o.plot_dims[1];
    check(saca_render_scatter(data.get(), labels.data(), labels.size(), ax, ay, o.plot.c_str()));
  }
  std::cout << record.dump(2) << '\n';
  return kExitOk;
}

// ---- benchmark ------------------------------------------------------------

struct BenchmarkOptions {
  InputOptions input;
  int c_max = 10;
  std::size_t eps_steps = 20;
  std::vector<int> min_pts_grid{2, 4, 6, 8, 10};
  std::string json_out;
};

std::string cell(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v.get<double>();
  return s.str();
}

int run_benchmark(const BenchmarkOptions& o) {
  auto data = load_input(o.input);
  if (!saca_dataset_has_truth(data.get())) fail(kExitInput, "benchmark needs ground-truth labels (--truth-col)");
  const auto truth = truth_of(data.get());

  // SACA: sweep the selectivity coefficient and keep the best ARI.
  json saca_best;
  double best_ari = -std::numeric_limits<double>::infinity();
  for (int c = 1; c <= o.c_max; ++c) {
    saca_config config;
    saca_config_default(&config);
    config.c = c;
    saca_result* raw = nullptr;
    const auto start = std::chrono::steady_clock::now();
    const saca_status status = saca_cluster(data.get(), &config, &raw);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    if (status == SACA_ERR_DECREASE_C) break;  // larger C prunes even more
    check(status);
    ResultPtr result(raw);
    const auto labels = labels_of(result.get());
    const auto e = evaluate(data.get(), labels, false);
    if (e.ari > best_ari) {
      best_ari = e.ari;
      saca_best = {{"parameters", "C=" + std::to_string(c)},
                   {"c", c},
                   {"num_clusters", saca_result_num_clusters(result.get())},
                   {"wall_time_ms", elapsed.count()},
                   {"metrics", evaluation_json(e)}};
    }
  }
  if (saca_best.is_null()) fail(kExitDecreaseC, "Decrease C: every point was pruned at C=1");

  // DBSCAN: exhaustive grid, noise scored as its own label.
  std::vector<double> eps(o.eps_steps);
  std::size_t written = 0;
  check(saca_default_eps_grid(data.get(), o.eps_steps, eps.data(), eps.size(), &written));
  eps.resize(written);
  saca_grid_result grid{};
  check(saca_dbscan_grid_search(data.get(), truth.data(), eps.data(), eps.size(), o.min_pts_grid.data(),
                                o.min_pts_grid.size(), &grid));
  saca_result* raw = nullptr;
  const auto start = std::chrono::steady_clock::now();
  check(saca_dbscan(data.get(), grid.eps, grid.min_pts, &raw));
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  ResultPtr result(raw);
  const auto labels = labels_of(result.get());
  std::ostringstream params;
  params << "eps=" << std::setprecision(4) << grid.eps << " min_pts=" << grid.min_pts;
  json dbscan_best = {{"parameters", params.str()},
                      {"eps", grid.eps},
                      {"min_pts", grid.min_pts},
                      {"num_clusters", saca_result_num_clusters(result.get())},
                      {"wall_time_ms", elapsed.count()},
                      {"metrics", evaluation_json(evaluate(data.get(), labels, true))}};

  json report = {{"input", describe_input(o.input)},
                 {"points", saca_dataset_size(data.get())},
                 {"saca", saca_best},
                 {"dbscan", dbscan_best}};

  const std::vector<std::pair<std::string, std::string>> rows = {
      {"ARI", "ari"}, {"AMI", "ami"}, {"Completeness", "completeness"}, {"Silhouette", "silhouette"},
      {"Calinski-Harabasz", "calinski_harabasz"}, {"Davies-Bouldin", "davies_bouldin"}};
  std::ostringstream table;
  const auto line = [&](const std::string& name, const std::string& a, const std::string& b) {
    table << std::left << std::setw(20) << name << std::setw(24) << a << b << '\n';
  };
  line("metric", "SACA", "DBSCAN");
  line("parameters", saca_best["parameters"], dbscan_best["parameters"]);
  line("clusters", cell(saca_best["num_clusters"]), cell(dbscan_best["num_clusters"]));
  for (const auto& [name, key] : rows) {
    line(name, cell(saca_best["metrics"][key]), cell(dbscan_best["metrics"][key]));
  }
  line("time (ms)", cell(saca_best["wall_time_ms"]), cell(dbscan_best["wall_time_ms"]));

  std::cout << table.str();
  if (!o.json_out.empty()) write_text(o.json_out, report.dump(2) + "\n");
  return kExitOk;
}

// ---- generate -------------------------------------------------------------

int run_generate(const std::string& preset, const std::string& output, bool list) {
  if (list) {
    for (std::size_t i = 0; i < saca_preset_count(); ++i) std::cout << saca_preset_name(i) << '\n';
    return kExitOk;
  }
  if (preset.empty() || output.empty()) fail(kExitInput, "generate needs --preset and --output");
  const auto [name, seed] = split_preset(preset);
  saca_dataset* raw = nullptr;
  check(saca_dataset_generate(name.c_str(), seed, &raw));
  DatasetPtr data(raw);
  check(saca_dataset_write(data.get(), output.c_str(), ','));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective attention-based clustering"};
  app.set_version_flag("--version", std::string(saca_version()));
  app.require_subcommand(1);

  ClusterOptions cluster;
  auto* cmd_cluster = app.add_subcommand("cluster", "Cluster a file or preset and write labels");
  add_input_options(cmd_cluster, cluster.input);
  cmd_cluster->add_option("--algo", cluster.algo, "Algorithm")->check(CLI::IsMember({"saca", "dbscan"}));
  cmd_cluster->add_option("-c", cluster.c, "Attention selectivity coefficient")->check(CLI::PositiveNumber);
  cmd_cluster->add_flag("--use-center", cluster.use_center, "Reassign sparse points to the nearest centroid");
  cmd_cluster->add_flag("--exclude-outliers", cluster.exclude_outliers, "Leave flagged outliers labelled -1");
  cmd_cluster->add_option("--z-threshold", cluster.z_threshold, "Modified z-score cut-off")
      ->check(CLI::PositiveNumber);
  cmd_cluster->add_option("--seed", cluster.seed, "Shuffle the cluster seeding order");
  cmd_cluster->add_option("--eps", cluster.eps, "DBSCAN radius")->check(CLI::PositiveNumber);
  cmd_cluster->add_option("--min-pts", cluster.min_pts, "DBSCAN core threshold")->check(CLI::PositiveNumber);
  cmd_cluster->add_option("--noise-policy", cluster.noise_policy,
                          "How -1 labels enter the metrics (default: drop for saca, cluster for dbscan)")
      ->check(CLI::IsMember({"drop", "cluster"}));
  cmd_cluster->add_option("--labels-out", cluster.labels_out, "Labels file, one integer per input row")
      ->capture_default_str();
  cmd_cluster->add_option("--metrics", cluster.metrics_out, "Write the run record as JSON");
  cmd_cluster->add_option("--plot", cluster.plot, "Write an SVG scatter plot");
  cmd_cluster->add_option("--plot-dims", cluster.plot_dims, "Two coordinates to plot, e.g. 0,1")->delimiter(',');
  cmd_cluster->add_option("--replay", cluster.replay, "Re-run the input and config of a saved run record");

  BenchmarkOptions bench;
  auto* cmd_bench = app.add_subcommand("benchmark", "Compare SACA (C swept) with grid-searched DBSCAN");
  add_input_options(cmd_bench, bench.input);
  cmd_bench->add_option("--c-max", bench.c_max, "Largest C in the sweep")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_bench->add_option("--eps-steps", bench.eps_steps, "Number of DBSCAN eps values")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd_bench->add_option("--min-pts-grid", bench.min_pts_grid, "DBSCAN min_pts values")->delimiter(',')
      ->capture_default_str();
  cmd_bench->add_option("--json", bench.json_out, "Write the comparison as JSON");

  std::string gen_preset, gen_output;
  bool gen_list = false;
  auto* cmd_gen = app.add_subcommand("generate", "Write a synthetic preset as CSV (label last)");
  cmd_gen->add_option("--preset", gen_preset, "Preset, optionally NAME:SEED");
  cmd_gen->add_option("--output,-o", gen_output, "Output path");
  cmd_gen->add_flag("--list", gen_list, "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cmd_cluster->parsed()) return run_cluster(cluster);
    if (cmd_bench->parsed()) return run_benchmark(bench);
    if (cmd_gen->parsed()) return run_generate(gen_preset, gen_output, gen_list);
  } catch (const Failure& f) {
    std::cerr << "saca: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "saca: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
