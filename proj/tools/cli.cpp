#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "covhuseg/dataset.hpp"
#include "covhuseg/mask_io.hpp"
#include "covhuseg/metrics.hpp"
#include "covhuseg/perturb.hpp"
#include "covhuseg/pipeline.hpp"
#include "covhuseg/report_io.hpp"
#include "covhuseg/rng.hpp"

namespace covhuseg::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kExitCodeHelp =
    "Exit status: 0 success, 1 partial failure (some files failed), 2 usage error,\n"
    "3 fatal error (nothing processed).\n"
    "Any subcommand accepts --config FILE with key=value lines using the long flag names.";

// Raised for whole-command failures that map to kFatalError.
struct FatalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers store results
// by index, so output order never depends on scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

// Image files directly inside `dir`, sorted by file name.
std::vector<fs::path> list_images(const fs::path& dir, std::size_t* skipped = nullptr) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw FatalError("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  std::size_t other = 0;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (has_image_extension(entry.path())) {
      files.push_back(entry.path());
    } else {
      ++other;
    }
  }
  if (ec) throw FatalError("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (skipped != nullptr) *skipped = other;
  return files;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw FatalError("cannot create output directory '" + dir.string() + "'");
}

// --- shared flag groups --------------------------------------------------------

struct PipelineFlags {
  std::string connectivity = "8";
  std::string hull_algorithm = "monotone_chain";
  std::size_t min_component_area = 0;
  double threshold = kDefaultThreshold;
  bool iterate_to_fixed_point = false;

  void add_to(CLI::App* app) {
    app->add_option("--connectivity", connectivity, "Component connectivity: 4 or 8")
        ->check(CLI::IsMember({"4", "8", "four", "eight"}))
        ->capture_default_str();
    app->add_option("--hull-algorithm", hull_algorithm, "monotone_chain or quickhull")
        ->check(CLI::IsMember({"monotone_chain", "quickhull"}))
        ->capture_default_str();
    app->add_option("--min-component-area", min_component_area,
                    "Drop components with fewer pixels (0 keeps all)")
        ->capture_default_str();
    app->add_option("--threshold", threshold, "Probability threshold for --probability-map input")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_flag("--iterate-to-fixed-point", iterate_to_fixed_point,
                  "Re-hull until components stop merging");
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.connectivity = parse_connectivity(connectivity);
    c.hull_algorithm = parse_hull_algorithm(hull_algorithm);
    c.min_component_area = min_component_area;
    c.threshold = threshold;
    c.iterate_to_fixed_point = iterate_to_fixed_point;
    c.validate();
    return c;
  }
};

void add_jobs(CLI::App* app, int& jobs) {
  app->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

// --- process -------------------------------------------------------------------

struct ProcessOptions {
  std::string in_dir;
  std::string out_dir;
  bool probability_map = false;
  int jobs = 1;
  PipelineFlags pipeline;
};

int cmd_process(const ProcessOptions& opt, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = opt.pipeline.config();
  std::size_t skipped = 0;
  const auto files = list_images(opt.in_dir, &skipped);
  ensure_directory(opt.out_dir);

  struct Outcome {
    std::string error;
    std::size_t pixels_in = 0;
    std::size_t pixels_out = 0;
    double millis = 0.0;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(files.size(), opt.jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome& o = outcomes[i];
    try {
      const BinaryMask mask = opt.probability_map ? threshold(load_gray(files[i]), config.threshold)
                                                  : load_mask(files[i]);
      const BinaryMask result = covhuseg(mask, config);
      save_mask(result, fs::path(opt.out_dir) / files[i].filename());
      o.pixels_in = mask.count();
      o.pixels_out = result.count();
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });

  std::size_t failed = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& o = outcomes[i];
    total += o.millis;
    const std::string name = files[i].filename().string();
    if (o.error.empty()) {
      out << fmt::format("{}  {} -> {} px  {:.2f} ms\n", name, o.pixels_in, o.pixels_out, o.millis);
    } else {
      ++failed;
      err << fmt::format("{}  FAILED: {}\n", name, o.error);
    }
  }
  out << fmt::format("processed {} of {} files ({} failed, {} non-image skipped) in {:.2f} ms\n",
                     files.size() - failed, files.size(), failed, skipped, total);
  return failed == 0 ? kSuccess : kPartialFailure;
}

// --- evaluate ------------------------------------------------------------------

struct EvaluateOptions {
  std::string pred_dir;
  std::string gt_dir;
  std::string manifest;
  std::string data_root;
  std::string report;
  std::string table;
  std::string records;
  std::string model = "model";
  std::string split = "-";
  int jobs = 1;
  PipelineFlags pipeline;
};

struct EvalPair {
  std::string id;
  fs::path pred;
  fs::path gt;
};

std::optional<fs::path> find_prediction(const fs::path& dir, const fs::path& name) {
  const fs::path exact = dir / name.filename();
  if (fs::is_regular_file(exact)) return exact;
  for (const char* ext : {".png", ".pgm"}) {
    fs::path alt = dir / name.stem();
    alt += ext;
    if (fs::is_regular_file(alt)) return alt;
  }
  return std::nullopt;
}

std::vector<EvalPair> pair_by_filename(const EvaluateOptions& opt, std::ostream& err) {
  const auto gts = list_images(opt.gt_dir);
  const auto preds = list_images(opt.pred_dir);
  std::vector<EvalPair> pairs;
  std::vector<fs::path> used;
  for (const auto& gt : gts) {
    if (auto pred = find_prediction(opt.pred_dir, gt)) {
      pairs.push_back({gt.filename().string(), *pred, gt});
      used.push_back(pred->filename());
    } else {
      err << "unpaired ground truth: " << gt.filename().string() << "\n";
    }
  }
  for (const auto& p : preds) {
    if (std::find(used.begin(), used.end(), p.filename()) == used.end()) {
      err << "unpaired prediction: " << p.filename().string() << "\n";
    }
  }
  return pairs;
}

std::vector<EvalPair> pair_by_manifest(const EvaluateOptions& opt, std::ostream& err) {
  const Manifest manifest = read_manifest_csv(fs::path(opt.manifest));
  const fs::path root =
      opt.data_root.empty() ? fs::path(opt.manifest).parent_path() : fs::path(opt.data_root);
  std::vector<EvalPair> pairs;
  for (const auto& e : manifest) {
    auto pred = find_prediction(opt.pred_dir, fs::path(e.patch_path));
    if (!pred) pred = find_prediction(opt.pred_dir, fs::path(e.mask_path));
    if (!pred) {
      err << "no prediction for manifest entry " << e.patch_path << "\n";
      continue;
    }
    pairs.push_back({pred->filename().string(), *pred, root / e.mask_path});
  }
  return pairs;
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = opt.pipeline.config();
  if (!fs::is_directory(opt.pred_dir)) throw FatalError("'" + opt.pred_dir + "' is not a directory");
  const auto pairs = opt.manifest.empty() ? pair_by_filename(opt, err) : pair_by_manifest(opt, err);
  if (pairs.empty()) throw FatalError("no prediction/ground-truth pairs found");

  std::vector<std::optional<EvalRecord>> results(pairs.size());
  std::vector<std::string> errors(pairs.size());
  parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
    try {
      const BinaryMask pred = load_mask(pairs[i].pred);
      const BinaryMask gt = load_mask(pairs[i].gt);
      results[i] = evaluate_pair(pred, gt, config, pairs[i].id);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<EvalRecord> records;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (results[i]) {
      records.push_back(*results[i]);
    } else {
      ++flagged;
      err << "flagged " << pairs[i].id << ": " << errors[i] << "\n";
    }
  }
  if (records.empty()) throw FatalError("every pair failed to evaluate");

  const std::vector<ReportRow> rows{aggregate(records, opt.model, opt.split)};
  write_report_csv(rows, fs::path(opt.report));
  const std::string table = render_report_table(rows);
  fs::path table_path = opt.table.empty() ? fs::path(opt.report).replace_extension(".txt") : fs::path(opt.table);
  {
    std::ofstream t(table_path, std::ios::binary | std::ios::trunc);
    if (!t) throw FatalError("cannot write table '" + table_path.string() + "'");
    t << table;
  }
  if (!opt.records.empty()) write_records_csv(records, fs::path(opt.records));
  out << table;
  out << fmt::format("evaluated {} of {} pairs ({} flagged)\n", records.size(), pairs.size(), flagged);
  return flagged == 0 ? kSuccess : kPartialFailure;
}

// --- split ---------------------------------------------------------------------

struct SplitOptions {
  std::string root;
  std::string from_manifest;
  std::string split;
  std::uint64_t seed = 0;
  std::string out;
  Layout layout;
};

int cmd_split(const SplitOptions& opt, std::ostream& out, std::ostream& err) {
  const Split split = parse_split(opt.split);
  Manifest manifest;
  if (!opt.from_manifest.empty()) {
    manifest = read_manifest_csv(fs::path(opt.from_manifest));
  } else {
    ScanResult scan;
    try {
      scan = scan_manifest(opt.root, opt.layout);
    } catch (const std::runtime_error& e) {
      throw FatalError(e.what());
    }
    for (const auto& w : scan.warnings) err << "warning: " << w.path << ": " << w.reason << "\n";
    manifest = std::move(scan.manifest);
  }
  if (manifest.empty()) throw FatalError("manifest is empty; nothing to split");
  const Manifest result = make_split(manifest, SplitSpec{split, opt.seed});
  write_manifest_csv(result, fs::path(opt.out));
  out << fmt::format("split {}: kept {} of {} entries -> {}\n", to_string(split), result.size(),
                     manifest.size(), opt.out);
  return kSuccess;
}

// --- noise ---------------------------------------------------------------------

struct NoiseOptions {
  std::string in_dir;
  std::string out_dir;
  double std = kDefaultNoiseStd;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int cmd_noise(const NoiseOptions& opt, std::ostream& out, std::ostream& err) {
  if (!(opt.std >= 0.0)) throw std::invalid_argument("--std must be >= 0");
  const auto files = list_images(opt.in_dir);
  ensure_directory(opt.out_dir);
  std::vector<std::string> errors(files.size());
  parallel_for(files.size(), opt.jobs, [&](std::size_t i) {
    try {
      // Per-file stream: seed XOR FNV-1a(file name), independent of listing order.
      const std::uint64_t seed = opt.seed ^ fnv1a64(files[i].filename().string());
      save_gray(add_gaussian_noise(load_gray(files[i]), opt.std, seed),
                fs::path(opt.out_dir) / files[i].filename());
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      ++failed;
      err << files[i].filename().string() << "  FAILED: " << errors[i] << "\n";
    }
  }
  out << fmt::format("noised {} of {} files (std={}, seed={})\n", files.size() - failed, files.size(),
                     opt.std, opt.seed);
  return failed == 0 ? kSuccess : kPartialFailure;
}

// --- synth ---------------------------------------------------------------------

struct SynthOptions {
  std::string shape = "ellipse";
  SynthSpec synth;
  DegradeSpec degrade;
  int trials = 10;
  std::string out_dir;
  std::string report;
  PipelineFlags pipeline;
};

int cmd_synth(SynthOptions opt, std::ostream& out, std::ostream&) {
  opt.synth.shape = parse_synth_shape(opt.shape);
  opt.synth.validate();
  opt.degrade.validate();
  const PipelineConfig config = opt.pipeline.config();
  const fs::path root(opt.out_dir);
  ensure_directory(root / "gt");
  ensure_directory(root / "pred");
  for (int t = 0; t < opt.trials; ++t) {
    const Trial trial = make_trial(opt.synth, opt.degrade, static_cast<std::uint64_t>(t));
    const std::string name = trial_id(static_cast<std::uint64_t>(t)) + ".png";
    save_mask(trial.ground_truth, root / "gt" / name);
    save_mask(trial.degraded, root / "pred" / name);
  }
  out << fmt::format("wrote {} trials to {}\n", opt.trials, root.string());
  if (!opt.report.empty()) {
    const ExperimentResult result = improvement_experiment(opt.synth, opt.degrade, opt.trials, config);
    const std::vector<ReportRow> rows{result.row};
    write_report_csv(rows, fs::path(opt.report));
    out << render_report_table(rows);
    out << fmt::format("trials with lower Dice after hulling: {}\n", result.violations);
  }
  return kSuccess;
}

// --- report --------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::string> inputs;
  std::string out;
  std::string table;
};

int cmd_report(const ReportOptions& opt, std::ostream& out, std::ostream&) {
  std::vector<ReportRow> rows;
  for (const auto& in : opt.inputs) {
    auto part = read_report_csv(fs::path(in));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (rows.empty()) throw FatalError("no report rows in the given inputs");
  if (!opt.out.empty()) write_report_csv(rows, fs::path(opt.out));
  const std::string table = render_report_table(rows);
  if (!opt.table.empty()) {
    std::ofstream t(opt.table, std::ios::binary | std::ios::trunc);
    if (!t) throw FatalError("cannot write table '" + opt.table + "'");
    t << table;
  }
  out << table;
  return kSuccess;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Appends the settings of `--config FILE` (key=value lines, '#' comments) to
// the subcommand's arguments. Flags given on the command line win.
std::vector<std::string> expand_config(CLI::App& app, const std::vector<std::string>& args) {
  if (args.empty()) return args;
  CLI::App* sub = nullptr;
  for (auto* candidate : app.get_subcommands({})) {
    if (candidate->get_name() == args[0]) sub = candidate;
  }
  if (sub == nullptr) return args;

  std::optional<std::string> config;
  std::vector<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    if (name == "config") {
      if (eq != std::string::npos) {
        config = a.substr(eq + 1);
      } else if (i + 1 < args.size()) {
        config = args[i + 1];
      }
    }
    given.push_back(name);
  }
  if (!config) return args;

  std::ifstream in(*config);
  if (!in) throw std::invalid_argument("cannot read config file '" + *config + "'");
  std::vector<std::string> out = args;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(*config + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw std::invalid_argument(*config + ":" + std::to_string(line_no) + ": unknown key '" + key +
                                  "' for " + sub->get_name());
    }
    if (std::find(given.begin(), given.end(), key) != given.end()) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1") {
        out.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw std::invalid_argument(*config + ":" + std::to_string(line_no) + ": flag '" + key +
                                    "' takes true or false");
      }
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex-hull post-processing and evaluation for binary segmentation masks", "covhuseg"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  std::string config_path;  // consumed by expand_config before parsing

  ProcessOptions process;
  auto* p = app.add_subcommand("process", "Hull every component of every mask in a directory");
  p->add_option("--config", config_path, "key=value file of long flag names");
  p->add_option("--in", process.in_dir, "Input mask directory")->required();
  p->add_option("--out", process.out_dir, "Output directory (file names preserved)")->required();
  p->add_flag("--probability-map", process.probability_map, "Inputs are probability maps; threshold first");
  process.pipeline.add_to(p);
  add_jobs(p, process.jobs);

  EvaluateOptions evaluate;
  auto* e = app.add_subcommand("evaluate", "Dice/IoU with and without post-processing");
  e->add_option("--config", config_path, "key=value file of long flag names");
  e->add_option("--pred", evaluate.pred_dir, "Prediction mask directory")->required();
  auto* gt_opt = e->add_option("--gt", evaluate.gt_dir, "Ground-truth directory (pairs by file name)");
  auto* man_opt = e->add_option("--manifest", evaluate.manifest, "Manifest CSV naming ground-truth masks");
  gt_opt->excludes(man_opt);
  e->add_option("--data-root", evaluate.data_root, "Root for manifest paths (default: manifest's directory)")
      ->needs(man_opt);
  e->add_option("--report", evaluate.report, "Report CSV path")->required();
  e->add_option("--table", evaluate.table, "Text table path (default: report path with .txt)");
  e->add_option("--records", evaluate.records, "Optional per-image CSV");
  e->add_option("--model", evaluate.model, "Model tag for the report row")->capture_default_str();
  e->add_option("--split", evaluate.split, "Split tag for the report row")->capture_default_str();
  evaluate.pipeline.add_to(e);
  add_jobs(e, evaluate.jobs);

  SplitOptions split;
  auto* s = app.add_subcommand("split", "Sample split A-D from a dataset and write a manifest");
  s->add_option("--config", config_path, "key=value file of long flag names");
  auto* root_opt = s->add_option("--root", split.root, "Dataset root directory");
  auto* from_opt = s->add_option("--from-manifest", split.from_manifest, "Split an existing manifest instead");
  root_opt->excludes(from_opt);
  s->add_option("--split", split.split, "A, B, C or D")->required()->check(CLI::IsMember({"A", "B", "C", "D"}));
  s->add_option("--seed", split.seed, "Sampling seed")->capture_default_str();
  s->add_option("--out", split.out, "Output manifest CSV")->required();
  s->add_option("--image-pattern", split.layout.image_pattern, "Image path pattern")->capture_default_str();
  s->add_option("--mask-pattern", split.layout.mask_pattern, "Mask path pattern")->capture_default_str();

  NoiseOptions noise;
  auto* n = app.add_subcommand("noise", "Add clamped Gaussian noise to grayscale images");
  n->add_option("--config", config_path, "key=value file of long flag names");
  n->add_option("--in", noise.in_dir, "Input image directory")->required();
  n->add_option("--out", noise.out_dir, "Output directory")->required();
  n->add_option("--std", noise.std, "Noise standard deviation on [0,1] intensities")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  n->add_option("--seed", noise.seed, "Base seed; each file uses seed ^ FNV-1a(name)")->capture_default_str();
  add_jobs(n, noise.jobs);

  SynthOptions synth;
  auto* y = app.add_subcommand("synth", "Write synthetic convex ground truths and degraded predictions");
  y->add_option("--config", config_path, "key=value file of long flag names");
  y->add_option("--out", synth.out_dir, "Output directory (gets gt/ and pred/)")->required();
  y->add_option("--trials", synth.trials, "Number of image pairs")->check(CLI::PositiveNumber)->capture_default_str();
  y->add_option("--report", synth.report, "Also run the experiment and write its report CSV");
  y->add_option("--shape", synth.shape, "ellipse or random_convex_polygon")
      ->check(CLI::IsMember({"ellipse", "random_convex_polygon", "polygon"}))
      ->capture_default_str();
  y->add_option("--size-min", synth.synth.size_min, "Smallest semi-axis / radius")->capture_default_str();
  y->add_option("--size-max", synth.synth.size_max, "Largest semi-axis / radius")->capture_default_str();
  y->add_option("--count-per-image", synth.synth.count_per_image, "Objects per image")->capture_default_str();
  y->add_option("--width", synth.synth.width, "Canvas width")->capture_default_str();
  y->add_option("--height", synth.synth.height, "Canvas height")->capture_default_str();
  y->add_option("--seed", synth.synth.seed, "Shape seed (trial i uses seed ^ i)")->capture_default_str();
  y->add_option("--hole-count", synth.degrade.hole_count, "Interior holes per image")->capture_default_str();
  y->add_option("--hole-radius-min", synth.degrade.hole_radius_min)->capture_default_str();
  y->add_option("--hole-radius-max", synth.degrade.hole_radius_max)->capture_default_str();
  y->add_option("--boundary-erosion-prob", synth.degrade.boundary_erosion_prob)->capture_default_str();
  y->add_option("--pixel-dropout-prob", synth.degrade.pixel_dropout_prob)->capture_default_str();
  y->add_option("--speckle-prob", synth.degrade.speckle_prob, "Additive noise; voids the subset guarantee")
      ->capture_default_str();
  y->add_option("--degrade-seed", synth.degrade.seed, "Degradation seed (trial i uses seed ^ i)")
      ->capture_default_str();
  synth.pipeline.add_to(y);

  ReportOptions report;
  auto* r = app.add_subcommand("report", "Concatenate report CSVs and render the table");
  r->add_option("--config", config_path, "key=value file of long flag names");
  r->add_option("--in", report.inputs, "Report CSV files, in row order")->required();
  r->add_option("--out", report.out, "Combined CSV output");
  r->add_option("--table", report.table, "Text table output");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(app, args);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsageError;
  }

  try {
    app.parse(std::vector<std::string>(expanded.rbegin(), expanded.rend()));
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (*s && split.root.empty() && split.from_manifest.empty()) {
    err << "split: one of --root or --from-manifest is required\n";
    return kUsageError;
  }
  if (*e && evaluate.gt_dir.empty() && evaluate.manifest.empty()) {
    err << "evaluate: one of --gt or --manifest is required\n";
    return kUsageError;
  }

  try {
    if (*p) return cmd_process(process, out, err);
    if (*e) return cmd_evaluate(evaluate, out, err);
    if (*s) return cmd_split(split, out, err);
    if (*n) return cmd_noise(noise, out, err);
    if (*y) return cmd_synth(synth, out, err);
    if (*r) return cmd_report(report, out, err);
  } catch (const FatalError& ex) {
    err << "error: " << ex.what() << "\n";
    return kFatalError;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsageError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFatalError;
  }
  return kUsageError;
}

}  // namespace covhuseg::cli
