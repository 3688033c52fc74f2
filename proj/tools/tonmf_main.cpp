// Command-line driver: corpus generation, factorization, baseline scoring,
// ROC evaluation, and parameter sweeps over term-document matrices.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tonmf/baselines.hpp"
#include "tonmf/corpus_io.hpp"
#include "tonmf/errors.hpp"
#include "tonmf/evaluation.hpp"
#include "tonmf/solver.hpp"
#include "tonmf/synthgen.hpp"
#include "tonmf/term_doc_matrix.hpp"
#include "tonmf/version.hpp"

namespace {

using tonmf::Index;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitShape = 3;
constexpr int kExitConfig = 4;
constexpr int kExitNumeric = 5;

constexpr const char* kManifestName = "manifest.json";

class PhaseTimer {
 public:
  void start(const std::string& phase) {
    current_ = phase;
    t0_ = std::chrono::steady_clock::now();
  }
  void stop() {
    const auto t1 = std::chrono::steady_clock::now();
    timings_[current_] = std::chrono::duration<double>(t1 - t0_).count();
  }
  const std::map<std::string, double>& timings() const { return timings_; }

 private:
  std::string current_;
  std::chrono::steady_clock::time_point t0_;
  std::map<std::string, double> timings_;
};

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tonmf::IoError("cannot open input file: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
    if (!in) break;
  }
  char out[19];
  std::snprintf(out, sizeof(out), "0x%016llx", static_cast<unsigned long long>(hash));
  return out;
}

struct CommonOpts {
  std::string input;
  std::string format = "bow";
  std::string labels_path;
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  int threads = 1;
  bool tfidf = false;
};

tonmf::TermDocMatrix load_matrix(const CommonOpts& opts) {
  tonmf::TermDocMatrix a = opts.format == "mm" ? tonmf::load_matrix_market(opts.input)
                                               : tonmf::load_bow(opts.input);
  if (opts.tfidf) a = tonmf::tfidf_transform(a);
  return a;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw tonmf::IoError("cannot create output directory: " + dir);
  return p;
}

void write_scores_csv(const Eigen::VectorXd& scores, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw tonmf::IoError("cannot open output file: " + path.string());
  out << "doc_id,score\n";
  char buf[64];
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%lld,%.10g\n", static_cast<long long>(i), scores[i]);
    out << buf;
  }
  out << "# manifest=" << kManifestName << "\n";
  if (!out) throw tonmf::IoError("write failed: " + path.string());
}

Eigen::VectorXd read_scores_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tonmf::IoError("cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw tonmf::IoError(path + ": empty scores file");
  std::vector<double> values;
  Index expected_id = 0;
  Index line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string id_field, score_field;
    if (!std::getline(ss, id_field, ',') || !std::getline(ss, score_field)) {
      throw tonmf::IoError(path + ":" + std::to_string(line_no) + ": malformed row");
    }
    Index id = -1;
    double score = 0.0;
    try {
      id = std::stoll(id_field);
      score = std::stod(score_field);
    } catch (const std::exception&) {
      throw tonmf::IoError(path + ":" + std::to_string(line_no) + ": malformed row");
    }
    if (id != expected_id) {
      throw tonmf::ShapeError(path + ": doc ids must be 0-indexed and contiguous");
    }
    ++expected_id;
    values.push_back(score);
  }
  Eigen::VectorXd scores(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    scores[static_cast<Eigen::Index>(i)] = values[i];
  }
  return scores;
}

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const json& config, const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& artifacts, const PhaseTimer& timer,
                    const json& extra = json::object()) {
  json m;
  m["command"] = command;
  m["version"] = TONMF_VERSION;
  m["config"] = config;
  json inputs = json::object();
  for (const auto& p : input_paths) inputs[p] = fnv1a64_file(p);
  m["inputs"] = inputs;
  // Artifacts are listed with content digests; formats that cannot carry an
  // in-band manifest reference (bag-of-words, labels) are still traceable
  // through this map.
  json artifact_digests = json::object();
  for (const auto& name : artifacts) {
    artifact_digests[name] = fnv1a64_file((dir / name).string());
  }
  m["artifacts"] = artifact_digests;
  json timings = json::object();
  for (const auto& [phase, seconds] : timer.timings()) timings[phase] = seconds;
  m["timings_s"] = timings;
  for (const auto& [key, value] : extra.items()) m[key] = value;
  std::ofstream out(dir / kManifestName);
  if (!out) throw tonmf::IoError("cannot open output file: " + (dir / kManifestName).string());
  out << m.dump(2) << "\n";
}

json solver_config_json(const tonmf::SolverConfig& cfg, const CommonOpts& opts) {
  json c;
  c["rank"] = cfg.rank;
  c["alpha"] = cfg.alpha;
  c["beta"] = cfg.beta_value();
  c["gamma"] = cfg.gamma;
  c["max_outer"] = cfg.max_outer;
  c["max_inner"] = cfg.max_inner;
  c["tol_outer"] = cfg.tol_outer;
  c["tol_inner"] = cfg.tol_inner;
  c["seed"] = cfg.seed;
  c["threads"] = cfg.threads;
  c["format"] = opts.format;
  c["tfidf"] = opts.tfidf;
  return c;
}

double run_factorize_eval(const tonmf::TermDocMatrix& a, const tonmf::LabelVector& labels,
                          tonmf::SolverConfig cfg) {
  const tonmf::SolveResult res = tonmf::solve(a, cfg);
  return tonmf::auc(res.outliers.scores, labels);
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<Index> parse_index_list(const std::string& csv) {
  std::vector<Index> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

int cmd_factorize(const CommonOpts& opts, const tonmf::SolverConfig& cfg) {
  PhaseTimer timer;
  timer.start("load");
  const tonmf::TermDocMatrix a = load_matrix(opts);
  timer.stop();

  timer.start("solve");
  const tonmf::SolveResult res = tonmf::solve(a, cfg);
  timer.stop();

  timer.start("write");
  const auto dir = ensure_out_dir(opts.out_dir);
  write_scores_csv(res.outliers.scores, dir / "scores.csv");
  const std::string ref = std::string("manifest=") + kManifestName;
  tonmf::save_dense_matrix_market(res.factors.W, (dir / "factors_w.mm").string(), ref);
  tonmf::save_dense_matrix_market(res.factors.H, (dir / "factors_h.mm").string(), ref);
  {
    std::ofstream out(dir / "objective_trace.csv");
    if (!out) throw tonmf::IoError("cannot open output file: " + (dir / "objective_trace.csv").string());
    out << "iteration,objective\n";
    char buf[64];
    for (std::size_t i = 0; i < res.objective_trace.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, res.objective_trace[i]);
      out << buf;
    }
    out << "# manifest=" << kManifestName << "\n";
  }
  timer.stop();

  json extra;
  extra["n_terms"] = a.n_terms;
  extra["n_docs"] = a.n_docs;
  extra["nnz"] = a.nnz();
  extra["converged"] = res.converged;
  extra["iterations_used"] = res.iterations_used;
  extra["degenerate_reseeds"] = res.degenerate_reseeds;
  extra["seed"] = cfg.seed;
  write_manifest(dir, "factorize", solver_config_json(cfg, opts), {opts.input},
                 {"scores.csv", "factors_w.mm", "factors_h.mm", "objective_trace.csv"},
                 timer, extra);
  std::cout << "wrote " << (dir / "scores.csv").string() << " (" << a.n_docs
            << " documents)\n";
  return kExitOk;
}

int cmd_eval(const std::string& scores_path, const std::string& labels_path,
             const std::string& out_dir) {
  PhaseTimer timer;
  timer.start("load");
  const Eigen::VectorXd scores = read_scores_csv(scores_path);
  const tonmf::LabelVector labels =
      tonmf::load_labels(labels_path, static_cast<Index>(scores.size()));
  timer.stop();

  timer.start("eval");
  const tonmf::RocCurve curve = tonmf::roc_curve(scores, labels);
  const tonmf::ScoreStats stats = tonmf::score_stats(scores, labels);
  timer.stop();

  timer.start("write");
  const auto dir = ensure_out_dir(out_dir);
  tonmf::write_roc_csv(curve, (dir / "roc.csv").string(),
                       std::string("manifest=") + kManifestName);
  timer.stop();

  json extra;
  extra["auc"] = curve.auc;
  extra["stats"] = {{"mean_pos", stats.mean_pos}, {"sd_pos", stats.sd_pos},
                    {"mean_neg", stats.mean_neg}, {"sd_neg", stats.sd_neg},
                    {"gap", stats.gap}};
  json config;
  config["scores"] = scores_path;
  config["labels"] = labels_path;
  write_manifest(dir, "eval", config, {scores_path, labels_path}, {"roc.csv"}, timer, extra);

  char buf[32];
  std::snprintf(buf, sizeof(buf), "auc=%.4f\n", curve.auc);
  std::cout << buf;
  return kExitOk;
}

int cmd_baseline(const CommonOpts& opts, const std::string& method,
                 tonmf::BaselineConfig bl, Index k_max, const std::string& svd_mode) {
  PhaseTimer timer;
  timer.start("load");
  const tonmf::TermDocMatrix a = load_matrix(opts);
  timer.stop();

  const auto dir = ensure_out_dir(opts.out_dir);
  std::vector<std::string> artifacts;
  std::vector<std::string> inputs{opts.input};
  json extra;

  timer.start("score");
  if (method == "knn") {
    const Eigen::VectorXd scores = tonmf::knn_scores(a, bl.k, bl.metric, bl.threads);
    timer.stop();
    timer.start("write");
    write_scores_csv(scores, dir / "knn_scores.csv");
    artifacts.push_back("knn_scores.csv");
    timer.stop();
  } else if (method == "svd") {
    std::vector<std::pair<tonmf::SvdScoreMode, std::string>> modes;
    if (svd_mode == "energy" || svd_mode == "both") {
      modes.emplace_back(tonmf::SvdScoreMode::kSubspaceEnergy, "svd_energy_scores.csv");
    }
    if (svd_mode == "residual" || svd_mode == "both") {
      modes.emplace_back(tonmf::SvdScoreMode::kResidual, "svd_residual_scores.csv");
    }
    if (modes.empty()) throw tonmf::ConfigError("unknown --svd-mode: " + svd_mode);
    std::vector<std::pair<std::string, Eigen::VectorXd>> results;
    for (const auto& [mode, name] : modes) {
      results.emplace_back(name, tonmf::svd_scores(a, bl.rank, bl, mode));
    }
    timer.stop();
    timer.start("write");
    for (const auto& [name, scores] : results) {
      write_scores_csv(scores, dir / name);
      artifacts.push_back(name);
    }
    timer.stop();
  } else if (method == "knn-sweep") {
    if (opts.labels_path.empty()) {
      throw tonmf::ConfigError("--labels is required for knn-sweep");
    }
    const tonmf::LabelVector labels = tonmf::load_labels(opts.labels_path, a.n_docs);
    inputs.push_back(opts.labels_path);
    const tonmf::KnnSweepResult sweep =
        tonmf::knn_sweep(a, 1, k_max, labels, bl.metric, bl.threads);
    timer.stop();
    timer.start("write");
    {
      std::ofstream out(dir / "knn_sweep.csv");
      if (!out) throw tonmf::IoError("cannot open output file: " + (dir / "knn_sweep.csv").string());
      out << "k,auc,best\n";
      char buf[64];
      for (const auto& row : sweep.table) {
        std::snprintf(buf, sizeof(buf), "%lld,%.10g,%d\n", static_cast<long long>(row.k),
                      row.auc, row.k == sweep.best_k ? 1 : 0);
        out << buf;
      }
      out << "# manifest=" << kManifestName << "\n";
    }
    artifacts.push_back("knn_sweep.csv");
    const Eigen::VectorXd best_scores =
        tonmf::knn_scores(a, sweep.best_k, bl.metric, bl.threads);
    write_scores_csv(best_scores, dir / "knn_scores.csv");
    artifacts.push_back("knn_scores.csv");
    extra["best_k"] = sweep.best_k;
    extra["best_auc"] = sweep.best_auc;
    timer.stop();
  } else {
    throw tonmf::ConfigError("unknown --method: " + method);
  }

  json config;
  config["method"] = method;
  config["k"] = bl.k;
  config["k_max"] = k_max;
  config["metric"] = bl.metric == tonmf::Metric::kEuclidean ? "euclidean" : "cosine";
  config["rank"] = bl.rank;
  config["svd_mode"] = svd_mode;
  config["svd_power_iters"] = bl.svd_power_iters;
  config["svd_oversample"] = bl.svd_oversample;
  config["seed"] = bl.seed;
  config["threads"] = bl.threads;
  config["format"] = opts.format;
  config["tfidf"] = opts.tfidf;
  write_manifest(dir, "baseline", config, inputs, artifacts, timer, extra);
  std::cout << "wrote " << artifacts.size() << " score file(s) to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_gen(const tonmf::SynthConfig& cfg, const std::string& out_dir) {
  PhaseTimer timer;
  timer.start("generate");
  const tonmf::SynthCorpus corpus = tonmf::generate(cfg);
  timer.stop();

  timer.start("write");
  const auto dir = ensure_out_dir(out_dir);
  tonmf::save_bow(corpus.matrix, (dir / "corpus.bow").string());
  tonmf::save_labels(corpus.labels, (dir / "labels.txt").string());
  timer.stop();

  json config;
  config["n_terms"] = cfg.n_terms;
  config["n_regular_docs"] = cfg.n_regular_docs;
  config["n_outliers"] = cfg.n_outliers;
  config["n_topics"] = cfg.n_topics;
  config["doc_length_mean"] = cfg.doc_length_mean;
  config["outlier_vocab_overlap"] = cfg.outlier_vocab_overlap;
  config["seed"] = cfg.seed;
  json extra;
  extra["n_docs"] = corpus.matrix.n_docs;
  extra["nnz"] = corpus.matrix.nnz();
  write_manifest(dir, "gen", config, {}, {"corpus.bow", "labels.txt"}, timer, extra);
  std::cout << "wrote " << (dir / "corpus.bow").string() << " ("
            << corpus.matrix.n_docs << " documents, " << corpus.matrix.nnz()
            << " entries)\n";
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, tonmf::SolverConfig base_cfg,
              const std::string& alphas_csv, const std::string& ranks_csv) {
  const std::vector<double> alphas = parse_double_list(alphas_csv);
  const std::vector<Index> ranks = parse_index_list(ranks_csv);
  if (alphas.empty() || ranks.empty()) {
    throw tonmf::ConfigError("empty sweep grid: provide --alphas and --ranks");
  }
  if (opts.labels_path.empty()) throw tonmf::ConfigError("--labels is required for sweep");

  PhaseTimer timer;
  timer.start("load");
  const tonmf::TermDocMatrix a = load_matrix(opts);
  const tonmf::LabelVector labels = tonmf::load_labels(opts.labels_path, a.n_docs);
  timer.stop();

  timer.start("sweep");
  std::vector<std::tuple<double, Index, double>> rows;
  for (double alpha : alphas) {
    for (Index rank : ranks) {
      tonmf::SolverConfig cfg = base_cfg;
      cfg.alpha = alpha;
      cfg.rank = rank;
      rows.emplace_back(alpha, rank, run_factorize_eval(a, labels, cfg));
    }
  }
  timer.stop();

  timer.start("write");
  const auto dir = ensure_out_dir(opts.out_dir);
  {
    std::ofstream out(dir / "sweep.csv");
    if (!out) throw tonmf::IoError("cannot open output file: " + (dir / "sweep.csv").string());
    out << "alpha,rank,auc\n";
    char buf[96];
    for (const auto& [alpha, rank, value] : rows) {
      std::snprintf(buf, sizeof(buf), "%.10g,%lld,%.10g\n", alpha,
                    static_cast<long long>(rank), value);
      out << buf;
    }
    out << "# manifest=" << kManifestName << "\n";
  }
  timer.stop();

  json config = solver_config_json(base_cfg, opts);
  config["alphas"] = alphas;
  json rank_list = json::array();
  for (Index r : ranks) rank_list.push_back(r);
  config["ranks"] = rank_list;
  write_manifest(dir, "sweep", config, {opts.input, opts.labels_path}, {"sweep.csv"}, timer);
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << rows.size()
            << " cells)\n";
  return kExitOk;
}

void add_common_flags(CLI::App* app, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    app->add_option("--input", opts.input, "input matrix file")->required();
    app->add_option("--format", opts.format, "input format")
        ->check(CLI::IsMember({"bow", "mm"}));
    app->add_flag("--tfidf", opts.tfidf, "apply smoothed tf-idf reweighting after load");
  }
  app->add_option("--out-dir", opts.out_dir, "output directory");
  app->add_option("--seed", opts.seed, "RNG seed");
  app->add_option("--threads", opts.threads, "worker threads for column-parallel phases")
      ->check(CLI::PositiveNumber);
}

void add_solver_flags(CLI::App* app, tonmf::SolverConfig& cfg, double& beta_holder) {
  app->add_option("--rank", cfg.rank, "factorization rank");
  app->add_option("--alpha", cfg.alpha, "outlier column penalty");
  app->add_option("--beta", beta_holder, "l1 penalty on H (default 0.1*alpha)");
  app->add_option("--gamma", cfg.gamma, "quadratic weight in the shrink subproblem");
  app->add_option("--max-outer", cfg.max_outer, "outer iteration limit");
  app->add_option("--max-inner", cfg.max_inner, "inner sweep limit");
  app->add_option("--tol-outer", cfg.tol_outer, "relative objective-change tolerance");
  app->add_option("--tol-inner", cfg.tol_inner, "relative H-change tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text outlier detection via low-rank-plus-outlier factorization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TONMF_VERSION);

  // factorize
  CommonOpts fac_opts;
  tonmf::SolverConfig fac_cfg;
  double fac_beta = 0.0;
  auto* fac = app.add_subcommand("factorize", "solve and write outlier scores");
  add_common_flags(fac, fac_opts);
  add_solver_flags(fac, fac_cfg, fac_beta);

  // eval
  std::string eval_scores, eval_labels, eval_out = ".";
  auto* ev = app.add_subcommand("eval", "ROC curve and AUC for a scores file");
  ev->add_option("--input", eval_scores, "scores CSV")->required();
  ev->add_option("--labels", eval_labels, "labels file")->required();
  ev->add_option("--out-dir", eval_out, "output directory");

  // baseline
  CommonOpts bl_opts;
  tonmf::BaselineConfig bl_cfg;
  std::string bl_method = "knn";
  std::string bl_metric = "euclidean";
  std::string bl_svd_mode = "residual";
  Index bl_kmax = 50;
  auto* bl = app.add_subcommand("baseline", "distance and SVD baseline scorers");
  add_common_flags(bl, bl_opts);
  bl->add_option("--labels", bl_opts.labels_path, "labels file (knn-sweep only)");
  bl->add_option("--method", bl_method, "baseline method")
      ->check(CLI::IsMember({"knn", "svd", "knn-sweep"}));
  bl->add_option("--k", bl_cfg.k, "neighbor index for knn");
  bl->add_option("--k-max", bl_kmax, "largest k for knn-sweep");
  bl->add_option("--metric", bl_metric, "distance metric")
      ->check(CLI::IsMember({"euclidean", "cosine"}));
  bl->add_option("--rank", bl_cfg.rank, "rank for the SVD baseline");
  bl->add_option("--svd-mode", bl_svd_mode, "energy, residual, or both")
      ->check(CLI::IsMember({"energy", "residual", "both"}));

  // gen
  tonmf::SynthConfig gen_cfg;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("gen", "generate a planted-outlier corpus");
  gen->add_option("--terms", gen_cfg.n_terms, "vocabulary size");
  gen->add_option("--docs", gen_cfg.n_regular_docs, "regular document count");
  gen->add_option("--outliers", gen_cfg.n_outliers, "outlier document count");
  gen->add_option("--topics", gen_cfg.n_topics, "regular topic count");
  gen->add_option("--doc-length", gen_cfg.doc_length_mean, "mean document length");
  gen->add_option("--overlap", gen_cfg.outlier_vocab_overlap,
                  "fraction of outlier vocabulary shared with regular topics");
  gen->add_option("--seed", gen_cfg.seed, "RNG seed");
  gen->add_option("--out-dir", gen_out, "output directory");
  int gen_threads = 1;  // generation is a single sequential stream
  gen->add_option("--threads", gen_threads, "accepted for interface uniformity; unused")
      ->check(CLI::PositiveNumber);

  // sweep
  CommonOpts sw_opts;
  tonmf::SolverConfig sw_cfg;
  double sw_beta = 0.0;
  std::string sw_alphas, sw_ranks;
  auto* sw = app.add_subcommand("sweep", "alpha x rank grid of factorize+eval AUCs");
  add_common_flags(sw, sw_opts);
  sw->add_option("--labels", sw_opts.labels_path, "labels file")->required();
  add_solver_flags(sw, sw_cfg, sw_beta);
  sw->add_option("--alphas", sw_alphas, "comma-separated alpha values")->required();
  sw->add_option("--ranks", sw_ranks, "comma-separated rank values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (fac->parsed()) {
      if (fac->count("--beta") > 0) fac_cfg.beta = fac_beta;
      fac_cfg.seed = fac_opts.seed;
      fac_cfg.threads = fac_opts.threads;
      return cmd_factorize(fac_opts, fac_cfg);
    }
    if (ev->parsed()) {
      return cmd_eval(eval_scores, eval_labels, eval_out);
    }
    if (bl->parsed()) {
      bl_cfg.metric = bl_metric == "cosine" ? tonmf::Metric::kCosine
                                            : tonmf::Metric::kEuclidean;
      bl_cfg.seed = bl_opts.seed;
      bl_cfg.threads = bl_opts.threads;
      return cmd_baseline(bl_opts, bl_method, bl_cfg, bl_kmax, bl_svd_mode);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_cfg, gen_out);
    }
    if (sw->parsed()) {
      if (sw->count("--beta") > 0) sw_cfg.beta = sw_beta;
      sw_cfg.seed = sw_opts.seed;
      sw_cfg.threads = sw_opts.threads;
      return cmd_sweep(sw_opts, sw_cfg, sw_alphas, sw_ranks);
    }
  } catch (const tonmf::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tonmf::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShape;
  } catch (const tonmf::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const tonmf::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
