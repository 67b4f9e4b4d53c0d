// Command-line front end: build or load instances, run the V / MR1 / MRR
// solvers, round, score, and emit machine-readable summaries, traces and
// benchmark tables.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bqp/graph.hpp"
#include "bqp/instances.hpp"
#include "bqp/matrix_admm.hpp"
#include "bqp/rng.hpp"
#include "bqp/rounding.hpp"
#include "bqp/vector_admm.hpp"

using json = nlohmann::json;
using namespace bqp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMaxIter = 2;

struct Instance {
  std::string id;
  std::optional<Graph> graph;
  std::optional<Partition> truth;
  std::optional<ImageFeatures> image;
  double image_c = 1.0;
  std::optional<CostMatrix> cost;
};

struct SourceFlags {
  std::string input_path;
  std::string sbm;  // "n,m,p,q"
  std::string image_path;
  std::string cost_kind;  // "", "maxcut", "community"
  double image_c = 1.0;
  double community_p = -1.0;
  double community_q = -1.0;
  std::uint64_t seed = 0;
};

struct MethodFlags {
  std::string method = "v";  // v | mr1 | mrr
  double rho0 = -1.0;        // < 0: per-method default
  double alpha = -1.0;
  double eps = -1.0;
  int max_iter = -1;
  double rho_cap = -1.0;
  int trials = 10;
  bool enforce_descent_bound = false;
  std::uint64_t seed = 0;
};

struct RunOutput {
  json summary;
  std::string trace_jsonl;
  SolveStatus status = SolveStatus::max_iter;
  double cut = 0.0;
  bool has_cut = false;
  double recovery = 0.0;
  bool has_recovery = false;
  double objective = 0.0;
  // Best feasible point known for the run: the trace incumbent or the final
  // rounding, whichever scores lower.
  double best_objective = 0.0;
  double best_cut = 0.0;
  bool has_best_cut = false;
};

SBMSpec parse_sbm_arg(const std::string& arg, std::uint64_t seed) {
  SBMSpec spec;
  spec.seed = seed;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream is(arg);
  if (!(is >> spec.n >> c1 >> spec.m >> c2 >> spec.p >> c3 >> spec.q) ||
      c1 != ',' || c2 != ',' || c3 != ',')
    throw std::invalid_argument("--sbm expects n,m,p,q (got \"" + arg + "\")");
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::invalid_argument("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance build_instance(const SourceFlags& src) {
  const int sources = (!src.input_path.empty() ? 1 : 0) +
                      (!src.sbm.empty() ? 1 : 0) +
                      (!src.image_path.empty() ? 1 : 0);
  if (sources != 1)
    throw std::invalid_argument("exactly one of --input, --sbm, --image is required");

  Instance inst;
  inst.image_c = src.image_c;
  std::string kind = src.cost_kind;

  if (!src.input_path.empty()) {
    inst.id = std::filesystem::path(src.input_path).stem().string();
    inst.graph = parse_rudy(read_file(src.input_path));
    if (kind.empty()) kind = "maxcut";
    if (kind == "maxcut") {
      inst.cost = build_maxcut_cost(*inst.graph);
    } else if (kind == "community") {
      if (src.community_p <= 0.0 || src.community_q <= 0.0)
        throw std::invalid_argument(
            "--cost community on a graph input needs --p and --q");
      inst.cost = build_community_cost(*inst.graph, src.community_p, src.community_q);
    } else {
      throw std::invalid_argument("unknown --cost \"" + kind + "\"");
    }
  } else if (!src.sbm.empty()) {
    const SBMSpec spec = parse_sbm_arg(src.sbm, src.seed);
    std::ostringstream id;
    id << "sbm-" << spec.n << "-" << spec.m << "-" << spec.p << "-" << spec.q;
    inst.id = id.str();
    SBMSample sample = sbm_generate(spec);
    inst.graph = std::move(sample.graph);
    inst.truth = std::move(sample.truth);
    if (kind.empty()) kind = "community";
    if (kind == "maxcut") {
      std::cerr << "warning: --cost maxcut on an SBM instance maximizes "
                   "disagreement with the planted communities\n";
      inst.cost = build_maxcut_cost(*inst.graph);
    } else if (kind == "community") {
      inst.cost = build_community_cost(*inst.graph, spec.p, spec.q);
    } else {
      throw std::invalid_argument("unknown --cost \"" + kind + "\"");
    }
  } else {
    inst.id = std::filesystem::path(src.image_path).stem().string();
    inst.image = load_image(src.image_path, src.image_c);
    if (kind.empty()) kind = "maxcut";
    const CostKind mode = kind == "maxcut"    ? CostKind::maxcut
                          : kind == "community" ? CostKind::community
                                                : CostKind::custom;
    if (mode == CostKind::custom)
      throw std::invalid_argument("unknown --cost \"" + kind + "\"");
    inst.cost = build_image_cost(*inst.image, src.image_c, mode);
  }
  return inst;
}

VectorConfig vector_config(const MethodFlags& mf) {
  VectorConfig cfg;
  cfg.rho0 = mf.rho0 >= 0.0 ? mf.rho0 : 0.5;
  if (mf.alpha >= 0.0) cfg.alpha = mf.alpha;
  if (mf.eps >= 0.0) cfg.eps = mf.eps;
  if (mf.max_iter >= 0) cfg.max_iter = mf.max_iter;
  if (mf.rho_cap >= 0.0) cfg.rho_cap = mf.rho_cap;
  cfg.seed = mf.seed;
  cfg.enforce_descent_bound = mf.enforce_descent_bound;
  if (cfg.enforce_descent_bound && mf.rho0 < 0.0) cfg.rho0 = 0.0;  // auto policy
  return cfg;
}

MatrixConfig matrix_config(const MethodFlags& mf) {
  MatrixConfig cfg;
  cfg.r_mode = mf.method == "mrr" ? RankMode::full : RankMode::one;
  cfg.rho0 = mf.rho0 >= 0.0 ? mf.rho0 : 0.5;
  if (mf.alpha >= 0.0) cfg.alpha = mf.alpha;
  if (mf.eps >= 0.0) cfg.eps = mf.eps;
  if (mf.max_iter >= 0) cfg.max_iter = mf.max_iter;
  if (mf.rho_cap >= 0.0) cfg.rho_cap = mf.rho_cap;
  cfg.seed = mf.seed;
  return cfg;
}

void score_partition(const Instance& inst, const Partition& p, RunOutput& out) {
  out.objective = objective(*inst.cost, p);
  if (inst.cost->kind() == CostKind::maxcut) {
    if (inst.graph) {
      out.cut = cut_value(*inst.graph, p);
      out.has_cut = true;
    } else if (inst.image) {
      out.cut = cut_value_dense(image_affinity(*inst.image, inst.image_c), p);
      out.has_cut = true;
    }
  }
  if (inst.truth) {
    out.recovery = recovery_rate(p, *inst.truth);
    out.has_recovery = true;
  }
}

void score_best(const Instance& inst, const Partition& final_p,
                const Eigen::VectorXd& incumbent, double incumbent_obj,
                RunOutput& out) {
  const bool incumbent_wins = incumbent.size() > 0 && incumbent_obj < out.objective;
  const Partition best = incumbent_wins ? Partition(incumbent) : final_p;
  out.best_objective = incumbent_wins ? incumbent_obj : out.objective;
  if (inst.cost->kind() == CostKind::maxcut) {
    if (inst.graph) {
      out.best_cut = cut_value(*inst.graph, best);
      out.has_best_cut = true;
    } else if (inst.image) {
      out.best_cut = cut_value_dense(image_affinity(*inst.image, inst.image_c), best);
      out.has_best_cut = true;
    }
  }
}

RunOutput run_method(const Instance& inst, const MethodFlags& mf) {
  using clock = std::chrono::steady_clock;
  RunOutput out;
  json& s = out.summary;
  s["method"] = mf.method;
  s["instance"] = inst.id;
  s["n"] = inst.cost->size();
  s["seed"] = mf.seed;

  if (mf.method == "v") {
    const VectorConfig cfg = vector_config(mf);
    VectorResult r = solve_vector(*inst.cost, cfg);
    out.status = r.trace.status;
    const auto t0 = clock::now();
    const Partition p = sign_round(r.state.x);
    const double round_s = std::chrono::duration<double>(clock::now() - t0).count();
    score_partition(inst, p, out);
    score_best(inst, p, r.best_rounded, r.best_rounded_objective, out);

    s["r"] = 1;
    s["iterations"] = r.trace.records.size();
    s["relaxed_objective"] =
        r.trace.records.empty() ? 0.0 : r.trace.records.back().objective;
    s["residuals"] = {
        {"primal", r.trace.records.empty() ? 0.0 : r.trace.records.back().primal_residual},
        {"dual_identity", r.trace.records.empty() ? 0.0 : r.trace.records.back().dual_residual}};
    s["rho_final"] = r.state.rho;
    s["rho_cap_hit"] = r.trace.rho_cap_hit;
    s["config"] = {{"rho0", cfg.rho0},       {"alpha", cfg.alpha},
                   {"eps", cfg.eps},         {"max_iter", cfg.max_iter},
                   {"rho_cap", cfg.rho_cap}, {"enforce_descent_bound", cfg.enforce_descent_bound}};
    s["timing_s"] = {{"setup", r.setup_seconds},
                     {"iterations", r.iter_seconds},
                     {"rounding", round_s},
                     {"total", r.setup_seconds + r.iter_seconds + round_s}};
    std::ostringstream tr;
    for (const auto& rec : r.trace.records) {
      json line = {{"k", rec.k},
                   {"objective", rec.objective},
                   {"lagrangian", rec.lagrangian},
                   {"primal_residual", rec.primal_residual},
                   {"dual_residual", rec.dual_residual},
                   {"dual_norm", rec.dual_norm},
                   {"rho", rec.rho},
                   {"best_rounded_objective", rec.best_rounded_objective}};
      tr << line.dump() << "\n";
    }
    out.trace_jsonl = tr.str();
  } else if (mf.method == "mr1" || mf.method == "mrr") {
    const MatrixConfig cfg = matrix_config(mf);
    MatrixResult r = solve_matrix(*inst.cost, cfg);
    out.status = r.trace.status;

    const auto t0 = clock::now();
    Partition p = mf.method == "mr1"
                      ? sign_round(r.state.X.col(0))
                      : randomized_round(factor_from_rect(r.state.X), *inst.cost,
                                         mf.trials, mf.seed);
    const double round_s = std::chrono::duration<double>(clock::now() - t0).count();
    score_partition(inst, p, out);
    score_best(inst, p, r.best_rounded, r.best_rounded_objective, out);

    s["r"] = r.state.X.cols();
    s["iterations"] = r.trace.records.size();
    s["relaxed_objective"] =
        r.trace.records.empty() ? 0.0 : r.trace.records.back().objective;
    s["residuals"] = {
        {"x_minus_y", r.trace.records.empty() ? 0.0 : r.trace.records.back().res_x_minus_y},
        {"z_minus_xyt", r.trace.records.empty() ? 0.0 : r.trace.records.back().res_z_minus_xyt}};
    s["rho_final"] = r.state.rho;
    s["rho_cap_hit"] = r.trace.rho_cap_hit;
    s["dual_bound_exceeded"] = r.trace.dual_bound_exceeded;
    s["config"] = {{"rho0", cfg.rho0},     {"alpha", cfg.alpha},
                   {"eps", cfg.eps},       {"max_iter", cfg.max_iter},
                   {"rho_cap", cfg.rho_cap}, {"trials", mf.trials}};
    s["timing_s"] = {{"setup", r.setup_seconds},
                     {"iterations", r.iter_seconds},
                     {"rounding", round_s},
                     {"total", r.setup_seconds + r.iter_seconds + round_s}};
    std::ostringstream tr;
    for (const auto& rec : r.trace.records) {
      json line = {{"k", rec.k},
                   {"objective", rec.objective},
                   {"lagrangian", rec.lagrangian},
                   {"res_x_minus_y", rec.res_x_minus_y},
                   {"res_z_minus_xyt", rec.res_z_minus_xyt},
                   {"dual_norm_1", rec.dual_norm_1},
                   {"dual_norm_2", rec.dual_norm_2},
                   {"rho", rec.rho},
                   {"best_rounded_objective", rec.best_rounded_objective}};
      tr << line.dump() << "\n";
    }
    out.trace_jsonl = tr.str();
  } else {
    throw std::invalid_argument("unknown --method \"" + mf.method + "\"");
  }

  s["status"] = out.status == SolveStatus::converged ? "converged" : "max_iter";
  s["objective"] = out.objective;
  s["best_objective"] = out.best_objective;
  if (out.has_cut) s["cut"] = out.cut;
  if (out.has_best_cut) s["best_cut"] = out.best_cut;
  if (out.has_recovery) s["recovery"] = out.recovery;
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::invalid_argument("cannot write \"" + path + "\"");
  outf << text;
}

int cmd_solve(const SourceFlags& src, const MethodFlags& mf,
              const std::string& out_path, const std::string& trace_path) {
  Instance inst = build_instance(src);
  RunOutput out = run_method(inst, mf);
  if (!trace_path.empty()) write_text(trace_path, out.trace_jsonl);
  const std::string summary = out.summary.dump(2) + "\n";
  if (out_path.empty())
    std::cout << summary;
  else
    write_text(out_path, summary);
  return out.status == SolveStatus::converged ? kExitOk : kExitMaxIter;
}

int cmd_oracle(const SourceFlags& src, const std::string& out_path) {
  Instance inst = build_instance(src);
  if (inst.cost->size() > 22)
    throw std::invalid_argument("oracle: n > 22 is not enumerable at desk scale");
  BruteForceResult r = brute_force(*inst.cost);
  json s;
  s["instance"] = inst.id;
  s["n"] = inst.cost->size();
  s["optimal_value"] = r.value;
  std::vector<int> signs(static_cast<std::size_t>(r.minimizer.size()));
  for (Eigen::Index i = 0; i < r.minimizer.size(); ++i)
    signs[static_cast<std::size_t>(i)] = r.minimizer[i] > 0 ? 1 : -1;
  s["minimizer"] = signs;
  if (inst.cost->kind() == CostKind::maxcut && inst.graph)
    s["cut"] = cut_value(*inst.graph, r.minimizer);
  if (inst.truth) s["recovery"] = recovery_rate(r.minimizer, *inst.truth);
  const std::string text = s.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchRun {
  std::string instance_id;
  std::string method;  // v | mr1 | mrr | r (baseline)
  std::uint64_t seed = 0;
  MethodFlags flags;
  std::size_t instance_index = 0;
};

struct BenchRow {
  std::string instance;
  std::string method;
  std::string seed;
  long long n = 0;
  long long r = 0;
  std::string status;
  long long iterations = 0;
  double objective = 0.0;
  std::optional<double> cut;
  std::optional<double> recovery;
  double best_objective = 0.0;
  std::optional<double> best_cut;
  std::optional<double> res_primal;
  std::optional<double> res_secondary;
  std::optional<double> rho_final;
  double setup_s = 0.0, iter_s = 0.0, round_s = 0.0, total_s = 0.0;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::string csv_row(const BenchRow& row) {
  std::ostringstream os;
  os << row.instance << "," << row.method << "," << row.seed << "," << row.n << ","
     << row.r << "," << row.status << "," << row.iterations << ","
     << fmt(row.objective) << "," << fmt_opt(row.cut) << ","
     << fmt_opt(row.recovery) << "," << fmt(row.best_objective) << ","
     << fmt_opt(row.best_cut) << "," << fmt_opt(row.res_primal) << ","
     << fmt_opt(row.res_secondary) << "," << fmt_opt(row.rho_final) << ","
     << fmt(row.setup_s) << "," << fmt(row.iter_s) << "," << fmt(row.round_s)
     << "," << fmt(row.total_s);
  return os.str();
}

MethodFlags flags_from_json(const json& config, const std::string& method,
                            std::uint64_t seed) {
  MethodFlags mf;
  mf.method = method;
  mf.seed = seed;
  if (config.contains("rho0")) mf.rho0 = config["rho0"].get<double>();
  if (config.contains("alpha")) mf.alpha = config["alpha"].get<double>();
  if (config.contains("eps")) mf.eps = config["eps"].get<double>();
  if (config.contains("max_iter")) mf.max_iter = config["max_iter"].get<int>();
  if (config.contains("rho_cap")) mf.rho_cap = config["rho_cap"].get<double>();
  if (config.contains("trials")) mf.trials = config["trials"].get<int>();
  if (config.contains("enforce_descent_bound"))
    mf.enforce_descent_bound = config["enforce_descent_bound"].get<bool>();
  return mf;
}

// Best of `guesses` uniform sign vectors, seeded.
BenchRow baseline_row(const Instance& inst, int guesses, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = inst.cost->size();
  double best_obj = 0.0;
  bool first = true;
  Eigen::VectorXd best;
  for (int t = 0; t < guesses; ++t) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double obj = x.dot(inst.cost->matrix() * x);
    if (first || obj < best_obj) {
      best_obj = obj;
      best = x;
      first = false;
    }
  }
  RunOutput scored;
  score_partition(inst, Partition(best), scored);
  BenchRow row;
  row.instance = inst.id;
  row.method = "r";
  row.seed = std::to_string(seed);
  row.n = n;
  row.r = 0;
  row.status = "baseline";
  row.iterations = guesses;
  row.objective = scored.objective;
  if (scored.has_cut) row.cut = scored.cut;
  if (scored.has_recovery) row.recovery = scored.recovery;
  row.best_objective = scored.objective;
  if (scored.has_cut) row.best_cut = scored.cut;
  return row;
}

BenchRow row_from_output(const Instance& inst, const BenchRun& run,
                         const RunOutput& out) {
  BenchRow row;
  row.instance = inst.id;
  row.method = run.method;
  row.seed = std::to_string(run.seed);
  row.n = out.summary["n"].get<long long>();
  row.r = out.summary["r"].get<long long>();
  row.status = out.summary["status"].get<std::string>();
  row.iterations = out.summary["iterations"].get<long long>();
  row.objective = out.objective;
  if (out.has_cut) row.cut = out.cut;
  if (out.has_recovery) row.recovery = out.recovery;
  row.best_objective = out.best_objective;
  if (out.has_best_cut) row.best_cut = out.best_cut;
  const json& res = out.summary["residuals"];
  if (res.contains("primal")) {
    row.res_primal = res["primal"].get<double>();
    row.res_secondary = res["dual_identity"].get<double>();
  } else {
    row.res_primal = res["x_minus_y"].get<double>();
    row.res_secondary = res["z_minus_xyt"].get<double>();
  }
  row.rho_final = out.summary["rho_final"].get<double>();
  const json& t = out.summary["timing_s"];
  row.setup_s = t["setup"].get<double>();
  row.iter_s = t["iterations"].get<double>();
  row.round_s = t["rounding"].get<double>();
  row.total_s = t["total"].get<double>();
  return row;
}

int cmd_bench(const std::string& manifest_path, const std::string& out_path,
              int workers) {
  const json manifest = json::parse(read_file(manifest_path));
  const auto base_dir = std::filesystem::path(manifest_path).parent_path();
  const int guesses = manifest.value("baseline_guesses", 1000);
  const std::uint64_t baseline_seed = manifest.value("baseline_seed", 12345);

  // Instances load up front (shared, read-only across workers).
  std::vector<Instance> instances;
  std::vector<BenchRun> runs;
  for (const json& jinst : manifest.at("instances")) {
    SourceFlags src;
    if (jinst.contains("path"))
      src.input_path = (base_dir / jinst["path"].get<std::string>()).string();
    if (jinst.contains("sbm")) src.sbm = jinst["sbm"].get<std::string>();
    if (jinst.contains("image"))
      src.image_path = (base_dir / jinst["image"].get<std::string>()).string();
    if (jinst.contains("image_c")) src.image_c = jinst["image_c"].get<double>();
    if (jinst.contains("cost")) src.cost_kind = jinst["cost"].get<std::string>();
    if (jinst.contains("p")) src.community_p = jinst["p"].get<double>();
    if (jinst.contains("q")) src.community_q = jinst["q"].get<double>();
    if (jinst.contains("seed")) src.seed = jinst["seed"].get<std::uint64_t>();
    Instance inst = build_instance(src);
    if (jinst.contains("id")) inst.id = jinst["id"].get<std::string>();
    instances.push_back(std::move(inst));

    for (const json& jrun : jinst.at("runs")) {
      const std::string method = jrun.at("method").get<std::string>();
      const json config = jrun.value("config", json::object());
      for (const json& jseed : jrun.at("seeds")) {
        BenchRun run;
        run.instance_id = instances.back().id;
        run.method = method;
        run.seed = jseed.get<std::uint64_t>();
        run.flags = flags_from_json(config, method, run.seed);
        run.instance_index = instances.size() - 1;
        runs.push_back(std::move(run));
      }
    }
  }

  // Solve runs in parallel; rows land in a fixed slot each, so the output
  // order is the manifest order no matter the worker count.
  std::vector<BenchRow> rows(runs.size());
  std::vector<std::string> errors;
  std::mutex err_mu;
  std::atomic<std::size_t> next{0};
  const int nworkers = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < nworkers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= runs.size()) return;
        try {
          const RunOutput out = run_method(instances[runs[i].instance_index],
                                           runs[i].flags);
          rows[i] = row_from_output(instances[runs[i].instance_index], runs[i], out);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mu);
          errors.push_back(runs[i].instance_id + "/" + runs[i].method + ": " + e.what());
        }
      }
    });
  for (auto& th : pool) th.join();
  if (!errors.empty()) {
    for (const std::string& e : errors) std::cerr << "bench error: " << e << "\n";
    return kExitInputError;
  }

  std::ostringstream csv;
  csv << "instance,method,seed,n,r,status,iterations,objective,cut,recovery,"
         "best_objective,best_cut,res_primal,res_secondary,rho_final,"
         "setup_s,iter_s,round_s,total_s\n";
  for (const BenchRow& row : rows) csv << csv_row(row) << "\n";

  // Random baseline, one row per instance.
  for (const Instance& inst : instances)
    csv << csv_row(baseline_row(inst, guesses, baseline_seed)) << "\n";

  // Best-over-seeds aggregate per (instance, method): max cut when a cut is
  // reported, otherwise min objective.
  for (std::size_t ii = 0; ii < instances.size(); ++ii) {
    std::vector<std::string> methods;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].instance_index != ii) continue;
      if (std::find(methods.begin(), methods.end(), runs[i].method) == methods.end())
        methods.push_back(runs[i].method);
    }
    for (const std::string& method : methods) {
      const BenchRow* best = nullptr;
      for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].instance_index != ii || runs[i].method != method) continue;
        const BenchRow& row = rows[i];
        if (best == nullptr) {
          best = &row;
        } else if (row.best_cut && best->best_cut
                       ? *row.best_cut > *best->best_cut
                       : row.best_objective < best->best_objective) {
          best = &row;
        }
      }
      if (best != nullptr) {
        BenchRow agg = *best;
        agg.seed = "best";
        csv << csv_row(agg) << "\n";
      }
    }
  }

  if (out_path.empty())
    std::cout << csv.str();
  else
    write_text(out_path, csv.str());
  return kExitOk;
}

int cmd_gen(const std::string& family, int side, const std::string& weights,
            std::uint64_t seed, double scale, const std::string& out_path) {
  if (family != "torus3")
    throw std::invalid_argument("unknown --family \"" + family + "\" (have: torus3)");
  const TorusWeights kind = weights == "pm"      ? TorusWeights::pm_one
                            : weights == "gauss" ? TorusWeights::gaussian
                                                 : throw std::invalid_argument(
                                                       "--weights must be pm or gauss");
  const Graph g = generate_torus3(side, kind, seed, scale);
  const std::string text = serialize_rudy(g);
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for binary quadratic graph problems (MAX-CUT, "
               "2-community detection, image segmentation)"};
  app.require_subcommand(1);

  SourceFlags src;
  MethodFlags mf;
  std::string out_path, trace_path;

  auto add_source_flags = [&](CLI::App* cmd) {
    cmd->add_option("--input", src.input_path, "rudy graph file");
    cmd->add_option("--sbm", src.sbm, "stochastic block model n,m,p,q");
    cmd->add_option("--image", src.image_path, "PGM/PPM image file");
    cmd->add_option("--cost", src.cost_kind, "maxcut | community");
    cmd->add_option("--image-c", src.image_c, "position feature weight for images");
    cmd->add_option("--p", src.community_p, "community-cost p for graph inputs");
    cmd->add_option("--q", src.community_q, "community-cost q for graph inputs");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one solver on one instance");
  add_source_flags(solve);
  solve->add_option("--method", mf.method, "v | mr1 | mrr")->required();
  solve->add_option("--rho0", mf.rho0, "initial penalty weight");
  solve->add_option("--alpha", mf.alpha, "penalty growth factor");
  solve->add_option("--eps", mf.eps, "stopping tolerance");
  solve->add_option("--max-iter", mf.max_iter, "iteration cap");
  solve->add_option("--rho-cap", mf.rho_cap, "penalty ceiling");
  solve->add_option("--seed", mf.seed, "seed for init, generation, rounding");
  solve->add_option("--trials", mf.trials, "hyperplane rounding trials (mrr)");
  solve->add_flag("--enforce-descent-bound", mf.enforce_descent_bound,
                  "validate rho0 against the descent conditions (v)");
  solve->add_option("--out", out_path, "summary JSON path (default: stdout)");
  solve->add_option("--trace", trace_path, "per-iteration JSON-lines path");

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by enumeration (n <= 22)");
  add_source_flags(oracle);
  oracle->add_option("--seed", mf.seed, "generation seed for --sbm");
  oracle->add_option("--out", out_path, "result JSON path (default: stdout)");

  std::string manifest_path;
  int workers = 1;
  CLI::App* bench = app.add_subcommand("bench", "run a manifest of instances to CSV");
  bench->add_option("--manifest", manifest_path, "bench manifest JSON")->required();
  bench->add_option("--out", out_path, "CSV path (default: stdout)");
  bench->add_option("--workers", workers, "parallel worker threads");

  std::string family = "torus3", weights = "pm";
  int side = 8;
  std::uint64_t gen_seed = 0;
  double scale = 1e5;
  CLI::App* gen = app.add_subcommand("gen", "generate benchmark instances");
  gen->add_option("--family", family, "instance family (torus3)");
  gen->add_option("--side", side, "torus side length");
  gen->add_option("--weights", weights, "pm | gauss");
  gen->add_option("--seed", gen_seed, "generation seed");
  gen->add_option("--scale", scale, "gaussian weight scale");
  gen->add_option("--out", out_path, "output rudy path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitInputError;
  }

  try {
    if (solve->parsed()) {
      src.seed = mf.seed;
      return cmd_solve(src, mf, out_path, trace_path);
    }
    if (oracle->parsed()) {
      src.seed = mf.seed;
      return cmd_oracle(src, out_path);
    }
    if (bench->parsed()) return cmd_bench(manifest_path, out_path, workers);
    if (gen->parsed()) return cmd_gen(family, side, weights, gen_seed, scale, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
