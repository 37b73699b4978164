#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "tcboost/booster.hpp"
#include "tcboost/cascade.hpp"
#include "tcboost/datasets.hpp"
#include "tcboost/model_io.hpp"
#include "tcboost/postprocess.hpp"
#include "tcboost/reports.hpp"
#include "tcboost/rng.hpp"
#include "tcboost/simplex_qp.hpp"

namespace {

using json = nlohmann::json;
using namespace tcboost;

Dataset::Mode parse_mode(const std::string& mode) {
  if (mode == "vector") return Dataset::Mode::vectors;
  if (mode == "image") return Dataset::Mode::images;
  throw std::runtime_error("unknown --mode '" + mode + "' (vector|image)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stoi(token));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
  return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  writer(out);
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- train ---

struct TrainOptions {
  std::string data_path;
  std::string mode = "vector";
  std::string method;
  std::string out_path = "model.json";
  std::string trace_path;
  std::string node_report_path;
  double theta = 0.1;
  double epsilon = 1e-5;
  int n_max = 200;
  double delta = 1e-6;
  bool q_exact = false;
  double feature_fraction = 1.0;
  double k_asym = 4.0;
  double shrinkage = 1e-3;
  std::uint64_t seed = 0;
  int threads = 1;
  double eg_tolerance = 1e-7;
  int eg_max_iters = 10000;
  double eg_step_multiplier = 1.0;
  double d_target = 0.997;
  bool use_d_target = false;
  // cascade
  bool cascade = false;
  std::string exits_text;
  int exits_count = 0;
  std::string neg_pool_path;
  std::int64_t neg_quota = 0;
  double f_target = 0.5;
  int min_weak_for_lac = default_min_weak_for_lac;
  bool theta_grid = false;
};

BoostConfig boost_config_of(const TrainOptions& opt) {
  BoostConfig config;
  config.theta = opt.theta;
  config.epsilon = opt.epsilon;
  config.n_max = opt.n_max;
  config.delta = opt.delta;
  config.q_exact = opt.q_exact;
  config.feature_fraction = opt.feature_fraction;
  config.seed = opt.seed;
  config.k_asym = opt.k_asym;
  config.threads = opt.threads;
  config.eg.tolerance = opt.eg_tolerance;
  config.eg.max_iters = opt.eg_max_iters;
  config.eg.step_multiplier = opt.eg_step_multiplier;
  return config;
}

json config_echo_json(const TrainOptions& opt) {
  json j;
  j["method"] = opt.method;
  j["data"] = opt.data_path;
  j["mode"] = opt.mode;
  j["theta"] = opt.theta;
  j["epsilon"] = opt.epsilon;
  j["n_max"] = opt.n_max;
  j["delta"] = opt.delta;
  j["q_exact"] = opt.q_exact;
  j["feature_fraction"] = opt.feature_fraction;
  j["k_asym"] = opt.k_asym;
  j["shrinkage"] = opt.shrinkage;
  j["seed"] = opt.seed;
  j["threads"] = opt.threads;
  j["eg_tolerance"] = opt.eg_tolerance;
  j["eg_max_iters"] = opt.eg_max_iters;
  j["eg_step_multiplier"] = opt.eg_step_multiplier;
  if (opt.use_d_target || opt.cascade) j["d_target"] = opt.d_target;
  if (opt.cascade) {
    j["cascade"] = true;
    j["f_target"] = opt.f_target;
    j["neg_pool"] = opt.neg_pool_path;
    j["neg_quota"] = opt.neg_quota;
    j["min_weak_for_lac"] = opt.min_weak_for_lac;
  }
  return j;
}

std::string one_line(const json& j) {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!out.empty()) out += ' ';
    out += it.key() + '=' + (it->is_string() ? it->get<std::string>() : it->dump());
  }
  return out;
}

std::vector<int> exit_schedule_of(const TrainOptions& opt) {
  if (!opt.exits_text.empty()) return parse_int_list(opt.exits_text);
  const int count = opt.exits_count > 0 ? opt.exits_count : 5;
  std::vector<int> schedule;
  int prefix = 7;
  for (int t = 0; t < count; ++t) {
    schedule.push_back(std::min(prefix, opt.n_max));
    prefix *= 2;
  }
  // De-duplicate after the n_max clamp.
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
  return schedule;
}

int run_train(const TrainOptions& opt) {
  const Dataset::Mode mode = parse_mode(opt.mode);
  const Dataset data = load_dataset(opt.data_path, mode);
  const BoostConfig boost = boost_config_of(opt);
  const json config_echo = config_echo_json(opt);

  ModelFile model;
  model.method = opt.method;
  model.config = config_echo;
  model.space = feature_space_of(data);

  if (opt.cascade) {
    if (opt.neg_pool_path.empty()) throw std::runtime_error("--cascade requires --neg-pool");
    const Dataset pool = load_dataset(opt.neg_pool_path, mode);
    CascadeConfig config;
    config.exit_schedule = exit_schedule_of(opt);
    config.goals.d_target = opt.d_target;
    config.goals.f_target = opt.f_target;
    config.min_weak_for_lac = opt.min_weak_for_lac;
    config.neg_quota = static_cast<Index>(opt.neg_quota);
    config.shrinkage = opt.shrinkage;
    config.boost = boost;
    const CascadeMethod method = cascade_method_from_string(opt.method);

    if (opt.theta_grid) {
      CascadeConfig short_config = config;
      const std::size_t half = (config.exit_schedule.size() + 1) / 2;
      short_config.exit_schedule.assign(config.exit_schedule.begin(),
                                        config.exit_schedule.begin() + static_cast<std::ptrdiff_t>(half));
      const double best = theta_grid_search(data, pool, short_config, method, default_theta_grid());
      std::cout << "theta grid search selected theta = " << best << '\n';
      config.boost.theta = best;
      model.config["theta"] = best;
      model.config["theta_grid"] = true;
    }

    CascadeTrainReport report;
    const auto start = std::chrono::steady_clock::now();
    model.cascade = train_cascade(data, pool, config, method, &report);
    model.is_cascade = true;
    std::cout << "trained " << model.cascade.exits.size() << " exits, " << model.cascade.stumps.size()
              << " weak classifiers in " << elapsed_seconds(start) << " s\n";
    save_model(opt.out_path, model);
    if (!opt.trace_path.empty()) {
      write_file(opt.trace_path, [&](std::ostream& out) { write_trace_csv(out, report.trace, one_line(config_echo)); });
    }
    if (!opt.node_report_path.empty()) {
      NodeReport node_report;
      for (const ExitTrainInfo& info : report.exits) {
        NodeReport::Node node;
        node.exit_index = info.exit_index;
        node.prefix = info.prefix;
        node.d = info.d_train;
        node.f = info.f_train;
        node_report.f_dr *= node.d;
        node_report.f_fp *= node.f;
        node_report.nodes.push_back(node);
      }
      write_file(opt.node_report_path,
                 [&](std::ostream& out) { write_node_report_csv(out, node_report, one_line(config_echo)); });
    }
    return 0;
  }

  // Single strong classifier.
  TrainResult result;
  const auto start = std::chrono::steady_clock::now();
  if (opt.method == "fisherboost" || opt.method == "lacboost") {
    const BoostMode bm = opt.method == "fisherboost" ? BoostMode::fisher : BoostMode::lac;
    result = train_totally_corrective(data, boost, bm);
  } else if (opt.method == "adaboost") {
    result = train_adaboost(data, boost);
  } else if (opt.method == "asymboost") {
    result = train_asymboost(data, boost, opt.k_asym);
  } else if (opt.method == "ada+lac" || opt.method == "ada+lda" || opt.method == "asym+lac" ||
             opt.method == "asym+lda") {
    const bool asym = opt.method.rfind("asym", 0) == 0;
    const bool lac = opt.method.substr(opt.method.size() - 3) == "lac";
    result = asym ? train_asymboost(data, boost, opt.k_asym) : train_adaboost(data, boost);
    const Index n = static_cast<Index>(result.classifier.stumps.size());
    if (n < default_min_weak_for_lac) {
      std::cerr << "tcboost: warning: recalibrating " << n << " weak classifiers; below "
                << default_min_weak_for_lac << " the Gaussian-margin assumption is weak\n";
    }
    MatrixXd h(data.size(), n);
    for (Index j = 0; j < n; ++j) {
      h.col(j) = stump_responses(result.classifier.stumps[static_cast<std::size_t>(j)], data);
    }
    const ClassStats stats = estimate_stats(h, data.labels(), opt.shrinkage);
    const LinearWeights lw = lac ? lac_weights(stats) : lda_weights(stats);
    if (lw.degenerate) std::cerr << "tcboost: warning: degenerate recalibration direction (mu1 == mu2)\n";
    result.classifier.weights = lw.w;
    result.classifier.offset = lw.b;
    result.classifier.postprocess = lac ? "lac" : "lda";
  } else {
    cascade_method_from_string(opt.method);  // throws with the valid-method list
  }
  if (opt.use_d_target) {
    StrongClassifier unshifted = result.classifier;
    unshifted.offset = 0.0;
    const VectorXd scores = decision_scores(unshifted, data);
    bool flagged = false;
    result.classifier.offset = offset_line_search(scores, data.labels(), opt.d_target, &flagged);
    if (flagged) std::cerr << "tcboost: warning: d_target " << opt.d_target << " not attainable cleanly\n";
  }
  std::cout << "trained " << result.classifier.stumps.size() << " weak classifiers in " << elapsed_seconds(start)
            << " s\n";

  model.strong = result.classifier;
  model.is_cascade = false;
  save_model(opt.out_path, model);
  if (!opt.trace_path.empty()) {
    write_file(opt.trace_path, [&](std::ostream& out) { write_trace_csv(out, result.trace, one_line(config_echo)); });
  }
  return 0;
}

// ----------------------------------------------------------------- eval ---

int run_eval(const std::string& model_path, const std::string& data_path, const std::string& mode_text,
             const std::string& report_path, const std::string& roc_path) {
  const ModelFile model = load_model(model_path);
  const Dataset data = load_dataset(data_path, parse_mode(mode_text));
  check_feature_space(model.space, data);
  const MultiExitCascade cascade = model.is_cascade ? model.cascade : as_cascade(model.strong);
  const CascadeEvaluation evaluation = evaluate_cascade(cascade, data);

  const std::string echo = "model=" + model_path + " data=" + data_path;
  std::cout << "exits=" << evaluation.report.nodes.size() << " F_dr=" << evaluation.report.f_dr
            << " F_fp=" << evaluation.report.f_fp << '\n';
  if (!report_path.empty()) {
    write_file(report_path, [&](std::ostream& out) { write_node_report_csv(out, evaluation.report, echo); });
  }
  if (!roc_path.empty()) {
    write_file(roc_path, [&](std::ostream& out) { write_roc_csv(out, evaluation.roc, echo); });
  }
  return 0;
}

// ---------------------------------------------------------- bench-solver ---

SimplexQp make_bench_qp(int n, std::uint64_t seed) {
  // A synthetic restricted master problem with the same structure training
  // produces: A = y h with +-1 stump outputs, Q the diagonal Fisher
  // approximation, c = theta (e'A)'.
  const int m = 4 * n;
  const int m1 = m / 2;
  Rng rng(seed, "bench");
  VectorXi labels(m);
  for (int i = 0; i < m; ++i) labels[i] = i < m1 ? +1 : -1;
  MatrixXd a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.bernoulli(0.5) ? 1.0 : -1.0;
  }
  const ClassVector cv = make_class_vector(labels);
  const QMatrix q = build_q(BoostMode::fisher, m1, m - m1, false);
  return assemble_qp(a, q, cv.e, 0.1);
}

int run_bench(int n, double tolerance, std::uint64_t seed, const std::string& out_path) {
  const SimplexQp qp = make_bench_qp(n, seed);

  EgOptions eg_opts;
  eg_opts.tolerance = tolerance;
  eg_opts.max_iters = 200000;
  auto start = std::chrono::steady_clock::now();
  const EgResult eg = eg_solve(qp, eg_opts);
  const double eg_seconds = elapsed_seconds(start);

  ReferenceOptions ref_opts;
  ref_opts.stationarity_tol = tolerance;
  start = std::chrono::steady_clock::now();
  const ReferenceResult ref = reference_solve(qp, ref_opts);
  const double ref_seconds = elapsed_seconds(start);

  const double gap = std::abs(eg.f - ref.f);
  const double ratio = eg_seconds > 0.0 ? ref_seconds / eg_seconds : 0.0;
  std::cout << "n=" << n << " tolerance=" << tolerance << " seed=" << seed << '\n';
  std::cout << "solver,seconds,objective,iterations,converged\n";
  std::cout << "eg," << eg_seconds << ',' << format_double(eg.f) << ',' << eg.iterations << ','
            << (eg.converged ? "yes" : "no") << '\n';
  std::cout << "reference," << ref_seconds << ',' << format_double(ref.f) << ',' << ref.iterations << ','
            << (ref.converged ? "yes" : "no") << '\n';
  std::cout << "objective_gap=" << format_double(gap) << " speed_ratio=" << ratio << '\n';

  if (!out_path.empty()) {
    write_file(out_path, [&](std::ostream& out) {
      out << "# n=" << n << " tolerance=" << tolerance << " seed=" << seed << '\n';
      out << "solver,seconds,objective,iterations,converged,objective_gap,speed_ratio\n";
      out << "eg," << eg_seconds << ',' << format_double(eg.f) << ',' << eg.iterations << ','
          << (eg.converged ? "yes" : "no") << ',' << format_double(gap) << ',' << ratio << '\n';
      out << "reference," << ref_seconds << ',' << format_double(ref.f) << ',' << ref.iterations << ','
          << (ref.converged ? "yes" : "no") << ',' << format_double(gap) << ',' << ratio << '\n';
    });
  }
  return 0;
}

// -------------------------------------------------------------- diagnose ---

int run_diagnose(const std::string& model_path, const std::string& data_path, const std::string& mode_text,
                 const std::string& out_path) {
  const ModelFile model = load_model(model_path);
  const Dataset data = load_dataset(data_path, parse_mode(mode_text));
  check_feature_space(model.space, data);
  const MultiExitCascade cascade = model.is_cascade ? model.cascade : as_cascade(model.strong);

  std::vector<Index> alive;
  for (Index i = 0; i < data.size(); ++i) {
    if (data.labels()[i] == 1) alive.push_back(i);
  }

  std::vector<ExitNormality> blocks;
  for (std::size_t t = 0; t < cascade.exits.size(); ++t) {
    const auto& exit = cascade.exits[t];
    ExitNormality block;
    block.exit_index = static_cast<int>(t);
    block.prefix = exit.prefix;
    // Margins of the positives surviving to this exit, offset excluded.
    VectorXd margins(static_cast<Index>(alive.size()));
    std::vector<Index> next;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      double raw = 0.0;
      for (int j = 0; j < exit.prefix; ++j) {
        const Stump& stump = cascade.stumps[static_cast<std::size_t>(j)];
        raw += exit.weights[j] * stump.predict(data.feature_value(alive[i], stump.feature));
      }
      margins[static_cast<Index>(i)] = raw;
      if (raw - exit.offset >= 0.0) next.push_back(alive[i]);
    }
    if (margins.size() < 8) {
      block.too_few = true;
    } else {
      block.result = normality_diagnostic(margins);
    }
    blocks.push_back(std::move(block));
    alive = std::move(next);
  }

  const std::string echo = "model=" + model_path + " data=" + data_path;
  if (out_path.empty()) {
    write_normality_csv(std::cout, blocks, echo);
  } else {
    write_file(out_path, [&](std::ostream& out) { write_normality_csv(out, blocks, echo); });
  }
  return 0;
}

// -------------------------------------------------------------- gen-data ---

int run_gen_data(const std::string& kind, const std::string& out_path, int m1, int m2, std::uint64_t seed,
                 int nodes, double d_value, double f_value, const std::string& d_list, const std::string& f_list,
                 std::int64_t n_pos, std::int64_t n_neg) {
  json meta;
  meta["kind"] = kind;
  meta["seed"] = seed;
  if (kind == "toy2d") {
    const Dataset data = gen_toy_2d(m1, m2, seed);
    save_dataset(data, out_path);
    meta["m1"] = m1;
    meta["m2"] = m2;
  } else if (kind == "node-stream") {
    std::vector<double> d_probs = d_list.empty() ? std::vector<double>(static_cast<std::size_t>(nodes), d_value)
                                                 : parse_double_list(d_list);
    std::vector<double> f_probs = f_list.empty() ? std::vector<double>(static_cast<std::size_t>(nodes), f_value)
                                                 : parse_double_list(f_list);
    const NodeStream stream = gen_node_stream(d_probs, f_probs, n_pos, n_neg, seed);
    write_file(out_path, [&](std::ostream& out) {
      out << "node,pos_in,pos_out,neg_in,neg_out\n";
      for (const NodeStreamRow& row : stream.rows) {
        out << row.node << ',' << row.pos_in << ',' << row.pos_out << ',' << row.neg_in << ',' << row.neg_out << '\n';
      }
    });
    std::cout << "empirical F_dr=" << stream.empirical_f_dr << " F_fp=" << stream.empirical_f_fp << '\n';
    meta["nodes"] = d_probs.size();
    meta["n_pos"] = n_pos;
    meta["n_neg"] = n_neg;
    meta["empirical_f_dr"] = stream.empirical_f_dr;
    meta["empirical_f_fp"] = stream.empirical_f_fp;
  } else {
    throw std::runtime_error("unknown --kind '" + kind + "' (toy2d|node-stream)");
  }
  write_file(out_path + ".meta.json", [&](std::ostream& out) { out << meta.dump(1) << '\n'; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"totally-corrective boosting and cascade training toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from an INI file (flags take precedence)");

  TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "train a strong classifier or multi-exit cascade");
  train->add_option("--data", train_opt.data_path, "dataset (CSV, or PGM directory in image mode)")->required();
  train->add_option("--mode", train_opt.mode, "vector|image");
  train->add_option("--method", train_opt.method,
                    "fisherboost|lacboost|adaboost|asymboost|ada+lac|ada+lda|asym+lac|asym+lda")
      ->required();
  train->add_option("--out", train_opt.out_path, "model file to write");
  train->add_option("--trace", train_opt.trace_path, "per-iteration trace CSV");
  train->add_option("--node-report", train_opt.node_report_path, "per-exit training report CSV");
  train->add_option("--theta", train_opt.theta, "asymmetry/regularization parameter");
  train->add_option("--epsilon", train_opt.epsilon, "column-generation termination threshold");
  train->add_option("--nmax", train_opt.n_max, "maximum weak classifiers");
  train->add_option("--delta", train_opt.delta, "Q regularization");
  train->add_flag("--q-exact", train_opt.q_exact, "exact block Q instead of the diagonal approximation");
  train->add_option("--feature-fraction", train_opt.feature_fraction, "fraction of features sampled for stumps");
  train->add_option("--k-asym", train_opt.k_asym, "AsymBoost asymmetry factor");
  train->add_option("--shrinkage", train_opt.shrinkage, "covariance shrinkage for lac/lda recalibration");
  train->add_option("--seed", train_opt.seed, "master random seed");
  train->add_option("--threads", train_opt.threads, "stump-search workers (0 = hardware)");
  train->add_option("--eg-tolerance", train_opt.eg_tolerance, "EG convergence tolerance");
  train->add_option("--eg-max-iters", train_opt.eg_max_iters, "EG iteration cap");
  train->add_option("--eg-step-multiplier", train_opt.eg_step_multiplier, "EG step-size multiplier");
  auto* dt = train->add_option("--d-target", train_opt.d_target, "detection-rate target for the offset line search");
  train->add_flag("--cascade", train_opt.cascade, "train a multi-exit cascade");
  train->add_option("--exits", train_opt.exits_text, "explicit exit schedule, e.g. 7,14,28");
  train->add_option("--exits-count", train_opt.exits_count, "number of exits (doubling schedule from 7)");
  train->add_option("--neg-pool", train_opt.neg_pool_path, "negative pool dataset for bootstrapping");
  train->add_option("--neg-quota", train_opt.neg_quota, "negatives per exit (0 = whole pool)");
  train->add_option("--f-target", train_opt.f_target, "per-exit false-positive goal (reporting)");
  train->add_option("--min-weak-for-lac", train_opt.min_weak_for_lac,
                    "skip LAC/LDA weighting below this many weak classifiers");
  train->add_flag("--theta-grid", train_opt.theta_grid, "pick theta by grid search on a short cascade");

  std::string eval_model, eval_data, eval_mode = "vector", eval_report, eval_roc;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a model: node report and ROC");
  eval->add_option("--model", eval_model)->required();
  eval->add_option("--data", eval_data)->required();
  eval->add_option("--mode", eval_mode, "vector|image");
  eval->add_option("--report", eval_report, "node report CSV");
  eval->add_option("--roc", eval_roc, "ROC CSV");

  int bench_n = 1000;
  double bench_tol = 1e-7;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench-solver", "time EG against the reference QP solver");
  bench->add_option("--n", bench_n, "QP size");
  bench->add_option("--tolerance", bench_tol, "tolerance for both solvers");
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out", bench_out, "timing CSV");

  std::string diag_model, diag_data, diag_mode = "vector", diag_out;
  CLI::App* diagnose = app.add_subcommand("diagnose", "normal-probability diagnostics of positive margins per exit");
  diagnose->add_option("--model", diag_model)->required();
  diagnose->add_option("--data", diag_data)->required();
  diagnose->add_option("--mode", diag_mode, "vector|image");
  diagnose->add_option("--out", diag_out, "normality CSV (stdout when omitted)");

  std::string gen_kind = "toy2d", gen_out;
  int gen_m1 = 500, gen_m2 = 5000, gen_nodes = 20;
  std::uint64_t gen_seed = 0;
  double gen_d = 0.997, gen_f = 0.5;
  std::string gen_d_list, gen_f_list;
  std::int64_t gen_pos = 1000000, gen_neg = 10000000;
  CLI::App* gen = app.add_subcommand("gen-data", "generate synthetic datasets and node streams");
  gen->add_option("--kind", gen_kind, "toy2d|node-stream");
  gen->add_option("--out", gen_out)->required();
  gen->add_option("--m1", gen_m1, "toy2d positives");
  gen->add_option("--m2", gen_m2, "toy2d negatives");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--nodes", gen_nodes, "node-stream node count");
  gen->add_option("--d", gen_d, "node-stream per-node detection rate");
  gen->add_option("--f", gen_f, "node-stream per-node false-positive rate");
  gen->add_option("--d-list", gen_d_list, "explicit per-node d values, comma separated");
  gen->add_option("--f-list", gen_f_list, "explicit per-node f values, comma separated");
  gen->add_option("--pos", gen_pos, "node-stream positive sample count");
  gen->add_option("--neg", gen_neg, "node-stream negative sample count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      train_opt.use_d_target = dt->count() > 0;
      return run_train(train_opt);
    }
    if (eval->parsed()) return run_eval(eval_model, eval_data, eval_mode, eval_report, eval_roc);
    if (bench->parsed()) return run_bench(bench_n, bench_tol, bench_seed, bench_out);
    if (diagnose->parsed()) return run_diagnose(diag_model, diag_data, diag_mode, diag_out);
    if (gen->parsed()) {
      return run_gen_data(gen_kind, gen_out, gen_m1, gen_m2, gen_seed, gen_nodes, gen_d, gen_f, gen_d_list,
                          gen_f_list, gen_pos, gen_neg);
    }
  } catch (const std::exception& err) {
    std::cerr << "tcboost: error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
