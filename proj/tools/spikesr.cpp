// spikesr: command-line front end for recovery, sweeps, worst-case
// perturbations and decimation reports.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "run_config.hpp"
#include "spikesr/decimation.hpp"
#include "spikesr/error.hpp"
#include "spikesr/experiments.hpp"
#include "spikesr/json_io.hpp"
#include "spikesr/matrix_pencil.hpp"
#include "spikesr/rng.hpp"
#include "spikesr/worstcase.hpp"

namespace {

using namespace spikesr;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kParse = 2, kEstimator = 3, kFit = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument: return kParse;
    case ErrorKind::DegenerateFit:
    case ErrorKind::InsufficientData: return kFit;
    default: return kEstimator;
  }
}

// Options of one subcommand, remembered in declaration order so the resolved
// values can be echoed into the output metadata.
class Recorder {
 public:
  explicit Recorder(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* add(const std::string& name, T& value, const std::string& help) {
    entries_.emplace_back(name, [&value] { return text(value); });
    return app_->add_option("--" + name, value, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  Metadata metadata() const {
    Metadata meta{{"tool", std::string("spikesr ") + kVersion}, {"command", app_->get_name()}};
    for (const auto& [k, f] : entries_) meta.emplace_back(k, f());
    return meta;
  }

  Json json() const {
    Json j;
    for (const auto& [k, v] : metadata()) j[k] = v;
    return j;
  }

 private:
  static std::string text(const std::string& v) { return v; }
  static std::string text(double v) { return format_double(v); }
  template <typename T>
  static std::string text(const T& v) {
    return std::to_string(v);
  }

  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<std::string()>>> entries_;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

Execution parse_execution(const std::string& s) {
  if (s == "serial") return Execution::Serial;
  if (s == "openmp" || s == "parallel") return Execution::OpenMP;
  throw Error(ErrorKind::InvalidArgument, "execution must be serial or openmp");
}

NoiseModel parse_noise(const std::string& s) {
  if (s == "disk") return NoiseModel::Disk;
  if (s == "real") return NoiseModel::RealUniform;
  throw Error(ErrorKind::InvalidArgument, "noise must be disk or real");
}

struct RecoverArgs {
  std::string input;
  std::string output;
  int d = 1;
  int L = 0;
  std::uint64_t seed = 0;
};

int run_recover(const RecoverArgs& a, const Recorder& rec) {
  const SpectralSamples samples = samples_from_json(read_json_file(a.input));
  const int n = static_cast<int>(samples.count());
  const int L = a.L > 0 ? a.L : default_pencil_param(n);
  const RecoveryResult r = mp_recover(samples, a.d, L);
  Json out = to_json(r);
  out["meta"] = rec.json();
  write_text(a.output, out.dump(2) + "\n");
  return kOk;
}

struct ExperimentArgs {
  std::string kind = "amplification";
  std::string scheme = "S1";
  std::string output;
  std::string format = "csv";
  std::string noise = "disk";
  std::string execution = "openmp";
  int p = 2;
  int d = 3;
  int trials = 0;
  int target = 0;
  double h_min = 0, h_max = 0, n_min = 0, n_max = 0, eps_min = 0, eps_max = 0;
  std::uint64_t seed = 0;
};

void print_fit(const std::string& label, const std::function<LineFit()>& fit) {
  try {
    const LineFit f = fit();
    std::cout << label << " slope=" << format_double(f.slope) << " r2=" << format_double(f.r2)
              << " resid_sd=" << format_double(f.residual_std) << " n=" << f.n << "\n";
  } catch (const Error& e) {
    std::cout << label << " " << e.what() << "\n";
  }
}

int run_experiment(ExperimentArgs a, const Recorder& rec) {
  if (a.kind != "amplification" && a.kind != "phase")
    throw Error(ErrorKind::InvalidArgument, "kind must be amplification or phase");
  const bool phase = a.kind == "phase";
  SweepSpec spec = phase ? phase_defaults(a.p, a.d, a.target)
                         : amplification_defaults(a.p, a.d, parse_scheme(a.scheme));
  spec.scheme = parse_scheme(a.scheme);
  spec.base_seed = a.seed;
  spec.noise = parse_noise(a.noise);
  if (a.trials > 0) spec.trials = a.trials;
  if (a.h_min > 0) spec.h.lo = a.h_min;
  if (a.h_max > 0) spec.h.hi = a.h_max;
  if (a.n_min > 0) spec.n.lo = a.n_min;
  if (a.n_max > 0) spec.n.hi = a.n_max;
  if (a.eps_min > 0) spec.epsilon.lo = a.eps_min;
  if (a.eps_max > 0) spec.epsilon.hi = a.eps_max;

  const auto records = amplification_sweep(spec, parse_execution(a.execution));

  Metadata meta = rec.metadata();
  meta.emplace_back("h_range", format_double(spec.h.lo) + ":" + format_double(spec.h.hi));
  meta.emplace_back("n_range", format_double(spec.n.lo) + ":" + format_double(spec.n.hi));
  meta.emplace_back("eps_range",
                    format_double(spec.epsilon.lo) + ":" + format_double(spec.epsilon.hi));
  meta.emplace_back("resolved_trials", std::to_string(spec.trials));
  std::ostringstream body;
  if (a.format == "csv")
    write_csv(body, records, meta);
  else if (a.format == "json")
    write_jsonl(body, records, meta);
  else
    throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
  if (!a.output.empty() && a.output != "-") write_text(a.output, body.str());

  if (phase) {
    const PhaseBoundaryFit fit = fit_phase_transition(records, a.target);
    std::cout << "boundary slope=" << format_double(fit.slope)
              << " intercept=" << format_double(fit.intercept)
              << " success_rate=" << format_double(fit.success_rate) << " n=" << fit.n << "\n";
  } else {
    print_fit("cluster Kx", [&] { return fit_loglog_slope(records, Factor::Node, NodeClass::Cluster); });
    print_fit("cluster Ka", [&] { return fit_loglog_slope(records, Factor::Amplitude, NodeClass::Cluster); });
    print_fit("noncluster Kx", [&] { return fit_loglog_slope(records, Factor::Node, NodeClass::NonCluster); });
    print_fit("noncluster Ka", [&] { return fit_loglog_slope(records, Factor::Amplitude, NodeClass::NonCluster); });
  }
  if (a.output.empty() || a.output == "-") std::cout << body.str();
  return kOk;
}

struct WorstCaseArgs {
  std::string input;
  std::string output;
  int p = 2;
  int d = 2;
  int kappa = 1;
  double h = 0.01;
  double epsilon = 1e-8;
  double omega = 1.0;
  int grid = 1001;
  std::uint64_t seed = 0;
};

// Tightest clustered geometry that the given nodes satisfy.
ClusterGeometry infer_geometry(const SpikeTrain& f, int p, int kappa) {
  ClusterGeometry g;
  g.p = p;
  g.d = static_cast<int>(f.size());
  g.kappa = kappa;
  require(kappa >= 1 && kappa + p - 1 <= g.d, "cluster does not fit in the signal");
  const auto& x = f.nodes();
  g.h = x[kappa + p - 2] - x[kappa - 1];
  double cgap = g.h;
  for (int j = kappa; j < kappa + p - 1; ++j) cgap = std::min(cgap, x[j] - x[j - 1]);
  g.tau = g.h > 0 ? cgap / g.h : 1.0;
  g.T = std::max(g.h, x.back() - x.front());
  double ngap = g.T;
  for (std::size_t j = 1; j < x.size(); ++j)
    if (!(g.is_cluster_node(j) && g.is_cluster_node(j - 1))) ngap = std::min(ngap, x[j] - x[j - 1]);
  g.eta = std::min(1.0, ngap / g.T);
  return g;
}

int run_worstcase(const WorstCaseArgs& a, const Recorder& rec) {
  std::optional<SpikeTrain> f;
  ClusterGeometry g;
  if (!a.input.empty()) {
    f = spike_train_from_json(read_json_file(a.input));
    g = infer_geometry(*f, a.p, a.kappa);
  } else {
    CVector amps(static_cast<std::size_t>(a.d));
    for (int j = 0; j < a.d; ++j) amps[j] = (j % 2 == 0) ? 1.0 : -1.0;
    f = SpikeTrain(amps, normalized_clustered_nodes(a.p, a.d, a.h));
    g = normalized_geometry(a.p, a.d, a.h);
  }
  WorstCaseOptions opts;
  opts.blowup = a.omega;
  opts.grid_points = a.grid;
  const WorstCaseReport r = worst_case_signal(*f, g, a.epsilon, opts);
  Json out;
  out["meta"] = rec.json();
  out["geometry"] = to_json(g);
  out["original"] = to_json(*f);
  out["report"] = to_json(r);
  write_text(a.output, out.dump(2) + "\n");
  return kOk;
}

struct DecimationArgs {
  std::string output;
  int p = 2;
  int d = 3;
  double h = 0.001;
  double omega = 200;
  int samples = 200;
  std::uint64_t seed = 0;
};

int run_decimation(const DecimationArgs& a, const Recorder& rec) {
  // Layout on [0, pi] mapped to [-1/2, 1/2] (T = 1).
  RVector x = make_clustered_nodes(a.p, a.d, a.h);
  for (double& v : x) v = v / kPi - 0.5;
  ClusterGeometry g = experiment_geometry(a.p, a.d, a.h);
  g.h = a.h / kPi;
  g.T = 1.0;

  const IntervalSet lambdas = admissible_lambdas(x, g, a.omega);
  Rng rng(a.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int passed = 0;
  for (int i = 0; i < a.samples; ++i) {
    const double pick = unit(rng) * lambdas.measure();
    double acc = 0.0;
    double lambda = lambdas.intervals().back().hi;
    for (const auto& iv : lambdas.intervals()) {
      if (pick <= acc + iv.length()) {
        lambda = iv.lo + (pick - acc);
        break;
      }
      acc += iv.length();
    }
    passed += verify_admissible(x, g, lambda).ok() ? 1 : 0;
  }

  const Interval* widest = &lambdas.intervals().front();
  for (const auto& iv : lambdas.intervals())
    if (iv.length() > widest->length()) widest = &iv;
  const double lambda = 0.5 * (widest->lo + widest->hi);
  CVector z;
  for (double v : x) z.push_back(std::polar(1.0, kTwoPi * lambda * v));

  Json out;
  out["meta"] = rec.json();
  out["geometry"] = to_json(g);
  const Interval range = blowup_range(a.d, a.omega);
  out["range"] = Json::array({range.lo, range.hi});
  out["admissible"] = to_json(lambdas);
  out["admissible_measure"] = lambdas.measure();
  out["verified_samples"] = a.samples;
  out["verified_passed"] = passed;
  out["lambda"] = lambda;
  out["gautschi"] = to_json(gautschi_bounds(z));
  Json predicted = Json::array();
  for (const auto& c : predicted_condition_numbers(g, a.omega))
    predicted.push_back(Json{{"node", c.node}, {"amplitude", c.amplitude}});
  out["predicted_factors"] = predicted;
  write_text(a.output, out.dump(2) + "\n");
  return passed == a.samples ? kOk : kEstimator;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Super-resolution of clustered spike trains"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto* recover = app.add_subcommand("recover", "Matrix Pencil recovery from a samples JSON file");
  RecoverArgs ra;
  Recorder rrec(recover);
  rrec.add("input", ra.input, "SpectralSamples JSON file")->required();
  rrec.add("d", ra.d, "model order")->required();
  rrec.add("L", ra.L, "pencil parameter (default ceil(N/2))");
  rrec.add("output", ra.output, "output path (default stdout)");
  rrec.add("seed", ra.seed, "recorded in metadata");

  auto* experiment = app.add_subcommand("experiment", "amplification or phase-transition sweep");
  ExperimentArgs ea;
  Recorder erec(experiment);
  erec.add("kind", ea.kind, "amplification | phase");
  erec.add("p", ea.p, "cluster size");
  erec.add("d", ea.d, "number of nodes");
  erec.add("scheme", ea.scheme, "S1 | S2");
  erec.add("trials", ea.trials, "number of trials (0 = figure default)");
  erec.add("target", ea.target, "phase: 1-based node whose success is fitted (0 = all)");
  erec.add("h-min", ea.h_min, "lower h bound (0 = default)");
  erec.add("h-max", ea.h_max, "upper h bound (0 = default)");
  erec.add("n-min", ea.n_min, "lower N bound (0 = default)");
  erec.add("n-max", ea.n_max, "upper N bound (0 = default)");
  erec.add("eps-min", ea.eps_min, "lower epsilon bound (0 = default)");
  erec.add("eps-max", ea.eps_max, "upper epsilon bound (0 = default)");
  erec.add("noise", ea.noise, "disk | real");
  erec.add("execution", ea.execution, "serial | openmp");
  erec.add("format", ea.format, "csv | json");
  erec.add("output", ea.output, "records path (default stdout)");
  erec.add("seed", ea.seed, "base seed");

  auto* worstcase = app.add_subcommand("worstcase", "worst-case perturbation of a cluster");
  WorstCaseArgs wa;
  Recorder wrec(worstcase);
  wrec.add("input", wa.input, "SpikeTrain JSON (default: clustered layout from p, d, h)");
  wrec.add("p", wa.p, "cluster size");
  wrec.add("d", wa.d, "number of nodes (layout only)");
  wrec.add("kappa", wa.kappa, "1-based first cluster node (input only)");
  wrec.add("h", wa.h, "cluster extent in the [0, pi] layout");
  wrec.add("epsilon", wa.epsilon, "moment perturbation");
  wrec.add("omega", wa.omega, "blowup / bandwidth");
  wrec.add("grid", wa.grid, "spectral deviation grid points");
  wrec.add("output", wa.output, "output path (default stdout)");
  wrec.add("seed", wa.seed, "recorded in metadata");

  auto* decimation = app.add_subcommand("decimation", "admissible blowup factors and Gautschi bounds");
  DecimationArgs da;
  Recorder drec(decimation);
  drec.add("p", da.p, "cluster size");
  drec.add("d", da.d, "number of nodes");
  drec.add("h", da.h, "cluster extent in the [0, pi] layout");
  drec.add("omega", da.omega, "bandwidth");
  drec.add("samples", da.samples, "lambdas drawn for verification");
  drec.add("output", da.output, "output path (default stdout)");
  drec.add("seed", da.seed, "seed for the verification draws");

  auto* version = app.add_subcommand("version", "print the version");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = cli::expand_config(args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  } catch (const Error& e) {
    std::cerr << "spikesr: " << e.what() << "\n";
    return exit_code(e.kind());
  }

  try {
    if (recover->parsed()) return run_recover(ra, rrec);
    if (experiment->parsed()) return run_experiment(ea, erec);
    if (worstcase->parsed()) return run_worstcase(wa, wrec);
    if (decimation->parsed()) return run_decimation(da, drec);
    if (version->parsed()) {
      std::cout << "spikesr " << kVersion << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "spikesr: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "spikesr: " << e.what() << "\n";
    return kEstimator;
  }
  return kOk;
}
