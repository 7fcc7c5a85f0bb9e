#include "spikesr/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "spikesr/error.hpp"
#include "spikesr/matrix_pencil.hpp"
#include "spikesr/rng.hpp"
#include "spikesr/worstcase.hpp"

namespace spikesr {

std::string to_string(Scheme s) { return s == Scheme::S1 ? "S1" : "S2"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "S1" || s == "s1" || s == "1") return Scheme::S1;
  if (s == "S2" || s == "s2" || s == "2") return Scheme::S2;
  throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + s + "'");
}

bool ExperimentRecord::all_success() const noexcept {
  if (nodes.empty()) return false;
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeOutcome& o) { return o.success; });
}

double super_resolution_factor(int p, double h, int n) {
  require(p >= 2 && h > 0.0 && n >= 1, "SRF needs p >= 2, h > 0, N >= 1");
  const double gap = h / ((p - 1) * kTwoPi);
  return 1.0 / (n * gap);
}

ExperimentRecord single_experiment(const ExperimentSetup& s) {
  require(s.n > 2 * s.d, "need N > 2d samples");
  require(s.epsilon > 0.0, "epsilon must be positive");

  const RVector x = normalized_clustered_nodes(s.p, s.d, s.h);
  CVector a(static_cast<std::size_t>(s.d));
  const cplx step = s.scheme == Scheme::S1 ? cplx{0.0, 1.0} : cplx{-1.0, 0.0};
  cplx power{1.0, 0.0};
  for (auto& v : a) {
    v = power;
    power *= step;
  }
  const SpikeTrain f(a, x);
  const ClusterGeometry geometry = normalized_geometry(s.p, s.d, s.h);

  ExperimentRecord rec;
  rec.scheme = s.scheme;
  rec.p = s.p;
  rec.d = s.d;
  rec.h = s.h;
  rec.n = s.n;
  rec.epsilon_requested = s.epsilon;
  rec.srf = super_resolution_factor(s.p, s.h, s.n);
  rec.seed = s.seed;
  rec.nodes.resize(static_cast<std::size_t>(s.d));
  for (int j = 0; j < s.d; ++j) rec.nodes[j].cluster = geometry.is_cluster_node(j);

  const auto fail = [&](const std::string& why) {
    for (auto& o : rec.nodes) o.error = std::numeric_limits<double>::quiet_NaN();
    rec.failure = why;
    return rec;
  };

  SpectralSamples samples;
  try {
    if (s.scheme == Scheme::S1) {
      samples = sample_spectrum(f, s.n, s.epsilon, s.seed, s.noise);
    } else {
      WorstCaseOptions opts;
      opts.blowup = s.n;
      opts.grid_points = 0;
      const WorstCaseReport wc = worst_case_signal(f, geometry, s.epsilon, opts);
      samples.values = clean_samples(wc.perturbed, s.n);
      samples.noise_bound = s.epsilon;
    }
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())));
  }

  const CVector clean = clean_samples(f, s.n);
  double eps0 = 0.0;
  for (int k = 0; k < s.n; ++k) eps0 = std::max(eps0, std::abs(samples.values[k] - clean[k]));
  samples.actual_noise = eps0;
  rec.epsilon0 = eps0;
  if (!(eps0 > 0.0)) return fail("zero perturbation");

  std::optional<RecoveryResult> est;
  try {
    est = mp_recover(samples, s.d, default_pencil_param(s.n));
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())));
  }

  const RVector& xr = est->estimate.nodes();
  for (int j = 0; j < s.d; ++j) {
    std::size_t best = 0;
    double e = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < xr.size(); ++l) {
      const double dist = circular_distance(x[j], xr[l]);
      if (dist < e) {
        e = dist;
        best = l;
      }
    }
    double sep = std::numeric_limits<double>::infinity();
    for (int l = 0; l < s.d; ++l)
      if (l != j) sep = std::min(sep, circular_distance(x[j], x[l]));
    NodeOutcome& o = rec.nodes[j];
    o.error = e;
    o.success = e < sep / 3.0;
    if (o.success) {
      o.kx = e * s.n / eps0;
      o.ka = std::abs(a[j] - est->estimate.amplitude(best)) / eps0;
    }
  }
  return rec;
}

SweepSpec amplification_defaults(int p, int d, Scheme scheme) {
  SweepSpec spec;
  spec.p = p;
  spec.d = d;
  spec.scheme = scheme;
  spec.h = {3e-4, 1e-2};
  spec.n = {256, 512};
  spec.epsilon = {1e-10, 1e-6};
  spec.trials = 500;
  return spec;
}

SweepSpec phase_defaults(int p, int d, int target) {
  SweepSpec spec;
  spec.p = p;
  spec.d = d;
  spec.trials = 2000;
  if (target > 0) {
    spec.h = {1e-4, 1e-2};
    spec.n = {128, 256};
    spec.epsilon = {1e-4, 1e2};
  } else if (p <= 2) {
    spec.h = {1e-4, 1e-2};
    spec.n = {32, 256};
    spec.epsilon = {1e-12, 1e-1};
  } else {
    spec.h = {1e-3, 1e-1};
    spec.n = {16, 512};
    spec.epsilon = {1e-14, 1e-1};
  }
  spec.n.lo = std::max(spec.n.lo, 2.0 * d + 1);
  return spec;
}

ExperimentSetup sweep_trial(const SweepSpec& spec, int index) {
  require(spec.h.lo > 0.0 && spec.h.lo <= spec.h.hi, "invalid h range");
  require(spec.n.lo >= 1.0 && spec.n.lo <= spec.n.hi, "invalid N range");
  require(spec.epsilon.lo > 0.0 && spec.epsilon.lo <= spec.epsilon.hi, "invalid epsilon range");
  const auto idx = static_cast<std::uint64_t>(index);
  Rng rng(derive_seed(spec.base_seed, 2 * idx));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto log_uniform = [&](const Range& r) {
    const double t = unit(rng);
    return std::exp(std::log(r.lo) + t * (std::log(r.hi) - std::log(r.lo)));
  };
  ExperimentSetup s;
  s.p = spec.p;
  s.d = spec.d;
  s.h = log_uniform(spec.h);
  s.n = static_cast<int>(std::lround(log_uniform(spec.n)));
  s.epsilon = log_uniform(spec.epsilon);
  s.scheme = spec.scheme;
  s.seed = derive_seed(spec.base_seed, 2 * idx + 1);
  s.noise = spec.noise;
  return s;
}

std::vector<ExperimentRecord> amplification_sweep(const SweepSpec& spec, Execution exec) {
  require(spec.trials >= 1, "need at least one trial");
  require(spec.n.lo > 2 * spec.d, "N range must exceed 2d");
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(spec.trials));
  std::vector<std::exception_ptr> errors(out.size());
  const auto run = [&](int t) {
    try {
      out[t] = single_experiment(sweep_trial(spec, t));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (exec == Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < spec.trials; ++t) run(t);
  } else {
    for (int t = 0; t < spec.trials; ++t) run(t);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

LineFit fit_loglog_slope(const std::vector<ExperimentRecord>& records, Factor factor,
                         NodeClass node_class, int min_points) {
  std::vector<double> srf, k;
  for (const auto& r : records)
    for (const auto& o : r.nodes) {
      if (o.cluster != (node_class == NodeClass::Cluster) || !o.success) continue;
      const auto& v = factor == Factor::Node ? o.kx : o.ka;
      if (!v || !(*v > 0.0)) continue;
      srf.push_back(r.srf);
      k.push_back(*v);
    }
  return fit_loglog(srf, k, min_points);
}

AmplificationFits fit_amplification(const std::vector<ExperimentRecord>& records) {
  return {fit_loglog_slope(records, Factor::Node, NodeClass::Cluster),
          fit_loglog_slope(records, Factor::Amplitude, NodeClass::Cluster),
          fit_loglog_slope(records, Factor::Node, NodeClass::NonCluster),
          fit_loglog_slope(records, Factor::Amplitude, NodeClass::NonCluster)};
}

bool record_success(const ExperimentRecord& r, int target) {
  if (target <= 0) return r.all_success();
  require(target <= static_cast<int>(r.nodes.size()), "target node index out of range");
  return r.nodes[target - 1].success;
}

PhaseBoundaryFit fit_phase_transition(const std::vector<ExperimentRecord>& records, int target) {
  std::vector<double> srf, eps;
  std::vector<bool> ok;
  for (const auto& r : records) {
    srf.push_back(r.srf);
    eps.push_back(r.epsilon_requested);
    ok.push_back(record_success(r, target));
  }
  return fit_phase_boundary(srf, eps, ok);
}

PhaseSweepResult phase_transition_sweep(const SweepSpec& spec, int target, Execution exec) {
  PhaseSweepResult out;
  out.records = amplification_sweep(spec, exec);
  out.fit = fit_phase_transition(out.records, target);
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : records)
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const NodeOutcome& o = r.nodes[j];
      out << to_string(r.scheme) << ',' << r.p << ',' << r.d << ',' << format_double(r.h) << ','
          << r.n << ',' << format_double(r.epsilon_requested) << ','
          << format_double(r.epsilon0) << ',' << format_double(r.srf) << ',' << j + 1 << ','
          << (o.cluster ? "cluster" : "noncluster") << ',' << format_double(o.error) << ','
          << (o.success ? 1 : 0) << ',' << optional_field(o.kx) << ',' << optional_field(o.ka)
          << ',' << r.seed << '\n';
    }
}

void write_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records,
                 const Metadata& meta) {
  nlohmann::ordered_json header;
  for (const auto& [k, v] : meta) header["meta"][k] = v;
  if (meta.empty()) header["meta"] = nlohmann::ordered_json::object();
  out << header.dump() << '\n';
  for (const auto& r : records)
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const NodeOutcome& o = r.nodes[j];
      nlohmann::ordered_json row;
      row["scheme"] = to_string(r.scheme);
      row["p"] = r.p;
      row["d"] = r.d;
      row["h"] = r.h;
      row["N"] = r.n;
      row["eps_req"] = r.epsilon_requested;
      row["eps0"] = r.epsilon0;
      row["srf"] = r.srf;
      row["node_index"] = j + 1;
      row["node_class"] = o.cluster ? "cluster" : "noncluster";
      row["e"] = std::isnan(o.error) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.error);
      row["succ"] = o.success;
      row["Kx"] = o.kx ? nlohmann::ordered_json(*o.kx) : nlohmann::ordered_json(nullptr);
      row["Ka"] = o.ka ? nlohmann::ordered_json(*o.ka) : nlohmann::ordered_json(nullptr);
      row["seed"] = r.seed;
      if (!r.failure.empty()) row["failure"] = r.failure;
      out << row.dump() << '\n';
    }
}

}  // namespace spikesr
