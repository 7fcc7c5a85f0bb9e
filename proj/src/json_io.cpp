#include "spikesr/json_io.hpp"

#include <fstream>
#include <sstream>

#include "spikesr/error.hpp"

namespace spikesr {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

Json doubles(const RVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json complexes(const CVector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

CVector complexes_from(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  CVector out;
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("complex value must be [re, im] or a real number");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const SpikeTrain& f) {
  Json j;
  j["amplitudes"] = complexes(f.amplitudes());
  j["nodes"] = doubles(f.nodes());
  return j;
}

SpikeTrain spike_train_from_json(const Json& j) {
  CVector a = complexes_from(field(j, "amplitudes"), "amplitudes");
  const Json& xs = field(j, "nodes");
  if (!xs.is_array()) parse_error("nodes must be an array");
  RVector x;
  for (const auto& v : xs) x.push_back(number(v, "node"));
  try {
    return SpikeTrain(std::move(a), std::move(x));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

Json to_json(const SpectralSamples& s) {
  Json j;
  j["values"] = complexes(s.values);
  j["noise_bound"] = s.noise_bound;
  j["actual_noise"] = s.actual_noise;
  return j;
}

SpectralSamples samples_from_json(const Json& j) {
  SpectralSamples s;
  s.values = complexes_from(field(j, "values"), "values");
  if (s.values.empty()) parse_error("values must not be empty");
  if (j.contains("noise_bound")) s.noise_bound = number(j["noise_bound"], "noise_bound");
  if (j.contains("actual_noise")) s.actual_noise = number(j["actual_noise"], "actual_noise");
  return s;
}

Json to_json(const RecoveryResult& r) {
  Json j;
  j["nodes"] = doubles(r.estimate.nodes());
  j["amplitudes"] = complexes(r.estimate.amplitudes());
  j["L"] = r.pencil_param;
  j["sigma_A"] = doubles(r.sigma_a);
  j["sigma_B"] = doubles(r.sigma_b);
  return j;
}

Json to_json(const PronySolution& s) {
  Json j;
  j["amplitudes"] = complexes(s.amplitudes);
  j["nodes"] = complexes(s.nodes);
  return j;
}

Json to_json(const IntervalSet& s) {
  Json list = Json::array();
  for (const auto& iv : s.intervals()) list.push_back(Json::array({iv.lo, iv.hi}));
  Json j;
  j["intervals"] = list;
  return j;
}

IntervalSet interval_set_from_json(const Json& j) {
  const Json& list = field(j, "intervals");
  if (!list.is_array()) parse_error("intervals must be an array");
  std::vector<Interval> pieces;
  for (const auto& iv : list) {
    if (!iv.is_array() || iv.size() != 2) parse_error("interval must be [a, b]");
    pieces.push_back({number(iv[0], "interval endpoint"), number(iv[1], "interval endpoint")});
  }
  try {
    return IntervalSet(std::move(pieces));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

Json to_json(const ClusterGeometry& g) {
  Json j;
  j["p"] = g.p;
  j["d"] = g.d;
  j["h"] = g.h;
  j["T"] = g.T;
  j["tau"] = g.tau;
  j["eta"] = g.eta;
  j["kappa"] = g.kappa;
  return j;
}

Json to_json(const WorstCaseReport& r) {
  Json j;
  j["perturbed"] = to_json(r.perturbed);
  j["center"] = r.center;
  j["moment_scale"] = r.moment_scale;
  j["moment_match_error"] = r.moment_match_error;
  j["last_moment_delta"] = r.last_moment_delta;
  j["node_displacement"] = r.node_displacement;
  j["amplitude_displacement"] = r.amplitude_displacement;
  j["spectral_deviation"] = r.spectral_deviation;
  return j;
}

Json to_json(const JacobianBoundReport& r) {
  Json j;
  j["delta"] = doubles(r.delta);
  j["gamma"] = doubles(r.gamma);
  j["amplitude_row_bound"] = doubles(r.amplitude_row_bound);
  j["node_row_bound"] = doubles(r.node_row_bound);
  j["amplitude_row_norm"] = doubles(r.amplitude_row_norm);
  j["node_row_norm"] = doubles(r.node_row_norm);
  j["condition_number"] = r.condition_number;
  j["worst_ratio"] = r.worst_ratio();
  return j;
}

}  // namespace spikesr
