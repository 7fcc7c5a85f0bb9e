#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "spikesr/error.hpp"
#include "spikesr/json_io.hpp"

using namespace spikesr;

namespace {

void expect_parse_error(const std::function<void()>& f) {
  try {
    f();
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

}  // namespace

TEST_CASE("complex values") {
  CHECK(complex_from_json(complex_to_json(cplx(1.5, -2.0))) == cplx(1.5, -2.0));
  CHECK(complex_from_json(parse_json("3")) == cplx(3.0, 0.0));
  expect_parse_error([] { complex_from_json(parse_json("[1, 2, 3]")); });
  expect_parse_error([] { complex_from_json(parse_json("\"x\"")); });
}

TEST_CASE("spike train round trip") {
  const SpikeTrain f({cplx(1, 2), -0.5, cplx(0, 1e-300)}, {-0.25, 0.1, 0.3333333333333333});
  CHECK(spike_train_from_json(parse_json(to_json(f).dump())) == f);
  expect_parse_error([] { spike_train_from_json(parse_json(R"({"amplitudes": [1]})")); });
  expect_parse_error([] { spike_train_from_json(parse_json(R"({"amplitudes": [1, 1], "nodes": [0.2, 0.1]})")); });
  expect_parse_error([] { spike_train_from_json(parse_json(R"({"amplitudes": [1], "nodes": ["a"]})")); });
}

TEST_CASE("samples round trip") {
  SpectralSamples s;
  s.values = {2.0, -1.0, cplx(0.1, -0.7)};
  s.noise_bound = 1e-3;
  s.actual_noise = 5e-4;
  const SpectralSamples t = samples_from_json(parse_json(to_json(s).dump()));
  CHECK(t.values == s.values);
  CHECK(t.noise_bound == s.noise_bound);
  CHECK(t.actual_noise == s.actual_noise);
  CHECK(samples_from_json(parse_json(R"({"values": [2, -1, -1, 2]})")).count() == 4);
  expect_parse_error([] { samples_from_json(parse_json(R"({"values": []})")); });
  expect_parse_error([] { samples_from_json(parse_json(R"({"values": 3})")); });
  expect_parse_error([] { samples_from_json(parse_json(R"([1, 2])")); });
}

TEST_CASE("interval sets round trip") {
  const IntervalSet s({{0.0, 0.25}, {0.75, 1.0}});
  CHECK(interval_set_from_json(parse_json(to_json(s).dump())) == s);
  expect_parse_error([] { interval_set_from_json(parse_json(R"({"intervals": [[0]]})")); });
  expect_parse_error([] { interval_set_from_json(parse_json(R"({"intervals": [[1, 0]]})")); });
}

TEST_CASE("malformed text and missing files") {
  expect_parse_error([] { parse_json("{\"values\": [1, 2"); });
  expect_parse_error([] { parse_json(""); });
  expect_parse_error([] { read_json_file("/nonexistent/spikesr.json"); });

  const auto path = std::filesystem::temp_directory_path() / "spikesr_json_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"values": [[1, 0], [0, 1]]})";
  }
  CHECK(samples_from_json(read_json_file(path.string())).values[1] == cplx(0, 1));
  std::filesystem::remove(path);
}

TEST_CASE("report writers") {
  const JacobianBoundReport r = gautschi_bounds(CVector{1.0, -1.0});
  const Json j = to_json(r);
  CHECK(j["amplitude_row_bound"][0].get<double>() == doctest::Approx(3.0));
  CHECK(j["worst_ratio"].get<double>() <= 1.0 + 1e-10);
  ClusterGeometry g;
  g.p = 3;
  g.d = 5;
  CHECK(to_json(g)["p"] == 3);
  CHECK(to_json(PronySolution{{1.0}, {cplx(0.5, 0.5)}})["nodes"][0][1] == 0.5);
}
