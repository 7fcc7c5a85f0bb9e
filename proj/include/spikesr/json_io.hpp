#pragma once

// JSON forms of the library's value types. Complex numbers are [re, im].
// Every reader throws Error(Parse) on malformed input.

#include <string>

#include "json.hpp"
#include "spikesr/decimation.hpp"
#include "spikesr/interval_set.hpp"
#include "spikesr/matrix_pencil.hpp"
#include "spikesr/prony.hpp"
#include "spikesr/signal.hpp"
#include "spikesr/worstcase.hpp"

namespace spikesr {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

Json to_json(const SpikeTrain& f);
SpikeTrain spike_train_from_json(const Json& j);

Json to_json(const SpectralSamples& s);
SpectralSamples samples_from_json(const Json& j);

Json to_json(const RecoveryResult& r);
Json to_json(const PronySolution& s);

Json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j);

Json to_json(const ClusterGeometry& g);
Json to_json(const WorstCaseReport& r);
Json to_json(const JacobianBoundReport& r);

}  // namespace spikesr
