#ifndef MYCOLEX_JSON_IO_HPP
#define MYCOLEX_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "mycolex/complexity.hpp"
#include "mycolex/detect.hpp"
#include "mycolex/lexicon.hpp"
#include "mycolex/machine.hpp"
#include "mycolex/multichannel.hpp"

namespace mycolex {

// ordered_json keeps insertion order, giving every artifact a stable key
// order and byte-identical output for identical inputs.
using json = nlohmann::ordered_json;

json spikes_to_json(const std::vector<SpikeEvent>& events, bool planted = false);
std::vector<SpikeEvent> spikes_from_json(const json& j);

json stats_to_json(const SpikeStats& stats);

json sentence_to_json(const Sentence& sentence);
json distribution_to_json(const WordLengthDistribution& dist);
json fit_to_json(const PowerLawFit& fit);

json machine_to_json(const TransitionGraph& g, const MachineReport& report);

json complexity_to_json(const ComplexityReport& raw, const ComplexityReport& normalized);

json matches_to_json(const std::vector<SpikeMatch>& matches);
json packets_to_json(const std::vector<WavePacket>& packets);

void write_json_file(const json& j, const std::string& path);
json read_json_file(const std::string& path);

}  // namespace mycolex

#endif
