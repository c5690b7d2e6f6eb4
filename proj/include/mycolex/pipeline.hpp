#ifndef MYCOLEX_PIPELINE_HPP
#define MYCOLEX_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mycolex/complexity.hpp"
#include "mycolex/detect.hpp"
#include "mycolex/json_io.hpp"
#include "mycolex/lexicon.hpp"
#include "mycolex/recording.hpp"

namespace mycolex {

struct DetectionResult {
    std::vector<std::vector<SpikeEvent>> events;  // per channel, recording order
    std::vector<SpikeStats> stats;                // per channel
    SpikeStats pooled;                            // ISIs and amplitudes pooled
};

DetectionResult detect_recording(const Recording& rec, const DetectorParams& params);

// Stats over the union of per-channel ISI lists and amplitudes. ISIs never
// span channels.
SpikeStats pooled_stats(const std::vector<std::vector<SpikeEvent>>& events);

enum class ThetaMode { pooled, per_channel };

struct ReportConfig {
    std::vector<int> theta_multipliers = {1, 2};
    ThetaMode theta_mode = ThetaMode::pooled;
    std::optional<int> alphabet_cap;    // 9 reproduces the filtered analysis
    std::optional<int> machine_max_state;
    const CtmTable* ctm_table = nullptr;
    double sync_window_s = 300.0;
    int packet_min_spikes = 3;
};

// One theta multiplier's worth of tokenization + analysis.
struct ThetaSection {
    int multiplier = 1;
    std::vector<Sentence> sentences;  // one per channel with >= 1 word
};

std::vector<Sentence> tokenize_channels(const DetectionResult& det, int multiplier,
                                        ThetaMode mode);

// Word-length symbols from sentences, in channel order. Optionally capped.
SymbolSequence sentences_to_sequence(const std::vector<Sentence>& sentences,
                                     std::optional<int> cap);

// Full pipeline on one recording: detection, both tokenizations, machines,
// complexity, packets and (for >= 2 channels) cross-channel matching.
// Deterministic for identical inputs.
json build_report(const Recording& rec, const DetectorParams& params,
                  const ReportConfig& config);

}  // namespace mycolex

#endif
