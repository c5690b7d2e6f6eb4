#include "mycolex/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "mycolex/errors.hpp"
#include "mycolex/machine.hpp"
#include "mycolex/multichannel.hpp"

namespace mycolex {

DetectionResult detect_recording(const Recording& rec, const DetectorParams& params) {
    validate_recording(rec);
    validate_params(params);
    DetectionResult result;
    for (const auto& ch : rec.channels) {
        auto events = detect_spikes(ch.values, params, rec.sample_interval_s, ch.name);
        result.stats.push_back(spike_stats(events));
        result.events.push_back(std::move(events));
    }
    result.pooled = pooled_stats(result.events);
    return result;
}

SpikeStats pooled_stats(const std::vector<std::vector<SpikeEvent>>& events) {
    std::vector<double> isis;
    std::vector<double> amplitudes;
    std::int64_t count = 0;
    for (const auto& channel_events : events) {
        count += static_cast<std::int64_t>(channel_events.size());
        for (std::size_t k = 0; k < channel_events.size(); ++k) {
            amplitudes.push_back(channel_events[k].amplitude_mv);
            if (k > 0) {
                isis.push_back(channel_events[k].peak_time_s -
                               channel_events[k - 1].peak_time_s);
            }
        }
    }
    SpikeStats st;
    st.count = count;
    auto mean_sd = [](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        const double mean = sum / static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return std::pair<double, double>{mean,
                                         std::sqrt(var / static_cast<double>(xs.size()))};
    };
    if (!amplitudes.empty()) {
        auto [mean, sd] = mean_sd(amplitudes);
        st.mean_amplitude_mv = mean;
        st.amplitude_stddev_mv = sd;
    }
    if (!isis.empty()) {
        auto [mean, sd] = mean_sd(isis);
        st.mean_isi_s = mean;
        st.isi_stddev_s = sd;
    }
    return st;
}

std::vector<Sentence> tokenize_channels(const DetectionResult& det, int multiplier,
                                        ThetaMode mode) {
    std::vector<Sentence> sentences;
    for (std::size_t c = 0; c < det.events.size(); ++c) {
        const SpikeStats& source =
            mode == ThetaMode::pooled ? det.pooled : det.stats[c];
        if (!source.mean_isi_s) continue;  // theta undefined, channel skipped
        const double theta = theta_for(source, multiplier);
        const std::string name =
            det.events[c].empty() ? "" : det.events[c].front().channel;
        Sentence s = group_words(det.events[c], theta, name);
        if (!s.word_lengths.empty()) sentences.push_back(std::move(s));
    }
    return sentences;
}

SymbolSequence sentences_to_sequence(const std::vector<Sentence>& sentences,
                                     std::optional<int> cap) {
    std::vector<int> symbols;
    for (const auto& s : sentences) {
        symbols.insert(symbols.end(), s.word_lengths.begin(), s.word_lengths.end());
    }
    SymbolSequence seq = make_sequence(std::move(symbols));
    if (cap) seq = cap_alphabet(seq, *cap);
    return seq;
}

namespace {

json complexity_section(const SymbolSequence& seq, const CtmTable* table) {
    if (seq.symbols.empty()) return nullptr;
    const CtmTable* usable =
        (table != nullptr &&
         seq.symbols.size() >= static_cast<std::size_t>(table->block_size))
            ? table
            : nullptr;
    const ComplexityReport raw = compute_complexity(seq, usable);
    return complexity_to_json(raw, normalize_report(raw));
}

json theta_section(const DetectionResult& det, int multiplier, const ReportConfig& config) {
    json section;
    section["multiplier"] = multiplier;
    const std::vector<Sentence> sentences =
        tokenize_channels(det, multiplier, config.theta_mode);
    if (sentences.empty()) {
        section["sentences"] = json::array();
        section["distribution"] = nullptr;
        section["mean_word_length"] = nullptr;
        section["power_law_fit"] = nullptr;
        section["machine"] = nullptr;
        section["complexity"] = nullptr;
        return section;
    }
    section["sentences"] = json::array();
    for (const auto& s : sentences) section["sentences"].push_back(sentence_to_json(s));

    const WordLengthDistribution dist = word_length_distribution(sentences);
    section["distribution"] = distribution_to_json(dist);
    section["mean_word_length"] = mean_word_length(sentences);
    try {
        section["power_law_fit"] = fit_to_json(fit_power_law(dist));
    } catch (const config_error&) {
        section["power_law_fit"] = nullptr;
    }
    try {
        const TransitionGraph g = build_machine(sentences, config.machine_max_state);
        section["machine"] = machine_to_json(g, analyze_machine(g));
    } catch (const config_error&) {
        section["machine"] = nullptr;
    }

    json complexity;
    complexity["pooled"] =
        complexity_section(sentences_to_sequence(sentences, config.alphabet_cap),
                           config.ctm_table);
    complexity["per_channel"] = json::array();
    for (const auto& s : sentences) {
        json entry;
        entry["channel"] = s.channel;
        entry["report"] = complexity_section(
            sentences_to_sequence({s}, config.alphabet_cap), config.ctm_table);
        complexity["per_channel"].push_back(std::move(entry));
    }
    section["complexity"] = std::move(complexity);
    return section;
}

}  // namespace

json build_report(const Recording& rec, const DetectorParams& params,
                  const ReportConfig& config) {
    const DetectionResult det = detect_recording(rec, params);

    json report;
    report["label"] = rec.label;
    report["sample_interval_s"] = rec.sample_interval_s;
    report["n_samples"] = rec.n_samples();
    json detector;
    detector["w"] = params.w;
    detector["delta"] = params.delta;
    detector["d"] = params.d;
    report["detector"] = std::move(detector);

    report["channels"] = json::array();
    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        json ch;
        ch["name"] = rec.channels[c].name;
        ch["stats"] = stats_to_json(det.stats[c]);
        json packets = json::array();
        if (det.stats[c].mean_isi_s) {
            // Packets are runs denser than background: threshold at half the
            // channel mean ISI.
            packets = packets_to_json(detect_wave_packets(
                det.events[c], *det.stats[c].mean_isi_s / 2.0, config.packet_min_spikes));
        }
        ch["wave_packets"] = std::move(packets);
        report["channels"].push_back(std::move(ch));
    }
    report["pooled_stats"] = stats_to_json(det.pooled);

    if (rec.channels.size() >= 2) {
        json sync;
        sync["channel_a"] = rec.channels[0].name;
        sync["channel_b"] = rec.channels[1].name;
        sync["window_s"] = config.sync_window_s;
        const auto matches =
            match_spikes(det.events[0], det.events[1], config.sync_window_s);
        sync["matches"] = matches_to_json(matches);
        report["sync"] = std::move(sync);
    } else {
        report["sync"] = nullptr;
    }

    report["theta"] = json::object();
    for (int multiplier : config.theta_multipliers) {
        const std::string key = multiplier == 1 ? "a" : "2a";
        report["theta"][key] = theta_section(det, multiplier, config);
    }
    return report;
}

}  // namespace mycolex
