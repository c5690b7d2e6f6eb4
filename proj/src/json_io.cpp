#include "mycolex/json_io.hpp"

#include <fstream>

#include "mycolex/errors.hpp"

namespace mycolex {

json spikes_to_json(const std::vector<SpikeEvent>& events, bool planted) {
    json arr = json::array();
    for (const auto& ev : events) {
        json o;
        o["channel"] = ev.channel;
        o["peak_index"] = ev.peak_index;
        o["peak_time_s"] = ev.peak_time_s;
        o["amplitude_mv"] = ev.amplitude_mv;
        o["width_s"] = ev.width_s;
        if (planted) o["planted"] = true;
        arr.push_back(std::move(o));
    }
    return arr;
}

std::vector<SpikeEvent> spikes_from_json(const json& j) {
    if (!j.is_array()) throw io_error("spike list JSON must be an array");
    std::vector<SpikeEvent> events;
    events.reserve(j.size());
    try {
        for (const auto& o : j) {
            SpikeEvent ev;
            ev.channel = o.at("channel").get<std::string>();
            ev.peak_index = o.at("peak_index").get<std::int64_t>();
            ev.peak_time_s = o.at("peak_time_s").get<double>();
            ev.amplitude_mv = o.at("amplitude_mv").get<double>();
            ev.width_s = o.at("width_s").get<double>();
            ev.prominence_mv = ev.amplitude_mv;  // sign is not serialized
            events.push_back(std::move(ev));
        }
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("bad spike list JSON: ") + e.what());
    }
    return events;
}

json stats_to_json(const SpikeStats& stats) {
    json o;
    o["count"] = stats.count;
    if (stats.mean_isi_s) o["mean_isi_s"] = *stats.mean_isi_s;
    if (stats.isi_stddev_s) o["isi_stddev_s"] = *stats.isi_stddev_s;
    if (stats.mean_amplitude_mv) o["mean_amplitude_mv"] = *stats.mean_amplitude_mv;
    if (stats.amplitude_stddev_mv) o["amplitude_stddev_mv"] = *stats.amplitude_stddev_mv;
    return o;
}

json sentence_to_json(const Sentence& sentence) {
    json o;
    o["channel"] = sentence.channel;
    o["theta_s"] = sentence.theta_s;
    o["word_lengths"] = sentence.word_lengths;
    return o;
}

json distribution_to_json(const WordLengthDistribution& dist) {
    json o = json::object();
    for (const auto& [length, count] : dist.counts) {
        o[std::to_string(length)] = count;  // std::map iterates ascending
    }
    return o;
}

json fit_to_json(const PowerLawFit& fit) {
    json o;
    o["coefficient"] = fit.coefficient;
    o["exponent"] = fit.exponent;
    o["rms_residual"] = fit.rms_residual;
    o["in_reference_range"] = fit.in_reference_range();
    return o;
}

json machine_to_json(const TransitionGraph& g, const MachineReport& report) {
    json o;
    o["states"] = json::array();
    for (int s : g.states) o["states"].push_back(s);
    o["transitions"] = json::array();
    for (const auto& [edge, count] : g.counts) {
        json t;
        t["from"] = edge.first;
        t["to"] = edge.second;
        t["count"] = count;
        t["p"] = g.probabilities.at(edge);
        o["transitions"].push_back(std::move(t));
    }
    o["leaves"] = json::array();
    for (int s : report.leaves) o["leaves"].push_back(s);
    o["absorbing"] = json::array();
    for (int s : report.absorbing) o["absorbing"].push_back(s);
    o["cycles"] = report.cycles;
    if (report.max_transient) {
        o["max_transient"] = *report.max_transient;
    } else {
        o["max_transient"] = nullptr;
    }
    o["core"] = report.core;
    return o;
}

json complexity_to_json(const ComplexityReport& raw, const ComplexityReport& normalized) {
    auto fields = [](const ComplexityReport& r) {
        json o;
        o["shannon_bits"] = r.shannon_bits;
        o["second_order_bits"] = r.second_order_bits;
        o["lz_bits"] = r.lz_bits;
        if (r.bdm_bits) {
            o["bdm_bits"] = *r.bdm_bits;
        } else {
            o["bdm_bits"] = nullptr;
        }
        return o;
    };
    json o;
    o["input_length"] = raw.input_length;
    o["alphabet_size"] = raw.alphabet_size;
    o["lz_phrases"] = raw.lz_phrases;
    o["bdm_missing_blocks"] = raw.bdm_missing_blocks;
    json raw_fields = fields(raw);
    o.update(raw_fields);
    o["normalized"] = fields(normalized);
    return o;
}

json matches_to_json(const std::vector<SpikeMatch>& matches) {
    json arr = json::array();
    for (const auto& m : matches) {
        json o;
        o["t_a"] = m.time_a_s;
        o["t_b"] = m.time_b_s;
        o["interval_s"] = m.interval_s;
        o["polarity"] = m.polarity == Polarity::increase ? "increase" : "decrease";
        arr.push_back(std::move(o));
    }
    return arr;
}

json packets_to_json(const std::vector<WavePacket>& packets) {
    json arr = json::array();
    for (const auto& p : packets) {
        json o;
        o["start_s"] = p.start_s;
        o["end_s"] = p.end_s;
        o["n_spikes"] = p.spike_indices.size();
        o["amplitudes"] = p.amplitudes_mv;
        o["widths"] = p.widths_s;
        arr.push_back(std::move(o));
    }
    return arr;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failed for '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw io_error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace mycolex
