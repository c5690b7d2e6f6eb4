#include "mycolex/multichannel.hpp"

#include <cmath>
#include <limits>

#include "mycolex/errors.hpp"

namespace mycolex {

namespace {

void require_sorted(const std::vector<SpikeEvent>& events, const char* which) {
    for (std::size_t k = 1; k < events.size(); ++k) {
        if (events[k].peak_time_s < events[k - 1].peak_time_s) {
            throw config_error(std::string(which) + " spike list must be time sorted");
        }
    }
}

}  // namespace

std::vector<SpikeMatch> match_spikes(const std::vector<SpikeEvent>& a,
                                     const std::vector<SpikeEvent>& b, double window_s) {
    if (!(window_s >= 0.0)) throw config_error("matching window must be >= 0");
    require_sorted(a, "first");
    require_sorted(b, "second");

    std::vector<bool> taken(b.size(), false);
    std::vector<SpikeMatch> matches;
    for (const auto& ev : a) {
        double best_interval = std::numeric_limits<double>::infinity();
        std::size_t best = b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (taken[j]) continue;
            const double interval = std::abs(b[j].peak_time_s - ev.peak_time_s);
            if (interval < best_interval) {
                best_interval = interval;
                best = j;
            }
            if (b[j].peak_time_s - ev.peak_time_s > window_s) break;  // sorted: only grows
        }
        if (best == b.size() || best_interval > window_s) continue;
        taken[best] = true;
        SpikeMatch m;
        m.time_a_s = ev.peak_time_s;
        m.time_b_s = b[best].peak_time_s;
        m.interval_s = best_interval;
        m.polarity = (ev.prominence_mv > 0.0 && b[best].prominence_mv > 0.0)
                         ? Polarity::increase
                         : Polarity::decrease;
        matches.push_back(m);
    }
    return matches;
}

std::vector<double> match_interval_series(const std::vector<SpikeMatch>& matches) {
    std::vector<double> intervals;
    intervals.reserve(matches.size());
    for (const auto& m : matches) intervals.push_back(m.interval_s);
    return intervals;
}

std::vector<WavePacket> detect_wave_packets(const std::vector<SpikeEvent>& events,
                                            double packet_isi_s, int min_spikes) {
    if (min_spikes < 1) throw config_error("min_spikes must be >= 1");
    if (!(packet_isi_s > 0.0)) throw config_error("packet ISI threshold must be > 0");
    require_sorted(events, "input");

    std::vector<WavePacket> packets;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= events.size(); ++k) {
        const bool run_breaks =
            k == events.size() ||
            events[k].peak_time_s - events[k - 1].peak_time_s > packet_isi_s;
        if (!run_breaks) continue;
        const std::size_t run_len = k - run_start;
        if (run_len >= static_cast<std::size_t>(min_spikes)) {
            WavePacket p;
            p.start_s = events[run_start].peak_time_s;
            p.end_s = events[k - 1].peak_time_s;
            for (std::size_t idx = run_start; idx < k; ++idx) {
                p.spike_indices.push_back(idx);
                p.amplitudes_mv.push_back(events[idx].amplitude_mv);
                p.widths_s.push_back(events[idx].width_s);
            }
            packets.push_back(std::move(p));
        }
        run_start = k;
    }
    return packets;
}

PacketProfile packet_profile(const WavePacket& packet) {
    if (packet.spike_indices.empty()) throw config_error("empty wave packet");
    return PacketProfile{packet.amplitudes_mv, packet.widths_s};
}

std::vector<RatePoint> spike_rate_series(const std::vector<SpikeEvent>& events,
                                         int window_isis) {
    if (window_isis < 1) throw config_error("rate window must be >= 1 ISI");
    require_sorted(events, "input");
    std::vector<RatePoint> rates;
    const auto w = static_cast<std::size_t>(window_isis);
    if (events.size() <= w) return rates;
    for (std::size_t i = 0; i + w < events.size(); ++i) {
        const double span = events[i + w].peak_time_s - events[i].peak_time_s;
        if (span <= 0.0) continue;
        rates.push_back(RatePoint{events[i + w].peak_time_s,
                                  static_cast<double>(window_isis) / span});
    }
    return rates;
}

}  // namespace mycolex
