#ifndef MYCOLEX_MULTICHANNEL_HPP
#define MYCOLEX_MULTICHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mycolex/detect.hpp"

namespace mycolex {

enum class Polarity { increase, decrease };

// Pair of spikes on two channels considered the same event.
struct SpikeMatch {
    double time_a_s = 0.0;
    double time_b_s = 0.0;
    double interval_s = 0.0;  // |t_a - t_b|, <= the matching window
    Polarity polarity = Polarity::increase;
};

// Greedy one-to-one matching in time order: each spike of `a` takes the
// nearest still-unmatched spike of `b` within window_s (ties to the earlier
// b spike). Polarity is increase when both peaks exceed their local averages
// (signed prominence positive on both), decrease otherwise. Both inputs must
// be time sorted.
std::vector<SpikeMatch> match_spikes(const std::vector<SpikeEvent>& a,
                                     const std::vector<SpikeEvent>& b, double window_s);

// Match intervals in temporal order, for trend inspection.
std::vector<double> match_interval_series(const std::vector<SpikeMatch>& matches);

// Dense run of spikes whose consecutive ISIs stay below the packet threshold.
struct WavePacket {
    std::vector<std::size_t> spike_indices;  // into the input event list
    double start_s = 0.0;
    double end_s = 0.0;
    std::vector<double> amplitudes_mv;
    std::vector<double> widths_s;
};

// Maximal runs of at least min_spikes consecutive spikes with every ISI
// <= packet_isi_s. Events must be time sorted.
std::vector<WavePacket> detect_wave_packets(const std::vector<SpikeEvent>& events,
                                            double packet_isi_s, int min_spikes = 3);

struct PacketProfile {
    std::vector<double> amplitude_series;
    std::vector<double> width_series;
};

// Per-spike amplitude and width evolution across the packet.
PacketProfile packet_profile(const WavePacket& packet);

struct RatePoint {
    double time_s = 0.0;
    double rate_hz = 0.0;
};

// Spiking-rate curve estimated over a sliding window of window_isis
// consecutive intervals: rate at the window's end time is
// window_isis / (t[i+window_isis] - t[i]).
std::vector<RatePoint> spike_rate_series(const std::vector<SpikeEvent>& events,
                                         int window_isis = 10);

}  // namespace mycolex

#endif
