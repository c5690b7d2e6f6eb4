#ifndef MYCOLEX_DETECT_HPP
#define MYCOLEX_DETECT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mycolex {

// Detector knobs. w is the neighbourhood half-scale in samples (the averaging
// window spans i-2w..i+2w), delta the prominence threshold in mV, d the
// minimum peak separation in samples.
struct DetectorParams {
    std::int64_t w = 100;
    double delta = 0.005;
    std::int64_t d = 100;
};

void validate_params(const DetectorParams& p);

// Named presets: c_militaris, f_velutipes, s_commune, o_nidiformis.
DetectorParams species_preset(const std::string& species);

struct SpikeEvent {
    std::string channel;
    std::int64_t peak_index = 0;
    double peak_time_s = 0.0;
    double amplitude_mv = 0.0;       // |x_peak - a_peak|
    double width_s = 0.0;
    double prominence_mv = 0.0;      // signed x_peak - a_peak, used for match polarity
};

struct SpikeStats {
    std::int64_t count = 0;
    std::optional<double> mean_isi_s;          // present when count >= 2
    std::optional<double> isi_stddev_s;        // population stddev
    std::optional<double> mean_amplitude_mv;   // present when count >= 1
    std::optional<double> amplitude_stddev_mv;
};

// Neighbourhood average a_i = (4w)^-1 * sum_{i-2w <= j <= i+2w} x_j.
// The divisor is 4w while the sum has 4w+1 terms; that is the definition in
// use, not a true mean. Returned vector has x.size() entries; indices outside
// [2w, n-2w) are NaN (a is undefined there). Requires n >= 4w+1.
std::vector<double> moving_average(std::span<const double> x, std::int64_t w);

// Prominence-threshold peak detection. A candidate is the argmax of
// g_i = |x_i| - |a_i| within each contiguous run where g > delta (earliest
// index on ties). Candidates are then pruned by non-maximum suppression:
// scanned in order of descending prominence (ties to the earlier index), a
// candidate is dropped if within d samples of an already accepted peak.
// amplitude = |x_peak - a_peak|; width = span of the contiguous g > delta/2
// run around the peak, capped at 4w samples. Events are returned sorted by
// time. No detection within 2w samples of either end.
std::vector<SpikeEvent> detect_spikes(std::span<const double> x, const DetectorParams& p,
                                      double sample_interval_s = 1.0,
                                      const std::string& channel = "");

// Mean and population stddev of consecutive peak intervals and of amplitudes.
// Events must be sorted by time.
SpikeStats spike_stats(const std::vector<SpikeEvent>& events);

}  // namespace mycolex

#endif
