#ifndef MYCOLEX_SYNTHGEN_HPP
#define MYCOLEX_SYNTHGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mycolex/detect.hpp"
#include "mycolex/recording.hpp"

namespace mycolex {

// Target statistics for a synthetic recording. Counts and means for the four
// named species follow the reported per-species spiking characteristics;
// stddevs control dispersion and, through it, how strongly spikes cluster
// into trains (see generate_recording).
struct SpeciesProfile {
    double mean_isi_min = 60.0;
    double isi_stddev_min = 30.0;
    double mean_amplitude_mv = 0.1;
    double amplitude_stddev_mv = 0.025;
    std::int64_t spike_count = 100;
};

// Presets: c_militaris, f_velutipes, s_commune, o_nidiformis.
SpeciesProfile species_profile(const std::string& species);

struct SynthOptions {
    std::string pulse_shape = "triangular";  // the only supported shape
    double pulse_width_s = 100.0;            // triangle base width
    double noise_mv = 0.0;                   // white gaussian noise stddev
    int channels = 1;
    std::string channel_prefix = "ch";
};

struct SynthResult {
    Recording recording;
    std::vector<SpikeEvent> truth;  // planted spikes, per channel, time sorted
};

// Deterministic synthetic recording: triangular pulses on a zero baseline at
// planted spike times, 1 sample per second. Inter-spike intervals come from
// a two-scale mixture of truncated normals (floor 60 s): short intra-train
// intervals with probability 0.78 and long inter-train gaps otherwise, with
// the two component means solved so the overall mean equals the profile
// mean. The separation between the scales grows with the profile's
// coefficient of variation (capped at 0.8); a zero stddev collapses both
// scales onto the mean and yields an exactly periodic train. Amplitudes are
// truncated normal with a floor at 10% of the mean. Ground truth amplitudes
// are pulse heights; ground truth widths are the pulse base width.
// The same seed always produces the same bytes.
SynthResult generate_recording(const SpeciesProfile& profile, std::uint64_t seed,
                               const SynthOptions& options = {});

// Background train from `base` (near-periodic, stddev damped to 10% of the
// mean) with one embedded dense packet of burst_spikes spikes burst_isi_s
// apart, amplitudes drawn around burst_amplitude_mv.
SynthResult generate_burst(const SpeciesProfile& base, int burst_spikes,
                           double burst_isi_s, std::uint64_t seed,
                           const SynthOptions& options = {},
                           double burst_amplitude_mv = 2.1,
                           double burst_amplitude_stddev_mv = 0.1);

}  // namespace mycolex

#endif
