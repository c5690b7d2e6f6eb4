#include "mycolex/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "mycolex/errors.hpp"
#include "mycolex/rng.hpp"

namespace mycolex {

namespace {

constexpr double kMinIsiS = 60.0;
constexpr double kIntraTrainFraction = 0.78;  // fraction of gaps inside a train

void validate_profile(const SpeciesProfile& p) {
    if (!(p.mean_isi_min > 0.0) || p.isi_stddev_min < 0.0 ||
        !(p.mean_amplitude_mv > 0.0) || p.amplitude_stddev_mv < 0.0 || p.spike_count < 0) {
        throw config_error("species profile fields must be positive");
    }
}

void validate_options(const SynthOptions& o) {
    if (o.pulse_shape != "triangular") {
        throw config_error("unsupported pulse shape '" + o.pulse_shape + "'");
    }
    if (!(o.pulse_width_s >= 2.0)) throw config_error("pulse width must be >= 2 s");
    if (o.noise_mv < 0.0) throw config_error("noise level must be >= 0");
    if (o.channels < 1) throw config_error("need at least one channel");
}

struct PlantedSpike {
    double time_s;
    double amplitude_mv;
};

// Two-scale ISI mixture. The train strength c = min(cv, 0.8) moves the
// intra-train mean below the profile mean and the inter-train mean above it
// while keeping the overall expectation equal to the profile mean.
struct IsiModel {
    double intra_mean, intra_sd;
    double inter_mean, inter_sd;

    IsiModel(double mean_s, double stddev_s) {
        const double c = std::min(stddev_s / mean_s, 0.8);
        intra_mean = mean_s * (1.0 - 0.6 * c);
        inter_mean = (mean_s - kIntraTrainFraction * intra_mean) / (1.0 - kIntraTrainFraction);
        intra_sd = 0.15 * c * intra_mean;
        inter_sd = 0.25 * c * inter_mean;
    }

    double draw(Rng& rng) const {
        const bool intra = rng.uniform01() < kIntraTrainFraction;
        return intra ? rng.truncated_normal(intra_mean, intra_sd, kMinIsiS)
                     : rng.truncated_normal(inter_mean, inter_sd, kMinIsiS);
    }
};

double draw_amplitude(Rng& rng, double mean, double stddev) {
    return rng.truncated_normal(mean, stddev, 0.1 * mean);
}

ChannelSeries render_channel(const std::string& name,
                             const std::vector<PlantedSpike>& spikes,
                             const SynthOptions& options, double lead_s, Rng& rng) {
    double last = lead_s;
    if (!spikes.empty()) last = spikes.back().time_s;
    const auto n = static_cast<std::int64_t>(std::llround(last + lead_s));

    ChannelSeries ch;
    ch.name = name;
    ch.values.assign(static_cast<std::size_t>(n), 0.0);
    const double half_width = options.pulse_width_s / 2.0;
    for (const auto& spike : spikes) {
        const std::int64_t center = std::llround(spike.time_s);
        const auto reach = static_cast<std::int64_t>(std::ceil(half_width)) - 1;
        for (std::int64_t k = -reach; k <= reach; ++k) {
            const std::int64_t idx = center + k;
            if (idx < 0 || idx >= n) continue;
            const double shape = 1.0 - std::abs(static_cast<double>(k)) / half_width;
            if (shape > 0.0) ch.values[static_cast<std::size_t>(idx)] += spike.amplitude_mv * shape;
        }
    }
    if (options.noise_mv > 0.0) {
        for (auto& v : ch.values) v += rng.normal(0.0, options.noise_mv);
    }
    return ch;
}

std::vector<SpikeEvent> truth_events(const std::string& channel,
                                     const std::vector<PlantedSpike>& spikes,
                                     const SynthOptions& options) {
    std::vector<SpikeEvent> events;
    events.reserve(spikes.size());
    for (const auto& spike : spikes) {
        SpikeEvent ev;
        ev.channel = channel;
        ev.peak_index = std::llround(spike.time_s);
        ev.peak_time_s = static_cast<double>(ev.peak_index);
        ev.amplitude_mv = spike.amplitude_mv;
        ev.width_s = options.pulse_width_s;
        ev.prominence_mv = spike.amplitude_mv;
        events.push_back(std::move(ev));
    }
    return events;
}

void append_channel(SynthResult& result, ChannelSeries&& ch, std::vector<SpikeEvent>&& truth) {
    result.recording.channels.push_back(std::move(ch));
    result.truth.insert(result.truth.end(), std::make_move_iterator(truth.begin()),
                        std::make_move_iterator(truth.end()));
}

void equalize_lengths(Recording& rec) {
    std::size_t n = 0;
    for (const auto& ch : rec.channels) n = std::max(n, ch.values.size());
    for (auto& ch : rec.channels) ch.values.resize(n, 0.0);
}

double lead_in_s(const SynthOptions& options) {
    // Keeps every planted peak clear of the detector's 2w boundary for all
    // species presets (w <= 200).
    return std::max(1000.0, 2.0 * options.pulse_width_s);
}

}  // namespace

SpeciesProfile species_profile(const std::string& species) {
    if (species == "c_militaris") return SpeciesProfile{116.0, 140.0, 0.2, 0.04, 881};
    if (species == "f_velutipes") return SpeciesProfile{102.0, 110.0, 0.3, 0.075, 958};
    if (species == "s_commune") return SpeciesProfile{41.0, 45.0, 0.03, 0.0075, 530};
    if (species == "o_nidiformis") return SpeciesProfile{92.0, 150.0, 0.007, 0.00175, 1117};
    throw config_error("unknown species '" + species +
                       "' (expected c_militaris, f_velutipes, s_commune or o_nidiformis)");
}

SynthResult generate_recording(const SpeciesProfile& profile, std::uint64_t seed,
                               const SynthOptions& options) {
    validate_profile(profile);
    validate_options(options);

    SynthResult result;
    result.recording.sample_interval_s = 1.0;
    result.recording.label = "synthetic";
    const double lead = lead_in_s(options);
    const IsiModel isi(profile.mean_isi_min * 60.0, profile.isi_stddev_min * 60.0);

    for (int c = 0; c < options.channels; ++c) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::vector<PlantedSpike> spikes;
        spikes.reserve(static_cast<std::size_t>(profile.spike_count));
        double t = lead;
        for (std::int64_t k = 0; k < profile.spike_count; ++k) {
            if (k > 0) t += isi.draw(rng);
            spikes.push_back(PlantedSpike{
                t, draw_amplitude(rng, profile.mean_amplitude_mv, profile.amplitude_stddev_mv)});
        }
        const std::string name = options.channel_prefix + std::to_string(c);
        auto series = render_channel(name, spikes, options, lead, rng);
        append_channel(result, std::move(series), truth_events(name, spikes, options));
    }
    equalize_lengths(result.recording);
    return result;
}

SynthResult generate_burst(const SpeciesProfile& base, int burst_spikes, double burst_isi_s,
                           std::uint64_t seed, const SynthOptions& options,
                           double burst_amplitude_mv, double burst_amplitude_stddev_mv) {
    validate_profile(base);
    validate_options(options);
    if (burst_spikes < 2) throw config_error("burst needs at least 2 spikes");
    if (!(burst_isi_s > 0.0)) throw config_error("burst ISI must be > 0");
    if (!(burst_amplitude_mv > 0.0) || burst_amplitude_stddev_mv < 0.0) {
        throw config_error("burst amplitude parameters must be positive");
    }

    SynthResult result;
    result.recording.sample_interval_s = 1.0;
    result.recording.label = "synthetic-burst";
    const double lead = lead_in_s(options);
    const double mean_isi_s = base.mean_isi_min * 60.0;
    // Background is near periodic so the embedded packet is the only dense
    // run; dispersion is damped to 10% of the mean.
    const double background_sd = 0.1 * mean_isi_s;

    for (int c = 0; c < options.channels; ++c) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::vector<PlantedSpike> spikes;
        double t = lead;
        const std::int64_t background_before = base.spike_count / 2;
        const std::int64_t background_after = base.spike_count - background_before;
        for (std::int64_t k = 0; k < background_before; ++k) {
            if (k > 0) t += rng.truncated_normal(mean_isi_s, background_sd, kMinIsiS);
            spikes.push_back(PlantedSpike{
                t, draw_amplitude(rng, base.mean_amplitude_mv, base.amplitude_stddev_mv)});
        }
        for (int k = 0; k < burst_spikes; ++k) {
            t += (k == 0 && background_before > 0) ? mean_isi_s : burst_isi_s;
            if (k == 0 && background_before == 0) t = lead;
            spikes.push_back(PlantedSpike{
                t, draw_amplitude(rng, burst_amplitude_mv, burst_amplitude_stddev_mv)});
        }
        for (std::int64_t k = 0; k < background_after; ++k) {
            t += (k == 0) ? mean_isi_s : rng.truncated_normal(mean_isi_s, background_sd, kMinIsiS);
            spikes.push_back(PlantedSpike{
                t, draw_amplitude(rng, base.mean_amplitude_mv, base.amplitude_stddev_mv)});
        }
        const std::string name = options.channel_prefix + std::to_string(c);
        auto series = render_channel(name, spikes, options, lead, rng);
        append_channel(result, std::move(series), truth_events(name, spikes, options));
    }
    equalize_lengths(result.recording);
    return result;
}

}  // namespace mycolex
