#include "mycolex/lexicon.hpp"

#include <cmath>

#include "mycolex/errors.hpp"

namespace mycolex {

std::int64_t BinarySpikeString::popcount() const {
    std::int64_t n = 0;
    for (std::uint8_t b : bits) n += b;
    return n;
}

std::vector<std::int64_t> BinarySpikeString::one_positions() const {
    std::vector<std::int64_t> pos;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) pos.push_back(static_cast<std::int64_t>(i));
    }
    return pos;
}

BinarySpikeString to_binary_string(const std::vector<SpikeEvent>& events,
                                   std::int64_t n_samples) {
    if (n_samples < 0) throw config_error("n_samples must be >= 0");
    BinarySpikeString s;
    s.bits.assign(static_cast<std::size_t>(n_samples), 0);
    for (const auto& ev : events) {
        if (ev.peak_index < 0 || ev.peak_index >= n_samples) {
            throw config_error("peak index " + std::to_string(ev.peak_index) +
                               " out of range [0, " + std::to_string(n_samples) + ")");
        }
        auto& bit = s.bits[static_cast<std::size_t>(ev.peak_index)];
        if (bit) {
            throw config_error("duplicate peak index " + std::to_string(ev.peak_index));
        }
        bit = 1;
    }
    return s;
}

Sentence group_words(const std::vector<SpikeEvent>& events, double theta_s,
                     const std::string& channel) {
    if (!(theta_s > 0.0)) throw config_error("theta must be > 0");
    Sentence sentence;
    sentence.channel = channel;
    sentence.theta_s = theta_s;
    if (events.empty()) return sentence;

    int current = 1;
    for (std::size_t k = 1; k < events.size(); ++k) {
        const double gap = events[k].peak_time_s - events[k - 1].peak_time_s;
        if (gap < 0.0) throw config_error("events must be sorted by time");
        if (gap <= theta_s) {
            ++current;
        } else {
            sentence.word_lengths.push_back(current);
            current = 1;
        }
    }
    sentence.word_lengths.push_back(current);
    return sentence;
}

double theta_for(const SpikeStats& stats, int multiplier) {
    if (multiplier != 1 && multiplier != 2) {
        throw config_error("theta multiplier must be 1 or 2");
    }
    if (!stats.mean_isi_s) {
        throw config_error("mean ISI unavailable (fewer than two spikes)");
    }
    return static_cast<double>(multiplier) * *stats.mean_isi_s;
}

WordLengthDistribution word_length_distribution(const Sentence& sentence) {
    WordLengthDistribution dist;
    for (int l : sentence.word_lengths) {
        ++dist.counts[l];
        ++dist.total_words;
    }
    return dist;
}

WordLengthDistribution word_length_distribution(const std::vector<Sentence>& sentences) {
    WordLengthDistribution dist;
    for (const auto& s : sentences) {
        for (int l : s.word_lengths) {
            ++dist.counts[l];
            ++dist.total_words;
        }
    }
    return dist;
}

double mean_word_length(const Sentence& sentence) {
    if (sentence.word_lengths.empty()) throw config_error("empty sentence");
    double sum = 0.0;
    for (int l : sentence.word_lengths) sum += l;
    return sum / static_cast<double>(sentence.word_lengths.size());
}

double mean_word_length(const std::vector<Sentence>& sentences) {
    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& s : sentences) {
        for (int l : s.word_lengths) {
            sum += l;
            ++n;
        }
    }
    if (n == 0) throw config_error("empty sentence");
    return sum / static_cast<double>(n);
}

bool PowerLawFit::in_reference_range() const {
    const double mag = std::abs(exponent);
    return coefficient >= 20.0 && coefficient <= 26.0 && mag >= 0.6 && mag <= 0.8;
}

PowerLawFit fit_power_law(const std::map<int, double>& counts) {
    // OLS on (log l, log count); zero-count lengths are skipped, not log(0).
    std::vector<double> xs, ys;
    for (const auto& [length, count] : counts) {
        if (count <= 0.0) continue;
        if (length < 1) throw config_error("word lengths must be >= 1");
        xs.push_back(std::log(static_cast<double>(length)));
        ys.push_back(std::log(count));
    }
    if (xs.size() < 2) {
        throw config_error("power-law fit needs at least two distinct word lengths");
    }
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw config_error("power-law fit needs at least two distinct word lengths");
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    PowerLawFit fit;
    fit.exponent = slope;
    fit.coefficient = std::exp(intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

PowerLawFit fit_power_law(const WordLengthDistribution& dist) {
    std::map<int, double> counts;
    for (const auto& [length, count] : dist.counts) {
        counts[length] = static_cast<double>(count);
    }
    return fit_power_law(counts);
}

}  // namespace mycolex
