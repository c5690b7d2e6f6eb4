#include "mycolex/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mycolex/errors.hpp"

namespace mycolex {

void validate_params(const DetectorParams& p) {
    if (p.w < 1) throw config_error("w must be >= 1");
    if (!(p.delta > 0.0)) throw config_error("delta must be > 0");
    if (p.d < 0) throw config_error("d must be >= 0");
}

DetectorParams species_preset(const std::string& species) {
    if (species == "c_militaris" || species == "f_velutipes") {
        return DetectorParams{200, 0.1, 300};
    }
    if (species == "s_commune") {
        return DetectorParams{100, 0.005, 100};
    }
    if (species == "o_nidiformis") {
        return DetectorParams{50, 0.003, 100};
    }
    throw config_error("unknown species '" + species +
                       "' (expected c_militaris, f_velutipes, s_commune or o_nidiformis)");
}

std::vector<double> moving_average(std::span<const double> x, std::int64_t w) {
    if (w < 1) throw config_error("w must be >= 1");
    const auto n = static_cast<std::int64_t>(x.size());
    if (n < 4 * w + 1) {
        throw config_error("series too short: need at least " + std::to_string(4 * w + 1) +
                           " samples, got " + std::to_string(n));
    }
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)];
    }
    std::vector<double> a(static_cast<std::size_t>(n), std::numeric_limits<double>::quiet_NaN());
    const double divisor = 4.0 * static_cast<double>(w);
    for (std::int64_t i = 2 * w; i < n - 2 * w; ++i) {
        const double sum = prefix[static_cast<std::size_t>(i + 2 * w + 1)] -
                           prefix[static_cast<std::size_t>(i - 2 * w)];
        a[static_cast<std::size_t>(i)] = sum / divisor;
    }
    return a;
}

std::vector<SpikeEvent> detect_spikes(std::span<const double> x, const DetectorParams& p,
                                      double sample_interval_s, const std::string& channel) {
    validate_params(p);
    if (sample_interval_s <= 0.0) throw config_error("sample interval must be positive");
    const auto n = static_cast<std::int64_t>(x.size());
    const std::vector<double> a = moving_average(x, p.w);  // throws if too short

    const std::int64_t lo = 2 * p.w;
    const std::int64_t hi = n - 2 * p.w;  // g defined on [lo, hi)
    auto g = [&](std::int64_t i) {
        return std::abs(x[static_cast<std::size_t>(i)]) - std::abs(a[static_cast<std::size_t>(i)]);
    };

    // One candidate per contiguous run of g > delta: the prominence argmax,
    // earliest index on ties.
    std::vector<std::int64_t> candidates;
    std::int64_t i = lo;
    while (i < hi) {
        if (g(i) > p.delta) {
            std::int64_t best = i;
            double best_g = g(i);
            std::int64_t j = i + 1;
            while (j < hi && g(j) > p.delta) {
                if (g(j) > best_g) {
                    best_g = g(j);
                    best = j;
                }
                ++j;
            }
            candidates.push_back(best);
            i = j;
        } else {
            ++i;
        }
    }

    // Non-maximum suppression at distance d, strongest first.
    std::vector<std::int64_t> order(candidates.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<std::int64_t>(k);
    std::sort(order.begin(), order.end(), [&](std::int64_t lhs, std::int64_t rhs) {
        const double gl = g(candidates[static_cast<std::size_t>(lhs)]);
        const double gr = g(candidates[static_cast<std::size_t>(rhs)]);
        if (gl != gr) return gl > gr;
        return candidates[static_cast<std::size_t>(lhs)] < candidates[static_cast<std::size_t>(rhs)];
    });
    std::vector<std::int64_t> accepted;
    for (std::int64_t k : order) {
        const std::int64_t idx = candidates[static_cast<std::size_t>(k)];
        bool keep = true;
        for (std::int64_t other : accepted) {
            if (std::abs(idx - other) <= p.d) {
                keep = false;
                break;
            }
        }
        if (keep) accepted.push_back(idx);
    }
    std::sort(accepted.begin(), accepted.end());

    std::vector<SpikeEvent> events;
    events.reserve(accepted.size());
    const double half = p.delta / 2.0;
    for (std::int64_t idx : accepted) {
        SpikeEvent ev;
        ev.channel = channel;
        ev.peak_index = idx;
        ev.peak_time_s = static_cast<double>(idx) * sample_interval_s;
        const double signed_prom =
            x[static_cast<std::size_t>(idx)] - a[static_cast<std::size_t>(idx)];
        ev.prominence_mv = signed_prom;
        ev.amplitude_mv = std::abs(signed_prom);

        std::int64_t left = idx;
        while (left - 1 >= lo && g(left - 1) > half) --left;
        std::int64_t right = idx;
        while (right + 1 < hi && g(right + 1) > half) ++right;
        std::int64_t span = right - left + 1;
        span = std::min(span, 4 * p.w);
        ev.width_s = static_cast<double>(span) * sample_interval_s;
        events.push_back(std::move(ev));
    }
    return events;
}

SpikeStats spike_stats(const std::vector<SpikeEvent>& events) {
    for (std::size_t k = 1; k < events.size(); ++k) {
        if (events[k].peak_time_s < events[k - 1].peak_time_s) {
            throw config_error("events must be sorted by time");
        }
    }
    SpikeStats st;
    st.count = static_cast<std::int64_t>(events.size());
    if (!events.empty()) {
        double sum = 0.0;
        for (const auto& e : events) sum += e.amplitude_mv;
        const double mean = sum / static_cast<double>(events.size());
        double var = 0.0;
        for (const auto& e : events) {
            var += (e.amplitude_mv - mean) * (e.amplitude_mv - mean);
        }
        var /= static_cast<double>(events.size());
        st.mean_amplitude_mv = mean;
        st.amplitude_stddev_mv = std::sqrt(var);
    }
    if (events.size() >= 2) {
        std::vector<double> isi;
        isi.reserve(events.size() - 1);
        for (std::size_t k = 1; k < events.size(); ++k) {
            isi.push_back(events[k].peak_time_s - events[k - 1].peak_time_s);
        }
        double sum = 0.0;
        for (double v : isi) sum += v;
        const double mean = sum / static_cast<double>(isi.size());
        double var = 0.0;
        for (double v : isi) var += (v - mean) * (v - mean);
        var /= static_cast<double>(isi.size());
        st.mean_isi_s = mean;
        st.isi_stddev_s = std::sqrt(var);
    }
    return st;
}

}  // namespace mycolex
