#include <doctest.h>

#include <cmath>
#include <vector>

#include "mycolex/detect.hpp"
#include "mycolex/errors.hpp"
#include "mycolex/rng.hpp"
#include "oracles.hpp"

using namespace mycolex;

namespace {

// Triangular pulse of height h and base width `base` centered at `center`.
void add_pulse(std::vector<double>& x, std::int64_t center, double h, std::int64_t base) {
    const double half = static_cast<double>(base) / 2.0;
    for (std::int64_t k = -base / 2; k <= base / 2; ++k) {
        const std::int64_t i = center + k;
        if (i < 0 || i >= static_cast<std::int64_t>(x.size())) continue;
        const double shape = 1.0 - std::abs(static_cast<double>(k)) / half;
        if (shape > 0.0) x[static_cast<std::size_t>(i)] += h * shape;
    }
}

}  // namespace

TEST_CASE("moving average: zeros and the literal 4w divisor") {
    const std::vector<double> zeros(64, 0.0);
    const auto a = moving_average(zeros, 3);
    for (std::size_t i = 6; i < zeros.size() - 6; ++i) CHECK(a[i] == 0.0);

    // Constant 4.0 with w=1: sum of 5 samples / divisor 4 = 5.0.
    const std::vector<double> constant(16, 4.0);
    const auto c = moving_average(constant, 1);
    for (std::size_t i = 2; i < constant.size() - 2; ++i) {
        CHECK(c[i] == doctest::Approx(5.0).epsilon(1e-15));
    }
    CHECK(std::isnan(c[0]));
    CHECK(std::isnan(c[1]));
    CHECK(std::isnan(c[constant.size() - 1]));
}

TEST_CASE("moving average matches direct summation exactly") {
    Rng rng(11);
    std::vector<double> x(11);
    for (auto& v : x) v = rng.normal(0.0, 2.0);
    const auto a = moving_average(x, 1);
    for (std::int64_t i = 2; i < 9; ++i) {
        CHECK(a[static_cast<std::size_t>(i)] ==
              doctest::Approx(oracles::naive_window_average(x, i, 1)).epsilon(1e-12));
    }

    std::vector<double> y(200);
    for (auto& v : y) v = rng.normal(1.0, 3.0);
    const auto ay = moving_average(y, 12);
    for (std::int64_t i = 24; i < 176; ++i) {
        CHECK(ay[static_cast<std::size_t>(i)] ==
              doctest::Approx(oracles::naive_window_average(y, i, 12)).epsilon(1e-12));
    }
}

TEST_CASE("moving average: series too short") {
    const std::vector<double> x(8, 0.0);
    CHECK_THROWS_AS(moving_average(x, 2), config_error);  // needs 9
}

TEST_CASE("detect: all-zero signal yields nothing") {
    const std::vector<double> zeros(2000, 0.0);
    CHECK(detect_spikes(zeros, DetectorParams{50, 0.1, 100}).empty());
}

TEST_CASE("detect: single triangular pulse found at its center") {
    std::vector<double> x(1000, 0.0);
    add_pulse(x, 500, 1.0, 20);
    const auto events = detect_spikes(x, DetectorParams{50, 0.1, 100});
    REQUIRE(events.size() == 1);
    CHECK(events[0].peak_index == 500);
    CHECK(events[0].amplitude_mv > 0.9);
    CHECK(events[0].prominence_mv > 0.0);
    CHECK(events[0].width_s > 0.0);

    // Brute force: the prominence maximum over all defined indices is unique
    // and sits at 500.
    const auto a = moving_average(x, 50);
    std::int64_t argmax = -1;
    double best = -1.0;
    for (std::int64_t i = 100; i < 900; ++i) {
        const double g = std::abs(x[static_cast<std::size_t>(i)]) -
                         std::abs(a[static_cast<std::size_t>(i)]);
        if (g > best) {
            best = g;
            argmax = i;
        }
    }
    CHECK(argmax == 500);
}

TEST_CASE("detect: non-maximum suppression keeps the stronger of two close pulses") {
    std::vector<double> x(1200, 0.0);
    add_pulse(x, 500, 1.0, 20);
    add_pulse(x, 550, 0.5, 20);
    const auto events = detect_spikes(x, DetectorParams{50, 0.1, 100});
    REQUIRE(events.size() == 1);
    CHECK(events[0].peak_index == 500);
}

TEST_CASE("detect: separation and threshold hold on random signals") {
    Rng rng(23);
    const DetectorParams p{20, 0.2, 35};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x(800, 0.0);
        const int pulses = 1 + static_cast<int>(rng.uniform_int(0, 10));
        for (int k = 0; k < pulses; ++k) {
            add_pulse(x, static_cast<std::int64_t>(rng.uniform_int(0, 799)),
                      0.3 + rng.uniform01() * 2.0, 12);
        }
        const auto events = detect_spikes(x, p);
        const auto a = moving_average(x, p.w);
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto idx = static_cast<std::size_t>(events[i].peak_index);
            CHECK(std::abs(x[idx]) - std::abs(a[idx]) > p.delta);  // re-check post hoc
            if (i > 0) CHECK(events[i].peak_index - events[i - 1].peak_index > p.d);
        }
    }
}

TEST_CASE("detect: scaling signal and delta together keeps the peak set") {
    Rng rng(29);
    std::vector<double> x(900, 0.0);
    for (int k = 0; k < 6; ++k) {
        add_pulse(x, 120 + 130 * k, 0.4 + rng.uniform01(), 16);
    }
    const DetectorParams p{30, 0.15, 50};
    const auto base = detect_spikes(x, p);
    const double k = 7.0;
    std::vector<double> scaled = x;
    for (auto& v : scaled) v *= k;
    const auto scaled_events = detect_spikes(scaled, DetectorParams{p.w, p.delta * k, p.d});
    REQUIRE(scaled_events.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(scaled_events[i].peak_index == base[i].peak_index);
    }
}

TEST_CASE("detect is deterministic") {
    std::vector<double> x(600, 0.0);
    add_pulse(x, 200, 1.0, 14);
    add_pulse(x, 400, 0.8, 14);
    const DetectorParams p{25, 0.1, 60};
    const auto first = detect_spikes(x, p);
    const auto second = detect_spikes(x, p);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].peak_index == second[i].peak_index);
        CHECK(first[i].amplitude_mv == second[i].amplitude_mv);
        CHECK(first[i].width_s == second[i].width_s);
    }
}

TEST_CASE("detect: negative excursions carry a negative prominence") {
    // g works on |x| and |a|, so a downward spike is still found; the signed
    // prominence keeps its direction for polarity classification.
    std::vector<double> x(1000, 0.0);
    add_pulse(x, 500, -1.0, 20);
    const auto events = detect_spikes(x, DetectorParams{50, 0.1, 100});
    REQUIRE(events.size() == 1);
    CHECK(events[0].peak_index == 500);
    CHECK(events[0].prominence_mv < 0.0);
    CHECK(events[0].amplitude_mv == doctest::Approx(-events[0].prominence_mv));
}

TEST_CASE("detect: width capped at 4w") {
    // Alternating-sign oscillation: |x| is large everywhere while the signed
    // neighbourhood average cancels, so g stays above delta/2 across the
    // whole interior and the run would be far wider than 4w.
    std::vector<double> x(1000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const DetectorParams p{20, 0.5, 10};
    const auto events = detect_spikes(x, p);
    REQUIRE(!events.empty());
    for (const auto& ev : events) {
        CHECK(ev.width_s <= 4.0 * static_cast<double>(p.w));
    }
    CHECK(events[0].width_s == 4.0 * static_cast<double>(p.w));
}

TEST_CASE("spike stats") {
    auto make = [](std::vector<double> times, std::vector<double> amps) {
        std::vector<SpikeEvent> events;
        for (std::size_t i = 0; i < times.size(); ++i) {
            SpikeEvent e;
            e.peak_time_s = times[i];
            e.amplitude_mv = amps[i];
            events.push_back(e);
        }
        return events;
    };

    SUBCASE("periodic peaks") {
        const auto st = spike_stats(make({0, 60, 120}, {1, 1, 1}));
        CHECK(st.count == 3);
        CHECK(*st.mean_isi_s == doctest::Approx(60.0));
        CHECK(*st.isi_stddev_s == doctest::Approx(0.0));
        CHECK(*st.mean_amplitude_mv == doctest::Approx(1.0));
    }
    SUBCASE("single event: amplitude only") {
        const auto st = spike_stats(make({42}, {0.5}));
        CHECK(st.count == 1);
        CHECK(!st.mean_isi_s.has_value());
        CHECK(st.mean_amplitude_mv.has_value());
    }
    SUBCASE("empty") {
        const auto st = spike_stats({});
        CHECK(st.count == 0);
        CHECK(!st.mean_isi_s.has_value());
        CHECK(!st.mean_amplitude_mv.has_value());
    }
    SUBCASE("two peaks 116 minutes apart") {
        const auto st = spike_stats(make({0, 116 * 60.0}, {0.2, 0.2}));
        CHECK(*st.mean_isi_s == doctest::Approx(116 * 60.0));
    }
    SUBCASE("unsorted input rejected") {
        CHECK_THROWS_AS(spike_stats(make({10, 5}, {1, 1})), config_error);
    }
}

TEST_CASE("species presets") {
    const auto cm = species_preset("c_militaris");
    CHECK(cm.w == 200);
    CHECK(cm.delta == 0.1);
    CHECK(cm.d == 300);
    const auto fv = species_preset("f_velutipes");
    CHECK(fv.w == 200);
    CHECK(fv.delta == 0.1);
    CHECK(fv.d == 300);
    const auto sc = species_preset("s_commune");
    CHECK(sc.w == 100);
    CHECK(sc.delta == 0.005);
    CHECK(sc.d == 100);
    const auto on = species_preset("o_nidiformis");
    CHECK(on.w == 50);
    CHECK(on.delta == 0.003);
    CHECK(on.d == 100);
    CHECK_THROWS_AS(species_preset("p_djamor"), config_error);
}
