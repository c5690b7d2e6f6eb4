#include <doctest.h>

#include <cmath>

#include "mycolex/errors.hpp"
#include "mycolex/lexicon.hpp"
#include "mycolex/rng.hpp"
#include "oracles.hpp"

using namespace mycolex;

namespace {

std::vector<SpikeEvent> events_at(const std::vector<double>& times) {
    std::vector<SpikeEvent> events;
    for (double t : times) {
        SpikeEvent e;
        e.peak_time_s = t;
        e.peak_index = static_cast<std::int64_t>(t);
        events.push_back(e);
    }
    return events;
}

}  // namespace

TEST_CASE("binary string") {
    SUBCASE("no events") {
        const auto s = to_binary_string({}, 5);
        CHECK(s.bits == std::vector<std::uint8_t>{0, 0, 0, 0, 0});
    }
    SUBCASE("peaks at 1 and 3") {
        const auto s = to_binary_string(events_at({1, 3}), 5);
        CHECK(s.bits == std::vector<std::uint8_t>{0, 1, 0, 1, 0});
    }
    SUBCASE("popcount equals event count; decode recovers indices") {
        Rng rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            const std::int64_t n = 20 + static_cast<std::int64_t>(rng.uniform_int(0, 200));
            std::set<std::int64_t> indices;
            const int k = static_cast<int>(rng.uniform_int(0, 15));
            while (static_cast<int>(indices.size()) < k) {
                indices.insert(static_cast<std::int64_t>(
                    rng.uniform_int(0, static_cast<std::uint64_t>(n - 1))));
            }
            std::vector<SpikeEvent> events;
            for (std::int64_t idx : indices) {
                SpikeEvent e;
                e.peak_index = idx;
                events.push_back(e);
            }
            const auto s = to_binary_string(events, n);
            CHECK(s.popcount() == static_cast<std::int64_t>(indices.size()));
            const auto ones = s.one_positions();
            CHECK(std::set<std::int64_t>(ones.begin(), ones.end()) == indices);
        }
    }
    SUBCASE("out-of-range peak rejected") {
        std::vector<SpikeEvent> events;
        SpikeEvent e;
        e.peak_index = 7;
        events.push_back(e);
        CHECK_THROWS_AS(to_binary_string(events, 5), config_error);
    }
}

TEST_CASE("group words") {
    SUBCASE("worked example") {
        const auto s = group_words(events_at({0, 10, 100, 105, 300}), 20.0);
        CHECK(s.word_lengths == std::vector<int>{2, 2, 1});
    }
    SUBCASE("empty") {
        CHECK(group_words({}, 20.0).word_lengths.empty());
    }
    SUBCASE("all close") {
        const auto s = group_words(events_at({0, 1, 2, 3, 4}), 10.0);
        CHECK(s.word_lengths == std::vector<int>{5});
    }
    SUBCASE("gap equal to theta stays in the word") {
        const auto s = group_words(events_at({0, 20}), 20.0);
        CHECK(s.word_lengths == std::vector<int>{2});
    }
    SUBCASE("unsorted input rejected") {
        CHECK_THROWS_AS(group_words(events_at({10, 5}), 20.0), config_error);
    }
    SUBCASE("matches the gap-partition oracle; word count identity") {
        Rng rng(17);
        for (int trial = 0; trial < 500; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(0, 60));
            std::vector<double> times;
            double t = 0.0;
            for (int i = 0; i < n; ++i) {
                t += rng.uniform01() * 50.0;
                times.push_back(t);
            }
            const double theta = 0.5 + rng.uniform01() * 40.0;
            const auto s = group_words(events_at(times), theta);
            CHECK(s.word_lengths == oracles::naive_gap_partition(times, theta));
            int total = 0;
            for (int l : s.word_lengths) total += l;
            CHECK(total == n);
            if (n > 0) {
                int big_gaps = 0;
                for (std::size_t i = 1; i < times.size(); ++i) {
                    if (times[i] - times[i - 1] > theta) ++big_gaps;
                }
                CHECK(static_cast<int>(s.word_lengths.size()) == 1 + big_gaps);
            }
        }
    }
    SUBCASE("coarser theta never increases the word count") {
        Rng rng(19);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> times;
            double t = 0.0;
            for (int i = 0; i < 40; ++i) {
                t += rng.uniform01() * 30.0;
                times.push_back(t);
            }
            const double t1 = 1.0 + rng.uniform01() * 10.0;
            const double t2 = t1 + rng.uniform01() * 10.0;
            const auto w1 = group_words(events_at(times), t1);
            const auto w2 = group_words(events_at(times), t2);
            CHECK(w1.word_lengths.size() >= w2.word_lengths.size());
        }
    }
}

TEST_CASE("theta_for") {
    SpikeStats stats;
    stats.mean_isi_s = 41.0 * 60.0;
    CHECK(theta_for(stats, 1) == doctest::Approx(2460.0));
    stats.mean_isi_s = 92.0 * 60.0;
    CHECK(theta_for(stats, 2) == doctest::Approx(11040.0));
    stats.mean_isi_s = 100.0;
    CHECK(theta_for(stats, 1) == doctest::Approx(100.0));

    SpikeStats none;
    CHECK_THROWS_AS(theta_for(none, 1), config_error);
    CHECK_THROWS_AS(theta_for(stats, 3), config_error);
}

TEST_CASE("word length distribution") {
    Sentence s;
    s.word_lengths = {1, 1, 2};
    const auto dist = word_length_distribution(s);
    CHECK(dist.total_words == 3);
    CHECK(dist.counts.at(1) == 2);
    CHECK(dist.counts.at(2) == 1);

    const auto empty = word_length_distribution(Sentence{});
    CHECK(empty.total_words == 0);
    CHECK(empty.counts.empty());

    SUBCASE("sum of l*count equals total spikes") {
        Rng rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            Sentence r;
            std::int64_t spikes = 0;
            const int words = static_cast<int>(rng.uniform_int(0, 80));
            for (int i = 0; i < words; ++i) {
                const int l = 1 + static_cast<int>(rng.uniform_int(0, 11));
                r.word_lengths.push_back(l);
                spikes += l;
            }
            const auto d = word_length_distribution(r);
            std::int64_t weighted = 0;
            for (const auto& [l, c] : d.counts) weighted += static_cast<std::int64_t>(l) * c;
            CHECK(weighted == spikes);
            CHECK(d.total_words == words);
        }
    }
}

TEST_CASE("mean word length") {
    Sentence s;
    s.word_lengths = {1, 2, 3};
    CHECK(mean_word_length(s) == doctest::Approx(2.0));
    CHECK_THROWS_AS(mean_word_length(Sentence{}), config_error);
}

TEST_CASE("power-law fit") {
    SUBCASE("exact synthetic data recovered to 1e-6") {
        std::map<int, double> counts;
        for (int l = 1; l <= 9; ++l) counts[l] = 22.0 * std::pow(l, -0.7);
        const auto fit = fit_power_law(counts);
        CHECK(fit.coefficient == doctest::Approx(22.0).epsilon(1e-6));
        CHECK(fit.exponent == doctest::Approx(-0.7).epsilon(1e-6));
        CHECK(fit.rms_residual < 1e-9);
        CHECK(fit.in_reference_range());
    }
    SUBCASE("residual below 1e-9 for arbitrary exact power laws") {
        Rng rng(37);
        for (int trial = 0; trial < 30; ++trial) {
            const double a = 1.0 + rng.uniform01() * 49.0;
            const double c = -2.0 + rng.uniform01() * 1.9;
            std::map<int, double> counts;
            for (int l = 1; l <= 12; ++l) counts[l] = a * std::pow(l, c);
            const auto fit = fit_power_law(counts);
            CHECK(fit.coefficient == doctest::Approx(a).epsilon(1e-7));
            CHECK(fit.exponent == doctest::Approx(c).epsilon(1e-7));
            CHECK(fit.rms_residual < 1e-9);
        }
    }
    SUBCASE("single length is an error") {
        CHECK_THROWS_AS(fit_power_law(std::map<int, double>{{3, 10.0}}), config_error);
    }
    SUBCASE("zero-count lengths are skipped") {
        std::map<int, double> counts{{1, 8.0}, {2, 0.0}, {4, 2.0}};
        CHECK_NOTHROW(fit_power_law(counts));
    }
    SUBCASE("reference range flag") {
        PowerLawFit fit;
        fit.coefficient = 23.0;
        fit.exponent = -0.7;
        CHECK(fit.in_reference_range());
        fit.coefficient = 10.0;
        CHECK(!fit.in_reference_range());
        fit.coefficient = 23.0;
        fit.exponent = -1.5;
        CHECK(!fit.in_reference_range());
    }
}
