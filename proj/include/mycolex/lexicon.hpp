#ifndef MYCOLEX_LEXICON_HPP
#define MYCOLEX_LEXICON_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mycolex/detect.hpp"

namespace mycolex {

// One bit per sample; bit i is 1 iff a spike peaks at sample i.
struct BinarySpikeString {
    std::vector<std::uint8_t> bits;

    std::size_t length() const { return bits.size(); }
    std::int64_t popcount() const;
    std::vector<std::int64_t> one_positions() const;
};

BinarySpikeString to_binary_string(const std::vector<SpikeEvent>& events,
                                   std::int64_t n_samples);

// Ordered word lengths (spikes per train) for one channel and one theta.
struct Sentence {
    std::string channel;
    double theta_s = 0.0;
    std::vector<int> word_lengths;
};

// Groups consecutive spikes whose gap is <= theta_s into one word ("not more
// than theta"); a strictly larger gap starts the next word. Events must be
// time sorted.
Sentence group_words(const std::vector<SpikeEvent>& events, double theta_s,
                     const std::string& channel = "");

// theta = multiplier * mean ISI, multiplier in {1, 2}. Throws when the stats
// carry no mean ISI.
double theta_for(const SpikeStats& stats, int multiplier);

struct WordLengthDistribution {
    std::map<int, std::int64_t> counts;
    std::int64_t total_words = 0;
};

WordLengthDistribution word_length_distribution(const Sentence& sentence);
WordLengthDistribution word_length_distribution(const std::vector<Sentence>& sentences);

double mean_word_length(const Sentence& sentence);
double mean_word_length(const std::vector<Sentence>& sentences);

struct PowerLawFit {
    double coefficient = 0.0;   // A in count ~= A * l^c
    double exponent = 0.0;      // c, negative for decaying distributions
    double rms_residual = 0.0;  // in log space

    // Coefficient in [20, 26] and |exponent| in [0.6, 0.8], the range
    // reported for fungal word-length distributions.
    bool in_reference_range() const;
};

// Ordinary least squares of log(count) against log(length) over lengths with
// nonzero counts. Requires at least two distinct lengths.
PowerLawFit fit_power_law(const std::map<int, double>& counts);
PowerLawFit fit_power_law(const WordLengthDistribution& dist);

}  // namespace mycolex

#endif
