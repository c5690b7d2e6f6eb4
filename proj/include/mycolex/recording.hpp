#ifndef MYCOLEX_RECORDING_HPP
#define MYCOLEX_RECORDING_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mycolex {

// One electrode pair's voltage trace, in mV. Values are finite after load.
struct ChannelSeries {
    std::string name;
    std::vector<double> values;
};

// Multichannel voltage recording sampled uniformly at sample_interval_s.
// All channels have equal length. Immutable by convention after construction.
struct Recording {
    double sample_interval_s = 1.0;
    std::vector<ChannelSeries> channels;
    std::string label;

    std::size_t n_samples() const {
        return channels.empty() ? 0 : channels.front().values.size();
    }
    double duration_s() const {
        return static_cast<double>(n_samples()) * sample_interval_s;
    }
};

// Throws config_error if channel lengths differ or the interval is not
// positive or a value is non-finite.
void validate_recording(const Recording& rec);

// Reads the canonical CSV format: header "t,<name1>,...,<nameN>", first
// column time in seconds, voltages in mV. The time column must be strictly
// increasing; its values are otherwise ignored and samples are treated as
// uniformly spaced at sample_interval_s. Voltages with |v| > 39 mV (half the
// 78 mV acquisition range) produce a warning on stderr but are kept.
// Missing or non-numeric cells and ragged rows are hard errors.
Recording load_recording(const std::string& path, double sample_interval_s = 1.0);

// Writes the canonical CSV: "\n" line endings, time as i * sample_interval_s,
// voltages with up to 6 significant digits. load(save(r)) == r for values
// already representable at that precision.
void save_recording(const Recording& rec, const std::string& path);

std::string recording_to_csv(const Recording& rec);
Recording recording_from_csv(const std::string& text, double sample_interval_s = 1.0);

// Samples with time in [start_s, end_s). Requires 0 <= start < end <= duration.
Recording slice_recording(const Recording& rec, double start_s, double end_s);

}  // namespace mycolex

#endif
