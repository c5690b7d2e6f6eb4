#include "mycolex/recording.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mycolex/errors.hpp"

namespace mycolex {

namespace {

constexpr double kVoltageWarnLimit = 39.0;  // half the 78 mV acquisition range

double parse_number(std::string_view cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || cell.empty()) {
        throw io_error("line " + std::to_string(line_no) + ": non-numeric cell '" +
                       std::string(cell) + "'");
    }
    if (!std::isfinite(value)) {
        throw io_error("line " + std::to_string(line_no) + ": non-finite value");
    }
    return value;
}

void split_csv_line(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

void format_value(std::string& out, double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
    out += buf;
}

}  // namespace

void validate_recording(const Recording& rec) {
    if (rec.sample_interval_s <= 0.0) {
        throw config_error("sample interval must be positive");
    }
    const std::size_t n = rec.n_samples();
    for (const auto& ch : rec.channels) {
        if (ch.values.size() != n) {
            throw config_error("channel '" + ch.name + "' length mismatch");
        }
        for (double v : ch.values) {
            if (!std::isfinite(v)) {
                throw config_error("channel '" + ch.name + "' has non-finite value");
            }
        }
    }
}

Recording recording_from_csv(const std::string& text, double sample_interval_s) {
    if (sample_interval_s <= 0.0) {
        throw config_error("sample interval must be positive");
    }
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw io_error("empty file: header row required");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string_view> cells;
    split_csv_line(line, cells);
    if (cells.size() < 1 || cells[0] != "t") {
        throw io_error("header must start with 't'");
    }

    Recording rec;
    rec.sample_interval_s = sample_interval_s;
    for (std::size_t c = 1; c < cells.size(); ++c) {
        rec.channels.push_back(ChannelSeries{std::string(cells[c]), {}});
    }

    const std::size_t n_cols = cells.size();
    double prev_time = 0.0;
    bool have_prev = false;
    std::size_t line_no = 1;
    std::size_t warn_count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        split_csv_line(line, cells);
        if (cells.size() != n_cols) {
            throw io_error("line " + std::to_string(line_no) + ": malformed row, expected " +
                           std::to_string(n_cols) + " columns, got " +
                           std::to_string(cells.size()));
        }
        const double t = parse_number(cells[0], line_no);
        if (have_prev && t <= prev_time) {
            throw io_error("line " + std::to_string(line_no) + ": non-increasing time column");
        }
        prev_time = t;
        have_prev = true;
        for (std::size_t c = 1; c < n_cols; ++c) {
            const double v = parse_number(cells[c], line_no);
            if (std::abs(v) > kVoltageWarnLimit) ++warn_count;
            rec.channels[c - 1].values.push_back(v);
        }
    }
    if (warn_count > 0) {
        std::cerr << "warning: " << warn_count << " value(s) exceed " << kVoltageWarnLimit
                  << " mV (acquisition range is 78 mV)\n";
    }
    return rec;
}

Recording load_recording(const std::string& path, double sample_interval_s) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return recording_from_csv(buf.str(), sample_interval_s);
}

std::string recording_to_csv(const Recording& rec) {
    validate_recording(rec);
    std::string out = "t";
    for (const auto& ch : rec.channels) {
        out += ',';
        out += ch.name;
    }
    out += '\n';
    const std::size_t n = rec.n_samples();
    for (std::size_t i = 0; i < n; ++i) {
        // Time needs more digits than the voltages: indices into multi-day
        // 1 Hz recordings exceed six significant figures.
        format_value(out, static_cast<double>(i) * rec.sample_interval_s, 12);
        for (const auto& ch : rec.channels) {
            out += ',';
            format_value(out, ch.values[i], 6);
        }
        out += '\n';
    }
    return out;
}

void save_recording(const Recording& rec, const std::string& path) {
    const std::string csv = recording_to_csv(rec);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot write '" + path + "'");
    }
    out << csv;
    if (!out) {
        throw io_error("write failed for '" + path + "'");
    }
}

Recording slice_recording(const Recording& rec, double start_s, double end_s) {
    validate_recording(rec);
    const double duration = rec.duration_s();
    if (!(start_s >= 0.0 && start_s < end_s && end_s <= duration)) {
        throw config_error("slice bounds out of range: [" + std::to_string(start_s) + ", " +
                           std::to_string(end_s) + ") with duration " + std::to_string(duration));
    }
    const double dt = rec.sample_interval_s;
    // Sample i lives at time i*dt; keep those with start <= i*dt < end.
    const auto first = static_cast<std::size_t>(std::ceil(start_s / dt - 1e-12));
    auto last = static_cast<std::size_t>(std::ceil(end_s / dt - 1e-12));
    if (last > rec.n_samples()) last = rec.n_samples();

    Recording out;
    out.sample_interval_s = dt;
    out.label = rec.label;
    for (const auto& ch : rec.channels) {
        ChannelSeries s;
        s.name = ch.name;
        s.values.assign(ch.values.begin() + static_cast<std::ptrdiff_t>(first),
                        ch.values.begin() + static_cast<std::ptrdiff_t>(last));
        out.channels.push_back(std::move(s));
    }
    return out;
}

}  // namespace mycolex
