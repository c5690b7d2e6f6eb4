#include "mycolex/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "mycolex/errors.hpp"

namespace mycolex {

namespace {

constexpr double kRowWidth = 1000.0;
constexpr double kRowHeight = 60.0;

void append_num(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    out += buf;
}

}  // namespace

std::string barcode_svg(const std::vector<SpikeEvent>& events,
                        std::optional<double> duration_s) {
    std::vector<std::string> channel_order;
    std::map<std::string, std::vector<const SpikeEvent*>> by_channel;
    for (const auto& ev : events) {
        auto [it, inserted] = by_channel.try_emplace(ev.channel);
        if (inserted) channel_order.push_back(ev.channel);
        it->second.push_back(&ev);
    }
    if (channel_order.empty()) channel_order.push_back("");

    double duration = duration_s.value_or(0.0);
    if (!duration_s) {
        for (const auto& ev : events) duration = std::max(duration, ev.peak_time_s);
    }
    if (duration <= 0.0) duration = 1.0;

    const double height = kRowHeight * static_cast<double>(channel_order.size());
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"";
    append_num(out, height);
    out += "\" viewBox=\"0 0 1000 ";
    append_num(out, height);
    out += "\">\n";
    for (std::size_t row = 0; row < channel_order.size(); ++row) {
        const double y0 = kRowHeight * static_cast<double>(row);
        out += "  <g>\n";
        out += "    <text x=\"4\" y=\"";
        append_num(out, y0 + 12.0);
        out += "\" font-size=\"10\">" + channel_order[row] + "</text>\n";
        out += "    <line class=\"axis\" x1=\"0\" y1=\"";
        append_num(out, y0 + kRowHeight - 4.0);
        out += "\" x2=\"1000\" y2=\"";
        append_num(out, y0 + kRowHeight - 4.0);
        out += "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        for (const SpikeEvent* ev : by_channel[channel_order[row]]) {
            const double x = kRowWidth * ev->peak_time_s / duration;
            out += "    <line class=\"bar\" x1=\"";
            append_num(out, x);
            out += "\" y1=\"";
            append_num(out, y0 + 16.0);
            out += "\" x2=\"";
            append_num(out, x);
            out += "\" y2=\"";
            append_num(out, y0 + kRowHeight - 4.0);
            out += "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        }
        out += "  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace mycolex
