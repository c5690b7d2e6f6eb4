#ifndef MYCOLEX_SVG_HPP
#define MYCOLEX_SVG_HPP

#include <optional>
#include <string>
#include <vector>

#include "mycolex/detect.hpp"

namespace mycolex {

// Bar-code rendering of spike trains: one 1000x60 unit row per channel, one
// vertical bar per spike at x = 1000 * t / duration, plus a baseline axis.
// Channels appear in first-seen order of the event list. duration_s defaults
// to the latest peak time.
std::string barcode_svg(const std::vector<SpikeEvent>& events,
                        std::optional<double> duration_s = std::nullopt);

}  // namespace mycolex

#endif
