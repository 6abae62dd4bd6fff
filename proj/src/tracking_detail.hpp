#pragma once

#include <optional>
#include <span>
#include <vector>

#include "goldgen/solvers.hpp"

namespace goldgen::detail {

CVec match_step(const CVec& prev, const CVec& next, double t_prev, double t_next,
                const TrackOptions& opts);

LabeledPath track_frames(std::span<const double> times, const std::vector<CVec>& frames,
                         std::optional<CVec> first, const TrackOptions& opts);

// grid with the midpoint of every interval inserted (size 2n - 1)
std::vector<double> with_midpoints(std::span<const double> grid);

LabeledPath track_refined(std::span<const double> fine, const std::vector<CVec>& frames,
                          std::optional<CVec> first, const TrackOptions& opts);

// Keeps the even (original grid) samples of a refined path.
LabeledPath decimate(const LabeledPath& fine);

}  // namespace goldgen::detail
