#include "tonalscape/trajectory.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tonalscape/error.hpp"
#include "tonalscape/wavescape.hpp"

namespace tonalscape {

Trajectory sliding_trajectory(std::span<const PitchClassVector> vectors, const SegmentGrid& grid,
                              const midi::TempoMap& map, int ppq, std::size_t window_len, std::size_t hop) {
    if (window_len == 0) throw Error(ErrorCode::BadConfig, "window length must be >= 1");
    if (hop == 0) throw Error(ErrorCode::BadConfig, "hop must be >= 1");
    if (vectors.size() != grid.n_segments()) {
        throw Error(ErrorCode::BadConfig,
                    fmt::format("{} vectors for a grid of {} segments", vectors.size(), grid.n_segments()));
    }
    const std::size_t n = vectors.size();
    if (window_len > n) {
        throw Error(ErrorCode::WindowTooLong, fmt::format("window of {} segments exceeds the {} available", window_len, n));
    }

    Trajectory traj;
    traj.window_len = window_len;
    traj.hop = hop;
    const PrefixTable table(vectors);
    const auto& b = grid.boundaries;

    for (std::size_t start = 0; start + window_len <= n; start += hop) {
        TrajectoryPoint p;
        p.window_start = start;
        const midi::Tick lo = b[start];
        const midi::Tick hi = b[start + window_len];
        p.time_center_seconds = midi::tick_to_seconds(map, ppq, (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0);

        const auto raw = table.window(start, window_len);
        const double total = raw.c[0].real();
        if (total > 0.0) {
            for (int k = 1; k <= kMaxCoefficient; ++k) p.coeffs[k - 1] = raw.c[k] / total;
        } else {
            p.zero_weight = true;
        }
        traj.points.push_back(p);

        const double seconds = midi::tick_to_seconds(map, ppq, hi) - midi::tick_to_seconds(map, ppq, lo);
        traj.segment_duration.push_back(seconds / static_cast<double>(window_len));
    }
    return traj;
}

std::size_t window_at_time(const Trajectory& traj, double t_seconds) {
    if (traj.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no points");
    const auto& pts = traj.points;
    const auto it = std::lower_bound(pts.begin(), pts.end(), t_seconds,
                                     [](const TrajectoryPoint& p, double t) { return p.time_center_seconds < t; });
    if (it == pts.begin()) return 0;
    if (it == pts.end()) return pts.size() - 1;
    const auto hi = static_cast<std::size_t>(it - pts.begin());
    const std::size_t lo = hi - 1;
    const double d_lo = t_seconds - pts[lo].time_center_seconds;
    const double d_hi = pts[hi].time_center_seconds - t_seconds;
    return d_hi < d_lo ? hi : lo;
}

}  // namespace tonalscape
