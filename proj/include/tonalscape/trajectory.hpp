#pragma once

#include <array>
#include <span>
#include <vector>

#include "tonalscape/midi.hpp"
#include "tonalscape/pcdft.hpp"
#include "tonalscape/segmentation.hpp"

namespace tonalscape {

struct TrajectoryPoint {
    std::size_t window_start = 0;
    double time_center_seconds = 0.0;
    /// Coefficients 1..6 at indices 0..5; all zero for a silent window.
    std::array<Complex, kMaxCoefficient> coeffs{};
    bool zero_weight = false;

    const Complex& coefficient(int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
    bool operator==(const TrajectoryPoint&) const = default;
};

struct Trajectory {
    std::size_t window_len = 1;
    std::size_t hop = 1;
    std::vector<TrajectoryPoint> points;
    /// Seconds per segment, averaged over each window.
    std::vector<double> segment_duration;

    bool empty() const noexcept { return points.empty(); }
    std::size_t size() const noexcept { return points.size(); }
    bool operator==(const Trajectory&) const = default;
};

/// Sliding windows of `window_len` segments advanced by `hop` segments.
/// Throws Error(WindowTooLong) when window_len exceeds the segment count.
Trajectory sliding_trajectory(std::span<const PitchClassVector> vectors, const SegmentGrid& grid,
                              const midi::TempoMap& map, int ppq, std::size_t window_len, std::size_t hop = 1);

/// Index of the point whose center is nearest to t; ties go to the earlier
/// point. Throws Error(EmptyTrajectory).
std::size_t window_at_time(const Trajectory& traj, double t_seconds);

}  // namespace tonalscape
