#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tonalscape/midi.hpp"
#include "tonalscape/pcdft.hpp"

namespace tonalscape {

/// A note value expressed as a fraction of a whole note, e.g. 1/8.
struct NoteValue {
    std::int64_t numerator = 1;
    std::int64_t denominator = 4;

    double whole_notes() const noexcept { return static_cast<double>(numerator) / denominator; }
    bool operator==(const NoteValue&) const = default;
};

struct Seconds {
    double value = 1.0;
    bool operator==(const Seconds&) const = default;
};

struct ResolutionSpec {
    std::variant<NoteValue, Seconds> unit = NoteValue{};

    bool is_seconds() const noexcept { return std::holds_alternative<Seconds>(unit); }
    bool operator==(const ResolutionSpec&) const = default;

    /// "1/8" for a note value, "0.5s" for seconds. Throws Error(BadConfig).
    static ResolutionSpec parse(std::string_view text);
    std::string to_string() const;
};

struct SegmentGrid {
    std::vector<midi::Tick> boundaries;
    ResolutionSpec resolution;

    std::size_t n_segments() const noexcept { return boundaries.empty() ? 0 : boundaries.size() - 1; }
    midi::Tick span_end() const noexcept { return boundaries.empty() ? 0 : boundaries.back(); }
};

/// Equal-duration segments covering [0, span_end_tick]; the last one may be
/// shorter. Throws Error(ZeroLengthSegment) when a segment would be empty.
SegmentGrid make_grid(midi::Tick span_end_tick, const ResolutionSpec& spec, const midi::TempoMap& map, int ppq);

enum class Weighting {
    Duration,  ///< overlap length of each note with each segment
    Onset,     ///< +1 in the segment holding the note's onset
    Velocity,  ///< overlap length scaled by velocity / 127
};

std::string_view to_string(Weighting w) noexcept;
Weighting parse_weighting(std::string_view text);

struct WeightOptions {
    Weighting weighting = Weighting::Duration;
    /// When set, overlaps are measured in seconds instead of ticks.
    const midi::TempoMap* seconds_map = nullptr;
    int ppq = 0;
};

/// One pitch-class vector per grid segment, duration-weighted in ticks.
std::vector<PitchClassVector> segment_weights(std::span<const midi::NoteEvent> notes, const SegmentGrid& grid);
std::vector<PitchClassVector> segment_weights(std::span<const midi::NoteEvent> notes, const SegmentGrid& grid,
                                              const WeightOptions& options);

/// Sizes of the near-equal groups coarsen() merges `count` vectors into.
std::vector<std::size_t> coarsen_group_sizes(std::size_t count, std::size_t max_columns);

/// Merges adjacent vectors so that at most max_columns remain; total weight is
/// conserved.
std::vector<PitchClassVector> coarsen(std::span<const PitchClassVector> vectors, std::size_t max_columns);

}  // namespace tonalscape
