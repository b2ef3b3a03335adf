#pragma once

// End-to-end pipeline and the versioned JSON bundle shared by the CLI, the
// Python module and the browser front end.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tonalscape/midi.hpp"
#include "tonalscape/pcdft.hpp"
#include "tonalscape/segmentation.hpp"
#include "tonalscape/trajectory.hpp"
#include "tonalscape/wavescape.hpp"

namespace tonalscape {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::size_t kDefaultMaxColumns = 250;

struct AnalysisConfig {
    ResolutionSpec resolution;
    std::size_t window_len = 1;
    std::size_t hop = 1;
    std::size_t wavescape_max_columns = kDefaultMaxColumns;
    bool include_percussion = true;
    Weighting weighting = Weighting::Duration;

    /// Throws Error(BadConfig).
    void validate() const;
    bool operator==(const AnalysisConfig&) const = default;
};

struct AnalysisMetadata {
    std::string file_name;
    int format = 0;
    int ppq = 0;
    std::size_t n_tracks = 0;
    std::size_t n_notes = 0;
    std::size_t dangling_note_offs = 0;
    midi::Tick span_end_tick = 0;
    double duration_seconds = 0.0;
    std::size_t n_segments = 0;
    std::size_t wavescape_columns = 0;
    /// Length of one sliding window: whole notes for note-value resolutions,
    /// seconds otherwise.
    double window_span = 0.0;
    std::string window_span_unit;

    bool operator==(const AnalysisMetadata&) const = default;
};

struct SegmentCoefficients {
    std::array<Complex, kMaxCoefficient> coeffs{};
    bool zero_weight = false;
    bool operator==(const SegmentCoefficients&) const = default;
};

struct AnalysisBundle {
    AnalysisMetadata metadata;
    AnalysisConfig config;
    std::vector<midi::Tick> boundaries_ticks;
    std::vector<midi::TempoEntry> tempo_map;
    std::vector<PitchClassVector> segment_weights;
    std::vector<SegmentCoefficients> segments;
    /// Coefficients 1..6 at indices 0..5, built on the coarsened segmentation.
    std::array<WavescapeMatrix, kMaxCoefficient> wavescapes;
    Trajectory trajectory;

    bool operator==(const AnalysisBundle&) const = default;
};

/// Parse, segment and transform a MIDI file. Throws parser errors,
/// Error(NoNotes), Error(WindowTooLong) or Error(BadConfig).
AnalysisBundle analyze(std::span<const std::uint8_t> midi_bytes, const AnalysisConfig& cfg,
                       std::string_view file_name = {});

/// Recompute only the trajectory for a new window length, reusing the
/// bundle's segment weights.
Trajectory recompute_trajectory(const AnalysisBundle& bundle, std::size_t window_len, std::size_t hop = 1);

/// Window span as recorded in the metadata.
double window_span(const ResolutionSpec& resolution, std::size_t window_len);

std::string serialize_bundle(const AnalysisBundle& bundle, int indent = -1);
/// Throws Error(BadBundle) on malformed input or a schema version mismatch.
AnalysisBundle deserialize_bundle(std::string_view json_text);

}  // namespace tonalscape
