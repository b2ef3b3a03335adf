#pragma once

// Standard MIDI File reader: formats 0 and 1 with metrical (PPQ) division.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tonalscape::midi {

using Tick = std::uint64_t;

enum class EventKind : std::uint8_t { Channel, Meta, SysEx };

struct RawEvent {
    Tick tick = 0;
    EventKind kind = EventKind::Channel;
    /// Channel status byte (0x80..0xEF), 0xFF for meta, 0xF0/0xF7 for sysex.
    std::uint8_t status = 0;
    /// Meta type (e.g. 0x51 tempo); unused for other kinds.
    std::uint8_t meta_type = 0;
    /// Channel events: one or two data bytes. Meta: payload. SysEx: empty.
    std::vector<std::uint8_t> data;

    std::uint8_t channel() const noexcept { return status & 0x0F; }
    std::uint8_t command() const noexcept { return status & 0xF0; }
};

using Track = std::vector<RawEvent>;

struct MidiDocument {
    int format = 0;
    int ppq = 0;
    std::vector<Track> tracks;
};

struct NoteEvent {
    int pitch = 0;
    Tick onset_tick = 0;
    Tick duration_ticks = 0;
    int velocity = 0;
    int track_index = 0;
    int channel = 0;

    Tick end_tick() const noexcept { return onset_tick + duration_ticks; }
    bool operator==(const NoteEvent&) const = default;
};

struct NoteList {
    std::vector<NoteEvent> notes;
    /// Note-offs with no pending note-on.
    std::size_t dangling_offs = 0;
    /// Pairs that closed at their own onset tick.
    std::size_t zero_length = 0;
};

struct TempoEntry {
    Tick tick = 0;
    std::uint32_t microseconds_per_quarter = 500000;
    bool operator==(const TempoEntry&) const = default;
};

/// Sorted by tick, strictly increasing, first entry at tick 0.
struct TempoMap {
    std::vector<TempoEntry> entries;
};

inline constexpr std::uint32_t kDefaultTempo = 500000;
inline constexpr int kPercussionChannel = 9;

/// Throws Error with MissingHeader, UnsupportedFormat, TruncatedChunk,
/// BadVarLen or MalformedEvent.
MidiDocument parse_smf(std::span<const std::uint8_t> bytes);

/// FIFO note pairing per (track, channel, pitch). Notes still sounding at the
/// end of a track close at that track's last event tick.
NoteList extract_notes(const MidiDocument& doc);

TempoMap build_tempo_map(const MidiDocument& doc);

double tick_to_seconds(const TempoMap& map, int ppq, Tick tick);
/// Fractional tick positions, used for window midpoints.
double tick_to_seconds(const TempoMap& map, int ppq, double tick);
/// Inverse of tick_to_seconds; returns a fractional tick.
double seconds_to_tick(const TempoMap& map, int ppq, double seconds);

/// One line per note: "track channel pitch onset duration velocity".
std::string format_note_listing(std::span<const NoteEvent> notes);

}  // namespace tonalscape::midi
