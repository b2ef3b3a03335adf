#include "tonalscape/midi.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <tuple>

#include <fmt/format.h>

#include "tonalscape/error.hpp"

namespace tonalscape::midi {

namespace {

class ByteReader {
  public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    std::size_t position() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_ + i];
        pos_ += 4;
        return v;
    }
    std::uint32_t varlen() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            const std::uint8_t b = u8();
            v = (v << 7) | (b & 0x7F);
            if ((b & 0x80) == 0) return v;
        }
        throw Error(ErrorCode::BadVarLen,
                    fmt::format("variable-length quantity longer than 4 bytes at offset {}", pos_ - 4));
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    void skip(std::size_t n) { take(n); }

  private:
    void need(std::size_t n) const {
        if (remaining() < n) {
            throw Error(ErrorCode::TruncatedChunk,
                        fmt::format("needed {} bytes at offset {}, {} left", n, pos_, remaining()));
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

bool has_tag(std::span<const std::uint8_t> bytes, const char (&tag)[5]) {
    return bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, tag);
}

int channel_data_length(std::uint8_t status) {
    const auto cmd = status & 0xF0;
    return (cmd == 0xC0 || cmd == 0xD0) ? 1 : 2;
}

Track parse_track(std::span<const std::uint8_t> chunk) {
    Track track;
    ByteReader in(chunk);
    Tick tick = 0;
    std::uint8_t running = 0;

    while (!in.at_end()) {
        tick += in.varlen();
        RawEvent ev;
        ev.tick = tick;

        std::uint8_t b = in.u8();
        std::uint8_t first_data = 0;
        bool have_first = false;
        if (b & 0x80) {
            ev.status = b;
            if (b < 0xF0) running = b;
        } else {
            if (running == 0) {
                throw Error(ErrorCode::MalformedEvent,
                            fmt::format("data byte 0x{:02X} without running status at tick {}", b, tick));
            }
            ev.status = running;
            first_data = b;
            have_first = true;
        }

        if (ev.status < 0xF0) {
            ev.kind = EventKind::Channel;
            const int len = channel_data_length(ev.status);
            if (have_first) ev.data.push_back(first_data);
            while (static_cast<int>(ev.data.size()) < len) {
                const std::uint8_t d = in.u8();
                if (d & 0x80) {
                    throw Error(ErrorCode::MalformedEvent,
                                fmt::format("status byte 0x{:02X} inside channel message at tick {}", d, tick));
                }
                ev.data.push_back(d);
            }
            track.push_back(std::move(ev));
        } else if (ev.status == 0xFF) {
            ev.kind = EventKind::Meta;
            ev.meta_type = in.u8();
            const auto len = in.varlen();
            const auto payload = in.take(len);
            ev.data.assign(payload.begin(), payload.end());
            const bool end_of_track = ev.meta_type == 0x2F;
            track.push_back(std::move(ev));
            if (end_of_track) break;
        } else if (ev.status == 0xF0 || ev.status == 0xF7) {
            ev.kind = EventKind::SysEx;
            in.skip(in.varlen());
            track.push_back(std::move(ev));
        } else {
            throw Error(ErrorCode::MalformedEvent,
                        fmt::format("unexpected status 0x{:02X} at tick {}", ev.status, tick));
        }
    }
    return track;
}

}  // namespace

MidiDocument parse_smf(std::span<const std::uint8_t> bytes) {
    if (!has_tag(bytes, "MThd")) throw Error(ErrorCode::MissingHeader, "no MThd chunk at offset 0");

    ByteReader in(bytes);
    in.skip(4);
    const auto header_len = in.u32();
    if (header_len < 6) {
        throw Error(ErrorCode::TruncatedChunk, fmt::format("header chunk length {} < 6", header_len));
    }
    const auto header = in.take(header_len);
    ByteReader h(header);
    MidiDocument doc;
    doc.format = h.u16();
    const int ntracks = h.u16();
    const std::uint16_t division = h.u16();

    if (doc.format > 1) {
        throw Error(ErrorCode::UnsupportedFormat, fmt::format("SMF format {} is not supported", doc.format));
    }
    if (division & 0x8000) throw Error(ErrorCode::UnsupportedFormat, "SMPTE time division is not supported");
    if (division == 0) throw Error(ErrorCode::UnsupportedFormat, "ticks per quarter note is 0");
    doc.ppq = division;

    while (static_cast<int>(doc.tracks.size()) < ntracks) {
        if (in.remaining() < 8) {
            throw Error(ErrorCode::TruncatedChunk,
                        fmt::format("expected {} tracks, found {}", ntracks, doc.tracks.size()));
        }
        const auto tag = in.take(4);
        const auto len = in.u32();
        if (in.remaining() < len) {
            throw Error(ErrorCode::TruncatedChunk,
                        fmt::format("chunk at offset {} declares {} bytes, {} left", in.position() - 8, len,
                                    in.remaining()));
        }
        const auto body = in.take(len);
        // Unknown chunk types are skipped.
        if (has_tag(tag, "MTrk")) doc.tracks.push_back(parse_track(body));
    }
    return doc;
}

NoteList extract_notes(const MidiDocument& doc) {
    NoteList out;
    for (std::size_t t = 0; t < doc.tracks.size(); ++t) {
        const auto& track = doc.tracks[t];
        struct Pending {
            Tick onset;
            int velocity;
        };
        std::array<std::array<std::deque<Pending>, 128>, 16> pending;

        const auto close = [&](int ch, int pitch, const Pending& p, Tick end) {
            if (end <= p.onset) {
                ++out.zero_length;
                return;
            }
            out.notes.push_back({pitch, p.onset, end - p.onset, p.velocity, static_cast<int>(t), ch});
        };

        for (const auto& ev : track) {
            if (ev.kind != EventKind::Channel) continue;
            const int cmd = ev.command();
            if (cmd != 0x80 && cmd != 0x90) continue;
            const int ch = ev.channel();
            const int pitch = ev.data[0];
            const int vel = ev.data[1];
            auto& queue = pending[ch][pitch];
            if (cmd == 0x90 && vel > 0) {
                queue.push_back({ev.tick, vel});
            } else if (queue.empty()) {
                ++out.dangling_offs;
            } else {
                close(ch, pitch, queue.front(), ev.tick);
                queue.pop_front();
            }
        }

        const Tick last = track.empty() ? 0 : track.back().tick;
        for (int ch = 0; ch < 16; ++ch) {
            for (int pitch = 0; pitch < 128; ++pitch) {
                for (const auto& p : pending[ch][pitch]) close(ch, pitch, p, last);
            }
        }
    }

    std::sort(out.notes.begin(), out.notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
        return std::tie(a.onset_tick, a.track_index, a.channel, a.pitch, a.duration_ticks, a.velocity) <
               std::tie(b.onset_tick, b.track_index, b.channel, b.pitch, b.duration_ticks, b.velocity);
    });
    return out;
}

TempoMap build_tempo_map(const MidiDocument& doc) {
    std::vector<TempoEntry> all;
    for (const auto& track : doc.tracks) {
        for (const auto& ev : track) {
            if (ev.kind != EventKind::Meta || ev.meta_type != 0x51 || ev.data.size() != 3) continue;
            const std::uint32_t us = (std::uint32_t{ev.data[0]} << 16) | (std::uint32_t{ev.data[1]} << 8) |
                                     std::uint32_t{ev.data[2]};
            if (us == 0) continue;
            all.push_back({ev.tick, us});
        }
    }
    // Stable: among equal ticks the later-parsed entry ends up last and wins.
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });

    TempoMap map;
    map.entries.push_back({0, kDefaultTempo});
    for (const auto& e : all) {
        if (map.entries.back().tick == e.tick) {
            map.entries.back() = e;
        } else {
            map.entries.push_back(e);
        }
    }
    return map;
}

double tick_to_seconds(const TempoMap& map, int ppq, Tick tick) {
    return tick_to_seconds(map, ppq, static_cast<double>(tick));
}

double tick_to_seconds(const TempoMap& map, int ppq, double tick) {
    const double ticks_per_us = static_cast<double>(ppq) * 1e6;
    double seconds = 0.0;
    const auto& e = map.entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto start = static_cast<double>(e[i].tick);
        if (tick <= start) break;
        const double end =
            i + 1 < e.size() ? static_cast<double>(e[i + 1].tick) : std::numeric_limits<double>::infinity();
        seconds += (std::min(tick, end) - start) * e[i].microseconds_per_quarter / ticks_per_us;
    }
    return seconds;
}

double seconds_to_tick(const TempoMap& map, int ppq, double seconds) {
    const double ticks_per_us = static_cast<double>(ppq) * 1e6;
    double acc = 0.0;
    const auto& e = map.entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto start = static_cast<double>(e[i].tick);
        const double rate = e[i].microseconds_per_quarter / ticks_per_us;  // seconds per tick
        if (i + 1 < e.size()) {
            const double seg = (static_cast<double>(e[i + 1].tick) - start) * rate;
            if (seconds <= acc + seg) return start + (seconds - acc) / rate;
            acc += seg;
        } else {
            return start + (seconds - acc) / rate;
        }
    }
    return 0.0;
}

std::string format_note_listing(std::span<const NoteEvent> notes) {
    std::string out;
    for (const auto& n : notes) {
        out += fmt::format("{} {} {} {} {} {}\n", n.track_index, n.channel, n.pitch, n.onset_tick,
                           n.duration_ticks, n.velocity);
    }
    return out;
}

}  // namespace tonalscape::midi
