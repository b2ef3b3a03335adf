#pragma once

// Minimal Standard MIDI File writer for synthetic test inputs.

#include <cstdint>
#include <string_view>
#include <vector>

namespace testing_smf {

using Bytes = std::vector<std::uint8_t>;

inline void put_varlen(Bytes& out, std::uint32_t v) {
    std::uint8_t buf[5];
    int n = 0;
    buf[n++] = v & 0x7F;
    while (v >>= 7) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
    while (n > 0) out.push_back(buf[--n]);
}

inline void put_u32(Bytes& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

inline void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

class TrackWriter {
  public:
    TrackWriter& note_on(std::uint32_t delta, int ch, int pitch, int vel) { return event(delta, 0x90 | ch, pitch, vel); }
    TrackWriter& note_off(std::uint32_t delta, int ch, int pitch, int vel = 64) {
        return event(delta, 0x80 | ch, pitch, vel);
    }
    TrackWriter& tempo(std::uint32_t delta, std::uint32_t us) {
        put_varlen(body_, delta);
        body_.insert(body_.end(), {0xFF, 0x51, 0x03});
        body_.push_back(static_cast<std::uint8_t>(us >> 16));
        body_.push_back(static_cast<std::uint8_t>(us >> 8));
        body_.push_back(static_cast<std::uint8_t>(us));
        return *this;
    }
    TrackWriter& end(std::uint32_t delta = 0) {
        put_varlen(body_, delta);
        body_.insert(body_.end(), {0xFF, 0x2F, 0x00});
        return *this;
    }
    const Bytes& body() const { return body_; }

  private:
    TrackWriter& event(std::uint32_t delta, int status, int d1, int d2) {
        put_varlen(body_, delta);
        body_.push_back(static_cast<std::uint8_t>(status));
        body_.push_back(static_cast<std::uint8_t>(d1));
        body_.push_back(static_cast<std::uint8_t>(d2));
        return *this;
    }
    Bytes body_;
};

inline Bytes build(int format, int ppq, const std::vector<TrackWriter>& tracks) {
    Bytes out{'M', 'T', 'h', 'd'};
    put_u32(out, 6);
    put_u16(out, static_cast<std::uint16_t>(format));
    put_u16(out, static_cast<std::uint16_t>(tracks.size()));
    put_u16(out, static_cast<std::uint16_t>(ppq));
    for (const auto& t : tracks) {
        out.insert(out.end(), {'M', 'T', 'r', 'k'});
        put_u32(out, static_cast<std::uint32_t>(t.body().size()));
        out.insert(out.end(), t.body().begin(), t.body().end());
    }
    return out;
}

}  // namespace testing_smf

#include <algorithm>
#include <tuple>

namespace testing_smf {

struct Note {
    int pitch;
    std::uint32_t onset;
    std::uint32_t duration;
    int velocity = 100;
    int channel = 0;
};

/// Format-0 file holding the given notes (note-offs sorted before note-ons at
/// equal ticks).
inline Bytes from_notes(int ppq, const std::vector<Note>& notes, std::uint32_t tempo_us = 500000) {
    struct Ev {
        std::uint32_t tick;
        int order;
        int status;
        int pitch;
        int vel;
    };
    std::vector<Ev> evs;
    for (const auto& n : notes) {
        evs.push_back({n.onset, 1, 0x90 | n.channel, n.pitch, n.velocity});
        evs.push_back({n.onset + n.duration, 0, 0x80 | n.channel, n.pitch, 64});
    }
    std::stable_sort(evs.begin(), evs.end(),
                     [](const Ev& a, const Ev& b) { return std::tie(a.tick, a.order) < std::tie(b.tick, b.order); });
    TrackWriter t;
    t.tempo(0, tempo_us);
    std::uint32_t now = 0;
    for (const auto& e : evs) {
        if ((e.status & 0xF0) == 0x90) {
            t.note_on(e.tick - now, e.status & 0x0F, e.pitch, e.vel);
        } else {
            t.note_off(e.tick - now, e.status & 0x0F, e.pitch, e.vel);
        }
        now = e.tick;
    }
    t.end();
    return build(0, ppq, {t});
}

}  // namespace testing_smf
