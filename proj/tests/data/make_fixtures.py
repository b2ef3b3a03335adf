"""Writes the hand-assembled Standard MIDI File fixtures used by the tests.

Each fixture is spelled out byte by byte so the parser is checked against
files that were not produced by any MIDI library. Re-run after editing:

    python3 tests/data/make_fixtures.py
"""

from pathlib import Path

HERE = Path(__file__).resolve().parent


def chunk(tag: bytes, body: bytes) -> bytes:
    return tag + len(body).to_bytes(4, "big") + body


def header(fmt: int, ntracks: int, ppq: int) -> bytes:
    return chunk(b"MThd", fmt.to_bytes(2, "big") + ntracks.to_bytes(2, "big") + ppq.to_bytes(2, "big"))


def track(*events: bytes) -> bytes:
    return chunk(b"MTrk", b"".join(events))


# Format 0, ppq 480. A C-major triad entered with running status, closed by
# 0x80 note-offs (again with running status), then D4 closed by a velocity-0
# note-on under running status.
format0_running_status = header(0, 1, 480) + track(
    bytes.fromhex("00 FF 51 03 07 A1 20"),  # tempo 500000
    bytes.fromhex("00 90 3C 40"),  # C4 on
    bytes.fromhex("00 40 40"),  # E4 on (running status)
    bytes.fromhex("00 43 40"),  # G4 on (running status)
    bytes.fromhex("83 60 80 3C 40"),  # +480 C4 off
    bytes.fromhex("00 40 40"),  # E4 off (running status)
    bytes.fromhex("00 43 40"),  # G4 off (running status)
    bytes.fromhex("00 90 3E 50"),  # D4 on vel 80
    bytes.fromhex("83 60 3E 00"),  # +480 D4 vel 0 (running status)
    bytes.fromhex("00 FF 2F 00"),
)

# Format 1, ppq 96, three tracks.
#   track 0: tempo 120 BPM at 0, 60 BPM at tick 192, time signature, track name
#   track 1: C4 0..96, D4 96..192 (velocity-0 off), a sysex in between,
#            program change, controller, pitch bend
#   track 2: kick on channel 10 at 0..48, a dangling note-off,
#            an unterminated C3 from 144 closed at end of track (384)
format1_tempo = header(1, 3, 96) + track(
    bytes.fromhex("00 FF 03 05") + b"tempo",
    bytes.fromhex("00 FF 58 04 04 02 18 08"),
    bytes.fromhex("00 FF 51 03 07 A1 20"),  # 500000 us/quarter
    bytes.fromhex("81 40 FF 51 03 0F 42 40"),  # +192: 1000000 us/quarter
    bytes.fromhex("00 FF 2F 00"),
) + track(
    bytes.fromhex("00 C0 05"),  # program change
    bytes.fromhex("00 B0 07 64"),  # volume
    bytes.fromhex("00 90 3C 64"),  # C4 on
    bytes.fromhex("60 80 3C 00"),  # +96 C4 off
    bytes.fromhex("00 F0 05 7E 7F 09 01 F7"),  # sysex, skipped
    bytes.fromhex("00 90 3E 46"),  # D4 on vel 70
    bytes.fromhex("30 E0 00 40"),  # +48 pitch bend
    bytes.fromhex("30 90 3E 00"),  # +48 D4 vel 0
    bytes.fromhex("00 FF 2F 00"),
) + track(
    bytes.fromhex("00 99 24 7F"),  # kick, channel 10
    bytes.fromhex("30 89 24 40"),  # +48 kick off
    bytes.fromhex("30 80 45 40"),  # +48 dangling A4 off
    bytes.fromhex("30 90 30 50"),  # +48 (tick 144) C3 on, never released
    bytes.fromhex("81 70 FF 2F 00"),  # +240 end of track at tick 384
)

# Format 0, ppq 480: C major (C E G), F major (F A C), G7 (G B D F), each one
# half note long. Used by the CLI and Python smoke tests.
def three_chords() -> bytes:
    events = [bytes.fromhex("00 FF 51 03 07 A1 20")]
    chords = [(0x3C, 0x40, 0x43), (0x41, 0x45, 0x48), (0x43, 0x47, 0x4A, 0x4D)]
    for chord in chords:
        for i, p in enumerate(chord):
            events.append(bytes([0x00, 0x90, p, 0x50]))
        for i, p in enumerate(chord):
            delta = bytes.fromhex("87 40") if i == 0 else b"\x00"  # 960 ticks
            events.append(delta + bytes([0x80, p, 0x40]))
    events.append(bytes.fromhex("00 FF 2F 00"))
    return header(0, 1, 480) + track(*events)


# Only meta events: no notes.
meta_only = header(0, 1, 480) + track(
    bytes.fromhex("00 FF 51 03 07 A1 20"),
    bytes.fromhex("00 FF 2F 00"),
)


def main() -> None:
    fixtures = {
        "format0_running_status.mid": format0_running_status,
        "format1_tempo.mid": format1_tempo,
        "three_chords.mid": three_chords(),
        "meta_only.mid": meta_only,
    }
    for name, data in fixtures.items():
        (HERE / name).write_bytes(data)
        print(f"{name}: {len(data)} bytes")


if __name__ == "__main__":
    main()
