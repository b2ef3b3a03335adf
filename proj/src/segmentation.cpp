#include "tonalscape/segmentation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "tonalscape/error.hpp"

namespace tonalscape {

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

ResolutionSpec ResolutionSpec::parse(std::string_view text) {
    const auto bad = [&] {
        return Error(ErrorCode::BadConfig,
                     fmt::format("invalid resolution '{}'; expected a note value like 1/8 or seconds like 0.5s",
                                 text));
    };
    if (!text.empty() && text.back() == 's') {
        double secs = 0.0;
        if (!parse_number(text.substr(0, text.size() - 1), secs) || !std::isfinite(secs) || secs <= 0.0) {
            throw bad();
        }
        return ResolutionSpec{Seconds{secs}};
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw bad();
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!parse_number(text.substr(0, slash), num) || !parse_number(text.substr(slash + 1), den) || num <= 0 ||
        den <= 0) {
        throw bad();
    }
    return ResolutionSpec{NoteValue{num, den}};
}

std::string ResolutionSpec::to_string() const {
    if (const auto* nv = std::get_if<NoteValue>(&unit)) return fmt::format("{}/{}", nv->numerator, nv->denominator);
    return fmt::format("{}s", std::get<Seconds>(unit).value);
}

SegmentGrid make_grid(midi::Tick span_end_tick, const ResolutionSpec& spec, const midi::TempoMap& map, int ppq) {
    if (span_end_tick == 0) throw Error(ErrorCode::EmptyInput, "span end must be positive");
    if (ppq <= 0) throw Error(ErrorCode::BadConfig, "ppq must be positive");

    SegmentGrid grid;
    grid.resolution = spec;
    grid.boundaries.push_back(0);

    if (const auto* nv = std::get_if<NoteValue>(&spec.unit)) {
        if (nv->numerator <= 0 || nv->denominator <= 0) throw Error(ErrorCode::BadConfig, "note value must be positive");
        // round(num * 4 * ppq / den), half up
        const std::int64_t scaled = nv->numerator * 4 * ppq;
        const auto len = static_cast<midi::Tick>((2 * scaled + nv->denominator) / (2 * nv->denominator));
        if (len == 0) {
            throw Error(ErrorCode::ZeroLengthSegment,
                        fmt::format("note value {} rounds to 0 ticks at ppq {}", spec.to_string(), ppq));
        }
        for (midi::Tick b = len; b < span_end_tick; b += len) grid.boundaries.push_back(b);
    } else {
        const double step = std::get<Seconds>(spec.unit).value;
        if (!(step > 0.0)) throw Error(ErrorCode::BadConfig, "segment length in seconds must be positive");
        for (std::uint64_t m = 1;; ++m) {
            const double t = midi::seconds_to_tick(map, ppq, static_cast<double>(m) * step);
            const auto b = static_cast<midi::Tick>(std::llround(t));
            if (b >= span_end_tick) break;
            if (b <= grid.boundaries.back()) {
                throw Error(ErrorCode::ZeroLengthSegment,
                            fmt::format("{} s is shorter than one tick near tick {}", step, b));
            }
            grid.boundaries.push_back(b);
        }
    }
    grid.boundaries.push_back(span_end_tick);
    return grid;
}

std::string_view to_string(Weighting w) noexcept {
    switch (w) {
        case Weighting::Duration: return "duration";
        case Weighting::Onset: return "onset";
        case Weighting::Velocity: return "velocity";
    }
    return "duration";
}

Weighting parse_weighting(std::string_view text) {
    if (text == "duration") return Weighting::Duration;
    if (text == "onset") return Weighting::Onset;
    if (text == "velocity") return Weighting::Velocity;
    throw Error(ErrorCode::BadConfig, fmt::format("unknown weighting '{}'", text));
}

std::vector<PitchClassVector> segment_weights(std::span<const midi::NoteEvent> notes, const SegmentGrid& grid) {
    return segment_weights(notes, grid, WeightOptions{});
}

std::vector<PitchClassVector> segment_weights(std::span<const midi::NoteEvent> notes, const SegmentGrid& grid,
                                              const WeightOptions& options) {
    std::vector<PitchClassVector> out(grid.n_segments());
    if (out.empty()) return out;
    const auto& b = grid.boundaries;
    const midi::Tick span_end = grid.span_end();

    const auto length = [&](midi::Tick from, midi::Tick to) -> double {
        if (options.seconds_map != nullptr) {
            return midi::tick_to_seconds(*options.seconds_map, options.ppq, to) -
                   midi::tick_to_seconds(*options.seconds_map, options.ppq, from);
        }
        return static_cast<double>(to - from);
    };

    for (const auto& note : notes) {
        if (note.onset_tick >= span_end) continue;
        const auto pc = static_cast<std::size_t>(note.pitch % kPitchClasses);
        // first segment whose right boundary exceeds the onset
        auto seg = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), note.onset_tick) - b.begin()) - 1;

        if (options.weighting == Weighting::Onset) {
            out[seg][pc] += 1.0;
            continue;
        }
        const double scale = options.weighting == Weighting::Velocity ? note.velocity / 127.0 : 1.0;
        const midi::Tick end = std::min(note.end_tick(), span_end);
        for (; seg < out.size() && b[seg] < end; ++seg) {
            const midi::Tick from = std::max(note.onset_tick, b[seg]);
            const midi::Tick to = std::min(end, b[seg + 1]);
            if (to > from) out[seg][pc] += scale * length(from, to);
        }
    }
    return out;
}

std::vector<std::size_t> coarsen_group_sizes(std::size_t count, std::size_t max_columns) {
    if (max_columns == 0) throw Error(ErrorCode::BadConfig, "max_columns must be >= 1");
    if (count <= max_columns) return std::vector<std::size_t>(count, 1);
    const std::size_t per_group = (count + max_columns - 1) / max_columns;
    const std::size_t groups = (count + per_group - 1) / per_group;
    std::vector<std::size_t> sizes(groups, count / groups);
    for (std::size_t i = 0; i < count % groups; ++i) ++sizes[i];
    return sizes;
}

std::vector<PitchClassVector> coarsen(std::span<const PitchClassVector> vectors, std::size_t max_columns) {
    const auto sizes = coarsen_group_sizes(vectors.size(), max_columns);
    std::vector<PitchClassVector> out;
    out.reserve(sizes.size());
    std::size_t pos = 0;
    for (auto size : sizes) {
        PitchClassVector merged;
        for (std::size_t j = 0; j < size; ++j) merged += vectors[pos + j];
        out.push_back(merged);
        pos += size;
    }
    return out;
}

}  // namespace tonalscape
