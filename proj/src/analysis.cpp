#include "tonalscape/analysis.hpp"

#include <algorithm>
#include <future>

#include <fmt/format.h>
#include <json.hpp>

#include "tonalscape/error.hpp"

namespace tonalscape {

using json = nlohmann::ordered_json;

void AnalysisConfig::validate() const {
    if (window_len == 0) throw Error(ErrorCode::BadConfig, "window length must be >= 1");
    if (hop == 0) throw Error(ErrorCode::BadConfig, "hop must be >= 1");
    if (wavescape_max_columns == 0) throw Error(ErrorCode::BadConfig, "wavescape max columns must be >= 1");
    if (const auto* nv = std::get_if<NoteValue>(&resolution.unit)) {
        if (nv->numerator <= 0 || nv->denominator <= 0) throw Error(ErrorCode::BadConfig, "note value must be positive");
    } else if (!(std::get<Seconds>(resolution.unit).value > 0.0)) {
        throw Error(ErrorCode::BadConfig, "segment length in seconds must be positive");
    }
}

double window_span(const ResolutionSpec& resolution, std::size_t window_len) {
    if (const auto* nv = std::get_if<NoteValue>(&resolution.unit)) {
        return static_cast<double>(static_cast<std::int64_t>(window_len) * nv->numerator) /
               static_cast<double>(nv->denominator);
    }
    return static_cast<double>(window_len) * std::get<Seconds>(resolution.unit).value;
}

AnalysisBundle analyze(std::span<const std::uint8_t> midi_bytes, const AnalysisConfig& cfg, std::string_view file_name) {
    cfg.validate();
    const auto doc = midi::parse_smf(midi_bytes);
    auto extracted = midi::extract_notes(doc);
    auto& notes = extracted.notes;
    if (!cfg.include_percussion) {
        std::erase_if(notes, [](const midi::NoteEvent& n) { return n.channel == midi::kPercussionChannel; });
    }
    if (notes.empty()) throw Error(ErrorCode::NoNotes, "the file contains no notes");

    const auto tempo = midi::build_tempo_map(doc);
    midi::Tick span_end = 0;
    for (const auto& n : notes) span_end = std::max(span_end, n.end_tick());

    AnalysisBundle b;
    b.config = cfg;
    const auto grid = make_grid(span_end, cfg.resolution, tempo, doc.ppq);
    WeightOptions wopts;
    wopts.weighting = cfg.weighting;
    if (cfg.resolution.is_seconds()) {
        wopts.seconds_map = &tempo;
        wopts.ppq = doc.ppq;
    }
    b.segment_weights = segment_weights(notes, grid, wopts);
    b.boundaries_ticks = grid.boundaries;
    b.tempo_map = tempo.entries;

    b.segments.reserve(b.segment_weights.size());
    for (const auto& v : b.segment_weights) {
        SegmentCoefficients s;
        if (v.total() > 0.0) {
            const auto c = dft12(normalize_l1(v));
            std::copy(c.c.begin() + 1, c.c.end(), s.coeffs.begin());
        } else {
            s.zero_weight = true;
        }
        b.segments.push_back(s);
    }

    const auto coarse = coarsen(b.segment_weights, cfg.wavescape_max_columns);
    const PrefixTable table(coarse);
    std::array<std::future<WavescapeMatrix>, kMaxCoefficient> jobs;
    for (int k = 1; k <= kMaxCoefficient; ++k) {
        jobs[k - 1] = std::async(std::launch::async, [&table, k] { return build_wavescape(table, k); });
    }
    for (int k = 1; k <= kMaxCoefficient; ++k) b.wavescapes[k - 1] = jobs[k - 1].get();

    b.trajectory = sliding_trajectory(b.segment_weights, grid, tempo, doc.ppq, cfg.window_len, cfg.hop);

    auto& md = b.metadata;
    md.file_name = std::string(file_name);
    md.format = doc.format;
    md.ppq = doc.ppq;
    md.n_tracks = doc.tracks.size();
    md.n_notes = notes.size();
    md.dangling_note_offs = extracted.dangling_offs;
    md.span_end_tick = span_end;
    md.duration_seconds = midi::tick_to_seconds(tempo, doc.ppq, span_end);
    md.n_segments = grid.n_segments();
    md.wavescape_columns = coarse.size();
    md.window_span = window_span(cfg.resolution, cfg.window_len);
    md.window_span_unit = cfg.resolution.is_seconds() ? "seconds" : "whole_notes";
    return b;
}

Trajectory recompute_trajectory(const AnalysisBundle& bundle, std::size_t window_len, std::size_t hop) {
    SegmentGrid grid;
    grid.boundaries = bundle.boundaries_ticks;
    grid.resolution = bundle.config.resolution;
    midi::TempoMap map;
    map.entries = bundle.tempo_map;
    return sliding_trajectory(bundle.segment_weights, grid, map, bundle.metadata.ppq, window_len, hop);
}

// --- serialization ---------------------------------------------------------

namespace {

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

Complex decode_complex(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::BadBundle, "complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <std::size_t N>
json encode_coeffs(const std::array<Complex, N>& cs) {
    json arr = json::array();
    for (const auto& z : cs) arr.push_back(encode(z));
    return arr;
}

template <std::size_t N>
std::array<Complex, N> decode_coeffs(const json& j) {
    if (!j.is_array() || j.size() != N) throw Error(ErrorCode::BadBundle, fmt::format("expected {} coefficients", N));
    std::array<Complex, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = decode_complex(j[i]);
    return out;
}

json encode_config(const AnalysisConfig& c) {
    json j;
    j["resolution"] = c.resolution.to_string();
    j["window_len"] = c.window_len;
    j["hop"] = c.hop;
    j["wavescape_max_columns"] = c.wavescape_max_columns;
    j["include_percussion"] = c.include_percussion;
    j["weighting"] = std::string(to_string(c.weighting));
    return j;
}

AnalysisConfig decode_config(const json& j) {
    AnalysisConfig c;
    c.resolution = ResolutionSpec::parse(j.at("resolution").get<std::string>());
    c.window_len = j.at("window_len").get<std::size_t>();
    c.hop = j.at("hop").get<std::size_t>();
    c.wavescape_max_columns = j.at("wavescape_max_columns").get<std::size_t>();
    c.include_percussion = j.at("include_percussion").get<bool>();
    c.weighting = parse_weighting(j.at("weighting").get<std::string>());
    return c;
}

json encode_metadata(const AnalysisMetadata& m) {
    json j;
    j["file_name"] = m.file_name;
    j["format"] = m.format;
    j["ppq"] = m.ppq;
    j["n_tracks"] = m.n_tracks;
    j["n_notes"] = m.n_notes;
    j["dangling_note_offs"] = m.dangling_note_offs;
    j["span_end_tick"] = m.span_end_tick;
    j["duration_seconds"] = m.duration_seconds;
    j["n_segments"] = m.n_segments;
    j["wavescape_columns"] = m.wavescape_columns;
    j["window_span"] = {{"value", m.window_span}, {"unit", m.window_span_unit}};
    return j;
}

AnalysisMetadata decode_metadata(const json& j) {
    AnalysisMetadata m;
    m.file_name = j.at("file_name").get<std::string>();
    m.format = j.at("format").get<int>();
    m.ppq = j.at("ppq").get<int>();
    m.n_tracks = j.at("n_tracks").get<std::size_t>();
    m.n_notes = j.at("n_notes").get<std::size_t>();
    m.dangling_note_offs = j.at("dangling_note_offs").get<std::size_t>();
    m.span_end_tick = j.at("span_end_tick").get<midi::Tick>();
    m.duration_seconds = j.at("duration_seconds").get<double>();
    m.n_segments = j.at("n_segments").get<std::size_t>();
    m.wavescape_columns = j.at("wavescape_columns").get<std::size_t>();
    m.window_span = j.at("window_span").at("value").get<double>();
    m.window_span_unit = j.at("window_span").at("unit").get<std::string>();
    return m;
}

json encode_wavescape(const WavescapeMatrix& m) {
    json j;
    j["k"] = m.k();
    j["n"] = m.n();
    json rows = json::array();
    json zeros = json::array();
    for (std::size_t h = 0; h < m.n(); ++h) {
        json row = json::array();
        for (std::size_t i = 0; i < m.row_size(h); ++i) {
            row.push_back(encode(m.cell(h, i)));
            if (m.is_zero_weight(h, i)) zeros.push_back(json::array({h, i}));
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (!zeros.empty()) j["zero_weight"] = std::move(zeros);
    return j;
}

WavescapeMatrix decode_wavescape(const json& j) {
    const int k = j.at("k").get<int>();
    const auto n = j.at("n").get<std::size_t>();
    if (k < 1 || k > kMaxCoefficient) throw Error(ErrorCode::BadBundle, "wavescape k out of range");
    WavescapeMatrix m(k, n);
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != n) throw Error(ErrorCode::BadBundle, "wavescape must have n rows");
    for (std::size_t h = 0; h < n; ++h) {
        const auto& row = rows[h];
        if (!row.is_array() || row.size() != n - h) {
            throw Error(ErrorCode::BadBundle, fmt::format("wavescape row {} must have {} cells", h, n - h));
        }
        for (std::size_t i = 0; i < n - h; ++i) m.cell(h, i) = decode_complex(row[i]);
    }
    if (auto it = j.find("zero_weight"); it != j.end()) {
        for (const auto& hi : *it) m.set_zero_weight(hi.at(0).get<std::size_t>(), hi.at(1).get<std::size_t>(), true);
    }
    return m;
}

json encode_trajectory(const Trajectory& t) {
    json j;
    j["window_len"] = t.window_len;
    j["hop"] = t.hop;
    json pts = json::array();
    for (const auto& p : t.points) {
        json pj;
        pj["window_start"] = p.window_start;
        pj["time_center_seconds"] = p.time_center_seconds;
        pj["coeffs"] = encode_coeffs(p.coeffs);
        if (p.zero_weight) pj["zero_weight"] = true;
        pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    j["segment_duration"] = t.segment_duration;
    return j;
}

Trajectory decode_trajectory(const json& j) {
    Trajectory t;
    t.window_len = j.at("window_len").get<std::size_t>();
    t.hop = j.at("hop").get<std::size_t>();
    for (const auto& pj : j.at("points")) {
        TrajectoryPoint p;
        p.window_start = pj.at("window_start").get<std::size_t>();
        p.time_center_seconds = pj.at("time_center_seconds").get<double>();
        p.coeffs = decode_coeffs<kMaxCoefficient>(pj.at("coeffs"));
        p.zero_weight = pj.value("zero_weight", false);
        t.points.push_back(p);
    }
    t.segment_duration = j.at("segment_duration").get<std::vector<double>>();
    return t;
}

}  // namespace

std::string serialize_bundle(const AnalysisBundle& b, int indent) {
    json j;
    j["schema_version"] = std::string(kSchemaVersion);
    j["metadata"] = encode_metadata(b.metadata);
    j["config"] = encode_config(b.config);
    j["boundaries_ticks"] = b.boundaries_ticks;

    json tempo = json::array();
    for (const auto& e : b.tempo_map) tempo.push_back(json::array({e.tick, e.microseconds_per_quarter}));
    j["tempo_map"] = std::move(tempo);

    json weights = json::array();
    for (const auto& v : b.segment_weights) weights.push_back(v.w);
    j["segment_weights"] = std::move(weights);

    json segs = json::array();
    for (const auto& s : b.segments) {
        json sj;
        sj["coeffs"] = encode_coeffs(s.coeffs);
        if (s.zero_weight) sj["zero_weight"] = true;
        segs.push_back(std::move(sj));
    }
    j["segments"] = std::move(segs);

    json ws = json::array();
    for (const auto& m : b.wavescapes) ws.push_back(encode_wavescape(m));
    j["wavescapes"] = std::move(ws);
    j["trajectory"] = encode_trajectory(b.trajectory);
    return j.dump(indent);
}

AnalysisBundle deserialize_bundle(std::string_view json_text) {
    try {
        const json j = json::parse(json_text);
        const auto version = j.at("schema_version").get<std::string>();
        if (version != kSchemaVersion) {
            throw Error(ErrorCode::BadBundle, fmt::format("unsupported schema version '{}'", version));
        }
        AnalysisBundle b;
        b.metadata = decode_metadata(j.at("metadata"));
        b.config = decode_config(j.at("config"));
        b.boundaries_ticks = j.at("boundaries_ticks").get<std::vector<midi::Tick>>();
        for (const auto& e : j.at("tempo_map")) {
            b.tempo_map.push_back({e.at(0).get<midi::Tick>(), e.at(1).get<std::uint32_t>()});
        }
        for (const auto& v : j.at("segment_weights")) {
            PitchClassVector pv;
            pv.w = v.get<std::array<double, kPitchClasses>>();
            b.segment_weights.push_back(pv);
        }
        for (const auto& sj : j.at("segments")) {
            SegmentCoefficients s;
            s.coeffs = decode_coeffs<kMaxCoefficient>(sj.at("coeffs"));
            s.zero_weight = sj.value("zero_weight", false);
            b.segments.push_back(s);
        }
        const auto& ws = j.at("wavescapes");
        if (!ws.is_array() || ws.size() != kMaxCoefficient) throw Error(ErrorCode::BadBundle, "expected six wavescapes");
        for (std::size_t k = 0; k < kMaxCoefficient; ++k) b.wavescapes[k] = decode_wavescape(ws[k]);
        b.trajectory = decode_trajectory(j.at("trajectory"));
        return b;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadBundle, e.what());
    }
}

}  // namespace tonalscape
