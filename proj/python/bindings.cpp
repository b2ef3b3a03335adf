#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tonalscape/analysis.hpp"
#include "tonalscape/error.hpp"
#include "tonalscape/midi.hpp"
#include "tonalscape/render.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace ts = tonalscape;

namespace {

ts::PitchClassVector to_vector(const std::array<double, 12>& w) {
    ts::PitchClassVector v;
    v.w = w;
    return v;
}

std::vector<std::uint8_t> to_bytes(const py::bytes& data) {
    const std::string_view view = data;
    return {view.begin(), view.end()};
}

std::vector<ts::Complex> coefficients(const std::array<double, 12>& w, bool normalize) {
    const auto v = to_vector(w);
    const auto c = normalize ? ts::dft12(ts::normalize_l1(v)) : ts::dft12(v);
    return {c.c.begin(), c.c.end()};
}

ts::RenderOptions render_options(int width, bool show_prototypes, std::optional<std::size_t> marker) {
    ts::RenderOptions o;
    o.width_px = width;
    o.show_prototypes = show_prototypes;
    o.marker_index = marker;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pitch-class Fourier analysis of MIDI files";

    py::register_exception<ts::Error>(m, "TonalscapeError", PyExc_ValueError);

    m.def("parse_pc_text", [](std::string_view s) { return ts::parse_pc_text(s).w; }, "text"_a,
          "Parse \"{0,4,7}\" or \"0:2, 6:1\" into 12 weights.");
    m.def("dft12", &coefficients, "weights"_a, "normalize"_a = true,
          "Coefficients 0..6, normalized by the L1 norm unless normalize=False.");
    m.def("coefficient",
          [](const std::array<double, 12>& w, int k) { return ts::coefficient(ts::normalize_l1(to_vector(w)), k); },
          "weights"_a, "k"_a);
    m.def("transpose", [](const std::array<double, 12>& w, int t) { return ts::transpose(to_vector(w), t).w; },
          "weights"_a, "t"_a);
    m.def("phase_degrees", &ts::phase_degrees, "z"_a);
    m.def("phase_color",
          [](ts::Complex z) {
              const auto c = ts::phase_color(z);
              return py::make_tuple(c.r, c.g, c.b, c.a);
          },
          "z"_a, "RGBA tuple for a coefficient value.");
    m.def("prototype_positions",
          [](int k) {
              py::list out;
              for (const auto& p : ts::prototype_positions(k)) {
                  out.append(py::dict("label"_a = p.label, "pcs"_a = p.pcs, "k"_a = p.k, "position"_a = p.position));
              }
              return out;
          },
          "k"_a);

    m.def("parse_notes",
          [](const py::bytes& data) {
              const auto bytes = to_bytes(data);
              const auto notes = ts::midi::extract_notes(ts::midi::parse_smf(bytes));
              py::list out;
              for (const auto& n : notes.notes) {
                  out.append(py::dict("pitch"_a = n.pitch, "onset_tick"_a = n.onset_tick,
                                      "duration_ticks"_a = n.duration_ticks, "velocity"_a = n.velocity,
                                      "track_index"_a = n.track_index, "channel"_a = n.channel));
              }
              return out;
          },
          "data"_a, "Parse a Standard MIDI File and return its notes.");

    py::class_<ts::AnalysisBundle>(m, "Bundle")
        .def_property_readonly("n_segments", [](const ts::AnalysisBundle& b) { return b.metadata.n_segments; })
        .def_property_readonly("window_span", [](const ts::AnalysisBundle& b) {
            return py::make_tuple(b.metadata.window_span, b.metadata.window_span_unit);
        })
        .def_property_readonly("duration_seconds", [](const ts::AnalysisBundle& b) { return b.metadata.duration_seconds; })
        .def("tip", [](const ts::AnalysisBundle& b, int k) { return b.wavescapes.at(k - 1).tip(); }, "k"_a)
        .def("trajectory",
             [](const ts::AnalysisBundle& b, int k) {
                 std::vector<ts::Complex> out;
                 for (const auto& p : b.trajectory.points) out.push_back(p.coefficient(k));
                 return out;
             },
             "k"_a)
        .def("window_at_time", [](const ts::AnalysisBundle& b, double t) { return ts::window_at_time(b.trajectory, t); },
             "t_seconds"_a)
        .def("with_window",
             [](const ts::AnalysisBundle& b, std::size_t window_len) {
                 auto copy = b;
                 copy.trajectory = ts::recompute_trajectory(b, window_len, b.config.hop);
                 copy.config.window_len = window_len;
                 copy.metadata.window_span = ts::window_span(b.config.resolution, window_len);
                 return copy;
             },
             "window_len"_a, "Same analysis with a different sliding window, without re-parsing.")
        .def("to_json", [](const ts::AnalysisBundle& b, int indent) { return ts::serialize_bundle(b, indent); },
             "indent"_a = -1)
        .def_static("from_json", [](std::string_view s) { return ts::deserialize_bundle(s); }, "text"_a)
        .def("wavescape_svg",
             [](const ts::AnalysisBundle& b, int k, int width) {
                 return ts::render_wavescape_svg(b.wavescapes.at(k - 1), render_options(width, true, std::nullopt));
             },
             "k"_a, "width"_a = 600)
        .def("disk_svg",
             [](const ts::AnalysisBundle& b, int k, int width, bool show_prototypes, std::optional<std::size_t> marker) {
                 return ts::render_disk_svg(k, b.trajectory, ts::prototype_positions(k),
                                            render_options(width, show_prototypes, marker));
             },
             "k"_a, "width"_a = 400, "show_prototypes"_a = true, "marker_index"_a = py::none())
        .def("__eq__", [](const ts::AnalysisBundle& a, const ts::AnalysisBundle& b) { return a == b; });

    m.def("analyze",
          [](const py::bytes& data, const std::string& resolution, std::size_t window_len, std::size_t hop,
             std::size_t max_columns, bool include_percussion, const std::string& weighting,
             const std::string& file_name) {
              ts::AnalysisConfig cfg;
              cfg.resolution = ts::ResolutionSpec::parse(resolution);
              cfg.window_len = window_len;
              cfg.hop = hop;
              cfg.wavescape_max_columns = max_columns;
              cfg.include_percussion = include_percussion;
              cfg.weighting = ts::parse_weighting(weighting);
              const auto bytes = to_bytes(data);
              py::gil_scoped_release release;
              return ts::analyze(bytes, cfg, file_name);
          },
          "data"_a, "resolution"_a = "1/4", "window_len"_a = 1, "hop"_a = 1,
          "max_columns"_a = ts::kDefaultMaxColumns, "include_percussion"_a = true, "weighting"_a = "duration",
          "file_name"_a = "");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
