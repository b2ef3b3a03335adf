#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tonalscape/analysis.hpp"
#include "tonalscape/error.hpp"
#include "tonalscape/render.hpp"

namespace tonalscape::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string input;
    std::string resolution = "1/4";
    std::string weighting = "duration";
    bool exclude_percussion = false;
    std::optional<std::size_t> max_columns;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("file", o.input, "Standard MIDI File (format 0 or 1)")->required();
    cmd->add_option("--resolution,-r", o.resolution, "Segment length: note value (1/8) or seconds (0.5s)")
        ->capture_default_str();
    cmd->add_option("--weighting", o.weighting, "duration | onset | velocity")->capture_default_str();
    cmd->add_flag("--exclude-percussion", o.exclude_percussion, "Drop notes on MIDI channel 10");
    cmd->add_option("--max-columns", o.max_columns,
                    "Wavescape segment cap (default 250, or TONALSCAPE_MAX_COLUMNS)");
}

std::size_t parse_positive(std::string_view text, std::string_view what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
        throw UsageError(fmt::format("{} must be a positive integer, got '{}'", what, text));
    }
    return v;
}

AnalysisConfig make_config(const CommonOptions& o, std::size_t window_len) {
    AnalysisConfig cfg;
    try {
        cfg.resolution = ResolutionSpec::parse(o.resolution);
        cfg.weighting = parse_weighting(o.weighting);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    cfg.window_len = window_len;
    cfg.include_percussion = !o.exclude_percussion;
    if (o.max_columns) {
        cfg.wavescape_max_columns = *o.max_columns;
    } else if (const char* env = std::getenv("TONALSCAPE_MAX_COLUMNS"); env != nullptr && *env != '\0') {
        cfg.wavescape_max_columns = parse_positive(env, "TONALSCAPE_MAX_COLUMNS");
    }
    if (cfg.wavescape_max_columns == 0) throw UsageError("--max-columns must be >= 1");
    if (cfg.window_len == 0) throw UsageError("--window must be >= 1");
    return cfg;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("cannot open '{}'", path));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

AnalysisBundle run_analysis(const CommonOptions& o, std::size_t window_len) {
    const auto cfg = make_config(o, window_len);
    const auto bytes = read_file(o.input);
    return analyze(bytes, cfg, fs::path(o.input).filename().string());
}

/// "1..6", "3", "3,5" or "2..4,6".
std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto dots = item.find("..");
        const int lo = static_cast<int>(parse_positive(item.substr(0, dots), "-k"));
        const int hi = dots == std::string_view::npos ? lo : static_cast<int>(parse_positive(item.substr(dots + 2), "-k"));
        if (lo > hi || hi > kMaxCoefficient) throw UsageError(fmt::format("-k must name coefficients in 1..6, got '{}'", text));
        for (int k = lo; k <= hi; ++k) {
            if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
        }
    }
    if (ks.empty()) throw UsageError("-k is empty");
    return ks;
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError(fmt::format("cannot create '{}': {}", dir, ec.message()));
    return fs::path(dir);
}

void print_set_table(const std::string& text, std::ostream& out) {
    PitchClassVector v;
    try {
        v = parse_pc_text(text);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    if (v.total() <= 0.0) throw InputError("pitch-class set is empty");
    const auto d = normalize_l1(v);
    out << fmt::format("{:<2} {:>10} {:>11}\n", "k", "magnitude", "phase");
    for (int k = 1; k <= kMaxCoefficient; ++k) {
        const Complex z = coefficient(d, k);
        // tiny magnitudes have no meaningful phase
        const double deg = std::abs(z) < 5e-13 ? 0.0 : phase_degrees(z);
        out << fmt::format("{:<2} {:>10} {:>10}°\n", k, format_fixed4(std::abs(z)), format_fixed4(deg));
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pitch-class Fourier analysis of MIDI files", "tonalscape"};
    app.require_subcommand(1);

    CommonOptions analyze_opts;
    std::size_t analyze_window = 1;
    std::string analyze_out;
    int indent = -1;
    auto* analyze_cmd = app.add_subcommand("analyze", "Write the JSON analysis bundle");
    add_common(analyze_cmd, analyze_opts);
    analyze_cmd->add_option("--window,-w", analyze_window, "Sliding window length in segments")->capture_default_str();
    analyze_cmd->add_option("--out,-o", analyze_out, "Output file (default: stdout)");
    analyze_cmd->add_option("--indent", indent, "JSON indentation (-1 for compact)");

    CommonOptions wave_opts;
    std::string wave_k = "1..6";
    std::string wave_dir = ".";
    int wave_width = 600;
    auto* wave_cmd = app.add_subcommand("wavescape", "Render wavescape SVGs");
    add_common(wave_cmd, wave_opts);
    wave_cmd->add_option("-k", wave_k, "Coefficients, e.g. 1..6, 3 or 3,5")->capture_default_str();
    wave_cmd->add_option("--out-dir,-d", wave_dir, "Output directory")->capture_default_str();
    wave_cmd->add_option("--width", wave_width, "Image width in pixels")->capture_default_str();

    CommonOptions disk_opts;
    std::size_t disk_window = 1;
    std::string disk_k = "1..6";
    std::string disk_dir = ".";
    int disk_width = 400;
    bool no_prototypes = false;
    std::optional<double> marker_time;
    auto* disk_cmd = app.add_subcommand("disks", "Render coefficient-space SVGs");
    add_common(disk_cmd, disk_opts);
    disk_cmd->add_option("--window,-w", disk_window, "Sliding window length in segments")->capture_default_str();
    disk_cmd->add_option("-k", disk_k, "Coefficients, e.g. 1..6, 3 or 3,5")->capture_default_str();
    disk_cmd->add_option("--out-dir,-d", disk_dir, "Output directory")->capture_default_str();
    disk_cmd->add_option("--width", disk_width, "Image width in pixels")->capture_default_str();
    disk_cmd->add_flag("--no-prototypes", no_prototypes, "Hide prototype labels");
    disk_cmd->add_option("--marker-time", marker_time, "Mark the window playing at this time (seconds)");

    std::string set_text;
    auto* set_cmd = app.add_subcommand("set", "Print the coefficients of a pitch-class set");
    set_cmd->add_option("pcs", set_text, "e.g. \"{0,4,7}\" or \"0:2, 6:1\"")->required();

    std::vector<const char*> argv{"tonalscape"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*analyze_cmd) {
            const auto bundle = run_analysis(analyze_opts, analyze_window);
            const auto text = serialize_bundle(bundle, indent) + "\n";
            if (analyze_out.empty()) {
                out << text;
            } else {
                write_file(analyze_out, text);
            }
        } else if (*wave_cmd) {
            const auto ks = parse_k_list(wave_k);
            RenderOptions ropts;
            ropts.width_px = wave_width;
            if (wave_width < 64) throw UsageError("--width must be >= 64");
            const auto bundle = run_analysis(wave_opts, 1);
            const auto dir = prepare_dir(wave_dir);
            const auto stem = fs::path(wave_opts.input).stem().string();
            for (int k : ks) {
                const auto path = dir / wavescape_file_name(stem, k);
                write_file(path, render_wavescape_svg(bundle.wavescapes[k - 1], ropts));
                out << path.string() << "\n";
            }
        } else if (*disk_cmd) {
            const auto ks = parse_k_list(disk_k);
            RenderOptions ropts;
            ropts.width_px = disk_width;
            ropts.show_prototypes = !no_prototypes;
            if (disk_width < 64) throw UsageError("--width must be >= 64");
            const auto bundle = run_analysis(disk_opts, disk_window);
            if (marker_time) ropts.marker_index = window_at_time(bundle.trajectory, *marker_time);
            const auto dir = prepare_dir(disk_dir);
            const auto stem = fs::path(disk_opts.input).stem().string();
            for (int k : ks) {
                const auto path = dir / disk_file_name(stem, k);
                write_file(path, render_disk_svg(k, bundle.trajectory, prototype_positions(k), ropts));
                out << path.string() << "\n";
            }
        } else if (*set_cmd) {
            print_set_table(set_text, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace tonalscape::cli
