#include "tonalscape/render.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tonalscape/error.hpp"

namespace tonalscape {

namespace {

constexpr int kRimSegments = 72;

std::string hex(const Rgba& c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

std::string opacity(std::uint8_t a) { return format_fixed4(a / 255.0); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::string& out, double width, double height) {
    const auto w = format_fixed4(width);
    const auto h = format_fixed4(height);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        w, h);
}

void background(std::string& out, const RenderOptions& opts, double width, double height) {
    if (opts.background.a == 0) return;
    out += fmt::format("<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"{}\"/>\n",
                       format_fixed4(width), format_fixed4(height), hex(opts.background), opacity(opts.background.a));
}

std::string point(double x, double y) { return format_fixed4(x) + "," + format_fixed4(y); }

}  // namespace

std::string format_fixed4(double x) {
    auto s = fmt::format("{:.4f}", x);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

void validate(const RenderOptions& opts) {
    if (opts.width_px < 64) throw Error(ErrorCode::BadConfig, fmt::format("width {} px is below 64", opts.width_px));
    if (!(opts.label_font_size > 0.0)) throw Error(ErrorCode::BadConfig, "label font size must be positive");
}

std::string render_wavescape_svg(const WavescapeMatrix& m, const RenderOptions& opts) {
    validate(opts);
    const double width = opts.width_px;
    const double height = width * std::numbers::sqrt3 / 2.0;
    const auto n = static_cast<double>(m.n());
    const double cell_w = width / n;
    const double row_h = height / n;

    std::string out;
    open_svg(out, width, height);
    background(out, opts, width, height);
    out += fmt::format("<g class=\"wavescape\" data-k=\"{}\" data-n=\"{}\">\n", m.k(), m.n());

    for (std::size_t h = 0; h < m.n(); ++h) {
        for (std::size_t i = 0; i < m.row_size(h); ++i) {
            const double xc = (static_cast<double>(i) + (static_cast<double>(h) + 1.0) / 2.0) * cell_w;
            // heights measured from the baseline, flipped for SVG
            const double mid = static_cast<double>(h) * row_h;
            const double top = height - (mid + row_h);
            const double side = height - mid;
            std::string pts = point(xc - cell_w / 2.0, side) + " " + point(xc, top) + " " + point(xc + cell_w / 2.0, side);
            if (h > 0) pts += " " + point(xc, height - (mid - row_h));

            if (m.is_zero_weight(h, i)) {
                out += fmt::format("<polygon class=\"cell zero\" data-h=\"{}\" data-i=\"{}\" points=\"{}\" fill=\"none\"/>\n",
                                   h, i, pts);
            } else {
                const Rgba c = phase_color(m.cell(h, i), opts.wheel);
                out += fmt::format(
                    "<polygon class=\"cell\" data-h=\"{}\" data-i=\"{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"{}\"/>\n",
                    h, i, pts, hex(c), opacity(c.a));
            }
        }
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_disk_svg(int k, const Trajectory& traj, std::span<const PrototypePoint> prototypes,
                            const RenderOptions& opts) {
    validate(opts);
    if (k < 1 || k > kMaxCoefficient) throw Error(ErrorCode::BadIndex, fmt::format("coefficient index {} not in 1..6", k));
    for (const auto& p : prototypes) {
        if (p.k != k) {
            throw Error(ErrorCode::MismatchedCoefficient,
                        fmt::format("prototype '{}' belongs to coefficient {}, not {}", p.label, p.k, k));
        }
    }

    const double size = opts.width_px;
    const double c = size / 2.0;
    const double radius = size * 0.38;
    const double rim_width = size * 0.03;
    const auto to_device = [&](Complex z) {
        const double mag = std::abs(z);
        if (mag > 1.0) z /= mag;
        return std::pair{c + radius * z.real(), c - radius * z.imag()};
    };

    std::string out;
    open_svg(out, size, size);
    background(out, opts, size, size);
    out += fmt::format("<g class=\"disk\" data-k=\"{}\">\n", k);

    // Hue rim: arc i spans phases [i, i+1) * 360/kRimSegments, colored at its midpoint.
    const double rim_r = radius + rim_width / 2.0;
    for (int i = 0; i < kRimSegments; ++i) {
        const double a0 = 2.0 * std::numbers::pi * i / kRimSegments;
        const double a1 = 2.0 * std::numbers::pi * (i + 1) / kRimSegments;
        const Rgba col = phase_color(std::polar(1.0, (a0 + a1) / 2.0), opts.wheel);
        out += fmt::format(
            "<path class=\"rim\" d=\"M {} A {} {} 0 0 0 {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
            point(c + rim_r * std::cos(a0), c - rim_r * std::sin(a0)), format_fixed4(rim_r), format_fixed4(rim_r),
            point(c + rim_r * std::cos(a1), c - rim_r * std::sin(a1)), hex(col), format_fixed4(rim_width));
    }
    out += fmt::format("<circle class=\"unit-circle\" cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"none\" stroke=\"#808080\" stroke-width=\"1.0000\"/>\n",
                       format_fixed4(c), format_fixed4(radius));
    out += fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c0c0c0\" stroke-width=\"0.5000\"/>\n",
                       format_fixed4(c - radius), format_fixed4(c), format_fixed4(c + radius), format_fixed4(c));
    out += fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c0c0c0\" stroke-width=\"0.5000\"/>\n",
                       format_fixed4(c), format_fixed4(c - radius), format_fixed4(c), format_fixed4(c + radius));

    if (opts.show_prototypes) {
        for (const auto& p : prototypes) {
            const auto [x, y] = to_device(p.position);
            out += fmt::format("<circle class=\"prototype\" cx=\"{}\" cy=\"{}\" r=\"2.5000\" fill=\"#404040\"/>\n",
                               format_fixed4(x), format_fixed4(y));
            out += fmt::format(
                "<text class=\"prototype-label\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\" fill=\"#202020\">{}</text>\n",
                format_fixed4(x + 4.0), format_fixed4(y - 4.0), format_fixed4(opts.label_font_size), xml_escape(p.label));
        }
    }

    std::vector<std::pair<double, double>> path;
    for (const auto& pt : traj.points) {
        if (!pt.zero_weight) path.push_back(to_device(pt.coefficient(k)));
    }
    if (path.size() >= 2) {
        std::string pts;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i > 0) pts += ' ';
            pts += point(path[i].first, path[i].second);
        }
        out += fmt::format("<polyline class=\"trajectory\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-opacity=\"0.6000\" stroke-width=\"1.0000\"/>\n",
                           pts);
    } else if (path.size() == 1) {
        out += fmt::format("<circle class=\"trajectory-point\" cx=\"{}\" cy=\"{}\" r=\"1.5000\" fill=\"#000000\"/>\n",
                           format_fixed4(path[0].first), format_fixed4(path[0].second));
    }

    if (opts.marker_index && *opts.marker_index < traj.size()) {
        const auto& pt = traj.points[*opts.marker_index];
        const auto [x, y] = to_device(pt.zero_weight ? Complex{} : pt.coefficient(k));
        out += fmt::format("<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"5.0000\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.0000\"/>\n",
                           format_fixed4(x), format_fixed4(y));
    }

    out += "</g>\n</svg>\n";
    return out;
}

std::string wavescape_file_name(std::string_view stem, int k) { return fmt::format("{}.wavescape.k{}.svg", stem, k); }

std::string disk_file_name(std::string_view stem, int k) { return fmt::format("{}.disk.k{}.svg", stem, k); }

}  // namespace tonalscape
