#pragma once

// SVG 1.1 emitters. Output is byte-deterministic: every coordinate and
// opacity is printed with four decimals.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tonalscape/pcdft.hpp"
#include "tonalscape/trajectory.hpp"
#include "tonalscape/wavescape.hpp"

namespace tonalscape {

struct RenderOptions {
    int width_px = 600;
    Rgba background{255, 255, 255, 255};
    bool show_prototypes = true;
    std::optional<std::size_t> marker_index;
    double label_font_size = 11.0;
    ColorWheel wheel;
};

/// Throws Error(BadConfig) if width_px < 64.
void validate(const RenderOptions& opts);

/// Row h, column i becomes a diamond centered horizontally at
/// (i + (h+1)/2) / n of the width with its top vertex at (h+1)/n of the
/// triangle height. Bottom-row cells are clipped to triangles.
std::string render_wavescape_svg(const WavescapeMatrix& m, const RenderOptions& opts);

/// Unit disk for coefficient k: hue rim, optional prototype labels, trajectory
/// polyline, optional white marker. +real is right, +imag is up.
/// Throws Error(MismatchedCoefficient) if a prototype belongs to another k.
std::string render_disk_svg(int k, const Trajectory& traj, std::span<const PrototypePoint> prototypes,
                            const RenderOptions& opts);

std::string wavescape_file_name(std::string_view stem, int k);
std::string disk_file_name(std::string_view stem, int k);

/// Fixed four-decimal formatting with "-0.0000" folded to "0.0000".
std::string format_fixed4(double x);

}  // namespace tonalscape
