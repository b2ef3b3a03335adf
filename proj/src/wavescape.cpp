#include "tonalscape/wavescape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tonalscape/error.hpp"

namespace tonalscape {

namespace {

void check_k(int k) {
    if (k < 1 || k > kMaxCoefficient) {
        throw Error(ErrorCode::BadIndex, fmt::format("coefficient index must be in 1..6, got {}", k));
    }
}

std::uint8_t to_byte(double unit) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(unit, 0.0, 1.0) * 255.0 + 0.5));
}

}  // namespace

PrefixTable::PrefixTable(std::span<const PitchClassVector> vectors) {
    if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "no segments");
    prefix_.reserve(vectors.size() + 1);
    prefix_.emplace_back();
    for (const auto& v : vectors) prefix_.push_back(prefix_.back() + dft12(v));
}

CoefficientSet PrefixTable::window(std::size_t start, std::size_t len) const {
    if (len == 0 || start + len > size()) {
        throw Error(ErrorCode::OutOfRange,
                    fmt::format("window [{}, {}) outside {} segments", start, start + len, size()));
    }
    return prefix_[start + len] - prefix_[start];
}

Complex window_coefficient(const PrefixTable& table, std::size_t start, std::size_t len, int k) {
    check_k(k);
    const auto raw = table.window(start, len);
    const double total = raw.c[0].real();
    if (!(total > 0.0)) {
        throw Error(ErrorCode::ZeroWeightWindow,
                    fmt::format("window [{}, {}) has no pitch-class weight", start, start + len));
    }
    return raw.c[k] / total;
}

WavescapeMatrix::WavescapeMatrix(int k, std::size_t n)
    : k_(k), n_(n), cells_(n * (n + 1) / 2), zero_weight_(n * (n + 1) / 2, 0) {}

std::size_t WavescapeMatrix::index(std::size_t h, std::size_t i) const {
    if (h >= n_ || i >= n_ - h) {
        throw Error(ErrorCode::OutOfRange, fmt::format("cell ({}, {}) outside a wavescape of size {}", h, i, n_));
    }
    // rows 0..h-1 hold n + (n-1) + ... + (n-h+1) cells
    return h * n_ - h * (h - 1) / 2 + i;
}

bool WavescapeMatrix::any_zero_weight() const noexcept {
    return std::any_of(zero_weight_.begin(), zero_weight_.end(), [](auto z) { return z != 0; });
}

WavescapeMatrix build_wavescape(std::span<const PitchClassVector> vectors, int k) {
    check_k(k);
    return build_wavescape(PrefixTable(vectors), k);
}

WavescapeMatrix build_wavescape(const PrefixTable& table, int k) {
    check_k(k);
    const std::size_t n = table.size();
    WavescapeMatrix m(k, n);
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t i = 0; i + h < n; ++i) {
            const Complex total = table[i + h + 1].c[0] - table[i].c[0];
            if (!(total.real() > 0.0)) {
                m.set_zero_weight(h, i, true);
                continue;
            }
            m.cell(h, i) = (table[i + h + 1].c[k] - table[i].c[k]) / total.real();
        }
    }
    return m;
}

Rgba hue_to_rgb(double hue_degrees, std::uint8_t alpha) {
    double h = std::fmod(hue_degrees, 360.0);
    if (h < 0.0) h += 360.0;
    const double sector = h / 60.0;
    const double x = 1.0 - std::fabs(std::fmod(sector, 2.0) - 1.0);
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    switch (static_cast<int>(sector)) {
        case 0: r = 1; g = x; break;
        case 1: r = x; g = 1; break;
        case 2: g = 1; b = x; break;
        case 3: g = x; b = 1; break;
        case 4: r = x; b = 1; break;
        default: r = 1; b = x; break;
    }
    return {to_byte(r), to_byte(g), to_byte(b), alpha};
}

Rgba phase_color(Complex z, const ColorWheel& wheel) {
    const double magnitude = std::min(std::abs(z), 1.0);
    double deg = phase_degrees(z);
    if (wheel.clockwise) deg = -deg;
    return hue_to_rgb(deg - wheel.anchor_degrees, to_byte(magnitude));
}

}  // namespace tonalscape
