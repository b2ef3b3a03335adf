#pragma once

// Triangular hierarchy of window coefficients.
//
// Row h, column i of a wavescape holds the normalized coefficient of the window
// covering segments i..i+h. Windows are evaluated from prefix sums taken in
// coefficient space, which is valid because the transform is linear.

#include <cstdint>
#include <span>
#include <vector>

#include "tonalscape/pcdft.hpp"

namespace tonalscape {

class PrefixTable {
  public:
    /// Throws Error(EmptyInput) for an empty list.
    explicit PrefixTable(std::span<const PitchClassVector> vectors);

    /// Number of base segments.
    std::size_t size() const noexcept { return prefix_.size() - 1; }
    const CoefficientSet& operator[](std::size_t i) const { return prefix_[i]; }

    /// Raw coefficients of segments [start, start + len).
    CoefficientSet window(std::size_t start, std::size_t len) const;

  private:
    std::vector<CoefficientSet> prefix_;
};

/// Normalized k-th coefficient of a window. Throws Error(OutOfRange),
/// Error(BadIndex) or Error(ZeroWeightWindow).
Complex window_coefficient(const PrefixTable& table, std::size_t start, std::size_t len, int k);

struct Rgba {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 0;
    bool operator==(const Rgba&) const = default;
};

class WavescapeMatrix {
  public:
    WavescapeMatrix() = default;
    WavescapeMatrix(int k, std::size_t n);

    int k() const noexcept { return k_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t cell_count() const noexcept { return cells_.size(); }
    std::size_t row_size(std::size_t h) const noexcept { return n_ - h; }

    const Complex& cell(std::size_t h, std::size_t i) const { return cells_[index(h, i)]; }
    Complex& cell(std::size_t h, std::size_t i) { return cells_[index(h, i)]; }
    bool is_zero_weight(std::size_t h, std::size_t i) const { return zero_weight_[index(h, i)] != 0; }
    void set_zero_weight(std::size_t h, std::size_t i, bool zero) { zero_weight_[index(h, i)] = zero ? 1 : 0; }
    bool any_zero_weight() const noexcept;

    /// Window over the whole piece.
    const Complex& tip() const { return cell(n_ - 1, 0); }

    bool operator==(const WavescapeMatrix&) const = default;

  private:
    std::size_t index(std::size_t h, std::size_t i) const;

    int k_ = 1;
    std::size_t n_ = 0;
    // rows stored bottom-up, row h has n - h cells
    std::vector<Complex> cells_;
    std::vector<std::uint8_t> zero_weight_;
};

/// Throws Error(EmptyInput) or Error(BadIndex).
WavescapeMatrix build_wavescape(std::span<const PitchClassVector> vectors, int k);
WavescapeMatrix build_wavescape(const PrefixTable& table, int k);

/// Hue wheel used for phase colors; anchor is the phase mapped to hue 0.
struct ColorWheel {
    double anchor_degrees = 0.0;
    bool clockwise = false;
};

/// Hue from the phase, full saturation and value; alpha from the magnitude
/// (clamped to [0, 1]), rounded half up to 0..255.
Rgba phase_color(Complex z, const ColorWheel& wheel = {});

/// HSV with s = v = 1 to 8-bit RGB, rounding half up.
Rgba hue_to_rgb(double hue_degrees, std::uint8_t alpha = 255);

}  // namespace tonalscape
