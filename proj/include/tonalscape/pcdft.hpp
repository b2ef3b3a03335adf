#pragma once

// Pitch-class vectors and their 12-point discrete Fourier transform.
//
// Sign convention: c_k = sum_p v_p * exp(-2*pi*i*k*p/12), pitch class C = 0.
// Phases are reported in (-pi, pi]; the phase of 0 is 0.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tonalscape {

using Complex = std::complex<double>;

inline constexpr int kPitchClasses = 12;
inline constexpr int kMaxCoefficient = 6;

/// Twelve nonnegative weights indexed by pitch class.
struct PitchClassVector {
    std::array<double, kPitchClasses> w{};

    double& operator[](std::size_t pc) { return w[pc]; }
    double operator[](std::size_t pc) const { return w[pc]; }

    double total() const noexcept;

    PitchClassVector& operator+=(const PitchClassVector& other) noexcept;
    friend PitchClassVector operator+(PitchClassVector a, const PitchClassVector& b) noexcept {
        return a += b;
    }
    friend PitchClassVector operator*(double s, PitchClassVector v) noexcept {
        for (auto& x : v.w) x *= s;
        return v;
    }
    bool operator==(const PitchClassVector&) const = default;

    /// Vector with weight 1 at every listed pitch class; repeats accumulate.
    static PitchClassVector from_set(std::initializer_list<int> pcs);
    static PitchClassVector from_set(std::span<const int> pcs);
};

/// A pitch-class vector with unit L1 norm. Only obtainable through normalize_l1.
class PitchClassDistribution {
  public:
    const std::array<double, kPitchClasses>& values() const noexcept { return d_; }
    double operator[](std::size_t pc) const { return d_[pc]; }

  private:
    explicit PitchClassDistribution(const std::array<double, kPitchClasses>& d) : d_(d) {}
    std::array<double, kPitchClasses> d_;

    friend PitchClassDistribution normalize_l1(const PitchClassVector& v);
};

/// Coefficients 0..6 of one vector.
struct CoefficientSet {
    std::array<Complex, kMaxCoefficient + 1> c{};
    bool normalized = false;

    const Complex& operator[](std::size_t k) const { return c[k]; }
    Complex& operator[](std::size_t k) { return c[k]; }

    CoefficientSet& operator+=(const CoefficientSet& o) noexcept;
    CoefficientSet& operator-=(const CoefficientSet& o) noexcept;
    friend CoefficientSet operator-(CoefficientSet a, const CoefficientSet& b) noexcept {
        return a -= b;
    }
    friend CoefficientSet operator+(CoefficientSet a, const CoefficientSet& b) noexcept {
        return a += b;
    }
};

/// Throws Error(ZeroVector) when the vector has no weight.
PitchClassDistribution normalize_l1(const PitchClassVector& v);

/// Raw transform; coefficient 0 equals the total weight.
CoefficientSet dft12(const PitchClassVector& v) noexcept;
/// Normalized transform; c[0] is exactly 1 and the normalized flag is set.
CoefficientSet dft12(const PitchClassDistribution& d) noexcept;

/// k-th normalized coefficient, k in 1..6. Throws Error(BadIndex) otherwise.
Complex coefficient(const PitchClassDistribution& d, int k);

/// exp(-2*pi*i*m/12) with exact values on the axes.
Complex twelfth_root(int m) noexcept;

/// Phase in (-pi, pi], 0 for z == 0.
double phase(Complex z) noexcept;
double phase_degrees(Complex z) noexcept;

/// Accepts "{0, 4, 7}" (multiset) or "0:2, 4:1, 7:0.5" (weighted).
/// Throws ParseError (with position) or Error(NegativeWeight).
PitchClassVector parse_pc_text(std::string_view text);

/// w'[p] = w[(p - t) mod 12].
PitchClassVector transpose(const PitchClassVector& v, int t) noexcept;
/// w'[p] = w[(-p) mod 12].
PitchClassVector invert(const PitchClassVector& v) noexcept;

struct PrototypeSpec {
    int k = 0;
    std::string label;
    std::vector<int> pcs;
};

struct PrototypePoint {
    std::string label;
    std::vector<int> pcs;
    int k = 0;
    Complex position;
};

/// The built-in landmark sets for all six coefficient spaces.
const std::vector<PrototypeSpec>& default_prototype_catalog();

/// Landmarks for coefficient k with positions computed from the transform.
std::vector<PrototypePoint> prototype_positions(int k);
std::vector<PrototypePoint> prototype_positions(int k, std::span<const PrototypeSpec> catalog);

/// "C", "C#", "D", "Eb", ...
std::string_view pitch_class_name(int pc);

}  // namespace tonalscape
