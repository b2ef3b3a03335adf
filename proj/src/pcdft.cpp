#include "tonalscape/pcdft.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "tonalscape/error.hpp"

namespace tonalscape {

namespace {

// cos/sin of m * 30 degrees, exact where the true value is 0, +-1/2 or +-1.
constexpr double kHalfSqrt3 = 0.86602540378443864676;
constexpr std::array<double, 12> kCos = {1.0,  kHalfSqrt3,  0.5,  0.0, -0.5, -kHalfSqrt3,
                                         -1.0, -kHalfSqrt3, -0.5, 0.0, 0.5,  kHalfSqrt3};
constexpr std::array<double, 12> kSin = {0.0,  0.5,  kHalfSqrt3,  1.0,  kHalfSqrt3,  0.5,
                                         0.0, -0.5, -kHalfSqrt3, -1.0, -kHalfSqrt3, -0.5};

int mod12(long long x) noexcept {
    const auto r = static_cast<int>(x % 12);
    return r < 0 ? r + 12 : r;
}

template <typename Weights>
CoefficientSet transform(const Weights& w) noexcept {
    CoefficientSet out;
    for (int k = 0; k <= kMaxCoefficient; ++k) {
        double re = 0.0;
        double im = 0.0;
        for (int p = 0; p < kPitchClasses; ++p) {
            const int m = (k * p) % 12;
            re += w[p] * kCos[m];
            im -= w[p] * kSin[m];
        }
        out.c[k] = Complex(re, im);
    }
    return out;
}

constexpr std::array<std::string_view, 12> kNames = {"C",  "C#", "D",  "Eb", "E",  "F",
                                                     "F#", "G",  "Ab", "A",  "Bb", "B"};

}  // namespace

double PitchClassVector::total() const noexcept {
    double s = 0.0;
    for (double x : w) s += x;
    return s;
}

PitchClassVector& PitchClassVector::operator+=(const PitchClassVector& other) noexcept {
    for (int p = 0; p < kPitchClasses; ++p) w[p] += other.w[p];
    return *this;
}

PitchClassVector PitchClassVector::from_set(std::initializer_list<int> pcs) {
    return from_set(std::span<const int>(pcs.begin(), pcs.size()));
}

PitchClassVector PitchClassVector::from_set(std::span<const int> pcs) {
    PitchClassVector v;
    for (int pc : pcs) v.w[mod12(pc)] += 1.0;
    return v;
}

CoefficientSet& CoefficientSet::operator+=(const CoefficientSet& o) noexcept {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
    normalized = false;
    return *this;
}

CoefficientSet& CoefficientSet::operator-=(const CoefficientSet& o) noexcept {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= o.c[k];
    normalized = false;
    return *this;
}

PitchClassDistribution normalize_l1(const PitchClassVector& v) {
    double sum = 0.0;
    for (double x : v.w) {
        if (!std::isfinite(x) || x < 0.0) {
            throw Error(ErrorCode::NegativeWeight, "pitch-class weights must be finite and >= 0");
        }
        sum += x;
    }
    if (sum <= 0.0) throw Error(ErrorCode::ZeroVector, "vector has zero total weight");
    std::array<double, kPitchClasses> d{};
    for (int p = 0; p < kPitchClasses; ++p) d[p] = v.w[p] / sum;
    return PitchClassDistribution(d);
}

CoefficientSet dft12(const PitchClassVector& v) noexcept { return transform(v.w); }

CoefficientSet dft12(const PitchClassDistribution& d) noexcept {
    auto out = transform(d.values());
    out.c[0] = Complex(1.0, 0.0);
    out.normalized = true;
    return out;
}

Complex coefficient(const PitchClassDistribution& d, int k) {
    if (k < 1 || k > kMaxCoefficient) {
        throw Error(ErrorCode::BadIndex, "coefficient index must be in 1..6, got " + std::to_string(k));
    }
    double re = 0.0;
    double im = 0.0;
    for (int p = 0; p < kPitchClasses; ++p) {
        const int m = (k * p) % 12;
        re += d[p] * kCos[m];
        im -= d[p] * kSin[m];
    }
    return {re, im};
}

Complex twelfth_root(int m) noexcept {
    const int r = mod12(m);
    return {kCos[r], -kSin[r]};
}

double phase(Complex z) noexcept {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    const double a = std::atan2(z.imag(), z.real());
    return a <= -std::numbers::pi ? std::numbers::pi : a;
}

double phase_degrees(Complex z) noexcept { return phase(z) * 180.0 / std::numbers::pi; }

PitchClassVector transpose(const PitchClassVector& v, int t) noexcept {
    PitchClassVector out;
    for (int p = 0; p < kPitchClasses; ++p) out.w[p] = v.w[mod12(static_cast<long long>(p) - t)];
    return out;
}

PitchClassVector invert(const PitchClassVector& v) noexcept {
    PitchClassVector out;
    for (int p = 0; p < kPitchClasses; ++p) out.w[p] = v.w[mod12(-p)];
    return out;
}

// Grammar (whitespace allowed between tokens):
//   text  := '{' items? '}' | items?
//   items := item (',' item)*
//   item  := pc (':' weight)?
namespace {

class PcTextParser {
  public:
    explicit PcTextParser(std::string_view s) : s_(s) {}

    PitchClassVector run() {
        PitchClassVector v;
        skip_ws();
        const bool braced = peek('{');
        if (braced) ++pos_;
        skip_ws();
        const bool empty = braced ? peek('}') : at_end();
        if (!empty) {
            item(v);
            skip_ws();
            while (peek(',')) {
                ++pos_;
                item(v);
                skip_ws();
            }
        }
        if (braced) {
            if (!peek('}')) throw ParseError(pos_, "expected ',' or '}'");
            ++pos_;
            skip_ws();
        }
        if (!at_end()) throw ParseError(pos_, "unexpected character '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

  private:
    void item(PitchClassVector& v) {
        skip_ws();
        const std::size_t start = pos_;
        if (at_end() || !is_digit(s_[pos_])) throw ParseError(pos_, "expected a pitch class 0..11");
        int pc = 0;
        while (!at_end() && is_digit(s_[pos_])) {
            pc = pc * 10 + (s_[pos_] - '0');
            if (pc > 11) throw ParseError(start, "pitch class out of range 0..11");
            ++pos_;
        }
        skip_ws();
        double weight = 1.0;
        if (peek(':')) {
            ++pos_;
            skip_ws();
            weight = number();
        }
        v.w[pc] += weight;
    }

    double number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || !std::isfinite(value)) throw ParseError(start, "expected a weight");
        pos_ += static_cast<std::size_t>(ptr - first);
        if (value < 0.0) {
            throw Error(ErrorCode::NegativeWeight,
                        "negative weight at position " + std::to_string(start));
        }
        return value;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    bool at_end() const { return pos_ >= s_.size(); }
    bool peek(char c) const { return !at_end() && s_[pos_] == c; }
    void skip_ws() {
        while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
            ++pos_;
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<int> shifted(std::initializer_list<int> base, int t) {
    std::vector<int> out;
    for (int p : base) out.push_back(mod12(p + t));
    return out;
}

std::vector<PrototypeSpec> build_catalog() {
    std::vector<PrototypeSpec> cat;
    const auto add = [&](int k, std::string label, std::vector<int> pcs) {
        cat.push_back({k, std::move(label), std::move(pcs)});
    };
    const auto name = [](int pc) { return std::string(kNames[mod12(pc)]); };

    for (int p = 0; p < 12; ++p) add(1, name(p), {p});

    for (int p = 0; p < 6; ++p) add(2, name(p) + "-" + name(p + 6), {p, p + 6});

    for (int p = 0; p < 4; ++p) add(3, "+ on " + name(p), shifted({0, 4, 8}, p));
    // H_{a,b}: the hexatonic scale containing a and a+1 (H_{0,3} wraps).
    add(3, "H_{0,1}", shifted({0, 1, 4, 5, 8, 9}, 0));
    add(3, "H_{1,2}", shifted({0, 1, 4, 5, 8, 9}, 1));
    add(3, "H_{2,3}", shifted({0, 1, 4, 5, 8, 9}, 2));
    add(3, "H_{0,3}", shifted({0, 1, 4, 5, 8, 9}, 3));

    for (int p = 0; p < 3; ++p) add(4, "o7 on " + name(p), shifted({0, 3, 6, 9}, p));
    add(4, "Oct_{0,1}", shifted({0, 1, 3, 4, 6, 7, 9, 10}, 0));
    add(4, "Oct_{1,2}", shifted({0, 1, 3, 4, 6, 7, 9, 10}, 1));
    add(4, "Oct_{2,3}", shifted({0, 1, 3, 4, 6, 7, 9, 10}, 2));

    for (int i = 0; i < 12; ++i) add(5, name(7 * i), {mod12(7 * i)});
    const std::initializer_list<int> major = {0, 2, 4, 5, 7, 9, 11};
    add(5, "0♯/♭", shifted(major, 0));
    for (int s = 1; s <= 5; ++s) add(5, std::to_string(s) + "♯", shifted(major, 7 * s));
    add(5, "6♯/♭", shifted(major, 6));
    for (int f = 1; f <= 5; ++f) add(5, std::to_string(f) + "♭", shifted(major, 5 * f));

    add(6, "WT_0", {0, 2, 4, 6, 8, 10});
    add(6, "WT_1", {1, 3, 5, 7, 9, 11});
    return cat;
}

}  // namespace

PitchClassVector parse_pc_text(std::string_view text) { return PcTextParser(text).run(); }

const std::vector<PrototypeSpec>& default_prototype_catalog() {
    static const std::vector<PrototypeSpec> catalog = build_catalog();
    return catalog;
}

std::vector<PrototypePoint> prototype_positions(int k) {
    return prototype_positions(k, default_prototype_catalog());
}

std::vector<PrototypePoint> prototype_positions(int k, std::span<const PrototypeSpec> catalog) {
    if (k < 1 || k > kMaxCoefficient) {
        throw Error(ErrorCode::BadIndex, "coefficient index must be in 1..6, got " + std::to_string(k));
    }
    std::vector<PrototypePoint> out;
    for (const auto& spec : catalog) {
        if (spec.k != k) continue;
        const auto d = normalize_l1(PitchClassVector::from_set(spec.pcs));
        out.push_back({spec.label, spec.pcs, k, coefficient(d, k)});
    }
    return out;
}

std::string_view pitch_class_name(int pc) { return kNames[mod12(pc)]; }

}  // namespace tonalscape
