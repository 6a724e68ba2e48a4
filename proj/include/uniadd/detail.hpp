#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace uniadd::detail {

// Neumaier-compensated accumulation; fixed insertion order keeps results
// bit-identical across runs.
struct NeumaierSum {
    double sum = 0;
    double comp = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ComplexSum {
    NeumaierSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(2 pi i j / n); the single source of the trigonometric evaluation so that
// table-based and direct paths agree bit-for-bit.
inline std::complex<double> root_of_unity(std::uint64_t j, std::uint64_t n) {
    double ang = kTwoPi * (static_cast<double>(j) / static_cast<double>(n));
    return {std::cos(ang), std::sin(ang)};
}

inline std::complex<double> cpow_int(std::complex<double> base, unsigned e) {
    std::complex<double> acc(1.0, 0.0);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace uniadd::detail
