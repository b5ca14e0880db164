#pragma once

// Constants as printed in the source tables, kept as plain data. Recomputed
// values are compared against these; they are never fed back into the
// pipelines except where a downstream derivation starts from a printed row.

#include <pnt/regimes.hpp>

#include <array>
#include <cmath>

namespace pnt::published {

struct Row {
    const char* label;
    double X;       // the row applies for log x >= X
    double log_x0;  // where the analytic pipeline is evaluated
    Regime regime;
    double sigma;
    int K;
    double A, B, C;
    double eps0_mantissa;
    int eps0_exp10;

    [[nodiscard]] double log10_eps0() const { return std::log10(eps0_mantissa) + eps0_exp10; }
};

inline const std::array<Row, 15>& table1() {
    static const std::array<Row, 15> rows{{
        {"log 2", std::log(2.0), 2488, Regime::Medium, 0.985692, 4, 9.39, 1.515, 0.8274, 2.317, 1},
        {"3000", 3000, 3000, Regime::Medium, 0.986688, 4, 8.86, 1.514, 0.8288, 3.14, -14},
        {"4000", 4000, 4000, Regime::Medium, 0.988164, 4, 8.15, 1.512, 0.8309, 3.43, -17},
        {"5000", 5000, 5000, Regime::Medium, 0.989238, 4, 7.65, 1.511, 0.8324, 8.14, -20},
        {"6000", 6000, 6000, Regime::Medium, 0.990000, 4, 7.22, 1.510, 0.8335, 3.35, -22},
        {"7000", 7000, 7000, Regime::Medium, 0.990718, 4, 6.99, 1.510, 0.8345, 2.14, -24},
        {"8000", 8000, 8000, Regime::Medium, 0.991258, 4, 6.78, 1.509, 0.8353, 1.89, -26},
        {"9000", 9000, 9000, Regime::Medium, 0.991714, 4, 6.58, 1.509, 0.8359, 2.22, -28},
        {"10000", 10000, 10000, Regime::Medium, 0.992100, 5, 6.72, 1.508, 0.8369, 3.27, -30},
        {"1e5", 1e5, 1e5, Regime::Large, 0.997312, 1, 23.13, 1.503, 0.8659, 9.12, -111},
        {"1e6", 1e6, 1e6, Regime::Large, 0.998974, 1, 38.57, 1.502, 1.0318, 3.12, -438},
        {"1e7", 1e7, 1e7, Regime::Large, 0.999662, 1, 42.90, 1.501, 1.0706, 6.62, -1459},
        {"1e8", 1e8, 1e8, Regime::Large, 0.999890, 1, 44.41, 1.501, 1.0839, 2.18, -4694},
        {"1e9", 1e9, 1e9, Regime::Large, 0.999964, 1, 44.97, 1.501, 1.0886, 5.86, -14936},
        {"1e10", 1e10, 1e10, Regime::Large, 0.999988, 1, 45.17, 1.501, 1.0903, 3.45, -47335},
    }};
    return rows;
}

/// Row lookup by label ("log 2", "3000", ..., "1e10"); nullptr if absent.
inline const Row* find_row(const std::string& label) {
    for (const auto& r : table1()) {
        if (label == r.label) return &r;
    }
    return nullptr;
}

struct BracketRow {
    double log_x0, B0, B2, B3;
};

inline const std::array<BracketRow, 6>& table2() {
    static const std::array<BracketRow, 6> rows{{
        {1e5, 0.3253505, 0.8721857, 1.4606625},
        {1e6, 0.4923764, 1.0346912, 1.1502603},
        {1e7, 0.5271511, 1.0716004, 1.1103741},
        {1e8, 0.5390163, 1.0842539, 1.0979426},
        {1e9, 0.5432643, 1.0887652, 1.0936237},
        {1e10, 0.5447895, 1.0903755, 1.0920896},
    }};
    return rows;
}

/// Vinogradov-Korobov shaped bounds, valid for x >= 23.
namespace vk {
inline constexpr double sigma = 0.9999932;
inline constexpr double log_x0 = 2.8e10;
inline constexpr double A = 0.026;
inline constexpr double B = 1.801;
inline constexpr double C = 0.1853;
inline constexpr double A1 = 0.027;
inline constexpr double A2 = 0.028;
inline constexpr double B0_approx = 0.07633;
inline constexpr double B1 = 0.08228;
inline constexpr double B2 = 0.18525;
inline constexpr double B3 = 0.20680;
inline constexpr double min_x = 23.0;
}  // namespace vk

/// |pi(x) - li(x)| <= A2 x (log x)^B exp(-C sqrt(log x)) for x >= 2.
namespace pi_classical {
inline constexpr double A2 = 9.59;
inline constexpr double B = 0.515;
inline constexpr double C = 0.8274;
inline constexpr double alpha = 0.45;
}  // namespace pi_classical

/// theta constant paired with the first psi row.
inline constexpr double theta_A1_first_row = 9.40;

/// |psi(x) - x| / x <= 1.570e-12 for x >= exp(2000).
inline constexpr double small_range_relative_bound = 1.570e-12;
inline constexpr double small_range_log_x_min = 2000.0;

/// Upper end of the sqrt(x) log^2 x / (8 pi) range.
inline constexpr double sqrt_bound_x_max = 2.169e25;

inline constexpr double I1_ceiling = 5.43;
inline constexpr double I2_ceiling = 7.87e12;

}  // namespace pnt::published
