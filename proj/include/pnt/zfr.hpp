#pragma once

// Explicit zero-free regions for zeta, written in terms of log t because the
// heights involved (up to about e^54564) do not fit in a double.

#include <pnt/errors.hpp>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pnt {

namespace zfr_constants {
inline constexpr double R0 = 5.5666305;  // classical region
inline constexpr double R1 = 3.359;      // simplified Ford-classical region
inline constexpr double D = 8.02;
inline constexpr double c = 57.54;       // Vinogradov-Korobov region
}  // namespace zfr_constants

enum class RegionKind { Classical, FordClassical, VK };

inline const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::Classical: return "classical";
        case RegionKind::FordClassical: return "ford-classical";
        case RegionKind::VK: return "vinogradov-korobov";
    }
    return "?";
}

namespace detail {
inline void require_log_t(double log_t, double min_log_t, const char* who) {
    if (std::isnan(log_t) || log_t < min_log_t) {
        throw std::domain_error(std::string(who) + ": log t = " + std::to_string(log_t) +
                                " below validity threshold " + std::to_string(min_log_t));
    }
}
}  // namespace detail

/// nu1 = 1/(R0 log t), valid for t >= 2.
inline double nu1(double log_t) {
    detail::require_log_t(log_t, std::log(2.0), "nu1");
    return 1.0 / (zfr_constants::R0 * log_t);
}

/// Simplified Ford-classical width; valid for t >= 3 and negative for small t.
inline double nu2(double log_t) {
    detail::require_log_t(log_t, std::log(3.0), "nu2");
    using namespace zfr_constants;
    return (1.0 - D * std::log(log_t) / log_t) / (R1 * log_t);
}

inline double ford_J(double log_t) {
    detail::require_log_t(log_t, 1e-300, "ford_J");
    return log_t / 6.0 + std::log(log_t) + std::log(0.77);
}

/// R(t) of the unsimplified Ford-classical region, valid for t >= 5.45e8.
inline double ford_R(double log_t) {
    detail::require_log_t(log_t, std::log(5.45e8), "ford_R");
    const double J = ford_J(log_t);
    return (J + 0.685 + 0.155 * std::log(log_t)) / (log_t * (0.04962 - 0.0196 / (J + 1.15)));
}

/// nu3 = 1/(c log^{2/3} t (log log t)^{1/3}), valid for t >= 3.
inline double nu3(double log_t) {
    detail::require_log_t(log_t, std::log(3.0), "nu3");
    return 1.0 / (zfr_constants::c * std::cbrt(log_t * log_t) * std::cbrt(std::log(log_t)));
}

struct ZeroFreeRegion {
    RegionKind kind;
    double log_t_min;

    [[nodiscard]] double nu(double log_t) const {
        switch (kind) {
            case RegionKind::Classical: return nu1(log_t);
            case RegionKind::FordClassical: return nu2(log_t);
            case RegionKind::VK: return nu3(log_t);
        }
        return 0.0;
    }
};

inline ZeroFreeRegion region(RegionKind kind) {
    return {kind, kind == RegionKind::Classical ? std::log(2.0) : std::log(3.0)};
}

/// max(nu1, nu2, nu3) and which region attains it.
struct BestRegion {
    double nu;
    RegionKind kind;
};

inline BestRegion best_region(double log_t) {
    BestRegion b{nu1(log_t), RegionKind::Classical};
    if (const double v = nu2(log_t); v > b.nu) b = {v, RegionKind::FordClassical};
    if (const double v = nu3(log_t); v > b.nu) b = {v, RegionKind::VK};
    return b;
}

struct Crossover {
    RegionKind before;  // dominant below the root
    RegionKind after;
    double bracket_lo;  // search interval in log t
    double bracket_hi;
    double root;        // log t
};

/// Bisection for a sign change of f on [lo, hi] in log t, to `tol` absolute.
template <class F>
double bisect_log_t(F f, double lo, double hi, double tol) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0)) {
        throw consistency_error("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    auto r = boost::math::tools::bisect(f, lo, hi, stop);
    return 0.5 * (r.first + r.second);
}

/// Roots of nu1 = nu2 and nu2 = nu3 in log t.
inline std::vector<Crossover> envelope_crossovers(double tol = 1e-3) {
    std::vector<Crossover> out;
    {
        const double lo = 10.0, hi = 1000.0;
        const double r = bisect_log_t([](double L) { return nu1(L) - nu2(L); }, lo, hi, tol);
        out.push_back({RegionKind::Classical, RegionKind::FordClassical, lo, hi, r});
    }
    {
        const double lo = 1000.0, hi = 1e6;
        const double r = bisect_log_t([](double L) { return nu2(L) - nu3(L); }, lo, hi, tol);
        out.push_back({RegionKind::FordClassical, RegionKind::VK, lo, hi, r});
    }
    return out;
}

struct LimitingConstants {
    double classical;  // 2/sqrt(R0)
    double vk;         // (5/(3c^3))^{1/5} ((3/2)^{2/5} + (2/3)^{3/5})
};

/// Ceilings on the exponent constant achievable with each region shape.
inline LimitingConstants limiting_constants(double R = zfr_constants::R0, double c = zfr_constants::c) {
    return {2.0 / std::sqrt(R),
            std::pow(5.0 / (3.0 * c * c * c), 0.2) * (std::pow(1.5, 0.4) + std::pow(2.0 / 3.0, 0.6))};
}

}  // namespace pnt
