#pragma once

// Brackets for the turning point t0 and the minimum T of t * x^{nu(t)} over
// t >= H, for the Ford-classical (nu2) and Vinogradov-Korobov (nu3) regions:
//
//   B0 u <= log t0 <= B1 u,    B2 u <= log T <= B3 u,
//
// with u = sqrt(log x) for nu2 and u = log^{3/5} x (log log x)^{-1/5} for nu3,
// valid for all x >= x0.

#include <pnt/errors.hpp>
#include <pnt/zdensity.hpp>
#include <pnt/zfr.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace pnt {

/// Which bounding pipeline produced a set of constants.
enum class Regime { Medium, Large, VK };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Medium: return "medium";
        case Regime::Large: return "large";
        case Regime::VK: return "vk";
    }
    return "?";
}

inline Regime parse_regime(const std::string& s) {
    if (s == "medium") return Regime::Medium;
    if (s == "large") return Regime::Large;
    if (s == "vk") return Regime::VK;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

struct Bracket {
    RegionKind region;
    double log_x0;
    double B0, B1, B2, B3;
};

/// Decay argument r(x) = log^{3/5} x (log log x)^{-1/5}.
inline double vk_r(double log_x) { return std::pow(log_x, 0.6) * std::pow(std::log(log_x), -0.2); }

/// d r / d log x.
inline double vk_r_prime(double log_x) {
    const double ll = std::log(log_x);
    return (3.0 * ll - 1.0) / (5.0 * std::pow(log_x, 0.4) * std::pow(ll, 1.2));
}

inline constexpr double kNu2MinLogX0 = 1e5;
inline constexpr double kNu3MinLogX0 = 2.8e10;

/// C_{x0}(B0) = D (2 log(B0 sqrt(log x0)) - 1) / (B0 sqrt(log x0)).
inline double nu2_cx0(double B0, double log_x0) {
    const double v = B0 * std::sqrt(log_x0);
    return zfr_constants::D * (2.0 * std::log(v) - 1.0) / v;
}

inline Bracket bracket_nu2(double log_x0) {
    using namespace zfr_constants;
    if (std::isnan(log_x0) || log_x0 < kNu2MinLogX0) {
        throw std::domain_error("bracket_nu2: requires log x0 >= 1e5");
    }
    const double B1 = 1.0 / std::sqrt(R1);
    double B0 = B1;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double cx = nu2_cx0(B0, log_x0);
        if (cx >= 1.0) throw std::domain_error("bracket_nu2: C_x0 >= 1, log x0 too small");
        const double next = std::sqrt((1.0 - cx) / R1);
        const double step = std::abs(next - B0);
        B0 = next;
        if (step < 1e-10) {
            converged = true;
            break;
        }
    }
    if (!converged) throw numerical_error("bracket_nu2: B0 fixed point did not converge in 200 iterations");

    const double v = B0 * std::sqrt(log_x0);
    const double alpha = (1.0 - D * std::log(v) / v) / R1;
    if (!(alpha > 0)) throw std::domain_error("bracket_nu2: alpha <= 0, log x0 too small");
    return {RegionKind::FordClassical, log_x0, B0, B1, 2.0 * std::sqrt(alpha), B1 + 1.0 / (R1 * B0)};
}

struct Nu3Details {
    double B1_exact;  // (2/3c)^{3/5} beta^{-1/5} before rounding up
    double beta;
    double gamma;     // 1 + 1/(2 log log t) bound at x0
    double kappa;     // lower bound for log log t0 / log log x
};

/// Lower bound at x0 for log log t when log t = B r(x): log B + (3/5)l - (1/5) log l.
inline double nu3_loglog_t(double B, double log_x0) {
    const double l = std::log(log_x0);
    return std::log(B) + 0.6 * l - 0.2 * std::log(l);
}

inline Bracket bracket_nu3(double log_x0, Nu3Details* details = nullptr) {
    using zfr_constants::c;
    if (std::isnan(log_x0) || log_x0 < kNu3MinLogX0) {
        throw std::domain_error("bracket_nu3: requires log x0 >= 2.8e10");
    }
    const double base = std::pow(2.0 / (3.0 * c), 0.6);
    const double B0 = base * std::pow(5.0 / 3.0, 0.2);

    constexpr double beta = 0.4125;
    const double B1_exact = base * std::pow(beta, -0.2);
    const double B1 = std::ceil(B1_exact * 1e5) / 1e5;
    const double l = std::log(log_x0);
    const double gamma = 1.0 + 1.0 / (2.0 * nu3_loglog_t(B1_exact, log_x0));
    if (nu3_loglog_t(B1_exact, log_x0) < gamma * gamma * gamma * beta * l) {
        throw std::domain_error("bracket_nu3: turning-point upper bound fails at this x0");
    }

    const double kappa = nu3_loglog_t(B0, log_x0) / l;
    if (!(kappa > 0)) throw std::domain_error("bracket_nu3: kappa <= 0");
    const double B2 = 1.0 / (c * std::cbrt(B1 * B1) * std::cbrt(0.6)) + B0;
    const double B3 = 1.0 / (c * std::cbrt(B0 * B0) * std::cbrt(kappa)) + B1;
    if (details) *details = {B1_exact, beta, gamma, kappa};
    return {RegionKind::VK, log_x0, B0, B1, B2, B3};
}

struct UnimodalReport {
    bool pass = false;
    int sign_changes = 0;
    double turning_log_t = 0;  // grid argmax of x^{-nu(t)}/t
    double t0_lo = 0, t0_hi = 0;  // B0 u, B1 u
    double min_log_T = 0;      // grid min of log(t x^{nu(t)})
    double T_lo = 0, T_hi = 0;  // B2 u, B3 u
    double grid_step = 0;
    bool turning_in_bracket = false;
    bool T_in_bracket = false;
};

/// Scans log(x^{-nu(t)}/t) on a grid of log t over [log H, 2 B1 u] and checks
/// a single rise-then-fall shape, the t0 bracket and the T bracket.
///
/// For the Ford-classical case the width used is max(nu1, nu2) by default:
/// nu2 alone increases with t just above H (its correction factor is small
/// there), which makes x^{-nu2(t)}/t fall before it rises. Zeros obey both
/// regions, so the larger width is the one in force. Pass
/// with_classical = false to scan nu2 on its own.
inline UnimodalReport verify_unimodal(RegionKind kind, double log_x, int points = 1000, bool with_classical = true) {
    if (kind == RegionKind::Classical) throw std::domain_error("verify_unimodal: no bracket for nu1");
    const Bracket br = kind == RegionKind::FordClassical ? bracket_nu2(log_x) : bracket_nu3(log_x);
    const double u = kind == RegionKind::FordClassical ? std::sqrt(log_x) : vk_r(log_x);
    const bool combine = with_classical && kind == RegionKind::FordClassical;
    auto width = [kind, combine](double s) {
        const double v = region(kind).nu(s);
        return combine ? std::max(v, nu1(s)) : v;
    };

    const double lo = kLogRiemannHeight;
    const double hi = 2.0 * br.B1 * u;
    const double step = (hi - lo) / (points - 1);
    std::vector<double> h(points);
    for (int i = 0; i < points; ++i) {
        const double s = lo + step * i;
        h[i] = -width(s) * log_x - s;
    }

    UnimodalReport rep;
    rep.grid_step = step;
    int last_sign = 0;
    for (int i = 0; i + 1 < points; ++i) {
        const double d = h[i + 1] - h[i];
        const int sg = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (sg == 0) continue;
        if (last_sign != 0 && sg != last_sign) ++rep.sign_changes;
        last_sign = sg;
    }
    const auto imax = static_cast<int>(std::max_element(h.begin(), h.end()) - h.begin());
    rep.turning_log_t = lo + step * imax;
    rep.t0_lo = br.B0 * u;
    rep.t0_hi = br.B1 * u;
    rep.turning_in_bracket = rep.turning_log_t >= rep.t0_lo - step && rep.turning_log_t <= rep.t0_hi + step;

    rep.min_log_T = -h[imax];
    rep.T_lo = br.B2 * u;
    rep.T_hi = br.B3 * u;
    const bool all_above = std::all_of(h.begin(), h.end(), [&](double v) { return -v >= rep.T_lo; });
    rep.T_in_bracket = all_above && rep.min_log_T <= rep.T_hi + step;

    rep.pass = rep.sign_changes == 1 && h[1] > h[0] && rep.turning_in_bracket && rep.T_in_bracket;
    return rep;
}

}  // namespace pnt
