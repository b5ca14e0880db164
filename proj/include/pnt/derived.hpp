#pragma once

// theta and pi bounds derived from a psi bound of the form
// |psi(x) - x| <= A x (log x)^B exp(-C u(log x)).

#include <pnt/envelope.hpp>
#include <pnt/errors.hpp>
#include <pnt/extnum.hpp>
#include <pnt/published.hpp>
#include <pnt/regimes.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pnt {

/// psi(x) - theta(x) < a1 sqrt(x) + a2 x^{1/3} for x > exp(58).
struct ThetaPsiGap {
    double a1 = 1.0 + 1.93378e-8;
    double a2 = 1.01718;
    double log_x_min = 58.0;
};

struct ThetaConstants {
    double A1 = 0;
    double B = 0, C = 0;
    double log_x_start = 0;  // where the gap certification starts
    double gap_ratio = 0;    // (a1 x^{-1/2} + a2 x^{-2/3}) / (increment * shape) at the start
};

/// The gap terms divided by increment * (log x)^B exp(-C u), as canonical terms.
inline std::vector<EnvelopeTerm> theta_gap_terms(const Envelope& psi, double increment, const ThetaPsiGap& gap = {}) {
    std::vector<EnvelopeTerm> out(2);
    out[0].label = "a1 x^{-1/2}";
    out[0].coeff = ExtReal::from_real(gap.a1 / increment);
    out[0].q = 0.5;
    out[1].label = "a2 x^{-2/3}";
    out[1].coeff = ExtReal::from_real(gap.a2 / increment);
    out[1].q = 2.0 / 3.0;
    for (auto& t : out) {
        t.kind = psi.kind;
        t.a_L = -psi.B;
        t.b = -psi.C;
    }
    return out;
}

/// A1 = A + increment once the gap is certified below increment * shape for
/// every log x >= max(X, 58).
inline ThetaConstants theta_constants(const Envelope& psi, double X, double increment = 0.01,
                                      const ThetaPsiGap& gap = {}) {
    ThetaConstants tc;
    tc.B = psi.B;
    tc.C = psi.C;
    tc.log_x_start = std::max(X, gap.log_x_min);
    const auto terms = theta_gap_terms(psi, increment, gap);
    tc.gap_ratio = sum_at(terms, tc.log_x_start).to_real();
    if (!certify_monotone(terms, tc.log_x_start).certified || tc.gap_ratio > 1.0) {
        throw certification_error("theta_constants: psi - theta gap not dominated from log x = " +
                                  std::to_string(tc.log_x_start));
    }
    tc.A1 = psi.A + increment;
    return tc;
}

/// d u / d log x for the two decay arguments.
inline double u_prime(ArgKind kind, double L) {
    switch (kind) {
        case ArgKind::SqrtLog: return 0.5 / std::sqrt(L);
        case ArgKind::VkR: return vk_r_prime(L);
        case ArgKind::LogX: return 1.0;
    }
    return 0.0;
}

struct HConditionReport {
    bool pass = false;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_log_t = 0;
    bool tail_certified = false;
};

/// log t - alpha - C log t * t u'(t) >= log^{B + alpha - 1} t for log t >= L_lo:
/// a log grid on [L_lo, L_hi] plus a slope argument beyond L_hi.
inline HConditionReport h_condition(double B, double C, double alpha, ArgKind kind, double L_lo = 58.0,
                                    double L_hi = 1e6, int points = 1000) {
    auto f = [&](double L) { return L - alpha - C * L * u_prime(kind, L) - std::pow(L, B + alpha - 1.0); };
    HConditionReport rep;
    for (int i = 0; i <= points; ++i) {
        const double L = L_lo * std::pow(L_hi / L_lo, static_cast<double>(i) / points);
        const double m = f(L);
        if (m < rep.worst_margin) {
            rep.worst_margin = m;
            rep.worst_log_t = L;
        }
    }
    // Beyond L_hi: the subtracted pieces of f' are decreasing, so f' >= 1 - slope(L_hi).
    const double p = B + alpha - 1.0;
    double slope = p > 0 ? p * std::pow(L_hi, p - 1.0) : 0.0;
    slope += kind == ArgKind::SqrtLog ? C / (4.0 * std::sqrt(L_hi)) : C * 0.36 * std::pow(L_hi, -0.4);
    rep.tail_certified = p <= 1.0 && 1.0 - slope >= 0 && f(L_hi) >= 0;
    rep.pass = rep.worst_margin >= 0 && rep.tail_certified;
    return rep;
}

/// The I3 majorant A1 log^{-alpha} x exp(-C u(x)), relative to x.
inline ExtReal pi_tail_integral(double A1, double C, double alpha, ArgKind kind, double log_x) {
    return ExtReal::exp_of(std::log(static_cast<long double>(A1)) - alpha * std::log(static_cast<long double>(log_x)) -
                           C * arg_u(kind, 1.0, log_x));
}

/// integral over [599, exp(58)] of dt / (8 pi sqrt t).
inline double integral_I2_computed() {
    return (std::exp(29.0) - std::sqrt(599.0)) / (4.0 * std::numbers::pi);
}

struct PiInputs {
    double A1, B, C, alpha;
    ArgKind kind = ArgKind::SqrtLog;
    double log_x0 = 58.0;
    double I1 = published::I1_ceiling;
    double I2 = published::I2_ceiling;
    int decimals = 2;  // A2 rounded up to this many places
};

struct PiConstants {
    double A2_unrounded = 0;
    double A2 = 0;
    double A2_power_reading = 0;  // VK: u(x0)^C in place of exp(C u(x0))
    double second_term = 0;       // log^{1-B-alpha} x0
    double third_term = 0;
    HConditionReport h;
};

inline PiConstants pi_constants(const PiInputs& in) {
    PiConstants pc;
    pc.h = h_condition(in.B, in.C, in.alpha, in.kind, in.log_x0);
    if (!pc.h.pass) throw certification_error("pi_constants: h' condition fails");
    const double L0 = in.log_x0;
    const double u0 = arg_u(in.kind, 1.0, L0);
    const double lead = 2.0 / std::log(2.0) + in.I1 + in.I2;
    auto third = [&](double growth) { return lead * std::pow(L0, 1.0 - in.B) * growth / (in.A1 * std::exp(L0)); };
    pc.second_term = std::pow(L0, 1.0 - in.B - in.alpha);
    pc.third_term = third(std::exp(in.C * u0));
    pc.A2_unrounded = in.A1 * (1.0 + pc.second_term + pc.third_term);
    pc.A2_power_reading = in.A1 * (1.0 + pc.second_term + third(std::pow(u0, in.C)));
    pc.A2 = round_up(pc.A2_unrounded, in.decimals);
    return pc;
}

inline PiConstants pi_constants_classical(double A1 = published::theta_A1_first_row, double B = 1.515,
                                          double C = 0.8274, double alpha = published::pi_classical::alpha) {
    return pi_constants({A1, B, C, alpha, ArgKind::SqrtLog, 58.0, published::I1_ceiling, published::I2_ceiling, 2});
}

struct VkDerivativeReport {
    double tu_prime_max = 0;     // sup of t u'(t) over log t >= 58 (attained at 58)
    double printed_variant = 0;  // same expression with log^{5/2} t in the denominator
    bool printed_ceiling_holds = false;
    bool chain_holds = false;
    double chain_margin = 0;     // at log t = 58
};

/// The chain (1 - C rho) log t >= log^{B+alpha-1} t + alpha for log t >= 58,
/// with rho the true maximum of t u'(t).
inline VkDerivativeReport vk_derivative_chain(double B = published::vk::B, double C = published::vk::C,
                                              double alpha = 0.19, double L0 = 58.0) {
    VkDerivativeReport rep;
    // r'(L) = h(log L) L^{-2/5} with h decreasing past log L = 2, so r' decreases.
    rep.tu_prime_max = vk_r_prime(L0);
    const double ll = std::log(L0);
    rep.printed_variant = (3.0 * ll - 1.0) / (5.0 * std::pow(L0, 2.5) * std::pow(ll, 1.2));
    rep.printed_ceiling_holds = rep.tu_prime_max <= 1.63e-5;
    const double p = B + alpha - 1.0;
    const double k = 1.0 - C * rep.tu_prime_max;
    rep.chain_margin = k * L0 - std::pow(L0, p) - alpha;
    rep.chain_holds = std::log(L0) > 2.0 && p < 1.0 && rep.chain_margin >= 0 && k - p * std::pow(L0, p - 1.0) >= 0;
    return rep;
}

inline PiConstants pi_constants_vk(double A1 = published::vk::A1, double B = published::vk::B,
                                   double C = published::vk::C, double alpha = 0.19) {
    if (!vk_derivative_chain(B, C, alpha).chain_holds) {
        throw certification_error("pi_constants_vk: derivative chain fails");
    }
    return pi_constants({A1, B, C, alpha, ArgKind::VkR, 58.0, published::I1_ceiling, published::I2_ceiling, 3});
}

}  // namespace pnt
