#pragma once

// Canonical summands g = coeff * L^aL * u^a * prod (u - s_i)^p_i * exp(-b u - q L)
// with L = log x and u one of sqrt(L / scale), r(L) or L itself; a certifier
// for "g is nonincreasing for L >= L0"; and the final envelope A L^B exp(-C u)
// with its supremum.

#include <pnt/errors.hpp>
#include <pnt/extnum.hpp>
#include <pnt/regimes.hpp>

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace pnt {

enum class ArgKind { SqrtLog, VkR, LogX };

inline double arg_u(ArgKind k, double scale, double L) {
    switch (k) {
        case ArgKind::SqrtLog: return std::sqrt(L / scale);
        case ArgKind::VkR: return vk_r(L);
        case ArgKind::LogX: return L;
    }
    return 0.0;
}

/// L u'(L) / u(L).
inline double arg_elasticity(ArgKind k, double L) {
    switch (k) {
        case ArgKind::SqrtLog: return 0.5;
        case ArgKind::VkR: return 0.6 - 0.2 / std::log(L);
        case ArgKind::LogX: return 1.0;
    }
    return 0.0;
}

inline double arg_elasticity_sup(ArgKind k) {
    switch (k) {
        case ArgKind::SqrtLog: return 0.5;
        case ArgKind::VkR: return 0.6;
        case ArgKind::LogX: return 1.0;
    }
    return 0.0;
}

/// Inverse of arg_u.
inline double arg_L_of_u(ArgKind k, double scale, double u) {
    switch (k) {
        case ArgKind::SqrtLog: return scale * u * u;
        case ArgKind::LogX: return u;
        case ArgKind::VkR: {
            auto f = [u](double lnL) { return std::log(vk_r(std::exp(lnL))) - std::log(u); };
            auto stop = [](double a, double b) { return std::abs(b - a) < 1e-14; };
            double lo = 1.0, hi = 2.0;
            while (f(hi) < 0) hi *= 2.0;
            const auto r = boost::math::tools::bisect(f, lo, hi, stop);
            return std::exp(0.5 * (r.first + r.second));
        }
    }
    return 0.0;
}

struct Shift {
    double at;     // s in (u - s)
    double power;  // p
};

struct EnvelopeTerm {
    std::string label;
    ExtReal coeff = ExtReal::from_real(1.0);
    double a_L = 0.0;
    double a = 0.0;
    std::vector<Shift> shifts;
    double b = 0.0;
    double q = 0.0;
    ArgKind kind = ArgKind::SqrtLog;
    double scale = 1.0;

    [[nodiscard]] double u(double L) const { return arg_u(kind, scale, L); }

    [[nodiscard]] long double log_value(double L) const {
        const long double uu = u(L);
        long double v = coeff.log_value() + a_L * std::log(static_cast<long double>(L)) - b * uu - q * L;
        if (a != 0.0) v += a * std::log(uu);
        for (const auto& s : shifts) {
            if (!(uu > s.at)) throw std::domain_error("EnvelopeTerm '" + label + "': u below a shift point");
            v += s.power * std::log(uu - s.at);
        }
        return v;
    }

    [[nodiscard]] ExtReal at(double L) const { return ExtReal::exp_of(log_value(L)); }
};

inline ExtReal sum_at(const std::vector<EnvelopeTerm>& terms, double L) {
    ExtReal s;
    for (const auto& t : terms) s += t.at(L);
    return s;
}

/// Divide every term by den_coeff * L^den_aL * u^den_a * exp(-den_b u).
inline std::vector<EnvelopeTerm> normalize(std::vector<EnvelopeTerm> terms, ExtReal den_coeff, double den_aL,
                                           double den_a, double den_b) {
    for (auto& t : terms) {
        t.coeff /= den_coeff;
        t.a_L -= den_aL;
        t.a -= den_a;
        t.b -= den_b;
    }
    return terms;
}

/// Bounds d(log g)/dL from above on [L0, inf) using only monotone pieces;
/// true when that bound is <= 0.
inline bool closed_form_nonincreasing(const EnvelopeTerm& t, double L0) {
    const double u0 = t.u(L0);
    const double e_lo = arg_elasticity(t.kind, L0);
    const double e_hi = arg_elasticity_sup(t.kind);
    if (!(e_lo > 0)) return false;
    double pos = std::max(t.a, 0.0);
    for (const auto& s : t.shifts) {
        if (!(s.at < u0)) return false;
        if (s.power > 0) pos += s.power * (s.at > 0 ? u0 / (u0 - s.at) : 1.0);
    }
    const double M = std::max(t.a_L, 0.0) + e_hi * pos + (t.b >= 0 ? -t.b * u0 * e_lo : -t.b * u0 * e_hi);
    return M <= 0 || M / L0 <= t.q;
}

struct TermCertificate {
    std::string label;
    bool closed_form = false;
    bool scan_used = false;
    bool certified = false;
};

struct MonotoneReport {
    bool certified = true;
    std::vector<TermCertificate> terms;
};

/// Closed form at L0; otherwise a scan of log g over u in [u0, 4 u0]
/// followed by the closed form from the end of the scan.
inline TermCertificate certify_term(const EnvelopeTerm& t, double L0, int scan_points = 4000) {
    TermCertificate c{t.label};
    const double u0 = t.u(L0);
    for (const auto& s : t.shifts) {
        if (!(s.at < u0)) return c;
    }
    if (closed_form_nonincreasing(t, L0)) {
        c.closed_form = c.certified = true;
        return c;
    }
    c.scan_used = true;
    const double L1 = arg_L_of_u(t.kind, t.scale, 4.0 * u0);
    const double ratio = std::log(L1 / L0);
    long double prev = t.log_value(L0);
    for (int i = 1; i <= scan_points; ++i) {
        const double L = i == scan_points ? L1 : L0 * std::exp(ratio * i / scan_points);
        const long double v = t.log_value(L);
        if (v > prev + 1e-12L * std::max(1.0L, std::abs(prev))) return c;
        prev = v;
    }
    c.certified = closed_form_nonincreasing(t, L1);
    return c;
}

inline MonotoneReport certify_monotone(const std::vector<EnvelopeTerm>& terms, double L0) {
    MonotoneReport rep;
    for (const auto& t : terms) {
        rep.terms.push_back(certify_term(t, L0));
        rep.certified = rep.certified && rep.terms.back().certified;
    }
    return rep;
}

/// Relative envelope A (log x)^B exp(-C u(log x)).
struct Envelope {
    ArgKind kind = ArgKind::SqrtLog;
    double A = 0, B = 0, C = 0;

    [[nodiscard]] double u(double L) const { return arg_u(kind, 1.0, L); }
    [[nodiscard]] long double log_at(double L) const {
        return std::log(static_cast<long double>(A)) + B * std::log(static_cast<long double>(L)) - C * u(L);
    }
    [[nodiscard]] ExtReal at(double L) const { return ExtReal::exp_of(log_at(L)); }

    /// Solves C u e(L) = B, where the log-envelope turns from rising to falling.
    [[nodiscard]] double turning_point() const {
        if (kind == ArgKind::SqrtLog) return (2.0 * B / C) * (2.0 * B / C);
        auto g = [this](double lnL) {
            const double L = std::exp(lnL);
            return C * u(L) * arg_elasticity(kind, L) - B;
        };
        double lo = 1.0, hi = 2.0;
        if (g(lo) >= 0) return std::exp(lo);
        while (g(hi) < 0) hi *= 2.0;
        auto stop = [](double a, double b) { return std::abs(b - a) < 1e-13; };
        const auto r = boost::math::tools::bisect(g, lo, hi, stop);
        return std::exp(0.5 * (r.first + r.second));
    }
};

struct Sup {
    ExtReal value;
    double log_x;  // where it is attained
};

/// Supremum of the envelope over log x >= max(X, log 2).
inline Sup envelope_sup(const Envelope& env, double X) {
    const double start = std::max(X, std::log(2.0));
    const double L = std::max(start, env.turning_point());
    return {env.at(L), L};
}

/// True when outer >= inner for every log x >= L0 (same argument kind).
inline bool envelope_dominates(const Envelope& outer, const Envelope& inner, double L0) {
    if (outer.kind != inner.kind) throw std::invalid_argument("envelope_dominates: argument kinds differ");
    const double dB = outer.B - inner.B;
    const double dC = outer.C - inner.C;
    auto f = [&](double L) { return outer.log_at(L) - inner.log_at(L); };
    if (f(L0) < 0) return false;
    if (dC > 0 || (dC == 0 && dB < 0)) return false;  // ratio eventually decays
    if (dB >= 0) return true;                         // ratio nondecreasing
    // dB < 0 < -dC: one interior minimum where (-dC) u e = -dB.
    const Envelope probe{outer.kind, 1.0, -dB, -dC};
    const double Lmin = probe.turning_point();
    return Lmin <= L0 || f(Lmin) >= 0;
}

inline double round_up(double v, int decimals) {
    const double s = std::pow(10.0, decimals);
    return std::ceil(v * s - 1e-9) / s;
}

inline double round_down(double v, int decimals) {
    const double s = std::pow(10.0, decimals);
    return std::floor(v * s + 1e-9) / s;
}

}  // namespace pnt
