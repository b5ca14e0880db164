#pragma once

// Exact prime-counting step functions from a sieve, the logarithmic integral,
// and finite jump-point verification of envelope bounds on small ranges.

#include <pnt/errors.hpp>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace pnt {

/// Sieve limits above this are refused (the sieve needs about limit/8 bytes).
inline constexpr std::uint64_t kMaxSieveLimit = 2'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSieveLimit = 10'000'000ULL;

class PrimeTable {
public:
    struct Jump {
        std::uint64_t at;  // prime or prime power
        double log_p;      // log of the underlying prime
    };

    explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2) throw std::domain_error("PrimeTable: limit must be >= 2");
        if (limit > kMaxSieveLimit) {
            throw resource_error("PrimeTable: limit " + std::to_string(limit) + " exceeds the sieve memory budget");
        }
        sieve();
    }

    [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
    [[nodiscard]] std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    /// Primes and prime powers in ascending order, each with log p.
    [[nodiscard]] std::span<const Jump> prime_power_jumps() const noexcept { return powers_; }

    [[nodiscard]] double pi_count(double x) const { return static_cast<double>(count_primes(x)); }

    [[nodiscard]] double theta(double x) const {
        const std::size_t n = count_primes(x);
        return n == 0 ? 0.0 : static_cast<double>(theta_prefix_[n - 1]);
    }

    [[nodiscard]] double psi(double x) const {
        const std::uint64_t n = floor_checked(x);
        const auto it = std::upper_bound(powers_.begin(), powers_.end(), n,
                                         [](std::uint64_t v, const Jump& j) { return v < j.at; });
        const auto k = static_cast<std::size_t>(it - powers_.begin());
        return k == 0 ? 0.0 : static_cast<double>(psi_prefix_[k - 1]);
    }

private:
    std::uint64_t floor_checked(double x) const {
        if (std::isnan(x)) throw std::domain_error("PrimeTable: NaN argument");
        if (x > static_cast<double>(limit_)) {
            throw std::out_of_range("PrimeTable: x = " + std::to_string(x) + " beyond sieve limit " +
                                    std::to_string(limit_));
        }
        if (x < 2.0) return 0;
        return static_cast<std::uint64_t>(std::floor(x));
    }

    std::size_t count_primes(double x) const {
        const std::uint64_t n = floor_checked(x);
        const auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
        return static_cast<std::size_t>(it - primes_.begin());
    }

    void sieve() {
        // odd-only: index i represents 2i+1
        const std::uint64_t half = limit_ / 2 + 1;
        std::vector<bool> composite(half, false);
        for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit_; ++i) {
            if (composite[i]) continue;
            const std::uint64_t p = 2 * i + 1;
            for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
        }
        primes_.push_back(2);
        for (std::uint64_t i = 1; i < half; ++i) {
            if (!composite[i] && 2 * i + 1 <= limit_) primes_.push_back(static_cast<std::uint32_t>(2 * i + 1));
        }

        theta_prefix_.reserve(primes_.size());
        long double acc = 0;
        for (auto p : primes_) {
            const double lp = std::log(static_cast<double>(p));
            acc += lp;
            theta_prefix_.push_back(acc);
            for (std::uint64_t q = p; q <= limit_; q *= p) {
                powers_.push_back({q, lp});
                if (q > limit_ / p) break;
            }
        }
        std::sort(powers_.begin(), powers_.end(), [](const Jump& a, const Jump& b) { return a.at < b.at; });
        psi_prefix_.reserve(powers_.size());
        acc = 0;
        for (const auto& j : powers_) {
            acc += j.log_p;
            psi_prefix_.push_back(acc);
        }
    }

    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<Jump> powers_;
    std::vector<long double> theta_prefix_;
    std::vector<long double> psi_prefix_;
};

inline PrimeTable build_sieve(std::uint64_t limit) { return PrimeTable(limit); }

namespace detail {

// 1/log t - 1/(t-1), regular at t = 1.
inline double li_regularized(double t) {
    const double d = t - 1.0;
    if (std::abs(d) < 1e-4) return 0.5 - d / 12.0 + d * d / 24.0;
    return 1.0 / std::log(t) - 1.0 / d;
}

}  // namespace detail

/// Principal-value logarithmic integral li(2).
inline double li2() {
    // PV of 1/(t-1) over [0, 2] vanishes, leaving a regular integrand.
    using boost::math::quadrature::gauss_kronrod;
    static const double value =
        gauss_kronrod<double, 61>::integrate(detail::li_regularized, 0.0, 1.0, 20, 1e-15) +
        gauss_kronrod<double, 61>::integrate(detail::li_regularized, 1.0, 2.0, 20, 1e-15);
    return value;
}

/// li(x) = PV integral of dt/log t over [0, x], for x > 1.
inline double li(double x) {
    if (!(x > 1.0)) throw std::domain_error("li: x must exceed 1");
    using boost::math::quadrature::gauss_kronrod;
    // t = e^s turns dt/log t into e^s/s ds on a smooth interval.
    auto f = [](double s) { return std::exp(s) / s; };
    const double tail = gauss_kronrod<double, 61>::integrate(f, std::log(2.0), std::log(x), 25, 1e-14);
    return li2() + tail;
}

/// Integral of |theta(t) - t| / (t log^2 t) over [lo, hi], exact segment by
/// segment since theta is constant between consecutive primes. Each smooth
/// piece is split into `panels` Gauss-Legendre panels.
inline double theta_gap_integral(const PrimeTable& table, double lo, double hi, int panels) {
    if (hi > static_cast<double>(table.limit())) throw std::out_of_range("theta_gap_integral: beyond sieve");
    using Rule = boost::math::quadrature::gauss<double, 15>;
    auto piece = [panels](double c, double a, double b) {
        auto f = [c](double t) {
            const double lt = std::log(t);
            return std::abs(c - t) / (t * lt * lt);
        };
        double sum = 0.0;
        const double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i) sum += Rule::integrate(f, a + i * h, a + (i + 1) * h);
        return sum;
    };

    std::vector<double> cuts{lo};
    for (auto p : table.primes()) {
        if (p > lo && p < hi) cuts.push_back(static_cast<double>(p));
    }
    cuts.push_back(hi);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double c = table.theta(a);
        if (c > a && c < b) {
            total += piece(c, a, c) + piece(c, c, b);
        } else {
            total += piece(c, a, b);
        }
    }
    return total;
}

struct IntegralEstimate {
    double value;
    double refined;  // same integral with doubled resolution
    [[nodiscard]] double delta() const { return std::abs(refined - value); }
};

/// I1 = integral over [2, 599] of |theta(t) - t| / (t log^2 t).
inline IntegralEstimate integral_I1(const PrimeTable& table, int panels = 4) {
    return {theta_gap_integral(table, 2.0, 599.0, panels), theta_gap_integral(table, 2.0, 599.0, 2 * panels)};
}

enum class CountingFunction { Psi, Theta, PiVsLi };

inline const char* to_string(CountingFunction f) {
    switch (f) {
        case CountingFunction::Psi: return "psi";
        case CountingFunction::Theta: return "theta";
        case CountingFunction::PiVsLi: return "pi-li";
    }
    return "?";
}

struct PointwiseReport {
    bool pass = true;
    double worst_margin = INFINITY;  // min of bound - |fn - main| over all checks
    double worst_x = 0.0;
    std::size_t checks = 0;
};

/// Checks |fn(x) - main(x)| <= bound(x) on [lo, hi]. Between consecutive jumps
/// fn is constant and the main term is increasing, so |fn - main| peaks at a
/// cell end; each cell is checked at both ends (including the left limit at
/// the next jump) against the smaller of the bound's values there.
/// `bound` must be monotone on each cell.
inline PointwiseReport verify_pointwise(const PrimeTable& table, const std::function<double(double)>& bound,
                                        CountingFunction fn, double lo, double hi) {
    if (hi > static_cast<double>(table.limit())) throw std::out_of_range("verify_pointwise: hi beyond sieve limit");
    if (lo < 2.0 || hi < lo) throw std::domain_error("verify_pointwise: need 2 <= lo <= hi");

    auto value = [&](double x) {
        switch (fn) {
            case CountingFunction::Psi: return table.psi(x);
            case CountingFunction::Theta: return table.theta(x);
            case CountingFunction::PiVsLi: return table.pi_count(x);
        }
        return 0.0;
    };
    auto main_term = [&](double x) { return fn == CountingFunction::PiVsLi ? li(x) : x; };

    std::vector<double> cuts{lo};
    if (fn == CountingFunction::Psi) {
        for (const auto& j : table.prime_power_jumps()) {
            const auto v = static_cast<double>(j.at);
            if (v > lo && v <= hi) cuts.push_back(v);
        }
    } else {
        for (auto p : table.primes()) {
            const auto v = static_cast<double>(p);
            if (v > lo && v <= hi) cuts.push_back(v);
        }
    }
    if (cuts.back() < hi) cuts.push_back(hi);

    PointwiseReport rep;
    auto check = [&](double x, double f, double b) {
        const double margin = b - std::abs(f - main_term(x));
        ++rep.checks;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_x = x;
        }
        if (margin < 0) rep.pass = false;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double f = value(a);
        const double bmin = std::min(bound(a), bound(b));
        check(a, f, bmin);
        check(b, f, bmin);  // left limit at b
    }
    check(hi, value(hi), bound(hi));
    return rep;
}

}  // namespace pnt
