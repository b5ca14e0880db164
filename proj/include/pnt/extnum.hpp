#pragma once

// Nonnegative reals stored by their natural logarithm, so that magnitudes far
// outside the range of double (1e-47335 and below) can be combined without
// underflow.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pnt {

/// Decimal scientific form m * 10^e with 1 <= m < 10.
struct Decimal {
    double mantissa = 0.0;
    std::int64_t exponent = 0;
};

class ExtReal {
public:
    using log_type = long double;

    constexpr ExtReal() noexcept = default;

    static constexpr ExtReal zero() noexcept { return {}; }

    /// Saturated value; consumers that certify bounds must reject it.
    static ExtReal infinity() noexcept {
        ExtReal r;
        r.zero_ = false;
        r.log_ = std::numeric_limits<log_type>::infinity();
        return r;
    }

    static ExtReal from_real(double v) {
        if (std::isnan(v) || v < 0.0) {
            throw std::domain_error("ExtReal::from_real: negative or NaN magnitude");
        }
        if (v == 0.0) return zero();
        if (std::isinf(v)) return infinity();
        return exp_of(std::log(static_cast<log_type>(v)));
    }

    /// The value e^log_value.
    static ExtReal exp_of(log_type log_value) {
        if (std::isnan(log_value)) throw std::domain_error("ExtReal::exp_of: NaN exponent");
        if (log_value == -std::numeric_limits<log_type>::infinity()) return zero();
        ExtReal r;
        r.zero_ = false;
        r.log_ = log_value;
        return r;
    }

    [[nodiscard]] bool is_zero() const noexcept { return zero_; }
    [[nodiscard]] bool is_infinite() const noexcept { return !zero_ && std::isinf(log_); }
    [[nodiscard]] bool is_finite_positive() const noexcept { return !zero_ && !std::isinf(log_); }

    /// Natural log of the magnitude; -inf for zero.
    [[nodiscard]] log_type log_value() const noexcept {
        return zero_ ? -std::numeric_limits<log_type>::infinity() : log_;
    }

    /// Conversion to double; underflows to 0 and overflows to +inf.
    [[nodiscard]] double to_real() const noexcept {
        if (zero_) return 0.0;
        return static_cast<double>(std::exp(log_));
    }

    [[nodiscard]] Decimal to_decimal() const {
        if (zero_) return {};
        if (is_infinite()) throw std::overflow_error("ExtReal::to_decimal: saturated value");
        const log_type l10 = log_ / std::log(static_cast<log_type>(10));
        auto e = static_cast<std::int64_t>(std::floor(l10));
        auto m = static_cast<double>(std::pow(static_cast<log_type>(10), l10 - static_cast<log_type>(e)));
        if (m >= 10.0) {
            m /= 10.0;
            ++e;
        }
        return {m, e};
    }

    /// Base-10 logarithm of the magnitude.
    [[nodiscard]] log_type log10() const noexcept {
        return log_value() / std::log(static_cast<log_type>(10));
    }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) noexcept {
        if (a.zero_) return b;
        if (b.zero_) return a;
        if (a.is_infinite() || b.is_infinite()) return infinity();
        const log_type hi = a.log_ > b.log_ ? a.log_ : b.log_;
        const log_type lo = a.log_ > b.log_ ? b.log_ : a.log_;
        ExtReal r;
        r.zero_ = false;
        r.log_ = hi + std::log1p(std::exp(lo - hi));
        return r;
    }

    friend ExtReal operator*(const ExtReal& a, const ExtReal& b) noexcept {
        if (a.zero_ || b.zero_) return zero();
        ExtReal r;
        r.zero_ = false;
        r.log_ = a.log_ + b.log_;
        return r;
    }

    friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
        if (b.zero_) throw std::domain_error("ExtReal: division by zero");
        if (a.zero_) return zero();
        ExtReal r;
        r.zero_ = false;
        r.log_ = a.log_ - b.log_;
        return r;
    }

    ExtReal& operator+=(const ExtReal& o) noexcept { return *this = *this + o; }
    ExtReal& operator*=(const ExtReal& o) noexcept { return *this = *this * o; }
    ExtReal& operator/=(const ExtReal& o) { return *this = *this / o; }

    friend ExtReal pow(const ExtReal& a, log_type p) {
        if (a.zero_) {
            if (p < 0) throw std::domain_error("ExtReal::pow: zero to a negative power");
            return p == 0 ? exp_of(0) : zero();
        }
        ExtReal r;
        r.zero_ = false;
        r.log_ = a.log_ * p;
        return r;
    }

    // Zero is the minimum; otherwise ordered by log value.
    friend std::weak_ordering operator<=>(const ExtReal& a, const ExtReal& b) noexcept {
        if (a.zero_ || b.zero_) {
            if (a.zero_ && b.zero_) return std::weak_ordering::equivalent;
            return a.zero_ ? std::weak_ordering::less : std::weak_ordering::greater;
        }
        if (a.log_ < b.log_) return std::weak_ordering::less;
        if (a.log_ > b.log_) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    }
    friend bool operator==(const ExtReal& a, const ExtReal& b) noexcept {
        return (a <=> b) == std::weak_ordering::equivalent;
    }

private:
    bool zero_ = true;
    log_type log_ = 0;
};

inline std::weak_ordering cmp(const ExtReal& a, const ExtReal& b) noexcept { return a <=> b; }

/// "3.45e-47335" style rendering with `digits` significant digits.
inline std::string to_scientific(const ExtReal& v, int digits = 3) {
    if (v.is_zero()) return "0";
    if (v.is_infinite()) return "inf";
    Decimal d = v.to_decimal();
    const double scale = std::pow(10.0, digits - 1);
    double m = std::round(d.mantissa * scale) / scale;
    if (m >= 10.0) {
        m /= 10.0;
        ++d.exponent;
    }
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits - 1);
    os << m << "e" << (d.exponent < 0 ? "-" : "+") << (d.exponent < 0 ? -d.exponent : d.exponent);
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const ExtReal& v) { return os << to_scientific(v, 6); }

}  // namespace pnt
