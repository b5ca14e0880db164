#pragma once

// Zero-density bound N(sigma, T) <= C1 T^{8(1-sigma)/3} log^{5-2sigma} T + C2 log^2 T
// with (C1, C2) read from a CSV table, and the reciprocal-ordinate sum bound.

#include <pnt/errors.hpp>
#include <pnt/extnum.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace pnt {

/// Height below which all nontrivial zeros are known to lie on the critical line.
inline constexpr double kRiemannHeight = 3'000'175'332'800.0;
inline const double kLogRiemannHeight = std::log(kRiemannHeight);

struct DensityRow {
    double sigma;
    double d;
    double alpha;
    double delta;
    double C1;
    double C2;
};

struct DensityCoeffs {
    double C1;
    double C2;
};

class DensityTable {
public:
    static constexpr const char* kHeader = "sigma,d,alpha,delta,C1,C2";

    explicit DensityTable(std::vector<DensityRow> rows) : rows_(std::move(rows)) { validate(); }

    static DensityTable parse(std::istream& in, const std::string& source = "<stream>") {
        std::string line;
        if (!std::getline(in, line)) throw consistency_error(source + ": empty density table");
        strip(line);
        if (line != kHeader) {
            throw consistency_error(source + ": expected header '" + kHeader + "', got '" + line + "'");
        }
        std::vector<DensityRow> rows;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            strip(line);
            if (line.empty()) continue;
            std::vector<double> f;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    std::size_t used = 0;
                    f.push_back(std::stod(cell, &used));
                    if (used != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw consistency_error(source + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
                }
            }
            if (f.size() != 6) {
                throw consistency_error(source + ":" + std::to_string(lineno) + ": expected 6 fields");
            }
            rows.push_back({f[0], f[1], f[2], f[3], f[4], f[5]});
        }
        return DensityTable(std::move(rows));
    }

    static DensityTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open density table '" + path + "'");
        return parse(in, path);
    }

    [[nodiscard]] const std::vector<DensityRow>& rows() const noexcept { return rows_; }
    [[nodiscard]] double sigma_min() const noexcept { return rows_.front().sigma; }
    [[nodiscard]] double sigma_max() const noexcept { return rows_.back().sigma; }

    /// Exact row on the grid; off the grid, C1 from the next row above and C2
    /// from the next row below (C1 increases and C2 decreases with sigma).
    [[nodiscard]] DensityCoeffs coeffs(double sigma) const {
        if (std::isnan(sigma) || sigma < sigma_min() - kGridTol || sigma > sigma_max() + kGridTol) {
            throw std::domain_error("density_coeffs: sigma = " + std::to_string(sigma) + " outside [" +
                                    std::to_string(sigma_min()) + ", " + std::to_string(sigma_max()) + "]");
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (std::abs(rows_[i].sigma - sigma) <= kGridTol) return {rows_[i].C1, rows_[i].C2};
            if (rows_[i].sigma > sigma) return {rows_[i].C1, rows_[i - 1].C2};
        }
        return {rows_.back().C1, rows_.back().C2};
    }

    /// Index i with sigma in [rows[i].sigma, rows[i+1].sigma).
    [[nodiscard]] std::size_t cell_of(double sigma) const {
        std::size_t i = 0;
        while (i + 2 < rows_.size() && rows_[i + 1].sigma <= sigma) ++i;
        return i;
    }

    static constexpr double kGridTol = 1e-12;

private:
    static void strip(std::string& s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        s.erase(0, i);
    }

    void validate() const {
        if (rows_.size() < 2) throw consistency_error("density table needs at least two rows");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& r = rows_[i];
            if (!(r.sigma > 0.5 && r.sigma <= 1.0)) {
                throw consistency_error("density table: sigma " + std::to_string(r.sigma) + " outside (1/2, 1]");
            }
            if (!(r.C1 > 0 && r.C2 > 0)) throw consistency_error("density table: coefficients must be positive");
            if (i == 0) continue;
            const auto& p = rows_[i - 1];
            if (!(r.sigma > p.sigma)) throw consistency_error("density table: sigma not strictly ascending");
            if (r.C1 < p.C1) throw consistency_error("density table: C1 must be nondecreasing in sigma");
            if (r.C2 > p.C2) throw consistency_error("density table: C2 must be nonincreasing in sigma");
        }
    }

    std::vector<DensityRow> rows_;
};

#ifndef PNT_DATA_DIR
#define PNT_DATA_DIR "data"
#endif

/// PNT_DENSITY_TABLE if set, else the table installed with the sources.
inline std::string default_density_table_path() {
    if (const char* env = std::getenv("PNT_DENSITY_TABLE"); env && *env) return env;
    return std::string(PNT_DATA_DIR) + "/density_table.csv";
}

inline DensityCoeffs density_coeffs(const DensityTable& table, double sigma) { return table.coeffs(sigma); }

struct DensityBound {
    ExtReal value;
    bool below_height;  // log T < log H, where N(sigma, T) = 0 anyway
};

/// N0(sigma, T) in log domain, from log T.
inline DensityBound N0(const DensityTable& table, double sigma, double log_T) {
    if (!(log_T > 1.0)) throw std::domain_error("N0: log T must exceed 1");
    const auto [C1, C2] = table.coeffs(sigma);
    const ExtReal first = ExtReal::from_real(C1) *
                          ExtReal::exp_of(8.0L * (1.0L - sigma) / 3.0L * log_T + (5.0L - 2.0L * sigma) * std::log(log_T));
    const ExtReal second = ExtReal::from_real(C2 * log_T * log_T);
    return {first + second, log_T < kLogRiemannHeight};
}

struct RecipSumBounds {
    double lower;
    double upper;
};

/// Bounds on the sum of 1/gamma over zeros with 0 < gamma <= T.
inline RecipSumBounds recip_sum_bounds(double log_T) {
    const double min_log = std::log(4.0 * std::numbers::pi * std::numbers::e);
    if (std::isnan(log_T) || log_T < min_log - 1e-12) {
        throw std::domain_error("recip_sum_bounds: requires T >= 4 pi e");
    }
    const double l = log_T - std::log(2.0 * std::numbers::pi);
    const double upper = l * l / (4.0 * std::numbers::pi);
    return {upper - 0.9321, upper};
}

}  // namespace pnt
