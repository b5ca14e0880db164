// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion; exit code 0
// only when every selected criterion passes.

#include <pnt/derived.hpp>
#include <pnt/engine.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pnt;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << "[" << what << "] ";
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const DensityTable& density() {
    static const DensityTable t = DensityTable::load(default_density_table_path());
    return t;
}

// Relative difference of log10(eps0) values.
double log_rel(const ExtReal& got, const published::Row& r) {
    const double a = static_cast<double>(got.log10());
    return std::abs(a - r.log10_eps0()) / std::abs(r.log10_eps0());
}

Outcome medium_rows() {
    Outcome o;
    double worst_time = 0;
    for (const auto& r : published::table1()) {
        if (r.regime != Regime::Medium || r.X < 3000) continue;
        const auto t0 = Clock::now();
        const auto b = medium_bound(density(), r.log_x0, r.sigma, r.K, r.X);
        worst_time = std::max(worst_time, seconds_since(t0));
        const std::string id = std::string("X=") + r.label;
        o.require(b.B_unrounded == (5.0 - 2.0 * r.sigma) / 2.0 && b.B == r.B, id + " B " + std::to_string(b.B));
        o.require(std::abs(b.C_unrounded - r.C) <= 1e-4, id + " C " + std::to_string(b.C_unrounded));
        o.require(b.A_unrounded <= r.A && b.A_unrounded >= r.A - 0.05, id + " A " + std::to_string(b.A_unrounded));
        o.require(log_rel(b.eps0, r) <= 0.02, id + " eps0 " + to_scientific(b.eps0));
    }
    o.require(worst_time < 1.0, "runtime");
    o.note << "slowest row " << worst_time * 1e3 << " ms";
    return o;
}

Outcome large_rows() {
    Outcome o;
    double worst_time = 0, worst_A = 0;
    for (const auto& r : published::table1()) {
        if (r.regime != Regime::Large) continue;
        const auto t0 = Clock::now();
        const auto b = large_bound(density(), r.log_x0, r.sigma, r.X);
        worst_time = std::max(worst_time, seconds_since(t0));
        const std::string id = std::string("X=") + r.label;
        const double C_formula = b.bracket->B2 * (8.0 * r.sigma - 5.0) / 3.0;
        o.require(std::abs(C_formula - r.C) <= 1e-4, id + " C " + std::to_string(C_formula));
        o.require(std::abs(b.C_unrounded - C_formula) <= 1e-12, id + " C pipeline");
        o.require(b.A_unrounded <= r.A && b.A_unrounded >= r.A * 0.995, id + " A " + std::to_string(b.A_unrounded));
        worst_A = std::max(worst_A, (r.A - b.A_unrounded) / r.A);
        o.require(log_rel(b.eps0, r) <= 0.02, id + " eps0 " + to_scientific(b.eps0));
    }
    o.require(worst_time < 1.0, "runtime");
    o.note << "A at most " << worst_A * 100 << "% below print; slowest row " << worst_time * 1e3 << " ms";
    return o;
}

Outcome brackets() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst = 0;
    for (const auto& r : published::table2()) {
        const auto b = bracket_nu2(r.log_x0);
        worst = std::max({worst, std::abs(b.B0 - r.B0), std::abs(b.B2 - r.B2), std::abs(b.B3 - r.B3)});
    }
    const double dt = seconds_since(t0);
    o.require(worst <= 1e-6, "bracket constants");
    o.require(dt < 0.1, "runtime");
    o.note << "max deviation " << worst << ", " << dt * 1e3 << " ms";
    return o;
}

Outcome vk_constants() {
    Outcome o;
    const double sigma = published::vk::sigma;
    const auto br = bracket_nu3(published::vk::log_x0);
    const auto b = vk_bound(density(), published::vk::log_x0, sigma);
    const double exponent = 3.0 * (5.0 - 2.0 * sigma) / 5.0;
    o.require(std::abs(br.B2 - published::vk::B2) <= 5e-5, "B2 " + std::to_string(br.B2));
    o.require(std::abs(b.C_unrounded - published::vk::C) <= 1e-4, "C " + std::to_string(b.C_unrounded));
    o.require(exponent <= published::vk::B, "exponent " + std::to_string(exponent));
    o.require(b.A_unrounded <= published::vk::A, "A " + std::to_string(b.A_unrounded) + " > 0.026");
    o.note << "B2 " << br.B2 << ", C " << b.C_unrounded << ", exponent " << exponent << ", A " << b.A_unrounded;
    return o;
}

Outcome first_row_eps0() {
    Outcome o;
    const auto& r = published::table1().front();
    const auto b = medium_bound(density(), r.log_x0, r.sigma, r.K, r.X);
    // The maximiser depends only on B and C; it is located with the emitted
    // constants, and evaluated with the unrounded A.
    const Envelope env{ArgKind::SqrtLog, b.A_unrounded, b.B, b.C};
    const Sup s = envelope_sup(env, r.X);
    const double value = s.value.to_real();
    o.require(std::abs(s.log_x - 13.41) <= 0.01, "maximiser " + std::to_string(s.log_x));
    o.require(value >= 23.0 && value <= 23.3, "value " + std::to_string(value));
    o.note << "max at log x = " << s.log_x << ", value " << value << " (unrounded B, C: " << b.eps0.to_real()
           << " at " << b.eps0_log_x << ")";
    return o;
}

Outcome small_x() {
    Outcome o;
    const auto t0 = Clock::now();
    const PrimeTable primes(10'000'000);
    const auto& r = published::table1().front();
    auto check = [&](const char* name, Envelope env, CountingFunction fn, double hi) {
        const auto rep = verify_pointwise(
            primes, [&](double x) { return absolute_envelope(env, x); }, fn, 2.0, hi);
        o.require(rep.pass, std::string(name) + " at x = " + std::to_string(rep.worst_x));
    };
    check("psi", {ArgKind::SqrtLog, r.A, r.B, r.C}, CountingFunction::Psi, 59);
    check("theta", {ArgKind::SqrtLog, published::theta_A1_first_row, r.B, r.C}, CountingFunction::Theta, 599);
    check("pi",
          {ArgKind::SqrtLog, published::pi_classical::A2, published::pi_classical::B, published::pi_classical::C},
          CountingFunction::PiVsLi, 2657);
    const double dt = seconds_since(t0);
    o.require(dt < 5.0, "runtime");
    o.note << "10^7 sieve plus three sweeps in " << dt << " s";
    return o;
}

Outcome crossovers() {
    Outcome o;
    const auto c = envelope_crossovers(1e-6);
    const auto cmp = regime_compare();
    o.require(c[0].root > 91.2 && c[0].root < 91.3, "nu1/nu2");
    o.require(c[1].root > 54563.0 && c[1].root < 54563.1, "nu2/nu3");
    o.require(cmp.crossings.size() == 2, "envelope crossing count");
    if (cmp.crossings.size() == 2) {
        o.require(cmp.crossings[0] >= 40 && cmp.crossings[0] <= 80, "first envelope crossing");
        o.require(cmp.crossings[1] >= 2e10 && cmp.crossings[1] <= 3.4e10, "second envelope crossing");
        o.note << "roots " << c[0].root << ", " << c[1].root << "; envelopes cross at " << cmp.crossings[0] << " and "
               << cmp.crossings[1];
    }
    return o;
}

Outcome derived() {
    Outcome o;
    for (const auto& r : published::table1()) {
        try {
            const auto b = compute_bound(density(), r.regime, r.log_x0, r.sigma, r.K, r.X);
            theta_constants(b.envelope(), b.X);
        } catch (const std::exception& e) {
            o.require(false, std::string("theta ") + r.label);
        }
    }
    const auto pc = pi_constants_classical();
    o.require(pc.A2 >= 9.55 && pc.A2 <= 9.59, "classical A2 " + std::to_string(pc.A2));
    const auto pv = pi_constants_vk();
    o.require(pv.A2 >= 0.0270 && pv.A2 <= 0.0280, "VK A2 " + std::to_string(pv.A2));
    const PrimeTable primes(1000);
    const auto I1 = integral_I1(primes);
    o.require(I1.refined > 0 && I1.refined <= published::I1_ceiling && I1.delta() < 1e-3, "I1");
    const double I2 = integral_I2_computed();
    o.require(I2 <= published::I2_ceiling, "I2");
    o.note << "A2 " << pc.A2 << " / " << pv.A2 << ", I1 " << I1.refined << " (grid delta " << I1.delta() << "), I2 "
           << I2;
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(99);
    int points = 0;
    for (const auto& r : published::table1()) {
        const auto b = compute_bound(density(), r.regime, r.log_x0, r.sigma, r.K, r.X);
        o.require(b.monotone_certified, std::string("monotone ") + r.label);
        std::uniform_real_distribution<double> lg(std::log(b.log_x0), std::log(b.log_x0 * 1e3));
        for (int i = 0; i < 1000; ++i, ++points) {
            const double L = std::exp(lg(rng));
            if (recompute_terms(density(), b, L) > b.envelope().at(L)) {
                o.require(false, std::string("dominance ") + r.label + " at " + std::to_string(L));
                break;
            }
        }
    }
    for (double lx : {1e5, 1e6, 1e7, 1e10}) {
        o.require(verify_unimodal(RegionKind::FordClassical, lx).pass, "unimodal nu2 at " + std::to_string(lx));
    }
    o.require(verify_unimodal(RegionKind::VK, 2.8e10).pass, "unimodal nu3");
    std::uniform_real_distribution<long double> lv(-500, 500);
    for (int i = 0; i < 1000; ++i) {
        const ExtReal a = ExtReal::exp_of(lv(rng)), b = ExtReal::exp_of(lv(rng)), c = ExtReal::exp_of(lv(rng));
        const long double d1 = ((a + b) + c).log_value() - (a + (b + c)).log_value();
        const long double d2 = (a * (b + c)).log_value() - (a * b + a * c).log_value();
        if (std::abs(d1) > 1e-15L || std::abs(d2) > 1e-15L) {
            o.require(false, "ExtReal laws");
            break;
        }
    }
    o.note << points << " dominance points, 5 unimodality scans";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> all{
        {"Medium rows", medium_rows},   {"Large rows", large_rows},
        {"Bracket constants", brackets},        {"Vinogradov-Korobov constants", vk_constants},
        {"First-row eps0", first_row_eps0},     {"Small-x verification", small_x},
        {"Crossovers", crossovers},             {"Derived constants", derived},
        {"Property suites", properties},
    };
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        Outcome out;
        try {
            out = all[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.note << "exception: " << e.what();
        }
        ok = ok && out.pass;
        std::printf("Criterion %zu (%s): %s  %s\n", i + 1, all[i].first, out.pass ? "PASS" : "FAIL",
                    out.note.str().c_str());
    }
    return ok ? 0 : 1;
}
