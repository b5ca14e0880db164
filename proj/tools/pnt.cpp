// pnt: recompute the explicit psi/theta/pi error-bound constants from the
// command line.

#include <pnt/derived.hpp>
#include <pnt/engine.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace pnt;

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

json eps_json(const ExtReal& e) {
    const Decimal d = e.to_decimal();
    return {{"mantissa", std::round(d.mantissa * 1e6) / 1e6}, {"decimal_exponent", d.exponent}};
}

struct Options {
    std::string format = "text";
    std::string density_table;
};

DensityTable load_table(const Options& o) {
    const std::string path = o.density_table.empty() ? default_density_table_path() : o.density_table;
    try {
        return DensityTable::load(path);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Regime auto_regime(double log_x0) {
    if (log_x0 >= kNu3MinLogX0) return Regime::VK;
    if (log_x0 >= kNu2MinLogX0) return Regime::Large;
    return Regime::Medium;
}

// ---------------------------------------------------------------- table1

struct Table1Args {
    std::vector<std::string> rows;
    bool optimize = false;
    std::string regime = "auto";
    std::optional<double> log_x0;
    std::optional<double> sigma;
    std::optional<int> K;
};

struct RowResult {
    std::string label;
    std::optional<BoundConstants> bc;
    std::string error;
};

BoundConstants compute_row(const DensityTable& table, Regime regime, double log_x0, double X, double sigma, int K,
                           bool optimize_params) {
    if (optimize_params) return optimize(table, regime, log_x0, X).best;
    return compute_bound(table, regime, log_x0, sigma, K, X);
}

int cmd_table1(const Options& o, const Table1Args& a) {
    const DensityTable table = load_table(o);
    std::vector<RowResult> results;

    if (a.log_x0) {
        const Regime regime = a.regime == "auto" ? auto_regime(*a.log_x0) : parse_regime(a.regime);
        if (!a.optimize && !a.sigma) throw UsageError("--log-x0 needs --sigma (and --K for medium) or --optimize");
        if (a.sigma && !(*a.sigma >= table.sigma_min() && *a.sigma <= table.sigma_max())) {
            throw UsageError("--sigma outside the density table range");
        }
        RowResult r{fmt("%g", *a.log_x0), std::nullopt, {}};
        try {
            r.bc = compute_row(table, regime, *a.log_x0, *a.log_x0, a.sigma.value_or(0), a.K.value_or(1), a.optimize);
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        results.push_back(std::move(r));
    } else {
        for (const auto& label : a.rows) {
            if (!published::find_row(label)) throw UsageError("unknown row '" + label + "'");
        }
        for (const auto& row : published::table1()) {
            if (!a.rows.empty() && std::find(a.rows.begin(), a.rows.end(), row.label) == a.rows.end()) continue;
            RowResult r{row.label, std::nullopt, {}};
            try {
                r.bc = compute_row(table, row.regime, row.log_x0, row.X, a.sigma.value_or(row.sigma),
                                   a.K.value_or(row.K), a.optimize);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            results.push_back(std::move(r));
        }
    }

    bool ok = true;
    for (const auto& r : results) ok = ok && r.bc.has_value();

    if (o.format == "json") {
        json out = json::array();
        for (const auto& r : results) {
            json j{{"label", r.label}};
            if (!r.bc) {
                j["error"] = r.error;
            } else {
                const auto& b = *r.bc;
                j["X"] = b.X;
                j["log_x0"] = b.log_x0;
                j["regime"] = to_string(b.regime);
                j["sigma"] = b.sigma;
                j["K"] = b.K;
                j["A"] = b.A;
                j["B"] = b.B;
                j["C"] = b.C;
                j["A_unrounded"] = b.A_unrounded;
                j["B_unrounded"] = b.B_unrounded;
                j["C_unrounded"] = b.C_unrounded;
                j["A_prime"] = b.A_prime;
                j["eps0"] = eps_json(b.eps0);
                j["eps0_log_x"] = b.eps0_log_x;
                j["monotone_certified"] = b.monotone_certified;
            }
            out.push_back(j);
        }
        std::cout << out.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "X,sigma,K,A,B,C,eps0_mantissa,eps0_exp10\n";
        for (const auto& r : results) {
            if (!r.bc) continue;
            const auto& b = *r.bc;
            const Decimal d = b.eps0.to_decimal();
            std::cout << fmt("%.6g", b.X) << "," << fmt("%.6f", b.sigma) << "," << b.K << "," << fmt("%.2f", b.A)
                      << "," << fmt("%.3f", b.B) << "," << fmt("%.4f", b.C) << "," << fmt("%.2f", d.mantissa)
                      << "," << d.exponent << "\n";
        }
    } else {
        std::printf("%-8s %-9s %3s %7s %6s %7s %12s  %s\n", "X", "sigma", "K", "A", "B", "C", "eps0", "A unrounded");
        for (const auto& r : results) {
            if (!r.bc) {
                std::printf("%-8s FAILED: %s\n", r.label.c_str(), r.error.c_str());
                continue;
            }
            const auto& b = *r.bc;
            std::printf("%-8s %.6f %3d %7.2f %6.3f %7.4f %12s  %.5f\n", r.label.c_str(), b.sigma, b.K, b.A, b.B, b.C,
                        to_scientific(b.eps0, 3).c_str(), b.A_unrounded);
        }
    }
    for (const auto& r : results) {
        if (!r.bc) std::cerr << "row " << r.label << ": " << r.error << "\n";
    }
    return ok ? 0 : kExitVerification;
}

// ---------------------------------------------------------------- brackets

int cmd_brackets(const Options& o, const std::string& regime, std::optional<double> log_x0) {
    std::vector<Bracket> out;
    Nu3Details details{};
    try {
        if (regime == "nu2" || regime == "large") {
            if (log_x0) {
                out.push_back(bracket_nu2(*log_x0));
            } else {
                for (const auto& r : published::table2()) out.push_back(bracket_nu2(r.log_x0));
            }
        } else if (regime == "nu3" || regime == "vk") {
            out.push_back(bracket_nu3(log_x0.value_or(kNu3MinLogX0), &details));
        } else {
            throw UsageError("brackets: --regime must be nu2 or nu3");
        }
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }

    if (o.format == "json") {
        json arr = json::array();
        for (const auto& b : out) {
            arr.push_back({{"region", to_string(b.region)},
                           {"log_x0", b.log_x0},
                           {"B0", b.B0},
                           {"B1", b.B1},
                           {"B2", b.B2},
                           {"B3", b.B3}});
        }
        std::cout << arr.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "log_x0,B0,B1,B2,B3\n";
        for (const auto& b : out) {
            std::cout << fmt("%.6g", b.log_x0) << "," << fmt("%.7f", b.B0) << "," << fmt("%.7f", b.B1) << ","
                      << fmt("%.7f", b.B2) << "," << fmt("%.7f", b.B3) << "\n";
        }
    } else {
        std::printf("%-8s %-10s %-10s %-10s %-10s\n", "log x0", "B0", "B1", "B2", "B3");
        for (const auto& b : out) {
            std::printf("%-8.3g %.7f  %.7f  %.7f  %.7f\n", b.log_x0, b.B0, b.B1, b.B2, b.B3);
        }
        if (regime == "nu3" || regime == "vk") std::printf("kappa = %.5f\n", details.kappa);
    }
    return 0;
}

// ---------------------------------------------------------------- crossovers

int cmd_crossovers(const Options& o) {
    const auto roots = envelope_crossovers();
    const auto cmp = regime_compare();
    if (o.format == "json") {
        json j;
        j["zero_free_regions"] = json::array();
        for (const auto& c : roots) {
            j["zero_free_regions"].push_back({{"before", to_string(c.before)},
                                              {"after", to_string(c.after)},
                                              {"bracket", {c.bracket_lo, c.bracket_hi}},
                                              {"log_t", c.root}});
        }
        j["psi_envelopes"] = {{"log_x", cmp.crossings}, {"log_ratio_at_1e4", cmp.log_ratio_at_1e4}};
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "kind,log\n";
        for (const auto& c : roots) std::cout << to_string(c.before) << "/" << to_string(c.after) << "," << fmt("%.6f", c.root) << "\n";
        for (double x : cmp.crossings) std::cout << "psi-classical/psi-vk," << fmt("%.6g", x) << "\n";
    } else {
        for (const auto& c : roots) {
            std::printf("%s -> %s at log t = %.4f\n", to_string(c.before), to_string(c.after), c.root);
        }
        for (double x : cmp.crossings) std::printf("psi table bound = VK bound at log x = %.6g\n", x);
        std::printf("log(table / VK) at log x = 1e4: %.4f\n", cmp.log_ratio_at_1e4);
    }
    return 0;
}

// ---------------------------------------------------------------- verify-small

struct CheckLine {
    std::string name;
    bool pass;
    double margin;
    std::string detail;
};

int cmd_verify_small(const Options& o, double sieve_limit) {
    if (!(sieve_limit >= 2657)) throw UsageError("--sieve-limit must be at least 2657");
    const DensityTable table = load_table(o);
    const PrimeTable primes(static_cast<std::uint64_t>(sieve_limit));
    const auto& first = published::table1().front();

    std::vector<CheckLine> lines;
    auto pointwise = [&](std::string name, Envelope env, CountingFunction fn, double lo, double hi) {
        const auto r = verify_pointwise(
            primes, [&](double x) { return absolute_envelope(env, x); }, fn, lo, hi);
        lines.push_back({std::move(name), r.pass, r.worst_margin, std::to_string(r.checks) + " checks"});
    };
    pointwise("psi, printed first row, [2, 59]", {ArgKind::SqrtLog, first.A, first.B, first.C},
              CountingFunction::Psi, 2, 59);
    pointwise("theta, A1 = 9.40, [2, 599]", {ArgKind::SqrtLog, published::theta_A1_first_row, first.B, first.C},
              CountingFunction::Theta, 2, 599);
    pointwise("pi, A2 = 9.59, [2, 2657]",
              {ArgKind::SqrtLog, published::pi_classical::A2, published::pi_classical::B, published::pi_classical::C},
              CountingFunction::PiVsLi, 2, 2657);

    const auto recomputed = medium_bound(table, first.log_x0, first.sigma, first.K, first.X);
    const auto printed = [&] {
        BoundConstants b = recomputed;
        b.A = first.A;
        b.B = first.B;
        b.C = first.C;
        return b;
    }();
    std::vector<std::pair<std::string, CoverageReport>> coverage{
        {"printed first row", piecewise_coverage(table, primes, printed)},
        {"recomputed first row", piecewise_coverage(table, primes, recomputed)}};

    bool ok = true;
    for (const auto& l : lines) ok = ok && l.pass;
    for (const auto& c : coverage) ok = ok && c.second.pass;

    if (o.format == "json") {
        json j;
        j["pointwise"] = json::array();
        for (const auto& l : lines) {
            j["pointwise"].push_back({{"check", l.name}, {"pass", l.pass}, {"worst_margin", l.margin}, {"detail", l.detail}});
        }
        j["coverage"] = json::array();
        for (const auto& [name, rep] : coverage) {
            json segs = json::array();
            for (const auto& s : rep.segments) {
                segs.push_back({{"range", s.range}, {"status", to_string(s.status)}, {"worst_margin", s.worst_margin},
                                {"detail", s.detail}});
            }
            j["coverage"].push_back({{"constants", name}, {"pass", rep.pass}, {"segments", segs}});
        }
        j["pass"] = ok;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "check,status,worst_margin\n";
        for (const auto& l : lines) std::cout << '"' << l.name << "\"," << (l.pass ? "PASS" : "FAIL") << "," << fmt("%.6g", l.margin) << "\n";
        for (const auto& [name, rep] : coverage) {
            for (const auto& s : rep.segments) {
                std::cout << '"' << name << " " << s.range << "\"," << to_string(s.status) << "," << fmt("%.6g", s.worst_margin) << "\n";
            }
        }
    } else {
        for (const auto& l : lines) {
            std::printf("%s  %-36s worst margin %.4g (%s)\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.margin, l.detail.c_str());
        }
        for (const auto& [name, rep] : coverage) {
            std::printf("coverage, %s:\n", name.c_str());
            for (const auto& s : rep.segments) {
                std::printf("  %-7s %-24s margin %.4g  %s\n", to_string(s.status), s.range.c_str(), s.worst_margin, s.detail.c_str());
            }
        }
    }
    return ok ? 0 : kExitVerification;
}

// ---------------------------------------------------------------- eval

struct Candidate {
    std::string source;
    Envelope env;
    double valid_from;   // log x
    double pipeline_from;
};

int cmd_eval(const Options& o, double log_x, const std::string& quantity, const std::string& regime_filter) {
    double floor_x = 0;
    if (quantity == "psi") {
        floor_x = 59;
    } else if (quantity == "theta") {
        floor_x = 599;
    } else if (quantity == "pi") {
        floor_x = 2657;
    } else {
        throw UsageError("--quantity must be psi, theta or pi");
    }
    if (!(log_x >= std::log(floor_x))) {
        throw UsageError("log x = " + fmt("%g", log_x) + " is below every analytic range for " + quantity +
                         " (x must exceed " + fmt("%g", floor_x) + "); use `verify-small` for the sieve range");
    }
    if (regime_filter != "auto" && regime_filter != "medium" && regime_filter != "large" && regime_filter != "vk") {
        throw UsageError("--regime must be medium, large, vk or auto");
    }
    const DensityTable table = load_table(o);

    std::vector<Candidate> cands;
    auto keep = [&](Regime r) { return regime_filter == "auto" || regime_filter == to_string(r); };
    std::optional<BoundConstants> first;
    for (const auto& row : published::table1()) {
        if (!keep(row.regime) || row.X > log_x) continue;
        const auto b = compute_bound(table, row.regime, row.log_x0, row.sigma, row.K, row.X);
        if (!first) first = b;
        Envelope env = b.envelope();
        if (quantity == "theta") env.A = theta_constants(env, b.X).A1;
        if (quantity == "pi") {
            if (&row != &published::table1().front()) continue;
            const auto pc = pi_constants_classical(theta_constants(env, b.X).A1, env.B, env.C);
            env = {ArgKind::SqrtLog, pc.A2, env.B - 1.0, env.C};
        }
        cands.push_back({std::string("row ") + row.label, env, row.X, row.log_x0});
    }
    if (keep(Regime::VK) && log_x >= kNu3MinLogX0 && quantity != "pi") {
        const auto b = vk_bound(table, kNu3MinLogX0, published::vk::sigma);
        Envelope env = b.envelope();
        if (quantity == "theta") env.A = theta_constants(env, b.X, 0.001).A1;
        cands.push_back({"vinogradov-korobov", env, b.X, b.log_x0});
    }
    if (cands.empty()) throw UsageError("no certified bound applies at this log x for the chosen regime");

    const Candidate* best = nullptr;
    ExtReal best_v = ExtReal::infinity();
    for (const auto& c : cands) {
        const ExtReal v = c.env.at(log_x);
        if (!best || v < best_v) {
            best = &c;
            best_v = v;
        }
    }
    const bool stitched = log_x < best->pipeline_from;
    const bool has_absolute = log_x <= 700;
    const double absolute = has_absolute ? std::exp(log_x) * best_v.to_real() : 0.0;

    if (o.format == "json") {
        json j{{"quantity", quantity},
               {"log_x", log_x},
               {"source", best->source},
               {"A", best->env.A},
               {"B", best->env.B},
               {"C", best->env.C},
               {"relative", eps_json(best_v)},
               {"basis", stitched ? "small-x stitching (see verify-small)" : "pipeline"}};
        if (has_absolute) j["absolute"] = absolute;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        const Decimal d = best_v.to_decimal();
        std::cout << "quantity,log_x,source,relative_mantissa,relative_exp10,absolute\n"
                  << quantity << "," << fmt("%.10g", log_x) << "," << best->source << "," << fmt("%.4f", d.mantissa)
                  << "," << d.exponent << "," << (has_absolute ? fmt("%.6g", absolute) : "") << "\n";
    } else {
        std::printf("%s at log x = %g: relative bound %s (%s: A = %g, B = %g, C = %g)\n", quantity.c_str(), log_x,
                    to_scientific(best_v, 3).c_str(), best->source.c_str(), best->env.A, best->env.B, best->env.C);
        if (has_absolute) std::printf("absolute bound %.6g\n", absolute);
        if (stitched) std::printf("note: below the pipeline start, coverage rests on the small-x stitching\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit error bounds for psi, theta and pi"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--density-table", opt.density_table, "Density table CSV (default: $PNT_DENSITY_TABLE)");

    Table1Args t1;
    auto* table1 = app.add_subcommand("table1", "Recompute the psi constants table");
    table1->add_option("--rows", t1.rows, "Row labels, e.g. 3000,1e6 or \"log 2\"")->delimiter(',');
    table1->add_flag("--optimize", t1.optimize, "Optimise sigma and K instead of using the printed values");
    table1->add_option("--regime", t1.regime, "medium, large, vk or auto (with --log-x0)")
        ->check(CLI::IsMember({"medium", "large", "vk", "auto"}));
    auto* t1x = table1->add_option("--log-x0", "Compute a single row at this log x0");
    auto* t1s = table1->add_option("--sigma", "Override sigma");
    auto* t1k = table1->add_option("--K", "Override K (medium only)");

    std::string br_regime = "nu2";
    auto* brackets = app.add_subcommand("brackets", "Bracket constants for t0 and T");
    brackets->add_option("--regime", br_regime, "nu2 or nu3");
    auto* brx = brackets->add_option("--log-x0", "log x0 (default: all table rows for nu2, 2.8e10 for nu3)");

    auto* crossovers = app.add_subcommand("crossovers", "Zero-free region and envelope crossovers");

    double sieve_limit = static_cast<double>(kDefaultSieveLimit);
    auto* small = app.add_subcommand("verify-small", "Sieve checks and stitching of the small-x range");
    small->add_option("--sieve-limit", sieve_limit, "Sieve size");

    double ev_x = 0;
    std::string quantity = "psi";
    std::string ev_regime = "auto";
    auto* eval = app.add_subcommand("eval", "Best certified bound at one point");
    eval->add_option("--log-x", ev_x, "log x")->required();
    eval->add_option("--quantity", quantity, "psi, theta or pi");
    eval->add_option("--regime", ev_regime, "medium, large, vk or auto");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*t1x) t1.log_x0 = t1x->as<double>();
        if (*t1s) t1.sigma = t1s->as<double>();
        if (*t1k) t1.K = t1k->as<int>();
        std::optional<double> bx;
        if (*brx) bx = brx->as<double>();

        if (*table1) return cmd_table1(opt, t1);
        if (*brackets) return cmd_brackets(opt, br_regime, bx);
        if (*crossovers) return cmd_crossovers(opt);
        if (*small) return cmd_verify_small(opt, sieve_limit);
        if (*eval) return cmd_eval(opt, ev_x, quantity, ev_regime);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ConversionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
