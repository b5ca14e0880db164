// Library walk-through: build a bound for log x >= 20000, compare it with
// the 10000 row, and derive the matching theta constant.

#include <pnt/derived.hpp>
#include <pnt/engine.hpp>

#include <cstdio>

int main() {
    using namespace pnt;
    const DensityTable table = DensityTable::load(default_density_table_path());

    const OptimizeResult opt = optimize(table, Regime::Medium, 20000);
    const BoundConstants& b = opt.best;
    std::printf("sigma = %.6f, K = %d (%d parameter sets tried, %d refused)\n", b.sigma, b.K, opt.evaluated,
                opt.refused);
    std::printf("|psi(x) - x| <= %.2f x (log x)^%.3f exp(-%.4f sqrt(log x)) for log x >= %g\n", b.A, b.B, b.C, b.X);
    std::printf("eps0 = %s, certified: %s\n", to_scientific(b.eps0).c_str(), b.monotone_certified ? "yes" : "no");

    const auto* row = published::find_row("10000");
    const BoundConstants prev = medium_bound(table, row->log_x0, row->sigma, row->K);
    for (double L : {20000.0, 40000.0, 80000.0}) {
        std::printf("log x = %-6g new %s  10000-row %s  s1+s2+s3 %s\n", L, to_scientific(b.envelope().at(L)).c_str(),
                    to_scientific(prev.envelope().at(L)).c_str(), to_scientific(recompute_terms(table, b, L)).c_str());
    }

    const ThetaConstants theta = theta_constants(b.envelope(), b.X);
    std::printf("theta: A1 = %.2f\n", theta.A1);
    return 0;
}
