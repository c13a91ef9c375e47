#include "iostab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "iostab/catalogue.hpp"

namespace iostab {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

Signal random_signal(const TimeGrid& grid, const ValueSpace& space,
                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd vals(space.dim, grid.n_steps);
    for (int k = 0; k < grid.n_steps; ++k)
        for (int i = 0; i < space.dim; ++i) vals(i, k) = dist(rng);
    return Signal(grid, space, std::move(vals));
}

}  // namespace

double adjoint_pairing_residual(const DiscreteSystemNode& sys, int trials,
                                double horizon, std::uint64_t seed) {
    const int K = std::max(1, static_cast<int>(std::lround(horizon / sys.dt)));
    const TimeGrid grid(sys.dt, K + 1);
    const DiscreteSystemNode d = dual(sys);
    std::mt19937_64 rng(seed);

    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Signal u = random_signal(grid, sys.input_space, rng);
        const Signal ud = random_signal(grid, d.input_space, rng);
        const Signal y = simulate(sys, u).output;
        const Signal yd = simulate(d, ud).output;
        const double lhs = pairing(y, ud);
        const double rhs = pairing(u, yd);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    return worst;
}

GainDualityVerdict dual_l1_gain_check(const DiscreteSystemNode& sys, double horizon) {
    const GainReport primal = auto_gain(sys, GainP::Inf, horizon);
    const GainReport dual_rep = auto_gain(dual(sys), GainP::One, horizon);
    GainDualityVerdict v;
    v.description = "dual L1 lower bound <= primal Linf upper bound";
    v.dual_lower = dual_rep.lower_bound;
    v.primal_upper = primal.upper_bound;
    v.margin = v.primal_upper - v.dual_lower;
    v.pass = v.dual_lower <= v.primal_upper + kBracketTol;
    return v;
}

GainDualityVerdict dual_linf_gain_check(const DiscreteSystemNode& sys, double horizon) {
    const GainReport primal = auto_gain(sys, GainP::One, horizon);
    const GainReport dual_rep = auto_gain(dual(sys), GainP::Inf, horizon);
    GainDualityVerdict v;
    v.description = "dual Linf lower bound <= primal L1 upper bound";
    v.dual_lower = dual_rep.lower_bound;
    v.primal_upper = primal.upper_bound;
    v.margin = v.primal_upper - v.dual_lower;
    v.pass = v.dual_lower <= v.primal_upper + kBracketTol;
    return v;
}

double second_difference_residual(const DiscreteSystemNode& sys, int trials,
                                  double horizon, std::uint64_t seed) {
    const int K = std::max(8, static_cast<int>(std::lround(horizon / sys.dt)));
    const TimeGrid grid(sys.dt, K + 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);

    const int nu = sys.input_dim();
    const double dt2 = sys.dt * sys.dt;
    double worst = 0.0;

    for (int t = 0; t < trials; ++t) {
        // Smooth input vanishing on the first two samples; the recursion is
        // shift-invariant exactly under that condition.
        Eigen::MatrixXd uvals(nu, grid.n_steps);
        for (int i = 0; i < nu; ++i) {
            const double a1 = amp(rng), a2 = amp(rng);
            const double w1 = freq(rng), w2 = freq(rng);
            for (int k = 0; k < grid.n_steps; ++k) {
                const double tk = grid.t(k);
                const double s = std::sin(w1 * tk);
                uvals(i, k) = a1 * s * s + a2 * (1.0 - std::cos(w2 * tk));
            }
        }
        uvals.col(0).setZero();
        uvals.col(1).setZero();
        const Signal u(grid, sys.input_space, uvals);

        // Second forward difference, dropping the last two samples.
        const TimeGrid short_grid(sys.dt, grid.n_steps - 2);
        Eigen::MatrixXd ddu(nu, short_grid.n_steps);
        for (int k = 0; k < short_grid.n_steps; ++k)
            ddu.col(k) =
                (uvals.col(k + 2) - 2.0 * uvals.col(k + 1) + uvals.col(k)) / dt2;

        const Signal y = simulate(sys, u).output;
        const Signal y_of_ddu =
            simulate(sys, Signal(short_grid, sys.input_space, ddu)).output;

        double scale = 1.0;
        double defect = 0.0;
        for (int k = 0; k < short_grid.n_steps; ++k) {
            const Eigen::VectorXd ddy =
                (y.values.col(k + 2) - 2.0 * y.values.col(k + 1) + y.values.col(k)) / dt2;
            defect = std::max(defect,
                              (ddy - y_of_ddu.values.col(k)).cwiseAbs().maxCoeff());
            scale = std::max(scale, ddy.cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, defect / scale);
    }
    return worst;
}

DualitySweepReport duality_sweep(const std::vector<int>& grid_sizes, int trials,
                                 std::uint64_t seed) {
    DualitySweepReport report;
    report.all_pass = true;

    // Tracks the left-shift Linf lower bounds across grid sizes for the
    // divergence marker.
    std::vector<std::pair<int, double>> leftshift_linf;

    for (const auto& entry : catalogue_entries()) {
        for (const int m : grid_sizes) {
            const DiscreteSystemNode sys = catalogue_system(entry.name, m);
            const double horizon = std::max(default_horizon(sys), 1.0);

            DualityRow row;
            row.name = entry.name;
            row.grid_size = m;
            row.primal_gain_infty = auto_gain(sys, GainP::Inf, horizon);
            row.primal_gain_one = auto_gain(sys, GainP::One, horizon);
            const DiscreteSystemNode d = dual(sys);
            row.dual_gain_infty = auto_gain(d, GainP::Inf, horizon);
            row.dual_gain_one = auto_gain(d, GainP::One, horizon);
            row.pairing_residual = adjoint_pairing_residual(sys, trials, horizon, seed);

            GainDualityVerdict v1;
            v1.description = "dual L1 lower <= primal Linf upper";
            v1.dual_lower = row.dual_gain_one.lower_bound;
            v1.primal_upper = row.primal_gain_infty.upper_bound;
            v1.margin = v1.primal_upper - v1.dual_lower;
            v1.pass = v1.dual_lower <= v1.primal_upper + kBracketTol;
            GainDualityVerdict v2;
            v2.description = "dual Linf lower <= primal L1 upper";
            v2.dual_lower = row.dual_gain_infty.lower_bound;
            v2.primal_upper = row.primal_gain_one.upper_bound;
            v2.margin = v2.primal_upper - v2.dual_lower;
            v2.pass = v2.dual_lower <= v2.primal_upper + kBracketTol;
            GainDualityVerdict v3;
            v3.description = "pairing identity residual <= 1e-10";
            v3.dual_lower = row.pairing_residual;
            v3.primal_upper = kIdentityTol;
            v3.margin = kIdentityTol - row.pairing_residual;
            v3.pass = row.pairing_residual <= kIdentityTol;
            row.verdicts = {v1, v2, v3};

            if (entry.name == "leftshift") {
                leftshift_linf.emplace_back(m, row.primal_gain_infty.lower_bound);
                // The divergent entry: L1 bracket bounded, Linf lower = sqrt(m).
                row.negative_cell = row.primal_gain_one.upper_bound <= 1.0 + kBracketTol &&
                                    std::abs(row.primal_gain_infty.lower_bound -
                                             std::sqrt(static_cast<double>(m))) <=
                                        1e-6 * std::sqrt(static_cast<double>(m));
            }

            for (const auto& v : row.verdicts) report.all_pass = report.all_pass && v.pass;
            report.max_pairing_residual =
                std::max(report.max_pairing_residual, row.pairing_residual);
            report.rows.push_back(std::move(row));
        }
    }

    // Mark unbounded evidence when the left-shift Linf lower bound grows by
    // sqrt(2) per grid doubling.
    std::sort(leftshift_linf.begin(), leftshift_linf.end());
    for (std::size_t i = 1; i < leftshift_linf.size(); ++i) {
        const auto& [m0, g0] = leftshift_linf[i - 1];
        const auto& [m1, g1] = leftshift_linf[i];
        if (m1 == 2 * m0 && g1 >= std::sqrt(2.0) * g0 * (1.0 - 1e-6)) {
            for (auto& row : report.rows)
                if (row.name == "leftshift") row.primal_gain_infty.unbounded_evidence = true;
        }
    }
    return report;
}

std::string duality_sweep_markdown(const DualitySweepReport& report) {
    std::ostringstream os;
    os << "| system | M | Linf gain [lo, up] | L1 gain [lo, up] | dual Linf [lo, up] "
          "| dual L1 [lo, up] | pairing residual | checks |\n";
    os << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.rows) {
        const auto bracket = [](const GainReport& g) {
            std::string s = "[" + fmt(g.lower_bound) + ", " + fmt(g.upper_bound) + "]";
            if (g.unbounded_evidence) s += " (grows with refinement)";
            return s;
        };
        bool pass = true;
        for (const auto& v : row.verdicts) pass = pass && v.pass;
        os << "| " << row.name << (row.negative_cell ? " (divergent pair)" : "") << " | "
           << row.grid_size << " | " << bracket(row.primal_gain_infty) << " | "
           << bracket(row.primal_gain_one) << " | " << bracket(row.dual_gain_infty)
           << " | " << bracket(row.dual_gain_one) << " | " << fmt(row.pairing_residual)
           << " | " << (pass ? "pass" : "FAIL") << " |\n";
    }
    return os.str();
}

}  // namespace iostab
