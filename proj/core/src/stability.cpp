#include "iostab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace iostab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

int horizon_steps(double horizon, double dt) {
    require(std::isfinite(horizon) && horizon > 0.0, "gain: horizon must be positive");
    return std::max(1, static_cast<int>(std::lround(horizon / dt)));
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// Markov parameters V_m = H F^m G for m = 0..count-1.
std::vector<Eigen::MatrixXd> markov_parameters(const DiscreteSystemNode& sys, int count) {
    std::vector<Eigen::MatrixXd> V;
    V.reserve(count);
    Eigen::MatrixXd Z = sys.G;
    for (int m = 0; m < count; ++m) {
        V.push_back(sys.H * Z);
        if (m + 1 < count) Z = sys.F * Z;
        if (Z.isZero(0.0)) {
            // nilpotent tail: remaining parameters are zero
            while (static_cast<int>(V.size()) < count)
                V.push_back(Eigen::MatrixXd::Zero(sys.output_dim(), sys.input_dim()));
            break;
        }
    }
    return V;
}

double ratio_for(const DiscreteSystemNode& sys, const Signal& u, GainP p,
                 const ValueSpace& meas_in, const ValueSpace& meas_out) {
    const double nu = lp_norm_as(u, lp_of(p), meas_in);
    if (nu == 0.0) return 0.0;
    const Signal y = simulate(sys, u).output;
    return lp_norm_as(y, lp_of(p), meas_out) / nu;
}

bool disjoint_supports(const std::vector<Eigen::RowVectorXd>& rows) {
    if (rows.empty()) return true;
    Eigen::RowVectorXd seen = Eigen::RowVectorXd::Zero(rows.front().size());
    for (const auto& r : rows)
        for (int j = 0; j < r.size(); ++j)
            if (r[j] != 0.0) {
                if (seen[j] != 0.0) return false;
                seen[j] = 1.0;
            }
    return true;
}

struct AlignedInput {
    Eigen::MatrixXd values;
};

// Input sample maximizing c.v over the unit ball of `in`; ties resolve to the
// zero vector so reports stay reproducible.
Eigen::VectorXd align_sample(const Eigen::VectorXd& c, const ValueSpace& in) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(in.dim);
    switch (in.kind) {
        case NormKind::Sup:
            for (int i = 0; i < in.dim; ++i) v[i] = (c[i] > 0.0) - (c[i] < 0.0);
            break;
        case NormKind::WeightedOne: {
            int best = -1;
            double best_val = 0.0;
            for (int i = 0; i < in.dim; ++i) {
                const double val = std::abs(c[i]) / in.weights[i];
                if (val > best_val) {
                    best_val = val;
                    best = i;
                }
            }
            if (best >= 0) v[best] = ((c[best] > 0.0) ? 1.0 : -1.0) / in.weights[best];
            break;
        }
        case NormKind::WeightedTwo: {
            const Eigen::VectorXd d = c.cwiseQuotient(in.weights);
            const double nd = in.norm(d);
            if (nd > 0.0) v = d / nd;
            break;
        }
    }
    return v;
}

// Functional row f with f.y == ||y|| for the given norm (Riesz representer
// for weighted-2, sign pattern otherwise).
Eigen::RowVectorXd norming_functional(const Eigen::VectorXd& y, const ValueSpace& out) {
    Eigen::RowVectorXd f = Eigen::RowVectorXd::Zero(out.dim);
    switch (out.kind) {
        case NormKind::Sup: {
            int i_star = 0;
            y.cwiseAbs().maxCoeff(&i_star);
            f[i_star] = (y[i_star] >= 0.0) ? 1.0 : -1.0;
            break;
        }
        case NormKind::WeightedOne:
            for (int i = 0; i < out.dim; ++i)
                f[i] = out.weights[i] * ((y[i] > 0.0) - (y[i] < 0.0));
            break;
        case NormKind::WeightedTwo: {
            const double ny = out.norm(y);
            if (ny > 0.0) f = (y.cwiseProduct(out.weights) / ny).transpose();
            break;
        }
    }
    return f;
}

Signal aligned_input_for(const DiscreteSystemNode& sys, const TimeGrid& grid,
                         const std::vector<Eigen::MatrixXd>& V,
                         const Eigen::RowVectorXd& f, int k_star,
                         const ValueSpace& meas_in) {
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(sys.input_dim(), grid.n_steps);
    for (int j = 0; j < k_star; ++j) {
        const int m = k_star - 1 - j;
        if (m >= static_cast<int>(V.size())) continue;
        vals.col(j) = align_sample((f * V[m]).transpose(), meas_in);
    }
    if (!sys.J.isZero(0.0) && k_star < grid.n_steps)
        vals.col(k_star) = align_sample((f * sys.J).transpose(), meas_in);
    return Signal(grid, sys.input_space, std::move(vals));
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

Lp lp_of(GainP p) { return p == GainP::One ? Lp::One : Lp::Inf; }

ValueSpace measurement_space(const ValueSpace& space, GainP p) {
    if (p == GainP::One && space.kind == NormKind::Sup)
        return ValueSpace::unit_one(space.dim);
    return space;
}

double lp_norm_as(const Signal& s, Lp p, const ValueSpace& space) {
    if (space.dim != s.space.dim)
        throw std::invalid_argument("lp_norm_as: dimension mismatch");
    return lp_norm(Signal(s.grid, space, s.values), p);
}

double gain_upper_bound(const DiscreteSystemNode& sys, GainP p, int steps,
                        std::string* method) {
    const ValueSpace meas_in = measurement_space(sys.input_space, p);
    const ValueSpace meas_out = measurement_space(sys.output_space, p);
    const auto V = markov_parameters(sys, steps);
    const bool j_zero = sys.J.isZero(0.0);
    std::string how;
    double bound = 0.0;

    if (p == GainP::Inf) {
        if (meas_in.kind == NormKind::Sup && meas_out.kind == NormKind::Sup) {
            // Exact induced norm: worst output row of summed absolute weights.
            Eigen::VectorXd row_tv = Eigen::VectorXd::Zero(sys.output_dim());
            for (const auto& Vm : V) row_tv += Vm.cwiseAbs().rowwise().sum();
            row_tv += sys.J.cwiseAbs().rowwise().sum();
            bound = row_tv.maxCoeff();
            how = "row total variation (exact)";
        } else if (meas_out.kind == NormKind::Sup || sys.output_dim() == 1) {
            Eigen::VectorXd row_tv = Eigen::VectorXd::Zero(sys.output_dim());
            for (const auto& Vm : V)
                for (int i = 0; i < sys.output_dim(); ++i)
                    row_tv[i] += meas_in.dual_norm(Vm.row(i).transpose());
            for (int i = 0; i < sys.output_dim(); ++i)
                row_tv[i] += meas_in.dual_norm(sys.J.row(i).transpose());
            bound = row_tv.maxCoeff();
            how = "per-row dual-norm sum";
        } else if (sys.input_dim() == 1 && meas_out.kind == NormKind::WeightedTwo) {
            // Gram certificate: ||sum_m v_m c_m||^2 <= sum |<v_j, v_l>| for |c| <= 1.
            std::vector<Eigen::VectorXd> cols;
            for (const auto& Vm : V)
                if (!Vm.isZero(0.0)) cols.push_back(Vm.col(0));
            double gram = 0.0;
            for (const auto& a : cols)
                for (const auto& b : cols) gram += std::abs(meas_out.inner(a, b));
            const double in_unit = meas_in.norm(Eigen::VectorXd::Ones(1));
            bound = std::sqrt(gram) / in_unit;
            if (!j_zero) bound += operator_norm(sys.J, meas_in, meas_out).value;
            how = "Gram-matrix certificate";
        } else {
            for (const auto& Vm : V) bound += operator_norm(Vm, meas_in, meas_out).value;
            bound += operator_norm(sys.J, meas_in, meas_out).value;
            how = "summed operator norms";
        }
    } else {
        // L1 certificate: sup over the input unit ball of
        // Phi(v) = sum_m ||V_m v|| + ||J v||.
        if (meas_in.kind == NormKind::WeightedOne) {
            double best = 0.0;
            for (int j = 0; j < sys.input_dim(); ++j) {
                double col = meas_out.norm(sys.J.col(j));
                for (const auto& Vm : V) col += meas_out.norm(Vm.col(j));
                best = std::max(best, col / meas_in.weights[j]);
            }
            bound = best;
            how = "column total variation (exact)";
        } else if (sys.input_dim() == 1) {
            double col = meas_out.norm(sys.J.col(0));
            for (const auto& Vm : V) col += meas_out.norm(Vm.col(0));
            bound = col / meas_in.norm(Eigen::VectorXd::Ones(1));
            how = "column total variation (exact)";
        } else if (sys.output_dim() == 1) {
            std::vector<Eigen::RowVectorXd> rows;
            for (const auto& Vm : V)
                if (!Vm.isZero(0.0)) rows.push_back(Vm.row(0));
            if (!j_zero) rows.push_back(sys.J.row(0));
            if (disjoint_supports(rows)) {
                Eigen::RowVectorXd abs_sum = Eigen::RowVectorXd::Zero(sys.input_dim());
                for (const auto& r : rows) abs_sum += r.cwiseAbs();
                bound = meas_in.dual_norm(abs_sum.transpose());
                how = "disjoint-support row certificate (exact)";
            } else {
                for (const auto& r : rows) bound += meas_in.dual_norm(r.transpose());
                how = "per-row dual-norm sum";
            }
        } else {
            for (const auto& Vm : V) bound += operator_norm(Vm, meas_in, meas_out).value;
            bound += operator_norm(sys.J, meas_in, meas_out).value;
            how = "summed operator norms";
        }
    }
    if (method) *method = how;
    return bound;
}

GainReport kernel_gain(const DiscreteSystemNode& sys, GainP p, double horizon) {
    if (sys.input_function_space || sys.output_function_space)
        throw std::invalid_argument(
            "kernel_gain: input/output stands for a discretized function space; "
            "no kernel certificate exists, use empirical_gain");

    const int K = horizon_steps(horizon, sys.dt);
    // Density lags 1..K match the lags a simulation on the (K+1)-point grid
    // can reach, so the sign-aligned witness attains the TV exactly.
    const MatrixMeasure h = impulse_response(sys, K + 1);
    const double tv_gain = induced_gain(h, p).value;

    const TimeGrid grid(sys.dt, K + 1);
    const ValueSpace meas_in = measurement_space(sys.input_space, p);
    const ValueSpace meas_out = measurement_space(sys.output_space, p);

    Signal witness = Signal::zero(grid, sys.input_space);
    if (p == GainP::Inf) {
        // Sign-aligned input targeting the worst output row at the final time;
        // sign(0) = +1 keeps the witness deterministic.
        Eigen::VectorXd row_tv = Eigen::VectorXd::Zero(sys.output_dim());
        for (int i = 0; i < sys.output_dim(); ++i)
            for (int j = 0; j < sys.input_dim(); ++j) row_tv[i] += entry_tv(h, i, j);
        int i_star = 0;
        row_tv.maxCoeff(&i_star);

        const auto V = markov_parameters(sys, K);
        Eigen::MatrixXd vals(sys.input_dim(), grid.n_steps);
        for (int j = 0; j <= K; ++j) {
            const int m = K - 1 - j;
            Eigen::RowVectorXd coeff;
            if (j == K)
                coeff = sys.J.row(i_star);
            else
                coeff = V[m].row(i_star);
            for (int c = 0; c < sys.input_dim(); ++c)
                vals(c, j) = (coeff[c] < 0.0) ? -1.0 : 1.0;
        }
        witness = Signal(grid, sys.input_space, std::move(vals));
    } else {
        Eigen::VectorXd col_tv = Eigen::VectorXd::Zero(sys.input_dim());
        for (int j = 0; j < sys.input_dim(); ++j)
            for (int i = 0; i < sys.output_dim(); ++i) col_tv[j] += entry_tv(h, i, j);
        int j_star = 0;
        col_tv.maxCoeff(&j_star);
        Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(sys.input_dim(), grid.n_steps);
        vals(j_star, 0) = 1.0;
        witness = Signal(grid, sys.input_space, std::move(vals));
    }

    const double achieved = ratio_for(sys, witness, p, meas_in, meas_out);
    GainReport r;
    r.p = p;
    r.lower_bound = std::min(achieved, tv_gain);
    r.upper_bound = tv_gain;
    r.witness = witness;
    r.horizon = K * sys.dt;
    r.notes = "upper: impulse-response total variation truncated at horizon " +
              fmt(K * sys.dt) + "; lower: " +
              (p == GainP::Inf ? std::string("sign-aligned input at final time")
                               : std::string("impulse in worst column direction")) +
              ", re-simulated";
    return r;
}

GainReport empirical_gain(const DiscreteSystemNode& sys, GainP p, double horizon,
                          ProbeStrategy strategy, std::uint64_t seed, int probes) {
    const int K = horizon_steps(horizon, sys.dt);
    const TimeGrid grid(sys.dt, K + 1);
    const ValueSpace meas_in = measurement_space(sys.input_space, p);
    const ValueSpace meas_out = measurement_space(sys.output_space, p);

    double best = 0.0;
    Signal witness = Signal::zero(grid, sys.input_space);
    const auto consider = [&](const Signal& u) {
        const double r = ratio_for(sys, u, p, meas_in, meas_out);
        if (r > best) {
            best = r;
            witness = u;
        }
    };

    std::string strat_name;
    switch (strategy) {
        case ProbeStrategy::SlidingBand: {
            strat_name = "sliding-band family";
            const int m = sys.input_dim();
            require(std::abs(sys.dt * m - 1.0) <= 1e-9,
                    "empirical_gain: sliding-band strategy needs a grid-matched "
                    "input space (dt = 1/dim)");
            require(grid.horizon() >= 1.0 - 1e-12,
                    "empirical_gain: sliding-band strategy needs horizon >= 1");
            for (long pcells = m; pcells >= 1; pcells /= 2)
                consider(sliding_band_input(grid, m, static_cast<double>(pcells) / m));
            break;
        }
        case ProbeStrategy::GreedyAlignment: {
            strat_name = "greedy alignment";
            if (p == GainP::Inf) {
                const auto V = markov_parameters(sys, K);
                Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.input_dim());
                ones /= meas_in.norm(ones);
                Signal u = Signal::constant(grid, sys.input_space, ones);
                consider(u);
                // Two rounds of aligning against the norming functional of the
                // final-time output.
                for (int pass = 0; pass < 2; ++pass) {
                    const Signal y = simulate(sys, witness).output;
                    int k_best = 0;
                    double nb = -1.0;
                    for (int k = 0; k < grid.n_steps; ++k) {
                        const double nk = meas_out.norm(y.values.col(k));
                        if (nk > nb) {
                            nb = nk;
                            k_best = k;
                        }
                    }
                    if (nb <= 0.0) break;
                    const Eigen::RowVectorXd f =
                        norming_functional(y.values.col(k_best), meas_out);
                    consider(aligned_input_for(sys, grid, V, f, K, meas_in));
                }
                if (meas_out.kind == NormKind::Sup && sys.output_dim() <= 32) {
                    for (int i = 0; i < sys.output_dim(); ++i) {
                        Eigen::RowVectorXd f = Eigen::RowVectorXd::Zero(sys.output_dim());
                        f[i] = 1.0;
                        consider(aligned_input_for(sys, grid, V, f, K, meas_in));
                    }
                }
            } else {
                // Impulse probing: canonical directions plus the flat profile.
                const int nu = sys.input_dim();
                for (int j = 0; j < std::min(nu, 64); ++j) {
                    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(nu, grid.n_steps);
                    vals(j, 0) = 1.0;
                    consider(Signal(grid, sys.input_space, std::move(vals)));
                }
                Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(nu, grid.n_steps);
                vals.col(0) = Eigen::VectorXd::Ones(nu);
                consider(Signal(grid, sys.input_space, std::move(vals)));
            }
            break;
        }
        case ProbeStrategy::RandomProbe: {
            strat_name = "random probing";
            std::mt19937_64 rng(seed);
            for (int t = 0; t < probes; ++t) consider(random_signal(grid, sys.input_space, rng));
            break;
        }
    }

    std::string method;
    const double upper = gain_upper_bound(sys, p, K, &method);

    GainReport r;
    r.p = p;
    r.lower_bound = std::min(best, upper);
    r.upper_bound = upper;
    r.witness = witness;
    r.horizon = K * sys.dt;
    r.notes = "lower: " + strat_name + " (seed " + std::to_string(seed) +
              ", re-simulated); upper: " + method + "; horizon " + fmt(K * sys.dt) +
              (p == GainP::One && sys.input_space.kind == NormKind::Sup
                   ? "; sup value norms measured as unit 1-norms for p=1"
                   : "");
    return r;
}

GainReport auto_gain(const DiscreteSystemNode& sys, GainP p, double horizon) {
    if (!sys.input_function_space && !sys.output_function_space)
        return kernel_gain(sys, p, horizon);
    GainReport r = empirical_gain(sys, p, horizon, ProbeStrategy::GreedyAlignment);
    const int m = sys.input_dim();
    if (m >= 2 && std::abs(sys.dt * m - 1.0) <= 1e-9 && horizon >= 1.0) {
        const GainReport band =
            empirical_gain(sys, p, horizon, ProbeStrategy::SlidingBand);
        if (band.lower_bound > r.lower_bound) {
            r.lower_bound = band.lower_bound;
            r.witness = band.witness;
            r.notes = band.notes;
        }
    }
    return r;
}

std::vector<SweepRow> counterexample_sweep(int m, const std::vector<double>& eps_list) {
    require(m >= 1, "counterexample_sweep: m must be >= 1");
    const DiscreteSystemNode sys = left_shift_distributed_input(m);
    const TimeGrid grid(sys.dt, m + 1);
    std::vector<SweepRow> rows;
    rows.reserve(eps_list.size());
    for (const double eps : eps_list) {
        const Signal u = sliding_band_input(grid, m, eps);
        const Signal y = simulate(sys, u).output;
        SweepRow row;
        row.eps = eps;
        row.input_norm = lp_norm(u, Lp::Inf);
        row.output_norm = lp_norm(y, Lp::Inf);
        row.ratio = row.output_norm / row.input_norm;
        row.predicted = 1.0 / std::sqrt(eps);
        rows.push_back(row);
    }
    return rows;
}

ObservationAdmissibility observation_admissibility(const DiscreteSystemNode& sys,
                                                   double horizon, int probes,
                                                   std::uint64_t seed) {
    const int K = horizon_steps(horizon, sys.dt);
    const int nx = sys.state_dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    const auto observation_sum = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd z = x;
        double acc = 0.0;
        for (int k = 0; k < K; ++k) {
            acc += sys.output_space.norm(sys.H * z);
            z = sys.F * z;
            if (z.isZero(0.0)) break;
        }
        return sys.dt * acc;
    };

    std::vector<Eigen::VectorXd> state_probes;
    for (int i = 0; i < nx; ++i) state_probes.push_back(Eigen::VectorXd::Unit(nx, i));
    state_probes.push_back(Eigen::VectorXd::Ones(nx));
    for (int t = 0; t < probes; ++t) {
        Eigen::VectorXd x(nx);
        for (int i = 0; i < nx; ++i) x[i] = dist(rng);
        if (sys.state_space.norm(x) > 0.0) state_probes.push_back(x);
    }

    AdmissibilityReport obs;
    obs.horizon = K * sys.dt;
    obs.probe_count = static_cast<int>(state_probes.size());
    for (const auto& x : state_probes)
        obs.constant_lower =
            std::max(obs.constant_lower, observation_sum(x) / sys.state_space.norm(x));

    // Upper bound dt * sum_k ||H F^k||.
    Eigen::MatrixXd R = sys.H;
    double upper = 0.0;
    for (int k = 0; k < K; ++k) {
        upper += operator_norm(R, sys.state_space, sys.output_space).value;
        R = R * sys.F;
        if (R.isZero(0.0)) break;
    }
    obs.constant_upper = sys.dt * upper;
    obs.notes = "observation map x -> H F^k x over horizon " + fmt(K * sys.dt) +
                "; probes: canonical basis + ones + " + std::to_string(probes) +
                " random (seed " + std::to_string(seed) + ")";

    // Max-regularity side: L^1 gain of the state convolution u -> H * (conv u).
    AdmissibilityReport mr;
    mr.horizon = K * sys.dt;
    const auto mr_ratio = [&](const Eigen::MatrixXd& uvals) {
        double norm_u = 0.0;
        for (int k = 0; k <= K; ++k) norm_u += sys.state_space.norm(uvals.col(k));
        norm_u *= sys.dt;
        if (norm_u == 0.0) return 0.0;
        Eigen::VectorXd z = Eigen::VectorXd::Zero(nx);
        double acc = 0.0;
        for (int k = 0; k <= K; ++k) {
            acc += sys.output_space.norm(sys.H * z);
            z = sys.F * z + sys.dt * uvals.col(k);
        }
        return sys.dt * acc / norm_u;
    };
    int mr_probes = 0;
    for (int i = 0; i < nx; ++i, ++mr_probes) {
        Eigen::MatrixXd uvals = Eigen::MatrixXd::Zero(nx, K + 1);
        uvals(i, 0) = 1.0;
        mr.constant_lower = std::max(mr.constant_lower, mr_ratio(uvals));
    }
    for (int t = 0; t < probes; ++t, ++mr_probes) {
        Eigen::MatrixXd uvals(nx, K + 1);
        for (int k = 0; k <= K; ++k)
            for (int i = 0; i < nx; ++i) uvals(i, k) = dist(rng);
        mr.constant_lower = std::max(mr.constant_lower, mr_ratio(uvals));
    }
    mr.probe_count = mr_probes;

    // Phi certificate: exact when the scalar observation rows have disjoint
    // supports (shift semigroups), the operator-norm sum otherwise.
    if (sys.output_dim() == 1) {
        std::vector<Eigen::RowVectorXd> rows_list;
        Eigen::MatrixXd Rk = sys.H;
        for (int k = 0; k < K; ++k) {
            if (!Rk.isZero(0.0)) rows_list.push_back(Rk.row(0));
            Rk = Rk * sys.F;
            if (Rk.isZero(0.0)) break;
        }
        if (disjoint_supports(rows_list)) {
            Eigen::RowVectorXd abs_sum = Eigen::RowVectorXd::Zero(nx);
            for (const auto& r : rows_list) abs_sum += r.cwiseAbs();
            mr.constant_upper = sys.dt * sys.state_space.dual_norm(abs_sum.transpose());
            mr.notes = "convolution side; upper: disjoint-support certificate (exact)";
        } else {
            mr.constant_upper = obs.constant_upper;
            mr.notes = "convolution side; upper: dt * sum ||H F^k||";
        }
    } else {
        mr.constant_upper = obs.constant_upper;
        mr.notes = "convolution side; upper: dt * sum ||H F^k||";
    }
    return {obs, mr};
}

AdmissibilityReport control_admissibility(const DiscreteSystemNode& sys,
                                          ControlFlavor flavor, double horizon,
                                          int probes, std::uint64_t seed) {
    const int K = horizon_steps(horizon, sys.dt);
    const TimeGrid grid(sys.dt, K + 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    AdmissibilityReport rep;
    rep.horizon = K * sys.dt;

    const auto state_ratio = [&](const Signal& u) {
        const double nu = lp_norm(u, Lp::Inf);
        if (nu == 0.0) return 0.0;
        const Signal xs = simulate(sys, u).states;
        double peak = 0.0;
        for (int k = 0; k <= K; ++k)
            peak = std::max(peak, sys.state_space.norm(xs.values.col(k)));
        return peak / nu;
    };

    int count = 0;
    {
        const Signal ones =
            Signal::constant(grid, sys.input_space, Eigen::VectorXd::Ones(sys.input_dim()));
        rep.constant_lower = std::max(rep.constant_lower, state_ratio(ones));
        ++count;
    }
    for (int t = 0; t < probes; ++t, ++count) {
        Signal u = random_signal(grid, sys.input_space, rng);
        rep.constant_lower = std::max(rep.constant_lower, state_ratio(u));
    }
    rep.probe_count = count;

    // Upper bound: the L^inf gain certificate of (F, G, I, 0).
    DiscreteSystemNode to_state(sys.state_space, sys.input_space, sys.state_space,
                                sys.F, sys.G,
                                Eigen::MatrixXd::Identity(sys.state_dim(), sys.state_dim()),
                                Eigen::MatrixXd::Zero(sys.state_dim(), sys.input_dim()),
                                sys.dt);
    std::string method;
    rep.constant_upper = gain_upper_bound(to_state, GainP::Inf, K, &method);
    rep.notes = std::string("input-to-state map; flavor ") +
                (flavor == ControlFlavor::ContinuousInput ? "continuous-input" : "L-infinity") +
                " (identical on a grid); upper: " + method + "; seed " +
                std::to_string(seed);
    return rep;
}

}  // namespace iostab
