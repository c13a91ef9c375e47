#include "iostab/sysnode.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include <cmath>
#include <stdexcept>

namespace iostab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

Eigen::SparseMatrix<double> to_sparse(const Eigen::MatrixXd& M) {
    Eigen::SparseMatrix<double> S(M.rows(), M.cols());
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < M.cols(); ++j)
        for (int i = 0; i < M.rows(); ++i)
            if (M(i, j) != 0.0) trip.emplace_back(i, j, M(i, j));
    S.setFromTriplets(trip.begin(), trip.end());
    return S;
}

bool worth_sparse(const Eigen::MatrixXd& M) {
    if (M.size() < 128 * 128) return false;
    const auto nnz = (M.array() != 0.0).count();
    return nnz * 8 <= M.size();
}

}  // namespace

DiscreteSystemNode::DiscreteSystemNode(ValueSpace state, ValueSpace input,
                                       ValueSpace output, Eigen::MatrixXd F_,
                                       Eigen::MatrixXd G_, Eigen::MatrixXd H_,
                                       Eigen::MatrixXd J_, double dt_)
    : state_space(std::move(state)),
      input_space(std::move(input)),
      output_space(std::move(output)),
      F(std::move(F_)),
      G(std::move(G_)),
      H(std::move(H_)),
      J(std::move(J_)),
      dt(dt_) {
    require(std::isfinite(dt) && dt > 0.0, "DiscreteSystemNode: dt must be positive");
    require(F.rows() == state_space.dim && F.cols() == state_space.dim,
            "DiscreteSystemNode: F shape mismatch");
    require(G.rows() == state_space.dim && G.cols() == input_space.dim,
            "DiscreteSystemNode: G shape mismatch");
    require(H.rows() == output_space.dim && H.cols() == state_space.dim,
            "DiscreteSystemNode: H shape mismatch");
    require(J.rows() == output_space.dim && J.cols() == input_space.dim,
            "DiscreteSystemNode: J shape mismatch");
    require(F.allFinite() && G.allFinite() && H.allFinite() && J.allFinite(),
            "DiscreteSystemNode: matrices must be finite");
}

SimulationResult simulate(const DiscreteSystemNode& sys, const Signal& u,
                          const Eigen::VectorXd& x0) {
    require(u.space.dim == sys.input_space.dim, "simulate: input dimension mismatch");
    require(std::abs(u.grid.dt - sys.dt) <= 1e-12 * sys.dt, "simulate: dt mismatch");
    require(x0.size() == sys.state_dim() && x0.allFinite(), "simulate: bad initial state");

    const int n = u.grid.n_steps;
    const int nx = sys.state_dim();
    Eigen::MatrixXd states(nx, n);
    Eigen::MatrixXd output(sys.output_dim(), n);

    const bool j_zero = sys.J.isZero(0.0);

    // Large shift-structured systems dominate the sweeps; a sparse fast path
    // keeps them linear in the state dimension.
    const bool sparse = worth_sparse(sys.F);
    if (sparse) {
        const Eigen::SparseMatrix<double> Fs = to_sparse(sys.F);
        const Eigen::SparseMatrix<double> Gs = to_sparse(sys.G);
        const Eigen::SparseMatrix<double> Hs = to_sparse(sys.H);
        Eigen::VectorXd x = x0;
        for (int k = 0; k < n; ++k) {
            states.col(k) = x;
            output.col(k) = Hs * x;
            if (!j_zero) output.col(k) += sys.J * u.values.col(k);
            if (k + 1 < n) x = Fs * x + Gs * u.values.col(k);
        }
    } else {
        Eigen::VectorXd x = x0;
        Eigen::VectorXd next(nx);
        for (int k = 0; k < n; ++k) {
            states.col(k) = x;
            output.col(k).noalias() = sys.H * x;
            if (!j_zero) output.col(k).noalias() += sys.J * u.values.col(k);
            if (k + 1 < n) {
                next.noalias() = sys.F * x;
                next.noalias() += sys.G * u.values.col(k);
                x = next;
            }
        }
    }
    return {Signal(u.grid, sys.state_space, std::move(states)),
            Signal(u.grid, sys.output_space, std::move(output))};
}

SimulationResult simulate(const DiscreteSystemNode& sys, const Signal& u) {
    return simulate(sys, u, Eigen::VectorXd::Zero(sys.state_dim()));
}

DiscreteSystemNode transport_boundary_control(int m) {
    require(m >= 1, "transport_boundary_control: m must be >= 1");
    const double dt = 1.0 / m;
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) F(i, i - 1) = 1.0;  // down-shift, nilpotent
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, 1);
    G(0, 0) = 1.0;
    DiscreteSystemNode sys(ValueSpace::l2_uniform(m), ValueSpace::sup(1),
                           ValueSpace::l2_uniform(m), std::move(F), std::move(G),
                           Eigen::MatrixXd::Identity(m, m), Eigen::MatrixXd::Zero(m, 1),
                           dt);
    sys.output_function_space = true;
    return sys;
}

DiscreteSystemNode left_shift_distributed_input(int m) {
    require(m >= 1, "left_shift_distributed_input: m must be >= 1");
    const double dt = 1.0 / m;
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) F(i - 1, i) = 1.0;  // up-shift
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(1, m);
    H(0, 0) = 1.0;  // boundary observation at cell 0
    DiscreteSystemNode sys(ValueSpace::l2_uniform(m), ValueSpace::l2_uniform(m),
                           ValueSpace::sup(1), std::move(F),
                           dt * Eigen::MatrixXd::Identity(m, m), std::move(H),
                           Eigen::MatrixXd::Zero(1, m), dt);
    sys.input_function_space = true;
    return sys;
}

DiscreteSystemNode dual(const DiscreteSystemNode& sys) {
    const Eigen::VectorXd& wx = sys.state_space.weights;
    const Eigen::VectorXd& wu = sys.input_space.weights;
    const Eigen::VectorXd& wy = sys.output_space.weights;

    // Adjoint of M : (V, W_V) -> (Z, W_Z) is W_V^{-1} M^T W_Z.
    const auto adjoint = [](const Eigen::MatrixXd& M, const Eigen::VectorXd& w_dom,
                            const Eigen::VectorXd& w_cod) -> Eigen::MatrixXd {
        return w_dom.cwiseInverse().asDiagonal() * M.transpose() * w_cod.asDiagonal();
    };

    DiscreteSystemNode d(sys.state_space, sys.output_space, sys.input_space,
                         adjoint(sys.F, wx, wx), adjoint(sys.H, wx, wy),
                         adjoint(sys.G, wu, wx), adjoint(sys.J, wu, wy), sys.dt);
    d.input_function_space = sys.output_function_space;
    d.output_function_space = sys.input_function_space;
    return d;
}

MatrixMeasure impulse_response(const DiscreteSystemNode& sys, int horizon_steps) {
    require(horizon_steps >= 1, "impulse_response: horizon must be >= 1");
    std::vector<Eigen::MatrixXd> density;
    density.reserve(horizon_steps);
    density.push_back(Eigen::MatrixXd::Zero(sys.output_dim(), sys.input_dim()));
    Eigen::MatrixXd Z = sys.G;  // F^{m-1} G
    for (int m = 1; m < horizon_steps; ++m) {
        density.push_back(sys.H * Z / sys.dt);
        Z = sys.F * Z;
    }
    std::vector<MatrixMeasure::Atom> atoms;
    if (!sys.J.isZero(0.0)) atoms.push_back({0.0, sys.J});
    return MatrixMeasure(sys.output_dim(), sys.input_dim(), std::move(atoms),
                         TimeGrid(sys.dt, horizon_steps), std::move(density));
}

DiscreteSystemNode from_kernel(const MatrixMeasure& h) {
    require(h.has_density() || !h.atoms.empty(), "from_kernel: empty measure");
    // Lag grid: density dt when present, otherwise the smallest positive atom
    // time (remaining atoms must sit on its multiples).
    double step = h.has_density() ? h.density_grid->dt : 0.0;
    if (!h.has_density()) {
        for (const auto& a : h.atoms)
            if (a.time > 0.0) step = (step == 0.0) ? a.time : std::min(step, a.time);
        if (step == 0.0) step = 1.0;
    }

    const int m = h.cols;
    const int n_out = h.rows;

    // Per-lag coefficient W_i applied to u_{k-1-i}; lag 0 goes to J.
    long buffer = 0;
    std::vector<std::pair<long, Eigen::MatrixXd>> lag_weights;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_out, m);
    for (const auto& a : h.atoms) {
        const double ratio = a.time / step;
        const long lag = std::lround(ratio);
        require(std::abs(ratio - static_cast<double>(lag)) <= 1e-9,
                "from_kernel: off-grid atom");
        if (lag == 0) {
            J += a.weight;
        } else {
            lag_weights.emplace_back(lag, a.weight);
            buffer = std::max(buffer, lag);
        }
    }
    if (h.has_density()) {
        const int nd = static_cast<int>(h.density.size());
        J += step * h.density[0];
        for (int k = 1; k < nd; ++k) {
            lag_weights.emplace_back(k, step * h.density[k]);
            buffer = std::max<long>(buffer, k);
        }
    }
    buffer = std::max<long>(buffer, 1);

    const long nx = buffer * m;
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(nx, nx);
    for (long b = 1; b < buffer; ++b)
        F.block(b * m, (b - 1) * m, m, m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nx, m);
    G.topRows(m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_out, nx);
    for (const auto& [lag, w] : lag_weights) H.middleCols((lag - 1) * m, m) += w;

    return DiscreteSystemNode(ValueSpace::sup(static_cast<int>(nx)), ValueSpace::sup(m),
                              ValueSpace::sup(n_out), std::move(F), std::move(G),
                              std::move(H), std::move(J), step);
}

Eigen::MatrixXcd transfer_difference(const DiscreteSystemNode& sys,
                                     std::complex<double> alpha,
                                     std::complex<double> beta) {
    const int nx = sys.state_dim();
    const Eigen::MatrixXcd Fc = sys.F.cast<std::complex<double>>();
    const Eigen::MatrixXcd Gc = sys.G.cast<std::complex<double>>();
    const Eigen::MatrixXcd Hc = sys.H.cast<std::complex<double>>();
    const auto resolvent_times_G = [&](std::complex<double> s) {
        const std::complex<double> z = std::exp(s * sys.dt);
        Eigen::MatrixXcd A = z * Eigen::MatrixXcd::Identity(nx, nx) - Fc;
        return Eigen::MatrixXcd(A.partialPivLu().solve(Gc));
    };
    return Hc * (resolvent_times_G(alpha) - resolvent_times_G(beta));
}

bool is_nilpotent(const Eigen::MatrixXd& F) {
    const int n = static_cast<int>(F.rows());
    if (F.isZero(0.0)) return true;
    Eigen::MatrixXd P = F;
    int power = 1;
    while (power < n) {
        P = P * P;
        power *= 2;
        if (P.isZero(0.0)) return true;
    }
    return P.isZero(0.0);
}

double spectral_radius(const Eigen::MatrixXd& F) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(F, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double default_horizon(const DiscreteSystemNode& sys) {
    const int n = sys.state_dim();
    if (is_nilpotent(sys.F)) return 3.0 * n * sys.dt;
    const double rho = spectral_radius(sys.F);
    if (rho >= 1.0 - 1e-9) return 100.0 * n * sys.dt;  // capped; reports carry it
    const double k = std::log(1e-12) / std::log(rho);
    const long steps = std::clamp<long>(std::lround(std::ceil(k)), n, 1000000L);
    return steps * sys.dt;
}

}  // namespace iostab
