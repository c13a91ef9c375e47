#pragma once

#include <Eigen/Dense>

#include <complex>

#include "iostab/kernel.hpp"
#include "iostab/signal.hpp"

namespace iostab {

/// One-step state-space realization over weighted spaces:
///
///     x_{k+1} = F x_k + G u_k,      y_k = H x_k + J u_k.
///
/// F is the exact one-step evolution over dt (a pure index shift for the
/// transport systems, an exact exponential for the diagonal ones); G carries
/// the input quadrature weight dt where the continuous input enters through
/// an integral over the step.
///
/// The function-space flags mark inputs/outputs that stand for a discretized
/// continuum (their dimension is tied to the spatial grid). Kernel-based gain
/// certificates are refused for those; use the empirical estimators.
struct DiscreteSystemNode {
    ValueSpace state_space;
    ValueSpace input_space;
    ValueSpace output_space;
    Eigen::MatrixXd F;
    Eigen::MatrixXd G;
    Eigen::MatrixXd H;
    Eigen::MatrixXd J;
    double dt = 1.0;
    bool input_function_space = false;
    bool output_function_space = false;

    DiscreteSystemNode(ValueSpace state, ValueSpace input, ValueSpace output,
                       Eigen::MatrixXd F_, Eigen::MatrixXd G_,
                       Eigen::MatrixXd H_, Eigen::MatrixXd J_, double dt_);

    int state_dim() const { return state_space.dim; }
    int input_dim() const { return input_space.dim; }
    int output_dim() const { return output_space.dim; }
};

struct SimulationResult {
    Signal states;
    Signal output;
};

SimulationResult simulate(const DiscreteSystemNode& sys, const Signal& u,
                          const Eigen::VectorXd& x0);
SimulationResult simulate(const DiscreteSystemNode& sys, const Signal& u);

/// Transport equation on [0,1] with boundary control at 0 and identity
/// observation, discretized with dt = 1/m so one step is an exact down-shift.
/// State cell i holds the value at xi = (i+1)/m, so x_k[i] = u_{k-1-i}.
DiscreteSystemNode transport_boundary_control(int m);

/// Left shift on [0,1] with distributed input and boundary observation at 0,
/// discretized with dt = 1/m (exact up-shift). G = dt * I carries the input
/// quadrature; H reads cell 0, so y_k = dt * sum_r u_{k-1-r}[r].
DiscreteSystemNode left_shift_distributed_input(int m);

/// Dual system: adjoints with respect to the weighted inner products, with
/// input and output spaces (and function-space flags) swapped.
DiscreteSystemNode dual(const DiscreteSystemNode& sys);

/// Impulse response as a measure: atom J delta_0 plus density samples
/// D_m = H F^{m-1} G / dt for m >= 1 (D_0 = 0), so that
/// convolve(impulse_response(sys, K), u) == simulate(sys, u, 0).output
/// exactly on the first K steps.
MatrixMeasure impulse_response(const DiscreteSystemNode& sys, int horizon_steps);

/// Canonical shift realization of convolution by h: a buffer of past input
/// samples, with on-grid atoms folded into the output map and the t = 0 mass
/// into the feedthrough. simulate == convolve exactly.
DiscreteSystemNode from_kernel(const MatrixMeasure& h);

/// H [(z_a I - F)^{-1} - (z_b I - F)^{-1}] G evaluated at z = exp(s * dt);
/// matches the Laplace-transform difference of the represented kernel.
Eigen::MatrixXcd transfer_difference(const DiscreteSystemNode& sys,
                                     std::complex<double> alpha,
                                     std::complex<double> beta);

bool is_nilpotent(const Eigen::MatrixXd& F);
double spectral_radius(const Eigen::MatrixXd& F);

/// Default experiment horizon: 3 transit times for nilpotent one-step maps,
/// otherwise the time at which ||F^k|| has decayed below 1e-12 (capped, with
/// the truncation recorded by callers).
double default_horizon(const DiscreteSystemNode& sys);

}  // namespace iostab
