#pragma once

#include <Eigen/Dense>

#include <string>

namespace iostab {

/// Uniform time grid t_k = k*dt for k = 0..n_steps-1.
struct TimeGrid {
    double dt = 1.0;
    int n_steps = 1;

    TimeGrid(double dt_, int n_steps_);

    double t(int k) const { return k * dt; }
    double horizon() const { return (n_steps - 1) * dt; }

    bool operator==(const TimeGrid& other) const = default;
};

enum class NormKind { Sup, WeightedOne, WeightedTwo };

/// Finite-dimensional normed space with quadrature weights. Weights model a
/// uniform spatial grid (all equal to the cell width) when the space stands
/// for a discretized function space; they are ignored for sup norms.
struct ValueSpace {
    int dim = 1;
    NormKind kind = NormKind::Sup;
    Eigen::VectorXd weights;  // strictly positive, size == dim

    ValueSpace(int dim_, NormKind kind_, Eigen::VectorXd weights_);

    static ValueSpace sup(int dim);
    static ValueSpace weighted_one(Eigen::VectorXd w);
    static ValueSpace weighted_two(Eigen::VectorXd w);
    /// L^1 with unit weights (counting measure scaled by 1).
    static ValueSpace unit_one(int dim);
    /// L^2 on a uniform grid of m cells over [0,1]: weights 1/m.
    static ValueSpace l2_uniform(int m);

    double norm(const Eigen::VectorXd& v) const;
    /// Weighted inner product sum_i w_i a_i b_i (w = 1 for sup spaces).
    double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
    /// Norm of a linear functional v -> r.v on this space.
    double dual_norm(const Eigen::VectorXd& r) const;

    bool compatible_with(const ValueSpace& other) const;
};

/// Time-sampled vector-valued signal. Column k of `values` is the sample at
/// t_k. Immutable by convention; operations return new signals.
struct Signal {
    TimeGrid grid;
    ValueSpace space;
    Eigen::MatrixXd values;  // space.dim x grid.n_steps

    Signal(TimeGrid grid_, ValueSpace space_, Eigen::MatrixXd values_);
    /// Scalar zero sample; placeholder for reports built incrementally.
    Signal();

    static Signal zero(const TimeGrid& grid, const ValueSpace& space);
    static Signal constant(const TimeGrid& grid, const ValueSpace& space,
                           const Eigen::VectorXd& v);

    Eigen::VectorXd sample(int k) const { return values.col(k); }
};

enum class Lp { One, Two, Inf };

/// L^p norm over time of the value-space norms: max_k ||v_k|| for p = inf,
/// (dt * sum_k ||v_k||^p)^(1/p) otherwise (left-endpoint quadrature).
double lp_norm(const Signal& s, Lp p);

/// Time-reflected duality pairing dt * sum_k <a_k, b_{N-1-k}> using the
/// weights of a.space.
double pairing(const Signal& a, const Signal& b);

/// Input family for the gain-divergence experiment on the left shift: at each
/// t_k <= 1 the sample is the indicator of a band of width eps on the spatial
/// grid, centered at 1 - t_k with the center clamped into [eps/2, 1 - eps/2]
/// so the band always fits. eps must be an integer multiple of 1/m and the
/// grid must satisfy dt = 1/m. The band never loses cells, so the weighted-2
/// value norm equals sqrt(eps) at every t_k <= 1.
Signal sliding_band_input(const TimeGrid& grid, int m, double eps);

/// Induced operator norm of V between two value spaces. Exact for the common
/// combinations used here; a valid upper bound otherwise (the flag reports
/// which one was computed).
struct OperatorNorm {
    double value = 0.0;
    bool exact = true;
};
OperatorNorm operator_norm(const Eigen::MatrixXd& V, const ValueSpace& in,
                           const ValueSpace& out);

}  // namespace iostab
