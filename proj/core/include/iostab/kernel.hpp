#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "iostab/signal.hpp"

namespace iostab {

/// Matrix-valued Borel measure on [0, infinity) of bounded total variation,
/// represented as finitely many atoms plus a piecewise-constant density
/// sampled on a uniform grid:
///
///     h = sum_a  M_a delta_{tau_a}  +  D(t) dt.
///
/// Atom times are nonnegative and strictly increasing. The density grid, when
/// present, starts at t = 0. Total variation is truncated at the density
/// horizon; callers that care about the tail record the horizon in reports.
struct MatrixMeasure {
    struct Atom {
        double time;
        Eigen::MatrixXd weight;
    };

    int rows = 1;
    int cols = 1;
    std::vector<Atom> atoms;
    std::optional<TimeGrid> density_grid;
    std::vector<Eigen::MatrixXd> density;  // one rows x cols sample per grid point

    MatrixMeasure(int rows_, int cols_, std::vector<Atom> atoms_,
                  std::optional<TimeGrid> density_grid_,
                  std::vector<Eigen::MatrixXd> density_);

    static MatrixMeasure atoms_only(int rows, int cols, std::vector<Atom> atoms);
    static MatrixMeasure density_only(TimeGrid grid, std::vector<Eigen::MatrixXd> samples);

    /// Largest time carrying mass (atom or density sample).
    double horizon() const;
    bool has_density() const { return density_grid.has_value(); }
};

enum class GainP { One, Inf };

struct GainValue {
    GainP p = GainP::Inf;
    double value = 0.0;
};

/// Total variation of the scalar entry (i, j): sum of absolute atom weights
/// plus the left-Riemann integral of the absolute density.
double entry_tv(const MatrixMeasure& h, int i, int j);

/// Exact induced norm of u -> h * u on the discrete signal space: worst row
/// of entry TVs for p = inf (sup value norms), worst column for p = 1
/// (unit-weight 1-norms).
GainValue induced_gain(const MatrixMeasure& h, GainP p);

MatrixMeasure transpose(const MatrixMeasure& h);

/// y_k = sum_a M_a u_{k - tau_a/dt} + dt * sum_{j<=k} D_{k-j} u_j, with
/// out-of-range indices treated as zero. Atom times must lie on the grid.
Signal convolve(const MatrixMeasure& h, const Signal& u);

/// Laplace transform sum_a exp(-s tau_a) M_a + dt * sum_k exp(-s t_k) D_k.
Eigen::MatrixXcd laplace(const MatrixMeasure& h, std::complex<double> s);

}  // namespace iostab
