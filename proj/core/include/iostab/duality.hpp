#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iostab/stability.hpp"

namespace iostab {

// Tolerances for the duality checks: exact discrete identities are pure
// floating-point noise, bracket inequalities get one extra digit of slack.
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kBracketTol = 1e-9;

/// Max relative defect of the time-reflected adjoint pairing identity
///     pairing(y, u_d) == pairing(u, y_d)
/// over random input pairs driven through the system and its dual from zero
/// initial state. Exact in exact arithmetic.
double adjoint_pairing_residual(const DiscreteSystemNode& sys, int trials,
                                double horizon, std::uint64_t seed = kDefaultSeed);

/// One-sided inequality between a certified dual lower bound and a certified
/// primal upper bound.
struct GainDualityVerdict {
    std::string description;
    double dual_lower = 0.0;
    double primal_upper = 0.0;
    double margin = 0.0;  // primal_upper - dual_lower
    bool pass = false;
};

/// Checks dual L^1 gain lower bounds against the primal L^inf upper bound.
GainDualityVerdict dual_l1_gain_check(const DiscreteSystemNode& sys, double horizon);

/// Checks dual L^inf gain lower bounds against the primal L^1 upper bound.
GainDualityVerdict dual_linf_gain_check(const DiscreteSystemNode& sys, double horizon);

/// Max relative residual of the shift-commutation regression: the second
/// discrete difference of the output equals the output of the second
/// discrete difference of the input (inputs vanish on the first two samples).
double second_difference_residual(const DiscreteSystemNode& sys, int trials,
                                  double horizon, std::uint64_t seed = kDefaultSeed);

struct DualityRow {
    std::string name;
    int grid_size = 0;
    GainReport primal_gain_infty;
    GainReport primal_gain_one;
    GainReport dual_gain_infty;
    GainReport dual_gain_one;
    double pairing_residual = 0.0;
    std::vector<GainDualityVerdict> verdicts;
    bool negative_cell = false;  // L^1 bracket stays bounded while the
                                 // L^inf lower bound grows with refinement
};

struct DualitySweepReport {
    std::vector<DualityRow> rows;
    double max_pairing_residual = 0.0;
    bool all_pass = false;
};

/// Runs the full stability-relation table over the built-in catalogue at the
/// given grid sizes: primal and dual gain brackets at p in {1, inf}, pairing
/// residuals, the bracket inequalities, and the divergence marker for the
/// left-shift family.
DualitySweepReport duality_sweep(const std::vector<int>& grid_sizes,
                                 int trials = 20,
                                 std::uint64_t seed = kDefaultSeed);

std::string duality_sweep_markdown(const DualitySweepReport& report);

}  // namespace iostab
