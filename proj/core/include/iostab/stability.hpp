#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iostab/sysnode.hpp"

namespace iostab {

inline constexpr std::uint64_t kDefaultSeed = 424242;

/// Certified enclosure of an induced L^p -> L^p gain. The witness, when
/// re-simulated, reproduces lower_bound to 1e-12 relative. upper_bound is a
/// summed-operator-norm certificate; unbounded_evidence marks brackets whose
/// lower bound grows under grid refinement.
struct GainReport {
    GainP p = GainP::Inf;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    bool unbounded_evidence = false;
    Signal witness;
    double horizon = 0.0;
    std::string notes;
};

struct AdmissibilityReport {
    double constant_lower = 0.0;
    double constant_upper = 0.0;
    int probe_count = 0;
    double horizon = 0.0;
    std::string notes;
};

/// Observation-admissibility bracket plus the convolution (maximal
/// regularity) side of the same constant, reported together so their
/// equivalence can be checked numerically.
struct ObservationAdmissibility {
    AdmissibilityReport observation;
    AdmissibilityReport max_regularity;
};

enum class ProbeStrategy { SlidingBand, GreedyAlignment, RandomProbe };

enum class ControlFlavor { ContinuousInput, LInf };

/// Exact gain via the impulse-response total variation. Requires
/// finite-dimensional (non-function-space) input and output; throws
/// std::invalid_argument directing the caller to empirical_gain otherwise.
GainReport kernel_gain(const DiscreteSystemNode& sys, GainP p, double horizon);

/// Lower bound from constructed inputs (sliding band family, greedy
/// alignment against the worst output functional, or random probing) and a
/// certified upper bound from summed operator norms. For p = 1 a sup-normed
/// value space is measured with unit 1-norms, the pairing under which the
/// column-TV certificate is exact.
GainReport empirical_gain(const DiscreteSystemNode& sys, GainP p, double horizon,
                          ProbeStrategy strategy,
                          std::uint64_t seed = kDefaultSeed, int probes = 32);

/// Deterministic strategy mix: kernel_gain when a kernel certificate exists,
/// otherwise greedy alignment plus the sliding-band family when the input
/// space is grid-matched.
GainReport auto_gain(const DiscreteSystemNode& sys, GainP p, double horizon);

/// Certified upper bound used by the empirical estimators. Structure-aware:
/// Gram bound for scalar input with weighted-2 output, disjoint-support
/// column bound for scalar output, summed operator norms otherwise.
double gain_upper_bound(const DiscreteSystemNode& sys, GainP p,
                        int horizon_steps, std::string* method = nullptr);

struct SweepRow {
    double eps = 0.0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
    double predicted = 0.0;
};

/// Gain-divergence sweep on the left shift: for each eps, the measured ratio
/// ||y||_inf / ||u||_inf of the sliding-band input against the predicted
/// 1/sqrt(eps). Each eps must be a positive multiple of 1/m, at most 1.
std::vector<SweepRow> counterexample_sweep(int m, const std::vector<double>& eps_list);

/// L^1 observation constant: lower bound from probing states (canonical
/// basis, the all-ones direction and random unit vectors), upper bound
/// dt * sum_k ||H F^k||. The max-regularity side probes the state-convolution
/// map with L^1 inputs; its upper bound uses the disjoint-support column
/// certificate when available.
ObservationAdmissibility observation_admissibility(const DiscreteSystemNode& sys,
                                                   double horizon, int probes,
                                                   std::uint64_t seed = kDefaultSeed);

/// Input-to-state admissibility bracket over unit sup-norm inputs. The
/// discrete setting does not distinguish continuous from L^inf inputs; the
/// flavor is recorded in the notes.
AdmissibilityReport control_admissibility(const DiscreteSystemNode& sys,
                                          ControlFlavor flavor, double horizon,
                                          int probes,
                                          std::uint64_t seed = kDefaultSeed);

/// Value space actually used when measuring signals for a p-gain: sup-normed
/// spaces are replaced by unit-weight 1-norms for p = 1, everything else is
/// kept as stored.
ValueSpace measurement_space(const ValueSpace& space, GainP p);

double lp_norm_as(const Signal& s, Lp p, const ValueSpace& space);

Lp lp_of(GainP p);

}  // namespace iostab
