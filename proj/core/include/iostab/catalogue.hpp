#pragma once

#include <complex>
#include <string>
#include <vector>

#include "iostab/sysnode.hpp"

namespace iostab {

/// Built-in systems and kernels addressed by name, so experiment runs need no
/// input files. Names: delay1, exp1, transport, leftshift, diag-exp-2.
struct CatalogueEntry {
    std::string name;
    bool kernel_representable = false;  // finite-dimensional input and output
};

std::vector<CatalogueEntry> catalogue_entries();

bool catalogue_has_system(const std::string& name);

/// Builds the named system at spatial/grid resolution m (dt = 1/m).
DiscreteSystemNode catalogue_system(const std::string& name, int m);

bool catalogue_has_kernel(const std::string& name);

/// Builds the named kernel at the given time step, truncated at `horizon`.
MatrixMeasure catalogue_kernel(const std::string& name, double dt, double horizon);

/// Closed-form transfer function of the named kernel (exp(-s) for the unit
/// delay, 1/(s+1) for the exponential, its diagonal scaling for diag-exp-2).
/// Used as the reference side of the Laplace consistency checks.
Eigen::MatrixXcd reference_transfer(const std::string& name, std::complex<double> s);

}  // namespace iostab
