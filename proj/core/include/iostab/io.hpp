#pragma once

#include <complex>
#include <string>
#include <vector>

#include "iostab/duality.hpp"
#include "iostab/stability.hpp"

namespace iostab {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

// Signals: CSV with header t,v0,...,v{d-1}, one row per grid point.
std::string signal_to_csv(const Signal& s);
void write_signal_csv(const std::string& path, const Signal& s);
Signal read_signal_csv(const std::string& path, const ValueSpace& space);

// Kernels: line-oriented text. Header `kernel n m dt horizon`, atom lines
// `atom <t> <n*m entries row-major>`, density lines `d <k> <n*m entries>`.
std::string kernel_to_text(const MatrixMeasure& h);
void write_kernel_text(const std::string& path, const MatrixMeasure& h);
MatrixMeasure parse_kernel_text(const std::string& text);
MatrixMeasure read_kernel_text(const std::string& path);

// Systems: same line-oriented style. Header `sysnode nx nu ny dt`, then
// norms/flags and the F/G/H/J/w_state/w_in/w_out blocks, row-major.
std::string sysnode_to_text(const DiscreteSystemNode& sys);
void write_sysnode_text(const std::string& path, const DiscreteSystemNode& sys);
DiscreteSystemNode parse_sysnode_text(const std::string& text);
DiscreteSystemNode read_sysnode_text(const std::string& path);

/// GainReport as JSON with fields exactly
/// p, lower_bound, upper_bound, horizon, witness_file, notes.
/// p is 1 or "inf"; upper_bound is a number or "unbounded-evidence".
std::string gain_report_json(const GainReport& r, const std::string& witness_file);

std::string admissibility_json(const ObservationAdmissibility& r);
std::string admissibility_json(const AdmissibilityReport& r);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

std::string gain_reports_json(const std::vector<GainReport>& reports,
                              const std::vector<std::string>& witness_files);

std::string admissibility_bundle_json(const ObservationAdmissibility& obs,
                                      const AdmissibilityReport& control);

std::string duality_row_json(const DualityRow& row);
std::string duality_sweep_json(const DualitySweepReport& report);

/// Laplace samples as CSV: header re_s,im_s,re_G_00,im_G_00,...
std::string laplace_samples_csv(const std::vector<std::complex<double>>& points,
                                const std::vector<Eigen::MatrixXcd>& values);

}  // namespace iostab
