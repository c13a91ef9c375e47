// Batch experiment runner: exposes the library's gain, duality and
// admissibility verifications as reproducible commands with CSV/JSON output.
//
// Exit codes: 0 all checks pass, 1 usage error, 2 check failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "iostab/catalogue.hpp"
#include "iostab/duality.hpp"
#include "iostab/io.hpp"
#include "iostab/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailure = 2;

void emit(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

struct FailureLog {
    int failures = 0;
    void check(bool ok, const std::string& what) {
        if (ok) {
            std::cerr << "[PASS] " << what << "\n";
        } else {
            std::cerr << "[FAIL] " << what << "\n";
            ++failures;
        }
    }
    int exit_code() const { return failures == 0 ? kExitOk : kExitCheckFailure; }
};

iostab::ProbeStrategy strategy_from(const std::string& s) {
    if (s == "greedy") return iostab::ProbeStrategy::GreedyAlignment;
    if (s == "sliding-band") return iostab::ProbeStrategy::SlidingBand;
    if (s == "random") return iostab::ProbeStrategy::RandomProbe;
    throw CLI::ValidationError("--strategy", "unknown strategy: " + s);
}

int run_sweep(int grid_size, std::vector<double> eps_list, const std::string& output,
              const std::string& format) {
    const auto rows = iostab::counterexample_sweep(grid_size, eps_list);
    emit(format == "json" ? iostab::sweep_to_json(rows) : iostab::sweep_to_csv(rows),
         output);
    FailureLog log;
    for (const auto& r : rows) {
        const bool ok = std::abs(r.ratio - r.predicted) <= 1e-9 * r.predicted;
        log.check(ok, "eps=" + iostab::format_double(r.eps) + " ratio=" +
                          iostab::format_double(r.ratio) + " matches 1/sqrt(eps) to 1e-9");
    }
    return log.exit_code();
}

int run_gains(const std::string& system, int grid_size, const std::string& p_sel,
              double horizon, const std::string& strategy, int probes,
              std::uint64_t seed, const std::string& output) {
    const iostab::DiscreteSystemNode sys = iostab::catalogue_system(system, grid_size);
    const double T = horizon > 0.0 ? horizon : std::max(iostab::default_horizon(sys), 1.0);

    std::vector<iostab::GainP> ps;
    if (p_sel == "1")
        ps = {iostab::GainP::One};
    else if (p_sel == "inf")
        ps = {iostab::GainP::Inf};
    else
        ps = {iostab::GainP::Inf, iostab::GainP::One};

    std::vector<iostab::GainReport> reports;
    for (const auto p : ps) {
        if (strategy == "auto")
            reports.push_back(iostab::auto_gain(sys, p, T));
        else
            reports.push_back(
                iostab::empirical_gain(sys, p, T, strategy_from(strategy), seed, probes));
    }

    std::vector<std::string> witness_files;
    if (!output.empty()) {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const std::string wf = output + ".witness" + std::to_string(i) + ".csv";
            iostab::write_signal_csv(wf, reports[i].witness);
            witness_files.push_back(wf);
        }
    }
    emit(iostab::gain_reports_json(reports, witness_files), output);

    FailureLog log;
    for (const auto& r : reports)
        log.check(r.lower_bound <= r.upper_bound + 1e-9,
                  std::string("p=") + (r.p == iostab::GainP::One ? "1" : "inf") +
                      " bracket is ordered: [" + iostab::format_double(r.lower_bound) +
                      ", " + iostab::format_double(r.upper_bound) + "]");
    return log.exit_code();
}

int run_check_duality(int grid_size, int trials, std::uint64_t seed,
                      const std::string& output) {
    const auto report = iostab::duality_sweep({grid_size}, trials, seed);
    emit(iostab::duality_sweep_json(report), output);
    FailureLog log;
    log.check(report.max_pairing_residual <= iostab::kIdentityTol,
              "pairing residual " + iostab::format_double(report.max_pairing_residual) +
                  " <= 1e-10");
    for (const auto& row : report.rows)
        for (const auto& v : row.verdicts)
            log.check(v.pass, row.name + " (M=" + std::to_string(row.grid_size) + "): " +
                                  v.description);
    return log.exit_code();
}

int run_admissibility(const std::string& system, int grid_size, double horizon,
                      int probes, std::uint64_t seed, const std::string& output) {
    const iostab::DiscreteSystemNode sys = iostab::catalogue_system(system, grid_size);
    const double T = horizon > 0.0 ? horizon : std::max(iostab::default_horizon(sys), 1.0);
    const auto obs = iostab::observation_admissibility(sys, T, probes, seed);
    const auto ctl = iostab::control_admissibility(sys, iostab::ControlFlavor::LInf, T,
                                                   probes, seed);
    emit(iostab::admissibility_bundle_json(obs, ctl), output);

    FailureLog log;
    log.check(obs.observation.constant_lower <= obs.observation.constant_upper + 1e-9,
              "observation bracket ordered");
    log.check(obs.max_regularity.constant_lower <= obs.max_regularity.constant_upper + 1e-9,
              "max-regularity bracket ordered");
    log.check(obs.observation.constant_lower <= obs.max_regularity.constant_upper + 1e-9 &&
                  obs.max_regularity.constant_lower <= obs.observation.constant_upper + 1e-9,
              "observation and max-regularity brackets overlap");
    log.check(ctl.constant_lower <= ctl.constant_upper + 1e-9, "control bracket ordered");
    return log.exit_code();
}

int run_laplace_check(const std::string& kernel, double dt, double horizon,
                      std::vector<double> s_points, int samples,
                      const std::string& output) {
    const iostab::MatrixMeasure h = iostab::catalogue_kernel(kernel, dt, horizon);
    if (s_points.empty()) {
        for (int i = 0; i < samples; ++i)
            s_points.push_back(5.0 * i / std::max(1, samples - 1));
    }
    std::vector<std::complex<double>> pts;
    std::vector<Eigen::MatrixXcd> values;
    FailureLog log;
    for (const double re : s_points) {
        const std::complex<double> s(re, 0.0);
        const Eigen::MatrixXcd L = iostab::laplace(h, s);
        pts.push_back(s);
        values.push_back(L);
        const Eigen::MatrixXcd ref = iostab::reference_transfer(kernel, s);
        const double err = (L - ref).cwiseAbs().maxCoeff();
        log.check(err <= 5e-3, "L(h)(" + iostab::format_double(re) +
                                   ") matches closed form within 5e-3 (err " +
                                   iostab::format_double(err) + ")");
    }
    emit(iostab::laplace_samples_csv(pts, values), output);

    // Difference relation against a shift realization at a coarse grid.
    const double dt_r = 1.0 / 16;
    const iostab::MatrixMeasure h2 =
        iostab::catalogue_kernel(kernel, dt_r, std::min(horizon, 4.0));
    const iostab::DiscreteSystemNode sys = iostab::from_kernel(h2);
    const std::vector<std::pair<std::complex<double>, std::complex<double>>> pairs = {
        {{0.0, 0.0}, {1.0, 0.0}},
        {{0.5, 0.0}, {2.0, 0.0}},
        {{1.0, 1.0}, {3.0, -1.0}},
    };
    for (const auto& [a, b] : pairs) {
        const Eigen::MatrixXcd lhs = iostab::laplace(h2, a) - iostab::laplace(h2, b);
        const Eigen::MatrixXcd rhs = iostab::transfer_difference(sys, a, b);
        const double err = (lhs - rhs).cwiseAbs().maxCoeff();
        log.check(err <= 1e-8, "difference relation at (" +
                                   iostab::format_double(a.real()) + ", " +
                                   iostab::format_double(b.real()) + ") within 1e-8 (err " +
                                   iostab::format_double(err) + ")");
    }
    return log.exit_code();
}

int run_catalogue(std::vector<int> grid_sizes, int trials, std::uint64_t seed,
                  bool list_only, const std::string& format, const std::string& output) {
    if (list_only) {
        std::string text;
        for (const auto& e : iostab::catalogue_entries())
            text += e.name + (e.kernel_representable ? " (kernel)" : " (function-space)") +
                    "\n";
        emit(text, output);
        return kExitOk;
    }
    const auto report = iostab::duality_sweep(grid_sizes, trials, seed);
    emit(format == "json" ? iostab::duality_sweep_json(report)
                          : iostab::duality_sweep_markdown(report),
         output);
    FailureLog log;
    for (const auto& row : report.rows)
        for (const auto& v : row.verdicts)
            log.check(v.pass, row.name + " (M=" + std::to_string(row.grid_size) + "): " +
                                  v.description);
    return log.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified L1/Linf input-output gains of exactly discretized "
                 "transport, shift and convolution-kernel systems"};
    app.require_subcommand(1);

    int exit_code = kExitOk;
    std::function<int()> action;

    // Shared flag storage.
    int grid_size = 1024;
    std::vector<double> eps_list = {1.0, 0.25, 0.0625, 0.015625, 0.00390625};
    std::string output;
    std::string format = "csv";
    std::string system = "transport";
    std::string kernel = "delay1";
    std::string p_sel = "both";
    std::string strategy = "auto";
    double horizon = 0.0;
    double dt = 1e-3;
    double kernel_horizon = 30.0;
    int trials = 100;
    int probes = 32;
    int samples = 20;
    std::vector<int> grid_sizes = {8, 16};
    std::vector<double> s_points;
    bool list_only = false;
    std::uint64_t seed = iostab::kDefaultSeed;

    auto* sweep = app.add_subcommand("sweep-counterexample",
                                     "Gain-divergence sweep of the sliding band family "
                                     "on the left shift");
    sweep->add_option("--grid-size", grid_size, "spatial cells M (dt = 1/M)")
        ->default_val(1024)
        ->check(CLI::Range(2, 1 << 20));
    sweep->add_option("--eps", eps_list, "band widths, multiples of 1/M")
        ->delimiter(',');
    sweep->add_option("--output,-o", output, "write table here instead of stdout");
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->callback([&] { action = [&] { return run_sweep(grid_size, eps_list, output, format); }; });

    auto* gains = app.add_subcommand("gains", "Gain brackets for a catalogue system");
    gains->add_option("--system", system, "catalogue name")
        ->required()
        ->check(CLI::IsMember({"delay1", "exp1", "transport", "leftshift", "diag-exp-2"}));
    gains->add_option("--grid-size", grid_size, "resolution M")->default_val(16)->check(CLI::Range(2, 1 << 16));
    gains->add_option("--p", p_sel, "1, inf or both")->check(CLI::IsMember({"1", "inf", "both"}));
    gains->add_option("--horizon", horizon, "time horizon (default: system-dependent)");
    gains->add_option("--strategy", strategy, "auto, greedy, sliding-band or random")
        ->check(CLI::IsMember({"auto", "greedy", "sliding-band", "random"}));
    gains->add_option("--probes", probes, "random probe count");
    gains->add_option("--seed", seed, "RNG seed");
    gains->add_option("--output,-o", output, "write JSON here; witnesses go next to it");
    gains->callback([&] {
        action = [&] {
            return run_gains(system, grid_size, p_sel, horizon, strategy, probes, seed,
                             output);
        };
    });

    auto* dual_cmd = app.add_subcommand("check-duality",
                                        "Pairing identity and gain-duality checks over "
                                        "the catalogue");
    dual_cmd->add_option("--grid-size", grid_size, "resolution M")->default_val(64)->check(CLI::Range(2, 1 << 16));
    dual_cmd->add_option("--trials", trials, "random trials per system")->default_val(100);
    dual_cmd->add_option("--seed", seed, "RNG seed");
    dual_cmd->add_option("--output,-o", output, "write JSON here instead of stdout");
    dual_cmd->callback([&] {
        action = [&] { return run_check_duality(grid_size, trials, seed, output); };
    });

    auto* adm = app.add_subcommand("admissibility",
                                   "Observation/control admissibility brackets");
    adm->add_option("--system", system, "catalogue name")
        ->required()
        ->check(CLI::IsMember({"delay1", "exp1", "transport", "leftshift", "diag-exp-2"}));
    adm->add_option("--grid-size", grid_size, "resolution M")->default_val(16)->check(CLI::Range(2, 1 << 16));
    adm->add_option("--horizon", horizon, "time horizon (default: system-dependent)");
    adm->add_option("--probes", probes, "random probe count");
    adm->add_option("--seed", seed, "RNG seed");
    adm->add_option("--output,-o", output, "write JSON here instead of stdout");
    adm->callback([&] {
        action = [&] {
            return run_admissibility(system, grid_size, horizon, probes, seed, output);
        };
    });

    auto* lap = app.add_subcommand("laplace-check",
                                   "Laplace transform against closed forms and the "
                                   "resolvent difference relation");
    lap->add_option("--kernel", kernel, "catalogue kernel")
        ->check(CLI::IsMember({"delay1", "exp1", "diag-exp-2"}));
    lap->add_option("--dt", dt, "density time step")->default_val(1e-3);
    lap->add_option("--horizon", kernel_horizon, "density truncation horizon")->default_val(30.0);
    lap->add_option("--s", s_points, "real evaluation points (default: 20 on [0,5])")
        ->delimiter(',');
    lap->add_option("--samples", samples, "number of default points");
    lap->add_option("--output,-o", output, "write CSV here instead of stdout");
    lap->callback([&] {
        action = [&] {
            return run_laplace_check(kernel, dt, kernel_horizon, s_points, samples, output);
        };
    });

    auto* cat = app.add_subcommand("catalogue",
                                   "Run the full stability-relation table over the "
                                   "built-in systems");
    cat->add_option("--grid-sizes", grid_sizes, "resolutions to sweep")->delimiter(',');
    cat->add_option("--trials", trials, "pairing trials per system")->default_val(20);
    cat->add_option("--seed", seed, "RNG seed");
    cat->add_flag("--list", list_only, "only list catalogue names");
    cat->add_option("--format", format, "md or json")->check(CLI::IsMember({"md", "json", "csv"}));
    cat->add_option("--output,-o", output, "write table here instead of stdout");
    cat->callback([&] {
        action = [&] {
            return run_catalogue(grid_sizes, trials, seed, list_only, format, output);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        exit_code = action();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
