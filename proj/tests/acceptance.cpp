// Acceptance suite: runs every verification criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "iostab/catalogue.hpp"
#include "iostab/duality.hpp"
#include "iostab/io.hpp"
#include "iostab/stability.hpp"
#include "test_helpers.hpp"

using namespace iostab;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what, double seconds) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", index,
                what.c_str(), seconds);
    if (!pass) ++failures;
}

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

// 1. Divergence law of the sliding band family at M = 1024.
void criterion_1() {
    Timer timer;
    const std::vector<double> eps = {1.0, 0.25, 0.0625, 0.015625, 0.00390625};
    const auto rows = counterexample_sweep(1024, eps);
    bool pass = true;
    double worst = 0.0;
    for (const auto& r : rows) {
        const double rel = std::abs(r.ratio - r.predicted) / r.predicted;
        worst = std::max(worst, rel);
        pass = pass && rel <= 1e-9;
    }
    report(1, pass,
           "ratio equals 1/sqrt(eps) to 1e-9 at M=1024 (worst rel. defect " +
               format_double(worst) + ")",
           timer.seconds());
}

// 2. Primal sup-to-L2 bound of the transport system, grid-exact.
void criterion_2() {
    Timer timer;
    const int m = 256;
    const DiscreteSystemNode sys = transport_boundary_control(m);
    const TimeGrid grid(sys.dt, 3 * m / 2);
    std::mt19937_64 rng(kDefaultSeed);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Signal u = testing::random_signal(grid, sys.input_space, rng);
        const Signal y = simulate(sys, u).output;
        worst = std::max(worst, lp_norm(y, Lp::Inf) - lp_norm(u, Lp::Inf));
    }
    report(2, worst <= 1e-12,
           "||y||_{Linf(L2)} <= ||u||_Linf for 1000 random inputs at M=256 (max defect " +
               format_double(worst) + ")",
           timer.seconds());
}

// 3. Adjoint pairing identity across the catalogue and random systems.
void criterion_3() {
    Timer timer;
    double worst = 0.0;
    worst = std::max(worst, adjoint_pairing_residual(transport_boundary_control(64), 100, 2.0));
    worst = std::max(worst, adjoint_pairing_residual(catalogue_system("delay1", 16), 100, 3.0));
    worst = std::max(worst, adjoint_pairing_residual(catalogue_system("exp1", 32), 100, 4.0));
    std::mt19937_64 rng(kDefaultSeed + 3);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int t = 0; t < 20; ++t) {
        const DiscreteSystemNode sys =
            testing::random_system(dim(rng), dim(rng), dim(rng), rng);
        worst = std::max(worst,
                         adjoint_pairing_residual(sys, 100, 5.0, kDefaultSeed + 100 + t));
    }
    report(3, worst <= 1e-10,
           "pairing identity residual <= 1e-10 (worst " + format_double(worst) + ")",
           timer.seconds());
}

// 4. Gain duality: exact transpose equality plus the dual realization route.
void criterion_4() {
    Timer timer;
    std::mt19937_64 rng(kDefaultSeed + 4);
    std::uniform_int_distribution<int> dim(1, 4);
    bool pass = true;
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto style = (t % 2 == 0) ? testing::KernelStyle::DensityOnly
                                        : testing::KernelStyle::AtomsOnly;
        const MatrixMeasure h = testing::random_kernel(dim(rng), dim(rng), 0.125, style, rng);
        if (induced_gain(h, GainP::One).value !=
            induced_gain(transpose(h), GainP::Inf).value)
            pass = false;

        const DiscreteSystemNode sys = from_kernel(h);
        const int K = 16;
        const double g_primal = induced_gain(impulse_response(sys, K), GainP::One).value;
        const double g_dual =
            induced_gain(impulse_response(dual(sys), K), GainP::Inf).value;
        const double rel = std::abs(g_primal - g_dual) / (1.0 + g_primal);
        worst = std::max(worst, rel);
        pass = pass && rel <= 1e-10;
    }
    report(4, pass,
           "induced_gain(h,1) == induced_gain(h^T,inf) exactly, dual realization within "
           "1e-10 (worst " +
               format_double(worst) + ")",
           timer.seconds());
}

// 5. Young-type bound for random kernel/input pairs.
void criterion_5() {
    Timer timer;
    std::mt19937_64 rng(kDefaultSeed + 5);
    std::uniform_int_distribution<int> dim(1, 3);
    bool pass = true;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto style = static_cast<testing::KernelStyle>(t % 3);
        const int n_out = dim(rng), n_in = dim(rng);
        const MatrixMeasure h = testing::random_kernel(n_out, n_in, 0.1, style, rng);
        const TimeGrid grid(0.1, 25);
        const Signal u = testing::random_signal(grid, ValueSpace::sup(n_in), rng);
        const Signal y = convolve(h, u);

        const double d_inf = lp_norm(y, Lp::Inf) -
                             induced_gain(h, GainP::Inf).value * lp_norm(u, Lp::Inf);
        const Signal u1(grid, ValueSpace::unit_one(n_in), u.values);
        const Signal y1(grid, ValueSpace::unit_one(n_out), y.values);
        const double d_one = lp_norm(y1, Lp::One) -
                             induced_gain(h, GainP::One).value * lp_norm(u1, Lp::One);
        worst = std::max(worst, std::max(d_inf, d_one));
        pass = pass && d_inf <= 1e-12 && d_one <= 1e-12;
    }
    report(5, pass,
           "||h*u||_p <= gain_p(h) ||u||_p for 500 random pairs, defect <= 1e-12 (worst " +
               format_double(worst) + ")",
           timer.seconds());
}

// 6. Duality brackets over the catalogue, including the divergent pair.
void criterion_6() {
    Timer timer;
    const DualitySweepReport rep = duality_sweep({8, 16, 32}, 20);
    bool pass = rep.all_pass;
    bool negative_cell_seen = false;
    for (const auto& row : rep.rows) {
        if (row.name == "leftshift") {
            const double root_m = std::sqrt(static_cast<double>(row.grid_size));
            const bool l1_bounded = row.primal_gain_one.upper_bound <= 1.0 + 1e-9;
            const bool linf_diverges =
                std::abs(row.primal_gain_infty.lower_bound - root_m) <= 1e-9 * root_m;
            pass = pass && l1_bounded && linf_diverges;
            negative_cell_seen = negative_cell_seen || row.negative_cell;
        }
    }
    pass = pass && negative_cell_seen;
    report(6, pass,
           "dual lower <= primal upper across the catalogue at M in {8,16,32}; left "
           "shift: L1 bracket <= 1, Linf lower = sqrt(M)",
           timer.seconds());
}

// 7. Observation admissibility vs. maximal regularity, plus the exact trace
//    identity of the left shift.
void criterion_7() {
    Timer timer;
    std::mt19937_64 rng(kDefaultSeed + 7);
    std::uniform_int_distribution<int> dim(1, 8);
    bool pass = true;
    for (int t = 0; t < 50; ++t) {
        const int nx = dim(rng);
        const DiscreteSystemNode sys = testing::random_system(nx, nx, dim(rng), rng);
        const ObservationAdmissibility rep =
            observation_admissibility(sys, 20.0, 8, kDefaultSeed + 200 + t);
        const bool overlap =
            rep.observation.constant_lower <= rep.max_regularity.constant_upper + 1e-9 &&
            rep.max_regularity.constant_lower <= rep.observation.constant_upper + 1e-9;
        pass = pass && overlap;
    }

    const int m = 64;
    const DiscreteSystemNode ls = left_shift_distributed_input(m);
    const TimeGrid grid(ls.dt, 2 * m);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Eigen::VectorXd x = testing::random_matrix(m, 1, rng);
        const Signal y = simulate(ls, Signal::zero(grid, ls.input_space), x).output;
        const double observed = lp_norm(y, Lp::One);
        const double trace = ValueSpace::weighted_one(ls.state_space.weights).norm(x);
        worst = std::max(worst, std::abs(observed - trace) / (1.0 + trace));
    }
    pass = pass && worst <= 1e-12;
    report(7, pass,
           "admissibility brackets overlap on 50 random systems; left-shift trace "
           "identity grid-exact (worst rel. defect " +
               format_double(worst) + ")",
           timer.seconds());
}

// 8. Laplace-transform consistency and the resolvent difference relation.
void criterion_8() {
    Timer timer;
    bool pass = true;
    double worst_closed = 0.0;
    for (const char* name : {"delay1", "exp1"}) {
        const MatrixMeasure h = catalogue_kernel(name, 1e-3, 30.0);
        for (int i = 0; i < 20; ++i) {
            const std::complex<double> s(5.0 * i / 19.0, 0.0);
            const double err =
                (laplace(h, s) - reference_transfer(name, s)).cwiseAbs().maxCoeff();
            worst_closed = std::max(worst_closed, err);
            pass = pass && err <= 5e-3;
        }
    }

    std::mt19937_64 rng(kDefaultSeed + 8);
    double worst_diff = 0.0;
    std::vector<MatrixMeasure> kernels = {
        catalogue_kernel("delay1", 1.0 / 16, 2.0),
        catalogue_kernel("exp1", 1.0 / 16, 4.0),
        testing::random_kernel(2, 2, 1.0 / 16, testing::KernelStyle::Mixed, rng)};
    for (const auto& h : kernels) {
        const DiscreteSystemNode sys = from_kernel(h);
        const std::vector<std::pair<std::complex<double>, std::complex<double>>> pairs = {
            {{0.0, 0.0}, {1.0, 0.0}}, {{0.5, 0.5}, {2.0, -1.0}}, {{1.0, 0.0}, {4.0, 0.0}}};
        for (const auto& [a, b] : pairs) {
            const double err = ((laplace(h, a) - laplace(h, b)) -
                                transfer_difference(sys, a, b))
                                   .cwiseAbs()
                                   .maxCoeff();
            worst_diff = std::max(worst_diff, err);
            pass = pass && err <= 1e-8;
        }
    }
    report(8, pass,
           "Laplace matches exp(-s) and 1/(s+1) within 5e-3 (worst " +
               format_double(worst_closed) + "); difference relation within 1e-8 (worst " +
               format_double(worst_diff) + ")",
           timer.seconds());
}

// 9. Second-difference regression for smooth inputs.
void criterion_9() {
    Timer timer;
    double worst = 0.0;
    worst = std::max(worst,
                     second_difference_residual(transport_boundary_control(32), 17, 2.0));
    worst = std::max(worst,
                     second_difference_residual(catalogue_system("exp1", 32), 17, 4.0));
    worst = std::max(
        worst, second_difference_residual(catalogue_system("diag-exp-2", 32), 16, 4.0));
    report(9, worst <= 1e-10,
           "second difference of output equals output of second difference, 50 smooth "
           "inputs (worst " +
               format_double(worst) + ")",
           timer.seconds());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
