#include <doctest.h>

#include <cmath>
#include <random>

#include "iostab/catalogue.hpp"
#include "iostab/duality.hpp"
#include "test_helpers.hpp"

using namespace iostab;

TEST_CASE("pairing identity: transport system") {
    const DiscreteSystemNode sys = transport_boundary_control(16);
    CHECK(adjoint_pairing_residual(sys, 50, 2.0) <= 1e-10);
}

TEST_CASE("pairing identity: zero dual input gives zero on both sides") {
    const DiscreteSystemNode sys = transport_boundary_control(8);
    const DiscreteSystemNode d = dual(sys);
    const TimeGrid grid(sys.dt, 16);
    std::mt19937_64 rng(131);
    const Signal u = testing::random_signal(grid, sys.input_space, rng);
    const Signal ud = Signal::zero(grid, d.input_space);
    const Signal y = simulate(sys, u).output;
    const Signal yd = simulate(d, ud).output;
    CHECK(pairing(y, ud) == 0.0);
    CHECK(pairing(u, yd) == 0.0);
}

TEST_CASE("pairing identity: kernel system and its transpose") {
    std::mt19937_64 rng(137);
    const MatrixMeasure h =
        testing::random_kernel(2, 3, 0.125, testing::KernelStyle::Mixed, rng);
    const DiscreteSystemNode sys = from_kernel(h);
    const DiscreteSystemNode tsys = from_kernel(transpose(h));
    CHECK(adjoint_pairing_residual(sys, 40, 2.0) <= 1e-10);
    CHECK(adjoint_pairing_residual(tsys, 40, 2.0) <= 1e-10);
}

TEST_CASE("pairing identity: random systems with random weights") {
    std::mt19937_64 rng(139);
    for (int t = 0; t < 10; ++t) {
        const DiscreteSystemNode sys = testing::random_system(6, 3, 2, rng);
        CHECK(adjoint_pairing_residual(sys, 20, 5.0, 1000 + t) <= 1e-10);
    }
}

TEST_CASE("dual L1 gain is bounded by the primal Linf gain") {
    SUBCASE("transport") {
        const GainDualityVerdict v = dual_l1_gain_check(transport_boundary_control(16), 3.0);
        CHECK(v.pass);
        CHECK(v.primal_upper == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.dual_lower <= 1.0 + 1e-9);
    }
    SUBCASE("delay line is self-dual up to reflection") {
        const GainDualityVerdict v = dual_l1_gain_check(catalogue_system("delay1", 8), 3.0);
        CHECK(v.pass);
        CHECK(v.dual_lower == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(v.primal_upper == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("diagonal exponential kernel: dual L1 equals primal Linf") {
        const GainDualityVerdict v =
            dual_l1_gain_check(catalogue_system("diag-exp-2", 16), 20.0);
        CHECK(v.pass);
        CHECK(v.dual_lower == doctest::Approx(v.primal_upper).epsilon(1e-9));
    }
}

TEST_CASE("dual Linf gain is bounded by the primal L1 gain") {
    SUBCASE("left shift") {
        const GainDualityVerdict v = dual_linf_gain_check(left_shift_distributed_input(16), 3.0);
        CHECK(v.pass);
        CHECK(v.primal_upper == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.dual_lower <= 1.0 + 1e-9);
    }
    SUBCASE("zero system") {
        std::vector<Eigen::MatrixXd> density(4, Eigen::MatrixXd::Zero(1, 1));
        const MatrixMeasure h = MatrixMeasure::density_only(TimeGrid(0.25, 4), density);
        const GainDualityVerdict v = dual_linf_gain_check(from_kernel(h), 2.0);
        CHECK(v.pass);
        CHECK(v.dual_lower == 0.0);
    }
    SUBCASE("random kernel system") {
        std::mt19937_64 rng(149);
        const MatrixMeasure h =
            testing::random_kernel(2, 2, 0.125, testing::KernelStyle::DensityOnly, rng);
        const GainDualityVerdict v = dual_linf_gain_check(from_kernel(h), 3.0);
        CHECK(v.pass);
    }
}

TEST_CASE("gain duality end to end through the dual realization") {
    std::mt19937_64 rng(151);
    for (int t = 0; t < 20; ++t) {
        const auto style = (t % 2 == 0) ? testing::KernelStyle::DensityOnly
                                        : testing::KernelStyle::AtomsOnly;
        const MatrixMeasure h = testing::random_kernel(3, 2, 0.125, style, rng);
        CHECK(induced_gain(h, GainP::One).value ==
              induced_gain(transpose(h), GainP::Inf).value);

        const DiscreteSystemNode sys = from_kernel(h);
        const int K = 16;
        const double g_primal = induced_gain(impulse_response(sys, K), GainP::One).value;
        const double g_dual =
            induced_gain(impulse_response(dual(sys), K), GainP::Inf).value;
        CHECK(std::abs(g_primal - g_dual) <= 1e-10 * (1.0 + g_primal));
    }
}

TEST_CASE("second difference regression on catalogue systems") {
    CHECK(second_difference_residual(transport_boundary_control(32), 10, 2.0) <= 1e-10);
    CHECK(second_difference_residual(catalogue_system("exp1", 32), 10, 4.0) <= 1e-10);
    CHECK(second_difference_residual(catalogue_system("diag-exp-2", 32), 10, 4.0) <= 1e-10);
}

TEST_CASE("duality sweep over the catalogue") {
    const DualitySweepReport report = duality_sweep({8, 16}, 10);
    CHECK(report.all_pass);
    CHECK(report.max_pairing_residual <= 1e-10);
    CHECK(report.rows.size() == 10);  // 5 systems x 2 grid sizes

    double leftshift_linf_8 = 0.0, leftshift_linf_16 = 0.0;
    for (const auto& row : report.rows) {
        for (const auto& v : row.verdicts) CHECK(v.pass);
        if (row.name == "leftshift") {
            CHECK(row.negative_cell);
            CHECK(row.primal_gain_one.upper_bound <= 1.0 + 1e-9);
            CHECK(row.primal_gain_infty.unbounded_evidence);
            if (row.grid_size == 8) leftshift_linf_8 = row.primal_gain_infty.lower_bound;
            if (row.grid_size == 16) leftshift_linf_16 = row.primal_gain_infty.lower_bound;
        }
        if (row.name == "delay1") {
            // Self-dual: all four gains are 1.
            CHECK(row.primal_gain_infty.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(row.primal_gain_one.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(row.dual_gain_infty.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(row.dual_gain_one.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
        }
        if (row.name == "transport") {
            // The dual family's Linf lower bound is sqrt(M).
            CHECK(row.dual_gain_infty.lower_bound ==
                  doctest::Approx(std::sqrt(static_cast<double>(row.grid_size)))
                      .epsilon(1e-9));
        }
    }
    CHECK(leftshift_linf_16 ==
          doctest::Approx(std::sqrt(2.0) * leftshift_linf_8).epsilon(1e-6));

    const std::string md = duality_sweep_markdown(report);
    CHECK(md.find("| system |") != std::string::npos);
    CHECK(md.find("leftshift") != std::string::npos);
    CHECK(md.find("FAIL") == std::string::npos);
}

TEST_CASE("empty grid list gives an empty report") {
    const DualitySweepReport report = duality_sweep({}, 5);
    CHECK(report.rows.empty());
    CHECK(report.all_pass);
}
