#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "iostab/signal.hpp"
#include "test_helpers.hpp"

using namespace iostab;

namespace {

Signal scalar_signal(const std::vector<double>& samples, double dt) {
    TimeGrid grid(dt, static_cast<int>(samples.size()));
    Eigen::MatrixXd vals(1, grid.n_steps);
    for (int k = 0; k < grid.n_steps; ++k) vals(0, k) = samples[k];
    return Signal(grid, ValueSpace::sup(1), std::move(vals));
}

}  // namespace

TEST_CASE("value space norms") {
    Eigen::VectorXd v(3);
    v << 1.0, -2.0, 0.5;
    CHECK(ValueSpace::sup(3).norm(v) == 2.0);
    Eigen::VectorXd w(3);
    w << 0.5, 0.5, 2.0;
    CHECK(ValueSpace::weighted_one(w).norm(v) == doctest::Approx(0.5 + 1.0 + 1.0));
    CHECK(ValueSpace::weighted_two(w).norm(v) ==
          doctest::Approx(std::sqrt(0.5 + 2.0 + 0.5)));
    CHECK_THROWS_AS(ValueSpace::weighted_one(Eigen::VectorXd::Zero(2)),
                    std::invalid_argument);
}

TEST_CASE("lp_norm with left-endpoint quadrature") {
    // Constant 1 covering [0,1] with dt = 0.25: four left-endpoint samples.
    const Signal ones = scalar_signal({1, 1, 1, 1}, 0.25);
    CHECK(lp_norm(ones, Lp::Inf) == 1.0);
    CHECK(lp_norm(ones, Lp::One) == doctest::Approx(1.0).epsilon(1e-15));

    const Signal spike = scalar_signal({4, 0, 0, 0}, 0.25);
    CHECK(lp_norm(spike, Lp::One) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lp_norm(spike, Lp::Inf) == 4.0);

    CHECK(lp_norm(ones, Lp::Two) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pairing basics") {
    const Signal a = scalar_signal({1, 1, 1, 1}, 0.25);
    const Signal b = scalar_signal({1, 1, 1, 1}, 0.25);
    CHECK(pairing(a, b) == doctest::Approx(1.0).epsilon(1e-15));

    const Signal z = scalar_signal({0, 0, 0, 0}, 0.25);
    CHECK(pairing(z, b) == 0.0);

    const Signal wrong = scalar_signal({1, 1}, 0.25);
    CHECK_THROWS_AS(pairing(a, wrong), std::invalid_argument);
}

TEST_CASE("pairing is symmetric under time reversal") {
    std::mt19937_64 rng(7);
    const TimeGrid grid(0.1, 17);
    Eigen::VectorXd w(3);
    w << 0.3, 1.1, 0.7;
    const ValueSpace space = ValueSpace::weighted_two(w);
    for (int t = 0; t < 20; ++t) {
        const Signal a = testing::random_signal(grid, space, rng);
        const Signal b = testing::random_signal(grid, space, rng);
        CHECK(pairing(a, b) == doctest::Approx(pairing(b, a)).epsilon(1e-13));
    }
}

TEST_CASE("norm homogeneity and triangle inequality") {
    std::mt19937_64 rng(11);
    const TimeGrid grid(0.05, 23);
    Eigen::VectorXd w(4);
    w << 0.25, 0.25, 0.25, 0.25;
    for (const auto kind : {NormKind::Sup, NormKind::WeightedOne, NormKind::WeightedTwo}) {
        const ValueSpace space(4, kind, w);
        for (int t = 0; t < 10; ++t) {
            const Signal a = testing::random_signal(grid, space, rng);
            const Signal b = testing::random_signal(grid, space, rng);
            const double c = -2.5;
            const Signal ca(grid, space, c * a.values);
            const Signal sum(grid, space, a.values + b.values);
            for (const auto p : {Lp::One, Lp::Two, Lp::Inf}) {
                CHECK(lp_norm(ca, p) ==
                      doctest::Approx(std::abs(c) * lp_norm(a, p)).epsilon(1e-12));
                CHECK(lp_norm(sum, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-12);
            }
        }
    }
}

TEST_CASE("Hoelder inequality at the pairing") {
    std::mt19937_64 rng(13);
    const TimeGrid grid(0.125, 16);
    Eigen::VectorXd w(3);
    w << 0.4, 0.3, 0.3;
    const ValueSpace space = ValueSpace::weighted_two(w);
    for (int t = 0; t < 25; ++t) {
        const Signal a = testing::random_signal(grid, space, rng);
        const Signal b = testing::random_signal(grid, space, rng);
        const double pr = std::abs(pairing(a, b));
        CHECK(pr <= lp_norm(a, Lp::One) * lp_norm(b, Lp::Inf) + 1e-12);
        CHECK(pr <= lp_norm(a, Lp::Inf) * lp_norm(b, Lp::One) + 1e-12);
    }
}

TEST_CASE("sliding band input: frozen M=4 pattern") {
    const TimeGrid grid(0.25, 5);
    const Signal u = sliding_band_input(grid, 4, 0.25);

    // Band tracks 1 - t with the center clamped into [eps/2, 1 - eps/2]:
    // one cell per step, marching from the cell nearest xi = 1 down to cell 0.
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 5);
    expected(3, 0) = 1.0;
    expected(2, 1) = 1.0;
    expected(1, 2) = 1.0;
    expected(0, 3) = 1.0;
    expected(0, 4) = 1.0;
    CHECK((u.values - expected).cwiseAbs().maxCoeff() == 0.0);

    CHECK(u.space.norm(u.values.col(0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lp_norm(u, Lp::Inf) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sliding band input: full-width band is all ones") {
    const TimeGrid grid(0.25, 5);
    const Signal u = sliding_band_input(grid, 4, 1.0);
    CHECK(u.values.col(0).minCoeff() == 1.0);
    CHECK(u.space.norm(u.values.col(0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sliding band input: sup-in-time norm is sqrt(eps) for every eps") {
    const int m = 16;
    const TimeGrid grid(1.0 / m, m + 1);
    for (int p = 1; p <= m; p *= 2) {
        const double eps = static_cast<double>(p) / m;
        const Signal u = sliding_band_input(grid, m, eps);
        CHECK(lp_norm(u, Lp::Inf) == doctest::Approx(std::sqrt(eps)).epsilon(1e-14));
        // Every time slice inside [0,1] carries the full band.
        for (int k = 0; k <= m; ++k)
            CHECK(u.values.col(k).sum() == doctest::Approx(p).epsilon(1e-15));
    }
}

TEST_CASE("sliding band input rejects off-grid eps") {
    const TimeGrid grid(0.25, 5);
    CHECK_THROWS_AS(sliding_band_input(grid, 4, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(sliding_band_input(grid, 4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sliding_band_input(TimeGrid(0.2, 5), 4, 0.25), std::invalid_argument);
}

TEST_CASE("operator norm is a valid bound and attained when marked exact") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd w2(2), w3(3);
    w2 << 0.5, 1.5;
    w3 << 0.3, 1.0, 0.7;
    const std::vector<ValueSpace> ins = {ValueSpace::sup(3), ValueSpace::weighted_one(w3),
                                         ValueSpace::weighted_two(w3)};
    const std::vector<ValueSpace> outs = {ValueSpace::sup(2), ValueSpace::weighted_one(w2),
                                          ValueSpace::weighted_two(w2)};
    for (const auto& in : ins) {
        for (const auto& out : outs) {
            for (int t = 0; t < 5; ++t) {
                const Eigen::MatrixXd V = testing::random_matrix(2, 3, rng);
                const auto on = operator_norm(V, in, out);

                // Candidate maximizers: sign corners, coordinate vertices,
                // per-output-sign Riesz directions, the top singular
                // direction, and random probes.
                std::vector<Eigen::VectorXd> candidates;
                for (int bits = 0; bits < 8; ++bits) {
                    Eigen::VectorXd v(3);
                    for (int i = 0; i < 3; ++i) v[i] = (bits >> i) & 1 ? -1.0 : 1.0;
                    candidates.push_back(v);
                }
                for (int j = 0; j < 3; ++j) candidates.push_back(Eigen::VectorXd::Unit(3, j));
                for (int bits = 0; bits < 4; ++bits) {
                    Eigen::VectorXd s(2);
                    for (int i = 0; i < 2; ++i) s[i] = (bits >> i) & 1 ? -1.0 : 1.0;
                    const Eigen::VectorXd r =
                        V.transpose() * s.cwiseProduct(out.weights);
                    candidates.push_back(r.cwiseQuotient(in.weights));
                }
                for (int i = 0; i < 2; ++i)
                    candidates.push_back(
                        V.row(i).transpose().cwiseQuotient(in.weights));
                {
                    const Eigen::MatrixXd scaled =
                        out.weights.cwiseSqrt().asDiagonal() * V *
                        in.weights.cwiseSqrt().cwiseInverse().asDiagonal();
                    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullV);
                    candidates.push_back(in.weights.cwiseSqrt().cwiseInverse().asDiagonal() *
                                         svd.matrixV().col(0));
                }
                for (int s = 0; s < 200; ++s) {
                    Eigen::VectorXd v(3);
                    for (int i = 0; i < 3; ++i) v[i] = dist(rng);
                    candidates.push_back(v);
                }

                double achieved = 0.0;
                for (const auto& v : candidates) {
                    const double nv = in.norm(v);
                    if (nv > 1e-12) achieved = std::max(achieved, out.norm(V * v) / nv);
                }
                CHECK(achieved <= on.value * (1.0 + 1e-9));
                if (on.exact) CHECK(on.value <= achieved * (1.0 + 1e-9));
            }
        }
    }
}
