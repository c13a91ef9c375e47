#include "iostab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iostab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

TimeGrid::TimeGrid(double dt_, int n_steps_) : dt(dt_), n_steps(n_steps_) {
    require(std::isfinite(dt) && dt > 0.0, "TimeGrid: dt must be positive");
    require(n_steps >= 1, "TimeGrid: n_steps must be >= 1");
}

ValueSpace::ValueSpace(int dim_, NormKind kind_, Eigen::VectorXd weights_)
    : dim(dim_), kind(kind_), weights(std::move(weights_)) {
    require(dim >= 1, "ValueSpace: dim must be >= 1");
    require(weights.size() == dim, "ValueSpace: weights size mismatch");
    require((weights.array() > 0.0).all() && weights.allFinite(),
            "ValueSpace: weights must be strictly positive and finite");
}

ValueSpace ValueSpace::sup(int dim) {
    return ValueSpace(dim, NormKind::Sup, Eigen::VectorXd::Ones(dim));
}

ValueSpace ValueSpace::weighted_one(Eigen::VectorXd w) {
    const int d = static_cast<int>(w.size());
    return ValueSpace(d, NormKind::WeightedOne, std::move(w));
}

ValueSpace ValueSpace::weighted_two(Eigen::VectorXd w) {
    const int d = static_cast<int>(w.size());
    return ValueSpace(d, NormKind::WeightedTwo, std::move(w));
}

ValueSpace ValueSpace::unit_one(int dim) {
    return weighted_one(Eigen::VectorXd::Ones(dim));
}

ValueSpace ValueSpace::l2_uniform(int m) {
    require(m >= 1, "l2_uniform: m must be >= 1");
    return weighted_two(Eigen::VectorXd::Constant(m, 1.0 / m));
}

double ValueSpace::norm(const Eigen::VectorXd& v) const {
    switch (kind) {
        case NormKind::Sup:
            return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
        case NormKind::WeightedOne:
            return weights.dot(v.cwiseAbs());
        case NormKind::WeightedTwo:
            return std::sqrt(weights.dot(v.cwiseAbs2()));
    }
    return 0.0;
}

double ValueSpace::inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    if (kind == NormKind::Sup) return a.dot(b);
    return (weights.array() * a.array() * b.array()).sum();
}

double ValueSpace::dual_norm(const Eigen::VectorXd& r) const {
    switch (kind) {
        case NormKind::Sup:
            return r.cwiseAbs().sum();
        case NormKind::WeightedOne:
            return (r.cwiseAbs().array() / weights.array()).maxCoeff();
        case NormKind::WeightedTwo:
            return std::sqrt((r.cwiseAbs2().array() / weights.array()).sum());
    }
    return 0.0;
}

bool ValueSpace::compatible_with(const ValueSpace& other) const {
    if (dim != other.dim) return false;
    for (int i = 0; i < dim; ++i) {
        const double a = weights[i];
        const double b = other.weights[i];
        if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) return false;
    }
    return true;
}

Signal::Signal(TimeGrid grid_, ValueSpace space_, Eigen::MatrixXd values_)
    : grid(grid_), space(std::move(space_)), values(std::move(values_)) {
    require(values.rows() == space.dim, "Signal: value dimension mismatch");
    require(values.cols() == grid.n_steps, "Signal: sample count mismatch");
    require(values.allFinite(), "Signal: values must be finite");
}

Signal::Signal()
    : grid(1.0, 1), space(ValueSpace::sup(1)), values(Eigen::MatrixXd::Zero(1, 1)) {}

Signal Signal::zero(const TimeGrid& grid, const ValueSpace& space) {
    return Signal(grid, space, Eigen::MatrixXd::Zero(space.dim, grid.n_steps));
}

Signal Signal::constant(const TimeGrid& grid, const ValueSpace& space,
                        const Eigen::VectorXd& v) {
    if (v.size() != space.dim)
        throw std::invalid_argument("Signal::constant: dimension mismatch");
    Eigen::MatrixXd vals(space.dim, grid.n_steps);
    vals.colwise() = v;
    return Signal(grid, space, std::move(vals));
}

double lp_norm(const Signal& s, Lp p) {
    const int n = s.grid.n_steps;
    if (p == Lp::Inf) {
        double best = 0.0;
        for (int k = 0; k < n; ++k) best = std::max(best, s.space.norm(s.values.col(k)));
        return best;
    }
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double nk = s.space.norm(s.values.col(k));
        acc += (p == Lp::One) ? nk : nk * nk;
    }
    acc *= s.grid.dt;
    return (p == Lp::One) ? acc : std::sqrt(acc);
}

double pairing(const Signal& a, const Signal& b) {
    require(a.grid == b.grid, "pairing: signals must share the time grid");
    require(a.space.dim == b.space.dim, "pairing: value dimension mismatch");
    require(a.space.kind == NormKind::Sup || b.space.kind == NormKind::Sup ||
                a.space.compatible_with(b.space),
            "pairing: incompatible weights");
    const int n = a.grid.n_steps;
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
        acc += a.space.inner(a.values.col(k), b.values.col(n - 1 - k));
    return a.grid.dt * acc;
}

Signal sliding_band_input(const TimeGrid& grid, int m, double eps) {
    require(m >= 1, "sliding_band_input: m must be >= 1");
    require(std::abs(grid.dt * m - 1.0) <= 1e-9, "sliding_band_input: requires dt = 1/m");
    const double pm = eps * m;
    const long p = std::lround(pm);
    require(p >= 1 && p <= m && std::abs(pm - static_cast<double>(p)) <= 1e-9,
            "sliding_band_input: eps must be a positive multiple of 1/m, at most 1");

    // Band membership in integer arithmetic: cell i is in the band at step k
    // iff 2i+1 lies in [C-p, C+p) with C = clamp(2(m-k), p, 2m-p).
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(m, grid.n_steps);
    for (int k = 0; k < grid.n_steps && k <= m; ++k) {
        const long c = std::clamp<long>(2L * (m - k), p, 2L * m - p);
        const long lo = c - p;  // inclusive
        const long hi = c + p;  // exclusive
        for (long i = (lo - 1) / 2; i < m; ++i) {
            const long mid = 2 * i + 1;
            if (mid < lo) continue;
            if (mid >= hi) break;
            vals(i, k) = 1.0;
        }
    }
    return Signal(grid, ValueSpace::l2_uniform(m), std::move(vals));
}

namespace {

double enumerate_sign_norm(const Eigen::MatrixXd& V, const ValueSpace& out) {
    // max over v in {-1, +1}^n of ||V v||_out; n is small here.
    const int n = static_cast<int>(V.cols());
    double best = 0.0;
    const std::uint64_t total = 1ULL << (n - 1);  // v and -v give the same norm
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (int j = 0; j < n; ++j) v[j] = (bits >> j) & 1 ? -1.0 : 1.0;
        best = std::max(best, out.norm(V * v));
    }
    return best;
}

}  // namespace

OperatorNorm operator_norm(const Eigen::MatrixXd& V, const ValueSpace& in,
                           const ValueSpace& out) {
    if (V.rows() != out.dim || V.cols() != in.dim)
        throw std::invalid_argument("operator_norm: shape mismatch");

    if (in.kind == NormKind::WeightedOne) {
        // Ball is the convex hull of +-e_j / w_j; the max is attained at a vertex.
        double best = 0.0;
        for (int j = 0; j < in.dim; ++j)
            best = std::max(best, out.norm(V.col(j)) / in.weights[j]);
        return {best, true};
    }

    if (in.kind == NormKind::Sup) {
        if (out.kind == NormKind::Sup) {
            double best = 0.0;
            for (int i = 0; i < out.dim; ++i) best = std::max(best, V.row(i).cwiseAbs().sum());
            return {best, true};
        }
        if (in.dim <= 16) return {enumerate_sign_norm(V, out), true};
        double bound = 0.0;
        for (int j = 0; j < in.dim; ++j) bound += out.norm(V.col(j));
        return {bound, false};
    }

    // in.kind == WeightedTwo
    if (out.dim == 1) {
        const double unit = out.norm(Eigen::VectorXd::Ones(1));
        return {in.dual_norm(V.row(0).transpose()) * unit, true};
    }
    switch (out.kind) {
        case NormKind::Sup: {
            double best = 0.0;
            for (int i = 0; i < out.dim; ++i)
                best = std::max(best, in.dual_norm(V.row(i).transpose()));
            return {best, true};
        }
        case NormKind::WeightedTwo: {
            const Eigen::MatrixXd scaled = out.weights.cwiseSqrt().asDiagonal() * V *
                                           in.weights.cwiseSqrt().cwiseInverse().asDiagonal();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
            return {svd.singularValues()[0], true};
        }
        case NormKind::WeightedOne: {
            if (out.dim <= 16) {
                // ||Vv||_{w1} = max over output signs s of <s .* w, Vv>.
                double best = 0.0;
                const std::uint64_t total = 1ULL << (out.dim - 1);
                Eigen::VectorXd s(out.dim);
                for (std::uint64_t bits = 0; bits < total; ++bits) {
                    for (int i = 0; i < out.dim; ++i) s[i] = (bits >> i) & 1 ? -1.0 : 1.0;
                    const Eigen::VectorXd r = V.transpose() * (s.cwiseProduct(out.weights));
                    best = std::max(best, in.dual_norm(r));
                }
                return {best, true};
            }
            double bound = 0.0;
            for (int i = 0; i < out.dim; ++i)
                bound += out.weights[i] * in.dual_norm(V.row(i).transpose());
            return {bound, false};
        }
    }
    return {0.0, false};
}

}  // namespace iostab
