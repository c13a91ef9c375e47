#include "iostab/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace iostab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

// Atom times must sit on the dt-grid; snapping silently would break the
// bit-exact delay tests, so off-grid atoms are rejected.
long atom_step(double time, double dt) {
    const double ratio = time / dt;
    const long step = std::lround(ratio);
    require(step >= 0 && std::abs(ratio - static_cast<double>(step)) <= 1e-9,
            "MatrixMeasure: atom time is not a grid multiple");
    return step;
}

}  // namespace

MatrixMeasure::MatrixMeasure(int rows_, int cols_, std::vector<Atom> atoms_,
                             std::optional<TimeGrid> density_grid_,
                             std::vector<Eigen::MatrixXd> density_)
    : rows(rows_),
      cols(cols_),
      atoms(std::move(atoms_)),
      density_grid(std::move(density_grid_)),
      density(std::move(density_)) {
    require(rows >= 1 && cols >= 1, "MatrixMeasure: dimensions must be positive");
    double prev = -1.0;
    for (const auto& a : atoms) {
        require(std::isfinite(a.time) && a.time >= 0.0, "MatrixMeasure: atom time must be >= 0");
        require(a.time > prev, "MatrixMeasure: atom times must be strictly increasing");
        require(a.weight.rows() == rows && a.weight.cols() == cols,
                "MatrixMeasure: atom shape mismatch");
        require(a.weight.allFinite(), "MatrixMeasure: atom entries must be finite");
        prev = a.time;
    }
    if (density_grid.has_value()) {
        require(static_cast<int>(density.size()) == density_grid->n_steps,
                "MatrixMeasure: density sample count mismatch");
        for (const auto& d : density) {
            require(d.rows() == rows && d.cols() == cols, "MatrixMeasure: density shape mismatch");
            require(d.allFinite(), "MatrixMeasure: density entries must be finite");
        }
    } else {
        require(density.empty(), "MatrixMeasure: density without grid");
    }
}

MatrixMeasure MatrixMeasure::atoms_only(int rows, int cols, std::vector<Atom> atoms) {
    return MatrixMeasure(rows, cols, std::move(atoms), std::nullopt, {});
}

MatrixMeasure MatrixMeasure::density_only(TimeGrid grid, std::vector<Eigen::MatrixXd> samples) {
    if (samples.empty()) throw std::invalid_argument("MatrixMeasure: empty density");
    const int r = static_cast<int>(samples.front().rows());
    const int c = static_cast<int>(samples.front().cols());
    return MatrixMeasure(r, c, {}, grid, std::move(samples));
}

double MatrixMeasure::horizon() const {
    double h = 0.0;
    if (!atoms.empty()) h = atoms.back().time;
    if (density_grid.has_value()) h = std::max(h, density_grid->horizon());
    return h;
}

double entry_tv(const MatrixMeasure& h, int i, int j) {
    if (i < 0 || i >= h.rows || j < 0 || j >= h.cols)
        throw std::invalid_argument("entry_tv: index out of range");
    double tv = 0.0;
    for (const auto& a : h.atoms) tv += std::abs(a.weight(i, j));
    if (h.has_density()) {
        double dens = 0.0;
        for (const auto& d : h.density) dens += std::abs(d(i, j));
        tv += h.density_grid->dt * dens;
    }
    return tv;
}

GainValue induced_gain(const MatrixMeasure& h, GainP p) {
    double best = 0.0;
    if (p == GainP::Inf) {
        for (int i = 0; i < h.rows; ++i) {
            double row = 0.0;
            for (int j = 0; j < h.cols; ++j) row += entry_tv(h, i, j);
            best = std::max(best, row);
        }
    } else {
        for (int j = 0; j < h.cols; ++j) {
            double col = 0.0;
            for (int i = 0; i < h.rows; ++i) col += entry_tv(h, i, j);
            best = std::max(best, col);
        }
    }
    return {p, best};
}

MatrixMeasure transpose(const MatrixMeasure& h) {
    std::vector<MatrixMeasure::Atom> atoms;
    atoms.reserve(h.atoms.size());
    for (const auto& a : h.atoms) atoms.push_back({a.time, a.weight.transpose()});
    std::vector<Eigen::MatrixXd> density;
    density.reserve(h.density.size());
    for (const auto& d : h.density) density.push_back(d.transpose());
    return MatrixMeasure(h.cols, h.rows, std::move(atoms), h.density_grid, std::move(density));
}

Signal convolve(const MatrixMeasure& h, const Signal& u) {
    require(u.space.dim == h.cols, "convolve: input dimension mismatch");
    const double dt = u.grid.dt;
    if (h.has_density())
        require(std::abs(h.density_grid->dt - dt) <= 1e-12 * dt,
                "convolve: density grid dt mismatch");
    const int n = u.grid.n_steps;

    std::vector<std::pair<long, const Eigen::MatrixXd*>> atom_steps;
    atom_steps.reserve(h.atoms.size());
    for (const auto& a : h.atoms) atom_steps.emplace_back(atom_step(a.time, dt), &a.weight);

    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(h.rows, n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(h.rows);
        for (const auto& [step, w] : atom_steps) {
            const long j = k - step;
            if (j >= 0 && j < n) acc.noalias() += (*w) * u.values.col(j);
        }
        if (h.has_density()) {
            const int nd = static_cast<int>(h.density.size());
            Eigen::VectorXd dens = Eigen::VectorXd::Zero(h.rows);
            for (int j = std::max(0, k - nd + 1); j <= k; ++j)
                dens.noalias() += h.density[k - j] * u.values.col(j);
            acc.noalias() += dt * dens;
        }
        y.col(k) = acc;
    }
    const ValueSpace out = ValueSpace::sup(h.rows);
    return Signal(u.grid, out, std::move(y));
}

Eigen::MatrixXcd laplace(const MatrixMeasure& h, std::complex<double> s) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(h.rows, h.cols);
    for (const auto& a : h.atoms) acc += std::exp(-s * a.time) * a.weight.cast<std::complex<double>>();
    if (h.has_density()) {
        const double dt = h.density_grid->dt;
        Eigen::MatrixXcd dens = Eigen::MatrixXcd::Zero(h.rows, h.cols);
        for (int k = 0; k < static_cast<int>(h.density.size()); ++k)
            dens += std::exp(-s * h.density_grid->t(k)) * h.density[k].cast<std::complex<double>>();
        acc += dt * dens;
    }
    return acc;
}

}  // namespace iostab
