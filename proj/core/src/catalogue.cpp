#include "iostab/catalogue.hpp"

#include <cmath>
#include <stdexcept>

namespace iostab {

namespace {

DiscreteSystemNode scalar_exponential(double dt, double rate, double out_gain) {
    Eigen::MatrixXd F(1, 1), G(1, 1), H(1, 1), J(1, 1);
    F << std::exp(-rate * dt);
    G << dt;
    H << out_gain;
    J << 0.0;
    return DiscreteSystemNode(ValueSpace::sup(1), ValueSpace::sup(1), ValueSpace::sup(1),
                              F, G, H, J, dt);
}

MatrixMeasure exp_kernel(double dt, double horizon, const Eigen::VectorXd& gains) {
    const int d = static_cast<int>(gains.size());
    const int n = std::max(1, static_cast<int>(std::lround(horizon / dt)));
    std::vector<Eigen::MatrixXd> density;
    density.reserve(n);
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) s(i, i) = gains[i] * std::exp(-k * dt);
        density.push_back(std::move(s));
    }
    return MatrixMeasure::density_only(TimeGrid(dt, n), std::move(density));
}

}  // namespace

std::vector<CatalogueEntry> catalogue_entries() {
    return {{"delay1", true},
            {"exp1", true},
            {"transport", false},
            {"leftshift", false},
            {"diag-exp-2", true}};
}

bool catalogue_has_system(const std::string& name) {
    for (const auto& e : catalogue_entries())
        if (e.name == name) return true;
    return false;
}

DiscreteSystemNode catalogue_system(const std::string& name, int m) {
    if (m < 1) throw std::invalid_argument("catalogue_system: m must be >= 1");
    const double dt = 1.0 / m;
    if (name == "transport") return transport_boundary_control(m);
    if (name == "leftshift") return left_shift_distributed_input(m);
    if (name == "delay1") return from_kernel(catalogue_kernel("delay1", dt, 1.0));
    if (name == "exp1") return scalar_exponential(dt, 1.0, 1.0);
    if (name == "diag-exp-2") {
        Eigen::MatrixXd F = std::exp(-dt) * Eigen::MatrixXd::Identity(2, 2);
        Eigen::MatrixXd G = dt * Eigen::MatrixXd::Identity(2, 2);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2, 2);
        H(0, 0) = 1.0;
        H(1, 1) = 2.0;
        return DiscreteSystemNode(ValueSpace::sup(2), ValueSpace::sup(2),
                                  ValueSpace::sup(2), F, G, H,
                                  Eigen::MatrixXd::Zero(2, 2), dt);
    }
    throw std::invalid_argument("catalogue_system: unknown name '" + name + "'");
}

bool catalogue_has_kernel(const std::string& name) {
    return name == "delay1" || name == "exp1" || name == "diag-exp-2";
}

MatrixMeasure catalogue_kernel(const std::string& name, double dt, double horizon) {
    if (name == "delay1") {
        std::vector<MatrixMeasure::Atom> atoms;
        atoms.push_back({1.0, Eigen::MatrixXd::Ones(1, 1)});
        // Carry an explicit grid so realizations and convolutions share dt.
        const int n = std::max(2, static_cast<int>(std::lround(std::max(horizon, 1.0) / dt)));
        std::vector<Eigen::MatrixXd> density(n, Eigen::MatrixXd::Zero(1, 1));
        return MatrixMeasure(1, 1, std::move(atoms), TimeGrid(dt, n), std::move(density));
    }
    if (name == "exp1") return exp_kernel(dt, horizon, Eigen::VectorXd::Ones(1));
    if (name == "diag-exp-2") {
        Eigen::VectorXd gains(2);
        gains << 1.0, 2.0;
        return exp_kernel(dt, horizon, gains);
    }
    throw std::invalid_argument("catalogue_kernel: unknown name '" + name + "'");
}

Eigen::MatrixXcd reference_transfer(const std::string& name, std::complex<double> s) {
    if (name == "delay1") {
        Eigen::MatrixXcd g(1, 1);
        g << std::exp(-s);
        return g;
    }
    if (name == "exp1") {
        Eigen::MatrixXcd g(1, 1);
        g << 1.0 / (s + 1.0);
        return g;
    }
    if (name == "diag-exp-2") {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
        g(0, 0) = 1.0 / (s + 1.0);
        g(1, 1) = 2.0 / (s + 1.0);
        return g;
    }
    throw std::invalid_argument("reference_transfer: unknown name '" + name + "'");
}

}  // namespace iostab
