#include "iostab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace iostab {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kind_name(NormKind k) {
    switch (k) {
        case NormKind::Sup: return "sup";
        case NormKind::WeightedOne: return "w1";
        case NormKind::WeightedTwo: return "w2";
    }
    return "sup";
}

NormKind kind_from(const std::string& s) {
    if (s == "sup") return NormKind::Sup;
    if (s == "w1") return NormKind::WeightedOne;
    if (s == "w2") return NormKind::WeightedTwo;
    throw std::runtime_error("unknown norm kind: " + s);
}

void append_matrix(std::ostringstream& os, const Eigen::MatrixXd& M) {
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) os << ' ' << format_double(M(i, j));
}

json gain_json_impl(const GainReport& r, const std::string& witness_file) {
    json j;
    if (r.p == GainP::One)
        j["p"] = 1;
    else
        j["p"] = "inf";
    j["lower_bound"] = r.lower_bound;
    if (r.unbounded_evidence)
        j["upper_bound"] = "unbounded-evidence";
    else
        j["upper_bound"] = r.upper_bound;
    j["horizon"] = r.horizon;
    j["witness_file"] = witness_file;
    j["notes"] = r.notes;
    return j;
}

json admissibility_json_impl(const AdmissibilityReport& r) {
    json j;
    j["constant_lower"] = r.constant_lower;
    j["constant_upper"] = r.constant_upper;
    j["probe_count"] = r.probe_count;
    j["horizon"] = r.horizon;
    j["notes"] = r.notes;
    return j;
}

json verdict_json(const GainDualityVerdict& v) {
    json j;
    j["description"] = v.description;
    j["dual_lower"] = v.dual_lower;
    j["primal_upper"] = v.primal_upper;
    j["margin"] = v.margin;
    j["pass"] = v.pass;
    return j;
}

json duality_row_impl(const DualityRow& row) {
    json j;
    j["name"] = row.name;
    j["grid_size"] = row.grid_size;
    j["pairing_residual"] = row.pairing_residual;
    j["primal_gain_infty"] = gain_json_impl(row.primal_gain_infty, "");
    j["primal_gain_one"] = gain_json_impl(row.primal_gain_one, "");
    j["dual_gain_infty"] = gain_json_impl(row.dual_gain_infty, "");
    j["dual_gain_one"] = gain_json_impl(row.dual_gain_one, "");
    j["verdicts"] = json::array();
    for (const auto& v : row.verdicts) j["verdicts"].push_back(verdict_json(v));
    j["negative_cell"] = row.negative_cell;
    return j;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string signal_to_csv(const Signal& s) {
    std::ostringstream os;
    os << 't';
    for (int i = 0; i < s.space.dim; ++i) os << ",v" << i;
    os << '\n';
    for (int k = 0; k < s.grid.n_steps; ++k) {
        os << format_double(s.grid.t(k));
        for (int i = 0; i < s.space.dim; ++i) os << ',' << format_double(s.values(i, k));
        os << '\n';
    }
    return os.str();
}

void write_signal_csv(const std::string& path, const Signal& s) {
    write_file(path, signal_to_csv(s));
}

Signal read_signal_csv(const std::string& path, const ValueSpace& space) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty signal file: " + path);
    std::vector<std::vector<double>> rows;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != space.dim + 1)
            throw std::runtime_error("signal row width mismatch in " + path);
        times.push_back(row.front());
        rows.push_back(std::vector<double>(row.begin() + 1, row.end()));
    }
    if (rows.empty()) throw std::runtime_error("signal file has no samples: " + path);
    const double dt = rows.size() > 1 ? times[1] - times[0] : 1.0;
    TimeGrid grid(dt, static_cast<int>(rows.size()));
    Eigen::MatrixXd vals(space.dim, grid.n_steps);
    for (int k = 0; k < grid.n_steps; ++k)
        for (int i = 0; i < space.dim; ++i) vals(i, k) = rows[k][i];
    return Signal(grid, space, std::move(vals));
}

std::string kernel_to_text(const MatrixMeasure& h) {
    std::ostringstream os;
    const double dt = h.has_density() ? h.density_grid->dt : 0.0;
    os << "kernel " << h.rows << ' ' << h.cols << ' ' << format_double(dt) << ' '
       << format_double(h.horizon()) << '\n';
    for (const auto& a : h.atoms) {
        os << "atom " << format_double(a.time);
        append_matrix(os, a.weight);
        os << '\n';
    }
    for (std::size_t k = 0; k < h.density.size(); ++k) {
        os << "d " << k;
        append_matrix(os, h.density[k]);
        os << '\n';
    }
    return os.str();
}

void write_kernel_text(const std::string& path, const MatrixMeasure& h) {
    write_file(path, kernel_to_text(h));
}

MatrixMeasure parse_kernel_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "kernel") throw std::runtime_error("not a kernel file");
    int rows = 0, cols = 0;
    double dt = 0.0, horizon = 0.0;
    in >> rows >> cols >> dt >> horizon;
    if (!in) throw std::runtime_error("bad kernel header");

    std::vector<MatrixMeasure::Atom> atoms;
    std::vector<std::pair<int, Eigen::MatrixXd>> density_samples;
    int max_index = -1;
    while (in >> tag) {
        Eigen::MatrixXd M(rows, cols);
        if (tag == "atom") {
            double t = 0.0;
            in >> t;
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) in >> M(i, j);
            atoms.push_back({t, std::move(M)});
        } else if (tag == "d") {
            int k = 0;
            in >> k;
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) in >> M(i, j);
            density_samples.emplace_back(k, std::move(M));
            max_index = std::max(max_index, k);
        } else {
            throw std::runtime_error("unknown kernel line tag: " + tag);
        }
        if (!in) throw std::runtime_error("bad kernel line");
    }
    std::optional<TimeGrid> grid;
    std::vector<Eigen::MatrixXd> density;
    if (max_index >= 0) {
        if (dt <= 0.0) throw std::runtime_error("kernel density without dt");
        grid = TimeGrid(dt, max_index + 1);
        density.assign(max_index + 1, Eigen::MatrixXd::Zero(rows, cols));
        for (auto& [k, M] : density_samples) density[k] = std::move(M);
    }
    return MatrixMeasure(rows, cols, std::move(atoms), grid, std::move(density));
}

MatrixMeasure read_kernel_text(const std::string& path) {
    return parse_kernel_text(read_file(path));
}

std::string sysnode_to_text(const DiscreteSystemNode& sys) {
    std::ostringstream os;
    os << "sysnode " << sys.state_dim() << ' ' << sys.input_dim() << ' '
       << sys.output_dim() << ' ' << format_double(sys.dt) << '\n';
    os << "norms " << kind_name(sys.state_space.kind) << ' '
       << kind_name(sys.input_space.kind) << ' ' << kind_name(sys.output_space.kind)
       << '\n';
    os << "flags " << (sys.input_function_space ? 1 : 0) << ' '
       << (sys.output_function_space ? 1 : 0) << '\n';
    const auto block = [&](const char* name, const Eigen::MatrixXd& M) {
        os << name;
        append_matrix(os, M);
        os << '\n';
    };
    block("F", sys.F);
    block("G", sys.G);
    block("H", sys.H);
    block("J", sys.J);
    block("w_state", sys.state_space.weights.transpose());
    block("w_in", sys.input_space.weights.transpose());
    block("w_out", sys.output_space.weights.transpose());
    return os.str();
}

void write_sysnode_text(const std::string& path, const DiscreteSystemNode& sys) {
    write_file(path, sysnode_to_text(sys));
}

DiscreteSystemNode parse_sysnode_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "sysnode") throw std::runtime_error("not a sysnode file");
    int nx = 0, nu = 0, ny = 0;
    double dt = 0.0;
    in >> nx >> nu >> ny >> dt;
    if (!in) throw std::runtime_error("bad sysnode header");

    NormKind ks = NormKind::Sup, ki = NormKind::Sup, ko = NormKind::Sup;
    bool in_fn = false, out_fn = false;
    Eigen::MatrixXd F(nx, nx), G(nx, nu), H(ny, nx), J(ny, nu);
    Eigen::VectorXd wx = Eigen::VectorXd::Ones(nx);
    Eigen::VectorXd wu = Eigen::VectorXd::Ones(nu);
    Eigen::VectorXd wy = Eigen::VectorXd::Ones(ny);

    const auto read_matrix = [&](Eigen::MatrixXd& M) {
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) in >> M(i, j);
    };
    const auto read_vector = [&](Eigen::VectorXd& v) {
        for (int i = 0; i < v.size(); ++i) in >> v[i];
    };

    while (in >> tag) {
        if (tag == "norms") {
            std::string a, b, c;
            in >> a >> b >> c;
            ks = kind_from(a);
            ki = kind_from(b);
            ko = kind_from(c);
        } else if (tag == "flags") {
            int a = 0, b = 0;
            in >> a >> b;
            in_fn = a != 0;
            out_fn = b != 0;
        } else if (tag == "F") {
            read_matrix(F);
        } else if (tag == "G") {
            read_matrix(G);
        } else if (tag == "H") {
            read_matrix(H);
        } else if (tag == "J") {
            read_matrix(J);
        } else if (tag == "w_state") {
            read_vector(wx);
        } else if (tag == "w_in") {
            read_vector(wu);
        } else if (tag == "w_out") {
            read_vector(wy);
        } else {
            throw std::runtime_error("unknown sysnode line tag: " + tag);
        }
        if (!in) throw std::runtime_error("bad sysnode line: " + tag);
    }
    DiscreteSystemNode sys(ValueSpace(nx, ks, wx), ValueSpace(nu, ki, wu),
                           ValueSpace(ny, ko, wy), std::move(F), std::move(G),
                           std::move(H), std::move(J), dt);
    sys.input_function_space = in_fn;
    sys.output_function_space = out_fn;
    return sys;
}

DiscreteSystemNode read_sysnode_text(const std::string& path) {
    return parse_sysnode_text(read_file(path));
}

std::string gain_report_json(const GainReport& r, const std::string& witness_file) {
    return gain_json_impl(r, witness_file).dump(2) + "\n";
}

std::string admissibility_json(const ObservationAdmissibility& r) {
    json j;
    j["observation"] = admissibility_json_impl(r.observation);
    j["max_regularity"] = admissibility_json_impl(r.max_regularity);
    return j.dump(2) + "\n";
}

std::string admissibility_json(const AdmissibilityReport& r) {
    return admissibility_json_impl(r).dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "eps,input_norm,output_norm,ratio,predicted\n";
    for (const auto& r : rows)
        os << format_double(r.eps) << ',' << format_double(r.input_norm) << ','
           << format_double(r.output_norm) << ',' << format_double(r.ratio) << ','
           << format_double(r.predicted) << '\n';
    return os.str();
}

std::string duality_row_json(const DualityRow& row) {
    return duality_row_impl(row).dump(2) + "\n";
}

std::string duality_sweep_json(const DualitySweepReport& report) {
    json j;
    j["rows"] = json::array();
    for (const auto& row : report.rows) j["rows"].push_back(duality_row_impl(row));
    j["pairing_residual"] = report.max_pairing_residual;
    j["max_pairing_residual"] = report.max_pairing_residual;
    j["all_pass"] = report.all_pass;
    return j.dump(2) + "\n";
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["eps"] = r.eps;
        j["input_norm"] = r.input_norm;
        j["output_norm"] = r.output_norm;
        j["ratio"] = r.ratio;
        j["predicted"] = r.predicted;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string gain_reports_json(const std::vector<GainReport>& reports,
                              const std::vector<std::string>& witness_files) {
    json arr = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i)
        arr.push_back(gain_json_impl(
            reports[i], i < witness_files.size() ? witness_files[i] : std::string()));
    return arr.dump(2) + "\n";
}

std::string admissibility_bundle_json(const ObservationAdmissibility& obs,
                                      const AdmissibilityReport& control) {
    json j;
    j["observation"] = admissibility_json_impl(obs.observation);
    j["max_regularity"] = admissibility_json_impl(obs.max_regularity);
    j["control"] = admissibility_json_impl(control);
    return j.dump(2) + "\n";
}

std::string laplace_samples_csv(const std::vector<std::complex<double>>& points,
                                const std::vector<Eigen::MatrixXcd>& values) {
    if (points.size() != values.size())
        throw std::invalid_argument("laplace_samples_csv: size mismatch");
    std::ostringstream os;
    os << "re_s,im_s";
    if (!values.empty()) {
        for (int i = 0; i < values.front().rows(); ++i)
            for (int j = 0; j < values.front().cols(); ++j)
                os << ",re_G_" << i << j << ",im_G_" << i << j;
    }
    os << '\n';
    for (std::size_t k = 0; k < points.size(); ++k) {
        os << format_double(points[k].real()) << ',' << format_double(points[k].imag());
        const auto& M = values[k];
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j)
                os << ',' << format_double(M(i, j).real()) << ','
                   << format_double(M(i, j).imag());
        os << '\n';
    }
    return os.str();
}

}  // namespace iostab
