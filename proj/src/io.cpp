#include "nccover/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nccover {

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw Error(ErrorCode::ConfigInvalid, "matrix must be a nested array");
    const Eigen::Index r = j.size(), c = j[0].size();
    Mat m(r, c);
    for (Eigen::Index a = 0; a < r; ++a) {
        if (j[a].size() != static_cast<size_t>(c)) throw Error(ErrorCode::ConfigInvalid, "ragged matrix");
        for (Eigen::Index b = 0; b < c; ++b) {
            const json& e = j[a][b];
            if (e.is_number())
                m(a, b) = e.get<double>();
            else if (e.is_array() && e.size() == 2)
                m(a, b) = cplx(e[0].get<double>(), e[1].get<double>());
            else
                throw Error(ErrorCode::ConfigInvalid, "matrix entries are numbers or [re, im] pairs");
        }
    }
    return m;
}

json algebra_to_json(const StarAlgebra& a) {
    json basis = json::array();
    for (const auto& b : a.basis_list()) basis.push_back(matrix_to_json(b));
    return {{"ambient_dim", a.ambient_dim()}, {"dim", a.dim()}, {"unital", a.unital()}, {"basis", basis}};
}

StarAlgebra algebra_from_json(const json& j) {
    std::vector<Mat> elems;
    for (const auto& b : j.at("basis")) elems.push_back(matrix_from_json(b));
    const int n = j.at("ambient_dim").get<int>();
    if (j.value("close", false)) return StarAlgebra::generated_by(elems, n, j.value("with_unit", false));
    return StarAlgebra::span_of(elems, n);
}

json action_to_json(const GroupAction& g) {
    json out{{"identity", g.identity}, {"table", g.table}};
    json maps = json::array();
    for (const auto& m : g.maps) maps.push_back(matrix_to_json(m));
    out["maps"] = maps;
    if (!g.implementers.empty()) {
        json w = json::array();
        for (const auto& m : g.implementers) w.push_back(matrix_to_json(m));
        out["implementers"] = w;
    }
    return out;
}

GroupAction action_from_json(const StarAlgebra& a, const json& j) {
    const MultTable table = j.at("table").get<MultTable>();
    const int identity = j.value("identity", 0);
    if (j.contains("implementers")) {
        std::vector<Mat> w;
        for (const auto& m : j["implementers"]) w.push_back(matrix_from_json(m));
        return action_from_unitaries(a, table, identity, w);
    }
    GroupAction g;
    g.table = table;
    g.identity = identity;
    for (const auto& m : j.at("maps")) g.maps.push_back(matrix_from_json(m));
    return g;
}

json torus_to_json(const TorusElement& x) {
    json coeffs = json::array();
    for (int r = -x.cutoff(); r <= x.cutoff(); ++r)
        for (int s = -x.cutoff(); s <= x.cutoff(); ++s) {
            const cplx c = x.coeff(r, s);
            if (c != cplx(0.0)) coeffs.push_back({r, s, c.real(), c.imag()});
        }
    return {{"theta", x.theta()}, {"R", x.cutoff()}, {"coeffs", coeffs}};
}

TorusElement torus_from_json(const json& j) {
    TorusElement x(j.at("theta").get<double>(), j.at("R").get<int>());
    for (const auto& c : j.at("coeffs")) {
        const int r = c.at(0).get<int>(), s = c.at(1).get<int>();
        if (std::abs(r) > x.cutoff() || std::abs(s) > x.cutoff())
            throw Error(ErrorCode::ConfigInvalid, "coefficient outside cutoff");
        x.set(r, s, cplx(c.at(2).get<double>(), c.at(3).get<double>()));
    }
    return x;
}

json report_to_json(const RiggedFrameReport& r) {
    return {{"residual_1mb", r.residual_1mb},
            {"residual_1mkx", r.residual_1mkx},
            {"residual_eexx", r.residual_eexx},
            {"residual_gort", r.residual_gort},
            {"pass", r.pass}};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path);
    for (size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << "\n" << std::setprecision(17);
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
        out << "\n";
    }
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw Error(ErrorCode::ConfigInvalid, "non-numeric CSV row in " + path);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace nccover
