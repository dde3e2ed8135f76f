#include "dhdae/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace dhdae::io {

namespace {

double finite_number(const json& j, const std::string& name) {
    if (!j.is_number()) throw Error(ErrorCode::io, name + ": expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::io, name + ": non-finite value");
    return v;
}

Index count(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw Error(ErrorCode::io, std::string("missing or invalid '") + key + "'");
    return Index(j[key].get<long long>());
}

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::io, std::string("missing '") + key + "'");
    return j[key];
}

void expect_shape(const Mat& m, Index r, Index c, const std::string& name) {
    if (m.rows() != r || m.cols() != c)
        throw Error(ErrorCode::shape, name + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                          ", expected " + std::to_string(r) + "x" + std::to_string(c));
}

ScalarField scalar_field_from_json(const json& j, const std::string& name) {
    if (j.is_object()) {
        if (j.value("kind", "") != "tabulated") throw Error(ErrorCode::io, name + ": unknown field kind");
        std::vector<double> z;
        std::vector<Complex> v;
        for (const auto& e : field(j, "zeta")) z.push_back(finite_number(e, name));
        for (const auto& e : field(j, "values")) v.push_back(complex_from_json(e, name));
        return ScalarField::tabulated(std::move(z), std::move(v));
    }
    return ScalarField(complex_from_json(j, name));
}

MatrixField matrix_field_from_json(const json& j, const std::string& name) {
    if (j.is_object()) {
        std::string kind = j.value("kind", "constant");
        if (kind == "constant") return MatrixField(matrix_from_json(field(j, "data"), name));
        if (kind != "tabulated") throw Error(ErrorCode::io, name + ": unknown field kind");
        std::vector<double> z;
        std::vector<Mat> v;
        for (const auto& e : field(j, "zeta")) z.push_back(finite_number(e, name));
        for (const auto& e : field(j, "data")) v.push_back(matrix_from_json(e, name));
        return MatrixField::tabulated(std::move(z), std::move(v));
    }
    return MatrixField(matrix_from_json(j, name));
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& name) {
    if (j.is_number()) return {finite_number(j, name), 0.0};
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::io, name + ": expected [re, im]");
    return {finite_number(j[0], name), finite_number(j[1], name)};
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& j, const std::string& name) {
    if (!j.is_array()) throw Error(ErrorCode::io, name + ": expected an array of rows");
    const Index r = Index(j.size());
    Index c = 0;
    if (r > 0) {
        if (!j[0].is_array()) throw Error(ErrorCode::io, name + ": rows must be arrays");
        c = Index(j[0].size());
    }
    Mat m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (!j[i].is_array() || Index(j[i].size()) != c) throw Error(ErrorCode::shape, name + ": ragged rows");
        for (Index k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k], name);
    }
    return m;
}

json system_to_json(const BlockDhdae& sys) {
    return {{"n1", sys.n1()},
            {"n2", sys.n2()},
            {"E1", matrix_to_json(sys.E1())},
            {"Q1", matrix_to_json(sys.Q1())},
            {"Q2", matrix_to_json(sys.Q2())},
            {"A", matrix_to_json(sys.A())}};
}

BlockDhdae system_from_json(const json& j) {
    const Index n1 = count(j, "n1"), n2 = count(j, "n2");
    Mat E1 = matrix_from_json(field(j, "E1"), "E1");
    Mat Q1 = matrix_from_json(field(j, "Q1"), "Q1");
    Mat Q2 = matrix_from_json(field(j, "Q2"), "Q2");
    Mat A = matrix_from_json(field(j, "A"), "A");
    expect_shape(E1, n1, n1, "E1");
    expect_shape(Q1, n1, n1, "Q1");
    if (n2 > 0 || Q2.size() > 0) expect_shape(Q2, n2, n2, "Q2");
    Q2.resize(n2, n2);
    expect_shape(A, n1 + n2, n1 + n2, "A");
    return BlockDhdae::make(E1, Q1, Q2, A);
}

json pencil_to_json(const Pencil& p) {
    return {{"format", "pencil"},
            {"n1", p.n1},
            {"E", matrix_to_json(p.E)},
            {"A", matrix_to_json(p.A)},
            {"Q", matrix_to_json(p.Q)}};
}

Pencil pencil_from_json(const json& j) {
    Pencil p;
    p.n1 = count(j, "n1");
    p.E = matrix_from_json(field(j, "E"), "E");
    p.A = matrix_from_json(field(j, "A"), "A");
    p.Q = matrix_from_json(field(j, "Q"), "Q");
    const Index n = p.E.rows();
    expect_shape(p.E, n, n, "E");
    expect_shape(p.A, n, n, "A");
    expect_shape(p.Q, n, n, "Q");
    if (p.n1 > n) throw Error(ErrorCode::shape, "n1 exceeds the pencil size");
    return p;
}

Ph1dSystem ph1d_from_json(const json& j) {
    Ph1dSystem s;
    s.P1 = matrix_from_json(field(j, "P1"), "P1");
    s.G0 = matrix_field_from_json(field(j, "G0"), "G0");
    s.WB = matrix_from_json(field(j, "WB"), "WB");
    const json& split = field(j, "split");
    if (!split.is_array() || split.size() != 2) throw Error(ErrorCode::io, "split must be [n1, n2]");
    s.n1 = Index(finite_number(split[0], "split"));
    s.n2 = Index(finite_number(split[1], "split"));
    const json& coeffs = j.contains("coeffs") ? j["coeffs"] : json::object();
    if (coeffs.contains("E1"))
        for (const auto& e : coeffs["E1"]) s.e1.push_back(scalar_field_from_json(e, "E1"));
    else
        s.e1.assign(s.n1, ScalarField(1.0));
    if (coeffs.contains("Q"))
        for (const auto& e : coeffs["Q"]) s.q.push_back(scalar_field_from_json(e, "Q"));
    else
        s.q.assign(s.n1 + s.n2, ScalarField(1.0));
    if (j.contains("node_components"))
        for (const auto& e : j["node_components"]) s.node_components.push_back(Index(finite_number(e, "node_components")));
    s.validate();
    return s;
}

LoadedSystem load_system(const json& j, Index N) {
    if (!j.is_object()) throw Error(ErrorCode::io, "system file must hold a JSON object");
    LoadedSystem out;
    std::string format = j.value("format", "block");
    if (format == "pencil") {
        out.pencil = pencil_from_json(j);
    } else if (format == "ph1d") {
        out.ph1d = ph1d_from_json(j);
        out.system = discretize(*out.ph1d, N);
        out.pencil = out.system->pencil();
    } else if (format == "block") {
        out.system = system_from_json(j);
        out.pencil = out.system->pencil();
    } else {
        throw Error(ErrorCode::io, "unknown format '" + format + "'");
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io, "malformed JSON in '" + path + "': " + e.what());
    }
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json report_to_json(const RegularityReport& r) {
    json samples = json::array();
    for (std::size_t k = 0; k < r.s_values.size(); ++k)
        samples.push_back({{"s", complex_to_json(r.s_values[k])},
                           {"sigma_min", r.sigma_min[k]},
                           {"cond", number_or_null(r.cond[k])},
                           {"invertible", bool(r.invertible[k])}});
    return {{"regular", r.regular},
            {"samples", samples},
            {"stacked_sigma_min", number_or_null(r.stacked_sigma_min)},
            {"injective_x2", r.injective_x2},
            {"surjective_x2", r.surjective_x2},
            {"common_kernel_dim", r.common_kernel_dim}};
}

json reduced_to_json(const ReducedSystem& r) {
    return {{"method", "schur"},
            {"n1", r.n1()},
            {"Ared", matrix_to_json(r.Ared)},
            {"x2_map", matrix_to_json(r.x2_map)},
            {"inner_metric", matrix_to_json(r.inner_metric)}};
}

json subspace_to_json(const SubspaceReducedSystem& r) {
    return {{"method", "subspace"},
            {"dim", r.dim()},
            {"basis", matrix_to_json(r.basis)},
            {"Ared_coords", matrix_to_json(r.Ared_coords)},
            {"multiplier_map", matrix_to_json(r.multiplier_map)},
            {"inner_metric", matrix_to_json(r.inner_metric)}};
}

json trajectory_to_json(const Trajectory& traj, const EnergyTrace& en) {
    json states = json::array();
    for (const auto& x : traj.states) states.push_back(matrix_to_json(x.transpose()).at(0));
    return {{"t", traj.times}, {"H", en.H}, {"states", states}};
}

json models_to_json() {
    json arr = json::array();
    for (const auto& info : model_registry())
        arr.push_back({{"name", info.name},
                       {"description", info.description},
                       {"parameters", info.defaults},
                       {"deliberately_singular", info.deliberately_singular},
                       {"schur_reducible", info.schur_reducible},
                       {"conservative", info.conservative}});
    return arr;
}

}  // namespace dhdae::io
