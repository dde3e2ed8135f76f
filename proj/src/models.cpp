#include "dhdae/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dhdae/reduction.hpp"

namespace dhdae {

namespace {

constexpr double kPi = std::numbers::pi;

Mat sigma_x() {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

// Boundary rows e_c(end) = 0 for the listed (component, end) pairs; end 1 is zeta = 1.
Mat trace_rows(Index n, const std::vector<std::pair<Index, int>>& fixed) {
    Mat wb = Mat::Zero(Index(fixed.size()), 2 * n);
    for (std::size_t r = 0; r < fixed.size(); ++r) {
        auto [c, end] = fixed[r];
        wb(Index(r), end == 1 ? c : n + c) = 1.0;
    }
    return wb;
}

const std::vector<ModelInfo>& registry_storage() {
    static const std::vector<ModelInfo> reg = {
        {"string", "vibrating string, velocity and strain, fixed ends", {{"rho", 1}, {"T", 1}, {"N", 16}}, false, true,
         true},
        {"string_z", "vibrating string in momentum and strain, fixed ends", {{"rho", 1}, {"T", 1}, {"N", 16}}, false,
         true, true},
        {"string_massless", "massless string; velocity becomes an algebraic unknown", {{"T", 1}, {"N", 16}}, false,
         false, true},
        {"heat_closure", "heat equation with the heat flux closed algebraically (Q2 = k)",
         {{"alpha", 1}, {"k", 1}, {"N", 16}}, false, true, false},
        {"heat_textbook", "heat equation with conductivity in the closure (A22 = -1/k, Q2 = 1)",
         {{"alpha", 1}, {"k", 1}, {"N", 16}}, false, true, false},
        {"sturm_liouville", "Sturm-Liouville operator with Robin or Dirichlet ends",
         {{"e1", 1}, {"r", 1}, {"g0", 0}, {"q2", 1}, {"alpha1", 1}, {"beta1", 0}, {"alpha2", 1}, {"beta2", 0},
          {"N", 16}},
         false, true, false},
        {"schrodinger", "free Schroedinger equation, Dirichlet ends", {{"N", 16}}, false, true, true},
        {"beam", "Euler-Bernoulli beam, clamped at 0 and free at 1",
         {{"rho", 1}, {"q1", 1}, {"q2", 1}, {"N", 16}}, false, true, true},
        {"wave_heat", "wave equation coupled to a heat equation through the boundary",
         {{"rho", 1}, {"T", 1}, {"r", 1}, {"N", 16}}, false, true, false},
        {"feedback", "output feedback closed loop, three block form", {{"n", 1}, {"a0", -1}, {"b0", 1}, {"k", 2}},
         false, true, false},
        {"impedance", "impedance passive construction with a resistive port", {{"l", 1}, {"k0", 1}, {"g", 0}}, false,
         true, false},
        {"stokes", "Stokes flow on a marker-and-cell grid, one pressure pinned", {{"N", 8}, {"alpha", 1}}, false,
         false, false},
        {"counter", "singular pencil with a non block-diagonal Q (raw pencil)",
         {{"e11", 1}, {"e12", 2}, {"q21", 3}, {"q22", 4}}, true, false, false},
    };
    return reg;
}

Index grid_size(const ModelParams& p, Index minimum) {
    double n = p.at("N");
    if (n != std::floor(n) || n < double(minimum))
        throw Error(ErrorCode::usage, "N must be an integer >= " + std::to_string(minimum));
    return Index(n);
}

void finish_ph1d(Model& m, Ph1dSystem sys) {
    Index N = grid_size(m.params, 4);
    m.grid = discretize_full(sys, N);
    m.system = m.grid->system;
    std::vector<std::function<Complex(double)>> profiles;
    for (Index c = 0; c < sys.n(); ++c) {
        if (c < sys.n1) {
            double w = 0.5 * double(c);
            profiles.push_back([w](double z) { return Complex(std::sin(kPi * z) + w * std::sin(2.0 * kPi * z)); });
        } else {
            profiles.push_back([](double) { return Complex(0.0); });
        }
    }
    m.initial_x1 = m.grid->sample_state(profiles).head(m.system->n1());
    m.ph1d = std::move(sys);
}

}  // namespace

const std::vector<ModelInfo>& model_registry() { return registry_storage(); }

const ModelInfo& model_info(const std::string& name) {
    for (const auto& info : registry_storage())
        if (info.name == name) return info;
    throw Error(ErrorCode::usage, "unknown model '" + name + "'");
}

ModelParams parse_params(const std::vector<std::string>& items) {
    ModelParams out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::usage, "parameter '" + item + "' is not k=v");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::istringstream is(val);
        double v;
        if (!(is >> v) || !is.eof() || !std::isfinite(v))
            throw Error(ErrorCode::usage, "parameter '" + key + "' needs a finite number");
        out[key] = v;
    }
    return out;
}

Model build_model(const std::string& name, const ModelParams& overrides) {
    Model m;
    m.info = model_info(name);
    m.params = m.info.defaults;
    for (const auto& [k, v] : overrides) {
        if (!m.params.count(k)) throw Error(ErrorCode::usage, "model '" + name + "' has no parameter '" + k + "'");
        m.params[k] = v;
    }
    const auto& p = m.params;

    if (name == "string" || name == "string_z") {
        const double rho = p.at("rho"), T = p.at("T");
        if (rho == 0.0)
            throw Error(ErrorCode::usage, "rho = 0 makes E1 singular; string_massless moves the velocity into x2");
        if (!(rho > 0.0) || !(T > 0.0)) throw Error(ErrorCode::usage, "rho and T must be positive");
        Ph1dSystem s;
        s.n1 = 2;
        s.P1 = sigma_x();
        s.G0 = MatrixField(Mat(Mat::Zero(2, 2)));
        s.WB = trace_rows(2, {{0, 1}, {0, 0}});
        if (name == "string") {
            s.e1 = {ScalarField(rho), ScalarField(1.0)};
            s.q = {ScalarField(1.0), ScalarField(T)};
        } else {
            s.e1 = {ScalarField(1.0), ScalarField(1.0)};
            s.q = {ScalarField(1.0 / rho), ScalarField(T)};
        }
        finish_ph1d(m, std::move(s));
    } else if (name == "string_massless") {
        const double T = p.at("T");
        if (!(T > 0.0)) throw Error(ErrorCode::usage, "T must be positive");
        Ph1dSystem s;
        s.n1 = 1;
        s.n2 = 1;
        s.P1 = sigma_x();
        s.G0 = MatrixField(Mat(Mat::Zero(2, 2)));
        s.WB = trace_rows(2, {{1, 1}, {1, 0}});
        s.e1 = {ScalarField(1.0)};
        s.q = {ScalarField(T), ScalarField(1.0)};
        s.node_components = {1};
        finish_ph1d(m, std::move(s));
    } else if (name == "heat_closure" || name == "heat_textbook") {
        const double alpha = p.at("alpha"), k = p.at("k");
        if (!(alpha > 0.0) || !(k > 0.0)) throw Error(ErrorCode::usage, "alpha and k must be positive");
        Ph1dSystem s;
        s.n1 = 1;
        s.n2 = 1;
        s.P1 = -sigma_x();
        Mat g = Mat::Zero(2, 2);
        g(1, 1) = name == "heat_closure" ? -1.0 : -1.0 / k;
        s.G0 = MatrixField(g);
        s.WB = trace_rows(2, {{0, 1}, {0, 0}});
        s.e1 = {ScalarField(1.0 / alpha)};
        s.q = {ScalarField(1.0), ScalarField(name == "heat_closure" ? k : 1.0)};
        finish_ph1d(m, std::move(s));
    } else if (name == "sturm_liouville") {
        const double r = p.at("r"), e1 = p.at("e1"), q2 = p.at("q2"), g0 = p.at("g0");
        if (!(r > 0.0) || !(e1 > 0.0) || !(q2 > 0.0) || g0 < 0.0)
            throw Error(ErrorCode::usage, "need r, e1, q2 > 0 and g0 >= 0");
        finish_ph1d(m, sturm_liouville_system(e1, r, g0, q2, p.at("alpha1"), p.at("beta1"), p.at("alpha2"),
                                              p.at("beta2")));
    } else if (name == "schrodinger") {
        finish_ph1d(m, sturm_liouville_system(1.0, Complex(0.0, -1.0), 0.0, 1.0, 1.0, 0.0, 1.0, 0.0));
    } else if (name == "beam") {
        const double rho = p.at("rho"), q1 = p.at("q1"), q2 = p.at("q2");
        if (!(rho > 0.0) || !(q1 > 0.0) || !(q2 > 0.0)) throw Error(ErrorCode::usage, "rho, q1, q2 must be positive");
        Ph1dSystem s;
        s.n1 = 2;
        s.n2 = 2;
        s.P1 = Mat::Zero(4, 4);
        for (Index i = 0; i < 4; ++i) s.P1(i, 3 - i) = 1.0;
        Mat g = Mat::Zero(4, 4);
        g(2, 3) = 1.0;
        g(3, 2) = -1.0;
        s.G0 = MatrixField(g);
        // Free end at 1 (moment and shear vanish), clamped end at 0.
        s.WB = trace_rows(4, {{1, 1}, {3, 1}, {0, 0}, {2, 0}});
        s.e1 = {ScalarField(rho), ScalarField(1.0)};
        s.q = {ScalarField(q1), ScalarField(q2), ScalarField(1.0), ScalarField(1.0)};
        finish_ph1d(m, std::move(s));
    } else if (name == "wave_heat") {
        finish_ph1d(m, coupled_wave_heat(p.at("rho"), p.at("T"), p.at("r")));
    } else if (name == "feedback") {
        double nn = p.at("n");
        if (nn != std::floor(nn) || nn < 1) throw Error(ErrorCode::usage, "n must be a positive integer");
        const Index n = Index(nn);
        Mat A0 = p.at("a0") * Mat::Identity(n, n);
        Mat B0 = p.at("b0") * Mat::Ones(n, 1);
        Mat K = p.at("k") * Mat::Identity(1, 1);
        m.system = feedback_system(A0, B0, K);
        m.initial_x1 = Vec::Ones(n);
    } else if (name == "impedance") {
        Mat L = p.at("l") * Mat::Identity(1, 1), K0 = p.at("k0") * Mat::Identity(1, 1);
        Mat G = p.at("g") * Mat::Identity(1, 1);
        m.system = impedance_construct(L, K0, G).system;
        m.initial_x1 = Vec::Ones(2);
        m.initial_x1(1) = 0.5;
    } else if (name == "stokes") {
        const double alpha = p.at("alpha");
        if (!(alpha > 0.0)) throw Error(ErrorCode::usage, "alpha must be positive");
        m.stokes = stokes_mac_assemble(grid_size(p, 3), alpha, PressureGauge::pinned);
        m.system = m.stokes->system;
        m.initial_x1 = stokes_stream_velocity(*m.stokes, [](double x, double y) {
            double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
            return sx * sx * sy * sy;
        });
    } else if (name == "counter") {
        m.pencil.E = Mat::Zero(2, 2);
        m.pencil.E(0, 0) = p.at("e11");
        m.pencil.E(0, 1) = p.at("e12");
        m.pencil.A = Mat::Zero(2, 2);
        m.pencil.A(0, 1) = -1.0;
        m.pencil.A(1, 0) = 1.0;
        m.pencil.Q = Mat::Zero(2, 2);
        m.pencil.Q(1, 0) = p.at("q21");
        m.pencil.Q(1, 1) = p.at("q22");
        m.pencil.n1 = 1;
        return m;
    }
    m.pencil = m.system->pencil();
    return m;
}

}  // namespace dhdae
