#include "dhdae/ph1d.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace dhdae {

namespace {

constexpr int kSamplePoints = 11;

double sample_point(int k) { return double(k) / double(kSamplePoints - 1); }

bool is_zero(Complex z) { return z == Complex(0.0); }

}  // namespace

Mat Ph1dSystem::E1diag(double zeta) const {
    Mat m = Mat::Zero(n1, n1);
    for (Index i = 0; i < n1; ++i) m(i, i) = e1[i](zeta);
    return m;
}

Mat Ph1dSystem::Q1diag(double zeta) const {
    Mat m = Mat::Zero(n1, n1);
    for (Index i = 0; i < n1; ++i) m(i, i) = q[i](zeta);
    return m;
}

Mat Ph1dSystem::Q2diag(double zeta) const {
    Mat m = Mat::Zero(n2, n2);
    for (Index i = 0; i < n2; ++i) m(i, i) = q[n1 + i](zeta);
    return m;
}

Mat Ph1dSystem::effort_mass(double zeta) const {
    Mat m = Mat::Zero(n(), n());
    for (Index i = 0; i < n1; ++i) m(i, i) = e1[i](zeta) / q[i](zeta);
    return m;
}

void Ph1dSystem::validate(double tol) const {
    const Index nn = n();
    if (n1 <= 0 || n2 < 0) throw Error(ErrorCode::shape, "need n1 > 0 and n2 >= 0");
    if (P1.rows() != nn || P1.cols() != nn) throw Error(ErrorCode::shape, "P1 must be n x n");
    if (P1.imag().cwiseAbs().maxCoeff() > 0.0) throw Error(ErrorCode::usage, "P1 must be real");
    if ((P1 - P1.transpose()).cwiseAbs().maxCoeff() > tol * P1.cwiseAbs().maxCoeff())
        throw Error(ErrorCode::usage, "P1 must be symmetric");
    if (!is_invertible(P1, 1e-12)) throw Error(ErrorCode::not_invertible, "P1 is not invertible");
    if (G0.rows() != nn || G0.cols() != nn) throw Error(ErrorCode::shape, "G0 must be n x n");
    if (WB.rows() != nn || WB.cols() != 2 * nn) throw Error(ErrorCode::shape, "W_B must be n x 2n");
    if (numerical_rank(WB, 1e-12) != nn) throw Error(ErrorCode::shape, "W_B does not have full row rank");
    if (Index(e1.size()) != n1 || Index(q.size()) != nn)
        throw Error(ErrorCode::shape, "coefficient lists must have n1 and n entries");
    for (int k = 0; k < kSamplePoints; ++k) {
        double z = sample_point(k);
        Mat g = G0(z);
        require_finite(g, "G0");
        if (!check_dissipative(g, tol)) throw Error(ErrorCode::not_dissipative, "G0 is not dissipative");
        for (Index i = 0; i < nn; ++i) {
            Complex qi = q[i](z);
            if (!(std::abs(qi) > 0.0) || !std::isfinite(std::abs(qi)))
                throw Error(ErrorCode::not_invertible, "Q coefficient vanishes");
            if (i < n1) {
                Complex eq = std::conj(e1[i](z)) * qi;
                if (!(eq.real() > 0.0) || std::abs(eq.imag()) > tol * std::abs(eq))
                    throw Error(ErrorCode::not_coercive, "E1^H Q1 is not positive");
            }
        }
    }
}

bool check_wb_dissipative(const Mat& P1, const Mat& WB, double tol) {
    const Index n = P1.rows();
    require_square(P1, "P1");
    if (WB.rows() != n || WB.cols() != 2 * n) throw Error(ErrorCode::shape, "W_B must be n x 2n");
    if (numerical_rank(WB, 1e-12) != n) throw Error(ErrorCode::shape, "W_B does not have full row rank");
    Mat K = null_space(WB, 1e-12);
    Mat sigma = block_diag({P1, -P1});
    Mat form = K.adjoint() * sigma * K;
    return lambda_max_hermitian(form) <= tol * spectral_norm(sigma);
}

ShootingResult fundamental_matrix(const Ph1dSystem& sys, Complex s, int steps, double tol) {
    if (steps < 64) throw Error(ErrorCode::usage, "shooting needs at least 64 steps");
    if (!(s.real() > 0.0)) throw Error(ErrorCode::usage, "shooting needs Re s > 0");
    sys.validate();
    const Index n = sys.n();
    const Mat p1inv = sys.P1.inverse();
    auto rhs = [&](double z, const Mat& X) -> Mat { return p1inv * (s * sys.effort_mass(z) - sys.G0(z)) * X; };
    Mat X = Mat::Identity(n, n);
    const double h = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        double z = k * h;
        Mat k1 = rhs(z, X);
        Mat k2 = rhs(z + 0.5 * h, X + 0.5 * h * k1);
        Mat k3 = rhs(z + 0.5 * h, X + 0.5 * h * k2);
        Mat k4 = rhs(z + h, X + h * k3);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!X.allFinite()) throw Error(ErrorCode::numeric, "transfer matrix overflowed");
    ShootingResult out;
    out.Psi = X;
    out.boundary_matrix = sys.WB.leftCols(n) * X + sys.WB.rightCols(n);
    out.det = out.boundary_matrix.determinant();
    auto sv = singular_values(out.boundary_matrix);
    out.sigma_max = sv(0);
    out.sigma_min = sv(sv.size() - 1);
    out.regular = out.sigma_max > 0.0 && out.sigma_min > tol * out.sigma_max;
    return out;
}

namespace {

// Components on nodes get colour 0. Each connected part of the P1 coupling graph starts
// from its lowest index.
std::vector<int> stagger_colours(const Ph1dSystem& sys) {
    const Index n = sys.n();
    std::vector<int> colour(n, -1);
    if (!sys.node_components.empty()) {
        for (Index c = 0; c < n; ++c) colour[c] = 1;
        for (Index c : sys.node_components) {
            if (c < 0 || c >= n) throw Error(ErrorCode::shape, "node component out of range");
            colour[c] = 0;
        }
    } else {
        for (Index start = 0; start < n; ++start) {
            if (colour[start] >= 0) continue;
            colour[start] = 0;
            std::deque<Index> queue{start};
            while (!queue.empty()) {
                Index i = queue.front();
                queue.pop_front();
                for (Index k = 0; k < n; ++k) {
                    if (k == i || is_zero(sys.P1(i, k))) continue;
                    if (colour[k] < 0) {
                        colour[k] = 1 - colour[i];
                        queue.push_back(k);
                    }
                }
            }
        }
    }
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k)
            if (!is_zero(sys.P1(i, k)) && colour[i] == colour[k])
                throw Error(ErrorCode::unsupported, "P1 does not split into node and cell components");
    for (int s = 0; s < kSamplePoints; ++s) {
        Mat g = sys.G0(sample_point(s));
        for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < n; ++k)
                if (colour[i] != colour[k] && std::abs(g(i, k)) > 0.0)
                    throw Error(ErrorCode::unsupported, "G0 couples node and cell components");
    }
    return colour;
}

}  // namespace

std::vector<std::pair<double, Index>> Discretization::grid_dofs(Index comp) const {
    std::vector<std::pair<double, Index>> out;
    const auto& c = comps.at(comp);
    for (std::size_t k = 0; k < c.zeta.size(); ++k) out.emplace_back(c.zeta[k], c.index[k]);
    if (c.on_nodes) {
        for (const auto& b : boundary) {
            Index nz = 0, where = -1;
            for (Index t = 0; t < b.weights.size(); ++t)
                if (!is_zero(b.weights(t))) {
                    ++nz;
                    where = t;
                }
            if (nz == 1 && node_traces[where].first == comp)
                out.emplace_back(node_traces[where].second == 1 ? 1.0 : 0.0, b.index);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vec Discretization::sample_state(const std::vector<std::function<Complex(double)>>& profiles) const {
    if (profiles.size() != comps.size()) throw Error(ErrorCode::shape, "need one profile per component");
    Vec x = Vec::Zero(system.n());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t k = 0; k < comps[c].zeta.size(); ++k) x(comps[c].index[k]) = profiles[c](comps[c].zeta[k]);
    if (!boundary.empty()) {
        Vec traces(node_traces.size());
        for (std::size_t t = 0; t < node_traces.size(); ++t) {
            auto [c, end] = node_traces[t];
            double z = end == 1 ? 1.0 : 0.0;
            traces(t) = q[c](z) * profiles[c](z);
        }
        Mat S(node_traces.size(), boundary.size());
        for (std::size_t b = 0; b < boundary.size(); ++b) S.col(b) = boundary[b].weights;
        Vec xi = pseudo_inverse(S, 1e-12) * traces;
        for (std::size_t b = 0; b < boundary.size(); ++b) x(boundary[b].index) = xi(b);
    }
    return x;
}

Discretization discretize_full(const Ph1dSystem& sys, Index N, const Tolerances& tol) {
    if (N < 4) throw Error(ErrorCode::usage, "grid needs N >= 4 interior nodes");
    sys.validate(tol.sym);
    const Index n = sys.n(), M = N + 1;
    const double h = 1.0 / double(M);
    const auto colour = stagger_colours(sys);

    // Trace positions in [e(1); e(0)].
    std::vector<std::pair<Index, int>> a_tr, b_tr;
    for (int end : {1, 0})
        for (Index c = 0; c < n; ++c) (colour[c] == 0 ? a_tr : b_tr).emplace_back(c, end);
    auto trace_pos = [n](std::pair<Index, int> t) { return t.second == 1 ? t.first : n + t.first; };

    const Mat K = null_space(sys.WB, 1e-12);
    Mat Ka(a_tr.size(), K.cols()), Kb(b_tr.size(), K.cols());
    for (std::size_t t = 0; t < a_tr.size(); ++t) Ka.row(t) = K.row(trace_pos(a_tr[t]));
    for (std::size_t t = 0; t < b_tr.size(); ++t) Kb.row(t) = K.row(trace_pos(b_tr[t]));
    const Mat S = echelon_range_basis(Ka, 1e-10);
    const Mat F = Kb * pseudo_inverse(Ka, 1e-10);  // cell traces from node traces
    const Index p = S.cols();

    // Full effort layout: node components on M+1 nodes, cell components on M cells.
    std::vector<Index> fe_start(n);
    Index nfe = 0;
    for (Index c = 0; c < n; ++c) {
        fe_start[c] = nfe;
        nfe += colour[c] == 0 ? M + 1 : M;
    }
    auto fe = [&](Index c, Index j) { return fe_start[c] + j; };
    auto fe_trace = [&](std::pair<Index, int> t) { return fe(t.first, t.second == 1 ? M : 0); };

    Mat Afe = Mat::Zero(nfe, nfe);
    auto cell_trace_row = [&](Index row, Index k, int end, Complex coef) {
        for (std::size_t bt = 0; bt < b_tr.size(); ++bt) {
            if (b_tr[bt].first != k || b_tr[bt].second != end) continue;
            for (std::size_t at = 0; at < a_tr.size(); ++at)
                if (!is_zero(F(bt, at))) Afe(row, fe_trace(a_tr[at])) += coef * F(bt, at);
        }
    };
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < n; ++k) {
            const Complex pk = sys.P1(i, k);
            if (is_zero(pk)) continue;
            if (colour[i] == 0) {
                for (Index j = 0; j <= M; ++j) {
                    Index row = fe(i, j);
                    if (j < M) Afe(row, fe(k, j)) += pk / h;
                    else cell_trace_row(row, k, 1, pk / h);
                    if (j > 0) Afe(row, fe(k, j - 1)) -= pk / h;
                    else cell_trace_row(row, k, 0, -pk / h);
                }
            } else {
                for (Index j = 0; j < M; ++j) {
                    Afe(fe(i, j), fe(k, j + 1)) += pk / h;
                    Afe(fe(i, j), fe(k, j)) -= pk / h;
                }
            }
        }
    }
    for (Index j = 0; j <= M; ++j) {
        const double z = j * h, w = (j == 0 || j == M) ? 0.5 : 1.0;
        const Mat g = sys.G0(z);
        for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < n; ++k)
                if (colour[i] == 0 && colour[k] == 0 && !is_zero(g(i, k))) Afe(fe(i, j), fe(k, j)) += w * g(i, k);
    }
    for (Index j = 0; j < M; ++j) {
        const Mat g = sys.G0((j + 0.5) * h);
        for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < n; ++k)
                if (colour[i] == 1 && colour[k] == 1 && !is_zero(g(i, k))) Afe(fe(i, j), fe(k, j)) += g(i, k);
    }

    // Slots: X1 interior values, X1 boundary dofs, X2 interior values, X2 boundary dofs.
    auto placeholder = BlockDhdae::make(Mat::Identity(1, 1), Mat::Identity(1, 1), Mat(0, 0), Mat::Zero(1, 1));
    Discretization out{placeholder, 0, 0.0, {}, {}, {}, {}};
    out.N = N;
    out.h = h;
    out.q = sys.q;
    out.node_traces = a_tr;
    out.comps.resize(n);
    std::vector<bool> xi_in_x1(p, false);
    for (Index b = 0; b < p; ++b)
        for (std::size_t t = 0; t < a_tr.size(); ++t)
            if (!is_zero(S(t, b)) && a_tr[t].first < sys.n1) xi_in_x1[b] = true;

    Index slot = 0;
    std::vector<Index> xi_slot(p);
    std::vector<std::pair<Index, Index>> interior_fe;  // (slot, fe index)
    std::vector<Complex> slot_mass, slot_q;
    for (int block = 0; block < 2; ++block) {
        const bool x1 = block == 0;
        for (Index c = 0; c < n; ++c) {
            if ((c < sys.n1) != x1) continue;
            auto& comp = out.comps[c];
            comp.on_nodes = colour[c] == 0;
            comp.in_x1 = x1;
            Index lo = comp.on_nodes ? 1 : 0, hi = comp.on_nodes ? M - 1 : M - 1;
            for (Index j = lo; j <= hi; ++j) {
                double z = comp.on_nodes ? j * h : (j + 0.5) * h;
                comp.zeta.push_back(z);
                comp.index.push_back(slot);
                interior_fe.emplace_back(slot, fe(c, j));
                slot_mass.push_back(x1 ? sys.e1[c](z) : Complex(0.0));
                slot_q.push_back(sys.q[c](z));
                ++slot;
            }
        }
        for (Index b = 0; b < p; ++b) {
            if (xi_in_x1[b] != x1) continue;
            xi_slot[b] = slot;
            out.boundary.push_back({slot, x1, S.col(b)});
            slot_mass.push_back(0.0);  // boundary mass block filled below
            slot_q.push_back(1.0);
            ++slot;
        }
    }
    const Index nu = slot;
    Index nx1 = 0;
    for (const auto& c : out.comps)
        if (c.in_x1) nx1 += Index(c.zeta.size());
    for (const auto& b : out.boundary)
        if (b.in_x1) ++nx1;

    Mat T = Mat::Zero(nfe, nu);
    for (auto [s, f] : interior_fe) T(f, s) = 1.0;
    for (Index b = 0; b < p; ++b)
        for (std::size_t t = 0; t < a_tr.size(); ++t)
            if (!is_zero(S(t, b))) T(fe_trace(a_tr[t]), xi_slot[b]) = S(t, b);

    Mat A = T.adjoint() * Afe * T;
    Mat E = Mat::Zero(nu, nu);
    for (Index s = 0; s < nu; ++s) E(s, s) = slot_mass[s];
    // Half-cell mass at the boundary in effort coordinates.
    for (Index b1 = 0; b1 < p; ++b1)
        for (Index b2 = 0; b2 < p; ++b2) {
            Complex m = 0.0;
            for (std::size_t t = 0; t < a_tr.size(); ++t) {
                Index c = a_tr[t].first;
                if (c >= sys.n1) continue;
                double z = a_tr[t].second == 1 ? 1.0 : 0.0;
                m += std::conj(S(t, b1)) * 0.5 * sys.e1[c](z) / sys.q[c](z) * S(t, b2);
            }
            E(xi_slot[b1], xi_slot[b2]) += m;
        }
    Mat Qd = Mat::Zero(nu, nu);
    for (Index s = 0; s < nu; ++s) Qd(s, s) = slot_q[s];

    if (nx1 == 0) throw Error(ErrorCode::unsupported, "discretization has no dynamic unknowns");
    if (nu > nx1 && (E.bottomRows(nu - nx1).cwiseAbs().maxCoeff() > 0.0 || E.rightCols(nu - nx1).cwiseAbs().maxCoeff() > 0.0))
        throw Error(ErrorCode::unsupported, "boundary family mixes dynamic and algebraic traces");
    try {
        out.system = BlockDhdae::make(E.topLeftCorner(nx1, nx1), Qd.topLeftCorner(nx1, nx1),
                                      Qd.bottomRightCorner(nu - nx1, nu - nx1), A, tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::not_dissipative)
            throw Error(ErrorCode::not_dissipative, "discretized operator is not dissipative; check W_B");
        throw;
    }
    return out;
}

BlockDhdae discretize(const Ph1dSystem& sys, Index N, const Tolerances& tol) {
    return discretize_full(sys, N, tol).system;
}

Ph1dSystem second_order_lift(const Mat& P2, const Mat& P11, const Mat& P0, const Mat& WBtilde) {
    require_square(P2, "P2");
    const Index m = P2.rows();
    if (P11.rows() != m || P11.cols() != m || P0.rows() != m || P0.cols() != m)
        throw Error(ErrorCode::shape, "P11 and P0 must match P2");
    if (WBtilde.rows() != 2 * m || WBtilde.cols() != 4 * m) throw Error(ErrorCode::shape, "W~_B must be 2m x 4m");
    const double scale = std::max(1.0, P2.cwiseAbs().maxCoeff());
    if ((P2 + P2.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw Error(ErrorCode::usage, "P2 must be skew-symmetric");
    if (!is_invertible(P2, 1e-12)) throw Error(ErrorCode::not_invertible, "P2 is not invertible");
    if ((P11 - P11.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, P11.cwiseAbs().maxCoeff()))
        throw Error(ErrorCode::usage, "P11 must be symmetric");
    if (!check_dissipative(P0)) throw Error(ErrorCode::not_dissipative, "P0 is not dissipative");
    const Mat I = Mat::Identity(m, m), Z = Mat::Zero(m, m);
    const Mat p2inv = P2.inverse();
    Ph1dSystem sys;
    sys.n1 = m;
    sys.n2 = m;
    sys.P1 = Mat::Zero(2 * m, 2 * m);
    sys.P1 << P11, I, I, Z;
    Mat g = Mat::Zero(2 * m, 2 * m);
    g.topLeftCorner(m, m) = P0;
    g.bottomRightCorner(m, m) = -p2inv;
    sys.G0 = MatrixField(g);
    sys.WB = WBtilde * block_diag({I, p2inv, I, p2inv});
    sys.e1.assign(m, ScalarField(1.0));
    sys.q.assign(2 * m, ScalarField(1.0));
    return sys;
}

Ph1dSystem sturm_liouville_system(ScalarField e1, ScalarField r, ScalarField g0, ScalarField q2, double alpha1,
                                  double beta1, double alpha2, double beta2) {
    Ph1dSystem sys;
    sys.n1 = 1;
    sys.n2 = 1;
    sys.P1 = Mat::Zero(2, 2);
    sys.P1(0, 1) = sys.P1(1, 0) = 1.0;
    sys.G0 = MatrixField::callable(
        [r, g0](double z) {
            Mat g = Mat::Zero(2, 2);
            g(0, 0) = -g0(z);
            g(1, 1) = -r(z);
            return g;
        },
        2, 2);
    sys.WB = Mat::Zero(2, 4);
    sys.WB(0, 0) = alpha1;
    sys.WB(0, 1) = beta1;
    sys.WB(1, 2) = alpha2;
    sys.WB(1, 3) = beta2;
    sys.e1 = {std::move(e1)};
    sys.q = {ScalarField(1.0), std::move(q2)};
    return sys;
}

SturmLiouvilleForm sturm_liouville_form(const Ph1dSystem& sys) {
    sys.validate();
    if (sys.n1 != 1 || sys.n2 != 1) throw Error(ErrorCode::unsupported, "expected one dynamic and one algebraic component");
    if (sys.P1(0, 0) != Complex(0.0) || sys.P1(1, 1) != Complex(0.0) || sys.P1(0, 1) != Complex(1.0))
        throw Error(ErrorCode::unsupported, "expected P1 = [[0, 1], [1, 0]]");
    MatrixField g0 = sys.G0;
    SturmLiouvilleForm form;
    form.mass = sys.e1[0];
    form.flux = ScalarField::callable([g0](double z) { return -1.0 / g0(z)(1, 1); });
    form.potential = ScalarField::callable([g0](double z) { return -g0(z)(0, 0); });
    form.WB = sys.WB;
    return form;
}

namespace {

// Boundary closure at one end: Dirichlet, or flux = kappa * x at that end.
struct EndCondition {
    bool dirichlet = false;
    Complex kappa = 0.0;
};

EndCondition end_condition(const Mat& WB, int row, Index col) {
    Complex a = WB(row, col), b = WB(row, col + 1);
    Index other = col == 0 ? 2 : 0;
    if (!is_zero(WB(row, other)) || !is_zero(WB(row, other + 1)))
        throw Error(ErrorCode::unsupported, "boundary rows must each act on a single end");
    if (is_zero(b)) return {true, 0.0};
    return {false, -a / b};
}

}  // namespace

std::vector<double> SturmLiouvilleForm::free_nodes(Index N) const {
    const Index M = N + 1;
    const double h = 1.0 / double(M);
    auto right = end_condition(WB, 0, 0), left = end_condition(WB, 1, 2);
    std::vector<double> out;
    for (Index j = left.dirichlet ? 1 : 0; j <= (right.dirichlet ? M - 1 : M); ++j) out.push_back(j * h);
    return out;
}

Mat SturmLiouvilleForm::operator_matrix(Index N) const {
    const Index M = N + 1;
    const double h = 1.0 / double(M);
    auto right = end_condition(WB, 0, 0), left = end_condition(WB, 1, 2);
    const Index j0 = left.dirichlet ? 1 : 0, j1 = right.dirichlet ? M - 1 : M;
    const Index m = j1 - j0 + 1;
    Mat op = Mat::Zero(m, m);
    for (Index j = j0; j <= j1; ++j) {
        const Index row = j - j0;
        const double z = j * h;
        const bool edge = j == 0 || j == M;
        const double w = edge ? 0.5 : 1.0;
        // Flux through the right face of node j minus flux through its left face.
        if (j < M) {
            Complex f = flux((j + 0.5) * h) / (h * h);
            op(row, row) -= f;
            if (j + 1 <= j1) op(row, row + 1) += f;
        } else {
            op(row, row) += right.kappa / h;
        }
        if (j > 0) {
            Complex f = flux((j - 0.5) * h) / (h * h);
            op(row, row) -= f;
            if (j - 1 >= j0) op(row, row - 1) += f;
        } else {
            op(row, row) -= left.kappa / h;
        }
        op(row, row) -= w * potential(z);
        op.row(row) /= w * mass(z);
    }
    return op;
}

Ph1dSystem coupled_wave_heat(double rho, double T, double r) {
    if (!(rho > 0.0) || !(T > 0.0) || !(r > 0.0)) throw Error(ErrorCode::usage, "rho, T and r must be positive");
    Ph1dSystem sys;
    sys.n1 = 3;
    sys.n2 = 1;
    sys.P1 = Mat::Zero(4, 4);
    sys.P1(0, 1) = sys.P1(1, 0) = 1.0;
    sys.P1(2, 3) = sys.P1(3, 2) = 1.0;
    Mat g = Mat::Zero(4, 4);
    g(3, 3) = -r;
    sys.G0 = MatrixField(g);
    sys.WB = Mat::Zero(4, 8);
    sys.WB(0, 0) = 1.0;
    sys.WB(0, 6) = -1.0;
    sys.WB(1, 1) = 1.0;
    sys.WB(1, 7) = -1.0;
    sys.WB(2, 4) = 1.0;
    sys.WB(3, 3) = 1.0;
    sys.e1.assign(3, ScalarField(1.0));
    // The last entry of Q is taken as 1 so that Q2 is invertible.
    sys.q = {ScalarField(1.0 / rho), ScalarField(T), ScalarField(1.0), ScalarField(1.0)};
    return sys;
}

}  // namespace dhdae
