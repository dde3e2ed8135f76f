#include "dhdae/saddle.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Eigenvalues>

#include "dhdae/reduction.hpp"

namespace dhdae {

Mat SaddleSystem::block_operator() const {
    const Index v = nv(), u = nu();
    Mat a = Mat::Zero(v + u, v + u);
    a.topLeftCorner(v, v) = A0;
    a.topRightCorner(v, u) = B0;
    a.bottomLeftCorner(u, v) = -B0.adjoint();
    a.bottomRightCorner(u, u) = -D0;
    return a;
}

void SaddleSystem::validate(double tol) const {
    require_square(A0, "A0");
    require_square(D0, "D0");
    require_square(MX, "MX");
    require_square(MV, "MV");
    const Index v = nv(), u = nu();
    if (B0.rows() != v || D0.rows() != u || MX.rows() != v || MV.rows() != v)
        throw Error(ErrorCode::shape, "saddle blocks do not conform");
    if (!check_dissipative(A0, tol)) throw Error(ErrorCode::not_dissipative, "A0 is not dissipative");
    if (!check_dissipative(-D0, tol)) throw Error(ErrorCode::not_dissipative, "D0 is not accretive");
    for (const Mat* m : {&MX, &MV}) {
        double s = spectral_norm(*m);
        if ((*m - m->adjoint()).cwiseAbs().maxCoeff() > tol * s || lambda_min_hermitian(*m) <= tol * s)
            throw Error(ErrorCode::not_coercive, "mass matrices must be Hermitian positive definite");
    }
}

double garding_constant(const SaddleSystem& sys) {
    sys.validate();
    Mat lhs = hermitian_part(sys.MX - hermitian_part(sys.A0));
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(lhs, hermitian_part(sys.MV), Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) throw Error(ErrorCode::numeric, "generalized eigensolver failed");
    double a = ges.eigenvalues()(0);
    if (!(a > 0.0)) throw Error(ErrorCode::not_coercive, "Garding inequality fails");
    return a;
}

double closed_range_bound(const SaddleSystem& sys) {
    sys.validate();
    if (sys.nu() == 0) return std::numeric_limits<double>::infinity();
    return sigma_min_injective(inverse_sqrt_hpd(sys.MV) * sys.B0);
}

SchurG1Result schur_G1(const SaddleSystem& sys, const Tolerances& tol) {
    sys.validate();
    SchurG1Result r;
    Mat shifted = sys.MV - sys.A0;
    if (!is_invertible(shifted, tol.inv)) throw Error(ErrorCode::not_invertible, "MV - A0 is singular");
    r.G1 = sys.B0.adjoint() * shifted.partialPivLu().solve(sys.B0) + sys.D0;
    r.invertible = is_invertible(r.G1, tol.inv);
    r.accretivity = lambda_min_hermitian(r.G1);
    return r;
}

bool shifted_block_invertible(const SaddleSystem& sys, const Tolerances& tol) {
    sys.validate();
    const Index v = sys.nv(), u = sys.nu();
    Mat m(v + u, v + u);
    m.topLeftCorner(v, v) = sys.MV - sys.A0;
    m.topRightCorner(v, u) = -sys.B0;
    m.bottomLeftCorner(u, v) = sys.B0.adjoint();
    m.bottomRightCorner(u, u) = sys.D0;
    return is_invertible(m, tol.inv);
}

InfSupConstants infsup_constants(const SaddleSystem& sys) {
    sys.validate();
    InfSupConstants c;
    c.gamma = closed_range_bound(sys);
    Mat raw = sys.nu() > 0 ? null_space(sys.B0.adjoint(), 1e-12) : Mat(Mat::Identity(sys.nv(), sys.nv()));
    Mat Z = metric_orthonormalize(raw, hermitian_part(sys.MV));
    c.kernel_dim = Z.cols();
    if (c.kernel_dim == 0) {
        c.alpha = std::numeric_limits<double>::infinity();
        return c;
    }
    Mat compressed = Z.adjoint() * sys.A0 * Z;
    c.alpha = std::min(sigma_min_injective(compressed), sigma_min_injective(compressed.adjoint()));
    return c;
}

namespace {

struct MacIndex {
    Index N;
    Index nu() const { return (N - 1) * N; }
    Index nvel() const { return 2 * (N - 1) * N; }
    Index u(Index i, Index j) const { return i + (N - 1) * j; }       // face ((i+1)h, (j+1/2)h)
    Index v(Index i, Index j) const { return nu() + i + N * j; }      // face ((i+1/2)h, (j+1)h)
    Index p(Index i, Index j) const { return i + N * j; }
};

}  // namespace

StokesMac stokes_mac_assemble(Index N, double alpha, PressureGauge gauge) {
    if (N < 3) throw Error(ErrorCode::usage, "MAC grid needs N >= 3");
    if (!(alpha > 0.0)) throw Error(ErrorCode::usage, "viscosity must be positive");
    const MacIndex ix{N};
    const double h = 1.0 / double(N), h2 = h * h;
    const Index nvel = ix.nvel(), np = N * N;

    Mat G = Mat::Zero(nvel, np);
    for (Index j = 0; j < N; ++j)
        for (Index i = 0; i + 1 < N; ++i) {
            G(ix.u(i, j), ix.p(i + 1, j)) = 1.0 / h;
            G(ix.u(i, j), ix.p(i, j)) = -1.0 / h;
        }
    for (Index j = 0; j + 1 < N; ++j)
        for (Index i = 0; i < N; ++i) {
            G(ix.v(i, j), ix.p(i, j + 1)) = 1.0 / h;
            G(ix.v(i, j), ix.p(i, j)) = -1.0 / h;
        }

    // Five point Laplacian; walls parallel to a component use the reflected ghost value.
    Mat L = Mat::Zero(nvel, nvel);
    for (Index j = 0; j < N; ++j)
        for (Index i = 0; i + 1 < N; ++i) {
            Index r = ix.u(i, j);
            L(r, r) = -4.0 / h2;
            if (i > 0) L(r, ix.u(i - 1, j)) = 1.0 / h2;
            if (i + 2 < N) L(r, ix.u(i + 1, j)) = 1.0 / h2;
            if (j > 0) L(r, ix.u(i, j - 1)) = 1.0 / h2;
            else L(r, r) -= 1.0 / h2;
            if (j + 1 < N) L(r, ix.u(i, j + 1)) = 1.0 / h2;
            else L(r, r) -= 1.0 / h2;
        }
    for (Index j = 0; j + 1 < N; ++j)
        for (Index i = 0; i < N; ++i) {
            Index r = ix.v(i, j);
            L(r, r) = -4.0 / h2;
            if (j > 0) L(r, ix.v(i, j - 1)) = 1.0 / h2;
            if (j + 2 < N) L(r, ix.v(i, j + 1)) = 1.0 / h2;
            if (i > 0) L(r, ix.v(i - 1, j)) = 1.0 / h2;
            else L(r, r) -= 1.0 / h2;
            if (i + 1 < N) L(r, ix.v(i + 1, j)) = 1.0 / h2;
            else L(r, r) -= 1.0 / h2;
        }

    Mat gauge_basis;
    switch (gauge) {
        case PressureGauge::none: gauge_basis = Mat::Identity(np, np); break;
        case PressureGauge::pinned: gauge_basis = Mat::Identity(np, np).rightCols(np - 1); break;
        case PressureGauge::zero_mean: gauge_basis = null_space(Mat::Ones(1, np), 1e-12); break;
    }

    StokesMac mac;
    mac.N = N;
    mac.n_u = ix.nu();
    mac.n_v = nvel - ix.nu();
    mac.n_p = gauge_basis.cols();
    mac.divergence = -G.transpose();
    mac.saddle.A0 = alpha * L;
    mac.saddle.B0 = -G * gauge_basis;
    mac.saddle.D0 = Mat::Zero(mac.n_p, mac.n_p);
    mac.saddle.MX = Mat::Identity(nvel, nvel);
    mac.saddle.MV = Mat::Identity(nvel, nvel) - L;
    mac.system = BlockDhdae::make(Mat::Identity(nvel, nvel), Mat::Identity(nvel, nvel),
                                  Mat::Identity(mac.n_p, mac.n_p), mac.saddle.block_operator());
    return mac;
}

void stokes_add_convection(StokesMac& mac, const Mat& C) {
    if (C.rows() != mac.saddle.nv() || C.cols() != mac.saddle.nv())
        throw Error(ErrorCode::shape, "convection must act on the velocity unknowns");
    mac.saddle.A0 += (C - C.adjoint()) / 2.0;
    const Index nvel = mac.saddle.nv();
    mac.system = BlockDhdae::make(Mat::Identity(nvel, nvel), Mat::Identity(nvel, nvel),
                                  Mat::Identity(mac.n_p, mac.n_p), mac.saddle.block_operator());
}

Vec stokes_stream_velocity(const StokesMac& mac, const std::function<double(double, double)>& psi) {
    const Index N = mac.N;
    const MacIndex ix{N};
    const double h = 1.0 / double(N);
    auto node = [&](Index i, Index j) {
        if (i == 0 || j == 0 || i == N || j == N) return 0.0;
        return psi(i * h, j * h);
    };
    Vec x = Vec::Zero(ix.nvel());
    for (Index j = 0; j < N; ++j)
        for (Index i = 0; i + 1 < N; ++i) x(ix.u(i, j)) = (node(i + 1, j + 1) - node(i + 1, j)) / h;
    for (Index j = 0; j + 1 < N; ++j)
        for (Index i = 0; i < N; ++i) x(ix.v(i, j)) = -(node(i + 1, j + 1) - node(i, j + 1)) / h;
    return x;
}

}  // namespace dhdae
