#include "dhdae/reduction.hpp"

#include <cmath>
#include <string>

namespace dhdae {

namespace {

double rel_scale(const Mat& m) {
    double s = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
    return s > 0.0 ? s : 1.0;
}

}  // namespace

ReducedSystem schur_reduce(const BlockDhdae& sys, const Tolerances& tol) {
    const Mat A22 = sys.A22();
    if (sys.n2() > 0 && !is_invertible(A22, tol.inv))
        throw Error(ErrorCode::not_invertible, "A22 is not invertible; use the subspace reduction");
    ReducedSystem red;
    red.inner_metric = sys.E1().adjoint() * sys.Q1();
    const Mat E1inv = sys.E1().inverse();
    if (sys.n2() == 0) {
        red.Ared = E1inv * sys.A11() * sys.Q1();
        red.x2_map = Mat::Zero(0, sys.n1());
        return red;
    }
    Eigen::PartialPivLU<Mat> lu(A22);
    const Mat a22inv_a21 = lu.solve(sys.A21());
    red.Ared = E1inv * (sys.A11() - sys.A12() * a22inv_a21) * sys.Q1();
    red.x2_map = -sys.Q2().inverse() * a22inv_a21 * sys.Q1();
    require_finite(red.Ared, "reduced generator");

    Mat residual = sys.A21() * sys.Q1() + A22 * sys.Q2() * red.x2_map;
    double scale = rel_scale(sys.A21() * sys.Q1());
    if (residual.cwiseAbs().maxCoeff() > 1e-10 * scale * std::max<double>(1.0, double(sys.n2())))
        throw Error(ErrorCode::numeric, "constraint residual of the x2 map is too large");
    return red;
}

Vec recover_x2(const ReducedSystem& red, const Vec& x1) {
    if (x1.size() != red.n1()) throw Error(ErrorCode::shape, "x1 has wrong length");
    return red.x2_map * x1;
}

Mat metric_orthonormalize(const Mat& vectors, const Mat& metric, double tol) {
    const Mat M = hermitian_part(metric);
    Mat q = vectors;
    Mat mq(q.rows(), q.cols());  // M q_i for the accepted columns
    const Index m = q.cols();
    Index kept = 0;
    for (Index j = 0; j < m; ++j) {
        Vec v = q.col(j);
        double n0 = std::sqrt(std::max(0.0, v.dot(M * v).real()));
        for (int pass = 0; pass < 2; ++pass)
            for (Index i = 0; i < kept; ++i) v -= mq.col(i).dot(v) * q.col(i);
        Vec mv = M * v;
        double nv = std::sqrt(std::max(0.0, v.dot(mv).real()));
        if (nv <= tol * std::max(n0, 1e-300)) continue;
        q.col(kept) = v / nv;
        mq.col(kept++) = mv / nv;
    }
    return q.leftCols(kept);
}

Mat SubspaceReducedSystem::generator_x1() const {
    if (basis.rows() != basis.cols()) throw Error(ErrorCode::shape, "X0 is a proper subspace of X1");
    return basis * Ared_coords * basis.adjoint() * inner_metric;
}

SubspaceReducedSystem subspace_reduce(const BlockDhdae& sys, const Tolerances& tol) {
    const Index n1 = sys.n1(), n2 = sys.n2();
    const Mat A22 = sys.A22();
    const double a_scale = spectral_norm(sys.A());
    const bool a22_zero = n2 == 0 || spectral_norm(A22) <= tol.inv * a_scale;
    const bool a22_inv = n2 > 0 && is_invertible(A22, tol.inv);
    if (!a22_zero && !a22_inv)
        throw Error(ErrorCode::not_reducible, "A22 is singular but not zero; mixed constraints are not supported");

    SubspaceReducedSystem out;
    out.inner_metric = hermitian_part(sys.E1().adjoint() * sys.Q1());
    const Mat C = sys.A21() * sys.Q1();
    const Mat B = sys.A12() * sys.Q2();
    const Mat E1inv = sys.E1().inverse();

    Mat raw = (a22_zero && n2 > 0) ? null_space(C, tol.inv) : Mat(Mat::Identity(n1, n1));
    out.basis = metric_orthonormalize(raw, out.inner_metric);
    const Mat& V = out.basis;
    const Index m = V.cols();

    if (n2 == 0) {
        out.multiplier_map = Mat::Zero(0, m);
    } else if (a22_inv) {
        out.multiplier_map = -(A22 * sys.Q2()).partialPivLu().solve(C * V);
    } else {
        // No nonzero y1 in X0 with A12 Q2 x2 = E1 y1.
        Mat both(n1, m + n2);
        both.leftCols(m) = sys.E1() * V;
        both.rightCols(n2) = B;
        if (m > 0 && numerical_rank(both, tol.inv) != m + numerical_rank(B, tol.inv))
            throw Error(ErrorCode::not_reducible, "A12 Q2 hits E1 X0; the subspace generator is not well defined");
        // Choose x2 so that E1^{-1}(A11 Q1 v + A12 Q2 x2) stays in ker(C).
        Mat S = C * E1inv * B;
        Mat rhs = -C * E1inv * sys.A11() * sys.Q1() * V;
        Mat mu = pseudo_inverse(S, tol.inv) * rhs;
        double res = (S * mu - rhs).norm();
        if (res > 1e-9 * std::max(1.0, rhs.norm()))
            throw Error(ErrorCode::not_reducible, "generator leaves X0 for some basis direction");
        out.multiplier_map = mu;
    }
    Mat W = E1inv * (sys.A11() * sys.Q1() * V + B * out.multiplier_map);
    out.Ared_coords = V.adjoint() * out.inner_metric * W;
    if (m > 0) {
        double drift = (W - V * out.Ared_coords).norm();
        if (drift > 1e-9 * std::max(1.0, W.norm()))
            throw Error(ErrorCode::numeric, "reduced generator does not leave X0 invariant");
    }
    return out;
}

Mat output_nulling_generator(const Mat& A0, const Mat& B0, const Tolerances& tol) {
    require_square(A0, "A0");
    if (B0.rows() != A0.rows()) throw Error(ErrorCode::shape, "B0 row count must match A0");
    if (B0.cols() == 0) return A0;
    if (numerical_rank(B0, tol.inv) < B0.cols())
        throw Error(ErrorCode::not_invertible, "B0 does not have full column rank");
    Mat g = B0.adjoint() * B0;
    return A0 - B0 * g.ldlt().solve(B0.adjoint() * A0);
}

BlockDhdae feedback_system(const Mat& A0, const Mat& B0, const Mat& K, const Tolerances& tol) {
    require_square(A0, "A0");
    require_square(K, "K");
    const Index n = A0.rows(), m = B0.cols();
    if (B0.rows() != n || K.rows() != m) throw Error(ErrorCode::shape, "feedback blocks do not conform");
    if (!check_dissipative(A0, tol.sym)) throw Error(ErrorCode::not_dissipative, "A0 is not dissipative");
    if (!check_dissipative(-K, tol.sym)) throw Error(ErrorCode::not_dissipative, "K + K^H is not positive semidefinite");
    Mat A = Mat::Zero(n + 2 * m, n + 2 * m);
    A.block(0, 0, n, n) = A0;
    A.block(0, n, n, m) = B0;
    A.block(n, 0, m, n) = -B0.adjoint();
    A.block(n, n + m, m, m).setIdentity();
    A.block(n + m, n, m, m) = -Mat::Identity(m, m);
    A.block(n + m, n + m, m, m) = -K;
    return BlockDhdae::make(Mat::Identity(n, n), Mat::Identity(n, n), Mat::Identity(2 * m, 2 * m), A, tol);
}

Mat feedback_reduce(const Mat& A0, const Mat& B0, const Mat& K, const Tolerances& tol) {
    return schur_reduce(feedback_system(A0, B0, K, tol), tol).Ared;
}

ImpedanceResult impedance_construct(const Mat& L, const Mat& K0, const Mat& G, const Tolerances& tol) {
    const Index nh = L.rows(), nv = L.cols(), nu = K0.rows();
    if (K0.cols() != nv) throw Error(ErrorCode::shape, "K0 must act on the same space as L");
    if (G.rows() != nv || G.cols() != nv) throw Error(ErrorCode::shape, "G must be square on the domain of L");
    if (!check_dissipative(G, tol.sym)) throw Error(ErrorCode::not_dissipative, "G is not dissipative");
    const Index n1 = nh + nv, n = n1 + nu;
    Mat A = Mat::Zero(n, n);
    A.block(0, nh, nh, nv) = -L;
    A.block(nh, 0, nv, nh) = L.adjoint();
    A.block(nh, nh, nv, nv) = G;
    A.block(nh, n1, nv, nu) = K0.adjoint();
    A.block(n1, nh, nu, nv) = -K0;
    A.block(n1, n1, nu, nu) = -Mat::Identity(nu, nu);
    auto sys = BlockDhdae::make(Mat::Identity(n1, n1), Mat::Identity(n1, n1), Mat::Identity(nu, nu), A, tol);
    Mat target = Mat::Zero(n1, n1);
    target.block(0, nh, nh, nv) = -L;
    target.block(nh, 0, nv, nh) = L.adjoint();
    target.block(nh, nh, nv, nv) = G - K0.adjoint() * K0;
    Mat ared = schur_reduce(sys, tol).Ared;
    return {std::move(sys), std::move(ared), std::move(target)};
}

}  // namespace dhdae
