#include "dhdae/pencil.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "dhdae/kernels.hpp"

namespace dhdae {

namespace {

std::string dims(const Mat& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

BlockDhdae BlockDhdae::make(Mat E1, Mat Q1, Mat Q2, Mat A, const Tolerances& tol) {
    require_square(E1, "E1");
    require_square(Q1, "Q1");
    require_square(Q2, "Q2");
    require_square(A, "A");
    const Index n1 = E1.rows(), n2 = Q2.rows();
    if (n1 == 0) throw Error(ErrorCode::shape, "n1 must be positive");
    if (Q1.rows() != n1) throw Error(ErrorCode::shape, "Q1 is " + dims(Q1) + ", expected n1 = " + std::to_string(n1));
    if (A.rows() != n1 + n2)
        throw Error(ErrorCode::shape, "A is " + dims(A) + ", expected n = " + std::to_string(n1 + n2));
    require_finite(E1, "E1");
    require_finite(Q1, "Q1");
    require_finite(Q2, "Q2");
    require_finite(A, "A");
    if (!is_invertible(E1, tol.inv)) throw Error(ErrorCode::not_invertible, "E1 is not invertible");
    if (!is_invertible(Q1, tol.inv)) throw Error(ErrorCode::not_invertible, "Q1 is not invertible");
    if (!is_invertible(Q2, tol.inv)) throw Error(ErrorCode::not_invertible, "Q2 is not invertible");
    if (!check_coercive(E1, Q1, tol.psd)) throw Error(ErrorCode::not_coercive, "E1^H Q1 is not Hermitian positive definite");
    if (!check_dissipative(A, tol.sym)) throw Error(ErrorCode::not_dissipative, "A + A^H is not negative semidefinite");
    return BlockDhdae(std::move(E1), std::move(Q1), std::move(Q2), std::move(A));
}

Mat BlockDhdae::E() const {
    Mat e = Mat::Zero(n(), n());
    e.topLeftCorner(n1(), n1()) = E1_;
    return e;
}

Mat BlockDhdae::Q() const { return block_diag({Q1_, Q2_}); }

std::vector<Complex> default_samples() { return {Complex(1.0, 0.0), Complex(1.0, 1.0), Complex(10.0, 0.0)}; }

bool check_dissipative(const Mat& m, double tol) {
    require_square(m, "operator");
    if (m.size() == 0) return true;
    return lambda_max_hermitian(m + m.adjoint()) <= tol * spectral_norm(m);
}

bool check_coercive(const Mat& E1, const Mat& Q1, double tol) {
    require_square(E1, "E1");
    if (Q1.rows() != E1.rows() || Q1.cols() != E1.cols()) throw Error(ErrorCode::shape, "E1 and Q1 differ in shape");
    Mat h = E1.adjoint() * Q1;
    double scale = spectral_norm(h);
    if (scale == 0.0) return false;
    if ((h - h.adjoint()).norm() > tol * scale * std::sqrt(double(h.rows()))) return false;
    return lambda_min_hermitian(h) > tol * scale;
}

double hamiltonian(const BlockDhdae& sys, const Vec& x) {
    if (x.size() != sys.n()) throw Error(ErrorCode::shape, "state has wrong length");
    auto x1 = x.head(sys.n1());
    return (x1.adjoint() * sys.E1().adjoint() * sys.Q1() * x1)(0, 0).real();
}

namespace {

void check_pencil(const Pencil& p) {
    require_square(p.E, "E");
    require_square(p.A, "A");
    require_square(p.Q, "Q");
    if (p.A.rows() != p.E.rows() || p.Q.rows() != p.E.rows()) throw Error(ErrorCode::shape, "pencil blocks differ in size");
    if (p.n1 < 0 || p.n1 > p.E.rows()) throw Error(ErrorCode::shape, "block split out of range");
}

}  // namespace

KernelTests kernel_tests(const Mat& A, Index n1, double tol) {
    require_square(A, "A");
    const Index n = A.rows(), n2 = n - n1;
    KernelTests kt;
    if (n2 == 0) {
        kt.injective_x2 = kt.surjective_x2 = true;
        return kt;
    }
    double scale = spectral_norm(A);
    auto full_col_rank = [&](const Mat& m) {
        if (m.rows() < m.cols()) return false;
        auto s = singular_values(m);
        return scale > 0.0 && s(s.size() - 1) > tol * scale;
    };
    kt.injective_x2 = full_col_rank(A.rightCols(n2));
    kt.surjective_x2 = full_col_rank(A.bottomRows(n2).adjoint());
    return kt;
}

KernelTests kernel_tests(const BlockDhdae& sys, double tol) { return kernel_tests(sys.A(), sys.n1(), tol); }

Mat common_kernel(const std::vector<Mat>& mats, double tol) {
    if (mats.empty()) throw Error(ErrorCode::usage, "common_kernel needs at least one matrix");
    const Index n = mats.front().cols();
    Index rows = 0;
    for (const auto& m : mats) {
        if (m.cols() != n) throw Error(ErrorCode::shape, "common_kernel operands differ in column count");
        rows += m.rows();
    }
    Mat stacked(rows, n);
    rows = 0;
    for (const auto& m : mats) {
        stacked.middleRows(rows, m.rows()) = m;
        rows += m.rows();
    }
    return null_space(stacked, tol);
}

RegularityReport is_regular_sampled(const Pencil& p, const std::vector<Complex>& s, const Tolerances& tol) {
    check_pencil(p);
    if (s.empty()) throw Error(ErrorCode::usage, "empty sample list");
    for (auto z : s)
        if (!(z.real() > 0.0)) throw Error(ErrorCode::usage, "sample points need positive real part");
    const Mat AQ = p.AQ();
    RegularityReport r;
    r.s_values = s;
    auto sweep = kernels::resolvent_sweep(p.E, AQ, s);
    for (const auto& smp : sweep) {
        bool inv = smp.sigma_max > 0.0 && smp.sigma_min > tol.inv * smp.sigma_max;
        r.sigma_min.push_back(smp.sigma_min);
        r.cond.push_back(smp.sigma_min > 0.0 ? smp.sigma_max / smp.sigma_min : std::numeric_limits<double>::infinity());
        r.invertible.push_back(inv);
        r.regular = r.regular || inv;
    }
    r.stacked_sigma_min = sigma_min_injective(vstack(p.E, AQ));
    auto kt = kernel_tests(p.A, p.n1, tol.inv);
    r.injective_x2 = kt.injective_x2;
    r.surjective_x2 = kt.surjective_x2;
    r.common_kernel_dim = common_kernel({p.E, AQ}, tol.inv).cols();
    return r;
}

RegularityReport is_regular_sampled(const BlockDhdae& sys, const std::vector<Complex>& s, const Tolerances& tol) {
    return is_regular_sampled(sys.pencil(), s, tol);
}

double stacked_bound(const Pencil& p) {
    check_pencil(p);
    return sigma_min_injective(vstack(p.E, p.AQ()));
}

double stacked_bound(const BlockDhdae& sys) { return stacked_bound(sys.pencil()); }

JRSplit jr_split(const Mat& A, double tol) {
    require_square(A, "A");
    JRSplit out;
    out.J = (A - A.adjoint()) * 0.5;
    out.R = -(A + A.adjoint()) * 0.5;
    if (lambda_min_hermitian(out.R) < -tol * spectral_norm(A))
        throw Error(ErrorCode::not_dissipative, "dissipative part is not positive semidefinite");
    return out;
}

double jr_bound(const BlockDhdae& sys) {
    auto jr = jr_split(sys.A());
    Mat eq = Mat::Zero(sys.n(), sys.n());
    eq.topLeftCorner(sys.n1(), sys.n1()) = sys.E1() * sys.Q1().inverse();
    return sigma_min_injective(vstack(vstack(eq, jr.J), jr.R));
}

Pencil ei_normalize(const BlockDhdae& sys) {
    // E1 Q1^{-1} = Q1^{-H} M Q1^{-1} with M = E1^H Q1 = L L^H; T = Q1^{-H} L.
    Mat M = hermitian_part(sys.E1().adjoint() * sys.Q1());
    Eigen::LLT<Mat> llt(M);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::not_coercive, "E1^H Q1 is not positive definite");
    Mat L = llt.matrixL();
    Mat T = sys.Q1().adjoint().inverse() * L;
    Mat left = Mat::Identity(sys.n(), sys.n());
    left.topLeftCorner(sys.n1(), sys.n1()) = T.inverse();
    Pencil out;
    out.n1 = sys.n1();
    out.E = Mat::Zero(sys.n(), sys.n());
    out.E.topLeftCorner(sys.n1(), sys.n1()).setIdentity();
    out.A = left * sys.A() * left.adjoint();
    out.Q = Mat::Identity(sys.n(), sys.n());
    return out;
}

Mat ExtendedDhdae::A_ext() const {
    const Index n = base.n(), m = n3();
    Mat a = Mat::Zero(n + m, n + m);
    a.topLeftCorner(n, n) = base.A();
    a.bottomRows(m) = A3ext;
    a.topRightCorner(n, m) = -A3ext.leftCols(n).adjoint();
    return a;
}

Pencil extend_pencil(const Pencil& p, const Mat& E3, const Mat& A3ext) {
    check_pencil(p);
    require_square(E3, "E3");
    const Index n = p.n(), m = E3.rows();
    if (A3ext.rows() != m || A3ext.cols() != n + m)
        throw Error(ErrorCode::shape, "A3ext is " + dims(A3ext) + ", expected " + std::to_string(m) + "x" +
                                          std::to_string(n + m));
    Pencil out;
    out.n1 = p.n1;
    out.E = block_diag({p.E, E3});
    out.Q = block_diag({p.Q, Mat::Zero(m, m)});
    out.A = Mat::Zero(n + m, n + m);
    out.A.topLeftCorner(n, n) = p.A;
    out.A.bottomRows(m) = A3ext;
    out.A.topRightCorner(n, m) = -A3ext.leftCols(n).adjoint();
    return out;
}

Pencil ExtendedDhdae::pencil() const { return extend_pencil(base.pencil(), E3, A3ext); }

ExtendedDhdae extend_x3(const BlockDhdae& sys, const Mat& E3, const Mat& A3ext, const Tolerances& tol) {
    ExtendedDhdae ext{sys, E3, A3ext};
    Pencil p = extend_pencil(sys.pencil(), E3, A3ext);  // shape checks
    require_finite(E3, "E3");
    require_finite(A3ext, "A3ext");
    if (!is_invertible(E3, tol.inv)) throw Error(ErrorCode::not_invertible, "E3 is not invertible");
    if (!check_dissipative(p.A, tol.sym)) throw Error(ErrorCode::not_dissipative, "extended A is not dissipative");
    return ext;
}

double hamiltonian(const ExtendedDhdae& ext, const Vec& x) {
    Pencil p = ext.pencil();
    if (x.size() != p.n()) throw Error(ErrorCode::shape, "state has wrong length");
    return (p.E * x).dot(p.Q * x).real();
}

BlockDhdae strip_x3(const ExtendedDhdae& ext) {
    if (!is_regular_sampled(ext.base).regular)
        throw Error(ErrorCode::singular, "strip_x3 requires a regular base system");
    return ext.base;
}

bool epsilon_shift_test(const BlockDhdae& sys, double eps, double tol) {
    Mat shifted = sys.A();
    shifted.bottomRightCorner(sys.n2(), sys.n2()) += eps * Mat::Identity(sys.n2(), sys.n2());
    return check_dissipative(shifted, tol);
}

}  // namespace dhdae
