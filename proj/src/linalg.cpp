#include "dhdae/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dhdae {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::shape: return "shape error";
        case ErrorCode::usage: return "usage error";
        case ErrorCode::not_dissipative: return "not dissipative";
        case ErrorCode::not_coercive: return "not coercive";
        case ErrorCode::not_invertible: return "not invertible";
        case ErrorCode::singular: return "singular";
        case ErrorCode::not_reducible: return "not reducible";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::numeric: return "numeric error";
        case ErrorCode::io: return "io error";
    }
    return "error";
}

Mat hermitian_part(const Mat& m) { return (m + m.adjoint()) * 0.5; }

bool is_diagonal(const Mat& m) {
    if (m.rows() != m.cols()) return false;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != Complex(0.0)) return false;
    return true;
}

Eigen::VectorXd singular_values(const Mat& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    if (is_diagonal(m)) {
        Eigen::VectorXd s = m.diagonal().cwiseAbs();
        std::sort(s.data(), s.data() + s.size(), std::greater<double>());
        return s;
    }
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues();
}

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

double sigma_min_injective(const Mat& m) {
    if (m.cols() == 0) return std::numeric_limits<double>::infinity();
    if (m.rows() < m.cols()) return 0.0;
    auto s = singular_values(m);
    return s(s.size() - 1);
}

namespace {
Eigen::VectorXd hermitian_eigenvalues(const Mat& m) {
    Mat h = hermitian_part(m);
    if (is_diagonal(h)) {
        Eigen::VectorXd d = h.diagonal().real();
        std::sort(d.data(), d.data() + d.size());
        return d;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::numeric, "Hermitian eigensolver failed");
    return es.eigenvalues();
}
}  // namespace

double lambda_max_hermitian(const Mat& m) {
    if (m.size() == 0) return 0.0;
    auto ev = hermitian_eigenvalues(m);
    return ev(ev.size() - 1);
}

double lambda_min_hermitian(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return hermitian_eigenvalues(m)(0);
}

bool is_invertible(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    auto s = singular_values(m);
    double smax = s(0), smin = s(s.size() - 1);
    return smax > 0.0 && smin > tol * smax;
}

Index numerical_rank(const Mat& m, double tol) {
    if (m.size() == 0) return 0;
    auto s = singular_values(m);
    if (s(0) == 0.0) return 0;
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

Mat null_space(const Mat& m, double tol) {
    const Index n = m.cols();
    if (n == 0) return Mat(0, 0);
    if (m.rows() == 0) return Mat::Identity(n, n);
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Index r = 0;
    if (s.size() > 0 && s(0) > 0.0)
        for (Index i = 0; i < s.size(); ++i)
            if (s(i) > tol * s(0)) ++r;
    return svd.matrixV().rightCols(n - r);
}

Mat echelon_range_basis(const Mat& m, double tol) {
    // Row-reduce m^T; its nonzero rows span the column space of m.
    Mat r = m.transpose();
    const Index rows = r.rows(), cols = r.cols();
    double scale = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    double thresh = std::max(tol * scale, 1e-300);
    Index lead = 0;
    std::vector<Index> pivots;
    for (Index c = 0; c < cols && lead < rows; ++c) {
        Index p;
        double best = r.col(c).segment(lead, rows - lead).cwiseAbs().maxCoeff(&p);
        if (best <= thresh) {
            r.col(c).segment(lead, rows - lead).setZero();
            continue;
        }
        p += lead;
        r.row(lead).swap(r.row(p));
        r.row(lead) /= r(lead, c);
        for (Index i = 0; i < rows; ++i)
            if (i != lead && r(i, c) != Complex(0.0)) r.row(i) -= r(i, c) * r.row(lead);
        pivots.push_back(c);
        ++lead;
    }
    Mat basis = r.topRows(lead).transpose();
    for (Index j = 0; j < basis.cols(); ++j)
        for (Index i = 0; i < basis.rows(); ++i) {
            Complex& z = basis(i, j);
            if (std::abs(z.real()) < 1e-13) z.real(0.0);
            if (std::abs(z.imag()) < 1e-13) z.imag(0.0);
        }
    return basis;
}

Mat pseudo_inverse(const Mat& m, double tol) {
    if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Index i = 0; i < s.size(); ++i)
        if (s(0) > 0.0 && s(i) > tol * s(0)) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

Mat inverse_sqrt_hpd(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m));
    if (es.info() != Eigen::Success) throw Error(ErrorCode::numeric, "Hermitian eigensolver failed");
    if (es.eigenvalues()(0) <= 0.0) throw Error(ErrorCode::not_coercive, "matrix is not positive definite");
    return es.operatorInverseSqrt();
}

Mat block_diag(const std::vector<Mat>& blocks) {
    Index r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat out = Mat::Zero(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

Mat vstack(const Mat& top, const Mat& bottom) {
    if (top.cols() != bottom.cols()) throw Error(ErrorCode::shape, "vstack column mismatch");
    Mat out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

void require_finite(const Mat& m, const char* name) {
    if (!m.allFinite()) throw Error(ErrorCode::numeric, std::string(name) + " has non-finite entries");
}

void require_square(const Mat& m, const char* name) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::shape, std::string(name) + " must be square, got " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
}

}  // namespace dhdae
