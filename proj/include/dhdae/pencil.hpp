#pragma once

#include <vector>

#include "dhdae/linalg.hpp"

namespace dhdae {

// A raw pencil s*E - A*Q with a block split after n1 unknowns. No structural checks.
struct Pencil {
    Mat E, A, Q;
    Index n1 = 0;

    Index n() const { return E.rows(); }
    Mat AQ() const { return A * Q; }
};

// E xdot = A Q x with E = diag(E1, 0), Q = diag(Q1, Q2), A dissipative, E1^H Q1 Hermitian positive.
class BlockDhdae {
public:
    static BlockDhdae make(Mat E1, Mat Q1, Mat Q2, Mat A, const Tolerances& tol = {});

    Index n1() const { return E1_.rows(); }
    Index n2() const { return Q2_.rows(); }
    Index n() const { return n1() + n2(); }

    const Mat& E1() const { return E1_; }
    const Mat& Q1() const { return Q1_; }
    const Mat& Q2() const { return Q2_; }
    const Mat& A() const { return A_; }

    Mat A11() const { return A_.topLeftCorner(n1(), n1()); }
    Mat A12() const { return A_.topRightCorner(n1(), n2()); }
    Mat A21() const { return A_.bottomLeftCorner(n2(), n1()); }
    Mat A22() const { return A_.bottomRightCorner(n2(), n2()); }

    Mat E() const;
    Mat Q() const;
    Mat AQ() const { return A_ * Q(); }
    Pencil pencil() const { return {E(), A_, Q(), n1()}; }

private:
    BlockDhdae(Mat E1, Mat Q1, Mat Q2, Mat A)
        : E1_(std::move(E1)), Q1_(std::move(Q1)), Q2_(std::move(Q2)), A_(std::move(A)) {}
    Mat E1_, Q1_, Q2_, A_;
};

std::vector<Complex> default_samples();

bool check_dissipative(const Mat& m, double tol = 1e-10);
bool check_coercive(const Mat& E1, const Mat& Q1, double tol = 1e-10);

// Re <E x, Q x>
double hamiltonian(const BlockDhdae& sys, const Vec& x);

struct RegularityReport {
    bool regular = false;
    std::vector<Complex> s_values;
    std::vector<double> sigma_min;
    std::vector<double> cond;
    std::vector<bool> invertible;
    double stacked_sigma_min = 0.0;
    bool injective_x2 = false;
    bool surjective_x2 = false;
    Index common_kernel_dim = 0;
};

RegularityReport is_regular_sampled(const Pencil& p, const std::vector<Complex>& s = default_samples(),
                                    const Tolerances& tol = {});
RegularityReport is_regular_sampled(const BlockDhdae& sys, const std::vector<Complex>& s = default_samples(),
                                    const Tolerances& tol = {});

// sigma_min([E; A Q])
double stacked_bound(const Pencil& p);
double stacked_bound(const BlockDhdae& sys);

struct JRSplit {
    Mat J, R;
};
JRSplit jr_split(const Mat& A, double tol = 1e-10);

// sigma_min([E Q^{-1}; J; R])
double jr_bound(const BlockDhdae& sys);

struct KernelTests {
    bool injective_x2 = false;
    bool surjective_x2 = false;
};
KernelTests kernel_tests(const Mat& A, Index n1, double tol = 1e-12);
KernelTests kernel_tests(const BlockDhdae& sys, double tol = 1e-12);

// Orthonormal basis of the intersection of the kernels.
Mat common_kernel(const std::vector<Mat>& mats, double tol = 1e-12);

// Pencil (E_I, A_hat) obtained by the congruence that turns E Q^{-1} into diag(I, 0).
Pencil ei_normalize(const BlockDhdae& sys);

// Extension by a block x3 that does not enter through Q. The upper right coupling of the
// extended A is -C^H where [C D] = A3ext, so dissipativity reduces to that of A and D.
struct ExtendedDhdae {
    BlockDhdae base;
    Mat E3;
    Mat A3ext;

    Index n3() const { return E3.rows(); }
    Mat A_ext() const;
    Pencil pencil() const;
};

Pencil extend_pencil(const Pencil& p, const Mat& E3, const Mat& A3ext);
ExtendedDhdae extend_x3(const BlockDhdae& sys, const Mat& E3, const Mat& A3ext, const Tolerances& tol = {});
double hamiltonian(const ExtendedDhdae& ext, const Vec& x);
BlockDhdae strip_x3(const ExtendedDhdae& ext);

bool epsilon_shift_test(const BlockDhdae& sys, double eps, double tol = 1e-10);

}  // namespace dhdae
