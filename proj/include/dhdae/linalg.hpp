#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dhdae/error.hpp"

namespace dhdae {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerances {
    double sym = 1e-10;  // Hermitian-ness and sign tests, relative to the spectral norm
    double psd = 1e-10;
    double inv = 1e-12;  // sigma_min / sigma_max threshold
};

Mat hermitian_part(const Mat& m);
Eigen::VectorXd singular_values(const Mat& m);
double spectral_norm(const Mat& m);

// Smallest singular value as an injectivity measure: zero for wide matrices.
double sigma_min_injective(const Mat& m);

// Extreme eigenvalues of (m + m^H)/2.
double lambda_max_hermitian(const Mat& m);
double lambda_min_hermitian(const Mat& m);

bool is_invertible(const Mat& m, double tol);
Index numerical_rank(const Mat& m, double tol);

// Orthonormal basis of the null space; rank decided by sigma <= tol * sigma_max.
Mat null_space(const Mat& m, double tol);

// Basis of the column space in reduced column-echelon form (sparse where possible).
Mat echelon_range_basis(const Mat& m, double tol);

Mat pseudo_inverse(const Mat& m, double tol);
Mat inverse_sqrt_hpd(const Mat& m);
Mat block_diag(const std::vector<Mat>& blocks);
Mat vstack(const Mat& top, const Mat& bottom);

bool is_diagonal(const Mat& m);
void require_finite(const Mat& m, const char* name);
void require_square(const Mat& m, const char* name);

}  // namespace dhdae
