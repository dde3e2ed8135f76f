#pragma once

#include "dhdae/pencil.hpp"

namespace dhdae {

// x1' = Ared x1 with x2 = x2_map x1; dissipative in the inner_metric = E1^H Q1 inner product.
struct ReducedSystem {
    Mat Ared;
    Mat x2_map;
    Mat inner_metric;

    Index n1() const { return Ared.rows(); }
    Index n2() const { return x2_map.rows(); }
};

ReducedSystem schur_reduce(const BlockDhdae& sys, const Tolerances& tol = {});
Vec recover_x2(const ReducedSystem& red, const Vec& x1);

// Generator restricted to X0 = {x1 : A21 Q1 x1 in range(A22 Q2)}, written in a basis that is
// orthonormal for E1^H Q1. multiplier_map gives the x2 that realizes each basis direction.
struct SubspaceReducedSystem {
    Mat basis;
    Mat Ared_coords;
    Mat multiplier_map;
    Mat inner_metric;

    Index dim() const { return basis.cols(); }
    Vec lift(const Vec& coords) const { return basis * coords; }
    Vec coords(const Vec& x1) const { return basis.adjoint() * (inner_metric * x1); }
    // Generator as an operator on X1; defined when the basis is square.
    Mat generator_x1() const;
};

SubspaceReducedSystem subspace_reduce(const BlockDhdae& sys, const Tolerances& tol = {});

// Modified Gram-Schmidt (two passes) in the inner product <u, v> = u^H M v.
Mat metric_orthonormalize(const Mat& vectors, const Mat& metric, double tol = 1e-12);

// A0 - B0 (B0^H B0)^{-1} B0^H A0
Mat output_nulling_generator(const Mat& A0, const Mat& B0, const Tolerances& tol = {});

// Closed loop system [[A0, B0, 0], [-B0^H, 0, I], [0, -I, -K]] with E1 = Q = I.
BlockDhdae feedback_system(const Mat& A0, const Mat& B0, const Mat& K, const Tolerances& tol = {});
Mat feedback_reduce(const Mat& A0, const Mat& B0, const Mat& K, const Tolerances& tol = {});

struct ImpedanceResult {
    BlockDhdae system;
    Mat Ared;
    Mat target;  // [[0, -L], [L^H, G - K0^H K0]]
};

// A = [[0, -L, 0], [L^H, G, K0^H], [0, -K0, -I]], E = E_I, Q = I.
ImpedanceResult impedance_construct(const Mat& L, const Mat& K0, const Mat& G, const Tolerances& tol = {});

}  // namespace dhdae
