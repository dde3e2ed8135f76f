#pragma once

#include <functional>
#include <optional>

#include "dhdae/pencil.hpp"

namespace dhdae {

// Discrete realization of [[A0, B0], [-B0^H, -D0]] on V x U. MX is the mass matrix of the
// pivot space, MV the Riesz matrix of V (also used for the embedding of V into its dual).
struct SaddleSystem {
    Mat A0, B0, D0, MX, MV;

    Index nv() const { return A0.rows(); }
    Index nu() const { return B0.cols(); }
    Mat block_operator() const;
    void validate(double tol = 1e-10) const;
};

// min generalized eigenvalue of (MX + R0) v = a MV v with R0 = -(A0 + A0^H)/2
double garding_constant(const SaddleSystem& sys);

// sigma_min(MV^{-1/2} B0)
double closed_range_bound(const SaddleSystem& sys);

struct SchurG1Result {
    Mat G1;  // B0^H (MV - A0)^{-1} B0 + D0
    bool invertible = false;
    double accretivity = 0.0;  // lambda_min of the Hermitian part
};
SchurG1Result schur_G1(const SaddleSystem& sys, const Tolerances& tol = {});

// Invertibility of [[MV - A0, -B0], [B0^H, D0]].
bool shifted_block_invertible(const SaddleSystem& sys, const Tolerances& tol = {});

struct InfSupConstants {
    double alpha = 0.0;  // inf-sup of A0 on ker B0^H in the V norm; +inf if that kernel is trivial
    double gamma = 0.0;  // sigma_min(MV^{-1/2} B0)
    Index kernel_dim = 0;
};
InfSupConstants infsup_constants(const SaddleSystem& sys);

enum class PressureGauge { none, pinned, zero_mean };

struct StokesMac {
    Index N = 0;
    Index n_u = 0, n_v = 0, n_p = 0;  // x-velocities, y-velocities, pressure unknowns after gauge
    SaddleSystem saddle;
    std::optional<BlockDhdae> system;  // E = diag(I, 0), Q = I
    Mat divergence;                    // full cell divergence of the velocity
};

// Marker-and-cell grid on the unit square with no-slip walls; N cells per direction.
StokesMac stokes_mac_assemble(Index N, double alpha = 1.0, PressureGauge gauge = PressureGauge::pinned);

// Adds the skew part of a convection matrix to A0 (Oseen) and rebuilds the system.
void stokes_add_convection(StokesMac& mac, const Mat& C);

// Velocity field from a stream function sampled at interior grid nodes; discretely divergence free.
Vec stokes_stream_velocity(const StokesMac& mac, const std::function<double(double, double)>& psi);

}  // namespace dhdae
