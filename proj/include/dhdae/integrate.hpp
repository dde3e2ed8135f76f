#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/LU>

#include "dhdae/reduction.hpp"

namespace dhdae {

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> H;
};

// [x1; x2] with x2 from the algebraic constraint (requires invertible A22).
Vec consistent_init(const BlockDhdae& sys, const Vec& x1);

// Implicit midpoint (E - tau/2 AQ) x+ = (E + tau/2 AQ) x with one factorization.
class MidpointStepper {
public:
    MidpointStepper(const Mat& E, const Mat& AQ, double tau);
    MidpointStepper(const BlockDhdae& sys, double tau);
    Vec step(const Vec& x) const;
    double tau() const { return tau_; }

private:
    double tau_;
    Mat explicit_;
    Eigen::PartialPivLU<Mat> lu_;
};

Vec midpoint_dae_step(const BlockDhdae& sys, const Vec& x, double tau);

// Number of uniform steps used for [0, t_end].
long step_count(double tau, double t_end);

Trajectory simulate(const BlockDhdae& sys, const Vec& x0, double tau, double t_end);
Trajectory simulate(const ReducedSystem& red, const Vec& x1_0, double tau, double t_end);
// States are coordinates in the metric-orthonormal basis of X0.
Trajectory simulate(const SubspaceReducedSystem& red, const Vec& coords0, double tau, double t_end);

EnergyTrace energy(const BlockDhdae& sys, const Trajectory& traj);
EnergyTrace energy(const ReducedSystem& red, const Trajectory& traj);

struct CrossValidation {
    double max_deviation = 0.0;
    Trajectory full, reduced;
};
CrossValidation cross_validate(const BlockDhdae& sys, const Vec& x1_0, double tau, double t_end);

// Change of H over one step minus 2 tau Re<AQ x_mid, Q x_mid>; zero up to rounding.
double dissipation_defect(const BlockDhdae& sys, const Vec& x, const Vec& x_next, double tau);

// CSV with header t,H,x_0,... (17 significant digits). Imaginary parts follow as im_x_k
// when any state entry is complex.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const EnergyTrace& en);
void write_energy_csv(std::ostream& os, const EnergyTrace& en);

}  // namespace dhdae
