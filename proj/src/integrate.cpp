#include "dhdae/integrate.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "dhdae/kernels.hpp"

namespace dhdae {

Vec consistent_init(const BlockDhdae& sys, const Vec& x1) {
    if (x1.size() != sys.n1()) throw Error(ErrorCode::shape, "x1 has wrong length");
    auto red = schur_reduce(sys);
    Vec x(sys.n());
    x.head(sys.n1()) = x1;
    x.tail(sys.n2()) = recover_x2(red, x1);
    return x;
}

MidpointStepper::MidpointStepper(const Mat& E, const Mat& AQ, double tau) : tau_(tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::usage, "step size must be positive");
    Mat implicit = E - 0.5 * tau * AQ;
    explicit_ = E + 0.5 * tau * AQ;
    lu_.compute(implicit);
    // rcond alone misses exactly zero pivots, so check the pivot spread as well.
    const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
    const bool zero_pivot = pivots.size() > 0 && !(pivots.minCoeff() > 1e-14 * pivots.maxCoeff());
    if (zero_pivot || !(lu_.rcond() > 1e-13)) throw Error(ErrorCode::singular, "step matrix is singular for this step size");
}

MidpointStepper::MidpointStepper(const BlockDhdae& sys, double tau) : MidpointStepper(sys.E(), sys.AQ(), tau) {}

Vec MidpointStepper::step(const Vec& x) const {
    if (x.size() != explicit_.rows()) throw Error(ErrorCode::shape, "state has wrong length");
    return lu_.solve(explicit_ * x);
}

Vec midpoint_dae_step(const BlockDhdae& sys, const Vec& x, double tau) {
    Vec next = MidpointStepper(sys, tau).step(x);
    assert(std::abs(dissipation_defect(sys, x, next, tau)) <=
           1e-8 * std::max(1.0, std::abs(hamiltonian(sys, x))));
    return next;
}

double dissipation_defect(const BlockDhdae& sys, const Vec& x, const Vec& x_next, double tau) {
    Vec mid = 0.5 * (x + x_next);
    Vec qm = sys.Q() * mid;
    double rate = (sys.A() * qm).dot(qm).real();
    return hamiltonian(sys, x_next) - hamiltonian(sys, x) - 2.0 * tau * rate;
}

long step_count(double tau, double t_end) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::usage, "step size must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::usage, "end time must be non-negative");
    long n = std::lround(t_end / tau);
    if (n == 0 && t_end > 0.0) n = 1;
    return n;
}

namespace {

Trajectory run(const MidpointStepper& stepper, const Vec& x0, double t_end) {
    const long steps = step_count(stepper.tau(), t_end);
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    Vec x = x0;
    for (long k = 1; k <= steps; ++k) {
        x = stepper.step(x);
        if (!x.allFinite()) throw Error(ErrorCode::numeric, "state became non-finite");
        traj.times.push_back(k * stepper.tau());
        traj.states.push_back(x);
    }
    return traj;
}

}  // namespace

Trajectory simulate(const BlockDhdae& sys, const Vec& x0, double tau, double t_end) {
    if (x0.size() != sys.n()) throw Error(ErrorCode::shape, "initial state has wrong length");
    return run(MidpointStepper(sys, tau), x0, t_end);
}

Trajectory simulate(const ReducedSystem& red, const Vec& x1_0, double tau, double t_end) {
    if (x1_0.size() != red.n1()) throw Error(ErrorCode::shape, "initial state has wrong length");
    const Index n = red.n1();
    return run(MidpointStepper(Mat::Identity(n, n), red.Ared, tau), x1_0, t_end);
}

Trajectory simulate(const SubspaceReducedSystem& red, const Vec& coords0, double tau, double t_end) {
    if (coords0.size() != red.dim()) throw Error(ErrorCode::shape, "initial coordinates have wrong length");
    const Index m = red.dim();
    return run(MidpointStepper(Mat::Identity(m, m), red.Ared_coords, tau), coords0, t_end);
}

EnergyTrace energy(const BlockDhdae& sys, const Trajectory& traj) {
    return {traj.times, kernels::energy_trace(hermitian_part(sys.E1().adjoint() * sys.Q1()), traj.states)};
}

EnergyTrace energy(const ReducedSystem& red, const Trajectory& traj) {
    return {traj.times, kernels::energy_trace(hermitian_part(red.inner_metric), traj.states)};
}

CrossValidation cross_validate(const BlockDhdae& sys, const Vec& x1_0, double tau, double t_end) {
    auto red = schur_reduce(sys);
    CrossValidation cv;
    cv.full = simulate(sys, consistent_init(sys, x1_0), tau, t_end);
    cv.reduced = simulate(red, x1_0, tau, t_end);
    cv.max_deviation = kernels::max_deviation(cv.full.states, cv.reduced.states);
    return cv;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const EnergyTrace& en) {
    if (en.H.size() != traj.states.size()) throw Error(ErrorCode::shape, "energy trace does not match trajectory");
    const Index n = traj.states.empty() ? 0 : traj.states.front().size();
    bool complex_states = false;
    for (const auto& x : traj.states)
        if (x.imag().cwiseAbs().maxCoeff() > 0.0) complex_states = true;
    os << "t,H";
    for (Index k = 0; k < n; ++k) os << ",x_" << k;
    if (complex_states)
        for (Index k = 0; k < n; ++k) os << ",im_x_" << k;
    os << '\n';
    for (std::size_t r = 0; r < traj.states.size(); ++r) {
        os << num(traj.times[r]) << ',' << num(en.H[r]);
        for (Index k = 0; k < n; ++k) os << ',' << num(traj.states[r](k).real());
        if (complex_states)
            for (Index k = 0; k < n; ++k) os << ',' << num(traj.states[r](k).imag());
        os << '\n';
    }
}

void write_energy_csv(std::ostream& os, const EnergyTrace& en) {
    os << "t,H\n";
    for (std::size_t r = 0; r < en.H.size(); ++r) os << num(en.times[r]) << ',' << num(en.H[r]) << '\n';
}

}  // namespace dhdae
