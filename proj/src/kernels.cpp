#include "dhdae/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dhdae::kernels {

namespace {

ResolventSample sample_one(const Mat& E, const Mat& AQ, Complex s) {
    Mat m = s * E - AQ;
    auto sv = singular_values(m);
    if (sv.size() == 0) return {0.0, 0.0};
    return {sv(sv.size() - 1), sv(0)};
}

void check_pencil(const Mat& E, const Mat& AQ) {
    if (E.rows() != E.cols() || AQ.rows() != E.rows() || AQ.cols() != E.cols())
        throw Error(ErrorCode::shape, "pencil matrices must be square and of equal size");
}

void check_states(const Mat& metric, const std::vector<Vec>& states) {
    for (const auto& x : states)
        if (x.size() < metric.rows()) throw Error(ErrorCode::shape, "state shorter than energy metric");
}

double energy_one(const Mat& metric, const Vec& x) {
    auto x1 = x.head(metric.rows());
    return (x1.adjoint() * metric * x1)(0, 0).real();
}

void check_pair(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::shape, "trajectories have different lengths");
}

double deviation_one(const Vec& a, const Vec& b) {
    const Index m = std::min(a.size(), b.size());
    return (a.head(m) - b.head(m)).norm();
}

}  // namespace

std::vector<ResolventSample> resolvent_sweep(const Mat& E, const Mat& AQ, const std::vector<Complex>& s) {
    check_pencil(E, AQ);
    std::vector<ResolventSample> out(s.size());
    const long count = static_cast<long>(s.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) out[k] = sample_one(E, AQ, s[k]);
    return out;
}

std::vector<ResolventSample> resolvent_sweep_serial(const Mat& E, const Mat& AQ, const std::vector<Complex>& s) {
    check_pencil(E, AQ);
    std::vector<ResolventSample> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = sample_one(E, AQ, s[k]);
    return out;
}

std::vector<double> energy_trace(const Mat& metric, const std::vector<Vec>& states) {
    check_states(metric, states);
    std::vector<double> out(states.size());
    const long count = static_cast<long>(states.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) out[k] = energy_one(metric, states[k]);
    return out;
}

std::vector<double> energy_trace_serial(const Mat& metric, const std::vector<Vec>& states) {
    check_states(metric, states);
    std::vector<double> out(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) out[k] = energy_one(metric, states[k]);
    return out;
}

double max_deviation(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    check_pair(a, b);
    double worst = 0.0;
    const long count = static_cast<long>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (long k = 0; k < count; ++k) worst = std::max(worst, deviation_one(a[k], b[k]));
    return worst;
}

double max_deviation_serial(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    check_pair(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, deviation_one(a[k], b[k]));
    return worst;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace dhdae::kernels
