#pragma once

#include <vector>

#include "dhdae/linalg.hpp"

// Data-parallel kernels. Each has an OpenMP version and a serial reference with identical
// per-item arithmetic, so results agree bitwise.
namespace dhdae::kernels {

struct ResolventSample {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

// Extreme singular values of s E - AQ for each s.
std::vector<ResolventSample> resolvent_sweep(const Mat& E, const Mat& AQ, const std::vector<Complex>& s);
std::vector<ResolventSample> resolvent_sweep_serial(const Mat& E, const Mat& AQ, const std::vector<Complex>& s);

// Re(x^H M x) using the leading M.rows() entries of each state.
std::vector<double> energy_trace(const Mat& metric, const std::vector<Vec>& states);
std::vector<double> energy_trace_serial(const Mat& metric, const std::vector<Vec>& states);

// max_k ||a_k.head(m) - b_k.head(m)||_2 with m = min of the two sizes.
double max_deviation(const std::vector<Vec>& a, const std::vector<Vec>& b);
double max_deviation_serial(const std::vector<Vec>& a, const std::vector<Vec>& b);

int max_threads();

}  // namespace dhdae::kernels
