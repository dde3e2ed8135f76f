#include <doctest.h>

#include "dhdae/kernels.hpp"
#include "test_support.hpp"

using namespace dhdae;

TEST_CASE("parallel kernels agree bitwise with the serial references") {
    dhdae::testing::Rng rng(11);
    const Index n = 12;
    Mat E = rng.hpd(n), AQ = rng.dissipative(n);
    std::vector<Complex> s;
    for (int k = 0; k < 40; ++k) s.emplace_back(0.1 + k, 0.5 * k);
    auto par = kernels::resolvent_sweep(E, AQ, s);
    auto ser = kernels::resolvent_sweep_serial(E, AQ, s);
    REQUIRE(par.size() == s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(par[k].sigma_min == ser[k].sigma_min);
        CHECK(par[k].sigma_max == ser[k].sigma_max);
        CHECK(par[k].sigma_min <= par[k].sigma_max);
    }

    std::vector<Vec> states, other;
    for (int k = 0; k < 50; ++k) {
        states.push_back(rng.vec(n + 3));
        other.push_back(rng.vec(n));
    }
    Mat M = rng.hpd(n);
    auto e1 = kernels::energy_trace(M, states);
    auto e2 = kernels::energy_trace_serial(M, states);
    CHECK(e1 == e2);
    Vec head = states[7].head(n);
    CHECK(e1[7] == doctest::Approx(head.dot(M * head).real()));
    CHECK(kernels::max_deviation(states, other) == kernels::max_deviation_serial(states, other));
    CHECK(kernels::max_threads() >= 1);
}

TEST_CASE("resolvent sweep of a known pencil") {
    Mat E = Mat::Identity(2, 2), AQ = -Mat::Identity(2, 2);
    auto r = kernels::resolvent_sweep(E, AQ, {Complex(1.0), Complex(3.0)});
    CHECK(r[0].sigma_min == doctest::Approx(2.0));
    CHECK(r[1].sigma_max == doctest::Approx(4.0));
}

TEST_CASE("kernel shape errors are raised before any parallel work") {
    CHECK_THROWS_AS(kernels::resolvent_sweep(Mat::Identity(2, 2), Mat::Identity(3, 3), {Complex(1.0)}), Error);
    CHECK_THROWS_AS(kernels::max_deviation({Vec::Ones(2)}, {}), Error);
    CHECK_THROWS_AS(kernels::energy_trace(Mat::Identity(3, 3), {Vec::Ones(2)}), Error);
    CHECK(kernels::max_deviation({}, {}) == 0.0);
}
