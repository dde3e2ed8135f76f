#include <doctest.h>

#include <cmath>
#include <limits>

#include "dhdae/reduction.hpp"
#include "dhdae/saddle.hpp"
#include "test_support.hpp"

using namespace dhdae;
using dhdae::testing::code_of;
using dhdae::testing::max_abs;
using dhdae::testing::Rng;

namespace {

SaddleSystem make_saddle(Mat A0, Mat B0, Mat D0, Mat MX, Mat MV) {
    SaddleSystem s;
    s.A0 = std::move(A0);
    s.B0 = std::move(B0);
    s.D0 = std::move(D0);
    s.MX = std::move(MX);
    s.MV = std::move(MV);
    return s;
}

// 1D Dirichlet stiffness and lumped mass on n interior nodes.
std::pair<Mat, Mat> stiffness_mass(Index n) {
    const double h = 1.0 / double(n + 1);
    Mat K = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        K(i, i) = 2.0 / h;
        if (i > 0) K(i, i - 1) = -1.0 / h;
        if (i + 1 < n) K(i, i + 1) = -1.0 / h;
    }
    return {K, h * Mat::Identity(n, n)};
}

// Random conforming instance; rank_deficient shares a kernel vector between B0 and D0.
SaddleSystem random_saddle(Rng& rng, bool rank_deficient) {
    const Index nv = rng.integer(2, 7), nu = rng.integer(1, nv);
    Mat A0 = rng.dissipative(nv, rng.integer(0, nv));
    Mat B0 = rng.complex(nv, nu);
    Mat D0 = rng.psd(nu, rng.integer(0, nu));
    if (rank_deficient) {
        B0.col(nu - 1).setZero();
        D0.row(nu - 1).setZero();
        D0.col(nu - 1).setZero();
    }
    Mat MX = rng.hpd(nv);
    Mat MV = MX + rng.psd(nv, nv);
    return make_saddle(A0, B0, D0, MX, MV);
}

}  // namespace

TEST_CASE("Garding constant") {
    auto [K, M] = stiffness_mass(6);
    auto s1 = make_saddle(-K, Mat::Zero(6, 1), Mat::Zero(1, 1), M, M + K);
    CHECK(garding_constant(s1) == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(3);
    Mat MX = rng.hpd(4);
    auto s2 = make_saddle(Mat::Zero(4, 4), Mat::Zero(4, 1), Mat::Zero(1, 1), MX, MX);
    CHECK(garding_constant(s2) == doctest::Approx(1.0).epsilon(1e-12));
    auto s3 = make_saddle(Mat::Zero(4, 4), Mat::Zero(4, 1), Mat::Zero(1, 1), MX, 2.0 * MX);
    CHECK(garding_constant(s3) == doctest::Approx(0.5).epsilon(1e-12));

    // Skew parts do not enter the certified bound.
    auto s4 = make_saddle(rng.skew(4), Mat::Zero(4, 1), Mat::Zero(1, 1), MX, MX);
    CHECK(garding_constant(s4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("saddle validation") {
    const Mat I = Mat::Identity(2, 2);
    CHECK(code_of([&] { garding_constant(make_saddle(I, Mat::Ones(2, 1), Mat::Zero(1, 1), I, I)); }) ==
          ErrorCode::not_dissipative);
    CHECK(code_of([&] { garding_constant(make_saddle(-I, Mat::Ones(2, 1), -Mat::Identity(1, 1), I, I)); }) ==
          ErrorCode::not_dissipative);
    CHECK(code_of([&] { garding_constant(make_saddle(-I, Mat::Ones(2, 1), Mat::Zero(1, 1), -I, I)); }) ==
          ErrorCode::not_coercive);
    CHECK(code_of([&] { garding_constant(make_saddle(-I, Mat::Ones(3, 1), Mat::Zero(1, 1), I, I)); }) ==
          ErrorCode::shape);
}

TEST_CASE("closed range bound") {
    const Mat I = Mat::Identity(2, 2);
    auto s = make_saddle(-I, Mat::Ones(2, 1), Mat::Zero(1, 1), I, I);
    CHECK(closed_range_bound(s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    Mat B0 = Mat::Zero(2, 2);
    B0(0, 0) = 1.0;
    auto z = make_saddle(-I, B0, Mat::Zero(2, 2), I, I);
    CHECK(closed_range_bound(z) < 1e-14);
    // V weighting: columns are measured in the dual norm.
    auto w = make_saddle(-I, Mat::Ones(2, 1), Mat::Zero(1, 1), I, 4.0 * I);
    CHECK(closed_range_bound(w) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("Schur complement G1") {
    const Mat I = Mat::Identity(3, 3);
    auto r = schur_G1(make_saddle(-I, I, Mat::Zero(3, 3), I, I));
    CHECK(max_abs(r.G1 - 0.5 * I) < 1e-14);
    CHECK(r.invertible);
    auto r2 = schur_G1(make_saddle(-I, Mat::Zero(3, 3), I, I, I));
    CHECK(max_abs(r2.G1 - I) < 1e-14);
    CHECK(r2.invertible);
    auto r3 = schur_G1(make_saddle(-I, Mat::Zero(3, 3), Mat::Zero(3, 3), I, I));
    CHECK_FALSE(r3.invertible);
}

TEST_CASE("inf-sup constants") {
    const Mat I = Mat::Identity(2, 2);
    auto c = infsup_constants(make_saddle(-I, Mat::Ones(2, 1), Mat::Zero(1, 1), I, I));
    CHECK(c.kernel_dim == 1);
    CHECK(c.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    Mat B0(2, 2);
    B0 << 1.0, 2.0, 0.0, 1.0;
    auto sq = infsup_constants(make_saddle(-I, B0, Mat::Zero(2, 2), I, I));
    CHECK(sq.kernel_dim == 0);
    CHECK(sq.alpha == std::numeric_limits<double>::infinity());
    CHECK(sq.gamma > 0.0);
}

TEST_CASE("random block operators: dissipativity, injectivity, Schur equivalence") {
    Rng rng(2024);
    int singular = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const bool deficient = trial % 3 == 0;
        auto s = random_saddle(rng, deficient);
        CAPTURE(trial);
        CHECK(check_dissipative(s.block_operator()));
        auto g = schur_G1(s);
        CHECK(g.accretivity >= -1e-12);
        const bool block = shifted_block_invertible(s);
        CHECK(block == g.invertible);
        if (!deficient) {
            CHECK(numerical_rank(s.B0, 1e-12) == s.nu());
            CHECK(block);
        }
        if (!block) ++singular;
    }
    CHECK(singular > 0);
}

TEST_CASE("MAC Stokes: divergence of gradient is the pressure Laplacian") {
    const Index N = 5;
    auto mac = stokes_mac_assemble(N, 1.0, PressureGauge::none);
    const double h = 1.0 / N;
    CHECK(mac.n_p == N * N);
    CHECK(mac.n_u == (N - 1) * N);
    CHECK(mac.n_v == (N - 1) * N);
    Mat grad = -mac.saddle.B0;
    Mat lap = mac.divergence * grad;
    Mat expected = Mat::Zero(N * N, N * N);
    for (Index j = 0; j < N; ++j)
        for (Index i = 0; i < N; ++i) {
            const Index r = i + N * j;
            auto link = [&](Index ii, Index jj) {
                if (ii < 0 || jj < 0 || ii >= N || jj >= N) return;
                expected(r, ii + N * jj) += 1.0 / (h * h);
                expected(r, r) -= 1.0 / (h * h);
            };
            link(i - 1, j);
            link(i + 1, j);
            link(i, j - 1);
            link(i, j + 1);
        }
    CHECK(max_abs(lap - expected) < 1e-10);
    CHECK(max_abs(lap * Mat::Ones(N * N, 1)) < 1e-10);
    CHECK(numerical_rank(mac.saddle.B0, 1e-10) == N * N - 1);
    CHECK(closed_range_bound(mac.saddle) < 1e-8);
}

TEST_CASE("MAC Stokes: pinned system") {
    auto mac = stokes_mac_assemble(4);
    REQUIRE(mac.system.has_value());
    CHECK(mac.n_p == 15);
    CHECK(check_dissipative(mac.system->A(), 1e-12));
    CHECK(closed_range_bound(mac.saddle) > 0.0);
    CHECK(garding_constant(mac.saddle) > 0.0);

    auto red = subspace_reduce(*mac.system);
    CHECK(red.dim() == 9);  // stream functions on the (N - 1)^2 interior nodes
    CHECK(lambda_max_hermitian(red.Ared_coords) <= 1e-10 * spectral_norm(red.Ared_coords));
    for (Index k = 0; k < red.dim(); ++k) CHECK(max_abs(mac.divergence * red.basis.col(k)) < 1e-9);

    Vec u = stokes_stream_velocity(mac, [](double x, double y) { return std::sin(3.0 * x) * x * y * (1 - y); });
    CHECK(max_abs(mac.divergence * u) < 1e-12 * std::max(1.0, max_abs(u)));

    CHECK(code_of([] { stokes_mac_assemble(2); }) == ErrorCode::usage);
    CHECK(code_of([] { stokes_mac_assemble(4, 0.0); }) == ErrorCode::usage);
}

TEST_CASE("MAC Stokes: zero-mean gauge and convection hook") {
    auto mac = stokes_mac_assemble(6, 0.5, PressureGauge::zero_mean);
    CHECK(mac.n_p == 35);
    CHECK(closed_range_bound(mac.saddle) > 0.2);

    Rng rng(9);
    const Index nv = mac.saddle.nv();
    Mat before = mac.saddle.A0;
    stokes_add_convection(mac, rng.real(nv, nv));
    CHECK(max_abs(hermitian_part(mac.saddle.A0) - hermitian_part(before)) < 1e-12);
    CHECK(check_dissipative(mac.system->A(), 1e-12));
    CHECK(code_of([&] { stokes_add_convection(mac, Mat::Zero(2, 2)); }) == ErrorCode::shape);
}
