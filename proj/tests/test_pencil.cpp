#include <doctest.h>

#include <cmath>

#include "dhdae/models.hpp"
#include "dhdae/reduction.hpp"
#include "test_support.hpp"

using namespace dhdae;
using dhdae::testing::code_of;
using dhdae::testing::max_abs;
using dhdae::testing::Rng;

namespace {

Mat mat2(Complex a, Complex b, Complex c, Complex d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

Mat scalar(Complex a) { return Mat::Constant(1, 1, a); }

Pencil counter_pencil() { return build_model("counter").pencil; }

}  // namespace

TEST_CASE("dissipativity and coercivity checks") {
    CHECK(check_dissipative(mat2(0, -1, 1, 0)));
    Mat g0 = Mat::Zero(4, 4);
    g0(3, 3) = -1.0;
    CHECK(check_dissipative(g0));
    CHECK_FALSE(check_dissipative(scalar(1.0)));
    CHECK(code_of([] { check_dissipative(Mat::Ones(2, 3)); }) == ErrorCode::shape);

    Mat q = Mat::Zero(2, 2);
    q.diagonal() << 2.0, 3.0;
    CHECK(check_coercive(Mat::Identity(2, 2), q));
    CHECK_FALSE(check_coercive(scalar(1.0), scalar(-1.0)));
    CHECK_FALSE(check_coercive(mat2(0, 1, 1, 0), Mat::Identity(2, 2)));
    CHECK(code_of([] { check_coercive(Mat::Identity(2, 2), Mat::Identity(3, 3)); }) == ErrorCode::shape);
}

TEST_CASE("BlockDhdae construction enforces the invariants") {
    const Mat I1 = Mat::Identity(1, 1);
    CHECK(code_of([&] { BlockDhdae::make(Mat::Zero(1, 1), I1, I1, -Mat::Identity(2, 2)); }) ==
          ErrorCode::not_invertible);
    CHECK(code_of([&] { BlockDhdae::make(I1, -I1, I1, -Mat::Identity(2, 2)); }) == ErrorCode::not_coercive);
    CHECK(code_of([&] { BlockDhdae::make(I1, I1, I1, Mat::Identity(2, 2)); }) == ErrorCode::not_dissipative);
    CHECK(code_of([&] { BlockDhdae::make(Mat(0, 0), Mat(0, 0), I1, -I1); }) == ErrorCode::shape);
    CHECK(code_of([&] { BlockDhdae::make(I1, I1, I1, -Mat::Identity(3, 3)); }) == ErrorCode::shape);
    Mat bad = -Mat::Identity(2, 2);
    bad(0, 1) = Complex(INFINITY, 0.0);
    CHECK_THROWS_AS(BlockDhdae::make(I1, I1, I1, bad), Error);
    // n2 = 0 is a plain ODE
    auto ode = BlockDhdae::make(I1, I1, Mat(0, 0), -I1);
    CHECK(ode.n() == 1);
    CHECK(ode.E() == I1);
}

TEST_CASE("Hamiltonian") {
    auto sys = BlockDhdae::make(scalar(2.0), scalar(1.0), Mat(0, 0), scalar(-1.0));
    CHECK(hamiltonian(sys, Vec::Constant(1, 3.0)) == doctest::Approx(18.0));
    CHECK(hamiltonian(sys, Vec::Zero(1)) == 0.0);
    CHECK_THROWS_AS(hamiltonian(sys, Vec::Zero(2)), Error);

    // Heat: E1 = I / alpha, Q1 = I, so a unit vector has energy 1 / alpha.
    Model heat = build_model("heat_closure", {{"alpha", 2.0}, {"N", 8}});
    Vec x = Vec::Zero(heat.system->n());
    const double h = heat.grid->h;
    for (Index j = 0; j < 8; ++j) x(heat.grid->comps[0].index[j]) = std::sin(std::numbers::pi * (j + 1) * h);
    x /= x.norm();
    CHECK(hamiltonian(*heat.system, x) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("sampled regularity") {
    auto report = is_regular_sampled(counter_pencil());
    CHECK_FALSE(report.regular);
    for (bool inv : report.invertible) CHECK_FALSE(inv);
    CHECK(report.s_values.size() == 3);

    auto sys = BlockDhdae::make(Mat::Identity(2, 2), Mat::Identity(2, 2), Mat(0, 0), -Mat::Identity(2, 2));
    auto ok = is_regular_sampled(sys, {Complex(1.0)});
    CHECK(ok.regular);
    CHECK(ok.sigma_min[0] == doctest::Approx(2.0));
    CHECK(ok.injective_x2);
    CHECK(ok.surjective_x2);

    Model heat = build_model("heat_closure", {{"N", 4}});
    CHECK(is_regular_sampled(*heat.system, {Complex(1.0)}).regular);
    CHECK(stacked_bound(*heat.system) > 0.0);

    CHECK(code_of([&] { is_regular_sampled(sys, {}); }) == ErrorCode::usage);
    CHECK(code_of([&] { is_regular_sampled(sys, {Complex(0.0, 1.0)}); }) == ErrorCode::usage);
}

TEST_CASE("stacked bound") {
    auto sys = BlockDhdae::make(scalar(1.0), scalar(1.0), scalar(1.0), mat2(0, -1, 1, -1));
    CHECK(stacked_bound(sys) == doctest::Approx(1.0).epsilon(1e-14));
    Pencil zero{Mat::Zero(2, 2), Mat::Zero(2, 2), Mat::Identity(2, 2), 1};
    CHECK(stacked_bound(zero) == 0.0);
}

TEST_CASE("J - R split") {
    auto split = jr_split(mat2(0, -1, 1, -2));
    CHECK(max_abs(split.J - mat2(0, -1, 1, 0)) == 0.0);
    CHECK(max_abs(split.R - mat2(0, 0, 0, 2)) == 0.0);
    CHECK(max_abs(jr_split(mat2(0, 2, -2, 0)).R) == 0.0);
    CHECK(code_of([] { jr_split(scalar(1.0)); }) == ErrorCode::not_dissipative);

    auto sys = BlockDhdae::make(scalar(1.0), scalar(1.0), scalar(1.0), mat2(0, -1, 1, -2));
    CHECK(jr_bound(sys) > 0.0);
}

TEST_CASE("kernel tests on the X2 block") {
    Model heat = build_model("heat_closure", {{"N", 4}});
    auto kt = kernel_tests(*heat.system);
    CHECK(kt.injective_x2);
    CHECK(kt.surjective_x2);

    Mat a = Mat::Zero(3, 3);
    a(0, 0) = -1.0;
    a(0, 1) = 1.0;
    a(1, 0) = -1.0;  // A12 and A22 vanish on the last column
    auto none = kernel_tests(a, 2);
    CHECK_FALSE(none.injective_x2);
    CHECK_FALSE(none.surjective_x2);

    auto fb = feedback_system(-Mat::Identity(2, 2), Mat::Ones(2, 1), scalar(2.0));
    auto kf = kernel_tests(fb);
    CHECK(kf.injective_x2);
    CHECK(kf.surjective_x2);
}

TEST_CASE("common kernel") {
    Mat E = mat2(1, 2, 0, 0), JQ = mat2(-3, -4, 0, 0);
    CHECK(common_kernel({E, JQ}).cols() == 0);
    Pencil c = counter_pencil();
    CHECK(max_abs(c.AQ() - JQ) == 0.0);
    CHECK(common_kernel({Mat::Zero(2, 3)}).cols() == 3);
    CHECK(common_kernel({Mat::Identity(2, 2)}).cols() == 0);
    Mat shared = common_kernel({mat2(1, 1, 0, 0), mat2(2, 2, 0, 0)});
    REQUIRE(shared.cols() == 1);
    CHECK(std::abs(shared(0, 0) + shared(1, 0)) < 1e-15);
}

TEST_CASE("counterexample determinant vanishes identically") {
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        Pencil p = build_model("counter", {{"e11", rng.uniform()}, {"e12", rng.uniform()}, {"q21", rng.uniform()},
                                           {"q22", rng.uniform()}})
                       .pencil;
        for (double s : {0.3, 1.7, 4.0}) CHECK(std::abs((s * p.E - p.AQ()).determinant()) == 0.0);
    }
}

TEST_CASE("extension by x3 and stripping") {
    Model string = build_model("string", {{"N", 8}});
    const BlockDhdae& sys = *string.system;
    Mat a3 = Mat::Zero(1, sys.n() + 1);
    a3(0, 0) = 1.0;
    auto ext = extend_x3(sys, scalar(1.0), a3);
    CHECK(check_dissipative(ext.A_ext()));
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        Vec x = rng.vec(sys.n() + 1);
        double h0 = hamiltonian(sys, x.head(sys.n())), h1 = hamiltonian(ext, x);
        CHECK(std::abs(h0 - h1) <= 1e-12 * std::max(1.0, std::abs(h0)));
    }
    CHECK(is_regular_sampled(ext.pencil()).regular);
    CHECK(is_regular_sampled(strip_x3(ext)).regular);

    auto decoupled = extend_x3(sys, scalar(1.0), Mat::Zero(1, sys.n() + 1));
    CHECK(is_regular_sampled(decoupled.pencil()).regular);

    // round trip keeps every field
    Model heat = build_model("heat_closure", {{"N", 4}});
    auto back = strip_x3(extend_x3(*heat.system, scalar(1.0), Mat::Zero(1, heat.system->n() + 1)));
    CHECK(back.A() == heat.system->A());
    CHECK(back.E1() == heat.system->E1());
    CHECK(back.Q1() == heat.system->Q1());
    CHECK(back.Q2() == heat.system->Q2());
    auto none = extend_x3(*heat.system, Mat(0, 0), Mat(0, heat.system->n()));
    CHECK(none.pencil().E == heat.system->E());

    Pencil singular = extend_pencil(counter_pencil(), scalar(1.0), Mat::Zero(1, 3));
    CHECK_FALSE(is_regular_sampled(singular).regular);

    CHECK(code_of([&] { extend_x3(sys, scalar(0.0), a3); }) == ErrorCode::not_invertible);
    Mat hot = a3;
    hot(0, sys.n()) = 1.0;  // D = 1 is not dissipative
    CHECK(code_of([&] { extend_x3(sys, scalar(1.0), hot); }) == ErrorCode::not_dissipative);
    CHECK(code_of([&] { extend_x3(sys, scalar(1.0), Mat::Zero(1, 2)); }) == ErrorCode::shape);
}

TEST_CASE("epsilon shift certificate") {
    auto a = BlockDhdae::make(scalar(1.0), scalar(1.0), scalar(1.0), mat2(-1, 1, -1, -1));
    CHECK(epsilon_shift_test(a, 0.5));
    CHECK(is_regular_sampled(a).regular);
    auto b = BlockDhdae::make(scalar(1.0), scalar(1.0), scalar(1.0), mat2(-1, 0, 0, 0));
    CHECK_FALSE(epsilon_shift_test(b, 1.0));
    auto c = BlockDhdae::make(scalar(1.0), scalar(1.0), scalar(1.0), mat2(0, 1, -1, -1));
    CHECK(epsilon_shift_test(c, 0.5));
}

TEST_CASE("regularity is independent of s and of the E_I normalization") {
    Rng rng(77);
    int regular = 0, singular = 0;
    for (int t = 0; t < 150; ++t) {
        bool decoupled = false;
        BlockDhdae sys = dhdae::testing::random_block(rng, decoupled);
        bool r1 = is_regular_sampled(sys, {Complex(1.0)}).regular;
        bool r7 = is_regular_sampled(sys, {Complex(7.0, 2.0)}).regular;
        CHECK(r1 == r7);
        CHECK(r1 == !decoupled);
        Pencil ei = ei_normalize(sys);
        CHECK(is_regular_sampled(ei).regular == r1);
        auto plain = BlockDhdae::make(Mat::Identity(sys.n1(), sys.n1()), Mat::Identity(sys.n1(), sys.n1()),
                                      Mat::Identity(sys.n2(), sys.n2()), sys.A());
        CHECK(is_regular_sampled(plain).regular == r1);
        // E_I form: E Q^{-1} = diag(I, 0) and the same dissipative A up to congruence
        Mat eqi = ei.E * ei.Q.inverse();
        Mat target = Mat::Zero(sys.n(), sys.n());
        target.topLeftCorner(sys.n1(), sys.n1()).setIdentity();
        CHECK(max_abs(eqi - target) < 1e-9);
        CHECK(check_dissipative(ei.A));
        auto report = is_regular_sampled(sys);
        if (report.regular) {
            CHECK(report.injective_x2);
            CHECK(report.surjective_x2);
        }
        (r1 ? regular : singular)++;
    }
    CHECK(regular > 0);
    CHECK(singular > 0);
}
