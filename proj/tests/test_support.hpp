#pragma once

#include <functional>
#include <optional>
#include <random>

#include "dhdae/pencil.hpp"

namespace dhdae::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>()(gen_); }

    Mat real(Index r, Index c) {
        Mat m(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index k = 0; k < c; ++k) m(i, k) = normal();
        return m;
    }
    Mat complex(Index r, Index c) {
        Mat m(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index k = 0; k < c; ++k) m(i, k) = Complex(normal(), normal());
        return m;
    }
    Vec vec(Index n) { return complex(n, 1).col(0); }

    Mat skew(Index n) {
        Mat g = complex(n, n);
        return (g - g.adjoint()) / 2.0;
    }
    // C C^H with C of the given column count (rank <= rank).
    Mat psd(Index n, Index rank) {
        Mat c = complex(n, rank);
        return c * c.adjoint();
    }
    Mat hpd(Index n) { return psd(n, n) + Mat::Identity(n, n); }
    // J - R with R of full rank.
    Mat dissipative(Index n) { return skew(n) - psd(n, n); }
    Mat dissipative(Index n, Index rank) { return skew(n) - psd(n, rank); }

    // E1 invertible with E1^H Q1 Hermitian positive definite: E1 = Q1^{-H} P.
    std::pair<Mat, Mat> coercive_pair(Index n) {
        Mat q1 = complex(n, n) + 3.0 * Mat::Identity(n, n);
        Mat p = hpd(n);
        Mat e1 = q1.adjoint().inverse() * p;
        return {e1, q1};
    }

private:
    std::mt19937_64 gen_;
};

// Conforming instance with A = J - R, n1, n2 <= 6. About a third of the instances zero
// some X2 rows and columns of J and R, which decouples those directions and makes the
// pencil singular.
inline BlockDhdae random_block(Rng& rng, bool& decoupled) {
    const Index n1 = rng.integer(1, 6), n2 = rng.integer(0, 6), n = n1 + n2;
    auto [E1, Q1] = rng.coercive_pair(n1);
    Mat Q2 = rng.complex(n2, n2) + 3.0 * Mat::Identity(n2, n2);
    Mat J = rng.skew(n), R = rng.psd(n, rng.integer(0, n));
    decoupled = n2 > 0 && rng.integer(0, 2) == 0;
    if (decoupled) {
        const Index d = rng.integer(1, n2);
        for (Index k = n - d; k < n; ++k) {
            J.row(k).setZero();
            J.col(k).setZero();
            R.row(k).setZero();
            R.col(k).setZero();
        }
    }
    return BlockDhdae::make(E1, Q1, Q2, J - R);
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Error code thrown by f, if any.
inline std::optional<ErrorCode> code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace dhdae::testing
