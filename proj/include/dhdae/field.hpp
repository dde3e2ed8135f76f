#pragma once

#include <functional>
#include <vector>

#include "dhdae/linalg.hpp"

namespace dhdae {

// Complex coefficient on [0, 1]: constant, tabulated (piecewise linear) or an arbitrary callable.
class ScalarField {
public:
    enum class Kind { constant, tabulated, callable };

    ScalarField() : ScalarField(Complex(0.0)) {}
    ScalarField(Complex c);  // NOLINT(google-explicit-constructor)
    ScalarField(double c) : ScalarField(Complex(c)) {}  // NOLINT(google-explicit-constructor)
    static ScalarField tabulated(std::vector<double> zeta, std::vector<Complex> values);
    static ScalarField callable(std::function<Complex(double)> f);

    Complex operator()(double zeta) const;
    Kind kind() const { return kind_; }
    const std::vector<double>& zeta() const { return zeta_; }
    const std::vector<Complex>& values() const { return values_; }

private:
    Kind kind_ = Kind::constant;
    std::vector<double> zeta_;
    std::vector<Complex> values_;
    std::function<Complex(double)> f_;
};

class MatrixField {
public:
    enum class Kind { constant, tabulated, callable };

    MatrixField() = default;
    MatrixField(Mat m);  // NOLINT(google-explicit-constructor)
    static MatrixField tabulated(std::vector<double> zeta, std::vector<Mat> values);
    static MatrixField callable(std::function<Mat(double)> f, Index rows, Index cols);

    Mat operator()(double zeta) const;
    Kind kind() const { return kind_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    const std::vector<double>& zeta() const { return zeta_; }
    const std::vector<Mat>& values() const { return values_; }

private:
    Kind kind_ = Kind::constant;
    Index rows_ = 0, cols_ = 0;
    std::vector<double> zeta_;
    std::vector<Mat> values_;
    std::function<Mat(double)> f_;
};

}  // namespace dhdae
