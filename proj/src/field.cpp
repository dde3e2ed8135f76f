#include "dhdae/field.hpp"

#include <algorithm>

namespace dhdae {

namespace {

void check_grid(const std::vector<double>& zeta, std::size_t count) {
    if (zeta.size() < 2 || zeta.size() != count)
        throw Error(ErrorCode::shape, "tabulated field needs at least two points and matching values");
    for (std::size_t i = 1; i < zeta.size(); ++i)
        if (!(zeta[i] > zeta[i - 1])) throw Error(ErrorCode::usage, "tabulated grid must be strictly increasing");
}

// Index of the interval containing zeta (clamped) and the local weight.
std::pair<std::size_t, double> locate(const std::vector<double>& zeta, double z) {
    if (z <= zeta.front()) return {0, 0.0};
    if (z >= zeta.back()) return {zeta.size() - 2, 1.0};
    auto it = std::upper_bound(zeta.begin(), zeta.end(), z);
    std::size_t i = static_cast<std::size_t>(it - zeta.begin()) - 1;
    return {i, (z - zeta[i]) / (zeta[i + 1] - zeta[i])};
}

}  // namespace

ScalarField::ScalarField(Complex c) : kind_(Kind::constant), values_{c} {}

ScalarField ScalarField::tabulated(std::vector<double> zeta, std::vector<Complex> values) {
    check_grid(zeta, values.size());
    ScalarField f;
    f.kind_ = Kind::tabulated;
    f.zeta_ = std::move(zeta);
    f.values_ = std::move(values);
    return f;
}

ScalarField ScalarField::callable(std::function<Complex(double)> fn) {
    ScalarField f;
    f.kind_ = Kind::callable;
    f.values_.clear();
    f.f_ = std::move(fn);
    return f;
}

Complex ScalarField::operator()(double z) const {
    switch (kind_) {
        case Kind::constant: return values_.front();
        case Kind::callable: return f_(z);
        case Kind::tabulated: {
            auto [i, w] = locate(zeta_, z);
            return (1.0 - w) * values_[i] + w * values_[i + 1];
        }
    }
    return {};
}

MatrixField::MatrixField(Mat m) : kind_(Kind::constant), rows_(m.rows()), cols_(m.cols()), values_{std::move(m)} {}

MatrixField MatrixField::tabulated(std::vector<double> zeta, std::vector<Mat> values) {
    check_grid(zeta, values.size());
    for (const auto& v : values)
        if (v.rows() != values.front().rows() || v.cols() != values.front().cols())
            throw Error(ErrorCode::shape, "tabulated matrix field has inconsistent shapes");
    MatrixField f;
    f.kind_ = Kind::tabulated;
    f.rows_ = values.front().rows();
    f.cols_ = values.front().cols();
    f.zeta_ = std::move(zeta);
    f.values_ = std::move(values);
    return f;
}

MatrixField MatrixField::callable(std::function<Mat(double)> fn, Index rows, Index cols) {
    MatrixField f;
    f.kind_ = Kind::callable;
    f.rows_ = rows;
    f.cols_ = cols;
    f.f_ = std::move(fn);
    return f;
}

Mat MatrixField::operator()(double z) const {
    switch (kind_) {
        case Kind::constant: return values_.empty() ? Mat(rows_, cols_) : values_.front();
        case Kind::callable: {
            Mat m = f_(z);
            if (m.rows() != rows_ || m.cols() != cols_) throw Error(ErrorCode::shape, "matrix field changed shape");
            return m;
        }
        case Kind::tabulated: {
            auto [i, w] = locate(zeta_, z);
            return (1.0 - w) * values_[i] + w * values_[i + 1];
        }
    }
    return {};
}

}  // namespace dhdae
