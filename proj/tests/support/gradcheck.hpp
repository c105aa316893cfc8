#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "pqa/core/matrix.hpp"

namespace pqa::test {

/// Central differences of `loss` with respect to every entry of `params`.
/// `params` is perturbed in place and restored.
inline Matrix numeric_gradient(Matrix& params, const std::function<double()>& loss, double h = 1e-6) {
    Matrix grad(params.rows(), params.cols());
    for (std::size_t i = 0; i < params.data().size(); ++i) {
        const double saved = params.data()[i];
        params.data()[i] = saved + h;
        const double up = loss();
        params.data()[i] = saved - h;
        const double down = loss();
        params.data()[i] = saved;
        grad.data()[i] = (up - down) / (2 * h);
    }
    return grad;
}

/// ||a - b|| / max(||a||, ||b||), 0 when both are zero.
inline double relative_error(const Matrix& a, const Matrix& b) {
    double diff = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        diff += (a.data()[i] - b.data()[i]) * (a.data()[i] - b.data()[i]);
        na += a.data()[i] * a.data()[i];
        nb += b.data()[i] * b.data()[i];
    }
    const double scale = std::sqrt(std::max(na, nb));
    return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

}  // namespace pqa::test
