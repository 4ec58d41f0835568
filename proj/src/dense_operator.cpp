#include "poracle/dense_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "poracle/errors.hpp"

namespace poracle {

DenseOperator DenseOperator::identity(std::size_t dim) {
    DenseOperator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op(i, i) = 1.0;
    return op;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
    if (rhs.dim_ != dim_) throw ValidationError("dense operator dimension mismatch");
    DenseOperator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == Complex{}) continue;
            const Complex* row = &rhs.data_[k * dim_];
            Complex* dst = &out.data_[r * dim_];
            for (std::size_t c = 0; c < dim_; ++c) dst[c] += a * row[c];
        }
    }
    return out;
}

std::vector<Complex> DenseOperator::apply(const std::vector<Complex>& vec) const {
    if (vec.size() != dim_) throw ValidationError("vector length does not match operator");
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * vec[c];
        out[r] = acc;
    }
    return out;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
    if (other.dim_ != dim_) throw ValidationError("dense operator dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

double DenseOperator::unitarity_error() const {
    return ((*this) * adjoint()).max_abs_diff(identity(dim_));
}

double max_diff_up_to_phase(const DenseOperator& expected, const DenseOperator& actual) {
    if (expected.dim() != actual.dim()) throw ValidationError("dense operator dimension mismatch");
    const std::size_t dim = expected.dim();
    std::size_t best_r = 0, best_c = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (std::abs(expected(r, c)) > best) {
                best = std::abs(expected(r, c));
                best_r = r;
                best_c = c;
            }
    Complex phase{1.0, 0.0};
    const Complex a = actual(best_r, best_c);
    if (std::abs(a) > 0.0) {
        const Complex ratio = expected(best_r, best_c) / a;
        phase = ratio / std::abs(ratio);
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            worst = std::max(worst, std::abs(expected(r, c) - phase * actual(r, c)));
    return worst;
}

DenseOperator hadamard_matrix(unsigned num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    DenseOperator h(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            h(r, c) = (std::popcount(r & c) & 1) ? -scale : scale;
    return h;
}

} // namespace poracle
