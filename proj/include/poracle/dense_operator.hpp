#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace poracle {

using Complex = std::complex<double>;

/// Square complex matrix, row-major. Used only for brute-force verification,
/// so dimensions stay small (at most 2^12).
class DenseOperator {
public:
    DenseOperator() = default;
    explicit DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static DenseOperator identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    DenseOperator adjoint() const;
    DenseOperator operator*(const DenseOperator& rhs) const;
    std::vector<Complex> apply(const std::vector<Complex>& vec) const;

    /// Largest |a_ij - b_ij|.
    double max_abs_diff(const DenseOperator& other) const;

    /// Largest entry deviation of this * this^dagger from the identity.
    double unitarity_error() const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise deviation after aligning the global phase of `actual`
/// to `expected` at the largest-magnitude entry of `expected`.
double max_diff_up_to_phase(const DenseOperator& expected, const DenseOperator& actual);

/// H^{(x)n} as a dense 2^n x 2^n matrix.
DenseOperator hadamard_matrix(unsigned num_qubits);

} // namespace poracle
