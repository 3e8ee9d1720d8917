#pragma once

#include <complex>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

using Cx = std::complex<double>;

// Dense complex matrix, row-major. Only the operations the library needs.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Cx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Cx* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
    const Cx* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

    const std::vector<Cx>& data() const { return a_; }
    std::vector<Cx>& data() { return a_; }

    Matrix adjoint() const;
    Matrix conj() const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator*=(Cx s);

    Cx trace() const;
    double frobenius_norm() const;
    // max_{ij} |a_ij - conj(a_ji)|
    double hermitian_defect() const;
    void hermitize();  // a <- (a + a^dagger)/2

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Cx> a_;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k <-> values[k]; empty if not requested
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Iterates plane rotations
// until the off-diagonal Frobenius norm drops below `off_tol` (clamped to a
// small multiple of machine precision relative to the input norm).
// Throws NotHermitian if the input defect exceeds `herm_tol`, and
// ConvergenceFailure after `max_sweeps` full sweeps.
EigenSystem jacobi_eigensystem(Matrix a, bool want_vectors = false,
                               double off_tol = 1e-13, double herm_tol = 1e-10,
                               int max_sweeps = 100);

// Hermitian PSD square root via eigendecomposition; eigenvalues in
// [-neg_tol, 0) are clamped to zero, anything below -neg_tol throws.
Matrix hermitian_sqrt(const Matrix& a, double neg_tol = 1e-8);

// Inverse of an upper-triangular matrix (back substitution).
Matrix upper_triangular_inverse(const Matrix& r);

}  // namespace ecs
