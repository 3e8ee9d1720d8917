#include "ecs/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ecs {

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::conj() const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw BadDims("matrix product: inner dimensions differ");
    Matrix r(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Cx aik = (*this)(i, k);
            if (aik == Cx{}) continue;
            const Cx* brow = rhs.row(k);
            Cx* rrow = r.row(i);
            for (int j = 0; j < rhs.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += rhs.a_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= rhs.a_[k];
    return r;
}

Matrix& Matrix::operator*=(Cx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Cx Matrix::trace() const {
    Cx t{};
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::hermitian_defect() const {
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

void Matrix::hermitize() {
    for (int i = 0; i < rows_; ++i) {
        (*this)(i, i) = Cx{(*this)(i, i).real(), 0.0};
        for (int j = i + 1; j < cols_; ++j) {
            Cx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = v;
            (*this)(j, i) = std::conj(v);
        }
    }
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem jacobi_eigensystem(Matrix a, bool want_vectors, double off_tol,
                               double herm_tol, int max_sweeps) {
    if (a.rows() != a.cols()) throw BadDims("jacobi: matrix must be square");
    const int n = a.rows();
    if (a.hermitian_defect() > herm_tol)
        throw NotHermitian("jacobi: input is not Hermitian within tolerance");
    a.hermitize();

    Matrix v;
    if (want_vectors) v = Matrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double target = std::max(off_tol, 1e-15 * scale);

    EigenSystem out;
    out.values.resize(n);
    if (n == 1) {
        out.values[0] = a(0, 0).real();
        if (want_vectors) out.vectors = v;
        return out;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off < target) break;
        if (sweep == max_sweeps - 1)
            throw ConvergenceFailure("jacobi: no convergence after max sweeps");
        // Rotations on elements below this threshold cannot reduce `off`
        // meaningfully this sweep; skipping them speeds the tail sweeps up.
        const double skip = off / (5.0 * n);

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= skip || apq == 0.0) continue;

                // Unitary plane rotation J (identity outside rows/cols p,q):
                //   J[p][p]=c, J[p][q]=s*u, J[q][p]=-s*conj(u), J[q][q]=c
                // with u = a_pq/|a_pq| and tan(2 theta) from the real 2x2
                // problem; J^dagger A J zeroes a_pq.
                const Cx u = a(p, q) / apq;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Column update: B = A J  (columns p,q change)
                for (int k = 0; k < n; ++k) {
                    const Cx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(u) * akq;
                    a(k, q) = s * u * akp + c * akq;
                }
                // Row update: A' = J^dagger B  (rows p,q change)
                for (int k = 0; k < n; ++k) {
                    const Cx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * u * aqk;
                    a(q, k) = s * std::conj(u) * apk + c * aqk;
                }
                a(p, q) = Cx{};
                a(q, p) = Cx{};
                a(p, p) = Cx{a(p, p).real(), 0.0};
                a(q, q) = Cx{a(q, q).real(), 0.0};

                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const Cx vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * std::conj(u) * vkq;
                        v(k, q) = s * u * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]).real();
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

Matrix hermitian_sqrt(const Matrix& a, double neg_tol) {
    EigenSystem es = jacobi_eigensystem(a, true);
    const int n = a.rows();
    for (double& lam : es.values) {
        if (lam < -neg_tol)
            throw NumericalError("hermitian_sqrt: matrix has a significantly negative eigenvalue");
        lam = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Cx s{};
            for (int k = 0; k < n; ++k)
                s += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

Matrix upper_triangular_inverse(const Matrix& r) {
    if (r.rows() != r.cols()) throw BadDims("upper_triangular_inverse: square input required");
    const int n = r.rows();
    Matrix inv(n, n);
    for (int i = n - 1; i >= 0; --i) {
        if (std::abs(r(i, i)) == 0.0)
            throw NumericalError("upper_triangular_inverse: singular diagonal");
        inv(i, i) = 1.0 / r(i, i);
        for (int j = i + 1; j < n; ++j) {
            Cx s{};
            for (int k = i + 1; k <= j; ++k) s += r(i, k) * inv(k, j);
            inv(i, j) = -s / r(i, i);
        }
    }
    return inv;
}

}  // namespace ecs
