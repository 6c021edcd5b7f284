#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "rebsim/core/errors.hpp"

namespace rebsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Truncated annihilation operator, a|n> = sqrt(n)|n-1>.
inline Matrix annihilation(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Matrix creation(int dim) { return annihilation(dim).adjoint(); }

inline Matrix number_operator(int dim) {
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

inline Vector fock_state(int dim, int n) {
    if (n < 0 || n >= dim)
        throw CompositionError("fock_state: level out of range");
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return v;
}

inline Matrix fock_projector(int dim, int n) {
    Matrix p = Matrix::Zero(dim, dim);
    p(n, n) = 1.0;
    return p;
}

// exp(G) for anti-Hermitian G, computed through the eigendecomposition of
// iG (Hermitian). The result is unitary to machine precision, which the
// synthesized beamsplitter/displacement unitaries rely on.
inline Matrix expm_antihermitian(const Matrix& g) {
    if (g.rows() != g.cols())
        throw CompositionError("expm_antihermitian: non-square generator");
    const double asym = (g + g.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (asym > 1e-12 * scale)
        throw CompositionError("expm_antihermitian: generator is not anti-Hermitian");
    Matrix h = Complex(0, 1) * g;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& lam = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    Vector phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        phases(k) = std::exp(Complex(0, -lam(k)));
    return v * phases.asDiagonal() * v.adjoint();
}

// Kronecker product with the first factor most significant. Writes walk the
// column-major destination contiguously.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix c(ar * br, ac * bc);
    Complex* dst = c.data();
    for (Eigen::Index j = 0; j < ac; ++j)
        for (Eigen::Index jb = 0; jb < bc; ++jb) {
            const Complex* bcol = b.data() + jb * br;
            for (Eigen::Index i = 0; i < ar; ++i) {
                const Complex aij = a(i, j);
                if (aij == Complex(0, 0)) {
                    std::fill(dst, dst + br, Complex(0, 0));
                    dst += br;
                } else {
                    for (Eigen::Index ib = 0; ib < br; ++ib) *dst++ = aij * bcol[ib];
                }
            }
        }
    return c;
}

// Two-mode beamsplitter-type unitary exp[theta (a b^dag - a^dag b)] on the
// product space (a slot first).
inline Matrix beamsplitter_unitary(int dim_a, int dim_b, double theta) {
    const Matrix a = annihilation(dim_a);
    const Matrix b = annihilation(dim_b);
    Matrix g = kron(a, b.adjoint()) - kron(a.adjoint(), b);
    return expm_antihermitian(theta * g);
}

// Displacement D(alpha) = exp(alpha a^dag - conj(alpha) a) on the truncated space.
inline Matrix displacement(int dim, Complex alpha) {
    Matrix g = alpha * creation(dim) - std::conj(alpha) * annihilation(dim);
    return expm_antihermitian(g);
}

// Probability mass of a Poisson(mean) distribution at n >= dim; used by the
// truncation-leakage guards for coherent/Poisson expansions.
inline double poisson_tail(double mean, int dim) {
    if (mean <= 0.0) return 0.0;
    double term = std::exp(-mean);
    double cum = term;
    for (int n = 1; n < dim; ++n) {
        term *= mean / n;
        cum += term;
    }
    return std::max(0.0, 1.0 - cum);
}

} // namespace rebsim
