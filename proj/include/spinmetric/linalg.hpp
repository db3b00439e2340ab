// linalg.hpp — dense complex matrix primitives shared by every other module:
// eigendecomposition with a deterministic phase convention, positivity test,
// and central-difference time derivatives of matrix-valued functions.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace spinmetric {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultFdStep = 1e-5;

// Largest entry magnitude; works on any Eigen expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

// ||M - M^dagger||_max
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
    const Matrix a = m;
    return max_abs(a - a.adjoint().eval());
}

// The artifact works with one-site spin models only: square, dimension 2..4.
void check_dim(const Matrix& m);

// Rotate v by a unit phase so its first significant component is real-positive.
Vector fix_phase(const Vector& v);

struct EigenSystem {
    Vector values;                 // sorted by (Re, Im)
    std::vector<Vector> vectors;   // unit 2-norm, phase-fixed, same order
    bool defective = false;        // eigenbasis numerically rank-deficient
};

// Full complex eigendecomposition. Eigenvalues are always returned; vectors of
// a defective matrix are not trustworthy and the flag says so.
EigenSystem eigenpairs(const Matrix& m);

// True iff m is Hermitian (within tol) with all eigenvalues > tol.
// Throws std::invalid_argument if m is not Hermitian within tol.
bool positive_definite(const Matrix& m, double tol);
double min_eigenvalue_hermitian(const Matrix& m);

// Central difference (f(t+h) - f(t-h)) / (2h); O(h^2).
Matrix time_derivative(const std::function<Matrix(double)>& f, double t,
                       double step = kDefaultFdStep);

}  // namespace spinmetric
