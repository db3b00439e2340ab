#include "spinmetric/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinmetric {

void check_dim(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix must be square");
    }
    if (m.rows() < 2 || m.rows() > 4) {
        throw std::invalid_argument("matrix dimension must be 2, 3 or 4");
    }
}

Vector fix_phase(const Vector& v) {
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return v;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12 * scale) {
            const Complex phase = std::abs(v(i)) / v(i);
            return (v * phase).eval();
        }
    }
    return v;
}

EigenSystem eigenpairs(const Matrix& m) {
    check_dim(m);
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenpairs: decomposition failed");
    }

    const Eigen::Index n = m.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    const Vector& vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (vals(a).real() != vals(b).real()) return vals(a).real() < vals(b).real();
        return vals(a).imag() < vals(b).imag();
    });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = order[static_cast<std::size_t>(i)];
        sys.values(i) = vals(j);
        Vector v = solver.eigenvectors().col(j);
        v.normalize();
        sys.vectors.push_back(fix_phase(v));
    }

    // Coalescing eigenvectors show up as a rank-deficient eigenvector matrix.
    Matrix vmat(n, n);
    for (Eigen::Index i = 0; i < n; ++i) vmat.col(i) = sys.vectors[static_cast<std::size_t>(i)];
    Eigen::JacobiSVD<Matrix> svd(vmat);
    const auto& sv = svd.singularValues();
    sys.defective = sv(sv.size() - 1) < 1e-8 * sv(0);
    return sys;
}

bool positive_definite(const Matrix& m, double tol) {
    check_dim(m);
    if (hermiticity_residual(m) > tol) {
        throw std::invalid_argument("positive_definite: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint().eval()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("positive_definite: decomposition failed");
    }
    return solver.eigenvalues().minCoeff() > tol;
}

double min_eigenvalue_hermitian(const Matrix& m) {
    check_dim(m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint().eval()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue_hermitian: decomposition failed");
    }
    return solver.eigenvalues().minCoeff();
}

Matrix time_derivative(const std::function<Matrix(double)>& f, double t, double step) {
    if (step <= 0.0) {
        throw std::invalid_argument("time_derivative: step must be positive");
    }
    return (f(t + step) - f(t - step)) / (2.0 * step);
}

}  // namespace spinmetric
