#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace fragmenta {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Spectrum {
    Vector eigenvalues;  // ascending
    Matrix eigenvectors;  // column i pairs with eigenvalues[i]
};

// Deterministic sign convention: largest-magnitude component positive.
inline void fix_signs(Matrix& V) {
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        Eigen::Index imax = 0;
        V.col(c).cwiseAbs().maxCoeff(&imax);
        if (V(imax, c) < 0) V.col(c) = -V.col(c);
    }
}

inline Spectrum sym_eig(const Matrix& M) {
    if (!M.allFinite()) throw std::invalid_argument("sym_eig: non-finite entries");
    Spectrum s;
    if (M.rows() == 0) {
        s.eigenvalues.resize(0);
        s.eigenvectors.resize(0, 0);
        return s;
    }
    const lapack_int n = static_cast<lapack_int>(M.rows());
    s.eigenvectors = M;
    s.eigenvalues.resize(n);
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                     s.eigenvectors.data(), n, s.eigenvalues.data());
    if (info != 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(M);
        s.eigenvalues = es.eigenvalues();
        s.eigenvectors = es.eigenvectors();
    }
    fix_signs(s.eigenvectors);
    return s;
}

inline Vector sym_eigvals(const Matrix& M) {
    if (M.rows() == 0) return Vector();
    const lapack_int n = static_cast<lapack_int>(M.rows());
    Matrix A = M;
    Vector w(n);
    lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, A.data(), n, w.data());
    if (info != 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
        w = es.eigenvalues();
    }
    return w;
}

// Kernel of a symmetric matrix. PSD path: eigenvectors with lambda <= rel_tol *
// lambda_max. For general symmetric input pass the absolute-value criterion via
// use_abs (|lambda| <= rel_tol * max|lambda|).
inline Matrix null_space(const Matrix& M, double rel_tol = 1e-10, bool use_abs = false) {
    Spectrum s = sym_eig(M);
    if (s.eigenvalues.size() == 0) return Matrix(M.rows(), 0);
    double scale = use_abs ? s.eigenvalues.cwiseAbs().maxCoeff()
                           : s.eigenvalues.maxCoeff();
    double thr = rel_tol * (scale > 0 ? scale : 1.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        double lam = use_abs ? std::abs(s.eigenvalues[i]) : s.eigenvalues[i];
        if (lam <= thr) keep.push_back(i);
    }
    Matrix K(M.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = s.eigenvectors.col(keep[j]);
    return K;
}

// Orthogonal complement of `subspace` (orthonormal columns) within R^n.
inline Matrix project_out(const Matrix& subspace) {
    const Eigen::Index n = subspace.rows();
    if (subspace.cols() > 0) {
        Matrix gram = subspace.transpose() * subspace;
        if ((gram - Matrix::Identity(subspace.cols(), subspace.cols())).cwiseAbs().maxCoeff() > 1e-8)
            throw std::invalid_argument("project_out: non-orthonormal input");
    }
    Matrix P = Matrix::Identity(n, n) - subspace * subspace.transpose();
    Spectrum s = sym_eig(P);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues[i] > 0.5) keep.push_back(i);
    Matrix C(n, static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) C.col(static_cast<Eigen::Index>(j)) = s.eigenvectors.col(keep[j]);
    return C;
}

}  // namespace fragmenta
