#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace rsp::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClampTol = 1e-10;
inline constexpr double kSupportEps = 1e-12;

/// Spectral decomposition H = U diag(eigenvalues) U^dagger.
/// Eigenvalues are ascending; columns of `eigenvectors` are orthonormal.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const;
    /// U f(diag) U^dagger.
    ComplexMatrix apply(const std::function<double(double)> &f) const;
};

/// Largest absolute entry, the norm every tolerance in this project is stated in.
double max_abs(const ComplexMatrix &m);
double hermiticity_defect(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix &m, double tol = kHermitianTol);

/// Throws NotSquare / NonFinite when `m` is not a valid ComplexMatrix.
void require_valid(const ComplexMatrix &m);

/// Entry (i*db + k, j*db + l) = a(i, j) * b(k, l).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Throws NotHermitian when ||h - h^dagger||_max > 1e-10. The input is
/// symmetrized before diagonalization.
EigenDecomposition herm_eig(const ComplexMatrix &h);

/// Natural-log matrix function restricted to the eigenspaces with eigenvalue > eps.
/// Eigenvalues in [-1e-10, eps] contribute zero; anything below -1e-10 is NotPSD.
ComplexMatrix logm_on_support(const ComplexMatrix &h, double eps = kSupportEps);

namespace gates {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
/// -i sigma_y, rows (0, -1), (1, 0).
Eigen::Matrix2cd minus_i_pauli_y();
}  // namespace gates

}  // namespace rsp::linalg
