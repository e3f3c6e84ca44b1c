#include "rsp/linalg.hpp"

#include <cmath>
#include <string>

#include "rsp/errors.hpp"

namespace rsp::linalg {

ComplexMatrix EigenDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix EigenDecomposition::apply(const std::function<double(double)> &f) const {
    Eigen::VectorXcd mapped(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        mapped(i) = f(eigenvalues(i));
    }
    return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
}

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix &m) {
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

void require_valid(const ComplexMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::NotSquare,
                    "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
    }
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Eigen::Index db_rows = b.rows();
    const Eigen::Index db_cols = b.cols();
    ComplexMatrix out(a.rows() * db_rows, a.cols() * db_cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * db_rows, j * db_cols, db_rows, db_cols) = a(i, j) * b;
        }
    }
    return out;
}

EigenDecomposition herm_eig(const ComplexMatrix &h) {
    require_valid(h);
    double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian, "||h - h^dagger||_max = " + std::to_string(defect));
    }
    ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix logm_on_support(const ComplexMatrix &h, double eps) {
    EigenDecomposition eig = herm_eig(h);
    double smallest = eig.eigenvalues.minCoeff();
    if (smallest < -kPsdClampTol) {
        throw Error(ErrorKind::NotPSD, "min eigenvalue " + std::to_string(smallest));
    }
    return eig.apply([eps](double x) { return x > eps ? std::log(x) : 0.0; });
}

namespace gates {

Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd minus_i_pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, -1, 1, 0;
    return m;
}

}  // namespace gates

}  // namespace rsp::linalg
