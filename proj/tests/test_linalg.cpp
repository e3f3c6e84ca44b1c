#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rsp/errors.hpp"
#include "rsp/linalg.hpp"

namespace {

using namespace rsp::linalg;

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64 &rng) {
    ComplexMatrix a = random_matrix(dim, dim, rng);
    return 0.5 * (a + a.adjoint());
}

void expect_throws_kind(const std::function<void()> &f, rsp::ErrorKind kind) {
    try {
        f();
        ADD_FAILURE() << "expected " << rsp::to_string(kind);
    } catch (const rsp::Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

TEST(Kron, MatchesIndexFormulaOnRectangularFactors) {
    std::mt19937_64 rng(1);
    const ComplexMatrix a = random_matrix(2, 3, rng);
    const ComplexMatrix b = random_matrix(3, 2, rng);
    const ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    ASSERT_EQ(k.cols(), 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Kron, MixedProductProperty) {
    std::mt19937_64 rng(2);
    const ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const ComplexMatrix c = random_matrix(2, 2, rng), d = random_matrix(2, 2, rng);
    EXPECT_LT(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)), 1e-12);
}

TEST(HermEig, ReconstructsAndIsAscendingOrthonormal) {
    std::mt19937_64 rng(3);
    for (int dim : {2, 4, 8}) {
        const ComplexMatrix h = random_hermitian(dim, rng);
        const auto e = herm_eig(h);
        EXPECT_LT(max_abs(e.reconstruct() - h), 1e-12);
        EXPECT_TRUE(is_unitary(e.eigenvectors));
        for (int i = 1; i < dim; ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
    }
}

TEST(HermEig, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    expect_throws_kind([&] { herm_eig(m); }, rsp::ErrorKind::NotHermitian);
}

TEST(HermEig, RejectsNonSquareAndNonFinite) {
    expect_throws_kind([] { herm_eig(ComplexMatrix::Zero(2, 3)); }, rsp::ErrorKind::NotSquare);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = std::nan("");
    expect_throws_kind([&] { herm_eig(m); }, rsp::ErrorKind::NonFinite);
}

TEST(HermEig, ToleratesRoundoffAsymmetry) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = Complex(0.3, 1e-12);
    m(1, 0) = 0.3;
    EXPECT_NO_THROW(herm_eig(m));
}

TEST(LogmOnSupport, DiagonalOracle) {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 0.5;
    d(1, 1) = 0.25;
    const ComplexMatrix l = logm_on_support(d);
    EXPECT_NEAR(l(0, 0).real(), std::log(0.5), 1e-14);
    EXPECT_NEAR(l(1, 1).real(), std::log(0.25), 1e-14);
    EXPECT_EQ(l(2, 2), Complex(0.0));
}

TEST(LogmOnSupport, ExponentiatesBackOnFullRank) {
    std::mt19937_64 rng(4);
    ComplexMatrix a = random_matrix(4, 4, rng);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    const auto log_rho = herm_eig(logm_on_support(rho));
    const ComplexMatrix back = log_rho.apply([](double x) { return std::exp(x); });
    EXPECT_LT(max_abs(back - rho), 1e-12);
}

TEST(LogmOnSupport, RejectsNegativeSpectrum) {
    ComplexMatrix d = ComplexMatrix::Identity(2, 2);
    d(1, 1) = -1e-6;
    expect_throws_kind([&] { logm_on_support(d); }, rsp::ErrorKind::NotPSD);
    d(1, 1) = -1e-11;
    EXPECT_NO_THROW(logm_on_support(d));
}

TEST(Gates, PaulisAreUnitaryHermitianAndAnticommute) {
    const auto x = gates::pauli_x(), y = gates::pauli_y(), z = gates::pauli_z();
    for (const auto &g : {x, y, z}) {
        EXPECT_TRUE(is_unitary(g));
        EXPECT_TRUE(is_hermitian(g));
        EXPECT_LT(max_abs(g * g - gates::identity()), 1e-15);
    }
    EXPECT_LT(max_abs(x * y - Complex(0, 1) * z), 1e-15);
    EXPECT_LT(max_abs(x * z + z * x), 1e-15);
}

TEST(Gates, MinusIPauliYIsRealRotation) {
    const auto g = gates::minus_i_pauli_y();
    EXPECT_LT(max_abs(g - Complex(0, -1) * gates::pauli_y()), 1e-15);
    EXPECT_EQ(g(0, 1), Complex(-1.0));
    EXPECT_EQ(g(1, 0), Complex(1.0));
    EXPECT_TRUE(is_unitary(g));
}

TEST(Predicates, HermiticityDefectAndUnitarity) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = Complex(0, 1e-3);
    EXPECT_NEAR(hermiticity_defect(m), 1e-3, 1e-15);
    EXPECT_FALSE(is_hermitian(m));
    EXPECT_FALSE(is_unitary(2.0 * gates::identity()));
}

}  // namespace
