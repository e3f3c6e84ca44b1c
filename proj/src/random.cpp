#include "rsp/random.hpp"

#include <cmath>
#include <numbers>

namespace rsp::random {

double uniform01(Engine &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(Engine &rng) {
    double u1 = 1.0 - uniform01(rng);  // (0, 1]
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

linalg::ComplexVector gaussian_vector(Engine &rng, Eigen::Index size) {
    linalg::ComplexVector v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        double re = standard_normal(rng);
        double im = standard_normal(rng);
        v(i) = {re, im};
    }
    return v;
}

}  // namespace

Eigen::Vector2cd haar_qubit(Engine &rng) {
    linalg::ComplexVector v = gaussian_vector(rng, 2);
    return v / v.norm();
}

Eigen::Matrix2cd haar_unitary2(Engine &rng) {
    Eigen::Vector2cd first = haar_qubit(rng);
    double phase = 2.0 * std::numbers::pi * uniform01(rng);
    Eigen::Vector2cd second(-std::conj(first(1)), std::conj(first(0)));
    second *= std::polar(1.0, phase);
    Eigen::Matrix2cd u;
    u.col(0) = first;
    u.col(1) = second;
    return u;
}

Eigen::VectorXd simplex_weights(Engine &rng, Eigen::Index size) {
    Eigen::VectorXd w(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        w(i) = -std::log(1.0 - uniform01(rng));
    }
    return w / w.sum();
}

quantum::StateVector haar_state(const quantum::Labels &labels, Engine &rng) {
    return quantum::StateVector::normalized(labels, gaussian_vector(rng, Eigen::Index{1} << labels.size()));
}

quantum::DensityMatrix hilbert_schmidt_density(const quantum::Labels &labels, Engine &rng) {
    const Eigen::Index dim = Eigen::Index{1} << labels.size();
    linalg::ComplexMatrix g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        g.col(c) = gaussian_vector(rng, dim);
    }
    linalg::ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return quantum::DensityMatrix(labels, 0.5 * (m + m.adjoint()));
}

}  // namespace rsp::random
