#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "rsp/quantum.hpp"

namespace rsp::random {

// std::mt19937_64 output is fixed by the standard, but the std:: distributions are
// not, so every draw below goes through hand-written transforms.
using Engine = std::mt19937_64;

inline constexpr std::string_view kGeneratorName = "mt19937_64/u53-v1";

/// Uniform in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Engine &rng);
/// Standard normal via Box-Muller (consumes two uniforms).
double standard_normal(Engine &rng);

Eigen::Vector2cd haar_qubit(Engine &rng);
Eigen::Matrix2cd haar_unitary2(Engine &rng);
/// Uniform on the probability simplex of the given size.
Eigen::VectorXd simplex_weights(Engine &rng, Eigen::Index size);

quantum::StateVector haar_state(const quantum::Labels &labels, Engine &rng);
/// Full-rank mixed state drawn from the Hilbert-Schmidt ensemble.
quantum::DensityMatrix hilbert_schmidt_density(const quantum::Labels &labels, Engine &rng);

}  // namespace rsp::random
