#pragma once

#include <cstdint>
#include <vector>

#include "rsp/quantum.hpp"

namespace rsp::ree {

using linalg::ComplexMatrix;
using quantum::DensityMatrix;
using quantum::StateVector;

struct ProductState {
    Eigen::Vector2cd left;
    Eigen::Vector2cd right;

    Eigen::Vector4cd joint() const;
    ComplexMatrix projector() const;
};

struct EnsembleAtom {
    double weight;
    ProductState state;
};

/// Convex combination of product pure states; always a separable two-qubit state.
class SeparableEnsemble {
  public:
    SeparableEnsemble() = default;
    /// Validates positive weights summing to 1 and unit-norm factors.
    explicit SeparableEnsemble(std::vector<EnsembleAtom> atoms);

    /// I/4 as the uniform mixture of the computational product basis.
    static SeparableEnsemble maximally_mixed();

    const std::vector<EnsembleAtom> &atoms() const { return atoms_; }
    ComplexMatrix density_matrix() const;

  private:
    std::vector<EnsembleAtom> atoms_;
};

enum class StepRule {
    Vanilla,   // toward the LMO atom only
    Away,      // toward the LMO atom or away from the worst active atom
    Pairwise,  // move weight from the worst active atom to the LMO atom
};

struct EreOptions {
    double gap_tol_bits = 1e-4;
    int max_iters = 2000;
    int lmo_restarts = 16;
    std::uint64_t lmo_seed = 0x5eed;
    /// sigma is mixed with regularization * I/4 before the gradient is taken.
    double regularization = 1e-9;
    double prune_below = 1e-12;
    double line_search_tol = 1e-12;
    StepRule step_rule = StepRule::Away;
    /// Gradient moves of the active atoms on their Bloch spheres after each step; 0 disables.
    int slide_steps = 3;
};

struct EreResult {
    double value_bits;
    DensityMatrix sigma;
    SeparableEnsemble ensemble;
    double gap_bits;
    int iterations;
    bool converged;
    /// Objective in bits at every iterate, starting from sigma_0 = I/4.
    std::vector<double> objective_bits;

    double lower_bound_bits() const { return value_bits - gap_bits; }
};

/// Frechet derivative G of sigma -> Tr rho ln sigma, evaluated at sigma mixed with
/// `regularization` * I/4. Throws SingularSigma if the mixed sigma still has an
/// eigenvalue below regularization / 8.
ComplexMatrix log_gradient(const DensityMatrix &rho, const DensityMatrix &sigma,
                           double regularization = 1e-9);
ComplexMatrix log_gradient(const ComplexMatrix &rho, const ComplexMatrix &sigma,
                           double regularization = 1e-9);

struct LmoResult {
    ProductState state;
    double value;
};

/// Approximate argmax of <a b|G|a b> over product pure states by alternating
/// top-eigenvector updates from `restarts` seeded random starts.
LmoResult product_state_lmo(const ComplexMatrix &g, int restarts = 16, std::uint64_t seed = 0x5eed);

/// Relative entropy of entanglement of a two-qubit state (bits).
EreResult ree_frank_wolfe(const DensityMatrix &rho, const EreOptions &opts = {});

/// Entanglement entropy of the `left` side of a pure state.
double pure_state_ree_oracle(const StateVector &psi, std::span<const quantum::Label> left);

double concurrence(const DensityMatrix &rho);
/// Entanglement of formation (bits), from the concurrence.
double eof(const DensityMatrix &rho);
double binary_entropy(double p);

/// Minimum partial-transpose eigenvalue (transpose on the second qubit).
double min_partial_transpose_eigenvalue(const DensityMatrix &rho);
bool is_ppt(const DensityMatrix &rho, double tol = 1e-10);

/// Upper bound on the REE from seeded random separable ensembles of 16 atoms.
double ree_random_search(const DensityMatrix &rho, int samples, std::uint64_t seed);

}  // namespace rsp::ree
