#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/linalg.hpp"

namespace rsp::quantum {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

using Label = std::string;
using Labels = std::vector<Label>;

inline constexpr double kNormTol = 1e-10;

// Amplitudes are indexed by bitstrings read in label order; the first label is
// the most significant bit. So on (a, A, B, C) index 0b0001 is |0>_a|0>_A|0>_B|1>_C.
class StateVector {
  public:
    /// Throws DuplicateLabel, DimensionMismatch, or InvalidState (norm off by more than 1e-10).
    StateVector(Labels labels, ComplexVector amplitudes);

    /// Rescales to unit norm first. Throws InvalidState for the zero vector.
    static StateVector normalized(Labels labels, ComplexVector amplitudes);

    const Labels &labels() const { return labels_; }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

    /// Position of `label` in the register. Throws UnknownLabel.
    std::size_t position(std::string_view label) const;
    bool has_label(std::string_view label) const;

    Complex amplitude(std::string_view bits) const;
    Complex inner(const StateVector &other) const;

  private:
    Labels labels_;
    ComplexVector amplitudes_;
};

class DensityMatrix {
  public:
    /// Validates Hermitian, unit trace and min eigenvalue >= -1e-10 (all within 1e-10).
    DensityMatrix(Labels labels, ComplexMatrix matrix);

    const Labels &labels() const { return labels_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  private:
    Labels labels_;
    ComplexMatrix matrix_;
};

/// Two orthonormal single-qubit states. `first` is outcome index 0.
class Basis2 {
  public:
    Basis2(Eigen::Vector2cd first, Eigen::Vector2cd second);

    static Basis2 computational();

    const Eigen::Vector2cd &first() const { return first_; }
    const Eigen::Vector2cd &second() const { return second_; }
    const Eigen::Vector2cd &operator[](std::size_t i) const { return i == 0 ? first_ : second_; }

  private:
    Eigen::Vector2cd first_;
    Eigen::Vector2cd second_;
};

struct MeasurementBranch {
    double probability = 0.0;
    /// Remaining register with the measured qubit removed; empty when probability is 0.
    std::optional<StateVector> post_state;
};

struct MeasurementResolution {
    std::array<MeasurementBranch, 2> branches;
};

StateVector ket(std::string_view bits, Labels labels);

/// Normalized linear combination sum_k c_k |s_k>; all terms must share labels.
StateVector superpose(std::span<const std::pair<Complex, StateVector>> terms);

/// Throws NotUnitary (tolerance 1e-10) or UnknownLabel.
StateVector apply_single_qubit(const Eigen::Matrix2cd &gate, std::string_view label,
                               const StateVector &s);

MeasurementResolution measure_in_basis(const StateVector &s, std::string_view label,
                                       const Basis2 &basis);

DensityMatrix density_of(const StateVector &s);

/// Kept labels retain their order in the input register.
DensityMatrix partial_trace(const DensityMatrix &d, std::span<const Label> keep);
DensityMatrix partial_trace(const DensityMatrix &d, std::initializer_list<Label> keep);

/// Tensor product register; labels must be disjoint.
DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right);

double fidelity_with_pure(const DensityMatrix &d, const StateVector &target);

/// |<a|b>|, the only state comparison used where global phase is physically irrelevant.
double overlap_magnitude(const StateVector &a, const StateVector &b);

/// Bits.
double von_neumann_entropy(const DensityMatrix &d);

/// Either a finite number of bits or the +infinity sentinel raised by a support violation.
class RelativeEntropy {
  public:
    static RelativeEntropy finite(double bits) { return RelativeEntropy(false, bits); }
    static RelativeEntropy infinite() { return RelativeEntropy(true, 0.0); }

    bool is_infinite() const { return infinite_; }
    /// Throws DomainError on the sentinel.
    double bits() const;

  private:
    RelativeEntropy(bool infinite, double bits) : infinite_(infinite), bits_(bits) {}
    bool infinite_;
    double bits_;
};

/// Tr rho (log2 rho - log2 sigma), or the sentinel when supp(rho) is not inside supp(sigma).
RelativeEntropy relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma);

}  // namespace rsp::quantum
