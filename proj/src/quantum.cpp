#include "rsp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "rsp/errors.hpp"

namespace rsp::quantum {

namespace {

void require_distinct(const Labels &labels) {
    std::set<std::string_view> seen;
    for (const auto &l : labels) {
        if (!seen.insert(l).second) {
            throw Error(ErrorKind::DuplicateLabel, "label '" + l + "' appears twice");
        }
    }
}

std::size_t position_in(const Labels &labels, std::string_view label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw Error(ErrorKind::UnknownLabel, "no qubit labelled '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

// Bit mask of qubit at `pos` in an n-qubit register (leftmost label = MSB).
std::size_t bit_of(std::size_t n, std::size_t pos) { return std::size_t{1} << (n - 1 - pos); }

}  // namespace

StateVector::StateVector(Labels labels, ComplexVector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    require_distinct(labels_);
    if (amplitudes_.size() != (Eigen::Index{1} << labels_.size())) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(amplitudes_.size()) + " amplitudes for " +
                        std::to_string(labels_.size()) + " qubits");
    }
    if (!amplitudes_.allFinite()) {
        throw Error(ErrorKind::NonFinite, "state vector has NaN or Inf amplitudes");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw Error(ErrorKind::InvalidState, "state norm is " + std::to_string(norm));
    }
}

StateVector StateVector::normalized(Labels labels, ComplexVector amplitudes) {
    double norm = amplitudes.norm();
    if (!(norm > 0.0)) {
        throw Error(ErrorKind::InvalidState, "cannot normalize the zero vector");
    }
    return StateVector(std::move(labels), amplitudes / norm);
}

std::size_t StateVector::position(std::string_view label) const { return position_in(labels_, label); }

bool StateVector::has_label(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

Complex StateVector::amplitude(std::string_view bits) const {
    if (bits.size() != labels_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "bitstring length differs from qubit count");
    }
    std::size_t index = 0;
    for (char c : bits) {
        index = (index << 1) | (c == '1' ? 1u : 0u);
    }
    return amplitudes_(static_cast<Eigen::Index>(index));
}

Complex StateVector::inner(const StateVector &other) const {
    if (labels_ != other.labels_) {
        throw Error(ErrorKind::DimensionMismatch, "inner product of states on different registers");
    }
    return amplitudes_.dot(other.amplitudes_);
}

DensityMatrix::DensityMatrix(Labels labels, ComplexMatrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
    require_distinct(labels_);
    linalg::require_valid(matrix_);
    if (matrix_.rows() != (Eigen::Index{1} << labels_.size())) {
        throw Error(ErrorKind::DimensionMismatch, "matrix dimension does not match qubit count");
    }
    auto eig = linalg::herm_eig(matrix_);
    double trace = matrix_.trace().real();
    if (std::abs(trace - 1.0) > linalg::kHermitianTol) {
        throw Error(ErrorKind::InvalidState, "trace is " + std::to_string(trace));
    }
    if (eig.eigenvalues.minCoeff() < -linalg::kPsdClampTol) {
        throw Error(ErrorKind::NotPSD, "min eigenvalue " + std::to_string(eig.eigenvalues.minCoeff()));
    }
}

Basis2::Basis2(Eigen::Vector2cd first, Eigen::Vector2cd second) : first_(first), second_(second) {
    constexpr double tol = 1e-12;
    if (std::abs(first_.norm() - 1.0) > tol || std::abs(second_.norm() - 1.0) > tol ||
        std::abs(first_.dot(second_)) > tol) {
        throw Error(ErrorKind::InputsNotOrthonormal, "basis vectors are not orthonormal");
    }
}

Basis2 Basis2::computational() {
    return Basis2(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1));
}

StateVector ket(std::string_view bits, Labels labels) {
    if (bits.size() != labels.size()) {
        throw Error(ErrorKind::DimensionMismatch, "bitstring length differs from label count");
    }
    ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << labels.size());
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::ParseError, "bitstring must contain only 0 and 1");
        }
        index = (index << 1) | (c == '1' ? 1u : 0u);
    }
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

StateVector superpose(std::span<const std::pair<Complex, StateVector>> terms) {
    if (terms.empty()) {
        throw Error(ErrorKind::InvalidState, "empty superposition");
    }
    const Labels &labels = terms.front().second.labels();
    ComplexVector acc = ComplexVector::Zero(static_cast<Eigen::Index>(terms.front().second.dim()));
    for (const auto &[coeff, s] : terms) {
        if (s.labels() != labels) {
            throw Error(ErrorKind::DimensionMismatch, "superposed states live on different registers");
        }
        acc += coeff * s.amplitudes();
    }
    return StateVector::normalized(labels, std::move(acc));
}

StateVector apply_single_qubit(const Eigen::Matrix2cd &gate, std::string_view label,
                               const StateVector &s) {
    if (!linalg::is_unitary(gate)) {
        throw Error(ErrorKind::NotUnitary, "gate is not unitary within 1e-10");
    }
    const std::size_t n = s.num_qubits();
    const std::size_t mask = bit_of(n, s.position(label));
    ComplexVector out = s.amplitudes();
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if (base & mask) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(base);
        auto i1 = static_cast<Eigen::Index>(base | mask);
        Complex v0 = s.amplitudes()(i0);
        Complex v1 = s.amplitudes()(i1);
        out(i0) = gate(0, 0) * v0 + gate(0, 1) * v1;
        out(i1) = gate(1, 0) * v0 + gate(1, 1) * v1;
    }
    // Unitary action; renormalize only the rounding.
    return StateVector::normalized(s.labels(), std::move(out));
}

MeasurementResolution measure_in_basis(const StateVector &s, std::string_view label,
                                       const Basis2 &basis) {
    const std::size_t n = s.num_qubits();
    const std::size_t pos = s.position(label);
    const std::size_t mask = bit_of(n, pos);
    Labels rest = s.labels();
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
    const std::size_t rest_dim = s.dim() / 2;

    MeasurementResolution out;
    for (std::size_t outcome = 0; outcome < 2; ++outcome) {
        const Eigen::Vector2cd &b = basis[outcome];
        ComplexVector projected = ComplexVector::Zero(static_cast<Eigen::Index>(rest_dim));
        for (std::size_t r = 0; r < rest_dim; ++r) {
            // Reinsert a zero bit at `pos` to recover the full index.
            std::size_t low = r & (mask - 1);
            std::size_t high = (r & ~(mask - 1)) << 1;
            std::size_t full = high | low;
            projected(static_cast<Eigen::Index>(r)) =
                std::conj(b(0)) * s.amplitudes()(static_cast<Eigen::Index>(full)) +
                std::conj(b(1)) * s.amplitudes()(static_cast<Eigen::Index>(full | mask));
        }
        double p = projected.squaredNorm();
        out.branches[outcome].probability = p;
        if (p > 0.0) {
            out.branches[outcome].post_state = StateVector::normalized(rest, projected);
        }
    }
    return out;
}

DensityMatrix density_of(const StateVector &s) {
    return DensityMatrix(s.labels(), s.amplitudes() * s.amplitudes().adjoint());
}

DensityMatrix partial_trace(const DensityMatrix &d, std::span<const Label> keep) {
    if (keep.empty()) {
        throw Error(ErrorKind::EmptyKeepSet, "partial trace must keep at least one qubit");
    }
    const Labels &labels = d.labels();
    const std::size_t n = labels.size();
    std::vector<bool> kept(n, false);
    for (const auto &k : keep) {
        kept[position_in(labels, k)] = true;
    }
    Labels kept_labels;
    std::vector<std::size_t> kept_masks;
    std::vector<std::size_t> traced_masks;
    for (std::size_t p = 0; p < n; ++p) {
        if (kept[p]) {
            kept_labels.push_back(labels[p]);
            kept_masks.push_back(bit_of(n, p));
        } else {
            traced_masks.push_back(bit_of(n, p));
        }
    }
    auto expand = [](std::size_t compact, const std::vector<std::size_t> &masks) {
        std::size_t full = 0;
        const std::size_t m = masks.size();
        for (std::size_t q = 0; q < m; ++q) {
            if ((compact >> (m - 1 - q)) & 1u) {
                full |= masks[q];
            }
        }
        return full;
    };
    const std::size_t kd = std::size_t{1} << kept_masks.size();
    const std::size_t td = std::size_t{1} << traced_masks.size();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    for (std::size_t i = 0; i < kd; ++i) {
        const std::size_t fi = expand(i, kept_masks);
        for (std::size_t j = 0; j < kd; ++j) {
            const std::size_t fj = expand(j, kept_masks);
            Complex acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                const std::size_t ft = expand(t, traced_masks);
                acc += d.matrix()(static_cast<Eigen::Index>(fi | ft), static_cast<Eigen::Index>(fj | ft));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(std::move(kept_labels), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &d, std::initializer_list<Label> keep) {
    return partial_trace(d, std::span<const Label>(keep.begin(), keep.size()));
}

DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right) {
    Labels labels = left.labels();
    labels.insert(labels.end(), right.labels().begin(), right.labels().end());
    return DensityMatrix(std::move(labels), linalg::kron(left.matrix(), right.matrix()));
}

double fidelity_with_pure(const DensityMatrix &d, const StateVector &target) {
    if (d.dim() != target.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "fidelity target lives on a different register size");
    }
    const ComplexVector &t = target.amplitudes();
    double f = t.dot(d.matrix() * t).real();
    return std::clamp(f, 0.0, 1.0);
}

double overlap_magnitude(const StateVector &a, const StateVector &b) { return std::abs(a.inner(b)); }

double von_neumann_entropy(const DensityMatrix &d) {
    auto eig = linalg::herm_eig(d.matrix());
    double s = 0.0;
    for (double lambda : eig.eigenvalues) {
        if (lambda > linalg::kSupportEps) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

double RelativeEntropy::bits() const {
    if (infinite_) {
        throw Error(ErrorKind::DomainError, "relative entropy is +infinity (support violation)");
    }
    return bits_;
}

RelativeEntropy relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "relative entropy of states with different dimension");
    }
    auto rho_eig = linalg::herm_eig(rho.matrix());
    auto sigma_eig = linalg::herm_eig(sigma.matrix());
    double neg_entropy = 0.0;
    for (double mu : rho_eig.eigenvalues) {
        if (mu > linalg::kSupportEps) {
            neg_entropy += mu * std::log2(mu);
        }
    }
    double cross = 0.0;
    for (Eigen::Index i = 0; i < sigma_eig.eigenvalues.size(); ++i) {
        const auto v = sigma_eig.eigenvectors.col(i);
        double weight = v.dot(rho.matrix() * v).real();
        double lambda = sigma_eig.eigenvalues(i);
        if (lambda > linalg::kSupportEps) {
            cross += weight * std::log2(lambda);
        } else if (weight > linalg::kSupportEps) {
            return RelativeEntropy::infinite();
        }
    }
    return RelativeEntropy::finite(neg_entropy - cross);
}

}  // namespace rsp::quantum
