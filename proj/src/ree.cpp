#include "rsp/ree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rsp/errors.hpp"
#include "rsp/random.hpp"

namespace rsp::ree {

using linalg::Complex;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const quantum::Labels &pair_labels() {
    static const quantum::Labels labels{"L", "R"};
    return labels;
}

void require_two_qubit(const ComplexMatrix &m, const char *what) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be a 4x4 two-qubit operator");
    }
}

// (ln a - ln b) / (a - b), continuous at a == b.
double log_divided_difference(double a, double b) {
    if (a == b) {
        return 1.0 / a;
    }
    double x = (a - b) / b;
    if (std::abs(x) < 0.5) {
        return std::log1p(x) / (a - b);
    }
    return (std::log(a) - std::log(b)) / (a - b);
}

// -Tr rho ln sigma restricted to the support; +inf when rho leaks outside it.
class CrossEntropy {
  public:
    explicit CrossEntropy(const ComplexMatrix &rho) : rho_(rho) {}

    double operator()(const Eigen::Matrix4cd &sigma) const {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(sigma);
        const auto &lambda = solver.eigenvalues();
        const auto &v = solver.eigenvectors();
        double acc = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            double weight = v.col(i).dot(rho_ * v.col(i)).real();
            if (lambda(i) > linalg::kSupportEps) {
                acc -= weight * std::log(lambda(i));
            } else if (weight > linalg::kSupportEps) {
                return kInf;
            }
        }
        return acc;
    }

  private:
    Eigen::Matrix4cd rho_;
};

double neg_entropy_nats(const ComplexMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
    double acc = 0.0;
    for (double mu : solver.eigenvalues()) {
        if (mu > linalg::kSupportEps) {
            acc += mu * std::log(mu);
        }
    }
    return acc;
}

// Golden-section minimization of a convex function on [0, hi].
template <typename F>
double golden_section(F &&f, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

Eigen::Vector2cd top_eigenvector(const Eigen::Matrix2cd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(0.5 * (m + m.adjoint()));
    return solver.eigenvectors().col(1);
}

// Contract G with a fixed factor on one side, leaving a 2x2 operator on the other.
template <typename M>
Eigen::Matrix2cd contract_right(const M &g, const Eigen::Vector2cd &b) {
    Eigen::Matrix2cd out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            Complex acc = 0.0;
            for (int m = 0; m < 2; ++m) {
                for (int n = 0; n < 2; ++n) {
                    acc += std::conj(b(m)) * g(2 * k + m, 2 * l + n) * b(n);
                }
            }
            out(k, l) = acc;
        }
    }
    return out;
}

template <typename M>
Eigen::Matrix2cd contract_left(const M &g, const Eigen::Vector2cd &a) {
    Eigen::Matrix2cd out;
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            Complex acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    acc += std::conj(a(k)) * g(2 * k + m, 2 * l + n) * a(l);
                }
            }
            out(m, n) = acc;
        }
    }
    return out;
}

template <typename M>
double expectation(const M &g, const ProductState &s) {
    Eigen::Vector4cd v = s.joint();
    return v.dot(g * v).real();
}

bool same_ray(const ProductState &x, const ProductState &y) {
    return std::norm(x.joint().dot(y.joint())) > 1.0 - 1e-14;
}

}  // namespace

Eigen::Vector4cd ProductState::joint() const {
    Eigen::Vector4cd v;
    v << left(0) * right(0), left(0) * right(1), left(1) * right(0), left(1) * right(1);
    return v;
}

ComplexMatrix ProductState::projector() const {
    Eigen::Vector4cd v = joint();
    return v * v.adjoint();
}

SeparableEnsemble::SeparableEnsemble(std::vector<EnsembleAtom> atoms) : atoms_(std::move(atoms)) {
    double total = 0.0;
    for (const auto &atom : atoms_) {
        if (!(atom.weight > 0.0)) {
            throw Error(ErrorKind::InvalidState, "ensemble weights must be positive");
        }
        if (std::abs(atom.state.left.norm() - 1.0) > 1e-12 || std::abs(atom.state.right.norm() - 1.0) > 1e-12) {
            throw Error(ErrorKind::InvalidState, "ensemble factors must be unit vectors");
        }
        total += atom.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorKind::InvalidState, "ensemble weights sum to " + std::to_string(total));
    }
}

SeparableEnsemble SeparableEnsemble::maximally_mixed() {
    const Eigen::Vector2cd zero(1, 0);
    const Eigen::Vector2cd one(0, 1);
    return SeparableEnsemble({{0.25, {zero, zero}}, {0.25, {zero, one}}, {0.25, {one, zero}}, {0.25, {one, one}}});
}

ComplexMatrix SeparableEnsemble::density_matrix() const {
    ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
    for (const auto &atom : atoms_) {
        sigma += atom.weight * atom.state.projector();
    }
    return sigma;
}

ComplexMatrix log_gradient(const ComplexMatrix &rho, const ComplexMatrix &sigma, double regularization) {
    require_two_qubit(rho, "rho");
    require_two_qubit(sigma, "sigma");
    ComplexMatrix mixed = (1.0 - regularization) * sigma +
                          (regularization / 4.0) * ComplexMatrix::Identity(4, 4);
    auto eig = linalg::herm_eig(mixed);
    const auto &lambda = eig.eigenvalues;
    if (lambda.minCoeff() < regularization / 8.0 || lambda.minCoeff() <= 0.0) {
        throw Error(ErrorKind::SingularSigma,
                    "sigma eigenvalue " + std::to_string(lambda.minCoeff()) + " below regularization floor");
    }
    const ComplexMatrix &u = eig.eigenvectors;
    ComplexMatrix rt = u.adjoint() * rho * u;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            rt(i, j) *= log_divided_difference(lambda(i), lambda(j));
        }
    }
    ComplexMatrix g = u * rt * u.adjoint();
    return 0.5 * (g + g.adjoint());
}

ComplexMatrix log_gradient(const DensityMatrix &rho, const DensityMatrix &sigma, double regularization) {
    return log_gradient(rho.matrix(), sigma.matrix(), regularization);
}

LmoResult product_state_lmo(const ComplexMatrix &g, int restarts, std::uint64_t seed) {
    require_two_qubit(g, "G");
    if (!linalg::is_hermitian(g)) {
        throw Error(ErrorKind::NotHermitian, "LMO operator is not Hermitian");
    }
    random::Engine rng(seed);
    LmoResult best{{Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 0)}, -kInf};
    for (int r = 0; r < std::max(restarts, 1); ++r) {
        ProductState s{Eigen::Vector2cd(1, 0), random::haar_qubit(rng)};
        double value = -kInf;
        for (int sweep = 0; sweep < 500; ++sweep) {
            s.left = top_eigenvector(contract_right(g, s.right));
            s.right = top_eigenvector(contract_left(g, s.left));
            double next = expectation(g, s);
            bool settled = std::abs(next - value) < 1e-12;
            value = next;
            if (settled) {
                break;
            }
        }
        if (value > best.value) {
            best = {s, value};
        }
    }
    return best;
}

namespace {

using Mat4 = Eigen::Matrix4cd;

struct Iterate {
    std::vector<EnsembleAtom> atoms;
    Mat4 sigma;
    double cross;  // -Tr rho ln sigma
};

Mat4 assemble(const std::vector<EnsembleAtom> &atoms) {
    Mat4 sigma = Mat4::Zero();
    for (const auto &atom : atoms) {
        Eigen::Vector4cd v = atom.state.joint();
        sigma.noalias() += atom.weight * (v * v.adjoint());
    }
    return sigma;
}

void normalize_weights(std::vector<EnsembleAtom> &atoms, double prune_below) {
    std::erase_if(atoms, [&](const EnsembleAtom &a) { return a.weight < prune_below; });
    double total = 0.0;
    for (const auto &atom : atoms) {
        total += atom.weight;
    }
    for (auto &atom : atoms) {
        atom.weight /= total;
    }
}

// Folds atoms describing the same product state into one.
void merge_duplicates(std::vector<EnsembleAtom> &atoms) {
    std::vector<EnsembleAtom> merged;
    merged.reserve(atoms.size());
    for (const auto &atom : atoms) {
        auto same = std::find_if(merged.begin(), merged.end(),
                                 [&](const EnsembleAtom &m) { return same_ray(m.state, atom.state); });
        if (same != merged.end()) {
            same->weight += atom.weight;
        } else {
            merged.push_back(atom);
        }
    }
    atoms = std::move(merged);
}

// Moves every active atom along the tangent ascent direction of <a b|G|a b>, keeping
// the move only when the objective decreases. Returns false when no step helps.
bool slide_atoms(Iterate &it, const Mat4 &g, const CrossEntropy &cross, double &step_hint) {
    struct Tangent {
        Eigen::Vector2cd da;
        Eigen::Vector2cd db;
    };
    std::vector<Tangent> tangents;
    tangents.reserve(it.atoms.size());
    double norm2 = 0.0;
    for (const auto &atom : it.atoms) {
        const auto &a = atom.state.left;
        const auto &b = atom.state.right;
        Eigen::Matrix2cd ma = contract_right(g, b);
        Eigen::Matrix2cd mb = contract_left(g, a);
        Eigen::Vector2cd da = ma * a - a.dot(ma * a) * a;
        Eigen::Vector2cd db = mb * b - b.dot(mb * b) * b;
        norm2 += atom.weight * (da.squaredNorm() + db.squaredNorm());
        tangents.push_back({da, db});
    }
    if (!(norm2 > 1e-30)) {
        return false;
    }
    double step = std::min(1.0, 2.0 * step_hint);
    for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
        std::vector<EnsembleAtom> moved = it.atoms;
        for (std::size_t j = 0; j < moved.size(); ++j) {
            auto &s = moved[j].state;
            s.left = (s.left + step * tangents[j].da).normalized();
            s.right = (s.right + step * tangents[j].db).normalized();
        }
        Mat4 sigma = assemble(moved);
        double value = cross(sigma);
        if (value < it.cross) {
            it.atoms = std::move(moved);
            it.sigma = sigma;
            it.cross = value;
            step_hint = step;
            return true;
        }
    }
    step_hint = 1e-6;
    return false;
}

}  // namespace

EreResult ree_frank_wolfe(const DensityMatrix &rho_state, const EreOptions &opts) {
    const ComplexMatrix &rho = rho_state.matrix();
    require_two_qubit(rho, "rho");
    const double ln2 = std::numbers::ln2;
    const double neg_entropy = neg_entropy_nats(rho);
    const CrossEntropy cross(rho);

    Iterate it{SeparableEnsemble::maximally_mixed().atoms(), Mat4::Identity() / 4.0, 0.0};
    it.cross = cross(it.sigma);

    std::vector<double> history{(neg_entropy + it.cross) / ln2};
    double gap_bits = kInf;
    double slide_hint = 0.1;
    bool converged = false;
    int iter = 0;
    for (;; ++iter) {
        Mat4 g = log_gradient(rho, it.sigma, opts.regularization);
        double sigma_dot = (it.sigma * g).trace().real();
        LmoResult toward = product_state_lmo(g, opts.lmo_restarts, opts.lmo_seed + static_cast<std::uint64_t>(iter));
        double fw_gap = std::max(0.0, toward.value - sigma_dot);
        gap_bits = fw_gap / ln2;
        if (gap_bits <= opts.gap_tol_bits) {
            converged = true;
            break;
        }
        if (iter >= opts.max_iters) {
            break;
        }

        // Away candidate: active atom with the smallest <atom|G|atom>.
        std::size_t away_index = 0;
        double away_gap = -kInf;
        if (opts.step_rule != StepRule::Vanilla && it.atoms.size() > 1) {
            for (std::size_t j = 0; j < it.atoms.size(); ++j) {
                double gap_j = sigma_dot - expectation(g, it.atoms[j].state);
                if (gap_j > away_gap) {
                    away_gap = gap_j;
                    away_index = j;
                }
            }
        }

        const bool pairwise = opts.step_rule == StepRule::Pairwise && it.atoms.size() > 1;
        const bool use_away = !pairwise && away_gap > fw_gap;
        const Mat4 toward_proj = toward.state.projector();
        Mat4 direction;
        double step_max;
        if (pairwise) {
            direction = toward_proj - it.atoms[away_index].state.projector();
            step_max = it.atoms[away_index].weight;
        } else if (use_away) {
            double w = it.atoms[away_index].weight;
            direction = it.sigma - it.atoms[away_index].state.projector();
            step_max = w / (1.0 - w);
        } else {
            direction = toward_proj - it.sigma;
            step_max = 1.0;
        }
        auto along = [&](double step) { return cross(it.sigma + step * direction); };
        double step = golden_section(along, step_max, opts.line_search_tol);
        double next = along(step);
        if ((use_away || pairwise) && along(step_max) <= next) {
            step = step_max;
            next = along(step_max);
        }

        bool moved = false;
        if (next < it.cross) {
            moved = true;
            if (use_away) {
                for (auto &atom : it.atoms) {
                    atom.weight *= 1.0 + step;
                }
                it.atoms[away_index].weight -= step;
            } else {
                if (pairwise) {
                    it.atoms[away_index].weight -= step;
                } else {
                    for (auto &atom : it.atoms) {
                        atom.weight *= 1.0 - step;
                    }
                }
                it.atoms.push_back({step, toward.state});
            }
            normalize_weights(it.atoms, opts.prune_below);
            it.sigma = assemble(it.atoms);
            it.cross = cross(it.sigma);
        }
        bool slid = false;
        for (int s = 0; s < opts.slide_steps; ++s) {
            Mat4 gs = log_gradient(rho, it.sigma, opts.regularization);
            if (!slide_atoms(it, gs, cross, slide_hint)) {
                break;
            }
            slid = true;
        }
        if (slid) {
            std::vector<EnsembleAtom> merged = it.atoms;
            merge_duplicates(merged);
            if (merged.size() < it.atoms.size()) {
                Mat4 sigma = assemble(merged);
                double value = cross(sigma);
                if (value <= it.cross) {
                    it = Iterate{std::move(merged), sigma, value};
                }
            }
        }
        if (!moved && !slid) {
            // No descent along any direction this oracle offers.
            break;
        }
        history.push_back((neg_entropy + it.cross) / ln2);
    }

    DensityMatrix sigma_state(rho_state.labels(), ComplexMatrix(0.5 * (it.sigma + it.sigma.adjoint())));
    auto value = quantum::relative_entropy(rho_state, sigma_state);
    double value_bits = value.is_infinite() ? kInf : std::max(value.bits(), 0.0);
    return EreResult{value_bits, std::move(sigma_state), SeparableEnsemble(std::move(it.atoms)),
                     gap_bits, iter, converged, std::move(history)};
}

double pure_state_ree_oracle(const StateVector &psi, std::span<const quantum::Label> left) {
    return quantum::von_neumann_entropy(quantum::partial_trace(quantum::density_of(psi), left));
}

double binary_entropy(double p) {
    double acc = 0.0;
    for (double x : {p, 1.0 - p}) {
        if (x > 0.0) {
            acc -= x * std::log2(x);
        }
    }
    return acc;
}

double concurrence(const DensityMatrix &rho_state) {
    const ComplexMatrix &rho = rho_state.matrix();
    require_two_qubit(rho, "rho");
    ComplexMatrix yy = linalg::kron(linalg::gates::pauli_y(), linalg::gates::pauli_y());
    ComplexMatrix flipped = yy * rho.conjugate() * yy;
    // rho * flipped shares its spectrum with the Hermitian sqrt(rho) flipped sqrt(rho).
    auto rho_eig = linalg::herm_eig(rho);
    ComplexMatrix root = rho_eig.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
    ComplexMatrix product = root * flipped * root;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (product + product.adjoint()));
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) {
        s[static_cast<std::size_t>(i)] = std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double eof(const DensityMatrix &rho) {
    double c = std::min(concurrence(rho), 1.0);
    return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

double min_partial_transpose_eigenvalue(const DensityMatrix &rho_state) {
    const ComplexMatrix &rho = rho_state.matrix();
    require_two_qubit(rho, "rho");
    ComplexMatrix pt(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    pt(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
                }
            }
        }
    }
    return linalg::herm_eig(pt).eigenvalues.minCoeff();
}

bool is_ppt(const DensityMatrix &rho, double tol) { return min_partial_transpose_eigenvalue(rho) >= -tol; }

double ree_random_search(const DensityMatrix &rho, int samples, std::uint64_t seed) {
    require_two_qubit(rho.matrix(), "rho");
    constexpr int kAtoms = 16;
    const int total = std::max(samples, 1);
    // A quarter of the budget draws fresh ensembles; the rest perturbs the incumbent.
    const int fresh = std::max(1, total / 4);
    random::Engine rng(seed);

    struct Candidate {
        Eigen::VectorXd weights;
        std::vector<ProductState> states;
    };
    auto score = [&](const Candidate &c) {
        ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
        for (int k = 0; k < kAtoms; ++k) {
            sigma += c.weights(k) * c.states[static_cast<std::size_t>(k)].projector();
        }
        auto value = quantum::relative_entropy(rho, DensityMatrix(pair_labels(), 0.5 * (sigma + sigma.adjoint())));
        return value.is_infinite() ? kInf : value.bits();
    };

    Candidate best;
    double best_value = kInf;
    for (int s = 0; s < total; ++s) {
        Candidate c;
        if (s < fresh || best_value == kInf) {
            c.weights = random::simplex_weights(rng, kAtoms);
            for (int k = 0; k < kAtoms; ++k) {
                c.states.push_back({random::haar_qubit(rng), random::haar_qubit(rng)});
            }
        } else {
            double progress = static_cast<double>(s - fresh) / std::max(1, total - fresh);
            double scale = 0.3 * std::pow(1.0 - progress, 2.0) + 1e-3;
            c = best;
            for (int k = 0; k < kAtoms; ++k) {
                c.weights(k) *= std::exp(scale * random::standard_normal(rng));
                auto &st = c.states[static_cast<std::size_t>(k)];
                for (auto *v : {&st.left, &st.right}) {
                    for (int i = 0; i < 2; ++i) {
                        double re = random::standard_normal(rng);
                        double im = random::standard_normal(rng);
                        (*v)(i) += scale * Complex(re, im);
                    }
                    v->normalize();
                }
            }
            c.weights /= c.weights.sum();
        }
        double value = score(c);
        if (value < best_value) {
            best_value = value;
            best = std::move(c);
        }
    }
    return best_value;
}

}  // namespace rsp::ree
