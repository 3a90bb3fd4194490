#include "entropy_gap/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entropy_gap/errors.hpp"

namespace entropy_gap {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

const char* to_string(StateKind kind) {
    return kind == StateKind::State ? "state" : "substate";
}

StateKind state_kind_from_string(const std::string& s) {
    if (s == "state") return StateKind::State;
    if (s == "substate") return StateKind::Substate;
    throw ParseError("unknown state kind '" + s + "'");
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k)
        labels.push_back(k < 26 ? std::string(1, static_cast<char>('A' + k))
                                : "S" + std::to_string(k));
    return labels;
}

MultipartiteState::MultipartiteState(ComplexMatrix matrix, Dims dims,
                                     std::vector<std::string> labels, StateKind kind)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels)), kind_(kind) {
    require_square(matrix_, "MultipartiteState");
    if (dims_.empty()) dims_ = {static_cast<std::size_t>(matrix_.rows())};
    if (total_dim(dims_) != static_cast<std::size_t>(matrix_.rows()))
        throw DimensionMismatch("MultipartiteState: product of dims != matrix dimension");
    if (labels_.empty()) labels_ = default_labels(dims_.size());
    if (labels_.size() != dims_.size())
        throw DimensionMismatch("MultipartiteState: labels and dims differ in length");
}

MultipartiteState MultipartiteState::marginal(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    Dims sub_dims;
    std::vector<std::string> sub_labels;
    for (std::size_t k : kept) {
        if (k >= dims_.size()) throw DimensionMismatch("marginal: subsystem index out of range");
        sub_dims.push_back(dims_[k]);
        sub_labels.push_back(labels_[k]);
    }
    return MultipartiteState(partial_trace(matrix_, dims_, kept), std::move(sub_dims),
                             std::move(sub_labels), kind_);
}

StateDiagnostic validate(const MultipartiteState& state, double tol) {
    StateDiagnostic diag;
    const auto& m = state.matrix();
    diag.dims_consistent = total_dim(state.dims()) == state.dim() &&
                           std::all_of(state.dims().begin(), state.dims().end(),
                                       [](std::size_t d) { return d > 0; });
    if (!diag.dims_consistent) diag.problems.push_back("dims inconsistent with matrix");
    diag.finite = all_finite(m);
    if (!diag.finite) {
        diag.problems.push_back("non-finite entries");
        return diag;
    }
    diag.hermiticity_residual = (m - m.adjoint()).norm();
    if (diag.hermiticity_residual > tol) diag.problems.push_back("not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
    diag.min_eigenvalue = solver.eigenvalues()(0);
    if (diag.min_eigenvalue < -tol) diag.problems.push_back("negative eigenvalue");
    diag.trace = real_trace(m);
    if (state.kind() == StateKind::State) {
        diag.trace_deviation = std::abs(diag.trace - 1.0);
        if (diag.trace_deviation > tol) diag.problems.push_back("trace differs from 1");
    } else {
        diag.trace_deviation = std::max(0.0, diag.trace - 1.0);
        if (diag.trace_deviation > tol) diag.problems.push_back("substate trace exceeds 1");
    }
    diag.pass = diag.problems.empty();
    return diag;
}

void require_valid(const MultipartiteState& state, double tol, const char* who) {
    const auto diag = validate(state, tol);
    if (diag.pass) return;
    std::string msg = std::string(who) + ": invalid " + to_string(state.kind());
    for (const auto& p : diag.problems) msg += "; " + p;
    throw InvalidState(msg);
}

QuantumChannel QuantumChannel::identity(std::size_t d) {
    return {{ComplexMatrix::Identity(d, d)}, d, d};
}

double QuantumChannel::completeness_residual() const {
    ComplexMatrix sum = ComplexMatrix::Zero(d_in, d_in);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return (sum - ComplexMatrix::Identity(d_in, d_in)).norm();
}

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    // Fill row-major so the stream order is independent of storage order.
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

// Orthonormal columns with a deterministic phase convention (diag(R) > 0).
ComplexMatrix orthonormal_columns(const ComplexMatrix& g) {
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
    const ComplexMatrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

}  // namespace

ComplexMatrix random_psd(std::size_t d, Rng& rng) {
    const ComplexMatrix g = ginibre(d, d, rng);
    return hermitize(g * g.adjoint());
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng, double scale) {
    const ComplexMatrix g = ginibre(d, d, rng);
    return hermitize(g) * scale;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    return orthonormal_columns(ginibre(d, d, rng));
}

MultipartiteState random_density_hs(const Dims& dims, Rng& rng) {
    const std::size_t d = total_dim(dims);
    if (d == 0) throw DimensionMismatch("random_density_hs: d must be >= 1");
    ComplexMatrix rho = random_psd(d, rng);
    rho /= real_trace(rho);
    return MultipartiteState(std::move(rho), dims);
}

MultipartiteState random_density_hs(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return random_density_hs(Dims{d}, rng);
}

MultipartiteState random_pure(const Dims& dims, Rng& rng) {
    const std::size_t d = total_dim(dims);
    if (d == 0) throw DimensionMismatch("random_pure: d must be >= 1");
    Eigen::VectorXcd psi = ginibre(d, 1, rng).col(0);
    psi.normalize();
    return MultipartiteState(hermitize(psi * psi.adjoint()), dims);
}

MultipartiteState random_pure(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(Dims{d}, rng);
}

MultipartiteState random_pure_times_mixed(const Dims& dims, Rng& rng) {
    if (dims.size() < 2) throw DimensionMismatch("random_pure_times_mixed: needs >= 2 factors");
    const auto pure = random_pure(Dims{dims[0]}, rng);
    const Dims rest(dims.begin() + 1, dims.end());
    const auto mixed = random_density_hs(rest, rng);
    return MultipartiteState(tensor(pure.matrix(), mixed.matrix()), dims);
}

QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus, Rng& rng) {
    if (n_kraus == 0 || d_in == 0 || d_out == 0 || n_kraus * d_out < d_in)
        throw InfeasibleShape("random_channel: need n_kraus * d_out >= d_in >= 1");
    const ComplexMatrix v = orthonormal_columns(ginibre(n_kraus * d_out, d_in, rng));
    QuantumChannel phi;
    phi.d_in = d_in;
    phi.d_out = d_out;
    for (std::size_t k = 0; k < n_kraus; ++k)
        phi.kraus.emplace_back(v.middleRows(static_cast<Eigen::Index>(k * d_out), d_out));
    return phi;
}

QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus,
                              std::uint64_t seed) {
    Rng rng(seed);
    return random_channel(d_in, d_out, n_kraus, rng);
}

ComplexMatrix apply_channel(const QuantumChannel& phi, const ComplexMatrix& rho) {
    if (rho.rows() != static_cast<Eigen::Index>(phi.d_in) || rho.cols() != rho.rows())
        throw DimensionMismatch("apply_channel: input dimension != d_in");
    ComplexMatrix out = ComplexMatrix::Zero(phi.d_out, phi.d_out);
    for (const auto& k : phi.kraus) out += k * rho * k.adjoint();
    return out;
}

ComplexMatrix apply_adjoint(const QuantumChannel& phi, const ComplexMatrix& x) {
    if (x.rows() != static_cast<Eigen::Index>(phi.d_out) || x.cols() != x.rows())
        throw DimensionMismatch("apply_adjoint: input dimension != d_out");
    ComplexMatrix out = ComplexMatrix::Zero(phi.d_in, phi.d_in);
    for (const auto& k : phi.kraus) out += k.adjoint() * x * k;
    return out;
}

MultipartiteState markov_state_classical_c(const std::vector<double>& p,
                                           const std::vector<ComplexMatrix>& rhos_a,
                                           const std::vector<ComplexMatrix>& rhos_b) {
    if (p.empty()) throw InvalidDistribution("markov_state_classical_c: empty distribution");
    double total = 0.0;
    for (double pc : p) {
        if (!(pc >= 0.0)) throw InvalidDistribution("markov_state_classical_c: negative weight");
        total += pc;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw InvalidDistribution("markov_state_classical_c: weights do not sum to 1");
    if (rhos_a.size() != p.size() || rhos_b.size() != p.size())
        throw DimensionMismatch("markov_state_classical_c: list lengths differ from |p|");
    const auto da = static_cast<std::size_t>(rhos_a.front().rows());
    const auto db = static_cast<std::size_t>(rhos_b.front().rows());
    const std::size_t dc = p.size();
    for (std::size_t c = 0; c < dc; ++c) {
        if (static_cast<std::size_t>(rhos_a[c].rows()) != da ||
            static_cast<std::size_t>(rhos_b[c].rows()) != db)
            throw DimensionMismatch("markov_state_classical_c: inconsistent component dims");
        require_valid(MultipartiteState(rhos_a[c], {da}), 1e-10, "markov_state_classical_c");
        require_valid(MultipartiteState(rhos_b[c], {db}), 1e-10, "markov_state_classical_c");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(da * db * dc, da * db * dc);
    for (std::size_t c = 0; c < dc; ++c) {
        ComplexMatrix proj = ComplexMatrix::Zero(dc, dc);
        proj(c, c) = 1.0;
        rho += p[c] * tensor(tensor(rhos_a[c], rhos_b[c]), proj);
    }
    return MultipartiteState(hermitize(rho), {da, db, dc});
}

MultipartiteState random_markov_classical_c(const Dims& dims, Rng& rng) {
    if (dims.size() != 3) throw DimensionMismatch("random_markov_classical_c: needs (dA,dB,dC)");
    std::vector<double> p(dims[2]);
    double total = 0.0;
    for (auto& pc : p) {
        // Exponential draws normalize to a flat Dirichlet sample.
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        pc = -std::log(u);
        total += pc;
    }
    for (auto& pc : p) pc /= total;
    std::vector<ComplexMatrix> as, bs;
    for (std::size_t c = 0; c < dims[2]; ++c) {
        as.push_back(random_density_hs(Dims{dims[0]}, rng).matrix());
        bs.push_back(random_density_hs(Dims{dims[1]}, rng).matrix());
    }
    return markov_state_classical_c(p, as, bs);
}

}  // namespace entropy_gap
