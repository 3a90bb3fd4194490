#include "entropy_gap/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "entropy_gap/errors.hpp"
#include "entropy_gap/markov.hpp"

namespace entropy_gap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<std::size_t> kA{0}, kAC{0, 2}, kBC{1, 2}, kC{2}, kAll3{0, 1, 2};

std::string dims_string(const Dims& dims) {
    std::ostringstream os;
    for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? "," : "") << dims[k];
    return os.str();
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.cwiseProduct(b.transpose())).sum().real();
}

// −2 ln Tr √ρ √X ≥ ‖√ρ − √X‖₂² ≥ ¼‖ρ − X‖₁², valid whenever Tr X ≤ 1.
void append_substate_tail(ChainVerdict& v, const ComplexMatrix& rho, const ComplexMatrix& x,
                          const std::string& x_name) {
    const ComplexMatrix root_diff = sqrtm_psd(rho) - sqrtm_psd(x);
    const double l1 = schatten_norm(rho - x, 1);
    v.links.push_back({"-2 ln Tr sqrt(rho) sqrt(" + x_name + ")", root_overlap_bound(rho, x)});
    v.links.push_back({"||sqrt(rho) - sqrt(" + x_name + ")||_2^2", root_diff.squaredNorm()});
    v.links.push_back({"1/4 ||rho - " + x_name + "||_1^2", 0.25 * l1 * l1});
}

void require_state(const MultipartiteState& s, const char* who) {
    if (s.kind() != StateKind::State) throw InvalidState(std::string(who) + ": expected a state");
    require_valid(s, 1e-10, who);
}

void require_same_shape(const MultipartiteState& a, const MultipartiteState& b, const char* who) {
    if (a.dims() != b.dims()) throw DimensionMismatch(std::string(who) + ": dims differ");
}

ChainVerdict make_verdict(std::string name, double tol, const Dims& dims) {
    ChainVerdict v;
    v.name = std::move(name);
    v.tol = scaled_tolerance(tol, total_dim(dims));
    v.metadata["dims"] = dims_string(dims);
    return v;
}

ComplexMatrix markov_operator_of_marginals(const MultipartiteState& sigma) {
    return markov_operator(sigma);
}

}  // namespace

double scaled_tolerance(double tol, std::size_t d) {
    return d > 8 ? tol * static_cast<double>(d) / 8.0 : tol;
}

void ChainVerdict::add_condition(std::string label, double lhs, double rhs, double ctol) {
    conditions.push_back({std::move(label), lhs, rhs, ctol, lhs <= rhs + ctol});
}

void ChainVerdict::finalize() {
    gaps.clear();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < links.size(); ++i) {
        const auto& hi = links[i].value;
        const auto& lo = links[i + 1].value;
        double gap;
        if (hi.is_infinite() && lo.is_infinite()) gap = 0.0;
        else if (hi.is_infinite()) gap = kInf;
        else if (lo.is_infinite()) gap = -kInf;
        else gap = hi.value() - lo.value();
        gaps.push_back(gap);
        if (gap < -tol) ok = false;
    }
    for (const auto& c : conditions) ok = ok && c.pass;
    pass = ok;
}

double ChainVerdict::worst_gap() const {
    double worst = kInf;
    for (double g : gaps) worst = std::min(worst, g);
    return worst;
}

ChainVerdict check_substate_chain(const MultipartiteState& rho, const MultipartiteState& sigma,
                                  double tol) {
    require_state(rho, "check_substate_chain");
    require_valid(sigma, 1e-10, "check_substate_chain");
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("check_substate_chain: dims differ");
    if (real_trace(sigma.matrix()) > 1.0 + tol)
        throw InvalidState("check_substate_chain: Tr sigma exceeds 1");

    auto v = make_verdict("substate", tol, rho.dims());
    v.links.push_back({"S(rho||sigma)", relative_entropy(rho.matrix(), sigma.matrix())});
    append_substate_tail(v, rho.matrix(), sigma.matrix(), "sigma");
    v.finalize();
    return v;
}

ChainVerdict check_norm_sandwich(const ComplexMatrix& m, const ComplexMatrix& n, double tol) {
    require_square(m, "check_norm_sandwich");
    if (m.rows() != n.rows() || m.cols() != n.cols())
        throw DimensionMismatch("check_norm_sandwich: dims differ");
    const ComplexMatrix sm = sqrtm_psd(m), sn = sqrtm_psd(n);
    auto v = make_verdict("norm-sandwich", tol, {static_cast<std::size_t>(m.rows())});
    v.links.push_back({"||sqrt(M)-sqrt(N)||_2 ||sqrt(M)+sqrt(N)||_2", (sm - sn).norm() * (sm + sn).norm()});
    v.links.push_back({"||M-N||_1", schatten_norm(m - n, 1)});
    v.links.push_back({"||sqrt(M)-sqrt(N)||_2^2", (sm - sn).squaredNorm()});
    v.finalize();
    return v;
}

ChainVerdict check_monotonicity_gap(const MultipartiteState& rho, const MultipartiteState& sigma,
                                    const QuantumChannel& phi, double tol) {
    require_state(rho, "check_monotonicity_gap");
    require_state(sigma, "check_monotonicity_gap");
    if (rho.dim() != sigma.dim() || rho.dim() != phi.d_in)
        throw DimensionMismatch("check_monotonicity_gap: dims differ from channel input");
    const ComplexMatrix phi_rho = apply_channel(phi, rho.matrix());
    const ComplexMatrix phi_sigma = apply_channel(phi, sigma.matrix());
    require_full_rank(rho.matrix(), "rho");
    require_full_rank(sigma.matrix(), "sigma");
    require_full_rank(phi_rho, "Phi(rho)");
    require_full_rank(phi_sigma, "Phi(sigma)");

    const ExtendedReal lhs =
        relative_entropy(rho.matrix(), sigma.matrix()) - relative_entropy(phi_rho, phi_sigma);
    const ComplexMatrix arg = hermitize(logm_psd(sigma.matrix()) +
                                        apply_adjoint(phi, logm_psd(phi_rho)) -
                                        apply_adjoint(phi, logm_psd(phi_sigma)));
    const ComplexMatrix x = expm_hermitian(arg);

    auto v = make_verdict("monotonicity", tol, rho.dims());
    v.links.push_back({"S(rho||sigma) - S(Phi rho||Phi sigma)", lhs});
    v.links.push_back({"-2 ln Tr sqrt(rho) sqrt(exp(...))", root_overlap_bound(rho.matrix(), x)});
    v.add_condition("data processing: 0 <= S(rho||sigma) - S(Phi rho||Phi sigma)", 0.0,
                    lhs.value(), v.tol);
    v.finalize();
    return v;
}

ChainVerdict check_bipartite_chain(const MultipartiteState& rho_ab,
                                   const MultipartiteState& sigma_ab, double tol) {
    require_state(rho_ab, "check_bipartite_chain");
    require_state(sigma_ab, "check_bipartite_chain");
    require_same_shape(rho_ab, sigma_ab, "check_bipartite_chain");
    if (rho_ab.parties() != 2)
        throw DimensionMismatch("check_bipartite_chain: expected a bipartite (A,B) state");
    const auto& dims = rho_ab.dims();
    const ComplexMatrix rho_a = partial_trace(rho_ab.matrix(), dims, kA);
    const ComplexMatrix sigma_a = partial_trace(sigma_ab.matrix(), dims, kA);
    require_full_rank(rho_ab.matrix(), "rho_AB");
    const std::vector<std::size_t> ab{0, 1};
    const ComplexMatrix x = expm_hermitian(log_sum(dims, {{sigma_ab.matrix(), ab, 1.0, "sigma_AB"},
                                                          {sigma_a, kA, -1.0, "sigma_A"},
                                                          {rho_a, kA, 1.0, "rho_A"}}));

    auto v = make_verdict("bipartite", tol, dims);
    v.links.push_back({"S(rho_AB||sigma_AB) - S(rho_A||sigma_A)",
                       relative_entropy(rho_ab.matrix(), sigma_ab.matrix()) -
                           relative_entropy(rho_a, sigma_a)});
    append_substate_tail(v, rho_ab.matrix(), x, "X");
    v.finalize();
    return v;
}

ChainVerdict check_cmi_chain(const MultipartiteState& rho, double tol) {
    require_state(rho, "check_cmi_chain");
    require_tripartite(rho, "check_cmi_chain");
    require_full_rank(rho.matrix(), "rho_ABC");
    const ComplexMatrix m = markov_operator(rho);

    auto v = make_verdict("cmi", tol, rho.dims());
    v.links.push_back({"S(rho_ABC||M)", relative_entropy(rho.matrix(), m)});
    append_substate_tail(v, rho.matrix(), m, "M");
    v.finalize();
    return v;
}

IdentityCheck berta_identity_general(const MultipartiteState& rho,
                                     const MultipartiteState& sigma_ac,
                                     const MultipartiteState& tau_bc,
                                     const MultipartiteState& omega_c, double tol) {
    for (const auto* s : {&rho, &sigma_ac, &tau_bc, &omega_c})
        require_state(*s, "berta_identity_general");
    require_tripartite(rho, "berta_identity_general");
    const auto& dims = rho.dims();
    if (sigma_ac.dim() != dims[0] * dims[2] || tau_bc.dim() != dims[1] * dims[2] ||
        omega_c.dim() != dims[2])
        throw DimensionMismatch("berta_identity_general: operand dims do not match rho");
    require_full_rank(rho.matrix(), "rho_ABC");

    const auto& r = rho.matrix();
    const ComplexMatrix m =
        markov_operator(dims, sigma_ac.matrix(), tau_bc.matrix(), omega_c.matrix());
    IdentityCheck check;
    check.name = "berta-general";
    check.tol = scaled_tolerance(tol, rho.dim());
    check.lhs = relative_entropy(r, m);
    check.rhs = ExtendedReal(cmi(rho)) +
                relative_entropy(partial_trace(r, dims, kAC), sigma_ac.matrix()) +
                relative_entropy(partial_trace(r, dims, kBC), tau_bc.matrix()) -
                relative_entropy(partial_trace(r, dims, kC), omega_c.matrix());
    if (check.lhs.is_infinite() || check.rhs.is_infinite())
        check.residual = check.lhs == check.rhs ? 0.0 : kInf;
    else
        check.residual = std::abs(check.lhs.value() - check.rhs.value());
    check.pass = check.residual <= check.tol;
    return check;
}

IdentityCheck berta_identity(const MultipartiteState& rho, const MultipartiteState& sigma,
                             double tol) {
    require_state(sigma, "berta_identity");
    require_tripartite(sigma, "berta_identity");
    require_same_shape(rho, sigma, "berta_identity");
    auto check = berta_identity_general(rho, sigma.marginal(kAC), sigma.marginal(kBC),
                                        sigma.marginal(kC), tol);
    check.name = "berta";
    return check;
}

ChainVerdict check_marginal_monotonicity(const MultipartiteState& rho,
                                         const MultipartiteState& sigma, double tol) {
    require_state(rho, "check_marginal_monotonicity");
    require_state(sigma, "check_marginal_monotonicity");
    require_tripartite(rho, "check_marginal_monotonicity");
    require_same_shape(rho, sigma, "check_marginal_monotonicity");
    const auto& dims = rho.dims();
    auto rel = [&](const std::vector<std::size_t>& keep) {
        return relative_entropy(partial_trace(rho.matrix(), dims, keep),
                                partial_trace(sigma.matrix(), dims, keep));
    };
    auto v = make_verdict("marginal-mono", tol, dims);
    v.links.push_back({"1/2 [S(rho_AC||sigma_AC) + S(rho_BC||sigma_BC)]",
                       0.5 * (rel(kAC) + rel(kBC))});
    v.links.push_back({"S(rho_C||sigma_C)", rel(kC)});
    v.finalize();
    return v;
}

ChainVerdict check_super_ssa(const MultipartiteState& rho, const MultipartiteState& sigma,
                             double tol) {
    require_state(rho, "check_super_ssa");
    require_state(sigma, "check_super_ssa");
    require_tripartite(rho, "check_super_ssa");
    require_same_shape(rho, sigma, "check_super_ssa");
    require_full_rank(rho.matrix(), "rho_ABC");
    const auto& dims = rho.dims();
    const auto& r = rho.matrix();
    const ComplexMatrix m = markov_operator_of_marginals(sigma);

    const ExtendedReal lhs = relative_entropy(r, m);
    const double cmi_rho = cmi(rho);
    const ExtendedReal s_ac =
        relative_entropy(partial_trace(r, dims, kAC), partial_trace(sigma.matrix(), dims, kAC));
    const ExtendedReal s_bc =
        relative_entropy(partial_trace(r, dims, kBC), partial_trace(sigma.matrix(), dims, kBC));

    auto v = make_verdict("super-ssa", tol, dims);
    v.links.push_back({"S(rho_ABC||exp(log sigma_AC + log sigma_BC - log sigma_C))", lhs});
    v.links.push_back({"I(A:B|C) + 1/2 S(rho_AC||sigma_AC) + 1/2 S(rho_BC||sigma_BC)",
                       ExtendedReal(cmi_rho) + 0.5 * s_ac + 0.5 * s_bc});
    v.links.push_back({"0", 0.0});
    if (lhs.is_finite() && lhs.value() <= v.tol) {
        v.add_condition("equality: ||rho - exp(...)||_1 <= sqrt(2 tol)", schatten_norm(r - m, 1),
                        std::sqrt(2.0 * v.tol), 0.0);
        v.add_condition("equality: I(A:B|C) <= tol", cmi_rho, v.tol, 0.0);
        v.add_condition("equality: S(rho_AC||sigma_AC) <= tol", s_ac.as_double(), v.tol, 0.0);
        v.add_condition("equality: S(rho_BC||sigma_BC) <= tol", s_bc.as_double(), v.tol, 0.0);
    }
    v.finalize();
    return v;
}

ChainVerdict check_sigma_substate_chain(const MultipartiteState& rho,
                                        const MultipartiteState& sigma, double tol) {
    require_state(rho, "check_sigma_substate_chain");
    require_state(sigma, "check_sigma_substate_chain");
    require_tripartite(rho, "check_sigma_substate_chain");
    require_same_shape(rho, sigma, "check_sigma_substate_chain");
    require_full_rank(rho.matrix(), "rho_ABC");
    const ComplexMatrix m = markov_operator_of_marginals(sigma);

    auto v = make_verdict("sigma-substate", tol, rho.dims());
    v.add_condition("substate: Tr exp(log sigma_AC + log sigma_BC - log sigma_C) <= 1",
                    real_trace(m), 1.0, v.tol);
    v.links.push_back({"S(rho_ABC||M_sigma)", relative_entropy(rho.matrix(), m)});
    append_substate_tail(v, rho.matrix(), m, "M_sigma");
    v.finalize();
    return v;
}

ChainVerdict check_two_marginal_chain(const MultipartiteState& rho, double tol,
                                      double certificate_tol) {
    require_state(rho, "check_two_marginal_chain");
    require_tripartite(rho, "check_two_marginal_chain");
    require_full_rank(rho.matrix(), "rho_ABC");
    const auto& dims = rho.dims();
    const auto& r = rho.matrix();
    const ComplexMatrix rho_ac = partial_trace(r, dims, kAC);
    const ComplexMatrix rho_bc = partial_trace(r, dims, kBC);
    const ComplexMatrix rho_c = partial_trace(r, dims, kC);
    const ComplexMatrix x =
        expm_hermitian(log_sum(dims, {{rho_ac, kAC, 1.0, "rho_AC"}, {rho_bc, kBC, 1.0, "rho_BC"}}));

    const double entropy_difference =
        von_neumann_entropy(rho_ac) + von_neumann_entropy(rho_bc) - von_neumann_entropy(r);
    const ExtendedReal rewritten = relative_entropy(r, x);

    auto v = make_verdict("two-marginal", tol, dims);
    v.links.push_back({"S(rho_AC) + S(rho_BC) - S(rho_ABC)", entropy_difference});
    append_substate_tail(v, r, x, "X");

    const double tr_x = real_trace(x);
    const double tr_product =
        trace_product(lift_to_full(rho_ac, dims, kAC), lift_to_full(rho_bc, dims, kBC));
    const double purity_c = trace_product(rho_c, rho_c);
    v.add_condition("rewrite: |S(rho_ABC||X) - entropy difference| <= tol",
                    std::abs(rewritten.as_double() - entropy_difference), 0.0, v.tol);
    v.add_condition("Golden-Thompson: Tr X <= Tr rho_AC rho_BC", tr_x, tr_product,
                    certificate_tol);
    v.add_condition("Tr rho_AC rho_BC <= Tr rho_C^2", tr_product, purity_c, certificate_tol);
    v.add_condition("Tr rho_C^2 <= Tr rho_AC rho_BC", purity_c, tr_product, certificate_tol);
    v.add_condition("Tr rho_C^2 <= 1", purity_c, 1.0, certificate_tol);
    v.finalize();
    return v;
}

ChainVerdict check_golden_thompson(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    require_square(a, "check_golden_thompson");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("check_golden_thompson: dims differ");
    const ComplexMatrix ea = expm_hermitian(a), eb = expm_hermitian(b);
    const ComplexMatrix eab = expm_hermitian(hermitize(a + b));
    auto v = make_verdict("golden-thompson", tol, {static_cast<std::size_t>(a.rows())});
    v.links.push_back({"Tr e^A e^B", trace_product(ea, eb)});
    v.links.push_back({"Tr e^(A+B)", real_trace(eab)});
    v.finalize();
    return v;
}

}  // namespace entropy_gap
