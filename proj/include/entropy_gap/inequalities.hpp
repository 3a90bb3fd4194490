#pragma once

// One verifier per inequality chain or identity. A verifier computes every
// link value, the consecutive gaps, and any side conditions the result
// depends on; it never throws on a violated inequality, only on invalid input.

#include <map>
#include <string>
#include <vector>

#include "entropy_gap/entropy.hpp"
#include "entropy_gap/states.hpp"

namespace entropy_gap {

inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kInequalityTol = 1e-8;

/// tol · d/8 for d > 8, tol otherwise.
double scaled_tolerance(double tol, std::size_t d);

struct ChainLink {
    std::string label;
    ExtendedReal value;
};

/// Side check lhs ≤ rhs + tol.
struct Condition {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Links are listed in claimed descending order: link[i] ≥ link[i+1].
struct ChainVerdict {
    std::string name;
    std::vector<ChainLink> links;
    std::vector<double> gaps;  // link[i] − link[i+1]; ±inf when one side is +∞
    std::vector<Condition> conditions;
    bool pass = false;
    double tol = 0.0;
    std::map<std::string, std::string> metadata;

    void add_condition(std::string label, double lhs, double rhs, double tol);
    /// Fills gaps and pass from links and conditions.
    void finalize();
    double worst_gap() const;  // most negative gap (or +inf when no finite gaps)
};

struct IdentityCheck {
    std::string name;
    ExtendedReal lhs;
    ExtendedReal rhs;
    double residual = 0.0;  // |lhs − rhs|, +inf if exactly one side is +∞
    double tol = 0.0;
    bool pass = false;
};

ChainVerdict check_substate_chain(const MultipartiteState& rho, const MultipartiteState& sigma,
                                  double tol = kInequalityTol);

ChainVerdict check_norm_sandwich(const ComplexMatrix& m, const ComplexMatrix& n,
                                 double tol = kInequalityTol);

ChainVerdict check_monotonicity_gap(const MultipartiteState& rho, const MultipartiteState& sigma,
                                    const QuantumChannel& phi, double tol = kInequalityTol);

ChainVerdict check_bipartite_chain(const MultipartiteState& rho_ab,
                                   const MultipartiteState& sigma_ab,
                                   double tol = kInequalityTol);

ChainVerdict check_cmi_chain(const MultipartiteState& rho, double tol = kInequalityTol);

IdentityCheck berta_identity_general(const MultipartiteState& rho,
                                     const MultipartiteState& sigma_ac,
                                     const MultipartiteState& tau_bc,
                                     const MultipartiteState& omega_c, double tol = kIdentityTol);

IdentityCheck berta_identity(const MultipartiteState& rho, const MultipartiteState& sigma,
                             double tol = kIdentityTol);

ChainVerdict check_marginal_monotonicity(const MultipartiteState& rho,
                                         const MultipartiteState& sigma,
                                         double tol = kInequalityTol);

ChainVerdict check_super_ssa(const MultipartiteState& rho, const MultipartiteState& sigma,
                             double tol = kInequalityTol);

ChainVerdict check_sigma_substate_chain(const MultipartiteState& rho,
                                        const MultipartiteState& sigma,
                                        double tol = kInequalityTol);

ChainVerdict check_two_marginal_chain(const MultipartiteState& rho, double tol = kInequalityTol,
                                      double certificate_tol = 1e-10);

ChainVerdict check_golden_thompson(const ComplexMatrix& a, const ComplexMatrix& b,
                                   double tol = kInequalityTol);

}  // namespace entropy_gap
