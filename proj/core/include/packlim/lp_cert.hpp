#pragma once

#include <cstdint>
#include <vector>

#include "packlim/sequences.hpp"

namespace packlim {

/// max sum f_k  s.t.  sum_{j<=k} j f_j <= rhs[k-1]  (k = 1..K),  f >= 0.
/// The constraint matrix is the implicit lower triangle with row k = (1..k).
struct PrimalProgram {
    std::vector<double> rhs;

    std::size_t size() const { return rhs.size(); }
    double scale() const { return rhs.empty() ? 1.0 : rhs.back(); }
};

/// rhs_k = (L/eps)^d k^d + k - 1 for the power-law family (delta = 0).
PrimalProgram build_power_primal(double scale, double dim, double eps, std::uint64_t k_count);

/// f*_1 = (L/eps)^d, f*_k = ((k^d-(k-1)^d)/k)(L/eps)^d + 1/k. Saturates every
/// constraint by a telescoping sum.
std::vector<double> power_primal_solution(double scale, double dim, double eps,
                                          std::uint64_t k_count);

/// g*_k = 1/k - 1/(k+1), g*_K = 1/K; every dual row telescopes to equality.
std::vector<double> dual_solution(std::uint64_t k_count);

struct LpCertificate {
    std::vector<double> primal;
    std::vector<double> dual;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double max_primal_residual = 0.0;  // relative to the constraint scale
    double max_dual_residual = 0.0;    // relative to the unit weights

    double gap() const;
    /// Certified bound: N(Gamma, eps) <= primal_objective + 3.
    double upper_bound() const { return primal_objective + 3.0; }
};

/// Checks feasibility of both vectors and agreement of the objectives.
/// Throws CertificateInvalid with the offending row when a check fails.
LpCertificate verify_certificate(const PrimalProgram& program, std::vector<double> primal,
                                 std::vector<double> dual, double tol = 1e-9);

/// Certificate for the rearranged 1/3 Cantor set at eps = a 3^-n. Sparse:
/// support on p_k = ceil(a 3^(k-1)), k = 0..I(eps). The dual is feasible with
/// equality on the support columns (the restricted pair of the construction);
/// the certified packing bound is primal_objective + 3.
struct CantorCertificate {
    double a = 0.0;
    int n = 0;
    std::uint64_t horizon = 0;               // I(eps_{a,n})
    std::vector<std::uint64_t> support;      // p_0..p_I
    std::vector<double> primal_support;      // f* at the support
    std::vector<double> dual_support;        // g* at the support
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double max_primal_residual = 0.0;
    double max_dual_residual = 0.0;

    double gap() const;
    double upper_bound() const { return primal_objective + 3.0; }
};

CantorCertificate build_cantor_certificate(double a, int n, double tol = 1e-9);

}  // namespace packlim
