#include "packlim/lp_cert.hpp"

#include <algorithm>
#include <cmath>

#include "packlim/numeric.hpp"

namespace packlim {

PrimalProgram build_power_primal(double scale, double dim, double eps,
                                 std::uint64_t k_count) {
    if (!(scale > 0.0 && eps > 0.0)) throw Error("scale and epsilon must be positive");
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    if (k_count == 0) throw Error("the program needs at least one constraint");
    double big = std::pow(scale / eps, dim);
    PrimalProgram p;
    p.rhs.resize(k_count);
    for (std::uint64_t k = 1; k <= k_count; ++k)
        p.rhs[k - 1] = big * std::pow(static_cast<double>(k), dim) +
                       static_cast<double>(k) - 1.0;
    return p;
}

std::vector<double> power_primal_solution(double scale, double dim, double eps,
                                          std::uint64_t k_count) {
    double big = std::pow(scale / eps, dim);
    std::vector<double> f(k_count);
    f[0] = big;
    for (std::uint64_t k = 2; k <= k_count; ++k) {
        double kk = static_cast<double>(k);
        f[k - 1] = power_difference(kk, dim) / kk * big + 1.0 / kk;
    }
    return f;
}

std::vector<double> dual_solution(std::uint64_t k_count) {
    std::vector<double> g(k_count);
    for (std::uint64_t k = 1; k < k_count; ++k)
        g[k - 1] = 1.0 / static_cast<double>(k) - 1.0 / static_cast<double>(k + 1);
    g[k_count - 1] = 1.0 / static_cast<double>(k_count);
    return g;
}

double LpCertificate::gap() const {
    double scale = std::max(1.0, std::abs(primal_objective));
    return std::abs(primal_objective - dual_objective) / scale;
}

LpCertificate verify_certificate(const PrimalProgram& program, std::vector<double> primal,
                                 std::vector<double> dual, double tol) {
    const std::size_t k_count = program.size();
    if (primal.size() != k_count || dual.size() != k_count)
        throw CertificateInvalid("certificate dimensions do not match the program");
    double scale = std::max(1.0, program.scale());

    LpCertificate cert;
    cert.primal = std::move(primal);
    cert.dual = std::move(dual);

    // primal: prefix sums of j f_j against the rhs
    CompensatedSum lhs;
    double worst_primal = 0.0;
    std::size_t worst_row = 0;
    for (std::size_t k = 1; k <= k_count; ++k) {
        if (cert.primal[k - 1] < 0.0)
            throw CertificateInvalid("negative primal entry at k=" + std::to_string(k));
        lhs.add(static_cast<double>(k) * cert.primal[k - 1]);
        double violation = (lhs.value() - program.rhs[k - 1]) / scale;
        if (violation > worst_primal) {
            worst_primal = violation;
            worst_row = k;
        }
    }
    cert.max_primal_residual = std::max(0.0, worst_primal);
    if (cert.max_primal_residual > tol)
        throw CertificateInvalid("primal constraint violated at row " +
                                 std::to_string(worst_row));

    // dual: column j needs j * suffix(g, j) >= 1
    double suffix = 0.0;
    double worst_dual = 0.0;
    std::size_t worst_col = 0;
    for (std::size_t j = k_count; j >= 1; --j) {
        if (cert.dual[j - 1] < 0.0)
            throw CertificateInvalid("negative dual entry at k=" + std::to_string(j));
        suffix += cert.dual[j - 1];
        double violation = 1.0 - static_cast<double>(j) * suffix;
        if (violation > worst_dual) {
            worst_dual = violation;
            worst_col = j;
        }
    }
    cert.max_dual_residual = std::max(0.0, worst_dual);
    if (cert.max_dual_residual > tol)
        throw CertificateInvalid("dual constraint violated at column " +
                                 std::to_string(worst_col));

    CompensatedSum po;
    for (double f : cert.primal) po.add(f);
    cert.primal_objective = po.value();
    CompensatedSum dobj;
    for (std::size_t k = 0; k < k_count; ++k) dobj.add(program.rhs[k] * cert.dual[k]);
    cert.dual_objective = dobj.value();

    if (cert.gap() > tol)
        throw CertificateInvalid("duality gap " + std::to_string(cert.gap()) +
                                 " beyond tolerance");
    return cert;
}

double CantorCertificate::gap() const {
    double scale = std::max(1.0, std::abs(primal_objective));
    return std::abs(primal_objective - dual_objective) / scale;
}

CantorCertificate build_cantor_certificate(double a, int n, double tol) {
    if (!(a > 1.0 && a <= 3.0)) throw Error("the parameter a lies in (1, 3]");
    if (n < 1) throw Error("the scale index n must be at least 1");

    GapSequence s = GapSequence::block_geometric(1.0 / 3.0, 2, 1.0);
    double eps = a * std::pow(3.0, -static_cast<double>(n));

    CantorCertificate cert;
    cert.a = a;
    cert.n = n;

    // support p_k = ceil(a 3^(k-1)); horizon I = min{ i : tail(p_i) <= eps }
    double pow3 = 1.0 / 3.0;  // 3^(k-1) starting at k = 0
    for (int k = 0; k < 64; ++k) {
        double pk_real = std::ceil(a * pow3);
        if (pk_real > 9e15) throw Error("certificate support overflows");
        std::uint64_t pk = static_cast<std::uint64_t>(pk_real);
        cert.support.push_back(pk);
        if (s.tail_sum(pk) <= eps) {
            cert.horizon = static_cast<std::uint64_t>(k);
            break;
        }
        pow3 *= 3.0;
        if (k == 63) throw Error("certificate horizon not found");
    }
    const std::size_t m = cert.support.size();  // I + 1 entries

    // f* at the support: 2^(n-1) at p_0 = 1, (2^(n+k-2) + p_k - p_{k-1})/p_k after
    cert.primal_support.resize(m);
    cert.primal_support[0] = std::pow(2.0, n - 1);
    for (std::size_t k = 1; k < m; ++k) {
        double pk = static_cast<double>(cert.support[k]);
        double pk1 = static_cast<double>(cert.support[k - 1]);
        cert.primal_support[k] =
            (std::pow(2.0, static_cast<double>(n) + static_cast<double>(k) - 2.0) + pk -
             pk1) /
            pk;
    }

    // g* at the support: 1/p_{k-1} - 1/p_k, and 1/p_I at the end
    cert.dual_support.resize(m);
    for (std::size_t k = 0; k + 1 < m; ++k)
        cert.dual_support[k] = 1.0 / static_cast<double>(cert.support[k]) -
                               1.0 / static_cast<double>(cert.support[k + 1]);
    cert.dual_support[m - 1] = 1.0 / static_cast<double>(cert.support[m - 1]);

    auto rhs_at = [&](std::uint64_t p, std::size_t block) {
        return std::pow(2.0, static_cast<double>(n) + static_cast<double>(block) - 1.0) +
               static_cast<double>(p) - 1.0;
    };

    // primal feasibility: the lhs is a step function saturating at each p_k;
    // inside block k the rhs grows with p, so the binding rows are the p_k
    CompensatedSum lhs;
    double worst_primal = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        lhs.add(static_cast<double>(cert.support[k]) * cert.primal_support[k]);
        double rhs = rhs_at(cert.support[k], k);
        worst_primal = std::max(worst_primal, (lhs.value() - rhs) / std::max(1.0, rhs));
    }
    cert.max_primal_residual = std::max(0.0, worst_primal);
    if (cert.max_primal_residual > tol)
        throw CertificateInvalid("cantor primal constraint violated");

    // dual feasibility with equality on the support columns m = p_k
    double suffix = 0.0;
    double worst_dual = 0.0;
    for (std::size_t k = m; k-- > 0;) {
        suffix += cert.dual_support[k];
        double violation =
            std::abs(1.0 - static_cast<double>(cert.support[k]) * suffix);
        worst_dual = std::max(worst_dual, violation);
    }
    cert.max_dual_residual = worst_dual;
    if (cert.max_dual_residual > tol)
        throw CertificateInvalid("cantor dual support column not tight");

    CompensatedSum po;
    for (double f : cert.primal_support) po.add(f);
    cert.primal_objective = po.value();
    CompensatedSum dobj;
    for (std::size_t k = 0; k < m; ++k)
        dobj.add(rhs_at(cert.support[k], k) * cert.dual_support[k]);
    cert.dual_objective = dobj.value();
    if (cert.gap() > tol)
        throw CertificateInvalid("cantor duality gap beyond tolerance");
    return cert;
}

}  // namespace packlim
