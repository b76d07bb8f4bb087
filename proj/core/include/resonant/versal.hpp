#pragma once

#include "resonant/normalform.hpp"

namespace resonant {

/// Linear-part report of one Bruno-Stolovitch generator.
struct LinearReport {
    std::vector<Cplx> u_coeff;   // one per u tag
    std::vector<Cplx> mu_coeff;  // one per mu parameter
};

/// The bridge from normal form to invariant varieties: the solved series
/// g_i(u, mu), the ideal generators, and their classification.
struct VersalOutput {
    std::vector<Series> exp_phi;           // automorphism images of the phi_j
    std::vector<Series> g;                 // d series in (u, mu)
    std::vector<Series> bs_generators;     // (g, R_j), one per basis generator
    std::vector<Series> graph_generators;  // u_j - x^{R_j}
    std::vector<LinearReport> classification;
    bool nondegenerate = false;            // (u, mu)-linear part surjective
    BigFloat resubstitution_residual;      // max |exp_phi(g)| below trunc
};

/// S_v = S + sum phi_i x_i d/dx_i. S must be linear diagonal.
Derivation detune(const Derivation& S);

/// The sum deformation X_v = X + sum phi_i x_i d/dx_i of a plain field;
/// the versal-mode input for an arbitrary deformation X = S + T(mu).
Derivation sum_deformation(const Derivation& X);

/// Solves exp_phi[j] = 0 for phi_j = g_j(u, mu) by damped fixed-point
/// substitution. exp_phi[j] must be phi_j plus terms carrying u/mu weight
/// (unit Jacobian in phi at 0).
std::vector<Series> implicit_solve_phi(const std::vector<Series>& exp_phi);

/// Assembles (g, R_j) = sum_i R_{j,i} g_i, the graph generators, and the
/// linear-part classification.
VersalOutput bruno_stolovitch_ideal(const SolverContext& ctx, const std::vector<Series>& g);

/// Full bridge: exp(phi_j) from the stored generators, the implicit solve,
/// and the ideal assembly, with the re-substitution residual attached.
VersalOutput versal_pipeline(const SolverContext& ctx, const NormalFormResult& nf);

/// The induced family member: the normal form with phi = g(u, mu)
/// substituted and every u tag expanded back to its x-monomial.
Derivation normal_form_family_member(const SolverContext& ctx, const NormalFormResult& nf,
                                     const VersalOutput& out);

/// Y-invariance of the Bruno-Stolovitch ideal: applies Y to each ideal
/// generator, reduces modulo the generator set (chain-rule combination
/// plus truncated division), and returns the largest surviving
/// coefficient magnitude below weight N.
BigFloat check_ideal_invariance(const SolverContext& ctx, const Derivation& Y, const VersalOutput& out);

/// Remainder of `f` under truncated division by the monomial ideal
/// (x^{R_1}, ..., x^{R_p}).
Series reduce_mod_monomial_ideal(const Series& f, const std::vector<std::vector<unsigned>>& monomials);

/// exp_phi[j] evaluated at phi = g; the defining residual of the solve.
BigFloat resubstitution_residual(const std::vector<Series>& exp_phi, const std::vector<Series>& g);

}  // namespace resonant
