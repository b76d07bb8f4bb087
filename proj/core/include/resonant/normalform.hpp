#pragma once

#include "resonant/homological.hpp"

namespace resonant {

/// Output of the degree-doubling iteration: the normal form A, the
/// generator list of the normalizing automorphism (the conjugation is the
/// composition of their flows, applied first to last), and the conjugacy
/// residual measured modulo the resonant module.
struct NormalFormResult {
    Derivation normal_form;              // A
    std::vector<Derivation> generators;  // w_0 .. w_K
    BigFloat residual;
    unsigned steps = 0;
    std::vector<int> generator_orders;
};

/// Degree-doubling iteration conjugating X_v = S_v + (order >= 1) to its
/// normal form. Versal mode removes every window through the detuning
/// directions; poincare_dulac mode keeps resonant content in A.
NormalFormResult lie_iteration(const SolverContext& ctx, const Derivation& X_v);

/// Classical projection mode; requires ctx.mode == poincare_dulac.
NormalFormResult poincare_dulac(const SolverContext& ctx, const Derivation& X);

/// Independent conjugacy oracle: replays the stored generator flows on X,
/// subtracts A, projects away the resonant module, and returns the largest
/// surviving coefficient magnitude below the truncation weight.
BigFloat verify_conjugacy(const SolverContext& ctx, const Derivation& X, const NormalFormResult& result);

/// Replays the generator flows on X (the conjugation itself).
Derivation conjugate_by_generators(const Derivation& X, std::span<const Derivation> generators);

}  // namespace resonant
