#pragma once

#include "resonant/derivation.hpp"
#include "resonant/resonance.hpp"

namespace resonant {

enum class NormalFormMode { versal, poincare_dulac };
enum class IterationVariant { updated, printed };

const char* to_string(NormalFormMode m);
const char* to_string(IterationVariant v);

/// Everything the homological solver and the iteration need: the exact
/// frequency data, the resonance basis, the working ring, mode and variant.
/// Immutable once built; shareable across jobs.
struct SolverContext {
    RingPtr ring;
    FrequencyVector freq;
    ResonanceBasis basis;
    NormalFormMode mode = NormalFormMode::versal;
    IterationVariant variant = IterationVariant::updated;

    /// Builds the context and its ring (one u tag per basis generator).
    /// In versal mode the positivity verdicts must both hold and every
    /// eigenvalue must be nonzero.
    static SolverContext make(FrequencyVector freq, ResonanceBasis basis, unsigned trunc, unsigned mu_count,
                              NormalFormMode mode, IterationVariant variant = IterationVariant::updated);

    /// S (poincare_dulac) or the detuned S_v (versal).
    Derivation linear_part() const;

    /// Exact resonance test on the bare x-part of a monomial.
    bool term_resonant(const Mono& m, unsigned direction) const;

    /// Unique decomposition of an invariant bare exponent over the basis.
    std::optional<std::vector<unsigned>> decompose_invariant(std::span<const unsigned> K) const;

    std::vector<unsigned> bare_x_part(const Mono& m) const;
};

struct HomologicalSplit {
    Derivation solved;     // L-image of the removable content
    Derivation remainder;  // resonant content (poincare_dulac mode only)
};

/// The diagonal homological inverse. Non-resonant terms are divided by the
/// truncated expansion of 1/lambda_{K,i}(phi); resonant terms are rewritten
/// over the u tags and routed to d/dphi_i (versal) or to the remainder
/// (poincare_dulac).
HomologicalSplit homological_split(const SolverContext& ctx, const Derivation& Y);

/// homological_split(...).solved; the common case.
Derivation homological_L(const SolverContext& ctx, const Derivation& Y);

/// j_V(Y) = L(Y) - L([L(Y), T]) for V = S_v + T. Satisfies
/// [j_V(Y), S_v + T] = Y + higher order, modulo the resonant module.
Derivation approximate_inverse_jV(const SolverContext& ctx, const Derivation& T, const Derivation& Y);

/// Drops the exactly-resonant d/dx monomials (the resonant module X^S).
Derivation project_out_resonant(const SolverContext& ctx, const Derivation& D);

/// Splits into (resonant, non-resonant) d/dx content; phi components are
/// routed to the non-resonant side.
std::pair<Derivation, Derivation> split_resonant(const SolverContext& ctx, const Derivation& D);

/// Rewrites every exactly-resonant d/dx monomial x^K d/dx_i over the u
/// tags (K = sum m_j R_j + E_i). Presentation form of a normal form.
Derivation restore_u_tags(const SolverContext& ctx, const Derivation& D);

}  // namespace resonant
