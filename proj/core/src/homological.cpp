#include "resonant/homological.hpp"

#include <map>

#include "resonant/errors.hpp"

namespace resonant {

const char* to_string(NormalFormMode m) {
    return m == NormalFormMode::versal ? "versal" : "poincare_dulac";
}

const char* to_string(IterationVariant v) {
    return v == IterationVariant::updated ? "updated" : "printed";
}

SolverContext SolverContext::make(FrequencyVector freq, ResonanceBasis basis, unsigned trunc, unsigned mu_count,
                                  NormalFormMode mode, IterationVariant variant) {
    SolverContext ctx;
    if (mode == NormalFormMode::versal) {
        if (basis.p1 != Verdict::holds || basis.p2 != Verdict::holds)
            throw PositivityError("versal mode needs both positivity conditions to hold (P1: " +
                                  std::string(to_string(basis.p1)) + ", P2: " + to_string(basis.p2) + ")");
        for (unsigned i = 0; i < freq.d; ++i)
            if (freq.lambda_is_zero(i))
                throw PreconditionError("versal mode needs nonzero eigenvalues");
    }
    std::vector<unsigned> u_weights;
    u_weights.reserve(basis.generators.size());
    for (const auto& g : basis.generators) {
        unsigned w = 0;
        for (unsigned e : g) w += e;
        u_weights.push_back(w);
    }
    ctx.ring = Ring::make(freq.d, static_cast<unsigned>(basis.generators.size()), mu_count, trunc, u_weights);
    ctx.freq = std::move(freq);
    ctx.basis = std::move(basis);
    ctx.mode = mode;
    ctx.variant = variant;
    return ctx;
}

Derivation SolverContext::linear_part() const {
    Derivation S(ring);
    for (unsigned i = 0; i < ring->d(); ++i) {
        Series comp = Series::x(ring, i);
        comp.scale(freq.lambda[i]);
        if (mode == NormalFormMode::versal) comp += Series::phi(ring, i) * Series::x(ring, i);
        S.x(i) = std::move(comp);
    }
    return S;
}

std::vector<unsigned> SolverContext::bare_x_part(const Mono& m) const {
    std::vector<unsigned> K(ring->d());
    for (unsigned i = 0; i < ring->d(); ++i) K[i] = m.e[ring->x_slot(i)];
    return K;
}

bool SolverContext::term_resonant(const Mono& m, unsigned direction) const {
    return freq.resonant_field_exponent(bare_x_part(m), direction);
}

std::optional<std::vector<unsigned>> SolverContext::decompose_invariant(std::span<const unsigned> K) const {
    std::vector<std::vector<unsigned>> combos;
    unsigned reps = count_representations(K, basis.generators, 2, &combos);
    if (reps == 0) return std::nullopt;
    return combos.front();
}

namespace {

/// lambda_{K,i}(phi) = (lambda_i - (Lambda,K)) + (phi_i - (phi,K)) as a
/// series; bare x-part only, the u tags carry no frequency.
Series eigenvalue_series(const SolverContext& ctx, const std::vector<unsigned>& K, unsigned i, const Cplx& lead) {
    Series lam = Series::constant(ctx.ring, lead);
    if (ctx.mode == NormalFormMode::versal) {
        lam += Series::phi(ctx.ring, i);
        for (unsigned j = 0; j < ctx.ring->d(); ++j) {
            if (K[j] == 0) continue;
            Series t = Series::phi(ctx.ring, j);
            t.scale(Cplx(BigFloat(-static_cast<double>(K[j]))));
            lam += t;
        }
    }
    return lam;
}

}  // namespace

HomologicalSplit homological_split(const SolverContext& ctx, const Derivation& Y) {
    if (Y.has_phi_component())
        throw PreconditionError("homological solve expects a field with d/dx components only");
    const Ring& ring = *ctx.ring;
    HomologicalSplit out{Derivation(ctx.ring), Derivation(ctx.ring)};
    // inverse-eigenvalue cache per (direction, bare exponent)
    std::map<std::pair<unsigned, std::vector<unsigned>>, Series> inverses;
    for (unsigned i = 0; i < ring.d(); ++i) {
        for (const auto& [m, c] : Y.x(i).terms()) {
            std::vector<unsigned> K = ctx.bare_x_part(m);
            if (ctx.freq.resonant_field_exponent(K, i)) {
                if (ctx.mode == NormalFormMode::poincare_dulac) {
                    out.remainder.x(i).add_term(m, c);
                    continue;
                }
                if (K[i] == 0)
                    throw PositivityError("resonant term without a valid decomposition (P2 violated at runtime)");
                std::vector<unsigned> rest = K;
                rest[i] -= 1;
                auto combo = ctx.decompose_invariant(rest);
                if (!combo)
                    throw PositivityError("resonant term without a valid decomposition (P1/P2 violated at runtime)");
                // x^K -> u^{combo} * x_i, then drop the x_i under L
                Mono img = m;
                for (unsigned s = 0; s < ring.d(); ++s) img.e[ring.x_slot(s)] = 0;
                for (unsigned j = 0; j < ring.p(); ++j) {
                    unsigned e = img.e[ring.u_slot(j)] + (*combo)[j];
                    if (e > 255) throw PreconditionError("u exponent overflow in homological solve");
                    img.e[ring.u_slot(j)] = static_cast<uint8_t>(e);
                }
                img.wt = mono_weight(ring, img.e);
                out.solved.phi(i).add_term(img, c);
            } else {
                Cplx lead = ctx.freq.lambda[i] - ctx.freq.pair_numeric(K);
                if (lead.abs() < divisor_floor()) {
                    std::vector<unsigned> Kv(K.begin(), K.end());
                    throw BlowupError("small divisor |lambda_{K,i}| below the guard threshold", Kv, i,
                                      static_cast<double>(lead.abs()));
                }
                auto key = std::make_pair(i, K);
                auto it = inverses.find(key);
                if (it == inverses.end())
                    it = inverses.emplace(key, invert_unit(eigenvalue_series(ctx, K, i, lead))).first;
                out.solved.x(i) += it->second.mul_mono(m, c);
            }
        }
    }
    return out;
}

Derivation homological_L(const SolverContext& ctx, const Derivation& Y) {
    return homological_split(ctx, Y).solved;
}

Derivation approximate_inverse_jV(const SolverContext& ctx, const Derivation& T, const Derivation& Y) {
    if (!T.is_zero() && T.order() < 1)
        throw PreconditionError("approximate inverse needs order(T) >= 1");
    Derivation LY = homological_split(ctx, Y).solved;
    if (T.is_zero()) return LY;
    // [L(Y), T] has no phi component: T carries no d/dphi and the d/dphi
    // coefficients of L(Y) are tagged, hence constants for T.
    Derivation correction = lie_bracket(LY, T);
    return LY - homological_split(ctx, correction).solved;
}

Derivation project_out_resonant(const SolverContext& ctx, const Derivation& D) {
    Derivation out(D.ring_ptr());
    for (unsigned i = 0; i < ctx.ring->d(); ++i) {
        for (const auto& [m, c] : D.x(i).terms())
            if (!ctx.term_resonant(m, i)) out.x(i).add_term(m, c);
        out.phi(i) = D.phi(i);
    }
    return out;
}

Derivation restore_u_tags(const SolverContext& ctx, const Derivation& D) {
    const Ring& ring = *ctx.ring;
    Derivation out(D.ring_ptr());
    for (unsigned i = 0; i < ring.d(); ++i) {
        for (const auto& [m, c] : D.x(i).terms()) {
            std::vector<unsigned> K = ctx.bare_x_part(m);
            if (!ctx.freq.resonant_field_exponent(K, i) || K[i] == 0) {
                out.x(i).add_term(m, c);
                continue;
            }
            std::vector<unsigned> rest = K;
            rest[i] -= 1;
            auto combo = ctx.decompose_invariant(rest);
            if (!combo) {
                out.x(i).add_term(m, c);  // no u-form without positivity
                continue;
            }
            Mono img = m;
            for (unsigned s = 0; s < ring.d(); ++s) img.e[ring.x_slot(s)] = 0;
            img.e[ring.x_slot(i)] = 1;
            for (unsigned j = 0; j < ring.p(); ++j) {
                unsigned e = img.e[ring.u_slot(j)] + (*combo)[j];
                if (e > 255) throw PreconditionError("u exponent overflow in restoration");
                img.e[ring.u_slot(j)] = static_cast<uint8_t>(e);
            }
            img.wt = mono_weight(ring, img.e);
            out.x(i).add_term(img, c);
        }
        out.phi(i) = D.phi(i);
    }
    return out;
}

std::pair<Derivation, Derivation> split_resonant(const SolverContext& ctx, const Derivation& D) {
    Derivation res(D.ring_ptr()), rest(D.ring_ptr());
    for (unsigned i = 0; i < ctx.ring->d(); ++i) {
        for (const auto& [m, c] : D.x(i).terms()) {
            if (ctx.term_resonant(m, i)) res.x(i).add_term(m, c);
            else rest.x(i).add_term(m, c);
        }
        rest.phi(i) = D.phi(i);
    }
    return {std::move(res), std::move(rest)};
}

}  // namespace resonant
