#include "resonant/normalform.hpp"

#include "resonant/errors.hpp"

namespace resonant {

namespace {

unsigned ceil_log2(unsigned n) {
    unsigned k = 0;
    while ((1u << k) < n) ++k;
    return k;
}

void check_overflow(const Derivation& X) {
    if (X.sup_norm() > overflow_guard())
        throw BlowupError("coefficient magnitude exceeded the overflow guard during the iteration");
}

/// Solve target for the window step: j_{base}(Y), with T = base - linear.
Derivation solve_step(const SolverContext& ctx, const Derivation& base, const Derivation& linear,
                      const Derivation& Y) {
    Derivation T = base - linear;
    return approximate_inverse_jV(ctx, T, Y);
}

}  // namespace

NormalFormResult lie_iteration(const SolverContext& ctx, const Derivation& X_v) {
    const unsigned N = ctx.ring->trunc();
    if (N < 2) throw PreconditionError("lie_iteration needs truncation order >= 2");
    const Derivation linear = ctx.linear_part();
    {
        Derivation excess = X_v - linear;
        if (!excess.is_zero() && excess.order() < 1)
            throw PreconditionError("input must be the linear part plus terms of order >= 1");
    }

    NormalFormResult result{Derivation(ctx.ring), {}, BigFloat(0), 0, {}};
    Derivation A = linear;
    Derivation X = X_v;
    Derivation pending(ctx.ring);  // non-resonant content deferred to the next solve
    const unsigned K_steps = ceil_log2(N);

    // h_0 = [j_{A_0}(X_0 - A_0)]_1^2, the inverse applied to the error and
    // then windowed. The windows always target the error relative to A:
    // the raw field differs from it exactly by the content the iteration
    // must not touch (the detuning of S_v, the absorbed resonant part).
    Derivation h = truncate_range(solve_step(ctx, A, linear, truncate_range(X - A, 1, 4)), 1, 2);

    for (unsigned n = 0; n < K_steps; ++n) {
        const unsigned win_lo = 1u << n;
        const unsigned win_hi = 1u << (n + 1);
        Derivation w = -h;
        result.generators.push_back(w);
        result.generator_orders.push_back(w.order());

        const Derivation X_prev = X;
        const Derivation A_prev = A;
        X = exp_adjoint(h, X);  // conjugation by the flow of w
        check_overflow(X);

        // window absorption: only exactly-resonant content may enter A;
        // anything else is re-queued for the next solve
        Derivation S_raw = truncate_range((X_prev - A_prev) - lie_bracket(A_prev, w), win_lo, win_hi);
        auto [S_res, S_rest] = split_resonant(ctx, S_raw);
        if (!S_res.is_zero()) A += S_res;
        pending = std::move(S_rest);

        if (n + 1 < K_steps) {
            const Derivation& source = ctx.variant == IterationVariant::printed ? X_prev : X;
            const Derivation& base = ctx.variant == IterationVariant::printed ? A_prev : A;
            Derivation Y = truncate_range(source - base, win_hi, 2 * win_hi);
            Y += pending;
            h = solve_step(ctx, base, linear, Y);
        }
        result.steps = n + 1;
    }

    // Cleanup: remove leftover non-resonant error (window-edge and
    // re-queued content), absorb the exactly-resonant rest into A.
    for (unsigned pass = 0; pass < 4; ++pass) {
        Derivation E_rest = split_resonant(ctx, X - A).second;
        if (E_rest.is_zero() || E_rest.sup_norm() <= coeff_epsilon()) break;
        Derivation hc = solve_step(ctx, A, linear, E_rest);
        if (hc.is_zero()) break;
        Derivation wc = -hc;
        result.generators.push_back(wc);
        result.generator_orders.push_back(wc.order());
        X = exp_adjoint(hc, X);
        check_overflow(X);
        result.steps += 1;
    }
    A += split_resonant(ctx, X - A).first;

    result.normal_form = std::move(A);
    result.residual = verify_conjugacy(ctx, X_v, result);
    return result;
}

NormalFormResult poincare_dulac(const SolverContext& ctx, const Derivation& X) {
    if (ctx.mode != NormalFormMode::poincare_dulac)
        throw PreconditionError("poincare_dulac needs a context in poincare_dulac mode");
    return lie_iteration(ctx, X);
}

Derivation conjugate_by_generators(const Derivation& X, std::span<const Derivation> generators) {
    Derivation out = X;
    for (const Derivation& w : generators) out = exp_adjoint(-w, out);
    return out;
}

BigFloat verify_conjugacy(const SolverContext& ctx, const Derivation& X, const NormalFormResult& result) {
    Derivation conj = conjugate_by_generators(X, result.generators);
    Derivation diff = conj - result.normal_form;
    return project_out_resonant(ctx, diff).sup_norm();
}

}  // namespace resonant
