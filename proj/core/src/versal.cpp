#include "resonant/versal.hpp"

#include <algorithm>

#include "resonant/errors.hpp"

namespace resonant {

Derivation detune(const Derivation& S) {
    const Ring& ring = S.ring();
    if (S.has_phi_component()) throw PreconditionError("detune expects a plain vector field");
    Derivation out(S.ring_ptr());
    for (unsigned i = 0; i < ring.d(); ++i) {
        Mono xi;
        xi.e[ring.x_slot(i)] = 1;
        xi.wt = 1;
        for (const auto& term : S.x(i).terms())
            if (!(term.first == xi)) throw PreconditionError("detune expects a diagonal linear field");
        out.x(i) = S.x(i) + Series::phi(S.ring_ptr(), i) * Series::x(S.ring_ptr(), i);
    }
    return out;
}

Derivation sum_deformation(const Derivation& X) {
    if (X.has_phi_component()) throw PreconditionError("sum deformation expects a plain vector field");
    Derivation out = X;
    for (unsigned i = 0; i < X.ring().d(); ++i)
        out.x(i) += Series::phi(X.ring_ptr(), i) * Series::x(X.ring_ptr(), i);
    return out;
}

namespace {

bool has_bare_x(const Series& s) {
    const Ring& ring = s.ring();
    for (const auto& term : s.terms())
        for (unsigned i = 0; i < ring.d(); ++i)
            if (term.first.e[ring.x_slot(i)] != 0) return true;
    return false;
}

bool has_phi(const Series& s) {
    const Ring& ring = s.ring();
    for (const auto& term : s.terms())
        for (unsigned i = 0; i < ring.d(); ++i)
            if (term.first.e[ring.phi_slot(i)] != 0) return true;
    return false;
}

Series substitute_phi(const Series& f, const std::vector<Series>& g) {
    const Ring& ring = f.ring();
    std::map<unsigned, Series> repl;
    for (unsigned i = 0; i < ring.d(); ++i) repl.emplace(ring.phi_slot(i), g[i]);
    return f.substituted(repl);
}

}  // namespace

std::vector<Series> implicit_solve_phi(const std::vector<Series>& exp_phi) {
    if (exp_phi.empty()) return {};
    const RingPtr ring = exp_phi.front().ring_ptr();
    const unsigned d = ring->d();
    if (exp_phi.size() != d) throw PreconditionError("need one exp(phi_j) series per phi variable");

    // B_j = exp_phi[j] - phi_j must carry u/mu substance in every term:
    // a bare phi_k monomial would break the unit Jacobian.
    std::vector<Series> B;
    B.reserve(d);
    for (unsigned j = 0; j < d; ++j) {
        if (has_bare_x(exp_phi[j]))
            throw PreconditionError("exp(phi_j) contains non-invariant x-monomials; internal error in the solve input");
        Series b = exp_phi[j];
        Mono phij;
        phij.e[ring->phi_slot(j)] = 1;
        phij.wt = 2;
        Cplx lead = b.coeff(phij);
        lead -= Cplx::one();
        if (!lead.is_zero())
            throw PreconditionError("exp(phi_j) lacks the identity linear part in phi");
        b.add_term(phij, -exp_phi[j].coeff(phij));
        for (const auto& term : b.terms()) {
            const Mono& m = term.first;
            bool only_phi = m.wt > 0;
            for (unsigned s = 0; s < ring->slots() && only_phi; ++s) {
                bool is_phi_slot = s >= ring->phi_slot(0) && s < ring->phi_slot(0) + d;
                if (!is_phi_slot && m.e[s] != 0) only_phi = false;
            }
            if (only_phi && m.wt <= 2)
                throw PreconditionError("exp(phi_j) lacks the identity linear part in phi");
        }
        B.push_back(std::move(b));
    }

    std::vector<Series> g(d, Series(ring));
    const unsigned rounds = 2 * ring->trunc() + 4;
    for (unsigned r = 0; r < rounds; ++r) {
        std::vector<Series> next;
        next.reserve(d);
        bool stable = true;
        for (unsigned j = 0; j < d; ++j) {
            Series nj = -substitute_phi(B[j], g);
            if (!(nj - g[j]).is_zero()) stable = false;
            next.push_back(std::move(nj));
        }
        g = std::move(next);
        if (stable) break;
        if (r + 1 == rounds)
            throw PreconditionError("implicit phi-solve did not reach a fixed point");
    }
    for (const auto& gj : g) {
        if (has_phi(gj) || has_bare_x(gj))
            throw PreconditionError("implicit phi-solve left non-(u,mu) content in g");
        if (!gj.coeff(mono_one()).is_zero())
            throw PreconditionError("g does not vanish at the origin");
    }
    return g;
}

BigFloat resubstitution_residual(const std::vector<Series>& exp_phi, const std::vector<Series>& g) {
    BigFloat worst(0);
    for (const auto& e : exp_phi) {
        BigFloat v = substitute_phi(e, g).sup_norm();
        if (v > worst) worst = v;
    }
    return worst;
}

VersalOutput bruno_stolovitch_ideal(const SolverContext& ctx, const std::vector<Series>& g) {
    const RingPtr& ring = ctx.ring;
    const unsigned d = ring->d(), p = ring->p(), l = ring->l();
    VersalOutput out;
    out.g = g;
    out.bs_generators.reserve(p);
    out.graph_generators.reserve(p);
    out.classification.reserve(p);
    for (unsigned j = 0; j < p; ++j) {
        const auto& R = ctx.basis.generators[j];
        Series bs(ring);
        for (unsigned i = 0; i < d; ++i) {
            if (R[i] == 0) continue;
            Series t = g[i];
            t.scale(Cplx(BigFloat(R[i])));
            bs += t;
        }
        Series graph = Series::u(ring, j);
        std::vector<unsigned> xR(d, 0);
        for (unsigned i = 0; i < d; ++i) xR[i] = R[i];
        graph.add_term(make_mono(*ring, xR), Cplx(BigFloat(-1)));

        LinearReport rep;
        rep.u_coeff.reserve(p);
        rep.mu_coeff.reserve(l);
        for (unsigned k = 0; k < p; ++k) {
            Mono uk;
            uk.e[ring->u_slot(k)] = 1;
            uk.wt = static_cast<uint16_t>(ring->u_weight(k));
            rep.u_coeff.push_back(bs.coeff(uk));
        }
        for (unsigned k = 0; k < l; ++k) {
            Mono mk;
            mk.e[ring->mu_slot(k)] = 1;
            mk.wt = 2;
            rep.mu_coeff.push_back(bs.coeff(mk));
        }
        out.bs_generators.push_back(std::move(bs));
        out.graph_generators.push_back(std::move(graph));
        out.classification.push_back(std::move(rep));
    }

    // nondegeneracy: the p x (p+l) linear-part matrix has full rank p
    if (p > 0) {
        std::vector<std::vector<Cplx>> mat(p, std::vector<Cplx>(p + l));
        BigFloat scale(0);
        for (unsigned j = 0; j < p; ++j) {
            for (unsigned k = 0; k < p; ++k) mat[j][k] = out.classification[j].u_coeff[k];
            for (unsigned k = 0; k < l; ++k) mat[j][p + k] = out.classification[j].mu_coeff[k];
            for (const auto& c : mat[j]) scale = std::max(scale, c.sup_abs());
        }
        unsigned rank = 0;
        BigFloat pivot_floor = scale * coeff_epsilon();
        for (unsigned col = 0; col < p + l && rank < p; ++col) {
            unsigned sel = rank;
            BigFloat best(0);
            for (unsigned r = rank; r < p; ++r)
                if (mat[r][col].abs() > best) {
                    best = mat[r][col].abs();
                    sel = r;
                }
            if (best <= pivot_floor) continue;
            std::swap(mat[sel], mat[rank]);
            for (unsigned r = rank + 1; r < p; ++r) {
                Cplx f = mat[r][col] / mat[rank][col];
                for (unsigned c = col; c < p + l; ++c) mat[r][c] -= f * mat[rank][c];
            }
            ++rank;
        }
        out.nondegenerate = rank == p;
    } else {
        out.nondegenerate = true;
    }
    return out;
}

VersalOutput versal_pipeline(const SolverContext& ctx, const NormalFormResult& nf) {
    std::vector<Series> exp_phi;
    exp_phi.reserve(ctx.ring->d());
    for (unsigned j = 0; j < ctx.ring->d(); ++j)
        exp_phi.push_back(pushforward_function(nf.generators, Series::phi(ctx.ring, j)));
    std::vector<Series> g = implicit_solve_phi(exp_phi);
    VersalOutput out = bruno_stolovitch_ideal(ctx, g);
    out.exp_phi = std::move(exp_phi);
    out.resubstitution_residual = resubstitution_residual(out.exp_phi, out.g);
    return out;
}

Derivation normal_form_family_member(const SolverContext& ctx, const NormalFormResult& nf,
                                     const VersalOutput& out) {
    Derivation Y(ctx.ring);
    const auto& generators = ctx.basis.generators;
    for (unsigned i = 0; i < ctx.ring->d(); ++i) {
        Series comp = substitute_phi(nf.normal_form.x(i), out.g);
        Y.x(i) = comp.expand_u(generators);
        // phi components of A vanish; keep the frame honest
        if (!nf.normal_form.phi(i).is_zero())
            Y.phi(i) = substitute_phi(nf.normal_form.phi(i), out.g).expand_u(generators);
    }
    return Y;
}

Series reduce_mod_monomial_ideal(const Series& f, const std::vector<std::vector<unsigned>>& monomials) {
    const Ring& ring = f.ring();
    Series rem(f.ring_ptr());
    for (const auto& [m, c] : f.terms()) {
        bool divisible = false;
        for (const auto& R : monomials) {
            bool ok = true;
            for (unsigned i = 0; i < ring.d() && ok; ++i)
                if (m.e[ring.x_slot(i)] < R[i]) ok = false;
            if (ok) {
                divisible = true;
                break;
            }
        }
        if (!divisible) rem.add_term(m, c);
    }
    return rem;
}

BigFloat check_ideal_invariance(const SolverContext& ctx, const Derivation& Y, const VersalOutput& out) {
    const RingPtr& ring = ctx.ring;
    const unsigned p = ring->p();
    const auto& generators = ctx.basis.generators;
    BigFloat worst(0);

    // bare forms of the ideal generators (graph generators vanish)
    std::vector<Series> bs_bare;
    bs_bare.reserve(p);
    for (unsigned j = 0; j < p; ++j) bs_bare.push_back(out.bs_generators[j].expand_u(generators));

    for (unsigned j = 0; j < p; ++j) {
        Series img = Y.apply(bs_bare[j]);
        // chain rule: Y((g,R_j) o u=x^R) = sum_k d_u_k(g,R_j)|_bare * Y(x^{R_k}),
        // and Y(x^{R_k}) = (g,R_k)_bare * x^{R_k} for the logarithmic family
        // member; subtract the witnessed combination, then reduce what is
        // left against the monomial part of the ideal.
        for (unsigned k = 0; k < p; ++k) {
            Series c = out.bs_generators[j].derivative_u(k).expand_u(generators);
            if (c.is_zero()) continue;
            std::vector<unsigned> xR(ring->d(), 0);
            for (unsigned i = 0; i < ring->d(); ++i) xR[i] = generators[k][i];
            Series factor = bs_bare[k].mul_mono(make_mono(*ring, xR), Cplx::one());
            img -= c * factor;
        }
        Series rem = reduce_mod_monomial_ideal(img, generators);
        BigFloat v = rem.sup_norm();
        if (v > worst) worst = v;
    }
    return worst;
}

}  // namespace resonant
