#include "resonant/derivation.hpp"

#include <algorithm>

namespace resonant {

Derivation::Derivation(RingPtr ring) : ring_(std::move(ring)) {
    x_comp_.assign(ring_->d(), Series(ring_));
    phi_comp_.assign(ring_->d(), Series(ring_));
}

bool Derivation::is_zero() const {
    for (const auto& s : x_comp_)
        if (!s.is_zero()) return false;
    for (const auto& s : phi_comp_)
        if (!s.is_zero()) return false;
    return true;
}

bool Derivation::has_phi_component() const {
    for (const auto& s : phi_comp_)
        if (!s.is_zero()) return true;
    return false;
}

int Derivation::order() const {
    int best = kInfiniteOrder;
    for (const auto& s : x_comp_)
        if (!s.is_zero()) best = std::min(best, static_cast<int>(s.min_weight()) - 1);
    for (const auto& s : phi_comp_)
        if (!s.is_zero()) best = std::min(best, static_cast<int>(s.min_weight()) - 2);
    return best;
}

BigFloat Derivation::sup_norm() const {
    BigFloat best(0);
    for (const auto& s : x_comp_) {
        BigFloat v = s.sup_norm();
        if (v > best) best = v;
    }
    for (const auto& s : phi_comp_) {
        BigFloat v = s.sup_norm();
        if (v > best) best = v;
    }
    return best;
}

Series Derivation::apply(const Series& f) const {
    Series out(ring_);
    for (unsigned i = 0; i < ring_->d(); ++i) {
        if (!x_comp_[i].is_zero()) {
            Series df = f.derivative_x(i);
            if (!df.is_zero()) out += x_comp_[i] * df;
        }
        if (!phi_comp_[i].is_zero()) {
            Series df = f.derivative_phi(i);
            if (!df.is_zero()) out += phi_comp_[i] * df;
        }
    }
    return out;
}

Derivation& Derivation::operator+=(const Derivation& o) {
    if (!same_ring(o)) throw PreconditionError("derivation rings mismatch in +");
    for (unsigned i = 0; i < ring_->d(); ++i) {
        x_comp_[i] += o.x_comp_[i];
        phi_comp_[i] += o.phi_comp_[i];
    }
    return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) {
    if (!same_ring(o)) throw PreconditionError("derivation rings mismatch in -");
    for (unsigned i = 0; i < ring_->d(); ++i) {
        x_comp_[i] -= o.x_comp_[i];
        phi_comp_[i] -= o.phi_comp_[i];
    }
    return *this;
}

Derivation Derivation::operator-() const {
    Derivation out(ring_);
    for (unsigned i = 0; i < ring_->d(); ++i) {
        out.x_comp_[i] = -x_comp_[i];
        out.phi_comp_[i] = -phi_comp_[i];
    }
    return out;
}

Derivation& Derivation::scale(const Cplx& c) {
    for (unsigned i = 0; i < ring_->d(); ++i) {
        x_comp_[i].scale(c);
        phi_comp_[i].scale(c);
    }
    return *this;
}

Derivation lie_bracket(const Derivation& X, const Derivation& Y) {
    if (!X.same_ring(Y)) throw PreconditionError("derivation rings mismatch in bracket");
    Derivation out(X.ring_ptr());
    for (unsigned i = 0; i < X.ring().d(); ++i) {
        out.x(i) = X.apply(Y.x(i)) - Y.apply(X.x(i));
        out.phi(i) = X.apply(Y.phi(i)) - Y.apply(X.phi(i));
    }
    return out;
}

Derivation truncate_range(const Derivation& D, unsigned lo, unsigned hi) {
    const unsigned hi_c = std::min(hi, D.ring().trunc());  // all orders are below trunc anyway
    Derivation out(D.ring_ptr());
    for (unsigned i = 0; i < D.ring().d(); ++i) {
        out.x(i) = D.x(i).truncate_weight_range(lo + 1, hi_c + 1);
        out.phi(i) = D.phi(i).truncate_weight_range(lo + 2, hi_c + 2);
    }
    return out;
}

namespace {

/// Every term must have order >= 1, or be a d/dphi term whose coefficient
/// is phi-free; those classes strictly reduce (weight budget, phi-degree),
/// so the adjoint/exponential series terminate on truncated input.
void validate_flow_generator(const Derivation& v, const char* who) {
    const Ring& ring = v.ring();
    for (unsigned i = 0; i < ring.d(); ++i) {
        for (const auto& term : v.x(i).terms()) {
            if (term.first.wt < 2)
                throw PreconditionError(std::string(who) +
                                        ": generator has a d/dx term of non-positive order; the series would not terminate");
        }
        for (const auto& term : v.phi(i).terms()) {
            const Mono& m = term.first;
            if (m.wt >= 3) continue;  // order >= 1
            bool phi_free = true;
            for (unsigned k = 0; k < ring.d(); ++k)
                if (m.e[ring.phi_slot(k)] != 0) phi_free = false;
            if (!phi_free)
                throw PreconditionError(std::string(who) +
                                        ": generator has a low-order phi-dependent d/dphi term; the series would not terminate");
        }
    }
}

unsigned term_cap(const Ring& ring) { return 4 * ring.trunc() + 16; }

}  // namespace

Derivation exp_adjoint(const Derivation& v, const Derivation& X) {
    if (!v.same_ring(X)) throw PreconditionError("derivation rings mismatch in exp_adjoint");
    if (v.is_zero()) return X;
    validate_flow_generator(v, "exp_adjoint");
    Derivation sum = X;
    Derivation term = X;
    const unsigned cap = term_cap(v.ring());
    for (unsigned k = 1; k <= cap; ++k) {
        term = lie_bracket(v, term);
        term.scale(Cplx(BigFloat(-1) / BigFloat(k)));
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw PreconditionError("exp_adjoint: adjoint series did not terminate within the step cap");
}

Series exp_apply(const Derivation& v, const Series& f) {
    if (!v.ring().same_shape(f.ring())) throw PreconditionError("ring mismatch in exp_apply");
    Series sum = f;
    if (v.is_zero()) return sum;
    validate_flow_generator(v, "pushforward");
    Series term = f;
    const unsigned cap = term_cap(v.ring());
    for (unsigned k = 1; k <= cap; ++k) {
        term = v.apply(term);
        term.scale(Cplx(BigFloat(1) / BigFloat(k)));
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw PreconditionError("pushforward: exponential series did not terminate within the step cap");
}

Series pushforward_function(std::span<const Derivation> generators, const Series& f) {
    Series out = f;
    for (const Derivation& v : generators) out = exp_apply(v, out);
    return out;
}

}  // namespace resonant
