#include "resonant/series.hpp"

#include <sstream>

namespace resonant {

Series Series::constant(RingPtr ring, Cplx c) {
    Series s(std::move(ring));
    s.add_term(mono_one(), c);
    return s;
}

Series Series::variable(RingPtr ring, unsigned slot) {
    if (slot >= ring->slots()) throw PreconditionError("variable slot out of range");
    Mono m;
    m.e[slot] = 1;
    m.wt = ring->slot_weight(slot);
    Series s(std::move(ring));
    s.add_term(m, Cplx::one());
    return s;
}

Series Series::monomial(RingPtr ring, const Mono& m, Cplx c) {
    Series s(std::move(ring));
    s.add_term(m, c);
    return s;
}

Cplx Series::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Cplx::zero() : it->second;
}

void Series::add_term(const Mono& m, const Cplx& c) {
    if (m.wt >= ring_->trunc()) return;
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    if (!same_ring(o)) throw PreconditionError("series rings mismatch in +");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    if (!same_ring(o)) throw PreconditionError("series rings mismatch in -");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Series Series::operator-() const {
    Series out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Series& Series::scale(const Cplx& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    TermMap scaled;
    for (const auto& [m, v] : terms_) {
        Cplx w = v * c;
        if (!w.is_zero()) scaled.emplace(m, std::move(w));
    }
    terms_ = std::move(scaled);
    return *this;
}

Series& Series::scale(const BigFloat& s) { return scale(Cplx(s)); }

namespace {

bool add_exponents(const Ring& ring, const Mono& a, const Mono& b, Mono& out) {
    unsigned wt = static_cast<unsigned>(a.wt) + b.wt;
    if (wt >= ring.trunc()) return false;
    for (unsigned s = 0; s < ring.slots(); ++s) {
        unsigned e = static_cast<unsigned>(a.e[s]) + b.e[s];
        if (e > 255) throw PreconditionError("exponent overflow in product");
        out.e[s] = static_cast<uint8_t>(e);
    }
    out.wt = static_cast<uint16_t>(wt);
    return true;
}

}  // namespace

Series operator*(const Series& a, const Series& b) {
    if (!a.same_ring(b)) throw PreconditionError("series rings mismatch in *");
    const Ring& ring = a.ring();
    Series out(a.ring_ptr());
    if (a.is_zero() || b.is_zero()) return out;
    const unsigned cap = ring.trunc();
    const unsigned b_min = b.min_weight();
    Mono prod;
    for (const auto& [ma, ca] : a.terms()) {
        if (static_cast<unsigned>(ma.wt) + b_min >= cap) break;  // graded order
        for (const auto& [mb, cb] : b.terms()) {
            if (static_cast<unsigned>(ma.wt) + mb.wt >= cap) break;
            if (!add_exponents(ring, ma, mb, prod)) continue;
            out.add_term(prod, ca * cb);
        }
    }
    return out;
}

Series Series::derivative_x(unsigned i) const {
    if (i >= ring_->d()) throw PreconditionError("x index out of range");
    const unsigned slot = ring_->x_slot(i);
    Series out(ring_);
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.e[slot];
        if (e == 0) continue;
        Mono dm = m;
        dm.e[slot] = static_cast<uint8_t>(e - 1);
        dm.wt = static_cast<uint16_t>(m.wt - ring_->slot_weight(slot));
        out.add_term(dm, c * BigFloat(e));
    }
    return out;
}

Series Series::derivative_phi(unsigned i) const {
    if (i >= ring_->d()) throw PreconditionError("phi index out of range");
    const unsigned slot = ring_->phi_slot(i);
    Series out(ring_);
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.e[slot];
        if (e == 0) continue;
        Mono dm = m;
        dm.e[slot] = static_cast<uint8_t>(e - 1);
        dm.wt = static_cast<uint16_t>(m.wt - ring_->slot_weight(slot));
        out.add_term(dm, c * BigFloat(e));
    }
    return out;
}

Series Series::derivative_u(unsigned j) const {
    if (j >= ring_->p()) throw PreconditionError("u index out of range");
    const unsigned slot = ring_->u_slot(j);
    Series out(ring_);
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.e[slot];
        if (e == 0) continue;
        Mono dm = m;
        dm.e[slot] = static_cast<uint8_t>(e - 1);
        dm.wt = static_cast<uint16_t>(m.wt - ring_->slot_weight(slot));
        out.add_term(dm, c * BigFloat(e));
    }
    return out;
}

Series Series::mul_mono(const Mono& m, const Cplx& c) const {
    Series out(ring_);
    if (c.is_zero()) return out;
    Mono prod;
    for (const auto& [ma, ca] : terms_) {
        if (!add_exponents(*ring_, ma, m, prod)) continue;
        out.add_term(prod, ca * c);
    }
    return out;
}

BigFloat Series::sup_norm() const {
    BigFloat best(0);
    for (const auto& [m, c] : terms_) {
        BigFloat v = c.sup_abs();
        if (v > best) best = v;
    }
    return best;
}

unsigned Series::min_weight() const {
    if (terms_.empty()) return ring_->trunc();
    return terms_.begin()->first.wt;
}

Series Series::truncate_weight_range(unsigned lo, unsigned hi) const {
    Series out(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.wt >= hi) break;
        if (m.wt >= lo) out.terms_.emplace(m, c);
    }
    return out;
}

Series Series::substituted(const std::map<unsigned, Series>& replacements) const {
    for (const auto& [slot, repl] : replacements) {
        if (slot >= ring_->slots()) throw PreconditionError("substitution slot out of range");
        if (!repl.same_ring(*this)) throw PreconditionError("substitution series ring mismatch");
    }
    Series out(ring_);
    // power cache per substituted slot
    std::map<std::pair<unsigned, unsigned>, Series> powers;
    auto power_of = [&](unsigned slot, unsigned e) -> const Series& {
        for (unsigned j = 1; j <= e; ++j) {
            auto key = std::make_pair(slot, j);
            if (powers.contains(key)) continue;
            if (j == 1) {
                powers.emplace(key, replacements.at(slot));
            } else {
                Series v = powers.at(std::make_pair(slot, j - 1)) * replacements.at(slot);
                powers.emplace(key, std::move(v));
            }
        }
        return powers.at(std::make_pair(slot, e));
    };
    for (const auto& [m, c] : terms_) {
        Mono kept = m;
        bool dead = false;
        std::vector<std::pair<unsigned, unsigned>> subs;
        for (const auto& [slot, repl] : replacements) {
            unsigned e = m.e[slot];
            if (e == 0) continue;
            kept.e[slot] = 0;
            kept.wt = static_cast<uint16_t>(kept.wt - e * ring_->slot_weight(slot));
            if (repl.is_zero()) {
                dead = true;
                break;
            }
            subs.emplace_back(slot, e);
        }
        if (dead) continue;
        Series acc = Series::monomial(ring_, kept, c);
        for (const auto& [slot, e] : subs) {
            acc = acc * power_of(slot, e);
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

Series Series::expand_u(std::span<const std::vector<unsigned>> u_monomials) const {
    if (u_monomials.size() != ring_->p()) throw PreconditionError("u substitution count mismatch");
    Series out(ring_);
    for (const auto& [m, c] : terms_) {
        Mono bare = m;
        for (unsigned j = 0; j < ring_->p(); ++j) {
            const unsigned e = m.e[ring_->u_slot(j)];
            if (e == 0) continue;
            bare.e[ring_->u_slot(j)] = 0;
            for (unsigned i = 0; i < ring_->d(); ++i) {
                unsigned v = bare.e[ring_->x_slot(i)] + e * u_monomials[j][i];
                if (v > 255) throw PreconditionError("exponent overflow expanding u");
                bare.e[ring_->x_slot(i)] = static_cast<uint8_t>(v);
            }
        }
        bare.wt = mono_weight(*ring_, bare.e);  // weights match, recompute defensively
        out.add_term(bare, c);
    }
    return out;
}

std::string Series::pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << bf_to_decimal(c.re, 12);
        if (!c.im.is_zero()) os << (c.im > 0 ? "+" : "") << bf_to_decimal(c.im, 12) << "i";
        os << ")";
        auto emit = [&](const char* name, unsigned base, unsigned count) {
            for (unsigned i = 0; i < count; ++i) {
                unsigned e = m.e[base + i];
                if (e == 0) continue;
                os << "*" << name << (i + 1);
                if (e > 1) os << "^" << e;
            }
        };
        emit("x", ring_->x_slot(0), ring_->d());
        if (ring_->p() > 0) emit("u", ring_->u_slot(0), ring_->p());
        emit("phi", ring_->phi_slot(0), ring_->d());
        if (ring_->l() > 0) emit("mu", ring_->mu_slot(0), ring_->l());
    }
    return os.str();
}

Series invert_unit(const Series& g) {
    Cplx c0 = g.coeff(mono_one());
    if (c0.is_zero()) throw PreconditionError("cannot invert a series with zero constant term");
    // g = c0 (1 + h), 1/g = (1/c0) sum (-h)^k
    Series h = g;
    h.add_term(mono_one(), -c0);
    h.scale(Cplx::one() / c0);
    Series out = Series::constant(g.ring_ptr(), Cplx::one());
    if (!h.is_zero()) {
        Series pow = Series::constant(g.ring_ptr(), Cplx::one());
        const unsigned hmin = h.min_weight();
        const unsigned steps = hmin > 0 ? (g.ring().trunc() + hmin - 1) / hmin : g.ring().trunc();
        for (unsigned k = 1; k <= steps; ++k) {
            pow = pow * h;
            if (pow.is_zero()) break;
            if (k % 2 == 1) out -= pow;
            else out += pow;
        }
    }
    out.scale(Cplx::one() / c0);
    return out;
}

Series divide_by_unit(const Series& f, const Series& g) { return f * invert_unit(g); }

Series truncate_range(const Series& a, unsigned lo, unsigned hi) { return a.truncate_weight_range(lo, hi); }

}  // namespace resonant
