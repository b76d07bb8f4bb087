#include "resonant/ring.hpp"

namespace resonant {

std::shared_ptr<const Ring> Ring::make(unsigned d, unsigned p, unsigned l, unsigned trunc,
                                       std::vector<unsigned> u_weights) {
    if (d == 0) throw PreconditionError("ring needs at least one x variable");
    if (trunc < 1) throw PreconditionError("truncation order must be at least 1");
    if (u_weights.empty()) u_weights.assign(p, 2u);
    if (u_weights.size() != p) throw PreconditionError("u weight list does not match u count");
    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->d_ = d;
    ring->p_ = p;
    ring->l_ = l;
    ring->trunc_ = trunc;
    ring->u_weights_ = std::move(u_weights);
    if (ring->slots() > kMaxSlots) throw PreconditionError("too many variables for the fixed monomial layout");
    for (unsigned i = 0; i < d; ++i) ring->slot_weight_[ring->x_slot(i)] = 1;
    for (unsigned j = 0; j < p; ++j) {
        unsigned w = ring->u_weights_[j];
        if (w == 0 || w > 255) throw PreconditionError("u weight out of range");
        ring->slot_weight_[ring->u_slot(j)] = static_cast<uint8_t>(w);
    }
    for (unsigned i = 0; i < d; ++i) ring->slot_weight_[ring->phi_slot(i)] = 2;
    for (unsigned k = 0; k < l; ++k) ring->slot_weight_[ring->mu_slot(k)] = 2;
    return ring;
}

uint16_t mono_weight(const Ring& ring, const std::array<uint8_t, Ring::kMaxSlots>& e) {
    unsigned w = 0;
    for (unsigned s = 0; s < ring.slots(); ++s) w += static_cast<unsigned>(e[s]) * ring.slot_weight(s);
    if (w > 0xffff) throw PreconditionError("monomial weight overflow");
    return static_cast<uint16_t>(w);
}

Mono make_mono(const Ring& ring, std::span<const unsigned> x_part, std::span<const unsigned> u_part,
               std::span<const unsigned> phi_part, std::span<const unsigned> mu_part) {
    if (x_part.size() > ring.d() || u_part.size() > ring.p() || phi_part.size() > ring.d() ||
        mu_part.size() > ring.l())
        throw PreconditionError("exponent block longer than the ring block");
    Mono m;
    auto put = [&](std::span<const unsigned> part, unsigned base) {
        for (size_t i = 0; i < part.size(); ++i) {
            if (part[i] > 255) throw PreconditionError("exponent entry out of range");
            m.e[base + i] = static_cast<uint8_t>(part[i]);
        }
    };
    put(x_part, ring.x_slot(0));
    put(u_part, ring.u_slot(0));
    put(phi_part, ring.phi_slot(0));
    put(mu_part, ring.mu_slot(0));
    m.wt = mono_weight(ring, m.e);
    return m;
}

}  // namespace resonant
