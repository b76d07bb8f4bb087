#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "resonant/errors.hpp"

namespace resonant {

/// Variable blocks of the working algebra, in storage order:
///
///   x_1..x_d     weight 1      phase-space coordinates
///   u_1..u_p     weight |R_j|  invariant-monomial tags (Bruno variables)
///   phi_1..phi_d weight 2      detuning parameters
///   mu_1..mu_l   weight 2      deformation parameters
///
/// The u-block tags invariant monomials x^{R_j}. Tags are opaque constants
/// for every differential operation: no derivation ever carries a d/du
/// component and d/dx of a tag is zero. They are expanded back to
/// x-monomials only at explicit substitution points.
class Ring {
public:
    static constexpr unsigned kMaxSlots = 32;

    static std::shared_ptr<const Ring> make(unsigned d, unsigned p, unsigned l, unsigned trunc,
                                            std::vector<unsigned> u_weights = {});

    unsigned d() const { return d_; }
    unsigned p() const { return p_; }
    unsigned l() const { return l_; }
    unsigned trunc() const { return trunc_; }
    unsigned u_weight(unsigned j) const { return u_weights_[j]; }

    unsigned x_slot(unsigned i) const { return i; }
    unsigned u_slot(unsigned j) const { return d_ + j; }
    unsigned phi_slot(unsigned i) const { return d_ + p_ + i; }
    unsigned mu_slot(unsigned k) const { return d_ + p_ + d_ + k; }
    unsigned slots() const { return d_ + p_ + d_ + l_; }

    unsigned slot_weight(unsigned slot) const { return slot_weight_[slot]; }

    bool same_shape(const Ring& o) const {
        return d_ == o.d_ && p_ == o.p_ && l_ == o.l_ && trunc_ == o.trunc_ && u_weights_ == o.u_weights_;
    }

private:
    Ring() = default;
    unsigned d_ = 0, p_ = 0, l_ = 0, trunc_ = 0;
    std::vector<unsigned> u_weights_;
    std::array<uint8_t, kMaxSlots> slot_weight_{};
};

using RingPtr = std::shared_ptr<const Ring>;

/// A monomial exponent over all blocks, with its weighted degree cached.
struct Mono {
    std::array<uint8_t, Ring::kMaxSlots> e{};
    uint16_t wt = 0;

    friend bool operator==(const Mono& a, const Mono& b) { return a.wt == b.wt && a.e == b.e; }
};

/// Graded order: weight first, then lexicographic over the slot blocks
/// (x, u, phi, mu). Series term maps use this, so iteration and printing
/// are deterministic.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.wt != b.wt) return a.wt < b.wt;
        return a.e < b.e;
    }
};

/// Builds a monomial from per-block exponents, computing the weight.
Mono make_mono(const Ring& ring, std::span<const unsigned> x_part, std::span<const unsigned> u_part = {},
               std::span<const unsigned> phi_part = {}, std::span<const unsigned> mu_part = {});

/// Recomputes the cached weight of a raw exponent array.
uint16_t mono_weight(const Ring& ring, const std::array<uint8_t, Ring::kMaxSlots>& e);

inline Mono mono_one() { return Mono{}; }

}  // namespace resonant
