#pragma once

#include <limits>
#include <span>
#include <vector>

#include "resonant/series.hpp"

namespace resonant {

/// Order contributed by one term: coefficient weight minus 1 in a d/dx_i
/// component, minus 2 in a d/dphi_i component. No value for empty input.
constexpr int kInfiniteOrder = std::numeric_limits<int>::max() / 2;

/// A relative vector field: components along d/dx_i and d/dphi_i only.
/// The mu and u directions never appear.
class Derivation {
public:
    explicit Derivation(RingPtr ring);

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }

    const Series& x(unsigned i) const { return x_comp_[i]; }
    const Series& phi(unsigned i) const { return phi_comp_[i]; }
    Series& x(unsigned i) { return x_comp_[i]; }
    Series& phi(unsigned i) { return phi_comp_[i]; }

    bool is_zero() const;
    bool has_phi_component() const;
    int order() const;
    BigFloat sup_norm() const;

    /// Applies the derivation to a function. u tags are constants.
    Series apply(const Series& f) const;

    Derivation& operator+=(const Derivation& o);
    Derivation& operator-=(const Derivation& o);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
    Derivation operator-() const;
    Derivation& scale(const Cplx& c);

    bool same_ring(const Derivation& o) const { return ring_->same_shape(o.ring()); }

private:
    RingPtr ring_;
    std::vector<Series> x_comp_, phi_comp_;
};

/// [X, Y] = X.Y - Y.X, computed component-wise on coordinate functions.
Derivation lie_bracket(const Derivation& X, const Derivation& Y);

/// Keeps the terms whose adjusted order lies in [lo, hi).
Derivation truncate_range(const Derivation& D, unsigned lo, unsigned hi);

/// sum_k ad_{-v}^k(X) / k!, the conjugate of X under the inverse flow of v.
/// Requires a generator whose adjoint series terminates: every term of
/// order >= 1, or a d/dphi term with phi-free coefficient.
Derivation exp_adjoint(const Derivation& v, const Derivation& X);

/// e^v(f) = sum_k v^k(f) / k!.
Series exp_apply(const Derivation& v, const Series& f);

/// exp(v_K) o ... o exp(v_0) applied to f.
Series pushforward_function(std::span<const Derivation> generators, const Series& f);

}  // namespace resonant
