#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "resonant/bigfloat.hpp"
#include "resonant/ring.hpp"

namespace resonant {

/// Truncated, weighted, sparse multivariate power series. Terms of weight
/// >= ring.trunc() are discarded by every operation; coefficients within
/// coeff_epsilon() of zero are dropped.
class Series {
public:
    using TermMap = std::map<Mono, Cplx, MonoLess>;

    explicit Series(RingPtr ring) : ring_(std::move(ring)) {}

    static Series constant(RingPtr ring, Cplx c);
    static Series variable(RingPtr ring, unsigned slot);
    static Series x(const RingPtr& ring, unsigned i) { return variable(ring, ring->x_slot(i)); }
    static Series u(const RingPtr& ring, unsigned j) { return variable(ring, ring->u_slot(j)); }
    static Series phi(const RingPtr& ring, unsigned i) { return variable(ring, ring->phi_slot(i)); }
    static Series mu(const RingPtr& ring, unsigned k) { return variable(ring, ring->mu_slot(k)); }
    static Series monomial(RingPtr ring, const Mono& m, Cplx c);

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    Cplx coeff(const Mono& m) const;

    /// Adds c * m, respecting truncation and the zero threshold.
    void add_term(const Mono& m, const Cplx& c);

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    Series operator-() const;

    Series& scale(const Cplx& c);
    Series& scale(const BigFloat& s);

    friend Series operator*(const Series& a, const Series& b);
    Series& operator*=(const Series& o) { return *this = *this * o; }

    /// d/dx_i. u tags are constants: they are never differentiated.
    Series derivative_x(unsigned i) const;
    /// d/dphi_i.
    Series derivative_phi(unsigned i) const;
    /// Formal d/du_j; only meaningful for series living in C[[u,mu]]
    /// (ideal bookkeeping), never used inside derivations.
    Series derivative_u(unsigned j) const;

    /// Multiplies by a single monomial.
    Series mul_mono(const Mono& m, const Cplx& c) const;

    BigFloat sup_norm() const;
    /// Smallest term weight, or ring().trunc() if zero.
    unsigned min_weight() const;

    /// Keeps exactly the terms with lo <= wt < hi.
    Series truncate_weight_range(unsigned lo, unsigned hi) const;

    /// Substitutes series for the listed slots (simultaneously).
    Series substituted(const std::map<unsigned, Series>& replacements) const;

    /// Replaces every u_j tag by the given x-monomials (graph substitution).
    Series expand_u(std::span<const std::vector<unsigned>> u_monomials) const;

    bool same_ring(const Series& o) const { return ring_->same_shape(o.ring()); }

    std::string pretty() const;

private:
    RingPtr ring_;
    TermMap terms_;
};

/// 1/g for a series with a nonzero constant term, by the truncated
/// geometric expansion.
Series invert_unit(const Series& g);

/// f/g with g a unit.
Series divide_by_unit(const Series& f, const Series& g);

/// Keeps exactly the terms with lo <= wt < hi (operation-level alias).
Series truncate_range(const Series& a, unsigned lo, unsigned hi);

}  // namespace resonant
