#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "resonant/bigfloat.hpp"

namespace resonant {

using Rational = mp::cpp_rational;

/// The frequency vector Lambda of a semi-simple linear part: exact rational
/// coordinates over a declared transcendence basis omega_1..omega_m, plus
/// numeric shadows. Every resonance decision uses only the exact part.
struct FrequencyVector {
    unsigned d = 0;
    unsigned m = 0;
    std::vector<std::vector<Rational>> l_exact;      // d rows of m rationals
    std::vector<Cplx> omega;                         // numeric omega at working precision
    std::vector<Cplx> lambda;                        // numeric lambda at working precision
    std::vector<std::complex<double>> l_numeric;     // double shadow, diagnostics only

    /// Builds from exact rows and numeric omega values. When a numeric
    /// lambda shadow is supplied it is validated against the exact rows at
    /// 1e-12 relative tolerance.
    static FrequencyVector make(std::vector<std::vector<Rational>> rows, std::vector<Cplx> omega_values,
                                std::optional<std::vector<std::complex<double>>> numeric_shadow = std::nullopt);

    /// Convenience: treats the given numeric values as Q-independent
    /// (identity exact matrix over their own basis).
    static FrequencyVector from_numeric(std::vector<std::complex<double>> values);

    /// (Lambda, K) as an exact vector over the omega basis.
    std::vector<Rational> pair_exact(std::span<const long long> K) const;
    bool pair_is_zero(std::span<const long long> K) const;

    /// (Lambda, K) = 0, K in N^d.
    bool invariant_exponent(std::span<const unsigned> K) const;
    /// (Lambda, K) - lambda_i = 0.
    bool resonant_field_exponent(std::span<const unsigned> K, unsigned i) const;
    /// lambda_i = 0 exactly.
    bool lambda_is_zero(unsigned i) const;

    /// Numeric (Lambda, K) at working precision.
    Cplx pair_numeric(std::span<const unsigned> K) const;
};

/// Single-monomial resonance test. With a direction index this is the
/// resonant-field test (Lambda,K) = lambda_i, without it the invariant
/// test (Lambda,K) = 0.
bool resonant_monomial_test(const FrequencyVector& freq, std::span<const unsigned> K,
                            std::optional<unsigned> direction = std::nullopt);

}  // namespace resonant
