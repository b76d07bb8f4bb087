#pragma once

#include <functional>
#include <optional>

#include "resonant/frequency.hpp"

namespace resonant {

enum class Verdict { holds, fails, unknown };

const char* to_string(Verdict v);

/// An exponent with two distinct N-representations over the generators.
struct P1Witness {
    std::vector<unsigned> j;
    std::vector<unsigned> combo_a, combo_b;  // generator multiplicities
};

/// A resonant field exponent (K, i) whose decomposition K = sum m_j R_j + E_i
/// fails to exist or fails to be unique.
struct P2Witness {
    std::vector<unsigned> k;
    unsigned direction = 0;
    bool representable = false;              // false: K - E_i has no N-representation
    std::vector<unsigned> combo_a, combo_b;  // set when ambiguous
};

/// Hilbert-basis generators of the resonance monoid up to a degree bound,
/// with the positivity verdicts attached by check_P1/check_P2.
struct ResonanceBasis {
    std::vector<std::vector<unsigned>> generators;   // R_1..R_p, graded-lex sorted
    unsigned deg_bound = 0;
    bool complete = false;
    std::vector<std::vector<unsigned>> extreme_rays; // primitive cone rays (certificate data)
    Verdict p1 = Verdict::unknown;
    Verdict p2 = Verdict::unknown;
    std::optional<P1Witness> p1_witness;
    std::optional<P2Witness> p2_witness;
};

constexpr unsigned kDefaultDegBound = 12;

/// Enumerates all invariant exponents up to the bound, keeps the minimal
/// generating set, and attaches the completeness certificate (every extreme
/// ray of the resonance cone reached at degree <= bound/2 and the parallel-
/// epiped bound sum |rho_i| <= bound, which caps Hilbert-basis degrees).
ResonanceBasis hilbert_basis(const FrequencyVector& freq, unsigned deg_bound = kDefaultDegBound);

/// Searches |J| <= deg_bound for an exponent with two distinct
/// N-combinations of the generators. Sets basis.p1.
Verdict check_P1(const FrequencyVector& freq, ResonanceBasis& basis, unsigned deg_bound);

/// Checks existence and uniqueness of K = sum m_j R_j + E_i for every
/// resonant pair (K, i) with |K| <= deg_bound. Sets basis.p2.
Verdict check_P2(const FrequencyVector& freq, ResonanceBasis& basis, unsigned deg_bound);

/// Counts N-representations of `target` over `generators`, stopping at
/// `cap`; fills up to two distinct multiplicity vectors.
unsigned count_representations(std::span<const unsigned> target,
                               const std::vector<std::vector<unsigned>>& generators, unsigned cap,
                               std::vector<std::vector<unsigned>>* found = nullptr);

/// Visits every K in N^d with 1 <= |K| <= bound (graded, then lexicographic).
void for_each_exponent(unsigned d, unsigned bound, const std::function<void(std::span<const unsigned>)>& fn);

}  // namespace resonant
