#pragma once

#include <complex>
#include <span>
#include <vector>

#include "resonant/frequency.hpp"

namespace resonant {

enum class SigmaVerdict { bruno_up_to_kmax, diverging_trend, contains_exact_zero };

const char* to_string(SigmaVerdict v);

/// Which norm bounds the exponent window ||J|| <= 2^k. The sup norm makes
/// sigma of the opposite pair identically 1 from k = 0 on; the 1-norm is
/// available for comparison.
enum class SigmaNorm { linf, l1 };

/// sigma(Lambda)_k and the Bruno partial sums up to kmax. Bounded-horizon
/// by construction: no asymptotic claim is made beyond kmax.
struct BrunoReport {
    std::vector<double> sigma;         // sigma_0 .. sigma_kmax
    std::vector<double> partial_sums;  // sum_{j<=k} |log sigma_j| / 2^j
    SigmaVerdict verdict = SigmaVerdict::bruno_up_to_kmax;
    unsigned kmax = 0;
};

constexpr unsigned kSigmaKmaxCap = 14;  // enumeration over ||J|| <= 2^k is exponential

/// Exact enumeration of J in N^d \ {0} with ||J|| <= 2^k. Divisors that
/// vanish exactly (decided by the rational frequency data, never by
/// floats) are excluded; the rest enter the minimum in double precision.
BrunoReport sigma_sequence(const FrequencyVector& freq, unsigned kmax, SigmaNorm norm = SigmaNorm::linf);

/// Same enumeration for the shifted vector Lambda + phi. Only divisors
/// that vanish identically in phi are excluded.
BrunoReport sigma_sequence_shifted(const FrequencyVector& freq, std::span<const std::complex<double>> phi,
                                   unsigned kmax, SigmaNorm norm = SigmaNorm::linf);

struct BrunoSumResult {
    std::vector<double> partial_sums;
    bool converging = false;  // monotone-tail heuristic; never a claim beyond K
};

/// Partial sums of |log a_k| / 2^k for a positive sequence.
BrunoSumResult bruno_sum(std::span<const double> a);

/// Membership in Z_{n,s}: |phi_i| < s for all i and
/// sigma(Lambda+phi)_k >= a_k (s0 - s) for all k <= n.
bool cantor_membership(const FrequencyVector& freq, std::span<const std::complex<double>> phi, unsigned n,
                       double s, double s0, std::span<const double> a, SigmaNorm norm = SigmaNorm::linf);

}  // namespace resonant
