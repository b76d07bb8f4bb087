#include "resonant/smalldivisor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "resonant/errors.hpp"

namespace resonant {

const char* to_string(SigmaVerdict v) {
    switch (v) {
        case SigmaVerdict::bruno_up_to_kmax: return "bruno_up_to_kmax";
        case SigmaVerdict::diverging_trend: return "diverging_trend";
        default: return "contains_exact_zero";
    }
}

namespace {

/// Integer form of the exact pairing: column j of the frequency matrix
/// scaled by its denominator lcm, so (Lambda, v) = 0 iff all column dot
/// products vanish. Stays within 128-bit arithmetic at the enumeration cap.
struct ExactPairing {
    unsigned d = 0, m = 0;
    std::vector<std::vector<long long>> cols;  // m columns of d integers

    explicit ExactPairing(const FrequencyVector& freq) : d(freq.d), m(freq.m) {
        if (m > 8) throw PreconditionError("transcendence basis too large for the sigma enumeration");
        cols.assign(m, std::vector<long long>(d, 0));
        for (unsigned j = 0; j < m; ++j) {
            mp::cpp_int lcm_den = 1;
            for (unsigned i = 0; i < d; ++i) lcm_den = lcm(lcm_den, denominator(freq.l_exact[i][j]));
            for (unsigned i = 0; i < d; ++i) {
                mp::cpp_int v = numerator(freq.l_exact[i][j]) * (lcm_den / denominator(freq.l_exact[i][j]));
                if (v > 1000000000LL || v < -1000000000LL)
                    throw PreconditionError("frequency rationals too large for the sigma enumeration");
                cols[j][i] = static_cast<long long>(v);
            }
        }
    }

    bool is_zero(std::span<const long long> v) const {
        for (unsigned j = 0; j < m; ++j) {
            __int128 acc = 0;
            for (unsigned i = 0; i < d; ++i) acc += static_cast<__int128>(v[i]) * cols[j][i];
            if (acc != 0) return false;
        }
        return true;
    }

    void dots(std::span<const unsigned> J, __int128* out) const {
        for (unsigned j = 0; j < m; ++j) {
            __int128 acc = 0;
            for (unsigned i = 0; i < d; ++i) acc += static_cast<__int128>(J[i]) * cols[j][i];
            out[j] = acc;
        }
    }

    bool is_zero_shifted(const __int128* dots_of_J, unsigned i) const {
        for (unsigned j = 0; j < m; ++j)
            if (dots_of_J[j] != cols[j][i]) return false;
        return true;
    }
};

struct SigmaScan {
    BrunoReport report;
    bool any_candidate = false;
};

/// One pass over the box [0, 2^kmax]^d with an iterative odometer and
/// incremental partial dot products; every point is binned by the smallest
/// power-of-two window containing it, and the per-window minima fold into
/// the sigma values.
SigmaScan sigma_scan(const FrequencyVector& freq, std::span<const std::complex<double>> phi, unsigned kmax,
                     bool exclude_exact_lambda_zeros, SigmaNorm norm) {
    if (kmax > kSigmaKmaxCap) throw PreconditionError("kmax exceeds the enumeration cap");
    const unsigned d = freq.d;
    ExactPairing exact(freq);
    std::vector<std::complex<double>> lam(freq.l_numeric.begin(), freq.l_numeric.end());
    for (unsigned i = 0; i < d && i < phi.size(); ++i) lam[i] += phi[i];

    SigmaScan out;
    out.report.kmax = kmax;
    const unsigned smax = 1u << kmax;

    // any numeric value above this cannot come from an exact zero (the
    // rounding of an exact-zero dot product is far smaller); the exact test
    // runs only below it, so zeros are still never decided by floats
    double lam_scale = 1.0;
    for (const auto& z : lam) lam_scale = std::max(lam_scale, std::abs(z));
    const double nz_floor = lam_scale * (static_cast<double>(d) * static_cast<double>(smax) + 1.0) * 1e-9;
    const double nz_floor_sq = nz_floor * nz_floor;
    __int128 jdots[8] = {};

    // smallest k with 2^k >= n
    std::vector<uint8_t> window_of(smax + 1, 0);
    for (unsigned n = 0; n <= smax; ++n) {
        unsigned k = 0;
        while ((1u << k) < n) ++k;
        window_of[n] = static_cast<uint8_t>(k);
    }
    std::vector<double> window_best(kmax + 1, std::numeric_limits<double>::infinity());
    std::vector<bool> window_found(kmax + 1, false);

    std::vector<unsigned> J(d, 0);
    std::vector<std::complex<double>> pref(d + 1, {0.0, 0.0});  // pref[q] = sum_{i<q} J_i lam_i
    std::vector<unsigned> sumpref(d + 1, 0);                    // prefix 1-norms

    auto take = [&](std::complex<double> dot, unsigned window) {
        bool dots_ready = false;
        for (unsigned i = 0; i < d; ++i) {
            double a = std::norm(dot - lam[i]);
            if (a <= nz_floor_sq) {
                bool skip;
                if (exclude_exact_lambda_zeros) {
                    if (!dots_ready) {
                        exact.dots(J, jdots);
                        dots_ready = true;
                    }
                    skip = exact.is_zero_shifted(jdots, i);
                } else {
                    // shifted case: only the identically-zero divisor J = E_i
                    skip = true;
                    for (unsigned q = 0; q < d; ++q)
                        if (J[q] != (q == i ? 1u : 0u)) skip = false;
                }
                if (skip) continue;
            }
            window_found[window] = true;
            if (a < window_best[window]) window_best[window] = a;
        }
    };

    const bool use_l1 = norm == SigmaNorm::l1;
    const unsigned leaf = d - 1;
    // row-major odometer; the leaf digit runs with incremental dot updates
    for (;;) {
        // leaf sweep at the current prefix J[0..d-2]
        const unsigned pre_sum = sumpref[leaf];
        const unsigned leaf_cap = use_l1 ? (pre_sum > smax ? 0 : smax - pre_sum) : smax;
        unsigned pre_max = 0;
        for (unsigned q = 0; q < leaf; ++q) pre_max = std::max(pre_max, J[q]);
        std::complex<double> dot = pref[leaf];
        for (unsigned val = 0; val <= leaf_cap; ++val) {
            J[leaf] = val;
            if (val > 0 || pre_sum > 0) {
                unsigned reach = use_l1 ? pre_sum + val : std::max(pre_max, val);
                take(dot, window_of[reach]);
            }
            dot += lam[leaf];
        }
        J[leaf] = 0;
        // advance the prefix digits
        if (d == 1) break;
        int p = static_cast<int>(leaf) - 1;
        while (p >= 0) {
            J[p] += 1;
            unsigned new_sum = sumpref[p] + J[p];
            if (J[p] <= smax && (!use_l1 || new_sum <= smax)) break;
            J[p] = 0;
            --p;
        }
        if (p < 0) break;
        for (unsigned q = static_cast<unsigned>(p); q < leaf; ++q) {
            pref[q + 1] = pref[q] + static_cast<double>(J[q]) * lam[q];
            sumpref[q + 1] = sumpref[q] + J[q];
        }
    }

    // fold the window minima into cumulative sigma values
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (unsigned k = 0; k <= kmax; ++k) {
        found = found || window_found[k];
        best = std::min(best, window_best[k]);
        if (!found) {
            out.any_candidate = false;
            out.report.verdict = SigmaVerdict::contains_exact_zero;
            return out;
        }
        out.report.sigma.push_back(std::sqrt(best));
    }
    out.any_candidate = found;
    return out;
}

void finish_report(BrunoReport& rep) {
    if (rep.verdict == SigmaVerdict::contains_exact_zero) return;
    for (double s : rep.sigma)
        if (s <= 0.0) {
            rep.verdict = SigmaVerdict::contains_exact_zero;
            return;
        }
    double sum = 0;
    std::vector<double> t;
    for (size_t k = 0; k < rep.sigma.size(); ++k) {
        double tk = std::abs(std::log(rep.sigma[k])) / std::ldexp(1.0, static_cast<int>(k));
        t.push_back(tk);
        sum += tk;
        rep.partial_sums.push_back(sum);
    }
    // monotone-tail heuristic: the last term must have decayed against the
    // early terms; a flat positive tail is a diverging trend
    double early = 0;
    for (size_t k = 0; k <= (t.size() - 1) / 2; ++k) early = std::max(early, t[k]);
    rep.verdict = (t.back() <= 0.5 * early + 1e-300) ? SigmaVerdict::bruno_up_to_kmax
                                                     : SigmaVerdict::diverging_trend;
}

}  // namespace

BrunoReport sigma_sequence(const FrequencyVector& freq, unsigned kmax, SigmaNorm norm) {
    SigmaScan scan = sigma_scan(freq, {}, kmax, true, norm);
    finish_report(scan.report);
    return scan.report;
}

BrunoReport sigma_sequence_shifted(const FrequencyVector& freq, std::span<const std::complex<double>> phi,
                                   unsigned kmax, SigmaNorm norm) {
    bool all_zero = true;
    for (const auto& c : phi)
        if (c != std::complex<double>(0.0, 0.0)) all_zero = false;
    SigmaScan scan = sigma_scan(freq, phi, kmax, all_zero, norm);
    finish_report(scan.report);
    return scan.report;
}

BrunoSumResult bruno_sum(std::span<const double> a) {
    if (a.empty()) throw PreconditionError("bruno_sum needs a non-empty sequence");
    BrunoSumResult out;
    double sum = 0;
    std::vector<double> t;
    for (size_t k = 0; k < a.size(); ++k) {
        if (!(a[k] > 0.0)) throw PreconditionError("bruno_sum needs strictly positive entries");
        double tk = std::abs(std::log(a[k])) / std::ldexp(1.0, static_cast<int>(k));
        t.push_back(tk);
        sum += tk;
        out.partial_sums.push_back(sum);
    }
    double early = 0;
    for (size_t k = 0; k <= (t.size() - 1) / 2; ++k) early = std::max(early, t[k]);
    out.converging = t.back() <= 0.5 * early + 1e-300;
    return out;
}

bool cantor_membership(const FrequencyVector& freq, std::span<const std::complex<double>> phi, unsigned n,
                       double s, double s0, std::span<const double> a, SigmaNorm norm) {
    if (!(s > 0.0) || !(s <= s0)) throw PreconditionError("need 0 < s <= s0");
    if (a.size() < n + 1) throw PreconditionError("need a_k for every k <= n");
    if (phi.size() != freq.d) throw PreconditionError("phi length mismatch");
    for (const auto& c : phi)
        if (std::abs(c) >= s) return false;  // polydisc condition
    BrunoReport rep = sigma_sequence_shifted(freq, phi, n, norm);
    if (rep.verdict == SigmaVerdict::contains_exact_zero) return false;
    for (unsigned k = 0; k <= n; ++k)
        if (rep.sigma[k] < a[k] * (s0 - s)) return false;
    return true;
}

}  // namespace resonant
