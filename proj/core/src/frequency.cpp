#include "resonant/frequency.hpp"

#include <cmath>

#include "resonant/errors.hpp"

namespace resonant {

FrequencyVector FrequencyVector::make(std::vector<std::vector<Rational>> rows, std::vector<Cplx> omega_values,
                                      std::optional<std::vector<std::complex<double>>> numeric_shadow) {
    FrequencyVector f;
    f.d = static_cast<unsigned>(rows.size());
    if (f.d == 0) throw ParseError("frequency vector needs at least one eigenvalue");
    f.m = static_cast<unsigned>(rows.front().size());
    if (f.m == 0) throw ParseError("transcendence basis must be non-empty");
    for (const auto& r : rows)
        if (r.size() != f.m) throw ParseError("ragged exact frequency matrix");
    if (omega_values.size() != f.m) throw ParseError("omega value count does not match basis size");
    f.l_exact = std::move(rows);
    f.omega = std::move(omega_values);

    f.lambda.reserve(f.d);
    for (unsigned i = 0; i < f.d; ++i) {
        Cplx v;
        for (unsigned j = 0; j < f.m; ++j) {
            if (f.l_exact[i][j] == 0) continue;
            BigFloat q = BigFloat(numerator(f.l_exact[i][j]).str()) / BigFloat(denominator(f.l_exact[i][j]).str());
            v += f.omega[j] * q;
        }
        f.lambda.push_back(v);
    }

    std::vector<std::complex<double>> derived(f.d);
    for (unsigned i = 0; i < f.d; ++i)
        derived[i] = {static_cast<double>(f.lambda[i].re), static_cast<double>(f.lambda[i].im)};
    if (numeric_shadow) {
        if (numeric_shadow->size() != f.d) throw ParseError("numeric lambda count mismatch");
        for (unsigned i = 0; i < f.d; ++i) {
            double scale = std::max(1.0, std::abs(derived[i]));
            if (std::abs((*numeric_shadow)[i] - derived[i]) > 1e-12 * scale)
                throw ParseError("numeric lambda shadow disagrees with the exact rows beyond 1e-12");
        }
        f.l_numeric = std::move(*numeric_shadow);
    } else {
        f.l_numeric = std::move(derived);
    }
    return f;
}

FrequencyVector FrequencyVector::from_numeric(std::vector<std::complex<double>> values) {
    const unsigned d = static_cast<unsigned>(values.size());
    std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Cplx> omega(d);
    for (unsigned i = 0; i < d; ++i) {
        rows[i][i] = 1;
        omega[i] = Cplx(BigFloat(values[i].real()), BigFloat(values[i].imag()));
    }
    return make(std::move(rows), std::move(omega), std::move(values));
}

std::vector<Rational> FrequencyVector::pair_exact(std::span<const long long> K) const {
    if (K.size() != d) throw PreconditionError("exponent length mismatch in pairing");
    std::vector<Rational> out(m, Rational(0));
    for (unsigned i = 0; i < d; ++i) {
        if (K[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) out[j] += Rational(K[i]) * l_exact[i][j];
    }
    return out;
}

bool FrequencyVector::pair_is_zero(std::span<const long long> K) const {
    auto v = pair_exact(K);
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

bool FrequencyVector::invariant_exponent(std::span<const unsigned> K) const {
    std::vector<long long> k(K.begin(), K.end());
    return pair_is_zero(k);
}

bool FrequencyVector::resonant_field_exponent(std::span<const unsigned> K, unsigned i) const {
    if (i >= d) throw PreconditionError("direction index out of range");
    std::vector<long long> k(K.begin(), K.end());
    k[i] -= 1;
    return pair_is_zero(k);
}

bool FrequencyVector::lambda_is_zero(unsigned i) const {
    for (unsigned j = 0; j < m; ++j)
        if (l_exact[i][j] != 0) return false;
    return true;
}

Cplx FrequencyVector::pair_numeric(std::span<const unsigned> K) const {
    Cplx v;
    for (unsigned i = 0; i < d && i < K.size(); ++i) {
        if (K[i] == 0) continue;
        v += lambda[i] * BigFloat(K[i]);
    }
    return v;
}

bool resonant_monomial_test(const FrequencyVector& freq, std::span<const unsigned> K,
                            std::optional<unsigned> direction) {
    if (direction) return freq.resonant_field_exponent(K, *direction);
    return freq.invariant_exponent(K);
}

}  // namespace resonant
