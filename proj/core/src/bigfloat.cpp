#include "resonant/bigfloat.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdlib>

#include "resonant/errors.hpp"

namespace resonant {

namespace {

struct PrecisionState {
    unsigned bits = 0;
    BigFloat eps_coeff;
    BigFloat eps_div;
    BigFloat guard;
};

PrecisionState& state() {
    static PrecisionState s;
    return s;
}

void ensure_initialized() {
    if (state().bits == 0) set_precision_bits(256);
}

}  // namespace

void set_precision_bits(unsigned bits) {
    if (bits < 24 || bits > 16384) throw PreconditionError("precision bits out of range [24, 16384]");
    // boost's default_precision is decimal digits; round up so the mantissa
    // carries at least `bits` bits.
    unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 2;
    BigFloat::default_precision(digits10);
    auto& s = state();
    s.bits = bits;
    s.eps_coeff = ldexp(BigFloat(1), -static_cast<int>(bits / 2));
    s.eps_div = ldexp(BigFloat(1), -static_cast<int>(bits / 4));
    s.guard = ldexp(BigFloat(1), static_cast<int>(bits / 4));
}

unsigned precision_bits() {
    ensure_initialized();
    return state().bits;
}

const BigFloat& coeff_epsilon() {
    ensure_initialized();
    return state().eps_coeff;
}

const BigFloat& divisor_floor() {
    ensure_initialized();
    return state().eps_div;
}

const BigFloat& overflow_guard() {
    ensure_initialized();
    return state().guard;
}

BigFloat bf_from_string(const std::string& text) {
    ensure_initialized();
    BigFloat v;
    // base 0 auto-detects 0x hex-float literals
    if (mpfr_set_str(v.backend().data(), text.c_str(), 0, MPFR_RNDN) != 0)
        throw ParseError("cannot parse numeric literal: '" + text + "'");
    return v;
}

std::string bf_to_hex(const BigFloat& v) {
    char* out = nullptr;
    mpfr_asprintf(&out, "%Ra", v.backend().data());
    std::string result(out);
    mpfr_free_str(out);
    return result;
}

std::string bf_to_decimal(const BigFloat& v, unsigned digits) {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Rg", static_cast<int>(digits), v.backend().data());
    std::string result(out);
    mpfr_free_str(out);
    return result;
}

bool Cplx::is_zero() const {
    const BigFloat& eps = coeff_epsilon();
    return mp::abs(re) <= eps && mp::abs(im) <= eps;
}

BigFloat Cplx::sup_abs() const {
    BigFloat a = mp::abs(re), b = mp::abs(im);
    return a > b ? a : b;
}

BigFloat Cplx::abs() const { return mp::sqrt(re * re + im * im); }

}  // namespace resonant
