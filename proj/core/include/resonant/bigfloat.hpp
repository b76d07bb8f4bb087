#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace resonant {

namespace mp = boost::multiprecision;

/// Arbitrary-precision binary float. Working precision is process-wide and
/// set once per run through set_precision_bits().
using BigFloat = mp::number<mp::mpfr_float_backend<0, mp::allocate_dynamic>, mp::et_off>;

/// Sets the working mantissa precision (bits) and the derived thresholds.
/// Default is 256 bits.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

/// Coefficients with |re|,|im| at or below this are treated as zero and
/// dropped from series. Value: 2^(-bits/2).
const BigFloat& coeff_epsilon();

/// Homological divisions with |lambda| below this abort with BlowupError.
/// Value: 2^(-bits/4).
const BigFloat& divisor_floor();

/// Coefficients above this trip the blow-up detector. Value: 2^(+bits/4).
const BigFloat& overflow_guard();

/// Parses a decimal ("1.5", "-3e-2") or hex-float ("0x1.8p+1") literal at
/// the working precision.
BigFloat bf_from_string(const std::string& text);

/// Exact round-trip representation (hex-float).
std::string bf_to_hex(const BigFloat& v);

/// Human-readable decimal with the given significant digits.
std::string bf_to_decimal(const BigFloat& v, unsigned digits = 24);

/// Complex coefficient: a pair of BigFloats.
struct Cplx {
    BigFloat re, im;

    Cplx() : re(0), im(0) {}
    Cplx(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(double r) : re(r), im(0) {}
    explicit Cplx(const BigFloat& r) : re(r), im(0) {}

    static Cplx zero() { return Cplx(); }
    static Cplx one() { return Cplx(1.0); }

    bool is_zero() const;                 // against coeff_epsilon()
    bool is_exact_zero() const { return re.is_zero() && im.is_zero(); }
    BigFloat sup_abs() const;             // max(|re|, |im|)

    Cplx operator-() const { return Cplx(-re, -im); }
    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator-=(const Cplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return Cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    Cplx& operator*=(const Cplx& o) { return *this = *this * o; }
    Cplx& operator*=(const BigFloat& s) {
        re *= s;
        im *= s;
        return *this;
    }
    friend Cplx operator*(Cplx a, const BigFloat& s) { return a *= s; }

    /// Complex division; caller guarantees a nonzero denominator.
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        BigFloat n = b.re * b.re + b.im * b.im;
        return Cplx((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }

    Cplx conj() const { return Cplx(re, -im); }
    /// |z| (euclidean modulus).
    BigFloat abs() const;
};

}  // namespace resonant
