#pragma once

// Exact coefficient arithmetic.  Four coefficient rings appear throughout:
// the integers Z, the rationals Q, prime fields F_p, and truncated Witt
// rings W_N = Z/p^N regarded as the precision-N shadow of the p-adics.
// Everything is arbitrary precision; there is no floating point anywhere.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace exalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class RingKind { Integer, Rational, PrimeField, TruncWitt };

/// Identifies the coefficient ring a value or matrix lives over.
struct RingSpec {
    RingKind kind = RingKind::Integer;
    Int p = 0;      // prime, for PrimeField / TruncWitt
    int n = 1;      // precision N, for TruncWitt

    static RingSpec integers() { return {RingKind::Integer, 0, 1}; }
    static RingSpec rationals() { return {RingKind::Rational, 0, 1}; }
    static RingSpec prime_field(const Int& p) { return {RingKind::PrimeField, p, 1}; }
    static RingSpec trunc_witt(const Int& p, int n) { return {RingKind::TruncWitt, p, n}; }

    bool is_field() const { return kind == RingKind::Rational || kind == RingKind::PrimeField; }

    /// p^N for TruncWitt, p for PrimeField, 0 otherwise.
    Int modulus() const {
        if (kind == RingKind::PrimeField) return p;
        if (kind == RingKind::TruncWitt) {
            Int m = 1;
            for (int i = 0; i < n; ++i) m *= p;
            return m;
        }
        return 0;
    }

    bool operator==(const RingSpec& o) const {
        if (kind != o.kind) return false;
        if (kind == RingKind::PrimeField) return p == o.p;
        if (kind == RingKind::TruncWitt) return p == o.p && n == o.n;
        return true;
    }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

    std::string tag() const {
        switch (kind) {
            case RingKind::Integer: return "Z";
            case RingKind::Rational: return "Q";
            case RingKind::PrimeField: return "Fp";
            case RingKind::TruncWitt: return "Wn";
        }
        return "?";
    }
};

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline Int inv_mod(const Int& a, const Int& m) {
    Int x, y;
    Int g = ext_gcd(mod_reduce(a, m), m, x, y);
    if (g != 1) throw std::domain_error("inv_mod: element not invertible");
    return mod_reduce(x, m);
}

inline Int pow_mod(Int base, Int e, const Int& m) {
    Int r = 1;
    base = mod_reduce(base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

/// p-adic valuation of a (mod p^N inputs: returns N if a == 0 mod p^N).
inline int p_valuation(Int a, const Int& p, int cap) {
    if (a == 0) return cap;
    int v = 0;
    while (v < cap && a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

/// Exact scalar in one of the four coefficient rings.  Rationals are kept in
/// lowest terms with positive denominator; F_p values in [0,p); W_N values
/// in [0,p^N).  Arithmetic is closed within a variant; mixing variants throws.
class Scalar {
  public:
    Scalar() = default;
    Scalar(RingSpec ring, Int num, Int den = 1) : ring_(ring), num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static Scalar zero(const RingSpec& r) { return Scalar(r, 0); }
    static Scalar one(const RingSpec& r) { return Scalar(r, 1); }

    const RingSpec& ring() const { return ring_; }
    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rat as_rational() const { return Rat(num_, den_); }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (ring_.kind == RingKind::Rational) return Scalar(ring_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        return Scalar(ring_, num_ + o.num_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        if (ring_.kind == RingKind::Rational) return Scalar(ring_, num_ * o.den_ - o.num_ * den_, den_ * o.den_);
        return Scalar(ring_, num_ - o.num_);
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (ring_.kind == RingKind::Rational) return Scalar(ring_, num_ * o.num_, den_ * o.den_);
        return Scalar(ring_, num_ * o.num_);
    }
    Scalar operator-() const { return Scalar(ring_, -num_, den_); }

    bool operator==(const Scalar& o) const { return ring_ == o.ring_ && num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    bool is_unit() const {
        switch (ring_.kind) {
            case RingKind::Integer: return num_ == 1 || num_ == -1;
            case RingKind::Rational: return num_ != 0;
            case RingKind::PrimeField: return num_ != 0;
            case RingKind::TruncWitt: return num_ % ring_.p != 0;
        }
        return false;
    }

    Scalar inverse() const {
        switch (ring_.kind) {
            case RingKind::Integer:
                if (!is_unit()) throw std::domain_error("Scalar: non-unit integer has no inverse");
                return *this;
            case RingKind::Rational:
                if (num_ == 0) throw std::domain_error("Scalar: division by zero");
                return Scalar(ring_, den_, num_);
            case RingKind::PrimeField:
            case RingKind::TruncWitt:
                return Scalar(ring_, inv_mod(num_, ring_.modulus()));
        }
        throw std::logic_error("Scalar: bad ring kind");
    }

    std::string str() const {
        if (ring_.kind == RingKind::Rational && den_ != 1) return num_.str() + "/" + den_.str();
        return num_.str();
    }

  private:
    void check(const Scalar& o) const {
        if (ring_ != o.ring_) throw std::invalid_argument("Scalar: cross-variant arithmetic");
    }
    void normalize() {
        switch (ring_.kind) {
            case RingKind::Integer:
                if (den_ != 1) throw std::invalid_argument("Scalar: integer with denominator");
                break;
            case RingKind::Rational: {
                if (den_ == 0) throw std::domain_error("Scalar: zero denominator");
                if (den_ < 0) { num_ = -num_; den_ = -den_; }
                Int g = gcd(num_, den_);
                if (g > 1) { num_ /= g; den_ /= g; }
                if (num_ == 0) den_ = 1;
                break;
            }
            case RingKind::PrimeField:
            case RingKind::TruncWitt:
                if (den_ != 1) throw std::invalid_argument("Scalar: modular value with denominator");
                num_ = mod_reduce(num_, ring_.modulus());
                break;
        }
    }

    RingSpec ring_ = RingSpec::integers();
    Int num_ = 0;
    Int den_ = 1;
};

/// Teichmuller lift: the unique t in Z/p^N with t^p = t and t = a mod p,
/// found by iterating Frobenius to its fixed point.
inline Int teichmuller(const Int& a, const Int& p, int precision) {
    if (precision < 1) throw std::invalid_argument("teichmuller: precision must be >= 1");
    RingSpec w = RingSpec::trunc_witt(p, precision);
    Int m = w.modulus();
    Int t = mod_reduce(a, m);
    for (int i = 0; i < precision + 1; ++i) {
        Int next = pow_mod(t, p, m);
        if (next == t) break;
        t = next;
    }
    return t;
}

/// Teichmuller digit expansion: x = sum_i omega(c_i) p^i mod p^N with c_i in F_p.
/// The expansion is unique; recompose with witt_from_digits to round-trip.
inline std::vector<Int> teichmuller_digits(const Int& x, const Int& p, int precision) {
    Int m = RingSpec::trunc_witt(p, precision).modulus();
    Int r = mod_reduce(x, m);
    std::vector<Int> digits;
    for (int i = 0; i < precision; ++i) {
        Int c = r % p;
        digits.push_back(c);
        r = (r - teichmuller(c, p, precision)) % m;
        if (r < 0) r += m;
        r /= p;
        m /= p;
    }
    return digits;
}

inline Int witt_from_digits(const std::vector<Int>& digits, const Int& p, int precision) {
    Int m = RingSpec::trunc_witt(p, precision).modulus();
    Int acc = 0, pk = 1;
    for (size_t i = 0; i < digits.size() && static_cast<int>(i) < precision; ++i) {
        acc = (acc + teichmuller(digits[i], p, precision) * pk) % m;
        pk *= p;
    }
    return acc;
}

}  // namespace exalg
