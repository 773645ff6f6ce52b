#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "llpoly/errors.hpp"

namespace llpoly {

using precision_t = mpfr_prec_t;

inline constexpr precision_t min_precision = 53;
inline constexpr precision_t default_precision = 128;

/// Arbitrary-precision real number with an explicit precision in bits.
///
/// Thin RAII owner of an `mpfr_t`. Every arithmetic result is rounded to
/// nearest at the larger of the operand precisions, so a single operation
/// carries relative error at most 2^(1-p).
class BigReal {
public:
    explicit BigReal(precision_t precision = default_precision)
    {
        init(check(precision));
        mpfr_set_zero(v_, 1);
    }

    BigReal(double value, precision_t precision)
    {
        init(check(precision));
        mpfr_set_d(v_, value, MPFR_RNDN);
    }

    BigReal(long value, precision_t precision)
    {
        init(check(precision));
        mpfr_set_si(v_, value, MPFR_RNDN);
    }

    BigReal(int value, precision_t precision) : BigReal(static_cast<long>(value), precision) {}

    BigReal(const mpz_class& value, precision_t precision)
    {
        init(check(precision));
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }

    BigReal(const mpq_class& value, precision_t precision)
    {
        init(check(precision));
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }

    /// Parses a decimal literal ("0.1", "-2.5e3"); throws domain_error on junk.
    static BigReal parse(std::string_view text, precision_t precision)
    {
        BigReal r(precision);
        const std::string s(text);
        char* end = nullptr;
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
        if (s.empty() || end == nullptr || *end != '\0')
            throw domain_error("not a decimal number: '" + s + "'");
        return r;
    }

    static BigReal pi(precision_t precision)
    {
        BigReal r(precision);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    BigReal(const BigReal& other)
    {
        init(other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& other) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    BigReal& operator=(const BigReal& other)
    {
        if (this != &other) {
            mpfr_set_prec(v_, other.precision());
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& other) noexcept
    {
        mpfr_swap(v_, other.v_);
        return *this;
    }

    ~BigReal() { mpfr_clear(v_); }

    precision_t precision() const noexcept { return mpfr_get_prec(v_); }

    /// Copy rounded (or widened) to a new precision.
    BigReal with_precision(precision_t precision) const
    {
        BigReal r(precision);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const
    {
        if (mpfr_zero_p(v_)) return -(1L << 40);
        return static_cast<long>(mpfr_get_exp(v_));
    }

    /// Significant decimal digits implied by the precision.
    int decimal_digits() const
    {
        return static_cast<int>(static_cast<double>(precision()) * 0.30102999566398120) + 1;
    }

    /// Scientific notation with `digits` significant digits (default: from precision).
    std::string to_string(int digits = 0) const
    {
        if (digits <= 0) digits = decimal_digits();
        if (!mpfr_number_p(v_)) {
            if (mpfr_nan_p(v_)) return "nan";
            return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
        }
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    BigReal operator-() const
    {
        BigReal r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigReal& operator+=(const BigReal& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    BigReal& operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigReal& operator-=(long k) { mpfr_sub_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigReal& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigReal& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

    BigReal& operator*=(const mpz_class& k) { mpfr_mul_z(v_, v_, k.get_mpz_t(), MPFR_RNDN); return *this; }
    BigReal& operator+=(const mpz_class& k) { mpfr_add_z(v_, v_, k.get_mpz_t(), MPFR_RNDN); return *this; }
    BigReal& operator*=(const mpq_class& k) { mpfr_mul_q(v_, v_, k.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator+=(const mpq_class& k) { mpfr_add_q(v_, v_, k.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator-=(const mpq_class& k) { mpfr_sub_q(v_, v_, k.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator/=(const mpq_class& k) { mpfr_div_q(v_, v_, k.get_mpq_t(), MPFR_RNDN); return *this; }

    /// Multiplies by 2^e exactly.
    BigReal& scale2(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); return *this; }

    friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
    friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
    friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
    friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
    friend BigReal operator+(BigReal a, long k) { return a += k; }
    friend BigReal operator-(BigReal a, long k) { return a -= k; }
    friend BigReal operator*(BigReal a, long k) { return a *= k; }
    friend BigReal operator/(BigReal a, long k) { return a /= k; }
    friend BigReal operator-(long k, const BigReal& b)
    {
        BigReal r(b.precision());
        mpfr_si_sub(r.v_, k, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long k, const BigReal& b)
    {
        BigReal r(b.precision());
        mpfr_si_div(r.v_, k, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator+(long k, BigReal b) { return b += k; }
    friend BigReal operator*(long k, BigReal b) { return b *= k; }
    friend BigReal operator*(BigReal a, const mpq_class& k) { return a *= k; }
    friend BigReal operator*(const mpq_class& k, BigReal a) { return a *= k; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b)
    {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }
    friend bool operator==(const BigReal& a, long k) { return mpfr_cmp_si(a.v_, k) == 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, long k)
    {
        if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp_si(a.v_, k);
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }

private:
    static precision_t check(precision_t p)
    {
        if (p < min_precision || p > MPFR_PREC_MAX)
            throw precondition_error("precision must be at least " + std::to_string(min_precision) +
                                     " bits, got " + std::to_string(p));
        return p;
    }

    void init(precision_t p) { mpfr_init2(v_, p); }

    void widen(const BigReal& o)
    {
        if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    }

    mpfr_t v_;
};

#define LLPOLY_BIGREAL_UNARY(name, fn)                  \
    inline BigReal name(const BigReal& x)               \
    {                                                   \
        BigReal r(x.precision());                       \
        fn(r.get(), x.get(), MPFR_RNDN);                \
        return r;                                       \
    }

LLPOLY_BIGREAL_UNARY(sqrt, mpfr_sqrt)
LLPOLY_BIGREAL_UNARY(abs, mpfr_abs)
LLPOLY_BIGREAL_UNARY(cos, mpfr_cos)
LLPOLY_BIGREAL_UNARY(sin, mpfr_sin)
LLPOLY_BIGREAL_UNARY(acos, mpfr_acos)
LLPOLY_BIGREAL_UNARY(atan, mpfr_atan)
LLPOLY_BIGREAL_UNARY(log2, mpfr_log2)

#undef LLPOLY_BIGREAL_UNARY

inline BigReal square(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_sqr(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline BigReal ldexp(BigReal x, long e) { return x.scale2(e); }

/// 2^e at the given precision (exact).
inline BigReal pow2(long e, precision_t precision)
{
    BigReal r(1L, precision);
    return r.scale2(e);
}

/// Largest b with |approx - exact| < 2^-b (absolute agreement in bits).
inline long agreement_bits(const BigReal& approx, const BigReal& exact)
{
    const BigReal diff = abs(approx - exact);
    if (diff.is_zero()) return 1L << 30;
    return -diff.exponent();
}

} // namespace llpoly
