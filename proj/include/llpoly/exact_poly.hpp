#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "llpoly/bigreal.hpp"

namespace llpoly {

namespace detail {

// Kronecker substitution pays off once both operands have this many terms.
inline constexpr std::size_t kronecker_threshold = 24;

// Packs signed coefficients c[lo..hi) as sum c_i 2^((i-lo)*slot).
inline mpz_class kronecker_pack(std::span<const mpz_class> c, std::size_t slot)
{
    if (c.size() == 1) return c[0];
    const std::size_t mid = c.size() / 2;
    mpz_class high = kronecker_pack(c.subspan(mid), slot);
    mpz_class low = kronecker_pack(c.first(mid), slot);
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), mid * slot);
    return high + low;
}

// Inverse of kronecker_pack for digits strictly inside (-2^(slot-1), 2^(slot-1)).
// The low half is recovered as the balanced residue mod 2^(mid*slot).
inline void kronecker_unpack(mpz_class value, std::size_t slot, std::span<mpz_class> out)
{
    if (out.size() == 1) {
        out[0] = std::move(value);
        return;
    }
    const std::size_t mid = out.size() / 2;
    const mp_bitcnt_t bits = mid * slot;
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), bits);
    if (mpz_tstbit(low.get_mpz_t(), bits - 1)) {
        mpz_class wrap;
        mpz_setbit(wrap.get_mpz_t(), bits);
        low -= wrap;
    }
    value -= low;
    mpz_tdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), bits);
    kronecker_unpack(std::move(low), slot, out.first(mid));
    kronecker_unpack(std::move(value), slot, out.subspan(mid));
}

inline std::size_t max_bits(std::span<const mpz_class> c)
{
    std::size_t m = 0;
    for (const auto& v : c)
        if (sgn(v) != 0) m = std::max(m, mpz_sizeinbase(v.get_mpz_t(), 2));
    return m;
}

inline std::size_t bit_length(std::size_t n)
{
    std::size_t b = 0;
    while (n) { ++b; n >>= 1; }
    return b;
}

inline std::vector<mpz_class> schoolbook_mul(std::span<const mpz_class> a, std::span<const mpz_class> b)
{
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

inline std::vector<mpz_class> integer_poly_mul(std::span<const mpz_class> a, std::span<const mpz_class> b)
{
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kronecker_threshold) return schoolbook_mul(a, b);

    // Each product coefficient is a sum of at most min(|a|,|b|) terms.
    const std::size_t slot = max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 2;
    const mpz_class pa = kronecker_pack(a, slot);
    const mpz_class pb = (a.data() == b.data() && a.size() == b.size()) ? pa : kronecker_pack(b, slot);
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    kronecker_unpack(pa * pb, slot, out);
    return out;
}

} // namespace detail

/// Dense univariate polynomial with exact rational coefficients.
///
/// Stored as integer numerators over one positive common denominator, kept
/// in lowest terms with no trailing zero numerators, so structural equality
/// is mathematical equality. The zero polynomial has no coefficients and no
/// degree.
class ExactPoly {
public:
    ExactPoly() = default;

    explicit ExactPoly(const std::vector<mpq_class>& coeffs)
    {
        mpz_class den = 1;
        for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        num_.reserve(coeffs.size());
        for (const auto& c : coeffs) num_.push_back(c.get_num() * (den / c.get_den()));
        den_ = std::move(den);
        normalize();
    }

    static ExactPoly from_integers(std::vector<mpz_class> coeffs, mpz_class denominator = 1)
    {
        ExactPoly p;
        p.num_ = std::move(coeffs);
        p.den_ = std::move(denominator);
        if (sgn(p.den_) == 0) throw domain_error("zero denominator");
        if (sgn(p.den_) < 0) {
            p.den_ = -p.den_;
            for (auto& c : p.num_) c = -c;
        }
        p.normalize();
        return p;
    }

    static ExactPoly constant(const mpq_class& c) { return ExactPoly(std::vector<mpq_class>{c}); }

    static ExactPoly monomial(const mpq_class& c, std::size_t power)
    {
        std::vector<mpq_class> v(power + 1);
        v[power] = c;
        return ExactPoly(v);
    }

    static ExactPoly identity() { return monomial(1, 1); }

    std::optional<std::size_t> degree() const
    {
        if (num_.empty()) return std::nullopt;
        return num_.size() - 1;
    }

    bool is_zero() const noexcept { return num_.empty(); }
    bool is_integral() const { return den_ == 1; }
    std::size_t size() const noexcept { return num_.size(); }

    /// Coefficient of x^i (zero past the degree).
    mpq_class coeff(std::size_t i) const
    {
        if (i >= num_.size()) return 0;
        mpq_class q(num_[i], den_);
        q.canonicalize();
        return q;
    }

    std::vector<mpq_class> coefficients() const
    {
        std::vector<mpq_class> out;
        out.reserve(num_.size());
        for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
        return out;
    }

    std::span<const mpz_class> numerators() const noexcept { return num_; }
    const mpz_class& denominator() const noexcept { return den_; }

    mpq_class leading_coefficient() const { return num_.empty() ? mpq_class(0) : coeff(num_.size() - 1); }

    bool is_even() const
    {
        for (std::size_t i = 1; i < num_.size(); i += 2)
            if (sgn(num_[i]) != 0) return false;
        return true;
    }

    friend bool operator==(const ExactPoly& a, const ExactPoly& b)
    {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

    /// Index of the first coefficient where the two polynomials differ.
    friend std::optional<std::size_t> first_difference(const ExactPoly& a, const ExactPoly& b)
    {
        const std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.coeff(i) != b.coeff(i)) return i;
        return std::nullopt;
    }

    ExactPoly operator-() const
    {
        ExactPoly r = *this;
        for (auto& c : r.num_) c = -c;
        return r;
    }

    friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) { return combine(a, b, 1); }
    friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) { return combine(a, b, -1); }

    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b)
    {
        return from_integers(detail::integer_poly_mul(a.num_, b.num_), a.den_ * b.den_);
    }

    friend ExactPoly operator*(const mpq_class& k, const ExactPoly& p)
    {
        if (sgn(k) == 0) return {};
        std::vector<mpz_class> num(p.num_.size());
        for (std::size_t i = 0; i < num.size(); ++i) num[i] = p.num_[i] * k.get_num();
        return from_integers(std::move(num), p.den_ * k.get_den());
    }

    friend ExactPoly operator*(const ExactPoly& p, const mpq_class& k) { return k * p; }

    ExactPoly& operator+=(const ExactPoly& o) { return *this = *this + o; }
    ExactPoly& operator-=(const ExactPoly& o) { return *this = *this - o; }
    ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

    ExactPoly squared() const { return *this * *this; }

    /// Formal derivative.
    ExactPoly derivative() const
    {
        if (num_.size() <= 1) return {};
        std::vector<mpz_class> d(num_.size() - 1);
        for (std::size_t i = 1; i < num_.size(); ++i) d[i - 1] = num_[i] * static_cast<unsigned long>(i);
        return from_integers(std::move(d), den_);
    }

    /// p(inner(x)), expanded.
    ExactPoly compose(const ExactPoly& inner) const
    {
        ExactPoly acc;
        for (std::size_t i = num_.size(); i-- > 0;) {
            acc = acc * inner;
            acc += constant(coeff(i));
        }
        return acc;
    }

    /// Exact Horner evaluation.
    mpq_class operator()(const mpq_class& x) const
    {
        mpz_class acc_num = 0;
        mpz_class x_pow_den = 1;
        // acc = sum num_i x^i with x = p/q: evaluate sum num_i p^i q^(d-i), divide by q^d.
        const mpz_class& p = x.get_num();
        const mpz_class& q = x.get_den();
        for (std::size_t i = num_.size(); i-- > 0;) {
            acc_num = acc_num * p + num_[i] * x_pow_den;
            x_pow_den *= q;
        }
        if (num_.empty()) return 0;
        // x_pow_den overshot by one factor of q.
        mpq_class r(acc_num * q, x_pow_den * den_);
        r.canonicalize();
        return r;
    }

    /// Numeric Horner evaluation at x, returned at x's precision.
    ///
    /// Working precision is raised by the bit size of sum |c_i| |x|^i so that
    /// cancellation among large coefficients does not eat the result.
    BigReal operator()(const BigReal& x) const
    {
        const precision_t out_prec = x.precision();
        if (num_.empty()) return BigReal(out_prec);

        const double ax = std::max(1.0, std::fabs(x.to_double()));
        const double log2_ax = std::log2(ax);
        double log2_bound = 0.0;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (sgn(num_[i]) == 0) continue;
            const double term = static_cast<double>(mpz_sizeinbase(num_[i].get_mpz_t(), 2)) +
                                static_cast<double>(i) * log2_ax;
            log2_bound = std::max(log2_bound, term);
        }
        log2_bound += std::log2(static_cast<double>(num_.size()));
        const precision_t work = out_prec + static_cast<precision_t>(std::ceil(log2_bound)) + 32;

        const BigReal xw = x.with_precision(work);
        BigReal acc(work);
        for (std::size_t i = num_.size(); i-- > 0;) {
            acc *= xw;
            acc += num_[i];
        }
        BigReal den(den_, work);
        acc /= den;
        return acc.with_precision(out_prec);
    }

    /// Human-readable form, highest power first: "x^4 - 4*x^2 + 2".
    std::string to_string(const std::string& var = "x") const
    {
        if (num_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = num_.size(); i-- > 0;) {
            mpq_class c = coeff(i);
            if (sgn(c) == 0) continue;
            if (first) {
                if (sgn(c) < 0) os << "-";
            } else {
                os << (sgn(c) < 0 ? " - " : " + ");
            }
            c = abs(c);
            const bool unit = (c == 1);
            if (!unit || i == 0) os << c.get_str();
            if (i > 0) {
                if (!unit) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    static ExactPoly combine(const ExactPoly& a, const ExactPoly& b, int sign)
    {
        const mpz_class den = a.den_ * b.den_;
        std::vector<mpz_class> num(std::max(a.num_.size(), b.num_.size()));
        for (std::size_t i = 0; i < a.num_.size(); ++i) num[i] = a.num_[i] * b.den_;
        for (std::size_t i = 0; i < b.num_.size(); ++i) {
            if (sign > 0) num[i] += b.num_[i] * a.den_;
            else num[i] -= b.num_[i] * a.den_;
        }
        return from_integers(std::move(num), den);
    }

    void normalize()
    {
        while (!num_.empty() && sgn(num_.back()) == 0) num_.pop_back();
        if (num_.empty()) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        mpz_class g = den_;
        for (const auto& c : num_) {
            if (g == 1) break;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        if (g != 1) {
            for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
};

} // namespace llpoly
