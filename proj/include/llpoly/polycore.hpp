#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "llpoly/bigreal.hpp"
#include "llpoly/errors.hpp"
#include "llpoly/exact_poly.hpp"

namespace llpoly {

/// Default cap on n for exact expansion (degree 2^14 = 16384).
inline constexpr unsigned default_max_n = 14;

enum class Family { lucas, scaled };

/// Selects between L_n (L_0 = x, L_n = L_{n-1}^2 - 2) and the scaled
/// family M^a_n (M_0 = x, M_n = 2a M_{n-1}^2 - 1/a). a = 1/2 reproduces L.
class MapParams {
public:
    static MapParams lucas() { return MapParams(Family::lucas, mpq_class(1, 2)); }

    static MapParams scaled(mpq_class a)
    {
        a.canonicalize();
        if (sgn(a) <= 0) throw domain_error("scale parameter a must be positive, got " + a.get_str());
        return MapParams(Family::scaled, std::move(a));
    }

    Family family() const noexcept { return family_; }
    bool is_lucas() const noexcept { return family_ == Family::lucas; }

    /// The scale a; 1/2 for the L family.
    const mpq_class& a() const noexcept { return a_; }

    /// Multiplier of the squared term (2a; 1 for L).
    mpq_class square_coeff() const { return 2 * a_; }

    /// Constant subtracted each step (1/a; 2 for L).
    mpq_class shift() const { return 1 / a_; }

    std::string to_string() const { return is_lucas() ? "L" : "M(a=" + a_.get_str() + ")"; }

    friend bool operator==(const MapParams& x, const MapParams& y)
    {
        return x.family_ == y.family_ && x.a_ == y.a_;
    }

private:
    MapParams(Family f, mpq_class a) : family_(f), a_(std::move(a)) {}

    Family family_;
    mpq_class a_;
};

namespace detail {

inline void check_cap(unsigned n, unsigned max_n, const char* what)
{
    if (n > max_n)
        throw size_limit_error(std::string(what) + ": n = " + std::to_string(n) + " exceeds the degree cap", max_n);
}

} // namespace detail

/// Exact expansion of L_n or M^a_n.
inline ExactPoly build_poly(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    detail::check_cap(n, max_n, "build_poly");
    ExactPoly p = ExactPoly::identity();
    const mpq_class mul = params.square_coeff();
    const ExactPoly shift = ExactPoly::constant(params.shift());
    for (unsigned i = 0; i < n; ++i) p = mul * p.squared() - shift;
    return p;
}

/// Exact evaluation of p at a rational point.
inline mpq_class eval_poly(const ExactPoly& p, const mpq_class& x) { return p(x); }

/// Guard bits carried by eval_map for n iterations.
inline precision_t map_guard_bits(unsigned n) { return 8 * static_cast<precision_t>(n) + 32; }

/// n iterations of the map starting at x, without expansion.
///
/// Runs at x.precision() + map_guard_bits(n) and rounds back to the input
/// precision. No cap on n.
inline BigReal eval_map(const MapParams& params, unsigned n, const BigReal& x)
{
    const precision_t out = x.precision();
    const precision_t work = out + map_guard_bits(n);
    BigReal v = x.with_precision(work);
    if (params.is_lucas()) {
        for (unsigned i = 0; i < n; ++i) {
            v = square(v);
            v -= 2L;
        }
    } else {
        const BigReal mul(params.square_coeff(), work);
        const BigReal shift(params.shift(), work);
        for (unsigned i = 0; i < n; ++i) {
            v = square(v);
            v *= mul;
            v -= shift;
        }
    }
    return v.with_precision(out);
}

inline ExactPoly derivative(const ExactPoly& p) { return p.derivative(); }

/// The closed product form of the derivative:
/// L_n' = 2^n x prod_{i<n} L_i, and M_n' = (4a)^n x prod_{i<n} M_i.
inline ExactPoly derivative_product(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    if (n < 2) throw domain_error("derivative_product requires n >= 2, got " + std::to_string(n));
    detail::check_cap(n, max_n, "derivative_product");

    const mpq_class mul = params.square_coeff();
    const ExactPoly shift = ExactPoly::constant(params.shift());
    ExactPoly level = ExactPoly::identity();
    ExactPoly product = ExactPoly::identity();
    for (unsigned i = 1; i < n; ++i) {
        level = mul * level.squared() - shift;
        product *= level;
    }
    mpq_class factor = 1;
    const mpq_class base = 2 * params.square_coeff();
    for (unsigned i = 0; i < n; ++i) factor *= base;
    return factor * product;
}

/// s_1 = 4, s_{k+1} = s_k^2 - 2 (s_k = L_k(sqrt 6)).
inline std::vector<mpz_class> ll_integer_sequence(unsigned count)
{
    if (count == 0) throw domain_error("ll_integer_sequence requires count >= 1");
    std::vector<mpz_class> out;
    out.reserve(count);
    mpz_class s = 4;
    for (unsigned k = 0; k < count; ++k) {
        out.push_back(s);
        s = s * s - 2;
    }
    return out;
}

/// Trial-division primality for exponents.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Lucas–Lehmer test: true iff 2^p - 1 is prime, for odd prime p.
inline bool mersenne_test(std::uint64_t p)
{
    if (p < 3 || !is_prime(p))
        throw domain_error("mersenne_test requires a prime p >= 3, got " + std::to_string(p));

    mpz_class m = 1;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), p);
    m -= 1;

    mpz_class s = 4;
    mpz_class hi;
    for (std::uint64_t k = 0; k + 2 < p; ++k) {
        s = s * s - 2;
        if (sgn(s) < 0) s += m;
        // s mod (2^p - 1) = (s >> p) + (s & (2^p - 1)), repeated.
        while (mpz_sizeinbase(s.get_mpz_t(), 2) > p) {
            mpz_tdiv_q_2exp(hi.get_mpz_t(), s.get_mpz_t(), p);
            mpz_tdiv_r_2exp(s.get_mpz_t(), s.get_mpz_t(), p);
            s += hi;
        }
        if (s == m) s = 0;
    }
    return sgn(s) == 0;
}

} // namespace llpoly
