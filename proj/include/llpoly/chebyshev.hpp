#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "llpoly/bigreal.hpp"
#include "llpoly/errors.hpp"
#include "llpoly/exact_poly.hpp"
#include "llpoly/polycore.hpp"

namespace llpoly {

enum class ChebKind { first, second };

namespace detail {

inline std::uint64_t degree_cap(unsigned max_n) { return std::uint64_t{1} << max_n; }

} // namespace detail

/// T_n or U_n by the three-term recurrence p_n = 2x p_{n-1} - p_{n-2}.
/// n may be as large as 2^max_n.
inline ExactPoly cheb_poly(ChebKind kind, std::uint64_t n, unsigned max_n = default_max_n)
{
    if (n > detail::degree_cap(max_n))
        throw size_limit_error("cheb_poly: degree " + std::to_string(n) + " exceeds 2^max_n", max_n);

    // Integer coefficient vectors; the recurrence never leaves Z.
    std::vector<mpz_class> prev{1};
    if (n == 0) return ExactPoly::from_integers(prev);
    std::vector<mpz_class> cur = kind == ChebKind::first ? std::vector<mpz_class>{0, 1}
                                                         : std::vector<mpz_class>{0, 2};
    for (std::uint64_t k = 2; k <= n; ++k) {
        std::vector<mpz_class> next(cur.size() + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = 2 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return ExactPoly::from_integers(std::move(cur));
}

/// The quadratic t(x) linking each family to Chebyshev:
/// x^2/2 - 1 for L, 2a^2 x^2 - 1 for M^a.
inline ExactPoly shift_argument(const MapParams& params)
{
    const mpq_class a = params.a();
    return ExactPoly(std::vector<mpq_class>{-1, 0, 2 * a * a});
}

/// p(t(x)) for the family's shift t.
inline ExactPoly compose_shift(const ExactPoly& p, const MapParams& params, unsigned max_n = default_max_n)
{
    if (p.degree().value_or(0) > detail::degree_cap(max_n))
        throw size_limit_error("compose_shift: input degree exceeds 2^max_n", max_n);
    return p.compose(shift_argument(params));
}

/// Outcome of an exact identity check. On failure `first_mismatch` is the
/// lowest power whose coefficients differ.
struct IdentityReport {
    bool holds = false;
    std::optional<std::size_t> first_mismatch;
    ExactPoly lhs;
    ExactPoly rhs;
};

inline IdentityReport compare_exact(ExactPoly lhs, ExactPoly rhs)
{
    IdentityReport r;
    r.holds = lhs == rhs;
    if (!r.holds) r.first_mismatch = first_difference(lhs, rhs);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

/// Right-hand side of L_n = 2 T_{2^{n-1}}(t), M^a_n = (1/a) T_{2^{n-1}}(t).
inline ExactPoly t_identity_rhs(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    if (n == 0) throw domain_error("the T identity needs n >= 1");
    detail::check_cap(n, max_n, "t_identity");
    const ExactPoly t = cheb_poly(ChebKind::first, std::uint64_t{1} << (n - 1), max_n);
    return params.shift() * compose_shift(t, params, max_n);
}

/// Checks `candidate` (normally build_poly(params, n)) against the T form.
inline IdentityReport verify_t_identity(const MapParams& params, unsigned n, const ExactPoly& candidate,
                                        unsigned max_n = default_max_n)
{
    return compare_exact(candidate, t_identity_rhs(params, n, max_n));
}

inline IdentityReport verify_t_identity(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    return verify_t_identity(params, n, build_poly(params, n, max_n), max_n);
}

/// prod_{i=1}^n L_i = U_{2^n - 1}(t); for M^a the right side carries (1/(2a))^n.
inline ExactPoly u_identity_rhs(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    if (n == 0) throw domain_error("the U identity needs n >= 1");
    detail::check_cap(n, max_n, "u_identity");
    const ExactPoly u = cheb_poly(ChebKind::second, (std::uint64_t{1} << n) - 1, max_n);
    mpq_class scale = 1;
    const mpq_class inv = 1 / params.square_coeff();
    for (unsigned i = 0; i < n; ++i) scale *= inv;
    return scale * compose_shift(u, params, max_n);
}

inline ExactPoly family_product(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    detail::check_cap(n, max_n, "family_product");
    const mpq_class mul = params.square_coeff();
    const ExactPoly shift = ExactPoly::constant(params.shift());
    ExactPoly level = ExactPoly::identity();
    ExactPoly product = ExactPoly::constant(1);
    for (unsigned i = 1; i <= n; ++i) {
        level = mul * level.squared() - shift;
        product *= level;
    }
    return product;
}

inline IdentityReport verify_u_identity(const MapParams& params, unsigned n, const ExactPoly& candidate_product,
                                        unsigned max_n = default_max_n)
{
    return compare_exact(candidate_product, u_identity_rhs(params, n, max_n));
}

inline IdentityReport verify_u_identity(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    return verify_u_identity(params, n, family_product(params, n, max_n), max_n);
}

/// (U_n(1), U_n(-1)) by exact evaluation.
inline std::pair<mpz_class, mpz_class> u_endpoint(std::uint64_t n, unsigned max_n = default_max_n)
{
    const ExactPoly u = cheb_poly(ChebKind::second, n, max_n);
    return {u(mpq_class(1)).get_num(), u(mpq_class(-1)).get_num()};
}

/// |prod_{i=1}^n L_i(2cos t) - sin(2^{n+1} t) / sin(2t)|.
inline BigReal sine_quotient_check(unsigned n, const BigReal& theta, precision_t precision)
{
    if (n == 0) throw domain_error("sine_quotient_check requires n >= 1");
    const precision_t work = precision + map_guard_bits(n);
    const BigReal t = theta.with_precision(work);

    const BigReal denom = sin(ldexp(t, 1));
    const BigReal floor_value = pow2(-precision / 4, work);
    if (abs(denom) < floor_value)
        throw domain_error("sin(2 theta) is too close to zero for a stable quotient");

    const BigReal x = 2L * cos(t);
    BigReal product(1L, work);
    BigReal level = x;
    for (unsigned i = 1; i <= n; ++i) {
        level = square(level) - 2L; // L_i(x)
        product *= level;
    }
    const BigReal quotient = sin(ldexp(t, static_cast<long>(n) + 1)) / denom;
    return abs(product - quotient).with_precision(precision);
}

} // namespace llpoly
