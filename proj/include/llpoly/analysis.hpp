#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "llpoly/bigreal.hpp"
#include "llpoly/errors.hpp"
#include "llpoly/polycore.hpp"
#include "llpoly/radicals.hpp"

namespace llpoly {

/// Constant, linear and quadratic Maclaurin coefficients of L_n / M^a_n.
inline std::array<mpq_class, 3> taylor_at_zero(const MapParams& params, unsigned n, unsigned max_n = default_max_n)
{
    if (n < 2) throw domain_error("taylor_at_zero requires n >= 2, got " + std::to_string(n));
    const ExactPoly p = build_poly(params, n, max_n);
    return {p.coeff(0), p.coeff(1), p.coeff(2)};
}

/// L_n'' at a maximum x0: 2^(2n+1) / (x0^2 - 4).
inline BigReal curvature_at_max(unsigned n, const BigReal& x0)
{
    if (n < 2) throw domain_error("curvature_at_max requires n >= 2");
    if (abs(x0) >= 2L) throw domain_error("curvature_at_max requires |x0| < 2");
    const precision_t work = x0.precision() + 32;
    const BigReal x = x0.with_precision(work);
    BigReal r = pow2(2 * static_cast<long>(n) + 1, work);
    r /= square(x) - 2L * 2L;
    return r.with_precision(x0.precision());
}

/// Cosine model 2cos(2^(n-1) k (x - x0)) of L_n around a maximum x0.
struct LocalModel {
    BigReal center;
    BigReal k;
    unsigned order = 0;

    BigReal evaluate(const BigReal& x) const
    {
        if (order == 0) throw domain_error("local model has no order set");
        BigReal arg = k * (x - center);
        arg.scale2(static_cast<long>(order) - 1);
        return 2L * cos(arg);
    }
};

/// k = 1 / sqrt(1 - x0^2 / 4), so that k^2 = 4 / (4 - x0^2).
inline LocalModel local_k(const BigReal& x0, unsigned order = 0)
{
    if (abs(x0) >= 2L) throw domain_error("local_k requires |x0| < 2");
    const precision_t work = x0.precision() + 32;
    const BigReal x = x0.with_precision(work);
    BigReal q = square(x);
    q.scale2(-2);
    const BigReal k = 1L / sqrt(1L - q);
    return {x0, k.with_precision(x0.precision()), order};
}

/// theta(x) = acos(x^2/2 - 1) / 2 in [0, pi/2], with L_n(x) = 2cos(2^n theta).
inline BigReal theta_of_x(const BigReal& x)
{
    if (abs(x) > 2L) throw domain_error("theta_of_x requires |x| <= 2");
    const precision_t work = x.precision() + 32;
    BigReal c = square(x.with_precision(work));
    c.scale2(-1);
    c -= 1L;
    // Rounding can push c a hair outside [-1, 1] right at |x| = 2 or 0.
    if (c > 1L) c = BigReal(1L, work);
    if (c < -1L) c = BigReal(-1L, work);
    BigReal t = acos(c);
    t.scale2(-1);
    return t.with_precision(x.precision());
}

/// The half-arctangent form of theta, defined for |x| < 2, |x| != sqrt(2).
/// Differs from theta_of_x by 0 or -pi/2.
inline BigReal theta_arctan(const BigReal& x)
{
    if (abs(x) >= 2L) throw domain_error("theta_arctan requires |x| < 2");
    const precision_t work = x.precision() + 32;
    BigReal c = square(x.with_precision(work));
    c.scale2(-1);
    c -= 1L;
    if (c.is_zero()) throw domain_error("theta_arctan is undefined at |x| = sqrt(2)");
    BigReal t = atan(sqrt(1L - square(c)) / c);
    t.scale2(-1);
    return t.with_precision(x.precision());
}

/// Gauss–Chebyshev rule for the weight 1/(4 sqrt(4 - x^2)) on [-2, 2].
struct QuadratureSpec {
    std::uint64_t node_count = 0;
    precision_t precision = default_precision;

    /// Fewest nodes integrating L_m L_n exactly.
    static QuadratureSpec exact_for(unsigned m, unsigned n, precision_t precision)
    {
        const std::uint64_t degree = (std::uint64_t{1} << m) + (std::uint64_t{1} << n);
        return {degree / 2 + 1, precision};
    }
};

/// <L_m, L_n> = (1/4) integral L_m L_n / sqrt(4 - x^2) dx over [-2, 2],
/// by the N-node rule at x_j = 2cos((j - 1/2) pi / N). Orthogonal for
/// m != n; pi/2 on the diagonal.
inline BigReal orthogonality_integral(unsigned m, unsigned n, const QuadratureSpec& spec)
{
    if (spec.node_count == 0) throw precondition_error("quadrature needs at least one node");
    if (m >= 62 || n >= 62) throw size_limit_error("orthogonality_integral: order too large", 61);
    const std::uint64_t degree = (std::uint64_t{1} << m) + (std::uint64_t{1} << n);
    if (2 * spec.node_count <= degree)
        throw precondition_error("quadrature with " + std::to_string(spec.node_count) +
                                 " nodes is not exact for degree " + std::to_string(degree) + "; need more than " +
                                 std::to_string(degree / 2));

    const precision_t work = spec.precision + 32 + 2 * static_cast<precision_t>(detail::bit_length(spec.node_count));
    const MapParams lucas = MapParams::lucas();
    const BigReal pi = BigReal::pi(work);
    const BigReal step = pi / static_cast<long>(spec.node_count);

    BigReal sum(work);
    for (std::uint64_t j = 1; j <= spec.node_count; ++j) {
        BigReal theta = step * static_cast<long>(2 * j - 1);
        theta.scale2(-1);
        const BigReal x = 2L * cos(theta);
        sum += eval_map(lucas, m, x) * eval_map(lucas, n, x);
    }
    sum *= step;
    sum.scale2(-2);
    return sum.with_precision(spec.precision);
}

/// The large-|x| model: (x^2 - 2)^(2^(n-1)) for L and
/// (2a)^(2^(n-1) - 1) (2a x^2 - 1/a)^(2^(n-1)) for M^a.
inline BigReal asymptotic_model(const MapParams& params, unsigned n, const BigReal& x)
{
    if (n == 0) throw domain_error("asymptotic model requires n >= 1");
    const precision_t work = x.precision() + map_guard_bits(n);
    const BigReal xw = x.with_precision(work);
    const BigReal two_a(params.square_coeff(), work);
    BigReal base = two_a * square(xw) - BigReal(params.shift(), work);
    BigReal scale = two_a;
    for (unsigned i = 1; i < n; ++i) {
        base = square(base);
        scale = square(scale);
    }
    BigReal r = base * scale / two_a;
    if (!r.is_finite()) throw domain_error("asymptotic model overflowed");
    return r.with_precision(x.precision());
}

/// eval_map(params, n, x) / asymptotic_model(params, n, x); tends to 1.
inline BigReal asymptotic_ratio(const MapParams& params, unsigned n, const BigReal& x)
{
    const precision_t work = x.precision() + 32;
    const BigReal edge = params.is_lucas() ? BigReal(2L, work) : BigReal(mpq_class(1 / params.a()), work);
    if (abs(x) <= edge) throw domain_error("asymptotic_ratio requires |x| beyond the oscillation interval");
    const BigReal xw = x.with_precision(work);
    const BigReal value = eval_map(params, n, xw);
    if (!value.is_finite()) throw domain_error("map value overflowed");
    return (value / asymptotic_model(params, n, xw)).with_precision(x.precision());
}

/// 2^(n+1) sqrt(2 - plus_chain(n)) = 2^(n+2) sin(pi / 2^(n+2)).
inline BigReal pi_approx(unsigned n, precision_t precision)
{
    if (n == 0) throw domain_error("pi_approx requires n >= 1");
    const precision_t work = precision + 2 * static_cast<precision_t>(n) + 32;
    BigReal r = sqrt(2L - plus_chain(n, work));
    r.scale2(static_cast<long>(n) + 1);
    return r.with_precision(precision);
}

struct CosineSample {
    BigReal x;
    BigReal poly;
    BigReal cosine;
};

/// Uniform samples of L_n(x) and 2cos(2^(n-1) x) on [-half_width, half_width].
inline std::vector<CosineSample> cosine_compare_samples(unsigned n, const BigReal& half_width, std::uint64_t count)
{
    if (n < 2) throw domain_error("cosine comparison requires n >= 2");
    if (count < 2) throw precondition_error("cosine comparison needs at least 2 samples");
    const MapParams lucas = MapParams::lucas();
    std::vector<CosineSample> out;
    out.reserve(count);
    const long last = static_cast<long>(count - 1);
    for (long i = 0; i <= last; ++i) {
        // x = half_width * (2i - last) / last
        BigReal x = half_width * (2 * i - last) / last;
        BigReal arg = x;
        arg.scale2(static_cast<long>(n) - 1);
        out.push_back({x, eval_map(lucas, n, x), 2L * cos(arg)});
    }
    return out;
}

} // namespace llpoly
