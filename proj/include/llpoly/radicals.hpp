#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "llpoly/bigreal.hpp"
#include "llpoly/errors.hpp"
#include "llpoly/polycore.hpp"

namespace llpoly {

/// Default cap on n for zero enumeration (2^20 zeros).
inline constexpr unsigned default_enumeration_cap = 20;

enum class Sign : std::uint8_t { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// The sign choices of one nested radical
///
///     outer * sqrt(2 s_1 sqrt(2 s_2 sqrt(... 2 s_{n-1} sqrt(2))))
///
/// with n twos. Level n patterns are exactly the 2^n zeros of L_n.
class SignPattern {
public:
    static constexpr unsigned max_level = 64;

    SignPattern(unsigned level, Sign outer, std::uint64_t minus_mask = 0)
        : level_(level), outer_(outer), minus_mask_(minus_mask)
    {
        if (level == 0 || level > max_level)
            throw domain_error("sign pattern level must be in [1, 64], got " + std::to_string(level));
        if (level < 64 && (minus_mask >> (level - 1)) != 0)
            throw domain_error("sign pattern has inner signs beyond its level");
    }

    SignPattern(Sign outer, const std::vector<Sign>& inner)
        : SignPattern(static_cast<unsigned>(inner.size()) + 1, outer, mask_of(inner)) {}

    /// Parses "+", "-+-", ... : outer sign followed by the inner signs.
    static SignPattern parse(const std::string& text)
    {
        if (text.empty()) throw domain_error("empty sign pattern");
        std::vector<Sign> signs;
        for (char c : text) {
            if (c == '+') signs.push_back(Sign::plus);
            else if (c == '-') signs.push_back(Sign::minus);
            else throw domain_error("bad character in sign pattern: '" + text + "'");
        }
        const Sign outer = signs.front();
        signs.erase(signs.begin());
        return SignPattern(outer, signs);
    }

    unsigned level() const noexcept { return level_; }
    Sign outer() const noexcept { return outer_; }
    std::uint64_t minus_mask() const noexcept { return minus_mask_; }

    /// Inner sign s_depth, depth in [1, level - 1].
    Sign inner(unsigned depth) const
    {
        if (depth == 0 || depth >= level_) throw domain_error("inner sign depth out of range");
        return ((minus_mask_ >> (depth - 1)) & 1U) ? Sign::minus : Sign::plus;
    }

    SignPattern mirrored() const
    {
        return SignPattern(level_, outer_ == Sign::plus ? Sign::minus : Sign::plus, minus_mask_);
    }

    /// Compact form: outer sign then inner signs, e.g. "+-+".
    std::string code() const
    {
        std::string s(1, sign_char(outer_));
        for (unsigned d = 1; d < level_; ++d) s += sign_char(inner(d));
        return s;
    }

    /// Radical form, e.g. "+sqrt(2-sqrt(2))".
    std::string radical() const
    {
        std::string body = "sqrt(2)";
        for (unsigned d = level_ - 1; d >= 1; --d)
            body = std::string("sqrt(2") + sign_char(inner(d)) + body + ")";
        return std::string(1, sign_char(outer_)) + body;
    }

    friend bool operator==(const SignPattern&, const SignPattern&) = default;

private:
    static std::uint64_t mask_of(const std::vector<Sign>& inner)
    {
        if (inner.size() >= max_level) throw domain_error("sign pattern too deep");
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < inner.size(); ++i)
            if (inner[i] == Sign::minus) m |= std::uint64_t{1} << i;
        return m;
    }

    unsigned level_;
    Sign outer_;
    std::uint64_t minus_mask_;
};

/// Numeric value of a nested radical, correct to about `precision` bits.
inline BigReal eval_radical(const SignPattern& sp, precision_t precision)
{
    const precision_t work = precision + map_guard_bits(sp.level());
    BigReal r = sqrt(BigReal(2L, work));
    for (unsigned d = sp.level() - 1; d >= 1; --d) {
        BigReal radicand(2L, work);
        if (sp.inner(d) == Sign::plus) radicand += r;
        else radicand -= r;
        if (radicand.sign() < 0) throw domain_error("negative radicand in pattern " + sp.code());
        r = sqrt(radicand);
    }
    if (sp.outer() == Sign::minus) r = -r;
    return r.with_precision(precision);
}

/// Orders two same-level nested radicals from their signs alone.
///
/// Scans inner signs from the outside in. A differing sign decides (plus is
/// larger); a shared minus flips the direction of every later decision,
/// because the deeper radical is being subtracted.
inline std::strong_ordering compare_symbolic(const SignPattern& a, const SignPattern& b)
{
    if (a.level() != b.level())
        throw domain_error("compare_symbolic needs equal levels, got " + std::to_string(a.level()) + " and " +
                           std::to_string(b.level()));
    if (a.outer() != b.outer())
        return a.outer() == Sign::minus ? std::strong_ordering::less : std::strong_ordering::greater;

    bool flipped = a.outer() == Sign::minus;
    for (unsigned d = 1; d < a.level(); ++d) {
        const Sign sa = a.inner(d);
        const Sign sb = b.inner(d);
        if (sa != sb) {
            const bool a_larger = (sa == Sign::plus) != flipped;
            return a_larger ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (sa == Sign::minus) flipped = !flipped;
    }
    return std::strong_ordering::equal;
}

namespace detail {

inline void check_enumeration_cap(unsigned n, unsigned cap, const char* what)
{
    if (n == 0) throw domain_error(std::string(what) + " requires n >= 1");
    if (n > cap)
        throw size_limit_error(std::string(what) + ": n = " + std::to_string(n) + " exceeds the enumeration cap", cap);
}

} // namespace detail

/// All 2^n zeros of L_n as sign patterns, ascending.
inline std::vector<SignPattern> zeros(unsigned n, unsigned cap = default_enumeration_cap)
{
    detail::check_enumeration_cap(n, cap, "zeros");
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    std::vector<SignPattern> positive;
    positive.reserve(half);
    for (std::uint64_t m = 0; m < half; ++m) positive.emplace_back(n, Sign::plus, m);
    std::sort(positive.begin(), positive.end(),
              [](const SignPattern& x, const SignPattern& y) { return compare_symbolic(x, y) < 0; });

    std::vector<SignPattern> out;
    out.reserve(2 * half);
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.push_back(it->mirrored());
    out.insert(out.end(), positive.begin(), positive.end());
    return out;
}

/// Zeros of L_n from 2cos(2^n t) = 0: 2cos((2k+1) pi / 2^(n+1)), k = 0 .. 2^n - 1.
inline std::vector<BigReal> zeros_trig(unsigned n, precision_t precision, unsigned cap = default_enumeration_cap)
{
    detail::check_enumeration_cap(n, cap, "zeros_trig");
    const precision_t work = precision + 32;
    const BigReal step = ldexp(BigReal::pi(work), -static_cast<long>(n) - 1);
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<BigReal> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        BigReal angle = step * static_cast<long>(2 * k + 1);
        out.push_back((2L * cos(angle)).with_precision(precision));
    }
    return out;
}

/// All-plus radical with n twos, equal to 2cos(pi / 2^(n+1)).
inline BigReal plus_chain(unsigned n, precision_t precision)
{
    if (n == 0) throw domain_error("plus_chain requires n >= 1");
    return eval_radical(SignPattern(n, Sign::plus, 0), precision);
}

// Critical points ----------------------------------------------------------

struct Origin {
    friend bool operator==(Origin, Origin) { return true; }
};

using Location = std::variant<Origin, SignPattern>;

enum class CriticalKind { maximum, minimum };

inline const char* kind_name(CriticalKind k) { return k == CriticalKind::maximum ? "max" : "min"; }

struct CriticalPoint {
    Location location;
    CriticalKind kind;
    int value; // L_n at the point: 2 at maxima, -2 at minima
};

inline BigReal location_value(const Location& loc, precision_t precision)
{
    if (std::holds_alternative<Origin>(loc)) return BigReal(precision);
    return eval_radical(std::get<SignPattern>(loc), precision);
}

inline std::string location_code(const Location& loc)
{
    if (std::holds_alternative<Origin>(loc)) return "0";
    return std::get<SignPattern>(loc).code();
}

/// Zeros Z_n and classified critical points M_n = {0} u Z_1 u ... u Z_{n-1}.
///
/// The minima are Z_{n-1} (value -2); the origin and Z_1 .. Z_{n-2} are
/// maxima (value 2). For n = 1 the origin is the single minimum.
/// Points are listed origin first, then by level, ascending within a level.
struct CriticalPointReport {
    unsigned n = 0;
    std::vector<SignPattern> zeros;
    std::vector<CriticalPoint> critical_points;

    std::size_t maxima_count() const
    {
        return static_cast<std::size_t>(std::count_if(critical_points.begin(), critical_points.end(),
            [](const CriticalPoint& c) { return c.kind == CriticalKind::maximum; }));
    }

    std::size_t positive_count() const
    {
        return static_cast<std::size_t>(std::count_if(critical_points.begin(), critical_points.end(),
            [](const CriticalPoint& c) {
                const auto* sp = std::get_if<SignPattern>(&c.location);
                return sp != nullptr && sp->outer() == Sign::plus;
            }));
    }
};

inline CriticalPointReport critical_points(unsigned n, unsigned cap = default_enumeration_cap)
{
    detail::check_enumeration_cap(n, cap, "critical_points");
    CriticalPointReport report;
    report.n = n;
    report.zeros = zeros(n, cap);
    if (n == 1) {
        report.critical_points.push_back({Origin{}, CriticalKind::minimum, -2});
        return report;
    }
    report.critical_points.push_back({Origin{}, CriticalKind::maximum, 2});
    for (unsigned level = 1; level < n; ++level) {
        const bool minimum = (level == n - 1);
        for (auto& z : zeros(level, cap))
            report.critical_points.push_back(
                {z, minimum ? CriticalKind::minimum : CriticalKind::maximum, minimum ? -2 : 2});
    }
    return report;
}

/// A level-n zero of M^a_n: the L zero scaled by 1/(2a).
struct ScaledPattern {
    SignPattern pattern;
    mpq_class scale;

    BigReal value(precision_t precision) const { return eval_radical(pattern, precision) * scale; }
};

inline std::vector<ScaledPattern> m_zeros(unsigned n, const mpq_class& a, unsigned cap = default_enumeration_cap)
{
    if (sgn(a) <= 0) throw domain_error("scale parameter a must be positive");
    mpq_class scale = 1 / (2 * a);
    scale.canonicalize();
    std::vector<ScaledPattern> out;
    for (auto& z : zeros(n, cap)) out.push_back({z, scale});
    return out;
}

} // namespace llpoly
