#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "llpoly/radicals.hpp"
#include "oracles.hpp"

using namespace llpoly;

namespace {

// Independent numeric value: plain nested sqrt built from the code string.
BigReal radical_from_code(const std::string& code, precision_t prec)
{
    BigReal r = sqrt(BigReal(2L, prec + 64));
    for (std::size_t i = code.size() - 1; i >= 1; --i) {
        BigReal t(2L, prec + 64);
        r = code[i] == '+' ? sqrt(t + r) : sqrt(t - r);
    }
    if (code[0] == '-') r = -r;
    return r.with_precision(prec);
}

} // namespace

TEST(SignPattern, CodesAndParsing)
{
    const SignPattern p = SignPattern::parse("+-+");
    EXPECT_EQ(p.level(), 3u);
    EXPECT_EQ(p.outer(), Sign::plus);
    EXPECT_EQ(p.inner(1), Sign::minus);
    EXPECT_EQ(p.inner(2), Sign::plus);
    EXPECT_EQ(p.code(), "+-+");
    EXPECT_EQ(p.radical(), "+sqrt(2-sqrt(2+sqrt(2)))");
    EXPECT_EQ(SignPattern::parse("-").radical(), "-sqrt(2)");
    EXPECT_THROW(SignPattern::parse("+x"), domain_error);
    EXPECT_THROW(SignPattern(0, Sign::plus), domain_error);
    EXPECT_THROW(SignPattern(2, Sign::plus, 0b10), domain_error);
}

TEST(EvalRadical, Examples)
{
    const BigReal s1 = eval_radical(SignPattern::parse("+"), 128);
    EXPECT_LT(abs(s1 - sqrt(BigReal(2L, 128))), pow2(-127, 128));

    const BigReal s2p = eval_radical(SignPattern::parse("++"), 160);
    const BigReal s2m = eval_radical(SignPattern::parse("+-"), 160);
    EXPECT_LT(abs(s2p - BigReal::parse("1.84775906502257351225636637879357657364483325", 160)), pow2(-140, 160));
    EXPECT_LT(abs(s2m - BigReal::parse("0.765366864730179543456919968060797733522689125", 160)), pow2(-140, 160));
}

TEST(EvalRadical, VanishesUnderTheMap)
{
    for (unsigned n = 1; n <= 10; ++n) {
        for (const auto& z : zeros(n)) {
            const BigReal v = eval_map(MapParams::lucas(), n, eval_radical(z, 128));
            ASSERT_LT(abs(v), pow2(-64, 128)) << z.code();
        }
    }
}

TEST(CompareSymbolic, Basics)
{
    EXPECT_EQ(compare_symbolic(SignPattern::parse("++"), SignPattern::parse("+-")), std::strong_ordering::greater);
    EXPECT_EQ(compare_symbolic(SignPattern::parse("+-"), SignPattern::parse("++")), std::strong_ordering::less);
    EXPECT_EQ(compare_symbolic(SignPattern::parse("+-+"), SignPattern::parse("+-+")), std::strong_ordering::equal);
    // A shared minus flips the decision at the next depth.
    EXPECT_EQ(compare_symbolic(SignPattern::parse("+-+"), SignPattern::parse("+--")), std::strong_ordering::less);
    EXPECT_EQ(compare_symbolic(SignPattern::parse("+++"), SignPattern::parse("++-")), std::strong_ordering::greater);
    // Negative branch is the mirror image.
    EXPECT_EQ(compare_symbolic(SignPattern::parse("-+"), SignPattern::parse("--")), std::strong_ordering::less);
    EXPECT_EQ(compare_symbolic(SignPattern::parse("--"), SignPattern::parse("++")), std::strong_ordering::less);
    EXPECT_THROW(compare_symbolic(SignPattern::parse("+"), SignPattern::parse("++")), domain_error);
}

// Full pairwise agreement between the sign rule and a numeric sort.
TEST(CompareSymbolic, MatchesNumericOrderPairwise)
{
    for (unsigned n = 1; n <= 9; ++n) {
        std::vector<SignPattern> pats;
        std::vector<BigReal> vals;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n - 1)); ++m) {
            pats.emplace_back(n, Sign::plus, m);
            vals.push_back(radical_from_code(pats.back().code(), 128));
        }
        for (std::size_t i = 0; i < pats.size(); ++i) {
            for (std::size_t j = 0; j < pats.size(); ++j) {
                const auto sym = compare_symbolic(pats[i], pats[j]);
                const auto num = vals[i] <=> vals[j];
                ASSERT_EQ(sym < 0, num < 0) << pats[i].code() << " vs " << pats[j].code();
                ASSERT_EQ(sym == 0, num == 0) << pats[i].code() << " vs " << pats[j].code();
            }
        }
    }
}

TEST(Zeros, LevelOneAndTwo)
{
    const auto z1 = zeros(1);
    ASSERT_EQ(z1.size(), 2u);
    EXPECT_EQ(z1[0].code(), "-");
    EXPECT_EQ(z1[1].code(), "+");

    const auto z2 = zeros(2);
    std::vector<std::string> codes;
    for (const auto& z : z2) codes.push_back(z.code());
    EXPECT_EQ(codes, (std::vector<std::string>{"-+", "--", "+-", "++"}));
}

TEST(Zeros, CountsAndStrictNumericOrder)
{
    for (unsigned n = 1; n <= 12; ++n) {
        const auto z = zeros(n);
        ASSERT_EQ(z.size(), std::size_t{1} << n);
        BigReal prev(-2L, 128);
        for (const auto& p : z) {
            const BigReal v = eval_radical(p, 128);
            ASSERT_GT(v, prev) << p.code();
            prev = v;
        }
        EXPECT_LT(prev, 2L);
    }
}

TEST(Zeros, CapIsEnforced)
{
    EXPECT_THROW(zeros(21), size_limit_error);
    EXPECT_THROW(zeros(5, 4), size_limit_error);
    EXPECT_THROW(zeros(0), domain_error);
}

TEST(ZerosTrig, MatchesRadicalsAsMultiset)
{
    const BigReal r2 = sqrt(BigReal(2L, 128));
    const auto t1 = zeros_trig(1, 128);
    ASSERT_EQ(t1.size(), 2u);
    EXPECT_LT(abs(t1[0] - r2), pow2(-120, 128));
    EXPECT_LT(abs(t1[1] + r2), pow2(-120, 128));

    const auto t2 = zeros_trig(2, 128);
    EXPECT_LT(abs(t2[0] - eval_radical(SignPattern::parse("++"), 128)), pow2(-120, 128));

    for (unsigned n = 1; n <= 8; ++n) {
        auto trig = zeros_trig(n, 128);
        std::sort(trig.begin(), trig.end());
        const auto sym = zeros(n);
        ASSERT_EQ(trig.size(), sym.size());
        for (std::size_t i = 0; i < sym.size(); ++i)
            ASSERT_LT(abs(trig[i] - eval_radical(sym[i], 128)), pow2(-(128 - 8 * static_cast<long>(n) - 32), 128));
    }
}

TEST(PlusChain, CosineIdentity)
{
    for (unsigned n : {1u, 2u, 5u, 10u}) {
        const BigReal c = plus_chain(n, 128);
        const BigReal angle = oracle::pi_fraction(1, 1L << (n + 1), 192);
        EXPECT_GE(agreement_bits(c, oracle::two_cos(angle).with_precision(128)), 100) << n;
    }
    EXPECT_LT(abs(plus_chain(2, 128) - BigReal::parse("1.84775906502257351225636637879357657364483325", 128)),
              pow2(-120, 128));
}

TEST(CriticalPoints, SmallLevels)
{
    const auto r1 = critical_points(1);
    ASSERT_EQ(r1.critical_points.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<Origin>(r1.critical_points[0].location));
    EXPECT_EQ(r1.critical_points[0].kind, CriticalKind::minimum);
    EXPECT_EQ(r1.critical_points[0].value, -2);

    const auto r2 = critical_points(2);
    ASSERT_EQ(r2.critical_points.size(), 3u);
    EXPECT_EQ(r2.critical_points[0].kind, CriticalKind::maximum);
    EXPECT_EQ(r2.critical_points[0].value, 2);
    for (std::size_t i = 1; i < 3; ++i) {
        EXPECT_EQ(r2.critical_points[i].kind, CriticalKind::minimum);
        EXPECT_EQ(r2.critical_points[i].value, -2);
    }
    // L_2 = x^4 - 4x^2 + 2 at 0 and +-sqrt(2).
    const ExactPoly l2 = build_poly(MapParams::lucas(), 2);
    EXPECT_EQ(l2(mpq_class(0)), 2);
    EXPECT_LT(abs(l2(sqrt(BigReal(2L, 128))) + 2L), pow2(-100, 128));
}

TEST(CriticalPoints, CardinalitiesAndRecurrence)
{
    using Key = std::string;
    std::set<Key> previous_m;
    for (unsigned n = 1; n <= 12; ++n) {
        const auto r = critical_points(n);
        ASSERT_EQ(r.critical_points.size(), (std::size_t{1} << n) - 1);
        EXPECT_EQ(r.positive_count(), (std::size_t{1} << (n - 1)) - 1);

        std::set<Key> m;
        for (const auto& c : r.critical_points) m.insert(location_code(c.location));
        EXPECT_EQ(m.size(), r.critical_points.size());
        if (n >= 2) {
            // M_n = M_{n-1} u Z_{n-1}, disjoint.
            std::set<Key> z_prev;
            for (const auto& z : zeros(n - 1)) z_prev.insert(z.code());
            std::set<Key> expected = previous_m;
            for (const auto& k : z_prev) {
                EXPECT_EQ(previous_m.count(k), 0u) << k;
                expected.insert(k);
            }
            EXPECT_EQ(m, expected);
        }
        previous_m = std::move(m);
    }
}

TEST(CriticalPoints, DerivativeVanishesAndValuesMatch)
{
    for (unsigned n = 2; n <= 7; ++n) {
        const ExactPoly p = build_poly(MapParams::lucas(), n);
        const ExactPoly d = p.derivative();
        for (const auto& c : critical_points(n).critical_points) {
            const BigReal x = location_value(c.location, 192);
            EXPECT_LT(abs(d(x)), pow2(-96, 192)) << location_code(c.location);
            EXPECT_LT(abs(eval_map(MapParams::lucas(), n, x) - static_cast<long>(c.value)), pow2(-96, 192));
            EXPECT_LT(abs(x), 2L);
        }
    }
}

TEST(MZeros, ScaledRoots)
{
    const auto half = m_zeros(3, mpq_class(1, 2));
    const auto plain = zeros(3);
    for (std::size_t i = 0; i < plain.size(); ++i)
        EXPECT_EQ(half[i].value(128), eval_radical(plain[i], 128));

    const auto a1 = m_zeros(1, 1);
    const BigReal half_r2 = sqrt(BigReal(2L, 128)) / 2L;
    EXPECT_LT(abs(a1[1].value(128) - half_r2), pow2(-120, 128));
    EXPECT_LT(abs(a1[0].value(128) + half_r2), pow2(-120, 128));

    for (const auto& z : m_zeros(2, 2)) {
        EXPECT_LT(abs(z.value(128) - eval_radical(z.pattern, 128) / 4L), pow2(-120, 128));
        EXPECT_LT(abs(eval_map(MapParams::scaled(2), 2, z.value(128))), pow2(-64, 128));
    }
}
