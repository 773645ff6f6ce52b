#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "llpoly/cli.hpp"

using llpoly::cli::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "llpoly");
    std::ostringstream out, err;
    const int code = llpoly::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args)
{
    args.insert(args.begin(), "--json");
    const Result r = run(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

} // namespace

TEST(ParseExact, Forms)
{
    using llpoly::cli::parse_exact;
    EXPECT_EQ(parse_exact("0.1"), mpq_class(1, 10));
    EXPECT_EQ(parse_exact("-3/2"), mpq_class(-3, 2));
    EXPECT_EQ(parse_exact("2.5e-3"), mpq_class(1, 400));
    EXPECT_EQ(parse_exact("1e3"), 1000);
    EXPECT_EQ(parse_exact("+7"), 7);
    EXPECT_THROW(parse_exact("abc"), llpoly::domain_error);
    EXPECT_THROW(parse_exact("1.2.3"), llpoly::domain_error);
    EXPECT_THROW(parse_exact("1/0"), llpoly::domain_error);
}

TEST(Cli, PolyCoefficients)
{
    const json j = run_json({"poly", "--family", "L", "--n", "2"});
    EXPECT_EQ(j["command"], "poly");
    EXPECT_EQ(j["precision_bits"], 128);
    EXPECT_EQ(j["payload"]["coefficients"], json::parse(R"(["2","0","-4","0","1"])"));
    EXPECT_EQ(j["payload"]["polynomial"], "x^4 - 4*x^2 + 2");

    const json m = run_json({"poly", "--family", "M", "--a", "3/2", "--n", "1"});
    EXPECT_EQ(m["params"]["a"], "3/2");
    EXPECT_EQ(m["payload"]["coefficients"], json::parse(R"(["-2/3","0","3"])"));
}

TEST(Cli, TableOutputIsHumanReadable)
{
    const Result r = run({"poly", "--n", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("polynomial: x^2 - 2"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.rfind("# poly", 0), 0u);
}

// poly output, re-parsed and evaluated exactly, equals eval's exact value.
TEST(Cli, PolyEvalRoundTrip)
{
    for (const char* x : {"0.1", "-7/3", "1.5", "2"}) {
        for (const char* n : {"0", "3", "5"}) {
            const json p = run_json({"poly", "--family", "M", "--a", "3/2", "--n", n});
            std::vector<mpq_class> coeffs;
            for (const auto& c : p["payload"]["coefficients"]) coeffs.emplace_back(c.get<std::string>());
            for (auto& c : coeffs) c.canonicalize();
            const mpq_class value = llpoly::ExactPoly(coeffs)(llpoly::cli::parse_exact(x));

            const json e = run_json({"eval", "--family", "M", "--a", "3/2", "--n", n, "--x", x});
            EXPECT_EQ(value.get_str(), e["payload"]["exact_value"].get<std::string>()) << x << " n=" << n;

            // The map value printed at 128 bits agrees with the exact value.
            const llpoly::BigReal mapped = llpoly::BigReal::parse(e["payload"]["map_value"].get<std::string>(), 128);
            const llpoly::BigReal exact(value, 128);
            const llpoly::BigReal scale = std::max(llpoly::abs(exact), llpoly::BigReal(1L, 128));
            EXPECT_LT(llpoly::abs(mapped - exact) / scale, llpoly::pow2(-110, 128));
        }
    }
}

TEST(Cli, DeterministicOutput)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "zeros", "--n", "4"},
             {"--csv", "quadrature", "--max-n", "3"},
             {"pi", "--n", "6", "--precision", "200"}}) {
        const Result a = run(args);
        const Result b = run(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, Zeros)
{
    const json j = run_json({"zeros", "--n", "2"});
    ASSERT_EQ(j["payload"]["rows"].size(), 4u);
    EXPECT_EQ(j["payload"]["rows"][3]["signs"], "++");
    EXPECT_EQ(j["payload"]["rows"][3]["radical"], "+sqrt(2+sqrt(2))");
    EXPECT_EQ(j["payload"]["rows"][3]["value"].get<std::string>().substr(0, 12), "1.8477590650");

    const json m = run_json({"zeros", "--family", "M", "--a", "1", "--n", "1"});
    EXPECT_EQ(m["payload"]["rows"][1]["value"].get<std::string>().substr(0, 10), "7.07106781");
}

TEST(Cli, CriticalPoints)
{
    const json j = run_json({"critical-points", "--n", "3"});
    EXPECT_EQ(j["payload"]["critical_count"], "7");
    EXPECT_EQ(j["payload"]["maxima"], "3");
    EXPECT_EQ(j["payload"]["minima"], "4");
    EXPECT_EQ(j["payload"]["rows"][0]["location"], "0");
    EXPECT_EQ(j["payload"]["rows"][0]["kind"], "max");
}

TEST(Cli, VerifySucceeds)
{
    const Result r = run({"verify", "--max-n", "8"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("failures: 0"), std::string::npos);
}

TEST(Cli, VerifyBeyondCapIsSizeLimit)
{
    const Result r = run({"verify", "--max-n", "9", "--a-grid", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    ::setenv("LLPOLY_MAX_N", "6", 1);
    const Result capped = run({"verify", "--max-n", "8"});
    const Result poly = run({"--json", "poly", "--n", "7"});
    ::unsetenv("LLPOLY_MAX_N");
    EXPECT_EQ(capped.code, 1);
    EXPECT_NE(capped.err.find("size-limit"), std::string::npos);
    EXPECT_EQ(poly.code, 1);
    const json e = json::parse(poly.err);
    EXPECT_EQ(e["error"]["kind"], "size-limit");
}

TEST(Cli, BadEnvironmentCapIsUsageError)
{
    ::setenv("LLPOLY_MAX_N", "lots", 1);
    const Result r = run({"poly", "--n", "2"});
    ::unsetenv("LLPOLY_MAX_N");
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, Quadrature)
{
    const Result r = run({"--csv", "quadrature", "--max-n", "4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("m,n,nodes,value,expected,abs_error,result\n", 0), 0u);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, PiTable)
{
    const json j = run_json({"pi", "--n", "4", "--precision", "128"});
    const auto& row = j["payload"]["rows"][3];
    EXPECT_EQ(row["n"], "4");
    EXPECT_EQ(row["value"].get<std::string>().substr(0, 9), "3.1403311");
    EXPECT_EQ(row["error"].get<std::string>().substr(0, 4), "1.26");
    EXPECT_NE(row["error"].get<std::string>().find("e-03"), std::string::npos);
}

TEST(Cli, MersenneAndSequence)
{
    EXPECT_EQ(run_json({"mersenne", "--p", "13"})["payload"]["prime"], true);
    EXPECT_EQ(run_json({"mersenne", "--p", "11"})["payload"]["prime"], false);
    const Result bad = run({"mersenne", "--p", "15"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("domain"), std::string::npos);

    const json s = run_json({"sequence", "--count", "4"});
    EXPECT_EQ(s["payload"]["rows"][3]["s_k"], "37634");

    const Result csv = run({"--csv", "mersenne", "--p", "7"});
    EXPECT_EQ(csv.out, "key,value\nnumber,2^7-1\nprime,true\n");
}

TEST(Cli, PlotData)
{
    const json j = run_json({"plot-data", "--n", "2", "--half-width", "0.1", "--count", "3"});
    ASSERT_EQ(j["payload"]["rows"].size(), 3u);
    EXPECT_EQ(j["payload"]["rows"][1]["L_n"].get<std::string>().substr(0, 5), "2.000");
    EXPECT_EQ(j["payload"]["rows"][2]["L_n"].get<std::string>().substr(0, 6), "1.9601");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"poly"}).code, 2);
    EXPECT_EQ(run({"poly", "--n", "two"}).code, 2);
    EXPECT_EQ(run({"--precision", "10", "pi", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"poly", "--family", "Q", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"--json", "--csv", "poly", "--n", "2"}).code, 2);
}

TEST(Cli, DomainErrorsExitOne)
{
    EXPECT_EQ(run({"poly", "--family", "M", "--a", "-1", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"plot-data", "--n", "1"}).code, 1);
    EXPECT_EQ(run({"eval", "--n", "2", "--x", "zz"}).code, 1);
}

// The installed binary honours the same exit-code contract.
TEST(Cli, BinaryExitCodes)
{
    const std::string bin = LLPOLY_CLI_PATH;
    EXPECT_EQ(std::system((bin + " verify --max-n 4 > /dev/null").c_str()), 0);
    EXPECT_NE(std::system((bin + " nonsense > /dev/null 2>&1").c_str()), 0);
}
