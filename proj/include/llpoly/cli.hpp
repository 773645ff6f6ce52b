#pragma once

// Command-line front end. `run` is the whole program; tools/llpoly.cpp only
// forwards argv and the standard streams.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "llpoly/llpoly.hpp"

namespace llpoly::cli {

using json = nlohmann::ordered_json;

enum class Format { table, json, csv };

/// Parses "3", "-3/2", "0.1", "2.5e-3" into an exact rational.
inline mpq_class parse_exact(const std::string& text)
{
    if (text.empty()) throw domain_error("empty number");
    if (text.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) throw domain_error("not a rational: '" + text + "'");
        q.canonicalize();
        return q;
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw domain_error("not a number: '" + text + "'");
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw domain_error("not a number: '" + text + "'");
        const std::string exp = text.substr(i + 1);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp, &used);
        } catch (const std::exception&) {
            throw domain_error("bad exponent in '" + text + "'");
        }
        if (used != exp.size() || e > 100000 || e < -100000) throw domain_error("bad exponent in '" + text + "'");
        scale += e;
    }
    mpz_class num(digits, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale >= 0 ? mpq_class(num * ten_pow) : mpq_class(num, ten_pow);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

/// Writes one command's result as a human table, CSV, or a JSON envelope.
///
/// Scalars come first, then an optional table whose rows are streamed in
/// table and CSV modes. JSON is buffered and written once at `finish`.
class Emitter {
public:
    Emitter(std::ostream& out, Format format, std::string command, json params, precision_t precision)
        : out_(out), format_(format)
    {
        envelope_["command"] = std::move(command);
        envelope_["params"] = std::move(params);
        envelope_["precision_bits"] = precision;
        envelope_["payload"] = json::object();
    }

    void scalar(const std::string& key, json value)
    {
        if (format_ == Format::table) {
            out_ << key << ": " << render(value) << '\n';
        } else if (format_ == Format::csv) {
            csv_scalars_.emplace_back(key, render(value));
        }
        envelope_["payload"][key] = std::move(value);
    }

    void columns(std::vector<std::string> names)
    {
        columns_ = std::move(names);
        if (format_ == Format::table) {
            out_ << join(columns_, "  ") << '\n';
        } else if (format_ == Format::csv) {
            std::vector<std::string> cells;
            for (const auto& c : columns_) cells.push_back(csv_cell(c));
            out_ << join(cells, ",") << '\n';
        }
        envelope_["payload"]["rows"] = json::array();
    }

    void row(const std::vector<std::string>& cells)
    {
        if (format_ == Format::table) {
            out_ << join(cells, "  ") << '\n';
        } else if (format_ == Format::csv) {
            std::vector<std::string> quoted;
            for (const auto& c : cells) quoted.push_back(csv_cell(c));
            out_ << join(quoted, ",") << '\n';
        } else {
            json r = json::object();
            for (std::size_t i = 0; i < cells.size() && i < columns_.size(); ++i) r[columns_[i]] = cells[i];
            envelope_["payload"]["rows"].push_back(std::move(r));
        }
    }

    void finish()
    {
        if (format_ == Format::json) out_ << envelope_.dump(2) << '\n';
        // CSV carries the table when there is one, otherwise the scalars.
        if (format_ == Format::csv && columns_.empty()) {
            out_ << "key,value\n";
            for (const auto& [k, v] : csv_scalars_) out_ << csv_cell(k) << ',' << csv_cell(v) << '\n';
        }
        out_.flush();
    }

    void header_comment()
    {
        if (format_ != Format::table) return;
        out_ << "# " << envelope_["command"].get<std::string>();
        for (const auto& [k, v] : envelope_["params"].items()) out_ << "  " << k << '=' << render(v);
        out_ << "  precision_bits=" << envelope_["precision_bits"].get<long>() << '\n';
    }

private:
    static std::string render(const json& v)
    {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render(v[i]);
            return s + "]";
        }
        return v.dump();
    }

    static std::string csv_cell(const std::string& s)
    {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }

    static std::string join(const std::vector<std::string>& v, const std::string& sep)
    {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
        return s;
    }

    std::ostream& out_;
    Format format_;
    json envelope_;
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> csv_scalars_;
};

/// Raised for bad flag values discovered after CLI11 parsing; exit code 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline unsigned cap_from_environment()
{
    const char* env = std::getenv("LLPOLY_MAX_N");
    if (env == nullptr || *env == '\0') return default_max_n;
    try {
        std::size_t used = 0;
        const long v = std::stol(env, &used);
        if (used != std::string(env).size() || v < 0 || v > 62) throw usage_error("");
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw usage_error(std::string("LLPOLY_MAX_N must be an integer in [0, 62], got '") + env + "'");
    }
}

namespace detail {

struct FamilyOptions {
    std::string family = "L";
    std::string a = "1/2";

    MapParams params() const
    {
        if (family == "L") return MapParams::lucas();
        if (family == "M") return MapParams::scaled(parse_exact(a));
        throw usage_error("--family must be L or M, got '" + family + "'");
    }

    void describe(json& p) const
    {
        p["family"] = family;
        if (family == "M") p["a"] = parse_exact(a).get_str();
    }
};

inline void add_family(CLI::App* sub, FamilyOptions& f)
{
    sub->add_option("--family", f.family, "L (Lucas–Lehmer) or M (scaled family)")->capture_default_str();
    sub->add_option("--a", f.a, "scale a for the M family, e.g. 3/2")->capture_default_str();
}

inline std::vector<mpq_class> parse_grid(const std::string& text)
{
    std::vector<mpq_class> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(parse_exact(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::string num(const BigReal& v) { return v.to_string(); }

} // namespace detail

/// Runs one command line (args[0] is the program name). Returns the exit
/// code: 0 success, 1 library or verification failure, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lucas–Lehmer polynomial toolkit", "llpoly"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    bool as_csv = false;
    precision_t precision = default_precision;
    app.add_flag("--json", as_json, "emit a JSON envelope");
    app.add_flag("--csv", as_csv, "emit CSV");
    app.add_option("--precision", precision, "working precision in bits (>= 53)")
        ->capture_default_str()
        ->check(CLI::Range(static_cast<precision_t>(min_precision), static_cast<precision_t>(1) << 24));

    std::optional<unsigned> max_n_flag;
    auto add_max_n = [&](CLI::App* sub) {
        sub->add_option("--max-n", max_n_flag, "cap on n (overrides LLPOLY_MAX_N)");
    };

    detail::FamilyOptions family;
    unsigned n = 0;
    std::string x_text;
    std::uint64_t p_exp = 0;
    unsigned count = 0;
    std::string half_width = "0.1";
    std::string a_grid = "1/2,1,3/2,2";

    auto* poly = app.add_subcommand("poly", "exact coefficients of L_n or M^a_n");
    detail::add_family(poly, family);
    poly->add_option("--n", n, "level")->required();
    add_max_n(poly);

    auto* eval = app.add_subcommand("eval", "evaluate L_n / M^a_n at x");
    detail::add_family(eval, family);
    eval->add_option("--n", n, "level")->required();
    eval->add_option("--x", x_text, "point, decimal or p/q")->required();
    add_max_n(eval);

    auto* zeros_cmd = app.add_subcommand("zeros", "zeros as nested-radical sign patterns, ascending");
    detail::add_family(zeros_cmd, family);
    zeros_cmd->add_option("--n", n, "level")->required();

    auto* crit = app.add_subcommand("critical-points", "classified critical points of L_n");
    crit->add_option("--n", n, "level")->required();

    unsigned verify_max = 8;
    auto* verify = app.add_subcommand("verify", "exact T/U/derivative identity suite");
    verify->add_option("--max-n", verify_max, "largest n checked")->capture_default_str();
    verify->add_option("--a-grid", a_grid, "comma-separated a values for the M family")->capture_default_str();

    unsigned quad_max = 8;
    auto* quad = app.add_subcommand("quadrature", "orthogonality matrix <L_m, L_n>");
    quad->add_option("--max-n", quad_max, "largest order")->capture_default_str();

    auto* pi_cmd = app.add_subcommand("pi", "nested-radical approximations of pi");
    pi_cmd->add_option("--n", n, "largest level")->required();

    auto* mersenne = app.add_subcommand("mersenne", "Lucas–Lehmer test of 2^p - 1");
    mersenne->add_option("--p", p_exp, "prime exponent >= 3")->required();

    auto* sequence = app.add_subcommand("sequence", "4, 14, 194, ...");
    sequence->add_option("--count", count, "number of terms")->required()->check(CLI::PositiveNumber);

    auto* plot = app.add_subcommand("plot-data", "L_n(x) against 2cos(2^(n-1) x) near 0");
    plot->add_option("--n", n, "level (>= 2)")->required();
    plot->add_option("--half-width", half_width, "sample window half width")->capture_default_str();
    plot->add_option("--count", count, "number of samples")->default_val(21);

    std::vector<std::string> argv_store = args;
    if (argv_store.empty()) argv_store.emplace_back("llpoly");
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "llpoly: " << e.what() << "\n" << app.help();
        return 2;
    }

    const Format format = as_json ? Format::json : as_csv ? Format::csv : Format::table;
    if (as_json && as_csv) {
        err << "llpoly: --json and --csv are exclusive\n";
        return 2;
    }

    auto report_error = [&](const char* kind, const std::string& message, int code) {
        if (format == Format::json) {
            json e;
            e["error"]["kind"] = kind;
            e["error"]["message"] = message;
            err << e.dump() << '\n';
        } else {
            err << "llpoly: " << kind << " error: " << message << '\n';
        }
        return code;
    };

    try {
        const unsigned cap = max_n_flag ? *max_n_flag : cap_from_environment();
        json params = json::object();
        int status = 0;

        if (*poly) {
            family.describe(params);
            params["n"] = n;
            Emitter em(out, format, "poly", params, precision);
            em.header_comment();
            const ExactPoly p = build_poly(family.params(), n, cap);
            json coeffs = json::array();
            for (const auto& c : p.coefficients()) coeffs.push_back(c.get_str());
            em.scalar("degree", std::to_string(p.degree().value_or(0)));
            em.scalar("polynomial", p.to_string());
            em.scalar("coefficients", coeffs);
            em.finish();
        } else if (*eval) {
            family.describe(params);
            params["n"] = n;
            params["x"] = x_text;
            Emitter em(out, format, "eval", params, precision);
            em.header_comment();
            const MapParams mp = family.params();
            const mpq_class xq = parse_exact(x_text);
            const BigReal xv(xq, precision);
            em.scalar("map_value", detail::num(eval_map(mp, n, xv)));
            if (n <= cap) {
                const mpq_class exact = eval_poly(build_poly(mp, n, cap), xq);
                em.scalar("exact_value", exact.get_str());
                em.scalar("exact_decimal", detail::num(BigReal(exact, precision)));
            }
            em.finish();
        } else if (*zeros_cmd) {
            family.describe(params);
            params["n"] = n;
            Emitter em(out, format, "zeros", params, precision);
            em.header_comment();
            const MapParams mp = family.params();
            const auto pats = llpoly::zeros(n);
            const mpq_class scale = 1 / (2 * mp.a());
            em.scalar("count", std::to_string(pats.size()));
            em.columns({"index", "signs", "radical", "value"});
            std::size_t i = 0;
            for (const auto& z : pats) {
                BigReal v = eval_radical(z, precision);
                if (!mp.is_lucas()) v *= scale;
                std::string radical = z.radical();
                if (!mp.is_lucas()) radical = "(" + scale.get_str() + ")*" + radical;
                em.row({std::to_string(i++), z.code(), radical, detail::num(v)});
            }
            em.finish();
        } else if (*crit) {
            params["n"] = n;
            Emitter em(out, format, "critical-points", params, precision);
            em.header_comment();
            const auto report = critical_points(n);
            em.scalar("zero_count", std::to_string(report.zeros.size()));
            em.scalar("critical_count", std::to_string(report.critical_points.size()));
            em.scalar("maxima", std::to_string(report.maxima_count()));
            em.scalar("minima", std::to_string(report.critical_points.size() - report.maxima_count()));
            em.columns({"location", "kind", "value", "x"});
            for (const auto& c : report.critical_points)
                em.row({location_code(c.location), kind_name(c.kind), std::to_string(c.value),
                        detail::num(location_value(c.location, precision))});
            em.finish();
        } else if (*verify) {
            params["max_n"] = verify_max;
            params["a_grid"] = a_grid;
            if (verify_max > cap) throw size_limit_error("verify: --max-n exceeds the degree cap", cap);
            Emitter em(out, format, "verify", params, precision);
            em.header_comment();
            std::vector<MapParams> families{MapParams::lucas()};
            for (const auto& a : detail::parse_grid(a_grid)) families.push_back(MapParams::scaled(a));
            em.columns({"identity", "family", "n", "result", "first_mismatch"});
            std::size_t failures = 0;
            auto emit = [&](const char* name, const MapParams& mp, unsigned k, const IdentityReport& r) {
                if (!r.holds) ++failures;
                em.row({name, mp.to_string(), std::to_string(k), r.holds ? "pass" : "FAIL",
                        r.first_mismatch ? std::to_string(*r.first_mismatch) : "-"});
            };
            for (const auto& mp : families) {
                for (unsigned k = 1; k <= verify_max; ++k) emit("T", mp, k, verify_t_identity(mp, k, cap));
                for (unsigned k = 1; k <= verify_max; ++k) emit("U", mp, k, verify_u_identity(mp, k, cap));
                for (unsigned k = 2; k <= verify_max; ++k)
                    emit("derivative", mp, k,
                         compare_exact(derivative_product(mp, k, cap), derivative(build_poly(mp, k, cap))));
            }
            em.scalar("failures", std::to_string(failures));
            em.finish();
            status = failures == 0 ? 0 : 1;
        } else if (*quad) {
            params["max_n"] = quad_max;
            if (quad_max > cap) throw size_limit_error("quadrature: --max-n exceeds the degree cap", cap);
            Emitter em(out, format, "quadrature", params, precision);
            em.header_comment();
            const BigReal half_pi = BigReal::pi(precision) / 2L;
            const BigReal tol = pow2(-(precision - 40), precision);
            em.scalar("tolerance", detail::num(tol));
            em.columns({"m", "n", "nodes", "value", "expected", "abs_error", "result"});
            std::size_t failures = 0;
            for (unsigned m = 0; m <= quad_max; ++m) {
                for (unsigned k = 0; k <= quad_max; ++k) {
                    const auto spec = QuadratureSpec::exact_for(m, k, precision);
                    const BigReal v = orthogonality_integral(m, k, spec);
                    const BigReal expected = m == k ? half_pi : BigReal(precision);
                    const BigReal e = abs(v - expected);
                    const bool ok = e < tol;
                    if (!ok) ++failures;
                    em.row({std::to_string(m), std::to_string(k), std::to_string(spec.node_count), detail::num(v),
                            detail::num(expected), detail::num(e), ok ? "pass" : "FAIL"});
                }
            }
            em.scalar("failures", std::to_string(failures));
            em.finish();
            status = failures == 0 ? 0 : 1;
        } else if (*pi_cmd) {
            params["n"] = n;
            if (n == 0) throw domain_error("pi requires n >= 1");
            Emitter em(out, format, "pi", params, precision);
            em.header_comment();
            const BigReal pi = BigReal::pi(precision);
            em.columns({"n", "value", "error", "error_ratio"});
            std::optional<BigReal> prev;
            for (unsigned k = 1; k <= n; ++k) {
                const BigReal v = pi_approx(k, precision);
                const BigReal e = pi - v;
                em.row({std::to_string(k), detail::num(v), e.to_string(8), prev ? (e / *prev).to_string(8) : "-"});
                prev = e;
            }
            em.finish();
        } else if (*mersenne) {
            params["p"] = p_exp;
            Emitter em(out, format, "mersenne", params, precision);
            em.header_comment();
            const bool prime = mersenne_test(p_exp);
            em.scalar("number", "2^" + std::to_string(p_exp) + "-1");
            em.scalar("prime", prime);
            em.finish();
        } else if (*sequence) {
            params["count"] = count;
            Emitter em(out, format, "sequence", params, precision);
            em.header_comment();
            em.columns({"k", "s_k"});
            unsigned k = 1;
            for (const auto& s : ll_integer_sequence(count)) em.row({std::to_string(k++), s.get_str()});
            em.finish();
        } else if (*plot) {
            params["n"] = n;
            params["half_width"] = half_width;
            params["count"] = count;
            Emitter em(out, format, "plot-data", params, precision);
            em.header_comment();
            const BigReal hw(parse_exact(half_width), precision);
            em.columns({"x", "L_n", "cosine", "abs_diff"});
            for (const auto& r : cosine_compare_samples(n, hw, count))
                em.row({detail::num(r.x), detail::num(r.poly), detail::num(r.cosine), abs(r.poly - r.cosine).to_string(8)});
            em.finish();
        }
        return status;
    } catch (const usage_error& e) {
        err << "llpoly: " << e.what() << '\n';
        return 2;
    } catch (const size_limit_error& e) {
        return report_error("size-limit", e.what(), 1);
    } catch (const llpoly::domain_error& e) {
        return report_error("domain", e.what(), 1);
    } catch (const precondition_error& e) {
        return report_error("precondition", e.what(), 1);
    }
}

} // namespace llpoly::cli
