#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "finloc/error.hpp"
#include "finloc/expr.hpp"
#include "finloc/lattice.hpp"
#include "finloc/nilring.hpp"
#include "finloc/prime.hpp"
#include "finloc/profile.hpp"
#include "finloc/valuation.hpp"

namespace finloc {

namespace cli_detail {

inline const char* usage_text =
    "usage: finloc <command> [args]\n"
    "commands:\n"
    "  lattice eval <expr...>                 evaluate a localisation expression\n"
    "  lattice cmp <expr> <expr>              compare two localisations\n"
    "  lattice cc <expr...>                   decide compact centrality\n"
    "  profile check|type|loc <literal>       query a K(n) profile, e.g. \"II/Z\"\n"
    "  val digitsum <n> <p>                   base-p digit sum\n"
    "  val nufact <n> <p>                     p-adic valuation of n!\n"
    "  val nubinom <n> <k> <p>                p-adic valuation of C(n, k)\n"
    "  val pbinom <n> <k> <m> <p>             valuation of C(p^n, m*p^(n-k))\n"
    "  nilp verify -p <p> -j <j> -k <k> -n <n>\n"
    "  nilp minimal -p <p> -j <j> -k <k> --max <bound>\n"
    "  nilp grid -p <p> -j <jmax> -k <kmax> -n <slack>\n";

[[nodiscard]] inline int usage(std::ostream& err) {
    err << usage_text;
    return 2;
}

[[nodiscard]] inline std::string join_words(const std::vector<std::string>& args,
                                            std::size_t from) {
    std::string text;
    for (std::size_t i = from; i < args.size(); ++i) {
        if (i > from) text += ' ';
        text += args[i];
    }
    return text;
}

[[nodiscard]] inline std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError(std::string(what) + " '" + text + "' is not a valid integer");
    }
    return value;
}

[[nodiscard]] inline BigInt parse_bigint(const std::string& text, const char* what) {
    if (text.empty()) throw DomainError(std::string(what) + " is empty");
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw DomainError(std::string(what) + " '" + text +
                              "' is not a nonnegative integer");
        }
    }
    return BigInt(text, 10);
}

struct NilpFlags {
    std::optional<Prime> p;
    std::optional<std::uint64_t> j, k, n, max;
};

[[nodiscard]] inline NilpFlags parse_nilp_flags(const std::vector<std::string>& args,
                                                std::size_t from) {
    NilpFlags flags;
    for (std::size_t i = from; i < args.size(); i += 2) {
        if (i + 1 >= args.size()) {
            throw DomainError("flag " + args[i] + " is missing a value");
        }
        const std::string& flag = args[i];
        const std::string& value = args[i + 1];
        if (flag == "-p") {
            flags.p = Prime(parse_u64(value, "-p"));
        } else if (flag == "-j") {
            flags.j = parse_u64(value, "-j");
        } else if (flag == "-k") {
            flags.k = parse_u64(value, "-k");
        } else if (flag == "-n") {
            flags.n = parse_u64(value, "-n");
        } else if (flag == "--max") {
            flags.max = parse_u64(value, "--max");
        } else {
            throw DomainError("unknown flag " + flag);
        }
    }
    return flags;
}

[[nodiscard]] inline std::uint32_t narrow_u32(std::uint64_t v, const char* what) {
    if (v > UINT32_MAX) throw DomainError(std::string(what) + " too large");
    return static_cast<std::uint32_t>(v);
}

inline int run_lattice(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    if (args.size() < 3) return usage(err);
    const std::string& sub = args[1];
    if (sub == "eval") {
        const auto loc = eval_lattice(parse_lattice_expr(join_words(args, 2)));
        out << "loc=" << to_expr_string(loc) << "\n";
        return 0;
    }
    if (sub == "cmp") {
        if (args.size() != 4) return usage(err);
        const auto f = eval_lattice(parse_lattice_expr(args[2]));
        const auto g = eval_lattice(parse_lattice_expr(args[3]));
        const bool le = leq(f, g);
        const bool ge = leq(g, f);
        const char* verdict = le && ge ? "eq" : le ? "le" : ge ? "ge" : "incomparable";
        out << "cmp=" << verdict << "\n";
        return 0;
    }
    if (sub == "cc") {
        const auto loc = eval_lattice(parse_lattice_expr(join_words(args, 2)));
        const bool cc = is_compactly_central(loc);
        out << "cc=" << (cc ? "true" : "false") << "\n";
        return cc ? 0 : 1;
    }
    return usage(err);
}

inline int run_profile(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    if (args.size() != 3) return usage(err);
    const std::string& sub = args[1];
    const MapProfile profile = parse_profile_literal(args[2]);
    const auto type = is_algebraically_central(profile);
    if (sub == "check") {
        if (type) {
            out << "central=true type=" << to_string(*type) << "\n";
            return 0;
        }
        out << "central=false\n";
        return 1;
    }
    if (sub == "type" || sub == "loc") {
        if (!type) {
            err << "error: profile is not algebraically central\n";
            return 1;
        }
        if (sub == "type") {
            out << "type=" << to_string(*type) << "\n";
        } else {
            out << "type=" << to_string(*type)
                << " loc=" << to_string(induced_localisation(profile)) << "\n";
        }
        return 0;
    }
    return usage(err);
}

inline int run_val(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    if (args.size() < 3) return usage(err);
    const std::string& sub = args[1];
    if (sub == "digitsum" && args.size() == 4) {
        const Prime p(parse_u64(args[3], "prime"));
        const BigInt value = digit_sum(parse_bigint(args[2], "n"), p);
        out << "s=" << value.get_str() << "\n";
        return 0;
    }
    if (sub == "nufact" && args.size() == 4) {
        const Prime p(parse_u64(args[3], "prime"));
        const BigInt value = nu_factorial(parse_bigint(args[2], "n"), p);
        out << "nu=" << value.get_str() << "\n";
        return 0;
    }
    if (sub == "nubinom" && args.size() == 5) {
        const Prime p(parse_u64(args[4], "prime"));
        const BigInt n = parse_bigint(args[2], "n");
        const BigInt k = parse_bigint(args[3], "k");
        const BigInt value = nu_binom(n, k, p);
        out << "nu=" << value.get_str() << "\n";
        return 0;
    }
    if (sub == "pbinom" && args.size() == 6) {
        const Prime p(parse_u64(args[5], "prime"));
        const auto n = parse_u64(args[2], "n");
        const auto k = parse_u64(args[3], "k");
        const BigInt m = parse_bigint(args[4], "m");
        const BigInt value = nu_binom_power(n, k, m, p);
        out << "nu=" << value.get_str() << "\n";
        return 0;
    }
    return usage(err);
}

inline int run_nilp(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
    if (args.size() < 2) return usage(err);
    const std::string& sub = args[1];
    const NilpFlags flags = parse_nilp_flags(args, 2);
    if (sub == "verify") {
        if (!flags.p || !flags.j || !flags.k || !flags.n) return usage(err);
        const std::uint32_t j = narrow_u32(*flags.j, "-j");
        const std::uint32_t k = narrow_u32(*flags.k, "-k");
        const bool zero = verify_nilp_diff(*flags.p, j, k, *flags.n);
        const bool bound_met = *flags.n >= static_cast<std::uint64_t>(j) + k;
        out << "zero=" << (zero ? "true" : "false")
            << " bound_met=" << (bound_met ? "true" : "false") << "\n";
        return zero ? 0 : 1;
    }
    if (sub == "minimal") {
        if (!flags.p || !flags.j || !flags.k || !flags.max) return usage(err);
        const auto result = minimal_n(*flags.p, narrow_u32(*flags.j, "-j"),
                                      narrow_u32(*flags.k, "-k"), *flags.max);
        if (result) {
            out << "minimal=" << *result << "\n";
            return 0;
        }
        out << "minimal=none\n";
        return 1;
    }
    if (sub == "grid") {
        if (!flags.p || !flags.j || !flags.k || !flags.n) return usage(err);
        const std::uint32_t jmax = narrow_u32(*flags.j, "-j");
        const std::uint32_t kmax = narrow_u32(*flags.k, "-k");
        std::uint64_t cases = 0;
        bool ok = true;
        for (std::uint32_t j = 1; j <= jmax; ++j) {
            for (std::uint32_t k = 0; k <= kmax; ++k) {
                const std::uint64_t bound = static_cast<std::uint64_t>(j) + k + *flags.n;
                for (std::uint64_t n = 0; n <= bound; ++n) {
                    ++cases;
                    const bool zero = verify_nilp_diff(*flags.p, j, k, n);
                    if (termwise_check(*flags.p, j, k, n) != zero) ok = false;
                    if (n >= static_cast<std::uint64_t>(j) + k && !zero) ok = false;
                }
            }
        }
        out << "cases=" << cases << " ok=" << (ok ? "true" : "false") << "\n";
        return ok ? 0 : 1;
    }
    return usage(err);
}

} // namespace cli_detail

/**
 * Command dispatch. Exit code 0 on success or a true verdict, 1 on a false
 * verdict or failed verification, 2 on usage or parse errors. All output is
 * line-oriented key=value fields and fully deterministic.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    try {
        if (args.empty()) return cli_detail::usage(err);
        const std::string& command = args[0];
        if (command == "lattice") return cli_detail::run_lattice(args, out, err);
        if (command == "profile") return cli_detail::run_profile(args, out, err);
        if (command == "val") return cli_detail::run_val(args, out, err);
        if (command == "nilp") return cli_detail::run_nilp(args, out, err);
        return cli_detail::usage(err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrimeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroLiftError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace finloc
