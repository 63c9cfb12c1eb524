// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "finloc/cli.hpp"
#include "finloc/expr.hpp"
#include "finloc/lattice.hpp"
#include "finloc/nilring.hpp"
#include "finloc/profile.hpp"
#include "finloc/valuation.hpp"
#include "support.hpp"

using namespace finloc;

namespace {

struct Failure {
    std::string detail;
    bool failed = false;

    void operator()(const std::string& what) {
        if (!failed) detail = what; // keep the first counterexample
        failed = true;
    }
};

// --------------------------------------------------------------------------
// 1. Factorial and binomial valuations vs their oracles, n <= 10^4.
// --------------------------------------------------------------------------
bool criterion_valuations(Failure& fail) {
    const std::vector<Prime> primes = {Prime(2), Prime(3), Prime(5), Prime(7)};
    constexpr int kMaxN = 10000;

    for (Prime p : primes) {
        for (int n = 0; n <= kMaxN; ++n) {
            if (nu_factorial(n, p) != nu_factorial_oracle(n, p)) {
                fail("nu_factorial mismatch at n=" + std::to_string(n) +
                     " p=" + std::to_string(p.value()));
                return false;
            }
        }
    }

    const auto check_binom = [&](long n, long k, Prime p) {
        const BigInt v = nu_binom(n, k, p);
        if (v != carries_in_addition(k, n - k, p)) {
            fail("nu_binom vs carries at n=" + std::to_string(n) +
                 " k=" + std::to_string(k) + " p=" + std::to_string(p.value()));
            return false;
        }
        if (v != nu_factorial(n, p) - nu_factorial(k, p) - nu_factorial(n - k, p)) {
            fail("nu_binom vs factorial difference at n=" + std::to_string(n) +
                 " k=" + std::to_string(k) + " p=" + std::to_string(p.value()));
            return false;
        }
        return true;
    };

    std::mt19937_64 rng(1644934);
    for (Prime p : primes) {
        for (long n = 0; n <= 250; ++n) { // exhaustive at small scale
            for (long k = 0; k <= n; ++k) {
                if (!check_binom(n, k, p)) return false;
            }
        }
        for (long n = 0; n <= kMaxN; ++n) { // sampled k across the full range
            std::uniform_int_distribution<long> k_dist(0, n);
            const long samples[] = {0, 1, n / 2, n - 1, n,
                                    k_dist(rng), k_dist(rng), k_dist(rng)};
            for (long k : samples) {
                if (k < 0 || k > n) continue;
                if (!check_binom(n, k, p)) return false;
            }
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 2. Valuation of C(p^n, m p^{n-k}) is exactly k on the full legal grid.
// --------------------------------------------------------------------------
bool criterion_power_binomials(Failure& fail) {
    for (Prime p : {Prime(2), Prime(3), Prime(5)}) {
        for (unsigned long n = 0; n <= 6; ++n) {
            BigInt pn;
            mpz_ui_pow_ui(pn.get_mpz_t(), p.value(), n);
            for (unsigned long k = 1; k <= n; ++k) {
                BigInt pk;
                mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
                for (BigInt m = 1; m < pk; ++m) {
                    if (mpz_divisible_ui_p(m.get_mpz_t(), p.value())) continue;
                    BigInt v;
                    try {
                        v = nu_binom_power(n, k, m, p);
                    } catch (const std::exception& e) {
                        fail(std::string("nu_binom_power rejected a legal input: ") +
                             e.what());
                        return false;
                    }
                    if (v != k) {
                        fail("nu_binom_power != k at p=" + std::to_string(p.value()) +
                             " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " m=" + m.get_str());
                        return false;
                    }
                    if (pn <= 729) { // cross-check against direct factorization
                        BigInt shift;
                        mpz_ui_pow_ui(shift.get_mpz_t(), p.value(), n - k);
                        BigInt binom;
                        const BigInt lower = m * shift;
                        mpz_bin_uiui(binom.get_mpz_t(), pn.get_ui(), lower.get_ui());
                        unsigned long direct = 0;
                        while (mpz_divisible_ui_p(binom.get_mpz_t(), p.value())) {
                            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                            p.value());
                            ++direct;
                        }
                        if (direct != k) {
                            fail("direct factorization disagrees at p=" +
                                 std::to_string(p.value()) + " n=" + std::to_string(n) +
                                 " k=" + std::to_string(k) + " m=" + m.get_str());
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 3. The commutation identity in (Z/p^j)[y, eps]/(eps^{p^k}).
// --------------------------------------------------------------------------
bool criterion_nilpotence(Failure& fail) {
    for (Prime p : {Prime(2), Prime(3), Prime(5)}) {
        for (std::uint32_t j = 1; j <= 3; ++j) {
            for (std::uint32_t k = 0; k <= 3; ++k) {
                const std::uint64_t bound = static_cast<std::uint64_t>(j) + k;
                for (std::uint64_t n = 0; n <= bound + 2; ++n) {
                    const bool zero = verify_nilp_diff(p, j, k, n);
                    if (n >= bound && !zero) {
                        fail("difference nonzero at p=" + std::to_string(p.value()) +
                             " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                             " n=" + std::to_string(n));
                        return false;
                    }
                    if (termwise_check(p, j, k, n) != zero) {
                        fail("termwise/global disagreement at p=" +
                             std::to_string(p.value()) + " j=" + std::to_string(j) +
                             " k=" + std::to_string(k) + " n=" + std::to_string(n));
                        return false;
                    }
                }

                const TruncParams params(p, j, k);
                for (std::uint64_t n = 0;; ++n) {
                    BigInt pn;
                    mpz_ui_pow_ui(pn.get_mpz_t(), p.value(), n);
                    if (pn > 64) break;
                    if (!(binomial_difference_fast(params, n) ==
                          binomial_difference_oracle(params, n))) {
                        fail("fast/oracle disagreement at p=" +
                             std::to_string(p.value()) + " j=" + std::to_string(j) +
                             " k=" + std::to_string(k) + " n=" + std::to_string(n));
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 4. Central vectors over F_2 and F_3 are exactly the zero or dim <= 1 ones.
// --------------------------------------------------------------------------
bool criterion_centrality(Failure& fail) {
    for (Prime p : {Prime(2), Prime(3)}) {
        for (std::size_t dim = 0; dim <= 3; ++dim) {
            std::vector<std::uint64_t> entries(dim, 0);
            for (;;) {
                const FieldVector v(p, entries);
                if (vector_central_bruteforce(v) != vector_central_predict(v)) {
                    std::string repr;
                    for (auto e : entries) repr += std::to_string(e);
                    fail("centrality disagreement over F_" + std::to_string(p.value()) +
                         " at (" + repr + ")");
                    return false;
                }
                std::size_t i = 0;
                while (i < dim && ++entries[i] == p.value()) {
                    entries[i] = 0;
                    ++i;
                }
                if (i == dim) break;
            }
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 5. Induced localisations: type m -> L_{m-1}^f and tensor-to-composition.
// --------------------------------------------------------------------------
bool criterion_induced_localisation(Failure& fail) {
    std::vector<ExtNat> types;
    for (std::uint64_t m = 0; m <= 20; ++m) types.emplace_back(m);
    types.push_back(ExtNat::infinity());

    for (ExtNat m : types) {
        const auto loc = induced_localisation(MapProfile::of_type(m));
        PLocalFiniteLoc expected = PLocalFiniteLoc::zero();
        if (m.is_infinite()) {
            expected = PLocalFiniteLoc::identity();
        } else if (m.finite_value() > 0) {
            expected = PLocalFiniteLoc::lnf(ExtNat{m.finite_value() - 1});
        }
        if (!(loc == expected)) {
            fail("induced localisation wrong at type " + to_string(m));
            return false;
        }
    }

    std::vector<ExtNat> pair_types;
    for (std::uint64_t m = 0; m <= 10; ++m) pair_types.emplace_back(m);
    pair_types.push_back(ExtNat::infinity());
    for (ExtNat m1 : pair_types) {
        for (ExtNat m2 : pair_types) {
            const auto a = MapProfile::of_type(m1);
            const auto b = MapProfile::of_type(m2);
            if (!(induced_localisation(profile_tensor(a, b)) ==
                  compose(induced_localisation(a), induced_localisation(b)))) {
                fail("tensor/composition mismatch at types " + to_string(m1) + ", " +
                     to_string(m2));
                return false;
            }
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 6. Compact centrality classification and the lattice laws at random.
// --------------------------------------------------------------------------
bool criterion_lattice(Failure& fail) {
    if (is_compactly_central(GlobalFiniteLoc::rationalisation())) {
        fail("rationalisation must not be compactly central");
        return false;
    }
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        if (is_compactly_central(GlobalFiniteLoc::p_localisation(Prime(q)))) {
            fail("p-localisation at " + std::to_string(q) +
                 " must not be compactly central");
            return false;
        }
    }
    if (!is_compactly_central(GlobalFiniteLoc::identity()) ||
        !is_compactly_central(GlobalFiniteLoc::zero())) {
        fail("identity and zero must be compactly central");
        return false;
    }

    std::mt19937_64 rng(2685452);
    for (int iter = 0; iter < 500; ++iter) { // finite meets of lifts
        auto acc = GlobalFiniteLoc::identity();
        std::uniform_int_distribution<int> count_dist(1, 4);
        const int count = count_dist(rng);
        std::vector<Prime> primes = testsupport::prime_pool();
        std::shuffle(primes.begin(), primes.end(), rng);
        for (int i = 0; i < count; ++i) {
            acc = meet(acc, lift_to_global(primes[static_cast<std::size_t>(i)],
                                           PLocalFiniteLoc::lnf(
                                               testsupport::random_extnat(rng))));
        }
        if (!is_compactly_central(acc)) {
            fail("a finite meet of lifts must be compactly central");
            return false;
        }
    }

    if (!(compose(GlobalFiniteLoc::p_localisation(Prime(2)),
                  GlobalFiniteLoc::p_localisation(Prime(3))) ==
          GlobalFiniteLoc::rationalisation())) {
        fail("composing localisations at 2 and 3 must give rationalisation");
        return false;
    }

    for (int iter = 0; iter < 10000; ++iter) {
        const auto f = testsupport::random_global(rng);
        const auto g = testsupport::random_global(rng);
        const auto h = testsupport::random_global(rng);
        const bool absorption =
            join(f, meet(f, g)) == f && meet(f, join(f, g)) == f;
        const bool distributivity =
            meet(f, join(g, h)) == join(meet(f, g), meet(f, h));
        const bool order_consistency =
            (leq(f, g) == (meet(f, g) == f)) && (leq(f, g) == (join(f, g) == g));
        if (!absorption || !distributivity || !order_consistency) {
            fail("lattice law violated at iteration " + std::to_string(iter) + " (" +
                 to_expr_string(f) + ", " + to_expr_string(g) + ", " +
                 to_expr_string(h) + ")");
            return false;
        }
    }
    return true;
}

// --------------------------------------------------------------------------
// 7. The documented command lines, byte for byte.
// --------------------------------------------------------------------------
bool criterion_cli(Failure& fail) {
    struct Case {
        std::vector<std::string> argv;
        std::string expected_out;
        int expected_code;
    };
    const std::vector<Case> cases = {
        {{"lattice", "cc", "rat"}, "cc=false\n", 1},
        {{"profile", "loc", "II/Z"}, "type=2 loc=LnF(1)\n", 0},
        {{"nilp", "verify", "-p", "2", "-j", "1", "-k", "1", "-n", "2"},
         "zero=true bound_met=true\n",
         0},
    };
    for (const auto& c : cases) {
        std::ostringstream out, err;
        const int code = run(c.argv, out, err);
        if (code != c.expected_code || out.str() != c.expected_out) {
            std::string cmd;
            for (const auto& a : c.argv) cmd += a + " ";
            fail("CLI mismatch for `" + cmd + "`: got code " + std::to_string(code) +
                 ", output \"" + out.str() + "\"");
            return false;
        }
    }
    return true;
}

struct Criterion {
    std::string name;
    bool (*check)(Failure&);
    double time_limit_s; // 0 = no limit stated
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"valuation formulas agree with oracles up to n=10^4", criterion_valuations, 10.0},
        {"power-binomial valuations are exact on the legal grid", criterion_power_binomials,
         0.0},
        {"truncated-ring commutation identity holds with termwise/oracle agreement",
         criterion_nilpotence, 30.0},
        {"vector centrality dichotomy is exhaustive over F_2, F_3", criterion_centrality,
         0.0},
        {"induced localisations map types to heights and respect tensor",
         criterion_induced_localisation, 0.0},
        {"compact centrality classification and lattice laws", criterion_lattice, 10.0},
        {"documented CLI invocations are byte-exact", criterion_cli, 0.0},
    };

    bool all_passed = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Failure fail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = c.check(fail);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (ok && c.time_limit_s > 0.0 && elapsed >= c.time_limit_s) {
            ok = false;
            fail("exceeded the " + std::to_string(c.time_limit_s) + "s budget");
        }
        all_passed = all_passed && ok;
        std::cout << "criterion " << (i + 1) << " [" << (ok ? "PASS" : "FAIL") << "] "
                  << c.name << " (" << std::fixed << std::setprecision(2) << elapsed
                  << "s)";
        if (!ok) std::cout << " -- " << fail.detail;
        std::cout << "\n";
    }
    std::cout << (all_passed ? "all criteria passed" : "ACCEPTANCE FAILED") << "\n";
    return all_passed ? 0 : 1;
}
