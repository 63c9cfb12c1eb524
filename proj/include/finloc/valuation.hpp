#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "finloc/error.hpp"
#include "finloc/prime.hpp"

namespace finloc {

using BigInt = mpz_class;

namespace detail {

inline void require_nonnegative(const BigInt& n, const char* name) {
    if (sgn(n) < 0) throw DomainError(std::string(name) + " must be nonnegative");
}

/// Exact division; a remainder falsifies the valuation identity being
/// computed, so it is a hard failure rather than a truncation.
[[nodiscard]] inline BigInt exact_divide(const BigInt& numerator, unsigned long divisor) {
    if (!mpz_divisible_ui_p(numerator.get_mpz_t(), divisor)) {
        throw std::logic_error("exact division failed: " + numerator.get_str() +
                               " not divisible by " + std::to_string(divisor));
    }
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), numerator.get_mpz_t(), divisor);
    return q;
}

} // namespace detail

/// s_p(n): the sum of the digits of n written in base p.
[[nodiscard]] inline BigInt digit_sum(const BigInt& n, Prime p) {
    detail::require_nonnegative(n, "n");
    BigInt sum = 0;
    BigInt t = n;
    while (sgn(t) > 0) {
        sum += mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), p.value());
    }
    return sum;
}

/// nu_p(n!) by the digit-sum formula (n - s_p(n)) / (p - 1).
[[nodiscard]] inline BigInt nu_factorial(const BigInt& n, Prime p) {
    detail::require_nonnegative(n, "n");
    return detail::exact_divide(n - digit_sum(n, p), p.value() - 1);
}

/// nu_p(n!) by the sum-of-floors expansion sum_{j>=1} floor(n / p^j),
/// computed by repeated division. Independent oracle for nu_factorial.
[[nodiscard]] inline BigInt nu_factorial_oracle(const BigInt& n, Prime p) {
    detail::require_nonnegative(n, "n");
    BigInt acc = 0;
    BigInt t = n;
    for (;;) {
        mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), p.value());
        if (sgn(t) == 0) break;
        acc += t;
    }
    return acc;
}

/// nu_p(C(n, k)) = (s_p(k) + s_p(n-k) - s_p(n)) / (p - 1). Agrees with
/// nu_factorial(n) - nu_factorial(k) - nu_factorial(n-k) and with the
/// carry count of k + (n-k) in base p.
[[nodiscard]] inline BigInt nu_binom(const BigInt& n, const BigInt& k, Prime p) {
    detail::require_nonnegative(n, "n");
    detail::require_nonnegative(k, "k");
    if (k > n) throw DomainError("binomial requires k <= n");
    const BigInt numerator = digit_sum(k, p) + digit_sum(n - k, p) - digit_sum(n, p);
    if (sgn(numerator) < 0) {
        throw std::logic_error("negative digit-sum excess for C(" + n.get_str() + "," +
                               k.get_str() + ")");
    }
    return detail::exact_divide(numerator, p.value() - 1);
}

/// Number of carries when adding a and b in base p (Kummer-style oracle
/// for nu_binom).
[[nodiscard]] inline BigInt carries_in_addition(const BigInt& a, const BigInt& b, Prime p) {
    detail::require_nonnegative(a, "a");
    detail::require_nonnegative(b, "b");
    BigInt count = 0;
    BigInt x = a;
    BigInt y = b;
    unsigned long carry = 0;
    while (sgn(x) > 0 || sgn(y) > 0 || carry != 0) {
        const unsigned long dx = mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), p.value());
        const unsigned long dy = mpz_fdiv_q_ui(y.get_mpz_t(), y.get_mpz_t(), p.value());
        carry = (static_cast<__uint128_t>(dx) + dy + carry >= p.value()) ? 1 : 0;
        count += carry;
    }
    return count;
}

/**
 * nu_p(C(p^n, m * p^{n-k})) for 0 <= k <= n, 1 <= m < p^k, p not dividing m.
 * The value is always exactly k; the computed valuation is asserted against
 * that before returning. Note k = 0 leaves no legal m.
 */
[[nodiscard]] inline BigInt nu_binom_power(unsigned long n, unsigned long k,
                                           const BigInt& m, Prime p) {
    if (k > n) throw DomainError("requires k <= n");
    BigInt pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
    if (m < 1 || m >= pk) throw DomainError("requires 1 <= m < p^k");
    if (mpz_divisible_ui_p(m.get_mpz_t(), p.value())) {
        throw DomainError("requires p not dividing m");
    }
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p.value(), n);
    BigInt shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), p.value(), n - k);
    const BigInt value = nu_binom(pn, m * shift, p);
    if (value != k) {
        throw std::logic_error("power-binomial valuation mismatch: got " +
                               value.get_str() + ", expected " + std::to_string(k));
    }
    return value;
}

} // namespace finloc
