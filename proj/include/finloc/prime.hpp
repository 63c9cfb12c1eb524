#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace finloc {

/// Thrown when a value that must be prime fails the primality test.
class PrimeError : public std::invalid_argument {
public:
    explicit PrimeError(std::uint64_t value)
        : std::invalid_argument(std::to_string(value) + " is not prime"), value_(value) {}

    [[nodiscard]] std::uint64_t value() const { return value_; }

private:
    std::uint64_t value_;
};

namespace detail {

[[nodiscard]] constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b,
                                              std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

[[nodiscard]] constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp,
                                              std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

inline constexpr std::uint64_t mr_witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace detail

/// Deterministic Miller-Rabin over the fixed witness set
/// {2,...,37}, exact for all 64-bit inputs.
[[nodiscard]] constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : detail::mr_witnesses) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : detail::mr_witnesses) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/**
 * A prime number, validated eagerly at construction. Invalid integers are
 * rejected with PrimeError, never silently accepted.
 */
class Prime {
public:
    explicit Prime(std::uint64_t value) : value_(value) {
        if (!is_prime(value)) throw PrimeError(value);
    }

    [[nodiscard]] std::uint64_t value() const { return value_; }

    friend bool operator==(Prime, Prime) = default;
    friend std::strong_ordering operator<=>(Prime, Prime) = default;

private:
    std::uint64_t value_;
};

[[nodiscard]] inline std::string to_string(Prime p) { return std::to_string(p.value()); }

} // namespace finloc
