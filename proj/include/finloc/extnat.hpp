#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace finloc {

/**
 * An extended natural number: an element of {0, 1, 2, ...} ∪ {inf}.
 *
 * Heights, types of finite complexes and the per-prime parameters of a
 * finite localisation all take values here. Infinity is the maximum
 * element, so min(x, inf) = x and max(x, inf) = inf for every x.
 */
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t value) : finite_(value) {}

    [[nodiscard]] static constexpr ExtNat infinity() {
        ExtNat n;
        n.infinite_ = true;
        return n;
    }

    [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
    [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

    /// The finite value; must not be called on infinity.
    [[nodiscard]] constexpr std::uint64_t finite_value() const { return finite_; }

    friend constexpr bool operator==(ExtNat a, ExtNat b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.finite_ == b.finite_;
    }

    friend constexpr std::strong_ordering operator<=>(ExtNat a, ExtNat b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.finite_ <=> b.finite_;
    }

private:
    std::uint64_t finite_ = 0;
    bool infinite_ = false;
};

[[nodiscard]] constexpr ExtNat min(ExtNat a, ExtNat b) { return a <= b ? a : b; }
[[nodiscard]] constexpr ExtNat max(ExtNat a, ExtNat b) { return a >= b ? a : b; }

/// Decimal digits for finite values, "inf" for infinity.
[[nodiscard]] inline std::string to_string(ExtNat n) {
    return n.is_infinite() ? "inf" : std::to_string(n.finite_value());
}

} // namespace finloc
