#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finloc/error.hpp"
#include "finloc/extnat.hpp"
#include "finloc/lattice.hpp"
#include "finloc/prime.hpp"

namespace finloc {

/// Thrown by operations whose precondition is an algebraically central profile.
class NotAlgebraicallyCentral : public std::invalid_argument {
public:
    NotAlgebraicallyCentral()
        : std::invalid_argument("profile is not algebraically central") {}
};

/// K(n)-homology of a map at a single height: zero or an isomorphism.
/// These are the only two values centrality permits.
enum class KnEntry : std::uint8_t { Zero, Iso };

[[nodiscard]] constexpr char to_char(KnEntry e) { return e == KnEntry::Iso ? 'I' : 'Z'; }

/**
 * The K(n)-homology behaviour of a map across all heights 0, 1, 2, ..., inf:
 * an explicit finite prefix plus an eventually-constant tail. The tail value
 * is also the entry at height inf; a profile cannot assign inf a value
 * different from its eventual behaviour.
 *
 * Canonical form (enforced at construction): the prefix does not end with
 * an entry equal to the tail.
 */
class MapProfile {
public:
    MapProfile(std::vector<KnEntry> prefix, KnEntry tail)
        : prefix_(std::move(prefix)), tail_(tail) {
        while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
    }

    [[nodiscard]] static MapProfile all_iso() { return MapProfile({}, KnEntry::Iso); }
    [[nodiscard]] static MapProfile all_zero() { return MapProfile({}, KnEntry::Zero); }

    /// The algebraically central profile of type m: iso below m, zero at
    /// and above m. Type inf is the all-iso profile.
    [[nodiscard]] static MapProfile of_type(ExtNat m) {
        if (m.is_infinite()) return all_iso();
        std::vector<KnEntry> prefix(static_cast<std::size_t>(m.finite_value()),
                                    KnEntry::Iso);
        return MapProfile(std::move(prefix), KnEntry::Zero);
    }

    /// Entry at any extended height; entry(inf) is the tail.
    [[nodiscard]] KnEntry entry(ExtNat height) const {
        if (height.is_finite() && height.finite_value() < prefix_.size()) {
            return prefix_[static_cast<std::size_t>(height.finite_value())];
        }
        return tail_;
    }

    [[nodiscard]] const std::vector<KnEntry>& prefix() const { return prefix_; }
    [[nodiscard]] KnEntry tail() const { return tail_; }

    friend bool operator==(const MapProfile&, const MapProfile&) = default;

private:
    std::vector<KnEntry> prefix_;
    KnEntry tail_;
};

/**
 * Decide algebraic centrality: the profile must be an isomorphism at every
 * height below some threshold m and zero at every height >= m (including
 * inf). Returns the type m when the shape holds, absent otherwise. The
 * all-iso profile has type inf, the all-zero profile type 0.
 */
[[nodiscard]] inline std::optional<ExtNat> is_algebraically_central(
    const MapProfile& profile) {
    for (KnEntry e : profile.prefix()) {
        if (e != KnEntry::Iso) return std::nullopt;
    }
    if (profile.tail() == KnEntry::Zero) {
        return ExtNat{profile.prefix().size()};
    }
    // All-iso tail: canonical form forces an empty prefix.
    return ExtNat::infinity();
}

/// Pointwise tensor rule over a field: iso (x) iso = iso, anything else is
/// zero. Commutative and associative; all-iso is neutral, all-zero absorbs.
[[nodiscard]] inline MapProfile profile_tensor(const MapProfile& a, const MapProfile& b) {
    const std::size_t len = std::max(a.prefix().size(), b.prefix().size());
    std::vector<KnEntry> prefix;
    prefix.reserve(len);
    for (std::size_t n = 0; n < len; ++n) {
        const bool iso = a.entry(ExtNat{n}) == KnEntry::Iso &&
                         b.entry(ExtNat{n}) == KnEntry::Iso;
        prefix.push_back(iso ? KnEntry::Iso : KnEntry::Zero);
    }
    const bool tail_iso =
        a.tail() == KnEntry::Iso && b.tail() == KnEntry::Iso;
    return MapProfile(std::move(prefix), tail_iso ? KnEntry::Iso : KnEntry::Zero);
}

/// N-fold tensor power of a profile. Every profile is a fixed point of the
/// pointwise rule, so the result always equals the input; the operation
/// exists to make that invariance a named, testable fact. N = 0 is rejected.
[[nodiscard]] inline MapProfile tensor_power_profile(const MapProfile& profile,
                                                     std::uint64_t power) {
    if (power == 0) throw DomainError("tensor power must be >= 1");
    MapProfile acc = profile;
    for (std::uint64_t i = 1; i < power; ++i) {
        MapProfile next = profile_tensor(acc, profile);
        if (next == acc) break; // idempotent fold has stabilised
        acc = std::move(next);
    }
    return acc;
}

/// Type of the cofibre of a map with this profile.
[[nodiscard]] inline ExtNat cofibre_type(const MapProfile& profile) {
    const auto m = is_algebraically_central(profile);
    if (!m) throw NotAlgebraicallyCentral{};
    return *m;
}

/**
 * The smashing localisation generated by a map with this profile:
 * type inf gives the identity (every object is already local), type 0
 * gives the zero localisation, and type m with 0 < m < inf gives L_{m-1}^f.
 */
[[nodiscard]] inline PLocalFiniteLoc induced_localisation(const MapProfile& profile) {
    const ExtNat m = cofibre_type(profile);
    if (m.is_infinite()) return PLocalFiniteLoc::identity();
    if (m.finite_value() == 0) return PLocalFiniteLoc::zero();
    return PLocalFiniteLoc::lnf(ExtNat{m.finite_value() - 1});
}

// ============================================================================
// Centrality of a vector over a finite prime field
// ============================================================================

/**
 * A map 1 -> V of F_p-vector spaces, i.e. a vector v in F_p^d with entries
 * reduced into [0, p).
 */
class FieldVector {
public:
    FieldVector(Prime p, std::vector<std::uint64_t> entries)
        : p_(p), entries_(std::move(entries)) {
        for (auto& e : entries_) e %= p_.value();
    }

    [[nodiscard]] Prime characteristic() const { return p_; }
    [[nodiscard]] const std::vector<std::uint64_t>& entries() const { return entries_; }
    [[nodiscard]] std::size_t dimension() const { return entries_.size(); }

    [[nodiscard]] bool is_zero_vector() const {
        for (auto e : entries_) {
            if (e != 0) return false;
        }
        return true;
    }

private:
    Prime p_;
    std::vector<std::uint64_t> entries_;
};

/// Brute-force centrality check: v (x) w = w (x) v for every standard basis
/// vector w, comparing the d x d matrices v w^T and w v^T entrywise. By
/// linearity this decides centrality against all of V.
[[nodiscard]] inline bool vector_central_bruteforce(const FieldVector& v) {
    const std::size_t d = v.dimension();
    const auto& e = v.entries();
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                const std::uint64_t vw = (k == j) ? e[i] : 0; // (v w^T)[i][k]
                const std::uint64_t wv = (i == j) ? e[k] : 0; // (w v^T)[i][k]
                if (vw != wv) return false;
            }
        }
    }
    return true;
}

/// Closed-form prediction: a vector is central iff it is zero or the
/// ambient dimension is at most 1.
[[nodiscard]] inline bool vector_central_predict(const FieldVector& v) {
    return v.is_zero_vector() || v.dimension() <= 1;
}

// ============================================================================
// Profile literals
// ============================================================================

/// Render as the literal syntax: prefix characters, '/', then the tail
/// character. "II/Z" is the type-2 profile; "/I" is all-iso.
[[nodiscard]] inline std::string to_literal(const MapProfile& profile) {
    std::string out;
    out.reserve(profile.prefix().size() + 2);
    for (KnEntry e : profile.prefix()) out.push_back(to_char(e));
    out.push_back('/');
    out.push_back(to_char(profile.tail()));
    return out;
}

/// Parse a profile literal. Only canonical literals are accepted: a prefix
/// ending with the tail character is a parse error, never silently
/// canonicalized.
[[nodiscard]] inline MapProfile parse_profile_literal(std::string_view text) {
    const auto entry_of = [&](std::size_t offset) -> KnEntry {
        const char c = text[offset];
        if (c == 'I') return KnEntry::Iso;
        if (c == 'Z') return KnEntry::Zero;
        throw ParseError(offset, std::string("expected 'I' or 'Z', found '") + c + "'");
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw ParseError(text.size(), "expected '/' before the tail entry");
    }
    std::vector<KnEntry> prefix;
    prefix.reserve(slash);
    for (std::size_t i = 0; i < slash; ++i) prefix.push_back(entry_of(i));
    if (slash + 1 >= text.size()) {
        throw ParseError(text.size(), "expected tail entry 'I' or 'Z'");
    }
    const KnEntry tail = entry_of(slash + 1);
    if (slash + 2 != text.size()) {
        throw ParseError(slash + 2, "trailing input after tail entry");
    }
    if (!prefix.empty() && prefix.back() == tail) {
        throw ParseError(slash - 1, "non-canonical literal: prefix ends with the tail entry");
    }
    return MapProfile(std::move(prefix), tail);
}

} // namespace finloc
