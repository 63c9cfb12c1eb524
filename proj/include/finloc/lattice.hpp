#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finloc/error.hpp"
#include "finloc/extnat.hpp"
#include "finloc/prime.hpp"

namespace finloc {

/// Thrown by lift_to_global when asked to lift the zero localisation;
/// the caller must use GlobalFiniteLoc::zero() directly instead.
class ZeroLiftError : public std::invalid_argument {
public:
    ZeroLiftError() : std::invalid_argument("cannot lift the zero localisation") {}
};

// ============================================================================
// Finite localisations of p-local spectra
// ============================================================================

/**
 * A finite localisation of p-local spectra: either the zero localisation
 * or L_n^f for a height 0 <= n <= inf. L_inf^f is the identity.
 *
 * The order is total (reverse inclusion of acyclics):
 *   zero < L_0^f < L_1^f < ... < L_inf^f.
 */
class PLocalFiniteLoc {
public:
    [[nodiscard]] static PLocalFiniteLoc zero() { return PLocalFiniteLoc{std::nullopt}; }
    [[nodiscard]] static PLocalFiniteLoc lnf(ExtNat height) {
        return PLocalFiniteLoc{height};
    }
    [[nodiscard]] static PLocalFiniteLoc identity() { return lnf(ExtNat::infinity()); }

    [[nodiscard]] bool is_zero() const { return !height_.has_value(); }

    /// Height n of L_n^f; must not be called on the zero localisation.
    [[nodiscard]] ExtNat height() const { return *height_; }

    friend bool operator==(const PLocalFiniteLoc&, const PLocalFiniteLoc&) = default;

private:
    explicit PLocalFiniteLoc(std::optional<ExtNat> height) : height_(height) {}

    std::optional<ExtNat> height_;
};

/// Composite localisation: zero absorbs, otherwise the pointwise minimum
/// of heights (acyclics are generated by the union of the acyclics).
[[nodiscard]] inline PLocalFiniteLoc compose(const PLocalFiniteLoc& a,
                                             const PLocalFiniteLoc& b) {
    if (a.is_zero() || b.is_zero()) return PLocalFiniteLoc::zero();
    return PLocalFiniteLoc::lnf(min(a.height(), b.height()));
}

/// Total order: zero below everything, heights compared as extended naturals.
[[nodiscard]] inline bool leq(const PLocalFiniteLoc& a, const PLocalFiniteLoc& b) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    return a.height() <= b.height();
}

[[nodiscard]] inline std::string to_string(const PLocalFiniteLoc& loc) {
    if (loc.is_zero()) return "zero";
    return "LnF(" + to_string(loc.height()) + ")";
}

// ============================================================================
// Finite localisations of spectra
// ============================================================================

/**
 * A finite localisation of spectra: the zero localisation, or a family of
 * per-prime parameters {n_p} with 0 <= n_p <= inf, stored as a default
 * value plus a finite exception map.
 *
 * Canonical form is enforced at construction: exception keys are distinct
 * primes in ascending order and no exception equals the default, so
 * equality is structural. Values are immutable after construction.
 *
 * The representation covers every named example (p-localisations,
 * rationalisation, the identity, all cofinitely-identity families) and is
 * closed under pointwise min and max; parameter families outside this
 * class are not representable.
 */
class GlobalFiniteLoc {
public:
    using ExceptionList = std::vector<std::pair<Prime, ExtNat>>;

    [[nodiscard]] static GlobalFiniteLoc zero() { return GlobalFiniteLoc{}; }

    [[nodiscard]] static GlobalFiniteLoc params(ExtNat default_height,
                                                ExceptionList exceptions = {}) {
        std::sort(exceptions.begin(), exceptions.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < exceptions.size(); ++i) {
            if (exceptions[i - 1].first == exceptions[i].first) {
                throw DomainError("duplicate exception prime " +
                                  to_string(exceptions[i].first));
            }
        }
        std::erase_if(exceptions,
                      [&](const auto& e) { return e.second == default_height; });
        GlobalFiniteLoc loc;
        loc.default_ = default_height;
        loc.exceptions_ = std::move(exceptions);
        return loc;
    }

    /// All parameters infinite: the identity localisation.
    [[nodiscard]] static GlobalFiniteLoc identity() {
        return params(ExtNat::infinity());
    }

    /// All parameters zero: rationalisation.
    [[nodiscard]] static GlobalFiniteLoc rationalisation() { return params(0); }

    /// Keep only the prime p: n_p = inf, n_q = 0 for q != p.
    [[nodiscard]] static GlobalFiniteLoc p_localisation(Prime p) {
        return params(0, {{p, ExtNat::infinity()}});
    }

    [[nodiscard]] bool is_zero() const { return !default_.has_value(); }

    /// Default parameter; must not be called on the zero localisation.
    [[nodiscard]] ExtNat default_height() const { return *default_; }

    /// Canonical exception map, primes ascending; empty on zero.
    [[nodiscard]] const ExceptionList& exceptions() const { return exceptions_; }

    /// Parameter n_p; must not be called on the zero localisation.
    [[nodiscard]] ExtNat param_at(Prime p) const {
        for (const auto& [q, n] : exceptions_) {
            if (q == p) return n;
        }
        return *default_;
    }

    friend bool operator==(const GlobalFiniteLoc&, const GlobalFiniteLoc&) = default;

private:
    GlobalFiniteLoc() = default;

    std::optional<ExtNat> default_;
    ExceptionList exceptions_;
};

namespace detail {

/// Union of the exception primes of two nonzero families, ascending.
[[nodiscard]] inline std::vector<Prime> exception_primes(const GlobalFiniteLoc& f,
                                                         const GlobalFiniteLoc& g) {
    std::vector<Prime> primes;
    primes.reserve(f.exceptions().size() + g.exceptions().size());
    for (const auto& [p, n] : f.exceptions()) primes.push_back(p);
    for (const auto& [p, n] : g.exceptions()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

template <typename Combine>
[[nodiscard]] GlobalFiniteLoc pointwise(const GlobalFiniteLoc& f, const GlobalFiniteLoc& g,
                                        Combine combine) {
    GlobalFiniteLoc::ExceptionList exceptions;
    for (Prime p : exception_primes(f, g)) {
        exceptions.emplace_back(p, combine(f.param_at(p), g.param_at(p)));
    }
    return GlobalFiniteLoc::params(combine(f.default_height(), g.default_height()),
                                   std::move(exceptions));
}

} // namespace detail

/// Composite localisation: zero absorbs; otherwise the pointwise minimum of
/// the parameter families. Commutative, associative, idempotent, with the
/// identity localisation neutral. This is also the lattice meet.
[[nodiscard]] inline GlobalFiniteLoc compose(const GlobalFiniteLoc& f,
                                             const GlobalFiniteLoc& g) {
    if (f.is_zero() || g.is_zero()) return GlobalFiniteLoc::zero();
    return detail::pointwise(f, g, [](ExtNat a, ExtNat b) { return min(a, b); });
}

[[nodiscard]] inline GlobalFiniteLoc meet(const GlobalFiniteLoc& f,
                                          const GlobalFiniteLoc& g) {
    return compose(f, g);
}

/// Lattice join (intersection of acyclics): pointwise maximum of the
/// parameter families, with zero neutral.
[[nodiscard]] inline GlobalFiniteLoc join(const GlobalFiniteLoc& f,
                                          const GlobalFiniteLoc& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    return detail::pointwise(f, g, [](ExtNat a, ExtNat b) { return max(a, b); });
}

/// Partial order by reverse inclusion of acyclics: zero is minimal and
/// nonzero families compare pointwise. Decidable from the defaults plus
/// the finite union of exception primes.
[[nodiscard]] inline bool leq(const GlobalFiniteLoc& f, const GlobalFiniteLoc& g) {
    if (f.is_zero()) return true;
    if (g.is_zero()) return false;
    if (!(f.default_height() <= g.default_height())) return false;
    for (Prime p : detail::exception_primes(f, g)) {
        if (!(f.param_at(p) <= g.param_at(p))) return false;
    }
    return true;
}

/// Behaviour at the prime p. The family is zero iff its restriction at one
/// (equivalently every) prime is zero.
[[nodiscard]] inline PLocalFiniteLoc restrict_at(const GlobalFiniteLoc& f, Prime p) {
    if (f.is_zero()) return PLocalFiniteLoc::zero();
    return PLocalFiniteLoc::lnf(f.param_at(p));
}

/**
 * Lift a nonzero p-local finite localisation L_n^f to the localisation of
 * spectra restricting to it at p and to the identity at every other prime.
 * Lifting the zero localisation is rejected with ZeroLiftError.
 */
[[nodiscard]] inline GlobalFiniteLoc lift_to_global(Prime p, const PLocalFiniteLoc& loc) {
    if (loc.is_zero()) throw ZeroLiftError{};
    return GlobalFiniteLoc::params(ExtNat::infinity(), {{p, loc.height()}});
}

/// A nonzero finite localisation is compactly central iff n_p = inf for all
/// but finitely many primes, i.e. the default is inf. The zero localisation
/// counts as compactly central (it arises from the zero map on the unit).
[[nodiscard]] inline bool is_compactly_central(const GlobalFiniteLoc& f) {
    if (f.is_zero()) return true;
    return f.default_height().is_infinite();
}

/// The localisation inverting exactly the primes in J: n_p = 0 for p in J,
/// n_q = inf otherwise. invert_primes({}) is the identity.
[[nodiscard]] inline GlobalFiniteLoc invert_primes(const std::set<Prime>& inverted) {
    GlobalFiniteLoc::ExceptionList exceptions;
    for (Prime p : inverted) exceptions.emplace_back(p, ExtNat{0});
    return GlobalFiniteLoc::params(ExtNat::infinity(), std::move(exceptions));
}

} // namespace finloc
