#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "finloc/error.hpp"
#include "finloc/prime.hpp"
#include "finloc/valuation.hpp"

namespace finloc {

/// Thrown when two ring elements with different truncation parameters meet.
class ParamMismatch : public std::invalid_argument {
public:
    ParamMismatch() : std::invalid_argument("ring elements have different parameters") {}
};

/// Thrown when the repeated-squaring oracle is asked to exceed desk scale.
class ScaleError : public std::invalid_argument {
public:
    ScaleError() : std::invalid_argument("oracle limited to p^n <= 64") {}
};

/**
 * Parameters of the truncated ring (Z/p^j)[y, eps]/(eps^E) with E = p^k.
 * This ring satisfies exactly the hypotheses p^j * eps = 0 and
 * eps^{p^k} = 0 and nothing more. Requires j >= 1; the truncation order
 * p^k must fit in 64 bits.
 */
class TruncParams {
public:
    TruncParams(Prime p, std::uint32_t j, std::uint32_t k) : p_(p), j_(j), k_(k) {
        if (j == 0) throw DomainError("requires j >= 1");
        std::uint64_t e = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (e > UINT64_MAX / p.value()) {
                throw DomainError("truncation order p^k does not fit in 64 bits");
            }
            e *= p.value();
        }
        trunc_order_ = e;
        mpz_ui_pow_ui(modulus_.get_mpz_t(), p.value(), j);
    }

    [[nodiscard]] Prime p() const { return p_; }
    [[nodiscard]] std::uint32_t j() const { return j_; }
    [[nodiscard]] std::uint32_t k() const { return k_; }

    /// E = p^k; eps^E = 0.
    [[nodiscard]] std::uint64_t trunc_order() const { return trunc_order_; }
    /// p^j; coefficients live in [0, p^j).
    [[nodiscard]] const BigInt& modulus() const { return modulus_; }

    friend bool operator==(const TruncParams& a, const TruncParams& b) {
        return a.p_ == b.p_ && a.j_ == b.j_ && a.k_ == b.k_;
    }

private:
    Prime p_;
    std::uint32_t j_;
    std::uint32_t k_;
    std::uint64_t trunc_order_;
    BigInt modulus_;
};

/**
 * An element of (Z/p^j)[y, eps]/(eps^E), stored sparsely: for each
 * eps-degree below E, a sparse polynomial in y. Invariants: coefficients
 * reduced into [0, p^j), no zero coefficients stored, eps-degrees < E.
 * y-exponents are arbitrary precision so powers like y^{p^n} stay cheap.
 */
class NilElement {
public:
    using YPoly = std::map<BigInt, BigInt>; // y-exponent -> coefficient

    explicit NilElement(TruncParams params) : params_(std::move(params)) {}

    [[nodiscard]] static NilElement zero(const TruncParams& params) {
        return NilElement(params);
    }

    [[nodiscard]] static NilElement monomial(const TruncParams& params, const BigInt& coeff,
                                             const BigInt& y_exp, std::uint64_t eps_deg) {
        NilElement e(params);
        e.accumulate(eps_deg, y_exp, coeff);
        return e;
    }

    [[nodiscard]] static NilElement one(const TruncParams& params) {
        return monomial(params, 1, 0, 0);
    }

    [[nodiscard]] static NilElement y(const TruncParams& params) {
        return monomial(params, 1, 1, 0);
    }

    /// The nilpotent generator; the zero element when E = 1.
    [[nodiscard]] static NilElement eps(const TruncParams& params) {
        return monomial(params, 1, 0, 1);
    }

    [[nodiscard]] const TruncParams& params() const { return params_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<std::uint64_t, YPoly>& terms() const { return terms_; }

    /// Add coeff * y^y_exp * eps^eps_deg, reducing and truncating.
    void accumulate(std::uint64_t eps_deg, const BigInt& y_exp, const BigInt& coeff) {
        if (eps_deg >= params_.trunc_order()) return;
        BigInt c = coeff % params_.modulus();
        if (sgn(c) < 0) c += params_.modulus();
        if (sgn(c) == 0) return;
        YPoly& poly = terms_[eps_deg];
        BigInt& slot = poly[y_exp];
        slot += c;
        if (slot >= params_.modulus()) slot -= params_.modulus();
        if (sgn(slot) == 0) poly.erase(y_exp);
        if (poly.empty()) terms_.erase(eps_deg);
    }

    friend bool operator==(const NilElement& a, const NilElement& b) {
        return a.params_ == b.params_ && a.terms_ == b.terms_;
    }

private:
    TruncParams params_;
    std::map<std::uint64_t, YPoly> terms_;
};

namespace detail {

inline void require_same_params(const NilElement& a, const NilElement& b) {
    if (!(a.params() == b.params())) throw ParamMismatch{};
}

} // namespace detail

[[nodiscard]] inline NilElement add(const NilElement& a, const NilElement& b) {
    detail::require_same_params(a, b);
    NilElement out = a;
    for (const auto& [deg, poly] : b.terms()) {
        for (const auto& [exp, coeff] : poly) out.accumulate(deg, exp, coeff);
    }
    return out;
}

[[nodiscard]] inline NilElement sub(const NilElement& a, const NilElement& b) {
    detail::require_same_params(a, b);
    NilElement out = a;
    for (const auto& [deg, poly] : b.terms()) {
        for (const auto& [exp, coeff] : poly) out.accumulate(deg, exp, -coeff);
    }
    return out;
}

/// Product in the truncated ring: eps-degrees >= E are discarded and
/// coefficients reduced mod p^j. Commutative and associative, with one()
/// as multiplicative identity.
[[nodiscard]] inline NilElement ring_mul(const NilElement& a, const NilElement& b) {
    detail::require_same_params(a, b);
    const std::uint64_t order = a.params().trunc_order();
    NilElement out = NilElement::zero(a.params());
    for (const auto& [da, pa] : a.terms()) {
        for (const auto& [db, pb] : b.terms()) {
            if (da >= order - db) continue; // truncated; also avoids overflow
            for (const auto& [ea, ca] : pa) {
                for (const auto& [eb, cb] : pb) {
                    out.accumulate(da + db, ea + eb, ca * cb);
                }
            }
        }
    }
    return out;
}

[[nodiscard]] inline NilElement operator+(const NilElement& a, const NilElement& b) {
    return add(a, b);
}
[[nodiscard]] inline NilElement operator-(const NilElement& a, const NilElement& b) {
    return sub(a, b);
}
[[nodiscard]] inline NilElement operator*(const NilElement& a, const NilElement& b) {
    return ring_mul(a, b);
}

/// Repeated squaring in the truncated ring.
[[nodiscard]] inline NilElement ring_pow(const NilElement& base, std::uint64_t exponent) {
    NilElement acc = NilElement::one(base.params());
    NilElement sq = base;
    while (exponent > 0) {
        if (exponent & 1) acc = ring_mul(acc, sq);
        exponent >>= 1;
        if (exponent > 0) sq = ring_mul(sq, sq);
    }
    return acc;
}

/// Deterministic rendering, terms ordered by (eps-degree, y-exponent).
inline std::ostream& operator<<(std::ostream& os, const NilElement& e) {
    if (e.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [deg, poly] : e.terms()) {
        for (const auto& [exp, coeff] : poly) {
            if (!first) os << " + ";
            first = false;
            os << coeff.get_str();
            if (sgn(exp) > 0) os << "*y^" << exp.get_str();
            if (deg > 0) os << "*e^" << deg;
        }
    }
    return os;
}

// ============================================================================
// The binomial difference (y + eps)^{p^n} - y^{p^n}
// ============================================================================

/**
 * (y + eps)^{p^n} - y^{p^n} = sum_{i=1}^{min(p^n, E-1)} C(p^n, i) y^{p^n - i} eps^i,
 * computed from binomial coefficients reduced mod p^j only. No degree-p^n
 * product is ever materialised, so large n stays cheap.
 */
[[nodiscard]] inline NilElement binomial_difference_fast(const TruncParams& params,
                                                         std::uint64_t n) {
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), params.p().value(), n);
    std::uint64_t limit = params.trunc_order() - 1;
    if (pn < limit) limit = pn.get_ui();

    NilElement out = NilElement::zero(params);
    BigInt binom = 1; // C(p^n, i), updated incrementally
    for (std::uint64_t i = 1; i <= limit; ++i) {
        binom *= pn - (i - 1);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), i);
        out.accumulate(i, pn - i, binom);
    }
    return out;
}

/// The same difference computed literally, by repeated squaring with
/// ring_mul. Desk scale only: requires p^n <= 64.
[[nodiscard]] inline NilElement binomial_difference_oracle(const TruncParams& params,
                                                           std::uint64_t n) {
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), params.p().value(), n);
    if (pn > 64) throw ScaleError{};
    const std::uint64_t e = pn.get_ui();
    const NilElement x = NilElement::y(params) + NilElement::eps(params);
    return ring_pow(x, e) - ring_pow(NilElement::y(params), e);
}

/// True iff (y + eps)^{p^n} = y^{p^n} in (Z/p^j)[y, eps]/(eps^{p^k}).
/// Guaranteed true whenever n >= j + k.
[[nodiscard]] inline bool verify_nilp_diff(Prime p, std::uint32_t j, std::uint32_t k,
                                           std::uint64_t n) {
    return binomial_difference_fast(TruncParams(p, j, k), n).is_zero();
}

/// Term-by-term version: every surviving term of the expansion must carry a
/// binomial coefficient of valuation >= j. Agrees with verify_nilp_diff.
[[nodiscard]] inline bool termwise_check(Prime p, std::uint32_t j, std::uint32_t k,
                                         std::uint64_t n) {
    const TruncParams params(p, j, k);
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p.value(), n);
    std::uint64_t limit = params.trunc_order() - 1;
    if (pn < limit) limit = pn.get_ui();
    for (std::uint64_t i = 1; i <= limit; ++i) {
        if (nu_binom(pn, BigInt(i), p) < j) return false;
    }
    return true;
}

/// Smallest n <= search_bound making the difference vanish, if any. Always
/// present (and <= j + k) once search_bound >= j + k.
[[nodiscard]] inline std::optional<std::uint64_t> minimal_n(Prime p, std::uint32_t j,
                                                            std::uint32_t k,
                                                            std::uint64_t search_bound) {
    for (std::uint64_t n = 0; n <= search_bound; ++n) {
        if (verify_nilp_diff(p, j, k, n)) return n;
    }
    return std::nullopt;
}

} // namespace finloc
