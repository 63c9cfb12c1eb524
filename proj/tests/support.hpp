#pragma once

// Seeded generators for property-style tests. Everything here is
// deterministic: fixed seeds, fixed candidate pools.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "finloc/extnat.hpp"
#include "finloc/lattice.hpp"
#include "finloc/prime.hpp"
#include "finloc/profile.hpp"

namespace testsupport {

inline const std::vector<finloc::Prime>& prime_pool() {
    static const std::vector<finloc::Prime> pool = {
        finloc::Prime(2), finloc::Prime(3),  finloc::Prime(5),
        finloc::Prime(7), finloc::Prime(11), finloc::Prime(13)};
    return pool;
}

inline finloc::ExtNat random_extnat(std::mt19937_64& rng, std::uint64_t max_finite = 3) {
    std::uniform_int_distribution<std::uint64_t> dist(0, max_finite + 1);
    const std::uint64_t v = dist(rng);
    if (v > max_finite) return finloc::ExtNat::infinity();
    return finloc::ExtNat{v};
}

inline finloc::GlobalFiniteLoc random_global(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> zero_dist(0, 7);
    if (zero_dist(rng) == 0) return finloc::GlobalFiniteLoc::zero();

    const finloc::ExtNat default_height = random_extnat(rng);
    std::vector<finloc::Prime> primes = prime_pool();
    std::shuffle(primes.begin(), primes.end(), rng);
    std::uniform_int_distribution<std::size_t> count_dist(0, 4);
    const std::size_t count = count_dist(rng);

    finloc::GlobalFiniteLoc::ExceptionList exceptions;
    for (std::size_t i = 0; i < count; ++i) {
        exceptions.emplace_back(primes[i], random_extnat(rng));
    }
    return finloc::GlobalFiniteLoc::params(default_height, std::move(exceptions));
}

inline finloc::PLocalFiniteLoc random_plocal(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> zero_dist(0, 5);
    if (zero_dist(rng) == 0) return finloc::PLocalFiniteLoc::zero();
    return finloc::PLocalFiniteLoc::lnf(random_extnat(rng));
}

inline finloc::MapProfile random_profile(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> len_dist(0, 5);
    std::uniform_int_distribution<int> entry_dist(0, 1);
    std::vector<finloc::KnEntry> prefix;
    const std::size_t len = len_dist(rng);
    prefix.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        prefix.push_back(entry_dist(rng) ? finloc::KnEntry::Iso : finloc::KnEntry::Zero);
    }
    const finloc::KnEntry tail =
        entry_dist(rng) ? finloc::KnEntry::Iso : finloc::KnEntry::Zero;
    return finloc::MapProfile(std::move(prefix), tail);
}

} // namespace testsupport
