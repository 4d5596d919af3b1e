#pragma once

#include <cstdint>

#include "ffzeta/bigint.hpp"
#include "ffzeta/errors.hpp"

namespace ffzeta {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

struct PrimePower {
    std::int64_t p = 0;
    int e = 0;
    std::uint64_t q = 0;
};

/// Factors q = p^e with p prime, e >= 1. Throws NotPrimeError otherwise.
inline PrimePower factor_prime_power(std::uint64_t q) {
    if (q < 2) throw NotPrimeError("not a prime power: " + std::to_string(q));
    std::uint64_t rest = q;
    std::int64_t p = 0;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d == 0) {
            p = static_cast<std::int64_t>(d);
            break;
        }
    }
    if (p == 0) return {static_cast<std::int64_t>(q), 1, q};
    int e = 0;
    while (rest % static_cast<std::uint64_t>(p) == 0) {
        rest /= static_cast<std::uint64_t>(p);
        ++e;
    }
    if (rest != 1) throw NotPrimeError("not a prime power: " + std::to_string(q));
    return {p, e, q};
}

/// p^e as uint64, throwing LimitError on overflow past 2^62.
inline std::uint64_t checked_pow_u64(std::int64_t p, int e) {
    std::uint64_t r = 1;
    const std::uint64_t cap = (std::uint64_t{1} << 62);
    for (int i = 0; i < e; ++i) {
        if (r > cap / static_cast<std::uint64_t>(p)) {
            throw LimitError("prime power exceeds 2^62");
        }
        r *= static_cast<std::uint64_t>(p);
    }
    return r;
}

} // namespace ffzeta
