#pragma once

#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/digits.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/intutil.hpp"

namespace ffzeta {

namespace detail {

// n! mod p and its inverse for n < p, as small tables. p must be prime.
inline std::vector<std::int64_t> factorials_mod_p(int p) {
    std::vector<std::int64_t> fact(static_cast<std::size_t>(p));
    fact[0] = 1;
    for (int i = 1; i < p; ++i) fact[i] = (fact[i - 1] * i) % p;
    return fact;
}

inline std::int64_t pow_mod_i64(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return r;
}

} // namespace detail

/// Residue mod prime p of the multinomial coefficient (n choose parts),
/// computed as the product over base-p digit positions of the digit
/// multinomials. Returns 0 whenever the parts do not sum to n.
inline int multinomial_mod_p(const bigint& n, const std::vector<bigint>& parts, int p) {
    if (p < 2) throw BadBaseError("modulus must be >= 2, got " + std::to_string(p));
    if (n < 0) return 0;
    bigint total = 0;
    for (const bigint& m : parts) {
        if (m < 0) return 0;
        total += m;
    }
    if (total != n) return 0;

    const auto fact = detail::factorials_mod_p(p);
    std::vector<bigint> rem(parts);
    bigint rn = n;
    std::int64_t num = 1;
    std::int64_t den = 1;
    while (rn > 0) {
        const int nd = static_cast<int>(rn % p);
        rn /= p;
        int col = 0;
        for (bigint& m : rem) {
            const int md = static_cast<int>(m % p);
            m /= p;
            col += md;
            den = (den * fact[md]) % p;
        }
        // A positional digit-sum above the digit of n means a carry occurred,
        // which kills the product.
        if (col != nd) return 0;
        num = (num * fact[nd]) % p;
    }
    for (const bigint& m : rem) {
        if (m != 0) return 0; // parts have digits beyond n, impossible without carries
    }
    return static_cast<int>((num * detail::pow_mod_i64(den, p - 2, p)) % p);
}

inline bool multinomial_nonzero_mod_p(const bigint& n, const std::vector<bigint>& parts, int p) {
    return multinomial_mod_p(n, parts, p) != 0;
}

/// Digit-factorial tables for one prime, reusable across many evaluations so
/// tight loops avoid rebuilding them per call.
struct LucasTable {
    int p = 2;
    std::vector<std::int64_t> fact;
    std::vector<std::int64_t> inv_fact;
};

inline LucasTable make_lucas_table(int p) {
    if (p < 2 || !is_prime(p)) {
        throw NotPrimeError("Lucas tables need a prime modulus, got " + std::to_string(p));
    }
    LucasTable t;
    t.p = p;
    t.fact = detail::factorials_mod_p(p);
    t.inv_fact.resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        t.inv_fact[static_cast<std::size_t>(k)] =
            detail::pow_mod_i64(t.fact[static_cast<std::size_t>(k)], p - 2, p);
    }
    return t;
}

/// Machine-word overload of the digit-product multinomial, same computation
/// as the big-integer form.
inline int multinomial_mod_p(const LucasTable& t, std::int64_t n, const std::int64_t* parts,
                             int count) {
    if (count < 0 || count > 8) throw LimitError("machine-word multinomial takes up to 8 parts");
    if (n < 0) return 0;
    std::int64_t total = 0;
    std::int64_t rem[8];
    for (int k = 0; k < count; ++k) {
        if (parts[k] < 0) return 0;
        rem[k] = parts[k];
        total += parts[k];
    }
    if (total != n) return 0;
    const std::int64_t p = t.p;
    std::int64_t num = 1;
    std::int64_t den_inv = 1;
    std::int64_t rn = n;
    while (rn > 0) {
        const std::int64_t nd = rn % p;
        rn /= p;
        std::int64_t col = 0;
        for (int k = 0; k < count; ++k) {
            const std::int64_t md = rem[k] % p;
            rem[k] /= p;
            col += md;
            den_inv = (den_inv * t.inv_fact[static_cast<std::size_t>(md)]) % p;
        }
        if (col != nd) return 0;
        num = (num * t.fact[static_cast<std::size_t>(nd)]) % p;
    }
    for (int k = 0; k < count; ++k) {
        if (rem[k] != 0) return 0;
    }
    return static_cast<int>((num * den_inv) % p);
}

/// Exact multinomial coefficient n! / prod(parts!), evaluated literally with
/// big-integer factorials. This is the reference the digit-product form is
/// validated against. Returns 0 when the parts do not sum to n.
inline bigint multinomial_exact(const bigint& n, const std::vector<bigint>& parts) {
    if (n < 0) return 0;
    if (n > 1000000) throw LimitError("multinomial_exact cap is n <= 10^6");
    bigint total = 0;
    for (const bigint& m : parts) {
        if (m < 0) return 0;
        total += m;
    }
    if (total != n) return 0;
    const auto factorial = [](const bigint& v) {
        bigint f = 1;
        for (bigint i = 2; i <= v; ++i) f *= i;
        return f;
    };
    bigint num = factorial(n);
    for (const bigint& m : parts) num /= factorial(m);
    return num;
}

/// Residue mod p of the signed binomial coefficient C(-s, y) for s >= 1,
/// y >= 0, i.e. (-1)^y * C(y+s-1, y). These are the coefficients of the
/// power-series expansion of (1+X)^{-s}.
inline int signed_binomial(const bigint& s, const bigint& y, int p) {
    if (s < 1) throw Error("signed_binomial requires s >= 1");
    if (y < 0) throw Error("signed_binomial requires y >= 0");
    const int r = multinomial_mod_p(y + s - 1, {y, s - 1}, p);
    if (r == 0) return 0;
    const bool odd = boost::multiprecision::bit_test(y, 0);
    return odd ? p - r : r;
}

} // namespace ffzeta
