#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/intutil.hpp"

namespace ffzeta {

/// Hard cap on the extension degree. Elements store their coefficients
/// inline, so raising this enlarges every element.
inline constexpr int kMaxExtensionDegree = 8;

/// Element of F_{p^e}, represented by its coefficient vector over F_p in the
/// basis 1, x, ..., x^{e-1} where x is a root of the field modulus.
/// Coefficients are reduced representatives in [0, p). Elements carry the
/// extension degree they were built for; the owning FieldSpec is passed to
/// every operation.
struct FqElement {
    std::array<std::int32_t, kMaxExtensionDegree> c{};
    std::int8_t deg = 1;

    bool is_zero() const {
        for (int v : c) {
            if (v != 0) return false;
        }
        return true;
    }

    friend bool operator==(const FqElement&, const FqElement&) = default;
};

/// Description of a finite field F_q, q = p^e. The modulus is a monic
/// irreducible polynomial of degree e over F_p, stored least significant
/// coefficient first. `reduction[k]` caches x^{e+k} reduced mod the modulus.
struct FieldSpec {
    std::int64_t p = 2;
    int e = 1;
    std::vector<std::int32_t> modulus{0, 1};
    std::uint64_t q = 2;
    std::vector<std::array<std::int32_t, kMaxExtensionDegree>> reduction;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.p == b.p && a.e == b.e && a.modulus == b.modulus;
    }
};

namespace detail {

// Reduced representative of a (possibly negative) value mod p.
inline std::int64_t mod_p(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

inline std::int64_t modinv_i64(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = mod_p(a, p);
    while (new_r != 0) {
        std::int64_t qq = r / new_r;
        t -= qq * new_t;
        std::swap(t, new_t);
        r -= qq * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw DivisionByZeroError("element has no inverse mod " + std::to_string(p));
    return mod_p(t, p);
}

// Synthetic division check: does `divisor` divide `poly` over F_p?
// Both are little-endian coefficient vectors with nonzero leading terms.
inline bool poly_divides(const std::vector<std::int64_t>& divisor,
                         std::vector<std::int64_t> poly, std::int64_t p) {
    const std::size_t dd = divisor.size() - 1;
    const std::int64_t lead_inv = modinv_i64(divisor[dd], p);
    while (poly.size() > dd) {
        std::int64_t coef = mod_p(poly.back() * lead_inv, p);
        const std::size_t shift = poly.size() - 1 - dd;
        if (coef != 0) {
            for (std::size_t j = 0; j <= dd; ++j) {
                poly[shift + j] = mod_p(poly[shift + j] - coef * divisor[j], p);
            }
        }
        poly.pop_back();
    }
    for (std::int64_t v : poly) {
        if (v != 0) return false;
    }
    return true;
}

} // namespace detail

/// Builds the field F_{p^e}. Validates primality of p, the degree cap, the
/// modulus shape (monic, degree e, coefficients in [0, p)) and irreducibility
/// by trial division against all monic polynomials of degree <= e/2.
/// For e = 1 the modulus defaults to x.
inline FieldSpec make_field(std::int64_t p, int e, std::vector<std::int32_t> modulus = {}) {
    if (!is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (p >= (std::int64_t{1} << 29)) {
        throw LimitError("characteristic cap is 2^29, got " + std::to_string(p));
    }
    if (e < 1) throw LimitError("extension degree must be >= 1, got " + std::to_string(e));
    if (e > kMaxExtensionDegree) {
        throw LimitError("extension degree cap is " + std::to_string(kMaxExtensionDegree) +
                         ", got " + std::to_string(e));
    }
    FieldSpec F;
    F.p = p;
    F.e = e;
    F.q = checked_pow_u64(p, e);
    if (modulus.empty()) {
        if (e == 1) {
            modulus = {0, 1};
        } else {
            throw DegreeMismatchError("extension field requires an explicit modulus");
        }
    }
    if (modulus.size() != static_cast<std::size_t>(e) + 1) {
        throw DegreeMismatchError("modulus must have degree " + std::to_string(e));
    }
    for (std::int32_t v : modulus) {
        if (v < 0 || v >= p) {
            throw DegreeMismatchError("modulus coefficients must lie in [0, p)");
        }
    }
    if (modulus.back() != 1) throw DegreeMismatchError("modulus must be monic");
    if (e >= 2) {
        std::vector<std::int64_t> mod_poly(modulus.begin(), modulus.end());
        // Trial division by every monic polynomial of degree 1..e/2.
        for (int d = 1; 2 * d <= e; ++d) {
            std::vector<std::int64_t> div(static_cast<std::size_t>(d) + 1, 0);
            div[d] = 1;
            const std::uint64_t count = checked_pow_u64(p, d);
            for (std::uint64_t k = 0; k < count; ++k) {
                std::uint64_t rem = k;
                for (int j = 0; j < d; ++j) {
                    div[j] = static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(p));
                    rem /= static_cast<std::uint64_t>(p);
                }
                if (detail::poly_divides(div, mod_poly, p)) {
                    throw NotIrreducibleError("modulus is divisible by a degree-" +
                                              std::to_string(d) + " factor");
                }
            }
        }
    }
    F.modulus = std::move(modulus);
    // Cache x^{e+k} mod modulus for k = 0..e-2 (used to fold products).
    if (e >= 2) {
        F.reduction.resize(static_cast<std::size_t>(e) - 1);
        std::array<std::int32_t, kMaxExtensionDegree> row{};
        for (int j = 0; j < e; ++j) {
            row[j] = static_cast<std::int32_t>(detail::mod_p(-F.modulus[j], p));
        }
        F.reduction[0] = row;
        for (int k = 1; k + 1 < e; ++k) {
            std::array<std::int32_t, kMaxExtensionDegree> next{};
            const std::int64_t top = row[e - 1];
            for (int j = e - 1; j > 0; --j) next[j] = row[j - 1];
            next[0] = 0;
            if (top != 0) {
                for (int j = 0; j < e; ++j) {
                    next[j] = static_cast<std::int32_t>(
                        detail::mod_p(next[j] + top * F.reduction[0][j], p));
                }
            }
            F.reduction[k] = next;
            row = next;
        }
    }
    return F;
}

inline FqElement fq_zero(const FieldSpec& F) {
    FqElement r;
    r.deg = static_cast<std::int8_t>(F.e);
    return r;
}

inline FqElement fq_one(const FieldSpec& F) {
    FqElement r = fq_zero(F);
    r.c[0] = 1;
    return r;
}

namespace detail {

inline void check_field(const FieldSpec& F, const FqElement& a) {
    if (a.deg != F.e) {
        throw FieldMismatchError("element of extension degree " + std::to_string(int(a.deg)) +
                                 " used with a degree-" + std::to_string(F.e) + " field");
    }
    for (int j = 0; j < F.e; ++j) {
        if (a.c[j] < 0 || a.c[j] >= F.p) {
            throw FieldMismatchError("element coefficient out of range for the field");
        }
    }
}

} // namespace detail

/// Embeds the integer n (reduced mod p) as a constant field element.
inline FqElement fq_from_int(const FieldSpec& F, const bigint& n) {
    FqElement r = fq_zero(F);
    r.c[0] = static_cast<std::int32_t>(static_cast<std::int64_t>(((n % F.p) + F.p) % F.p));
    return r;
}

/// Builds an element from an arbitrary little-endian coefficient list,
/// reducing each coefficient mod p. Coefficients past degree e-1 are
/// rejected.
inline FqElement fq_make(const FieldSpec& F, const std::vector<std::int64_t>& coeffs) {
    if (coeffs.size() > static_cast<std::size_t>(F.e)) {
        throw DegreeMismatchError("coefficient list longer than the extension degree");
    }
    FqElement r = fq_zero(F);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        r.c[j] = static_cast<std::int32_t>(detail::mod_p(coeffs[j], F.p));
    }
    return r;
}

inline FqElement fq_add(const FieldSpec& F, const FqElement& a, const FqElement& b) {
    detail::check_field(F, a);
    detail::check_field(F, b);
    FqElement r = fq_zero(F);
    for (int j = 0; j < F.e; ++j) {
        std::int32_t v = a.c[j] + b.c[j];
        if (v >= F.p) v -= static_cast<std::int32_t>(F.p);
        r.c[j] = v;
    }
    return r;
}

inline FqElement fq_neg(const FieldSpec& F, const FqElement& a) {
    detail::check_field(F, a);
    FqElement r = fq_zero(F);
    for (int j = 0; j < F.e; ++j) {
        r.c[j] = a.c[j] == 0 ? 0 : static_cast<std::int32_t>(F.p - a.c[j]);
    }
    return r;
}

inline FqElement fq_sub(const FieldSpec& F, const FqElement& a, const FqElement& b) {
    return fq_add(F, a, fq_neg(F, b));
}

inline FqElement fq_mul(const FieldSpec& F, const FqElement& a, const FqElement& b) {
    detail::check_field(F, a);
    detail::check_field(F, b);
    if (F.e == 1) {
        FqElement r = fq_zero(F);
        r.c[0] = static_cast<std::int32_t>(
            (static_cast<std::int64_t>(a.c[0]) * b.c[0]) % F.p);
        return r;
    }
    std::array<std::int64_t, 2 * kMaxExtensionDegree - 1> buf{};
    for (int i = 0; i < F.e; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < F.e; ++j) {
            buf[i + j] += static_cast<std::int64_t>(a.c[i]) * b.c[j];
        }
    }
    for (int k = 2 * F.e - 2; k >= F.e; --k) {
        const std::int64_t v = buf[k] % F.p;
        if (v == 0) continue;
        const auto& row = F.reduction[k - F.e];
        for (int j = 0; j < F.e; ++j) buf[j] += v * row[j];
    }
    FqElement r = fq_zero(F);
    for (int j = 0; j < F.e; ++j) {
        r.c[j] = static_cast<std::int32_t>(detail::mod_p(buf[j], F.p));
    }
    return r;
}

/// a^n for n >= 0, with the convention 0^0 = 1.
inline FqElement fq_pow(const FieldSpec& F, const FqElement& a, const bigint& n) {
    detail::check_field(F, a);
    if (n < 0) throw Error("fq_pow requires a non-negative exponent");
    if (n == 0) return fq_one(F);
    if (a.is_zero()) return fq_zero(F);
    FqElement base = a;
    FqElement acc = fq_one(F);
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    for (unsigned i = 0; i < bits; ++i) {
        if (boost::multiprecision::bit_test(n, i)) acc = fq_mul(F, acc, base);
        if (i + 1 < bits) base = fq_mul(F, base, base);
    }
    return acc;
}

inline FqElement fq_inv(const FieldSpec& F, const FqElement& a) {
    detail::check_field(F, a);
    if (a.is_zero()) throw DivisionByZeroError("inverse of zero");
    if (F.e == 1) {
        FqElement r = fq_zero(F);
        r.c[0] = static_cast<std::int32_t>(detail::modinv_i64(a.c[0], F.p));
        return r;
    }
    return fq_pow(F, a, bigint(F.q) - 2);
}

/// Element number k in the enumeration order: the coefficient vector is the
/// base-p expansion of k with the highest-degree coefficient most
/// significant, so F_4 enumerates as 0, 1, x, x+1.
inline FqElement index_to_element(const FieldSpec& F, std::uint64_t k) {
    if (k >= F.q) throw LimitError("element index out of range");
    FqElement r = fq_zero(F);
    for (int j = 0; j < F.e; ++j) {
        r.c[j] = static_cast<std::int32_t>(k % static_cast<std::uint64_t>(F.p));
        k /= static_cast<std::uint64_t>(F.p);
    }
    return r;
}

inline std::uint64_t element_to_index(const FieldSpec& F, const FqElement& a) {
    detail::check_field(F, a);
    std::uint64_t k = 0;
    for (int j = F.e - 1; j >= 0; --j) {
        k = k * static_cast<std::uint64_t>(F.p) + static_cast<std::uint64_t>(a.c[j]);
    }
    return k;
}

/// All q elements in enumeration order. Capped to keep accidental huge
/// enumerations from exhausting memory; use index_to_element for streaming.
inline std::vector<FqElement> enumerate_field(const FieldSpec& F) {
    if (F.q > (std::uint64_t{1} << 20)) {
        throw LimitError("enumerate_field cap is 2^20 elements");
    }
    std::vector<FqElement> out;
    out.reserve(static_cast<std::size_t>(F.q));
    for (std::uint64_t k = 0; k < F.q; ++k) out.push_back(index_to_element(F, k));
    return out;
}

/// Sum of f^m over all f in F_q, with 0^0 = 1. Equals -1 exactly when m is a
/// positive multiple of q-1 and 0 otherwise (including m = 0, where the sum
/// is q * 1 = 0 in characteristic p).
inline FqElement character_power_sum(const FieldSpec& F, const bigint& m) {
    if (m < 0) throw Error("character_power_sum requires a non-negative exponent");
    if (m == 0) return fq_zero(F);
    if (m % (bigint(F.q) - 1) == 0) return fq_neg(F, fq_one(F));
    return fq_zero(F);
}

/// Human-readable rendering: plain residue for prime fields, a polynomial in
/// x for extensions ("x+1").
inline std::string fq_to_string(const FieldSpec& F, const FqElement& a) {
    detail::check_field(F, a);
    if (F.e == 1) return std::to_string(a.c[0]);
    std::string out;
    for (int j = F.e - 1; j >= 0; --j) {
        if (a.c[j] == 0) continue;
        if (!out.empty()) out += "+";
        const bool unit_coef = a.c[j] == 1 && j > 0;
        if (!unit_coef) out += std::to_string(a.c[j]);
        if (j > 0) {
            if (!unit_coef) out += "*";
            out += "x";
            if (j > 1) out += "^" + std::to_string(j);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace ffzeta
