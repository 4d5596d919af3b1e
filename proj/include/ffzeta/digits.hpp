#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/errors.hpp"

namespace ffzeta {

/// Base-b digit expansion, least significant digit first, no trailing zeros.
/// The empty vector represents zero in every base.
struct DigitVector {
    int base = 10;
    std::vector<int> digits;

    bool operator==(const DigitVector&) const = default;
};

inline DigitVector to_digits(bigint n, int base) {
    if (base < 2) throw BadBaseError("digit base must be >= 2, got " + std::to_string(base));
    if (n < 0) throw Error("to_digits requires a non-negative value");
    DigitVector d;
    d.base = base;
    while (n > 0) {
        d.digits.push_back(static_cast<int>(n % base));
        n /= base;
    }
    return d;
}

inline bigint from_digits(const DigitVector& d) {
    if (d.base < 2) throw BadBaseError("digit base must be >= 2, got " + std::to_string(d.base));
    bigint n = 0;
    for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
        if (*it < 0 || *it >= d.base) {
            throw BadBaseError("digit " + std::to_string(*it) + " out of range for base " +
                               std::to_string(d.base));
        }
        n = n * d.base + *it;
    }
    return n;
}

inline bigint digit_sum(const bigint& n, int base) {
    DigitVector d = to_digits(n, base);
    bigint s = 0;
    for (int v : d.digits) s += v;
    return s;
}

/// True when adding all terms in base p produces no carry in any position,
/// i.e. every positional digit sum is at most p-1. Equivalent to the digit
/// sum of the total equalling the sum of the digit sums.
inline bool carry_free(const std::vector<bigint>& terms, int p) {
    if (p < 2) throw BadBaseError("digit base must be >= 2, got " + std::to_string(p));
    std::vector<DigitVector> expansions;
    expansions.reserve(terms.size());
    std::size_t width = 0;
    for (const bigint& t : terms) {
        expansions.push_back(to_digits(t, p));
        width = std::max(width, expansions.back().digits.size());
    }
    for (std::size_t pos = 0; pos < width; ++pos) {
        long long col = 0;
        for (const DigitVector& d : expansions) {
            if (pos < d.digits.size()) col += d.digits[pos];
            if (col > p - 1) return false;
        }
    }
    return true;
}

namespace detail {

inline char digit_char(int v) {
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + (v - 10));
}

inline int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

} // namespace detail

/// Renders n in the given base with an explicit base annotation, e.g.
/// format_base(18, 7) == "24_(7)". Base 10 is rendered plainly. Digits above
/// nine use letters, so the supported bases are 2..36.
inline std::string format_base(const bigint& n, int base) {
    if (base < 2 || base > 36) {
        throw BadBaseError("printable base must be in 2..36, got " + std::to_string(base));
    }
    if (base == 10) return n.str();
    bigint v = n;
    std::string sign;
    if (v < 0) {
        sign = "-";
        v = -v;
    }
    DigitVector d = to_digits(v, base);
    std::string body;
    if (d.digits.empty()) {
        body = "0";
    } else {
        for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
            body += detail::digit_char(*it);
        }
    }
    return sign + body + "_(" + std::to_string(base) + ")";
}

/// Parses an integer literal, either plain decimal ("39651") or with an
/// explicit base suffix "digits@base" ("223413@7"). Throws ParseError on
/// malformed input.
inline bigint parse_int_literal(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal");
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
        if (text.empty()) throw ParseError("sign without digits in integer literal");
    }
    std::string_view digits = text;
    int base = 10;
    if (auto at = text.find('@'); at != std::string_view::npos) {
        digits = text.substr(0, at);
        std::string_view base_part = text.substr(at + 1);
        if (base_part.empty()) throw ParseError("missing base after '@'");
        base = 0;
        for (char c : base_part) {
            if (c < '0' || c > '9') throw ParseError("malformed base in integer literal");
            base = base * 10 + (c - '0');
            if (base > 36) throw ParseError("base out of range 2..36");
        }
        if (base < 2) throw ParseError("base out of range 2..36");
    }
    if (digits.empty()) throw ParseError("missing digits in integer literal");
    bigint n = 0;
    for (char c : digits) {
        int v = detail::digit_value(c);
        if (v < 0 || v >= base) {
            throw ParseError(std::string("invalid digit '") + c + "' for base " +
                             std::to_string(base));
        }
        n = n * base + v;
    }
    return negative ? bigint(-n) : n;
}

} // namespace ffzeta
