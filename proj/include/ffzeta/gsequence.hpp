#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/digits.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/intutil.hpp"

namespace ffzeta {

/// Greedily built sequence G_0, G_1, ... for exponent s over F_q: each term
/// is the smallest positive multiple of q-1 such that the running sum
/// (s-1) + G_0 + ... + G_j stays carry-free in base p.
struct GSequence {
    std::uint64_t q = 2;
    bigint s = 1;
    std::vector<bigint> terms;
};

namespace detail {

inline int digit_at(const std::vector<int>& digits, std::size_t pos) {
    return pos < digits.size() ? digits[pos] : 0;
}

inline void add_digits_carry_free(std::vector<int>& acc, const std::vector<int>& add) {
    if (add.size() > acc.size()) acc.resize(add.size(), 0);
    for (std::size_t i = 0; i < add.size(); ++i) acc[i] += add[i];
}

} // namespace detail

inline GSequence g_sequence(const bigint& s, std::uint64_t q, int count) {
    if (s < 1) throw Error("g_sequence requires s >= 1");
    if (count < 0) throw Error("g_sequence requires a non-negative count");
    const PrimePower pp = factor_prime_power(q);
    const int p = static_cast<int>(pp.p);
    const bigint step = bigint(q) - 1;

    GSequence out;
    out.q = q;
    out.s = s;
    out.terms.reserve(static_cast<std::size_t>(count));

    std::vector<int> running = to_digits(s - 1, p).digits;
    const bigint p_big = p;
    for (int term = 0; term < count; ++term) {
        bigint m = step > 0 ? step : 1;
        for (;;) {
            const std::vector<int> md = to_digits(m, p).digits;
            // Highest position where m's digit exceeds the headroom left by
            // the running sum.
            int violation = -1;
            for (std::size_t l = 0; l < md.size(); ++l) {
                if (md[l] > p - 1 - detail::digit_at(running, l)) {
                    violation = static_cast<int>(l);
                }
            }
            if (violation < 0) {
                out.terms.push_back(m);
                detail::add_digits_carry_free(running, md);
                break;
            }
            // Any candidate that keeps the digits above `violation` unchanged
            // still collides there (raising the low part of a number never
            // lowers that digit), so jump past them and realign to a multiple
            // of q-1.
            bigint block = 1;
            for (int l = 0; l <= violation; ++l) block *= p_big;
            bigint next = (m / block + 1) * block;
            if (step > 1) {
                const bigint rem = next % step;
                if (rem != 0) next += step - rem;
            }
            m = next;
        }
    }
    return out;
}

/// Weighted sum sum_j (d_i - d_j) * m_j against a non-gap prefix
/// d_0 < d_1 < ... < d_i (d_0 = 0), where i = parts.size().
inline bigint weighted_sum(const std::vector<std::int64_t>& nongaps,
                           const std::vector<bigint>& parts) {
    if (nongaps.size() != parts.size() + 1) {
        throw LengthMismatchError("weighted_sum needs one more non-gap than parts");
    }
    if (nongaps.empty() || nongaps.front() != 0) {
        throw Error("non-gap sequence must start at 0");
    }
    for (std::size_t j = 1; j < nongaps.size(); ++j) {
        if (nongaps[j] <= nongaps[j - 1]) {
            throw Error("non-gap sequence must be strictly increasing");
        }
    }
    const std::int64_t top = nongaps.back();
    bigint total = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        total += bigint(top - nongaps[j]) * parts[j];
    }
    return total;
}

/// A candidate tuple (m_0, ..., m_{i-1}) competing against the greedy
/// sequence: positive multiples of q-1 whose sum with s-1 is carry-free.
struct AdmissibleTuple {
    bigint s = 1;
    std::uint64_t q = 2;
    std::vector<bigint> parts;
};

inline bool is_admissible(const bigint& s, std::uint64_t q, const std::vector<bigint>& parts) {
    if (s < 1) return false;
    const PrimePower pp = factor_prime_power(q);
    const bigint step = bigint(q) - 1;
    std::vector<bigint> terms;
    terms.reserve(parts.size() + 1);
    terms.push_back(s - 1);
    for (const bigint& m : parts) {
        if (m < 1) return false;
        if (m % step != 0) return false;
        terms.push_back(m);
    }
    return carry_free(terms, static_cast<int>(pp.p));
}

struct SheatsViolation {
    std::vector<bigint> parts;
    bigint ws;
};

/// Result of a minimality audit: the greedy tuple should have the strictly
/// smallest weighted sum (with the projective-line weights) among admissible
/// tuples, so `violations` is expected to stay empty.
struct SheatsReport {
    bigint s = 1;
    std::uint64_t q = 2;
    int i = 0;
    std::string strategy;
    std::vector<bigint> g_terms;
    bigint ws_g = 0;
    std::uint64_t tuples_checked = 0;
    std::vector<SheatsViolation> violations;
    std::optional<bigint> min_gap;    // min over checked tuples of ws - ws_g
    std::optional<bigint> median_gap; // lower median of the same
};

struct ExhaustiveStrategy {
    bigint bound = 0; // 0 = derive as 2 * max(G) * p
    std::uint64_t tuple_cap = 50'000'000;
};

struct SampledStrategy {
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
};

using SheatsStrategy = std::variant<ExhaustiveStrategy, SampledStrategy>;

namespace detail {

inline std::int64_t small_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
    return r;
}

// Weak composition of r into parts slots, unranked lexicographically.
inline std::vector<int> unrank_composition(int r, int parts, std::int64_t rank) {
    std::vector<int> out(static_cast<std::size_t>(parts), 0);
    for (int j = 0; j < parts - 1; ++j) {
        for (int v = 0; v <= r; ++v) {
            const std::int64_t below = small_binomial(r - v + parts - j - 2, parts - j - 2);
            if (rank < below) {
                out[static_cast<std::size_t>(j)] = v;
                r -= v;
                break;
            }
            rank -= below;
        }
    }
    if (parts > 0) out[static_cast<std::size_t>(parts) - 1] = r;
    return out;
}

inline void finalize_gap_stats(SheatsReport& report, std::vector<bigint>& gaps) {
    if (gaps.empty()) return;
    std::sort(gaps.begin(), gaps.end());
    report.min_gap = gaps.front();
    report.median_gap = gaps[(gaps.size() - 1) / 2];
}

} // namespace detail

/// Audits minimality of the greedy sequence for (s, q) at length i, either by
/// exhausting all admissible tuples with entries up to a bound or by sampling
/// random admissible tuples digit by digit.
inline SheatsReport sheats_minimality_check(const bigint& s, std::uint64_t q, int i,
                                            const SheatsStrategy& strategy) {
    if (i < 0) throw Error("sheats_minimality_check requires i >= 0");
    const PrimePower pp = factor_prime_power(q);
    const int p = static_cast<int>(pp.p);
    const bigint step = bigint(q) - 1;

    SheatsReport report;
    report.s = s;
    report.q = q;
    report.i = i;
    const GSequence g = g_sequence(s, q, i);
    report.g_terms = g.terms;

    std::vector<std::int64_t> line_nongaps(static_cast<std::size_t>(i) + 1);
    for (int j = 0; j <= i; ++j) line_nongaps[static_cast<std::size_t>(j)] = j;
    report.ws_g = weighted_sum(line_nongaps, g.terms);
    if (i == 0) {
        report.strategy = "exhaustive(empty)";
        return report;
    }

    std::vector<bigint> gaps;
    const auto consider = [&](const std::vector<bigint>& parts) {
        if (parts == g.terms) return;
        ++report.tuples_checked;
        const bigint ws = weighted_sum(line_nongaps, parts);
        const bigint gap = ws - report.ws_g;
        gaps.push_back(gap);
        if (gap <= 0) report.violations.push_back({parts, ws});
    };

    if (std::holds_alternative<ExhaustiveStrategy>(strategy)) {
        const auto& ex = std::get<ExhaustiveStrategy>(strategy);
        bigint bound = ex.bound;
        if (bound == 0) {
            bigint mx = 0;
            for (const bigint& t : g.terms) mx = std::max(mx, t);
            bound = 2 * mx * p;
        }
        report.strategy = "exhaustive(bound=" + bound.str() + ")";
        const bigint multiples = bound / step;
        bigint space = 1;
        for (int j = 0; j < i; ++j) {
            space *= multiples;
            if (space > ex.tuple_cap) {
                throw BudgetExceededError("exhaustive tuple space exceeds cap " +
                                          std::to_string(ex.tuple_cap));
            }
        }
        // Odometer over multiples of q-1 in [q-1, bound].
        if (multiples >= 1) {
            std::vector<bigint> parts(static_cast<std::size_t>(i), step);
            for (;;) {
                if (is_admissible(s, q, parts)) consider(parts);
                int j = 0;
                while (j < i) {
                    parts[static_cast<std::size_t>(j)] += step;
                    if (parts[static_cast<std::size_t>(j)] <= bound) break;
                    parts[static_cast<std::size_t>(j)] = step;
                    ++j;
                }
                if (j == i) break;
            }
        }
    } else {
        const auto& sa = std::get<SampledStrategy>(strategy);
        report.strategy = "sampled(n=" + std::to_string(sa.samples) +
                          ",seed=" + std::to_string(sa.seed) + ")";
        std::mt19937_64 rng(sa.seed);
        const std::vector<int> base_digits = to_digits(s - 1, p).digits;
        const std::size_t width = base_digits.size() + static_cast<std::size_t>(i) * pp.e + 2;
        std::uint64_t accepted = 0;
        std::uint64_t attempts = 0;
        const std::uint64_t max_attempts = sa.samples * 2000 + 1000;
        while (accepted < sa.samples && attempts < max_attempts) {
            ++attempts;
            std::vector<bigint> parts(static_cast<std::size_t>(i), 0);
            bigint place = 1;
            for (std::size_t l = 0; l < width; ++l, place *= p) {
                const int budget = p - 1 - detail::digit_at(base_digits, l);
                if (budget <= 0) continue;
                const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(budget + 1));
                if (r == 0) continue;
                const std::int64_t comps = detail::small_binomial(r + i - 1, i - 1);
                const auto split = detail::unrank_composition(
                    r, i, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(comps)));
                for (int j = 0; j < i; ++j) {
                    parts[static_cast<std::size_t>(j)] += place * split[static_cast<std::size_t>(j)];
                }
            }
            bool ok = true;
            for (const bigint& m : parts) {
                if (m < 1 || m % step != 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok || parts == g.terms) continue;
            ++accepted;
            consider(parts);
        }
    }
    detail::finalize_gap_stats(report, gaps);
    return report;
}

} // namespace ffzeta
