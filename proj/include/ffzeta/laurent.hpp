#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/fq.hpp"

namespace ffzeta {

/// Truncated Laurent series over F_q in a local parameter t.
///
/// Invariants (maintained by every constructor and operation):
///  - coefficients strictly below `lead` are zero;
///  - `known_exact` means `coeffs` is the complete list of nonzero support
///    (no hidden tail), with nonzero first and last entries; empty = zero;
///  - otherwise the series is known on the window [lead, lead + coeffs.size())
///    and unknown beyond it; a nonempty window starts with a nonzero
///    coefficient, so `lead` is the true valuation; an empty window is a pure
///    bound "valuation >= lead".
struct LaurentSeries {
    FieldSpec field;
    std::int64_t lead = 0;
    std::vector<FqElement> coeffs;
    bool known_exact = true;

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.field == b.field && a.lead == b.lead && a.coeffs == b.coeffs &&
               a.known_exact == b.known_exact;
    }
};

struct Valuation {
    enum class Kind { Finite, IndeterminateBeyond, ExactZero };
    Kind kind = Kind::ExactZero;
    std::int64_t value = 0; // valuation if Finite, lower bound if IndeterminateBeyond

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

namespace detail {

inline void ls_normalize(LaurentSeries& a) {
    std::size_t lz = 0;
    while (lz < a.coeffs.size() && a.coeffs[lz].is_zero()) ++lz;
    if (lz == a.coeffs.size()) {
        if (a.known_exact) {
            a.coeffs.clear();
            a.lead = 0;
        } else {
            a.lead += static_cast<std::int64_t>(a.coeffs.size());
            a.coeffs.clear();
        }
        return;
    }
    if (lz > 0) {
        a.lead += static_cast<std::int64_t>(lz);
        a.coeffs.erase(a.coeffs.begin(), a.coeffs.begin() + static_cast<std::ptrdiff_t>(lz));
    }
    if (a.known_exact) {
        while (!a.coeffs.empty() && a.coeffs.back().is_zero()) a.coeffs.pop_back();
    }
}

inline void ls_check_fields(const LaurentSeries& a, const LaurentSeries& b) {
    if (!(a.field == b.field)) {
        throw FieldMismatchError("series over different fields");
    }
}

// Coefficient planes: plane u holds the u-th basis coordinate of every
// window coefficient, enabling flat integer kernels.
struct Planes {
    int e = 1;
    std::vector<std::vector<std::int64_t>> v;
};

inline Planes planes_of(const FieldSpec& F, const std::vector<FqElement>& c, std::size_t len) {
    Planes P;
    P.e = F.e;
    P.v.assign(static_cast<std::size_t>(F.e), std::vector<std::int64_t>(len, 0));
    for (std::size_t k = 0; k < c.size() && k < len; ++k) {
        for (int u = 0; u < F.e; ++u) P.v[static_cast<std::size_t>(u)][k] = c[k].c[u];
    }
    return P;
}

inline FqElement reduce_acc(const FieldSpec& F, std::int64_t* acc) {
    const std::int64_t p = F.p;
    for (int k = 2 * F.e - 2; k >= F.e; --k) {
        const std::int64_t v = acc[k] % p;
        if (v == 0) continue;
        const auto& row = F.reduction[static_cast<std::size_t>(k - F.e)];
        for (int j = 0; j < F.e; ++j) acc[j] += v * row[j];
    }
    FqElement r;
    r.deg = static_cast<std::int8_t>(F.e);
    for (int j = 0; j < F.e; ++j) {
        r.c[j] = static_cast<std::int32_t>(mod_p(acc[j], p));
    }
    return r;
}

inline std::size_t reduce_period(const FieldSpec& F) {
    const std::int64_t pm1 = F.p - 1;
    const std::int64_t per_step = static_cast<std::int64_t>(F.e) * pm1 * pm1;
    const std::int64_t cap = std::int64_t{1} << 62;
    return static_cast<std::size_t>(std::max<std::int64_t>(1, cap / std::max<std::int64_t>(1, per_step)));
}

/// Truncated convolution of plain coefficient vectors: out[k] for k < out_len.
inline std::vector<FqElement> conv_trunc_raw(const FieldSpec& F,
                                             const std::vector<FqElement>& a,
                                             const std::vector<FqElement>& b,
                                             std::size_t out_len) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const int e = F.e;
    const std::int64_t p = F.p;
    const Planes A = planes_of(F, a, na);
    const Planes B = planes_of(F, b, nb);
    const std::size_t period = reduce_period(F);
    std::vector<FqElement> out(out_len, fq_zero(F));
    for (std::size_t k = 0; k < out_len; ++k) {
        std::int64_t acc[2 * kMaxExtensionDegree - 1] = {0};
        const std::size_t i0 = k >= nb ? k - nb + 1 : 0;
        if (na == 0 || i0 >= na) continue;
        const std::size_t i1 = std::min(k, na - 1);
        std::size_t steps = 0;
        for (std::size_t i = i0; i <= i1; ++i) {
            const std::size_t j = k - i;
            for (int u = 0; u < e; ++u) {
                const std::int64_t av = A.v[static_cast<std::size_t>(u)][i];
                if (av == 0) continue;
                for (int vv = 0; vv < e; ++vv) {
                    acc[u + vv] += av * B.v[static_cast<std::size_t>(vv)][j];
                }
            }
            if (++steps == period) {
                for (int w = 0; w < 2 * e - 1; ++w) acc[w] %= p;
                steps = 0;
            }
        }
        out[k] = reduce_acc(F, acc);
    }
    return out;
}

/// Multiplicative inverse of a power series given by plain coefficients with
/// a[0] invertible, to out_len coefficients.
inline std::vector<FqElement> inv_series_raw(const FieldSpec& F,
                                             const std::vector<FqElement>& a,
                                             std::size_t out_len) {
    if (a.empty() || a[0].is_zero()) {
        throw NotInvertibleError("series with zero leading coefficient");
    }
    const int e = F.e;
    const std::int64_t p = F.p;
    const std::size_t na = std::min(a.size(), out_len);
    const Planes A = planes_of(F, a, na);
    Planes B;
    B.e = e;
    B.v.assign(static_cast<std::size_t>(e), std::vector<std::int64_t>(out_len, 0));
    std::vector<FqElement> b(out_len, fq_zero(F));
    const FqElement inv0 = fq_inv(F, a[0]);
    const FqElement neg_inv0 = fq_neg(F, inv0);
    b[0] = inv0;
    for (int u = 0; u < e; ++u) B.v[static_cast<std::size_t>(u)][0] = inv0.c[u];
    const std::size_t period = reduce_period(F);
    for (std::size_t k = 1; k < out_len; ++k) {
        std::int64_t acc[2 * kMaxExtensionDegree - 1] = {0};
        const std::size_t jmax = std::min(k, na - 1);
        std::size_t steps = 0;
        for (std::size_t j = 1; j <= jmax; ++j) {
            for (int u = 0; u < e; ++u) {
                const std::int64_t av = A.v[static_cast<std::size_t>(u)][j];
                if (av == 0) continue;
                for (int vv = 0; vv < e; ++vv) {
                    acc[u + vv] += av * B.v[static_cast<std::size_t>(vv)][k - j];
                }
            }
            if (++steps == period) {
                for (int w = 0; w < 2 * e - 1; ++w) acc[w] %= p;
                steps = 0;
            }
        }
        const FqElement s = reduce_acc(F, acc);
        const FqElement bk = fq_mul(F, neg_inv0, s);
        b[k] = bk;
        for (int u = 0; u < e; ++u) B.v[static_cast<std::size_t>(u)][k] = bk.c[u];
    }
    return b;
}

} // namespace detail

/// The exact zero series.
inline LaurentSeries ls_zero(const FieldSpec& F) {
    LaurentSeries r;
    r.field = F;
    r.known_exact = true;
    return r;
}

inline LaurentSeries ls_monomial(const FieldSpec& F, const FqElement& c, std::int64_t exp) {
    detail::check_field(F, c);
    LaurentSeries r = ls_zero(F);
    if (!c.is_zero()) {
        r.lead = exp;
        r.coeffs = {c};
    }
    return r;
}

inline LaurentSeries ls_one(const FieldSpec& F) { return ls_monomial(F, fq_one(F), 0); }

/// Exact series from a complete coefficient list starting at `lead`.
inline LaurentSeries ls_exact(const FieldSpec& F, std::int64_t lead,
                              std::vector<FqElement> coeffs) {
    LaurentSeries r = ls_zero(F);
    r.lead = lead;
    r.coeffs = std::move(coeffs);
    detail::ls_normalize(r);
    return r;
}

/// Series known only on the window [lead, lead + coeffs.size()).
inline LaurentSeries ls_from_window(const FieldSpec& F, std::int64_t lead,
                                    std::vector<FqElement> coeffs) {
    if (coeffs.empty()) {
        throw EmptyWindowError("a windowed series needs at least one coefficient");
    }
    LaurentSeries r;
    r.field = F;
    r.known_exact = false;
    r.lead = lead;
    r.coeffs = std::move(coeffs);
    detail::ls_normalize(r);
    return r;
}

/// The pure bound "valuation >= bound": zero to that precision, unknown after.
inline LaurentSeries ls_zero_to_precision(const FieldSpec& F, std::int64_t bound) {
    LaurentSeries r;
    r.field = F;
    r.known_exact = false;
    r.lead = bound;
    return r;
}

/// One-past-the-last known exponent, or nullopt for exact series.
inline std::optional<std::int64_t> ls_window_end(const LaurentSeries& a) {
    if (a.known_exact) return std::nullopt;
    return a.lead + static_cast<std::int64_t>(a.coeffs.size());
}

/// Coefficient at exponent k if it is determined, nullopt if beyond the
/// window.
inline std::optional<FqElement> ls_coeff(const LaurentSeries& a, std::int64_t k) {
    if (k < a.lead) return fq_zero(a.field);
    const std::int64_t off = k - a.lead;
    if (off < static_cast<std::int64_t>(a.coeffs.size())) {
        return a.coeffs[static_cast<std::size_t>(off)];
    }
    if (a.known_exact) return fq_zero(a.field);
    return std::nullopt;
}

inline Valuation ls_valuation(const LaurentSeries& a) {
    if (a.coeffs.empty()) {
        if (a.known_exact) return {Valuation::Kind::ExactZero, 0};
        return {Valuation::Kind::IndeterminateBeyond, a.lead};
    }
    return {Valuation::Kind::Finite, a.lead};
}

inline LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b) {
    detail::ls_check_fields(a, b);
    const FieldSpec& F = a.field;
    if (a.known_exact && a.coeffs.empty()) return b;
    if (b.known_exact && b.coeffs.empty()) return a;
    const std::int64_t na = static_cast<std::int64_t>(a.coeffs.size());
    const std::int64_t nb = static_cast<std::int64_t>(b.coeffs.size());
    const std::int64_t lead = std::min(a.lead, b.lead);
    std::int64_t end;
    bool exact;
    if (a.known_exact && b.known_exact) {
        end = std::max(a.lead + na, b.lead + nb);
        exact = true;
    } else {
        const std::int64_t end_a =
            a.known_exact ? std::numeric_limits<std::int64_t>::max() : a.lead + na;
        const std::int64_t end_b =
            b.known_exact ? std::numeric_limits<std::int64_t>::max() : b.lead + nb;
        end = std::min(end_a, end_b);
        exact = false;
        if (end <= lead) return ls_zero_to_precision(F, end);
    }
    LaurentSeries r;
    r.field = F;
    r.lead = lead;
    r.known_exact = exact;
    r.coeffs.assign(static_cast<std::size_t>(end - lead), fq_zero(F));
    const auto pull = [&](const LaurentSeries& x) {
        for (std::int64_t k = std::max(lead, x.lead);
             k < std::min(end, x.lead + static_cast<std::int64_t>(x.coeffs.size())); ++k) {
            auto& slot = r.coeffs[static_cast<std::size_t>(k - lead)];
            slot = fq_add(F, slot, x.coeffs[static_cast<std::size_t>(k - x.lead)]);
        }
    };
    pull(a);
    pull(b);
    detail::ls_normalize(r);
    return r;
}

inline LaurentSeries ls_scale(const LaurentSeries& a, const FqElement& c) {
    detail::check_field(a.field, c);
    if (c.is_zero()) return ls_zero(a.field);
    LaurentSeries r = a;
    for (auto& v : r.coeffs) v = fq_mul(a.field, v, c);
    detail::ls_normalize(r);
    return r;
}

inline LaurentSeries ls_neg(const LaurentSeries& a) {
    LaurentSeries r = a;
    for (auto& v : r.coeffs) v = fq_neg(a.field, v);
    return r;
}

inline LaurentSeries ls_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return ls_add(a, ls_neg(b));
}

/// Multiplication by t^k.
inline LaurentSeries ls_shift(const LaurentSeries& a, std::int64_t k) {
    LaurentSeries r = a;
    r.lead += k;
    return r;
}

inline LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b) {
    detail::ls_check_fields(a, b);
    const FieldSpec& F = a.field;
    if ((a.known_exact && a.coeffs.empty()) || (b.known_exact && b.coeffs.empty())) {
        return ls_zero(F);
    }
    // A pure bound forces a pure bound: only "valuation >= la + lb" survives.
    if (a.coeffs.empty() || b.coeffs.empty()) {
        return ls_zero_to_precision(F, a.lead + b.lead);
    }
    const std::size_t na = a.coeffs.size();
    const std::size_t nb = b.coeffs.size();
    std::size_t out_len;
    bool exact;
    if (a.known_exact && b.known_exact) {
        out_len = na + nb - 1;
        exact = true;
    } else {
        // An exact operand imposes no window limit of its own; the result is
        // determined up to the other operand's relative precision.
        out_len = std::min(a.known_exact ? nb : na, b.known_exact ? na : nb);
        exact = false;
    }
    LaurentSeries r;
    r.field = F;
    r.lead = a.lead + b.lead;
    r.known_exact = exact;
    r.coeffs = detail::conv_trunc_raw(F, a.coeffs, b.coeffs, out_len);
    detail::ls_normalize(r);
    return r;
}

/// Restricts knowledge of `a` to at most `window` coefficients from its lead.
/// A shorter exact series is returned unchanged.
inline LaurentSeries ls_truncate(const LaurentSeries& a, std::int64_t window) {
    if (window < 1) throw EmptyWindowError("truncation window must be >= 1");
    if (static_cast<std::int64_t>(a.coeffs.size()) <= window) {
        return a;
    }
    LaurentSeries r;
    r.field = a.field;
    r.lead = a.lead;
    r.known_exact = false;
    r.coeffs.assign(a.coeffs.begin(), a.coeffs.begin() + static_cast<std::ptrdiff_t>(window));
    detail::ls_normalize(r);
    return r;
}

/// Multiplicative inverse. For windowed input the result carries the same
/// relative precision (capped by precision_hint when positive). Exact input
/// needs an explicit positive precision_hint unless it is a monomial, whose
/// inverse is again exact.
inline LaurentSeries ls_inv(const LaurentSeries& a, std::int64_t precision_hint = 0) {
    const FieldSpec& F = a.field;
    if (a.coeffs.empty()) {
        throw NotInvertibleError(a.known_exact ? "inverse of the zero series"
                                               : "series is zero to its precision");
    }
    if (a.known_exact && a.coeffs.size() == 1) {
        return ls_monomial(F, fq_inv(F, a.coeffs[0]), -a.lead);
    }
    std::int64_t rel;
    if (a.known_exact) {
        if (precision_hint < 1) {
            throw PrecisionTooSmallError(
                "inverting a non-monomial exact series needs a positive precision hint");
        }
        rel = precision_hint;
    } else {
        rel = static_cast<std::int64_t>(a.coeffs.size());
        if (precision_hint > 0) rel = std::min(rel, precision_hint);
    }
    LaurentSeries r;
    r.field = F;
    r.lead = -a.lead;
    r.known_exact = false;
    r.coeffs = detail::inv_series_raw(F, a.coeffs, static_cast<std::size_t>(rel));
    detail::ls_normalize(r);
    return r;
}

/// a^n by binary exponentiation. Negative n inverts first (the hint sizes
/// that inversion). For exact bases a positive hint caps intermediate window
/// growth, trading exactness for bounded work.
inline LaurentSeries ls_pow(const LaurentSeries& a, const bigint& n,
                            std::int64_t precision_hint = 0) {
    const FieldSpec& F = a.field;
    if (n == 0) return ls_one(F);
    if (a.known_exact && a.coeffs.empty()) {
        if (n > 0) return ls_zero(F);
        throw NotInvertibleError("negative power of the zero series");
    }
    if (n < 0) return ls_pow(ls_inv(a, precision_hint), -n, precision_hint);
    if (bigint(a.lead < 0 ? -a.lead : a.lead) * n > (std::int64_t{1} << 60)) {
        throw LimitError("ls_pow exponent drives the valuation past 2^60");
    }
    const auto clamp = [&](LaurentSeries x) {
        if (precision_hint > 0 &&
            static_cast<std::int64_t>(x.coeffs.size()) > precision_hint) {
            return ls_truncate(x, precision_hint);
        }
        if (x.known_exact && x.coeffs.size() > (std::size_t{1} << 22)) {
            throw LimitError("exact power grew past 2^22 coefficients; pass a precision hint");
        }
        return x;
    };
    LaurentSeries base = a;
    LaurentSeries acc = ls_one(F);
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    for (unsigned i = 0; i < bits; ++i) {
        if (boost::multiprecision::bit_test(n, i)) acc = clamp(ls_mul(acc, base));
        if (i + 1 < bits) base = clamp(ls_mul(base, base));
    }
    return acc;
}

struct OverlapComparison {
    bool agree = true;
    std::int64_t begin = 0;
    std::int64_t end = 0; // exclusive; end <= begin means an empty overlap
};

/// Compares two series on every exponent where both are determined.
inline OverlapComparison ls_agree_on_overlap(const LaurentSeries& a, const LaurentSeries& b) {
    detail::ls_check_fields(a, b);
    OverlapComparison res;
    const std::int64_t end_a = a.known_exact
                                   ? std::numeric_limits<std::int64_t>::max()
                                   : a.lead + static_cast<std::int64_t>(a.coeffs.size());
    const std::int64_t end_b = b.known_exact
                                   ? std::numeric_limits<std::int64_t>::max()
                                   : b.lead + static_cast<std::int64_t>(b.coeffs.size());
    res.begin = std::min(a.lead, b.lead);
    res.end = std::min(end_a, end_b);
    if (res.end == std::numeric_limits<std::int64_t>::max()) {
        // Both exact: all coefficients are determined, compare full support.
        res.end = std::max(a.lead + static_cast<std::int64_t>(a.coeffs.size()),
                           b.lead + static_cast<std::int64_t>(b.coeffs.size()));
    }
    for (std::int64_t k = res.begin; k < res.end; ++k) {
        if (*ls_coeff(a, k) != *ls_coeff(b, k)) {
            res.agree = false;
            return res;
        }
    }
    return res;
}

inline std::string ls_to_string(const LaurentSeries& a) {
    const FieldSpec& F = a.field;
    if (a.known_exact && a.coeffs.empty()) return "0";
    std::string out;
    int shown = 0;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
        const FqElement& c = a.coeffs[k];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = fq_to_string(F, c);
        if (F.e > 1 && cs.size() > 1) cs = "(" + cs + ")";
        const std::int64_t exp = a.lead + static_cast<std::int64_t>(k);
        if (exp == 0) {
            out += cs;
        } else {
            out += (cs == "1" ? std::string() : cs + "*") + "t^" + std::to_string(exp);
        }
        ++shown;
        if (shown >= 12 && k + 1 < a.coeffs.size()) {
            out += " + ...";
            break;
        }
    }
    if (!a.known_exact) {
        const std::int64_t end = a.lead + static_cast<std::int64_t>(a.coeffs.size());
        if (!out.empty()) out += " + ";
        out += "O(t^" + std::to_string(end) + ")";
    }
    return out;
}

} // namespace ffzeta
