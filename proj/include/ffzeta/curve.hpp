#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/fq.hpp"
#include "ffzeta/intutil.hpp"
#include "ffzeta/laurent.hpp"

namespace ffzeta {

enum class CurveShape { ProjectiveLine, Elliptic, Hyperelliptic };

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCoeffs {
    FqElement a1, a2, a3, a4, a6;
};

/// y^2 + h(x) y = f(x) with f monic of degree 2g+1 and deg h <= g
/// (one point at infinity). Coefficient vectors are little-endian;
/// h is stored padded to length g+1.
struct HyperellipticCoeffs {
    int genus = 2;
    std::vector<FqElement> f;
    std::vector<FqElement> h;
};

/// A smooth projective curve over F_q with a single rational point at
/// infinity, given by one of the three supported affine models.
struct CurveModel {
    FieldSpec field;
    CurveShape shape = CurveShape::ProjectiveLine;
    int genus = 0;
    EllipticCoeffs ell;
    HyperellipticCoeffs hyp;
};

namespace detail {

// --- small dense polynomial helpers over F_q (little-endian vectors) ---

inline void poly_trim(const FieldSpec&, std::vector<FqElement>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::vector<FqElement> poly_mul(const FieldSpec& F, const std::vector<FqElement>& a,
                                       const std::vector<FqElement>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<FqElement> out = conv_trunc_raw(F, a, b, a.size() + b.size() - 1);
    poly_trim(F, out);
    return out;
}

inline std::vector<FqElement> poly_add(const FieldSpec& F, std::vector<FqElement> a,
                                       const std::vector<FqElement>& b) {
    if (b.size() > a.size()) a.resize(b.size(), fq_zero(F));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = fq_add(F, a[i], b[i]);
    poly_trim(F, a);
    return a;
}

inline std::vector<FqElement> poly_derivative(const FieldSpec& F,
                                              const std::vector<FqElement>& a) {
    std::vector<FqElement> out;
    for (std::size_t i = 1; i < a.size(); ++i) {
        out.push_back(fq_mul(F, a[i], fq_from_int(F, static_cast<std::int64_t>(i))));
    }
    poly_trim(F, out);
    return out;
}

inline std::vector<FqElement> poly_mod(const FieldSpec& F, std::vector<FqElement> a,
                                       const std::vector<FqElement>& b) {
    const std::size_t db = b.size() - 1;
    const FqElement lead_inv = fq_inv(F, b.back());
    while (a.size() > db) {
        const FqElement coef = fq_mul(F, a.back(), lead_inv);
        const std::size_t shift = a.size() - 1 - db;
        if (!coef.is_zero()) {
            for (std::size_t j = 0; j <= db; ++j) {
                a[shift + j] = fq_sub(F, a[shift + j], fq_mul(F, coef, b[j]));
            }
        }
        a.pop_back();
        poly_trim(F, a);
        if (a.size() <= db) break;
    }
    return a;
}

inline std::vector<FqElement> poly_gcd(const FieldSpec& F, std::vector<FqElement> a,
                                       std::vector<FqElement> b) {
    poly_trim(F, a);
    poly_trim(F, b);
    while (!b.empty()) {
        if (a.size() < b.size()) {
            std::swap(a, b);
            continue;
        }
        a = poly_mod(F, std::move(a), b);
        std::swap(a, b);
    }
    return a;
}

} // namespace detail

inline CurveModel make_projective_line(const FieldSpec& F) {
    CurveModel c;
    c.field = F;
    c.shape = CurveShape::ProjectiveLine;
    c.genus = 0;
    return c;
}

inline CurveModel make_elliptic(const FieldSpec& F, const FqElement& a1, const FqElement& a2,
                                const FqElement& a3, const FqElement& a4, const FqElement& a6) {
    for (const FqElement* v : {&a1, &a2, &a3, &a4, &a6}) detail::check_field(F, *v);
    const auto I = [&](std::int64_t n) { return fq_from_int(F, n); };
    const auto M = [&](const FqElement& x, const FqElement& y) { return fq_mul(F, x, y); };
    const auto A = [&](const FqElement& x, const FqElement& y) { return fq_add(F, x, y); };
    // Standard discriminant of the general Weierstrass model; valid in every
    // characteristic.
    const FqElement b2 = A(M(a1, a1), M(I(4), a2));
    const FqElement b4 = A(M(I(2), a4), M(a1, a3));
    const FqElement b6 = A(M(a3, a3), M(I(4), a6));
    FqElement b8 = A(M(M(a1, a1), a6), M(I(4), M(a2, a6)));
    b8 = fq_sub(F, b8, M(a1, M(a3, a4)));
    b8 = A(b8, M(a2, M(a3, a3)));
    b8 = fq_sub(F, b8, M(a4, a4));
    FqElement disc = fq_neg(F, M(M(b2, b2), b8));
    disc = fq_sub(F, disc, M(I(8), M(b4, M(b4, b4))));
    disc = fq_sub(F, disc, M(I(27), M(b6, b6)));
    disc = A(disc, M(I(9), M(b2, M(b4, b6))));
    if (disc.is_zero()) {
        throw SingularModelError("elliptic model has vanishing discriminant");
    }
    CurveModel c;
    c.field = F;
    c.shape = CurveShape::Elliptic;
    c.genus = 1;
    c.ell = {a1, a2, a3, a4, a6};
    return c;
}

inline CurveModel make_hyperelliptic(const FieldSpec& F, int genus, std::vector<FqElement> f,
                                     std::vector<FqElement> h) {
    if (genus < 2) throw Error("hyperelliptic model requires genus >= 2");
    if (genus > 12) throw LimitError("hyperelliptic genus cap is 12");
    const std::size_t fn = static_cast<std::size_t>(2 * genus + 2);
    if (f.size() != fn) {
        throw DegreeMismatchError("f must have degree exactly 2g+1 (list of 2g+2 coefficients)");
    }
    for (const auto& v : f) detail::check_field(F, v);
    if (!(f.back() == fq_one(F))) throw DegreeMismatchError("f must be monic");
    if (h.size() > static_cast<std::size_t>(genus) + 1) {
        throw DegreeMismatchError("h must have degree at most g");
    }
    for (const auto& v : h) detail::check_field(F, v);
    h.resize(static_cast<std::size_t>(genus) + 1, fq_zero(F));

    if (F.p == 2) {
        bool h_zero = true;
        for (const auto& v : h) {
            if (!v.is_zero()) h_zero = false;
        }
        if (h_zero) {
            throw SingularModelError("characteristic 2 requires a nonzero h");
        }
        // Singular points need h(x0) = 0 together with h'(x0)^2 f(x0) =
        // f'(x0)^2 at the matching y0, so smoothness is gcd(h, h'^2 f - f'^2) = 1.
        const auto hp = detail::poly_derivative(F, h);
        const auto fp = detail::poly_derivative(F, f);
        auto lhs = detail::poly_mul(F, detail::poly_mul(F, hp, hp), f);
        auto rhs = detail::poly_mul(F, fp, fp);
        for (auto& v : rhs) v = fq_neg(F, v);
        auto target = detail::poly_add(F, std::move(lhs), rhs);
        auto hcopy = h;
        detail::poly_trim(F, hcopy);
        const auto g = detail::poly_gcd(F, hcopy, target);
        if (g.size() != 1) {
            throw SingularModelError("hyperelliptic model has a singular affine point");
        }
    } else {
        // Complete the square: the model is smooth iff f + h^2/4 is squarefree.
        const FqElement quarter = fq_inv(F, fq_from_int(F, 4));
        auto h2 = detail::poly_mul(F, h, h);
        for (auto& v : h2) v = fq_mul(F, v, quarter);
        auto fhat = detail::poly_add(F, f, h2);
        const auto g = detail::poly_gcd(F, fhat, detail::poly_derivative(F, fhat));
        if (g.size() != 1) {
            throw SingularModelError("hyperelliptic model is not squarefree after completing the square");
        }
    }
    CurveModel c;
    c.field = F;
    c.shape = CurveShape::Hyperelliptic;
    c.genus = genus;
    c.hyp.genus = genus;
    c.hyp.f = std::move(f);
    c.hyp.h = std::move(h);
    return c;
}

/// The i-th pole order at infinity (i = 0, 1, ...) of the coordinate ring:
/// 0 for i = 0, then the i-th non-gap.
inline std::int64_t nth_nongap(const CurveModel& c, int i) {
    if (i < 0) throw Error("non-gap index must be >= 0");
    if (c.shape == CurveShape::ProjectiveLine) return i;
    return i < c.genus ? 2 * std::int64_t{i} : std::int64_t{i} + c.genus;
}

struct NonGapSequence {
    int genus = 0;
    std::vector<std::int64_t> terms;
};

inline NonGapSequence nongap_sequence(const CurveModel& c, int count) {
    if (count < 0) throw Error("nongap_sequence requires a non-negative count");
    NonGapSequence s;
    s.genus = c.genus;
    s.terms.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) s.terms.push_back(nth_nongap(c, i));
    return s;
}

enum class ConditionClass { A, B, Both, Neither };

inline std::string condition_class_name(ConditionClass c) {
    switch (c) {
        case ConditionClass::A: return "A";
        case ConditionClass::B: return "B";
        case ConditionClass::Both: return "A&B";
        default: return "Neither";
    }
}

/// Classifies a non-gap sequence against the two supported shapes:
/// (A) 0, g+1, g+2, ...      (B) 0, 2, 4, ..., 2g-2, 2g, 2g+1, ...
/// For genus <= 1 the shapes coincide. Throws SequenceTooShortError when the
/// sequence is too short to decide (fewer than 2g+2 terms).
inline ConditionClass condition_class(const NonGapSequence& s) {
    const int g = s.genus;
    if (g < 0) throw Error("negative genus");
    const std::size_t need = static_cast<std::size_t>(2 * g + 2);
    if (s.terms.size() < need) {
        throw SequenceTooShortError("need at least " + std::to_string(need) +
                                    " non-gaps to classify genus " + std::to_string(g));
    }
    if (s.terms.empty() || s.terms[0] != 0) return ConditionClass::Neither;
    bool is_a = true;
    bool is_b = true;
    for (std::size_t j = 1; j < s.terms.size(); ++j) {
        const std::int64_t ja = static_cast<std::int64_t>(j) + g;
        if (s.terms[j] != ja) is_a = false;
        const std::int64_t jb = j < static_cast<std::size_t>(g)
                                    ? 2 * static_cast<std::int64_t>(j)
                                    : static_cast<std::int64_t>(j) + g;
        if (s.terms[j] != jb) is_b = false;
    }
    if (is_a && is_b) return ConditionClass::Both;
    if (is_a) return ConditionClass::A;
    if (is_b) return ConditionClass::B;
    return ConditionClass::Neither;
}

/// Element of the coordinate ring, written in the pole-order basis
/// xi_0, xi_1, ... (xi_i has pole order nth_nongap(i) and expansion with
/// leading coefficient 1). Trailing zero coordinates are stripped; empty
/// means zero.
struct RingElement {
    std::vector<FqElement> coords;

    bool is_zero() const { return coords.empty(); }
};

namespace detail {

inline void ring_trim(RingElement& a) {
    while (!a.coords.empty() && a.coords.back().is_zero()) a.coords.pop_back();
}

// Monomial data for basis index i: xi_i = sign * x^xpow * y^ypow where sign
// normalizes the expansion at infinity to leading coefficient 1.
struct MonomialTable {
    std::vector<std::int64_t> order;
    std::vector<std::int32_t> xpow, ypow;
    std::vector<bool> negate;
    std::vector<std::int64_t> index_of_order; // -1 marks gaps

    int size() const { return static_cast<int>(order.size()); }
};

inline MonomialTable build_monomial_table(const CurveModel& c, int count) {
    if (count < 0) count = 0;
    if (count > (1 << 22)) throw LimitError("ring basis cap is 2^22 monomials");
    MonomialTable t;
    t.order.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::int64_t d = nth_nongap(c, i);
        t.order.push_back(d);
        if (c.shape == CurveShape::ProjectiveLine) {
            t.xpow.push_back(i);
            t.ypow.push_back(0);
            t.negate.push_back(false);
        } else {
            const std::int64_t w = 2 * c.genus + 1;
            if (d % 2 == 0) {
                t.xpow.push_back(static_cast<std::int32_t>(d / 2));
                t.ypow.push_back(0);
                t.negate.push_back(false);
            } else {
                t.xpow.push_back(static_cast<std::int32_t>((d - w) / 2));
                t.ypow.push_back(1);
                // y expands with leading coefficient -1 on the elliptic
                // parametrization, +1 on the hyperelliptic one.
                t.negate.push_back(c.shape == CurveShape::Elliptic);
            }
        }
    }
    const std::int64_t max_order = t.order.empty() ? 0 : t.order.back();
    t.index_of_order.assign(static_cast<std::size_t>(max_order) + 1, -1);
    for (int i = 0; i < t.size(); ++i) {
        t.index_of_order[static_cast<std::size_t>(t.order[static_cast<std::size_t>(i)])] = i;
    }
    return t;
}

// Index of the monomial x^a y^b in the pole-order basis.
inline int monomial_index(const CurveModel& c, std::int64_t a, int b) {
    if (c.shape == CurveShape::ProjectiveLine) return static_cast<int>(a);
    const std::int64_t d = 2 * a + (2 * c.genus + 1) * b;
    if (d % 2 == 0) return static_cast<int>(d >= 2 * c.genus ? d - c.genus : d / 2);
    return static_cast<int>(d - c.genus);
}

} // namespace detail

inline RingElement ring_zero(const CurveModel&) { return {}; }

inline RingElement ring_one(const CurveModel& c) {
    RingElement r;
    r.coords = {fq_one(c.field)};
    return r;
}

/// xi_i as a ring element.
inline RingElement basis_element(const CurveModel& c, int i) {
    if (i < 0) throw Error("basis index must be >= 0");
    RingElement r;
    r.coords.assign(static_cast<std::size_t>(i) + 1, fq_zero(c.field));
    r.coords.back() = fq_one(c.field);
    return r;
}

/// Pole order at infinity (the degree of the element); -1 for zero.
inline std::int64_t ring_pole_order(const CurveModel& c, const RingElement& a) {
    if (a.coords.empty()) return -1;
    return nth_nongap(c, static_cast<int>(a.coords.size()) - 1);
}

inline RingElement ring_mul(const CurveModel& c, const RingElement& a, const RingElement& b) {
    const FieldSpec& F = c.field;
    if (a.is_zero() || b.is_zero()) return {};
    const std::int64_t max_order = ring_pole_order(c, a) + ring_pole_order(c, b);
    // Number of basis indices needed to cover max_order.
    int count = 0;
    while (nth_nongap(c, count) < max_order) ++count;
    ++count;
    const detail::MonomialTable table = detail::build_monomial_table(c, count);

    const auto to_mono = [&](const RingElement& v) {
        std::vector<FqElement> m(v.coords.size(), fq_zero(F));
        for (std::size_t i = 0; i < v.coords.size(); ++i) {
            m[i] = table.negate[i] ? fq_neg(F, v.coords[i]) : v.coords[i];
        }
        return m;
    };
    const std::vector<FqElement> am = to_mono(a);
    const std::vector<FqElement> bm = to_mono(b);

    std::vector<FqElement> out(static_cast<std::size_t>(count), fq_zero(F));
    const auto deposit = [&](std::int64_t xp, int yp, const FqElement& v) {
        if (v.is_zero()) return;
        const int idx = detail::monomial_index(c, xp, yp);
        out[static_cast<std::size_t>(idx)] = fq_add(F, out[static_cast<std::size_t>(idx)], v);
    };

    for (std::size_t ia = 0; ia < am.size(); ++ia) {
        if (am[ia].is_zero()) continue;
        for (std::size_t ib = 0; ib < bm.size(); ++ib) {
            if (bm[ib].is_zero()) continue;
            const FqElement v = fq_mul(F, am[ia], bm[ib]);
            const std::int64_t xp = table.xpow[ia] + table.xpow[ib];
            const int yp = table.ypow[ia] + table.ypow[ib];
            if (yp <= 1) {
                deposit(xp, yp, v);
                continue;
            }
            // Fold y^2 through the curve equation.
            if (c.shape == CurveShape::Elliptic) {
                // y^2 = x^3 + a2 x^2 + a4 x + a6 - a1 x y - a3 y
                deposit(xp + 3, 0, v);
                deposit(xp + 2, 0, fq_mul(F, v, c.ell.a2));
                deposit(xp + 1, 0, fq_mul(F, v, c.ell.a4));
                deposit(xp, 0, fq_mul(F, v, c.ell.a6));
                deposit(xp + 1, 1, fq_neg(F, fq_mul(F, v, c.ell.a1)));
                deposit(xp, 1, fq_neg(F, fq_mul(F, v, c.ell.a3)));
            } else {
                // y^2 = f(x) - h(x) y
                for (std::size_t j = 0; j < c.hyp.f.size(); ++j) {
                    deposit(xp + static_cast<std::int64_t>(j), 0, fq_mul(F, v, c.hyp.f[j]));
                }
                for (std::size_t j = 0; j < c.hyp.h.size(); ++j) {
                    deposit(xp + static_cast<std::int64_t>(j), 1,
                            fq_neg(F, fq_mul(F, v, c.hyp.h[j])));
                }
            }
        }
    }
    RingElement r;
    r.coords.resize(static_cast<std::size_t>(count), fq_zero(F));
    for (int i = 0; i < count; ++i) {
        r.coords[static_cast<std::size_t>(i)] =
            table.negate[static_cast<std::size_t>(i)] ? fq_neg(F, out[static_cast<std::size_t>(i)])
                                                      : out[static_cast<std::size_t>(i)];
    }
    detail::ring_trim(r);
    return r;
}

/// a^n in the coordinate ring, n >= 0.
inline RingElement ring_pow(const CurveModel& c, const RingElement& a, const bigint& n) {
    if (n < 0) throw Error("ring_pow requires a non-negative exponent");
    if (n == 0) return ring_one(c);
    if (a.is_zero()) return {};
    if (bigint(ring_pole_order(c, a)) * n > (1 << 22)) {
        throw LimitError("ring power grows past the basis cap");
    }
    RingElement base = a;
    RingElement acc = ring_one(c);
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    for (unsigned i = 0; i < bits; ++i) {
        if (boost::multiprecision::bit_test(n, i)) acc = ring_mul(c, acc, base);
        if (i + 1 < bits) base = ring_mul(c, base, base);
    }
    return acc;
}

/// Number of monic elements of degree-index i: q^i.
inline bigint monic_count(const CurveModel& c, int i) {
    if (i < 0) throw Error("degree index must be >= 0");
    bigint n = 1;
    for (int j = 0; j < i; ++j) n *= c.field.q;
    return n;
}

/// The k-th monic element of degree-index i:
/// xi_i + f_0 xi_{i-1} + ... + f_{i-1} xi_0, where (f_0, ..., f_{i-1}) is the
/// base-q expansion of k with f_0 most significant. Deterministic and
/// stream-friendly.
inline RingElement monic_element(const CurveModel& c, int i, std::uint64_t k) {
    if (i < 0) throw Error("degree index must be >= 0");
    RingElement r;
    r.coords.assign(static_cast<std::size_t>(i) + 1, fq_zero(c.field));
    r.coords.back() = fq_one(c.field);
    // Base-q digits of k, most significant digit paired with xi_{i-1}.
    for (int j = 0; j < i; ++j) {
        r.coords[static_cast<std::size_t>(j)] = index_to_element(c.field, k % c.field.q);
        k /= c.field.q;
    }
    if (k != 0) throw LimitError("monic element index out of range");
    return r;
}

inline std::vector<RingElement> monic_elements(const CurveModel& c, int i) {
    const bigint n = monic_count(c, i);
    if (n > (1 << 20)) throw LimitError("monic_elements cap is 2^20 elements");
    std::vector<RingElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t k = 0; k < n; ++k) out.push_back(monic_element(c, i, k));
    return out;
}

namespace detail {

// --- Newton solves for the local coordinate at infinity ---
// Both supported models reduce to a fixed-point equation Phi(S) = 0 for a
// power series S with S(0) = 1 whose derivative is a unit, so a Hensel lift
// doubles the correct length each round.

using Coeffs = std::vector<FqElement>;

inline Coeffs series_shift(const FieldSpec& F, const Coeffs& a, std::size_t k, std::size_t len) {
    Coeffs out(len, fq_zero(F));
    for (std::size_t i = 0; i + k < len && i < a.size(); ++i) out[i + k] = a[i];
    return out;
}

inline void series_add_scaled(const FieldSpec& F, Coeffs& acc, const Coeffs& a,
                              const FqElement& scale) {
    if (scale.is_zero()) return;
    if (a.size() > acc.size()) acc.resize(a.size(), fq_zero(F));
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc[i] = fq_add(F, acc[i], fq_mul(F, scale, a[i]));
    }
}

inline bool series_is_zero(const Coeffs& a) {
    for (const auto& v : a) {
        if (!v.is_zero()) return false;
    }
    return true;
}

struct LocalEquation {
    // Phi(S) truncated to len coefficients.
    virtual Coeffs residual(const FieldSpec& F, const Coeffs& s, std::size_t len) const = 0;
    // Phi'(S) truncated to len coefficients.
    virtual Coeffs derivative(const FieldSpec& F, const Coeffs& s, std::size_t len) const = 0;
    virtual ~LocalEquation() = default;
};

// Elliptic: w = t^3 S with S = 1 + a1 t S + a2 t^2 S + a3 t^3 S^2
//                              + a4 t^4 S^2 + a6 t^6 S^3.
struct EllipticEquation final : LocalEquation {
    EllipticCoeffs k;

    Coeffs residual(const FieldSpec& F, const Coeffs& s, std::size_t len) const override {
        const Coeffs s2 = conv_trunc_raw(F, s, s, len);
        const Coeffs s3 = conv_trunc_raw(F, s2, s, len);
        Coeffs out(len, fq_zero(F));
        for (std::size_t i = 0; i < s.size() && i < len; ++i) out[i] = s[i];
        out[0] = fq_sub(F, out[0], fq_one(F));
        const FqElement neg1 = fq_neg(F, fq_one(F));
        series_add_scaled(F, out, series_shift(F, s, 1, len), fq_mul(F, neg1, k.a1));
        series_add_scaled(F, out, series_shift(F, s, 2, len), fq_mul(F, neg1, k.a2));
        series_add_scaled(F, out, series_shift(F, s2, 3, len), fq_mul(F, neg1, k.a3));
        series_add_scaled(F, out, series_shift(F, s2, 4, len), fq_mul(F, neg1, k.a4));
        series_add_scaled(F, out, series_shift(F, s3, 6, len), fq_mul(F, neg1, k.a6));
        out.resize(len, fq_zero(F));
        return out;
    }

    Coeffs derivative(const FieldSpec& F, const Coeffs& s, std::size_t len) const override {
        const Coeffs s2 = conv_trunc_raw(F, s, s, len);
        Coeffs out(len, fq_zero(F));
        out[0] = fq_one(F);
        const FqElement neg1 = fq_neg(F, fq_one(F));
        Coeffs unit(1, fq_one(F));
        series_add_scaled(F, out, series_shift(F, unit, 1, len), fq_mul(F, neg1, k.a1));
        series_add_scaled(F, out, series_shift(F, unit, 2, len), fq_mul(F, neg1, k.a2));
        const FqElement m2 = fq_from_int(F, 2);
        const FqElement m3 = fq_from_int(F, 3);
        series_add_scaled(F, out, series_shift(F, s, 3, len),
                          fq_mul(F, neg1, fq_mul(F, m2, k.a3)));
        series_add_scaled(F, out, series_shift(F, s, 4, len),
                          fq_mul(F, neg1, fq_mul(F, m2, k.a4)));
        series_add_scaled(F, out, series_shift(F, s2, 6, len),
                          fq_mul(F, neg1, fq_mul(F, m3, k.a6)));
        out.resize(len, fq_zero(F));
        return out;
    }
};

// Hyperelliptic: u = t^2 S with
// S = 1 + sum_j f_j t^{2(2g+1-j)} S^{2g+1-j} - sum_j h_j t^{2(g+1-j)-1} S^{g+1-j}.
struct HyperellipticEquation final : LocalEquation {
    HyperellipticCoeffs k;

    Coeffs residual(const FieldSpec& F, const Coeffs& s, std::size_t len) const override {
        const int g = k.genus;
        const int topf = 2 * g + 1;
        std::vector<Coeffs> pow(static_cast<std::size_t>(topf) + 1);
        pow[0] = Coeffs(1, fq_one(F));
        for (int m = 1; m <= topf; ++m) {
            pow[static_cast<std::size_t>(m)] =
                conv_trunc_raw(F, pow[static_cast<std::size_t>(m - 1)], s, len);
        }
        Coeffs out(len, fq_zero(F));
        for (std::size_t i = 0; i < s.size() && i < len; ++i) out[i] = s[i];
        out[0] = fq_sub(F, out[0], fq_one(F));
        const FqElement neg1 = fq_neg(F, fq_one(F));
        for (int j = 0; j <= 2 * g; ++j) {
            const int beta = topf - j;
            series_add_scaled(
                F, out,
                series_shift(F, pow[static_cast<std::size_t>(beta)],
                             static_cast<std::size_t>(2 * beta), len),
                fq_mul(F, neg1, k.f[static_cast<std::size_t>(j)]));
        }
        for (int j = 0; j <= g; ++j) {
            const int delta = g + 1 - j;
            series_add_scaled(F, out,
                              series_shift(F, pow[static_cast<std::size_t>(delta)],
                                           static_cast<std::size_t>(2 * delta - 1), len),
                              k.h[static_cast<std::size_t>(j)]);
        }
        out.resize(len, fq_zero(F));
        return out;
    }

    Coeffs derivative(const FieldSpec& F, const Coeffs& s, std::size_t len) const override {
        const int g = k.genus;
        const int topf = 2 * g + 1;
        std::vector<Coeffs> pow(static_cast<std::size_t>(topf));
        pow[0] = Coeffs(1, fq_one(F));
        for (int m = 1; m < topf; ++m) {
            pow[static_cast<std::size_t>(m)] =
                conv_trunc_raw(F, pow[static_cast<std::size_t>(m - 1)], s, len);
        }
        Coeffs out(len, fq_zero(F));
        out[0] = fq_one(F);
        const FqElement neg1 = fq_neg(F, fq_one(F));
        for (int j = 0; j <= 2 * g; ++j) {
            const int beta = topf - j;
            const FqElement mult = fq_mul(F, fq_from_int(F, beta), k.f[static_cast<std::size_t>(j)]);
            series_add_scaled(F, out,
                              series_shift(F, pow[static_cast<std::size_t>(beta - 1)],
                                           static_cast<std::size_t>(2 * beta), len),
                              fq_mul(F, neg1, mult));
        }
        for (int j = 0; j <= g; ++j) {
            const int delta = g + 1 - j;
            const FqElement mult =
                fq_mul(F, fq_from_int(F, delta), k.h[static_cast<std::size_t>(j)]);
            series_add_scaled(F, out,
                              series_shift(F, pow[static_cast<std::size_t>(delta - 1)],
                                           static_cast<std::size_t>(2 * delta - 1), len),
                              mult);
        }
        out.resize(len, fq_zero(F));
        return out;
    }
};

inline Coeffs newton_solve(const FieldSpec& F, const LocalEquation& eq, std::size_t target) {
    Coeffs s(1, fq_one(F));
    std::size_t len = 1;
    while (len < target) {
        len = std::min(len * 2, target);
        const Coeffs phi = eq.residual(F, s, len);
        const Coeffs dphi = eq.derivative(F, s, len);
        const Coeffs dinv = inv_series_raw(F, dphi, len);
        const Coeffs corr = conv_trunc_raw(F, phi, dinv, len);
        s.resize(len, fq_zero(F));
        for (std::size_t i = 0; i < len; ++i) s[i] = fq_sub(F, s[i], corr[i]);
    }
    if (!series_is_zero(eq.residual(F, s, target))) {
        throw Error("local coordinate solve failed to converge");
    }
    return s;
}

} // namespace detail

/// Laurent expansions at the infinite place, all to one shared window. Basis
/// expansions are powers of a single unit series V: the monomial x^a y^b
/// expands as (+-1) t^{-(pole order)} V^{a + g b}, so building the table
/// costs one series inversion plus one truncated product per power.
class CurveExpansion {
public:
    CurveExpansion(const CurveModel& curve, std::int64_t window, int max_index)
        : curve_(curve), window_(window) {
        if (window < 1) throw PrecisionTooSmallError("expansion window must be >= 1");
        if (max_index < 0) max_index = 0;
        table_ = detail::build_monomial_table(curve_, max_index + 1);
        if (curve_.shape == CurveShape::ProjectiveLine) return;
        const std::size_t len = static_cast<std::size_t>(window);
        detail::Coeffs unit_series;
        if (curve_.shape == CurveShape::Elliptic) {
            detail::EllipticEquation eq;
            eq.k = curve_.ell;
            unit_series = detail::newton_solve(curve_.field, eq, len);
        } else {
            detail::HyperellipticEquation eq;
            eq.k = curve_.hyp;
            unit_series = detail::newton_solve(curve_.field, eq, len);
        }
        int max_vpow = 0;
        for (int i = 0; i < table_.size(); ++i) {
            const int kv = table_.xpow[static_cast<std::size_t>(i)] +
                           curve_.genus * table_.ypow[static_cast<std::size_t>(i)];
            max_vpow = std::max(max_vpow, kv);
        }
        vpow_.resize(static_cast<std::size_t>(max_vpow) + 1);
        vpow_[0] = detail::Coeffs(len, fq_zero(curve_.field));
        vpow_[0][0] = fq_one(curve_.field);
        if (max_vpow >= 1) {
            vpow_[1] = detail::inv_series_raw(curve_.field, unit_series, len);
            for (int kv = 2; kv <= max_vpow; ++kv) {
                vpow_[static_cast<std::size_t>(kv)] = detail::conv_trunc_raw(
                    curve_.field, vpow_[static_cast<std::size_t>(kv - 1)], vpow_[1], len);
            }
        }
    }

    const CurveModel& curve() const { return curve_; }
    std::int64_t window() const { return window_; }
    int max_index() const { return table_.size() - 1; }

    /// Expansion of xi_i: leading coefficient 1 at t^{-d_i}.
    LaurentSeries basis(int i) const {
        check_index(i);
        const FieldSpec& F = curve_.field;
        if (curve_.shape == CurveShape::ProjectiveLine) {
            return ls_monomial(F, fq_one(F), -table_.order[static_cast<std::size_t>(i)]);
        }
        const int kv = table_.xpow[static_cast<std::size_t>(i)] +
                       curve_.genus * table_.ypow[static_cast<std::size_t>(i)];
        return ls_from_window(F, -table_.order[static_cast<std::size_t>(i)],
                              vpow_[static_cast<std::size_t>(kv)]);
    }

    /// Expansion of the monomial x^a y^b itself (no sign normalization).
    LaurentSeries monomial(int i) const {
        LaurentSeries s = basis(i);
        return table_.negate[static_cast<std::size_t>(i)] ? ls_neg(s) : s;
    }

    LaurentSeries expand(const RingElement& elem) const { return expand(elem, window_); }

    /// Expansion truncated to `window` coefficients from the lead.
    LaurentSeries expand(const RingElement& elem, std::int64_t window) const {
        const FieldSpec& F = curve_.field;
        if (window < 1) throw PrecisionTooSmallError("expansion window must be >= 1");
        if (window > window_) {
            throw PrecisionTooSmallError("expansion context window is smaller than requested");
        }
        if (elem.is_zero()) return ls_zero(F);
        const int top = static_cast<int>(elem.coords.size()) - 1;
        check_index(top);
        const std::int64_t d_top = table_.order[static_cast<std::size_t>(top)];
        if (curve_.shape == CurveShape::ProjectiveLine) {
            // Exact polynomial in t^{-1}.
            std::vector<FqElement> coeffs(static_cast<std::size_t>(d_top) + 1, fq_zero(F));
            for (std::size_t j = 0; j < elem.coords.size(); ++j) {
                coeffs[static_cast<std::size_t>(d_top) - table_.order[j]] = elem.coords[j];
            }
            return ls_exact(F, -d_top, std::move(coeffs));
        }
        std::vector<FqElement> out(static_cast<std::size_t>(window), fq_zero(F));
        for (std::size_t j = 0; j < elem.coords.size(); ++j) {
            const FqElement& cj = elem.coords[j];
            if (cj.is_zero()) continue;
            const std::size_t off = static_cast<std::size_t>(d_top - table_.order[j]);
            const int kv = table_.xpow[j] + curve_.genus * table_.ypow[j];
            const detail::Coeffs& src = vpow_[static_cast<std::size_t>(kv)];
            for (std::size_t idx = 0; off + idx < static_cast<std::size_t>(window); ++idx) {
                out[off + idx] = fq_add(F, out[off + idx], fq_mul(F, cj, src[idx]));
            }
        }
        return ls_from_window(F, -d_top, std::move(out));
    }

private:
    void check_index(int i) const {
        if (i < 0 || i >= table_.size()) {
            throw LimitError("basis index outside the expansion context");
        }
    }

    CurveModel curve_;
    std::int64_t window_;
    detail::MonomialTable table_;
    std::vector<detail::Coeffs> vpow_;
};

/// One-off expansion of a ring element to `precision` coefficients from its
/// leading exponent.
inline LaurentSeries expand_at_infinity(const CurveModel& c, const RingElement& elem,
                                        std::int64_t precision) {
    if (precision < 1) throw PrecisionTooSmallError("expansion precision must be >= 1");
    const int top = elem.is_zero() ? 0 : static_cast<int>(elem.coords.size()) - 1;
    CurveExpansion ctx(c, precision, top);
    return ctx.expand(elem);
}

/// Short human-readable description of the model.
inline std::string describe_curve(const CurveModel& c) {
    const std::string fq = "F_" + std::to_string(c.field.q);
    switch (c.shape) {
        case CurveShape::ProjectiveLine:
            return "P^1 over " + fq;
        case CurveShape::Elliptic: {
            const FieldSpec& F = c.field;
            std::string lhs = "y^2";
            if (!c.ell.a1.is_zero()) lhs += " + " + fq_to_string(F, c.ell.a1) + "*x*y";
            if (!c.ell.a3.is_zero()) lhs += " + " + fq_to_string(F, c.ell.a3) + "*y";
            std::string rhs = "x^3";
            if (!c.ell.a2.is_zero()) rhs += " + " + fq_to_string(F, c.ell.a2) + "*x^2";
            if (!c.ell.a4.is_zero()) rhs += " + " + fq_to_string(F, c.ell.a4) + "*x";
            if (!c.ell.a6.is_zero()) rhs += " + " + fq_to_string(F, c.ell.a6);
            return lhs + " = " + rhs + " over " + fq;
        }
        default: {
            const FieldSpec& F = c.field;
            std::string lhs = "y^2";
            bool h_nonzero = false;
            for (const auto& v : c.hyp.h) {
                if (!v.is_zero()) h_nonzero = true;
            }
            if (h_nonzero) lhs += " + h(x)*y";
            std::string rhs = "f(x), deg f = " + std::to_string(2 * c.genus + 1);
            (void)F;
            return lhs + " = " + rhs + ", genus " + std::to_string(c.genus) + " over " + fq;
        }
    }
}

} // namespace ffzeta
