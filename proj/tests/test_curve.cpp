#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ffzeta/curve.hpp"

namespace ffzeta {
namespace {

const FieldSpec F2 = make_field(2, 1);
const FieldSpec F3 = make_field(3, 1);
const FieldSpec F4 = make_field(2, 2, {1, 1, 1});
const FieldSpec F5 = make_field(5, 1);

FqElement el(const FieldSpec& F, std::int64_t v) { return fq_from_int(F, v); }

CurveModel elliptic_f3() {
    // y^2 = x^3 - x + 1
    return make_elliptic(F3, fq_zero(F3), fq_zero(F3), fq_zero(F3), el(F3, 2), el(F3, 1));
}

CurveModel elliptic_f2() {
    // y^2 + y = x^3
    return make_elliptic(F2, fq_zero(F2), fq_zero(F2), fq_one(F2), fq_zero(F2), fq_zero(F2));
}

CurveModel elliptic_f4() {
    // y^2 + xy = x^3 + gx with g = x mod (x^2+x+1)
    return make_elliptic(F4, fq_one(F4), fq_zero(F4), fq_zero(F4), index_to_element(F4, 2),
                         fq_zero(F4));
}

CurveModel genus2_f3() {
    // y^2 = x^5 + 2x + 1
    std::vector<FqElement> f(6, fq_zero(F3));
    f[0] = el(F3, 1);
    f[1] = el(F3, 2);
    f[5] = el(F3, 1);
    return make_hyperelliptic(F3, 2, f, {});
}

CurveModel genus2_f2() {
    // y^2 + y = x^5
    std::vector<FqElement> f(6, fq_zero(F2));
    f[5] = fq_one(F2);
    return make_hyperelliptic(F2, 2, f, {fq_one(F2)});
}

TEST(Curve, NonGapSequences) {
    EXPECT_EQ(nongap_sequence(make_projective_line(F3), 5).terms,
              (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(nongap_sequence(elliptic_f3(), 4).terms, (std::vector<std::int64_t>{0, 2, 3, 4}));
    EXPECT_EQ(nongap_sequence(genus2_f3(), 7).terms,
              (std::vector<std::int64_t>{0, 2, 4, 5, 6, 7, 8}));
    // Genus 3 odd hyperelliptic: 0, 2, 4, 6, 7, 8, ...
    std::vector<FqElement> f(8, fq_zero(F3));
    f[0] = el(F3, 1);
    f[1] = el(F3, 2);
    f[7] = el(F3, 1);
    const CurveModel g3 = make_hyperelliptic(F3, 3, f, {});
    EXPECT_EQ(nongap_sequence(g3, 9).terms,
              (std::vector<std::int64_t>{0, 2, 4, 6, 7, 8, 9, 10, 11}));
    for (int i = 0; i < 40; ++i) {
        EXPECT_EQ(nth_nongap(make_projective_line(F5), i), i);
    }
}

TEST(Curve, ConditionClasses) {
    const auto classify = [](const CurveModel& c) {
        return condition_class(nongap_sequence(c, 2 * c.genus + 2));
    };
    EXPECT_EQ(classify(make_projective_line(F3)), ConditionClass::Both);
    EXPECT_EQ(classify(elliptic_f3()), ConditionClass::Both);
    EXPECT_EQ(classify(genus2_f3()), ConditionClass::B);
    EXPECT_EQ(condition_class_name(ConditionClass::Both), "A&B");
    EXPECT_EQ(condition_class_name(ConditionClass::B), "B");

    // Synthetic shape (a): genus 3 with non-gaps 0, 4, 5, 6, ...
    NonGapSequence a;
    a.genus = 3;
    a.terms = {0, 4, 5, 6, 7, 8, 9, 10};
    EXPECT_EQ(condition_class(a), ConditionClass::A);

    // Neither shape: 0, 3, 5, 6, 7, ... (genus 3, gaps 1, 2, 4).
    NonGapSequence n;
    n.genus = 3;
    n.terms = {0, 3, 5, 6, 7, 8, 9, 10};
    EXPECT_EQ(condition_class(n), ConditionClass::Neither);

    NonGapSequence short_seq;
    short_seq.genus = 2;
    short_seq.terms = {0, 2, 4};
    EXPECT_THROW(condition_class(short_seq), SequenceTooShortError);
}

TEST(Curve, SingularModelsRejected) {
    // y^2 = x^3 has a cusp.
    EXPECT_THROW(
        make_elliptic(F3, fq_zero(F3), fq_zero(F3), fq_zero(F3), fq_zero(F3), fq_zero(F3)),
        SingularModelError);
    EXPECT_THROW(
        make_elliptic(F5, fq_zero(F5), fq_zero(F5), fq_zero(F5), fq_zero(F5), fq_zero(F5)),
        SingularModelError);
    // In characteristic 2 the plain short form y^2 = f(x) is always singular.
    EXPECT_THROW(
        make_elliptic(F2, fq_zero(F2), fq_zero(F2), fq_zero(F2), fq_zero(F2), fq_one(F2)),
        SingularModelError);

    // x^5 + x + 1 has a repeated root pattern over F_3 (gcd with derivative).
    std::vector<FqElement> f(6, fq_zero(F3));
    f[0] = el(F3, 1);
    f[1] = el(F3, 1);
    f[5] = el(F3, 1);
    EXPECT_THROW(make_hyperelliptic(F3, 2, f, {}), SingularModelError);
    // The same equation is smooth over F_5 (f' = 1 there).
    std::vector<FqElement> f5(6, fq_zero(F5));
    f5[0] = el(F5, 1);
    f5[1] = el(F5, 1);
    f5[5] = el(F5, 1);
    EXPECT_NO_THROW(make_hyperelliptic(F5, 2, f5, {}));
    // Characteristic 2 with h = 0 is inseparable.
    std::vector<FqElement> f2(6, fq_zero(F2));
    f2[5] = fq_one(F2);
    EXPECT_THROW(make_hyperelliptic(F2, 2, f2, {}), SingularModelError);
    EXPECT_NO_THROW(make_hyperelliptic(F2, 2, f2, {fq_one(F2)}));
}

TEST(Curve, ModelValidation) {
    std::vector<FqElement> f(6, fq_zero(F3));
    f[5] = el(F3, 2); // not monic
    EXPECT_THROW(make_hyperelliptic(F3, 2, f, {}), DegreeMismatchError);
    EXPECT_THROW(make_hyperelliptic(F3, 1, {}, {}), Error);
    EXPECT_THROW(make_hyperelliptic(F3, 13, {}, {}), LimitError);
    EXPECT_THROW(make_hyperelliptic(F3, 2, std::vector<FqElement>(5, fq_zero(F3)), {}),
                 DegreeMismatchError);
    std::vector<FqElement> h(4, fq_zero(F3));
    h[3] = el(F3, 1); // deg h > g
    std::vector<FqElement> ok(6, fq_zero(F3));
    ok[0] = el(F3, 1);
    ok[1] = el(F3, 2);
    ok[5] = el(F3, 1);
    EXPECT_THROW(make_hyperelliptic(F3, 2, ok, h), DegreeMismatchError);
}

// The expansions must satisfy the defining equation coefficient by
// coefficient through the whole window.
void check_elliptic_equation(const CurveModel& c, std::int64_t window) {
    CurveExpansion ctx(c, window, 4);
    const LaurentSeries x = ctx.monomial(1); // pole order 2
    const LaurentSeries y = ctx.monomial(2); // pole order 3
    const LaurentSeries lhs = ls_add(
        ls_mul(y, y),
        ls_add(ls_mul(ls_scale(x, c.ell.a1), y), ls_scale(y, c.ell.a3)));
    const LaurentSeries x2 = ls_mul(x, x);
    const LaurentSeries rhs =
        ls_add(ls_mul(x2, x),
               ls_add(ls_scale(x2, c.ell.a2),
                      ls_add(ls_scale(x, c.ell.a4),
                             ls_scale(ls_one(c.field), c.ell.a6))));
    const LaurentSeries diff = ls_sub(lhs, rhs);
    const Valuation v = ls_valuation(diff);
    EXPECT_NE(v.kind, Valuation::Kind::Finite) << describe_curve(c) << ": residual "
                                               << ls_to_string(diff);
    if (v.kind == Valuation::Kind::IndeterminateBeyond) {
        EXPECT_GE(v.value, window - 6 - 4) << describe_curve(c);
    }
}

TEST(Curve, EllipticExpansionsSatisfyTheEquation) {
    check_elliptic_equation(elliptic_f3(), 40);
    check_elliptic_equation(elliptic_f2(), 40);
    check_elliptic_equation(elliptic_f4(), 40);
    // A curve with every a_i nonzero, to exercise all terms.
    const CurveModel messy =
        make_elliptic(F5, el(F5, 1), el(F5, 2), el(F5, 3), el(F5, 4), el(F5, 1));
    check_elliptic_equation(messy, 40);
}

void check_hyperelliptic_equation(const CurveModel& c, std::int64_t window) {
    CurveExpansion ctx(c, window, 3 * c.genus);
    const LaurentSeries x = ctx.monomial(1);
    // y is the basis element of pole order 2g+1, at index g+1 in the
    // non-gap order (0, 2, 4, ..., 2g, 2g+1).
    const LaurentSeries y = ctx.monomial(c.genus + 1);
    LaurentSeries rhs = ls_zero(c.field);
    LaurentSeries xk = ls_one(c.field);
    for (std::size_t j = 0; j < c.hyp.f.size(); ++j) {
        rhs = ls_add(rhs, ls_scale(xk, c.hyp.f[j]));
        xk = ls_mul(xk, x);
    }
    LaurentSeries hy = ls_zero(c.field);
    xk = ls_one(c.field);
    for (std::size_t j = 0; j < c.hyp.h.size(); ++j) {
        hy = ls_add(hy, ls_scale(xk, c.hyp.h[j]));
        xk = ls_mul(xk, x);
    }
    const LaurentSeries lhs = ls_add(ls_mul(y, y), ls_mul(hy, y));
    const Valuation v = ls_valuation(ls_sub(lhs, rhs));
    EXPECT_NE(v.kind, Valuation::Kind::Finite) << describe_curve(c);
}

TEST(Curve, HyperellipticExpansionsSatisfyTheEquation) {
    check_hyperelliptic_equation(genus2_f3(), 50);
    check_hyperelliptic_equation(genus2_f2(), 50);
    std::vector<FqElement> f(6, fq_zero(F5));
    f[0] = el(F5, 1);
    f[1] = el(F5, 1);
    f[5] = el(F5, 1);
    const CurveModel h5 = make_hyperelliptic(F5, 2, f, {});
    check_hyperelliptic_equation(h5, 50);
    // Genus 3 with a nonzero h of full allowed degree. The completed square
    // f + h^2/4 = x^7 + x^6 + x^3 + x factors as x(x^6+x^5+x^2+1), squarefree.
    std::vector<FqElement> f3g(8, fq_zero(F3));
    f3g[0] = el(F3, 2);
    f3g[1] = el(F3, 1);
    f3g[7] = el(F3, 1);
    std::vector<FqElement> h3g(4, fq_zero(F3));
    h3g[0] = el(F3, 1);
    h3g[3] = el(F3, 2);
    const CurveModel g3 = make_hyperelliptic(F3, 3, f3g, h3g);
    check_hyperelliptic_equation(g3, 60);
}

TEST(Curve, BasisLeadNormalization) {
    for (const CurveModel& c : {elliptic_f3(), elliptic_f2(), elliptic_f4(), genus2_f3(),
                                genus2_f2(), make_projective_line(F3)}) {
        CurveExpansion ctx(c, 24, 6);
        for (int i = 0; i <= 6; ++i) {
            const LaurentSeries b = ctx.basis(i);
            const Valuation v = ls_valuation(b);
            ASSERT_EQ(v.kind, Valuation::Kind::Finite);
            EXPECT_EQ(v.value, -nth_nongap(c, i)) << describe_curve(c) << " i=" << i;
            EXPECT_EQ(b.coeffs[0], fq_one(c.field)) << describe_curve(c) << " i=" << i;
        }
    }
}

RingElement random_ring_element(const CurveModel& c, std::mt19937_64& rng, int max_len) {
    RingElement a;
    a.coords.resize(1 + rng() % static_cast<std::uint64_t>(max_len));
    for (auto& v : a.coords) v = index_to_element(c.field, rng() % c.field.q);
    while (!a.coords.empty() && a.coords.back().is_zero()) a.coords.pop_back();
    return a;
}

TEST(Curve, ExpansionIsMultiplicative) {
    std::mt19937_64 rng(6);
    for (const CurveModel& c : {elliptic_f3(), genus2_f3(), elliptic_f4()}) {
        CurveExpansion ctx(c, 30, 12);
        for (int t = 0; t < 40; ++t) {
            const RingElement a = random_ring_element(c, rng, 4);
            const RingElement b = random_ring_element(c, rng, 4);
            const RingElement ab = ring_mul(c, a, b);
            const LaurentSeries ea = ctx.expand(a, 30);
            const LaurentSeries eb = ctx.expand(b, 30);
            const LaurentSeries eab = ctx.expand(ab, 30);
            EXPECT_TRUE(ls_agree_on_overlap(eab, ls_mul(ea, eb)).agree)
                << describe_curve(c) << " trial " << t;
        }
    }
}

TEST(Curve, PoleOrderIsAdditiveOnProducts) {
    std::mt19937_64 rng(16);
    for (const CurveModel& c : {elliptic_f3(), genus2_f3()}) {
        for (int t = 0; t < 60; ++t) {
            const RingElement a = random_ring_element(c, rng, 5);
            const RingElement b = random_ring_element(c, rng, 5);
            if (a.is_zero() || b.is_zero()) continue;
            EXPECT_EQ(ring_pole_order(c, ring_mul(c, a, b)),
                      ring_pole_order(c, a) + ring_pole_order(c, b));
        }
    }
}

TEST(Curve, RingPowMatchesRepeatedMul) {
    const CurveModel c = genus2_f3();
    RingElement a;
    a.coords = {el(F3, 1), el(F3, 2), el(F3, 1)};
    RingElement acc = ring_one(c);
    for (int n = 0; n <= 6; ++n) {
        const RingElement p = ring_pow(c, a, n);
        EXPECT_EQ(p.coords.size(), acc.coords.size());
        for (std::size_t k = 0; k < p.coords.size(); ++k) EXPECT_EQ(p.coords[k], acc.coords[k]);
        acc = ring_mul(c, acc, a);
    }
}

TEST(Curve, MonicEnumeration) {
    for (const CurveModel& c : {make_projective_line(F3), elliptic_f3(), genus2_f3()}) {
        for (int i = 0; i <= 2; ++i) {
            std::size_t expected = 1;
            for (int j = 0; j < i; ++j) expected *= 3;
            EXPECT_EQ(monic_count(c, i), bigint(expected));
            const auto all = monic_elements(c, i);
            ASSERT_EQ(all.size(), expected);
            std::set<std::vector<std::int64_t>> seen;
            for (const RingElement& m : all) {
                // Monic of exact pole order d_i.
                EXPECT_EQ(ring_pole_order(c, m), nth_nongap(c, i));
                EXPECT_EQ(m.coords.back(), fq_one(c.field));
                std::vector<std::int64_t> key;
                for (const auto& v : m.coords) {
                    key.push_back(static_cast<std::int64_t>(element_to_index(c.field, v)));
                }
                seen.insert(key);
            }
            EXPECT_EQ(seen.size(), all.size()); // no duplicates
        }
    }
    // Element #k is a pure indexed generator and matches the list.
    const CurveModel c = elliptic_f3();
    const auto all = monic_elements(c, 2);
    for (std::uint64_t k = 0; k < all.size(); ++k) {
        const RingElement m = monic_element(c, 2, k);
        EXPECT_EQ(m.coords.size(), all[k].coords.size());
        for (std::size_t j = 0; j < m.coords.size(); ++j) {
            EXPECT_EQ(m.coords[j], all[k].coords[j]);
        }
    }
}

TEST(Curve, ProjectiveLineExpansionIsExact) {
    const CurveModel c = make_projective_line(F3);
    CurveExpansion ctx(c, 10, 5);
    // theta^2 + theta + 1 expands exactly as t^{-2} + t^{-1} + 1.
    RingElement a;
    a.coords = {el(F3, 1), el(F3, 1), el(F3, 1)};
    const LaurentSeries s = ctx.expand(a, 10);
    EXPECT_TRUE(s.known_exact);
    EXPECT_EQ(s.lead, -2);
    EXPECT_EQ(s.coeffs.size(), 3u);
    for (int k = -2; k <= 0; ++k) EXPECT_EQ(*ls_coeff(s, k), el(F3, 1));
}

TEST(Curve, ExpansionWindowGuards) {
    const CurveModel c = elliptic_f3();
    CurveExpansion ctx(c, 10, 3);
    RingElement a = basis_element(c, 1);
    EXPECT_THROW(ctx.expand(a, 11), PrecisionTooSmallError);
    EXPECT_THROW(ctx.expand(a, 0), PrecisionTooSmallError);
    EXPECT_THROW(CurveExpansion(c, 0, 3), PrecisionTooSmallError);
    EXPECT_THROW(ctx.basis(99), LimitError);
    const LaurentSeries one_exp = expand_at_infinity(c, ring_one(c), 5);
    EXPECT_EQ(ls_valuation(one_exp).value, 0);
}

TEST(Curve, DescribeCurve) {
    EXPECT_FALSE(describe_curve(make_projective_line(F3)).empty());
    EXPECT_NE(describe_curve(elliptic_f3()).find("F_3"), std::string::npos);
    EXPECT_NE(describe_curve(genus2_f3()).find("genus"), std::string::npos);
}

} // namespace
} // namespace ffzeta
