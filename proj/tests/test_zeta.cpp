#include <gtest/gtest.h>

#include "ffzeta/zeta.hpp"

namespace ffzeta {
namespace {

const FieldSpec F2 = make_field(2, 1);
const FieldSpec F3 = make_field(3, 1);
const FieldSpec F4 = make_field(2, 2, {1, 1, 1});
const FieldSpec F5 = make_field(5, 1);

FqElement el(const FieldSpec& F, std::int64_t v) { return fq_from_int(F, v); }

CurveModel p1_f3() { return make_projective_line(F3); }

CurveModel elliptic_f3() {
    return make_elliptic(F3, fq_zero(F3), fq_zero(F3), fq_zero(F3), el(F3, 2), el(F3, 1));
}

CurveModel elliptic_f2() {
    return make_elliptic(F2, fq_zero(F2), fq_zero(F2), fq_one(F2), fq_zero(F2), fq_zero(F2));
}

CurveModel elliptic_f4() {
    return make_elliptic(F4, fq_one(F4), fq_zero(F4), fq_zero(F4), index_to_element(F4, 2),
                         fq_zero(F4));
}

CurveModel genus2_f3() {
    std::vector<FqElement> f(6, fq_zero(F3));
    f[0] = el(F3, 1);
    f[1] = el(F3, 2);
    f[5] = el(F3, 1);
    return make_hyperelliptic(F3, 2, f, {});
}

std::vector<bigint> tup(std::initializer_list<long> v) {
    return std::vector<bigint>(v.begin(), v.end());
}

TEST(Zeta, DegreeZeroSumIsExactlyOne) {
    ZetaEngine eng(elliptic_f3());
    const PowerSumResult r = eng.power_sum(0, 7);
    EXPECT_TRUE(r.series.known_exact);
    EXPECT_EQ(r.observed_valuation, 0);
    EXPECT_EQ(r.predicted_valuation, 0);
    EXPECT_EQ(r.budget, 1);
}

TEST(Zeta, FirstPowerSumOverF3Line) {
    // Sum of 1/(theta + c) over c in F_3 is 2 t^3 + 2 t^5 + 2 t^7 + ...
    ZetaEngine eng(p1_f3());
    const PowerSumResult r = eng.power_sum(1, 1);
    EXPECT_EQ(r.observed_valuation, 3);
    EXPECT_EQ(r.predicted_valuation, 3);
    EXPECT_EQ(r.budget, 3);
    for (std::int64_t k = 3; k <= 9; ++k) {
        const auto c = ls_coeff(r.series, k);
        ASSERT_TRUE(c.has_value());
        if (k % 2 == 1) {
            EXPECT_EQ(*c, el(F3, 2)) << "t^" << k;
        } else {
            EXPECT_TRUE(c->is_zero()) << "t^" << k;
        }
    }
}

// Valuations worked out by hand from the greedy carry-free sequences.
TEST(Zeta, GoldenValuations) {
    {
        ZetaEngine eng(elliptic_f3()); // non-gaps 0, 2, 3, 4; G(1) = 2, 6, 18
        EXPECT_EQ(eng.power_sum(1, 1).observed_valuation, 6);
        EXPECT_EQ(eng.power_sum(2, 1).observed_valuation, 15);
        EXPECT_EQ(eng.power_sum(3, 2).observed_valuation, 84); // G(2) = 4, 12, 36
    }
    {
        ZetaEngine eng(elliptic_f2()); // G(1) = 1, 2, 4 over F_2
        EXPECT_EQ(eng.power_sum(1, 1).observed_valuation, 4);
        EXPECT_EQ(eng.power_sum(2, 1).observed_valuation, 8);
        EXPECT_EQ(eng.power_sum(3, 1).observed_valuation, 16);
    }
    {
        ZetaEngine eng(genus2_f3()); // non-gaps 0, 2, 4, 5
        EXPECT_EQ(eng.power_sum(1, 1).observed_valuation, 6);
        EXPECT_EQ(eng.power_sum(2, 1).observed_valuation, 24);
        EXPECT_EQ(eng.power_sum(3, 1).observed_valuation, 51);
        EXPECT_EQ(eng.power_sum(2, 3).observed_valuation, 72); // G(3) = 6, 18
    }
    {
        ZetaEngine eng(elliptic_f4()); // base-2 carries, multiples of 3: G(2) = 6, 24
        EXPECT_EQ(eng.power_sum(1, 2).observed_valuation, 16);
        EXPECT_EQ(eng.power_sum(2, 2).observed_valuation, 48);
    }
}

TEST(Zeta, ObservedMatchesPredictedOnAGrid) {
    struct Case {
        CurveModel curve;
        int max_i;
        long max_s;
    };
    const std::vector<Case> cases = {
        {p1_f3(), 3, 6},
        {make_projective_line(F2), 3, 4},
        {make_projective_line(F5), 2, 3},
        {elliptic_f2(), 3, 3},
        {elliptic_f3(), 2, 4},
        {genus2_f3(), 2, 2},
        {elliptic_f4(), 2, 2},
    };
    for (const Case& c : cases) {
        ZetaEngine eng(c.curve);
        for (int i = 0; i <= c.max_i; ++i) {
            for (long s = 1; s <= c.max_s; ++s) {
                const PowerSumResult r = eng.power_sum(i, s);
                EXPECT_EQ(r.observed_valuation, r.predicted_valuation)
                    << describe_curve(c.curve) << " i=" << i << " s=" << s;
                EXPECT_EQ(r.predicted_valuation, eng.predicted_valuation(i, s));
            }
        }
    }
}

TEST(Zeta, GapMatchesClosedFormAndIsNegative) {
    for (const CurveModel& c : {p1_f3(), make_projective_line(F5), elliptic_f3(), genus2_f3()}) {
        ZetaEngine eng(c);
        for (int i = 1; i <= 4; ++i) {
            for (long s : {1L, 2L, 7L, 23L, 50L}) {
                const bigint gap = eng.valuation_gap(i, s);
                EXPECT_EQ(gap, eng.valuation_gap_closed_form(i, s))
                    << describe_curve(c) << " i=" << i << " s=" << s;
                EXPECT_LT(gap, 0);
            }
        }
    }
}

// The engine raises each monic element in the coordinate ring before
// expanding. The direct route expands first and then takes the series
// power. Both must agree wherever their windows overlap.
TEST(Zeta, RingPowerRouteMatchesSeriesPowerRoute) {
    struct Case {
        CurveModel curve;
        int max_i;
        long max_s;
    };
    const std::vector<Case> cases = {
        {p1_f3(), 2, 4},
        {elliptic_f3(), 2, 3},
        {genus2_f3(), 1, 2},
    };
    for (const Case& c : cases) {
        ZetaEngine eng(c.curve);
        for (int i = 1; i <= c.max_i; ++i) {
            for (long s = 1; s <= c.max_s; ++s) {
                const PowerSumResult r = eng.power_sum(i, s);
                const std::int64_t window = r.precision_used;
                CurveExpansion ctx(c.curve, window, i);
                LaurentSeries direct = ls_zero(c.curve.field);
                const auto elems = monic_elements(c.curve, i);
                for (const RingElement& m : elems) {
                    direct = ls_add(direct, ls_pow(ctx.expand(m, window), -s, window));
                }
                const auto cmp = ls_agree_on_overlap(r.series, direct);
                EXPECT_TRUE(cmp.agree)
                    << describe_curve(c.curve) << " i=" << i << " s=" << s << ": "
                    << ls_to_string(r.series) << " vs " << ls_to_string(direct);
            }
        }
    }
}

TEST(Zeta, FrobeniusCompatibility) {
    // Raising to the p-th power is additive in characteristic p, so
    // S_i(p s) = S_i(s)^p.
    for (const CurveModel& c : {p1_f3(), elliptic_f3()}) {
        ZetaEngine eng(c);
        for (long s : {1L, 2L}) {
            const LaurentSeries base = eng.power_sum(1, s).series;
            const LaurentSeries cubed = ls_pow(base, 3, 0);
            const LaurentSeries direct = eng.power_sum(1, 3 * s).series;
            EXPECT_TRUE(ls_agree_on_overlap(direct, cubed).agree) << describe_curve(c);
        }
    }
}

TEST(Zeta, TruncatedSumDepthOne) {
    ZetaEngine eng(p1_f3());
    const MZVResult z = eng.mzv(tup({2}), 0);
    EXPECT_EQ(z.depth, 1);
    EXPECT_EQ(z.weight, 2);
    EXPECT_EQ(z.chain_count, 1u);
    EXPECT_EQ(z.budget, 1);
    ASSERT_EQ(z.valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(z.valuation.value, 0);
}

TEST(Zeta, TruncatedSumDepthTwo) {
    ZetaEngine eng(p1_f3());
    const MZVResult z = eng.mzv(tup({2, 1}), 3);
    EXPECT_EQ(z.depth, 2);
    EXPECT_EQ(z.weight, 3);
    EXPECT_EQ(z.chain_count, 6u); // chains 3 >= i_1 > i_2 >= 0
    EXPECT_EQ(z.budget, 52);      // 3 + 9 + 27 for s=2, 1 + 3 + 9 for s=1
    ASSERT_EQ(z.valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(z.valuation.value, 6); // dominant chain (1, 0)

    // Raising the cutoff only adds chains of larger valuation.
    const MZVResult z4 = eng.mzv(tup({2, 1}), 4);
    EXPECT_EQ(z4.chain_count, 10u);
    ASSERT_EQ(z4.valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(z4.valuation.value, 6);
    EXPECT_TRUE(ls_agree_on_overlap(z.series, z4.series).agree);
}

TEST(Zeta, TruncatedSumOnEllipticCurve) {
    ZetaEngine eng(elliptic_f3());
    const MZVResult z = eng.mzv(tup({1, 1}), 2);
    EXPECT_EQ(z.chain_count, 3u);
    EXPECT_EQ(z.budget, 13);
    ASSERT_EQ(z.valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(z.valuation.value, 6); // v(S_1(1)) + v(S_0(1)) = 6 + 0
}

TEST(Zeta, TupleValidation) {
    ZetaEngine eng(p1_f3());
    EXPECT_THROW(eng.mzv({}, 3), Error);
    EXPECT_THROW(eng.mzv(tup({1, 0}), 3), Error);
    EXPECT_THROW(eng.mzv(tup({1, 1}), 0), CutoffTooSmallError);
    EXPECT_THROW(eng.mzv(tup({1, 1, 1}), 1), CutoffTooSmallError);
    EXPECT_NO_THROW(eng.mzv(tup({1, 1}), 1));
    EXPECT_THROW(eng.power_sum(-1, 1), Error);
    EXPECT_THROW(eng.power_sum(1, 0), Error);
    EXPECT_THROW(eng.valuation_gap(0, 1), Error);
}

TEST(Zeta, CertificateOnProjectiveLine) {
    ZetaEngine eng(p1_f3());
    const NonvanishingCertificate cert = eng.certify(tup({2, 1}), 3);
    EXPECT_EQ(cert.verdict, Verdict::Nonzero);
    EXPECT_EQ(verdict_name(cert.verdict), "NONZERO");
    EXPECT_EQ(cert.condition, ConditionClass::Both);
    EXPECT_EQ(cert.dominant_degrees, (std::vector<std::int64_t>{1, 0}));
    EXPECT_EQ(cert.dominant_valuation, 6);
    ASSERT_EQ(cert.mzv_valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(cert.mzv_valuation.value, 6);
    EXPECT_TRUE(cert.detail.empty()) << cert.detail;
    // 2 slots, indices 0..3 each.
    ASSERT_EQ(cert.table.size(), 8u);
    ASSERT_EQ(cert.gaps.size(), 6u);
    for (const auto& row : cert.table) {
        EXPECT_EQ(row.observed, row.predicted) << "i=" << row.i << " slot=" << row.slot;
    }
    for (const auto& g : cert.gaps) EXPECT_LT(g.value, 0);
}

TEST(Zeta, CertificateDepthThree) {
    ZetaEngine eng(p1_f3());
    const NonvanishingCertificate cert = eng.certify(tup({1, 1, 1}), 3);
    EXPECT_EQ(cert.verdict, Verdict::Nonzero);
    EXPECT_EQ(cert.dominant_degrees, (std::vector<std::int64_t>{2, 1, 0}));
    // v(S_2(1)) + v(S_1(1)) + v(S_0(1)) = 12 + 3 + 0 over the F_3 line.
    EXPECT_EQ(cert.dominant_valuation, 15);
    ASSERT_EQ(cert.mzv_valuation.kind, Valuation::Kind::Finite);
    EXPECT_EQ(cert.mzv_valuation.value, 15);
}

TEST(Zeta, CertificateDegenerateDepthOne) {
    ZetaEngine eng(elliptic_f3());
    const NonvanishingCertificate cert = eng.certify(tup({3}), 0);
    EXPECT_EQ(cert.verdict, Verdict::Nonzero);
    EXPECT_EQ(cert.dominant_valuation, 0);
    EXPECT_EQ(cert.table.size(), 1u);
    EXPECT_TRUE(cert.gaps.empty());
}

TEST(Zeta, CertificateObservedValuationsIncrease) {
    ZetaEngine eng(genus2_f3());
    const NonvanishingCertificate cert = eng.certify(tup({1, 2}), 2);
    EXPECT_EQ(cert.verdict, Verdict::Nonzero);
    for (const auto& g : cert.gaps) EXPECT_LT(g.value, 0);
    bigint prev = -1;
    for (const auto& row : cert.table) {
        if (row.i == 0) prev = -1;
        EXPECT_GT(row.observed, prev);
        prev = row.observed;
    }
}

CertificateRow make_row(int i, long pred, long obs) {
    CertificateRow r;
    r.i = i;
    r.d_i = i;
    r.slot = 0;
    r.s = 1;
    r.predicted = pred;
    r.observed = obs;
    return r;
}

TEST(Zeta, VerdictAssembly) {
    const Valuation fin6{Valuation::Kind::Finite, 6};
    const Valuation indet{Valuation::Kind::IndeterminateBeyond, 40};
    std::vector<CertificateRow> good = {make_row(0, 0, 0), make_row(1, 6, 6)};
    std::vector<CertificateGap> gaps(1);
    gaps[0].value = -6;

    std::string detail;
    EXPECT_EQ(assemble_verdict(ConditionClass::Both, good, gaps, 6, fin6, &detail),
              Verdict::Nonzero);
    EXPECT_TRUE(detail.empty());

    // Observed row disagrees with the prediction.
    std::vector<CertificateRow> bad = {make_row(0, 0, 0), make_row(1, 6, 7)};
    detail.clear();
    EXPECT_EQ(assemble_verdict(ConditionClass::B, bad, gaps, 6, fin6, &detail),
              Verdict::Falsified);
    EXPECT_NE(detail.find("observed"), std::string::npos);

    // Truncated sum drops below the dominant chain.
    detail.clear();
    EXPECT_EQ(assemble_verdict(ConditionClass::Both, good, gaps, 9, fin6, &detail),
              Verdict::Falsified);
    EXPECT_NE(detail.find("differs from the dominant"), std::string::npos);

    // Indeterminate truncated sum cannot certify.
    detail.clear();
    EXPECT_EQ(assemble_verdict(ConditionClass::Both, good, gaps, 6, indet, &detail),
              Verdict::Falsified);

    // A non-negative gap breaks the ladder.
    std::vector<CertificateGap> flat(1);
    flat[0].value = 0;
    detail.clear();
    EXPECT_EQ(assemble_verdict(ConditionClass::Both, good, flat, 6, fin6, &detail),
              Verdict::Falsified);

    // Unsupported non-gap shape is reported, not judged.
    detail.clear();
    EXPECT_EQ(assemble_verdict(ConditionClass::Neither, good, gaps, 6, fin6, &detail),
              Verdict::Experimental);
    EXPECT_NE(detail.find("neither"), std::string::npos);
}

TEST(Zeta, BudgetCapIsEnforced) {
    PrecisionPolicy policy;
    policy.budget_cap = 2;
    ZetaEngine eng(p1_f3(), policy);
    EXPECT_THROW(eng.power_sum(1, 1), BudgetExceededError);
    EXPECT_NO_THROW(eng.power_sum(0, 1));
}

TEST(Zeta, PrecisionEscalation) {
    // Window 1 hides the t^3 lead of S_1(1) over the F_3 line; two doublings
    // reach window 4 and resolve it.
    PrecisionPolicy tight;
    tight.initial_window = 1;
    tight.max_doublings = 0;
    ZetaEngine no_retry(p1_f3(), tight);
    EXPECT_THROW(no_retry.power_sum(1, 1), PrecisionEscalationError);

    PrecisionPolicy retry;
    retry.initial_window = 1;
    retry.max_doublings = 2;
    ZetaEngine eng(p1_f3(), retry);
    const PowerSumResult r = eng.power_sum(1, 1);
    EXPECT_EQ(r.observed_valuation, 3);
    EXPECT_EQ(r.precision_used, 4);
}

TEST(Zeta, ThreadedSumMatchesSerial) {
    PrecisionPolicy serial;
    serial.threads = 1;
    PrecisionPolicy par;
    par.threads = 3;
    ZetaEngine a(p1_f3(), serial);
    ZetaEngine b(p1_f3(), par);
    // 81 elements, enough to cross the threading threshold.
    const PowerSumResult ra = a.power_sum(4, 1);
    const PowerSumResult rb = b.power_sum(4, 1);
    EXPECT_EQ(ra.observed_valuation, rb.observed_valuation);
    ASSERT_EQ(ra.series.lead, rb.series.lead);
    ASSERT_EQ(ra.series.coeffs.size(), rb.series.coeffs.size());
    for (std::size_t k = 0; k < ra.series.coeffs.size(); ++k) {
        EXPECT_EQ(ra.series.coeffs[k], rb.series.coeffs[k]);
    }
}

TEST(Zeta, FreeFunctionWrappers) {
    const PowerSumResult r = power_sum(p1_f3(), 1, 1);
    EXPECT_EQ(r.observed_valuation, 3);
    EXPECT_EQ(predicted_valuation(p1_f3(), 1, 1), 3);
    EXPECT_LT(valuation_gap(p1_f3(), 1, 1), 0);
    const MZVResult z = mzv(p1_f3(), tup({2, 1}), 3);
    EXPECT_EQ(z.valuation.value, 6);
    const NonvanishingCertificate cert = nonvanishing_certificate(p1_f3(), tup({2, 1}), 3);
    EXPECT_EQ(cert.verdict, Verdict::Nonzero);
}

} // namespace
} // namespace ffzeta
