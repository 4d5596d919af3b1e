#include <gtest/gtest.h>

#include <random>

#include "ffzeta/fq.hpp"

namespace ffzeta {
namespace {

FieldSpec field_for(std::uint64_t q) {
    switch (q) {
        case 4: return make_field(2, 2, {1, 1, 1});
        case 8: return make_field(2, 3, {1, 1, 0, 1});
        case 16: return make_field(2, 4, {1, 1, 0, 0, 1});
        case 9: return make_field(3, 2, {1, 0, 1});
        case 25: return make_field(5, 2, {2, 0, 1});
        case 27: return make_field(3, 3, {1, 2, 0, 1});
        default: return make_field(static_cast<std::int64_t>(q), 1);
    }
}

TEST(Fq, MakeFieldValidation) {
    EXPECT_THROW(make_field(4, 1), NotPrimeError);
    EXPECT_THROW(make_field(1, 1), NotPrimeError);
    EXPECT_THROW(make_field(2, 0), LimitError);
    EXPECT_THROW(make_field(2, 9, std::vector<std::int32_t>(10, 1)), LimitError);
    EXPECT_THROW(make_field(2, 2), DegreeMismatchError);
    EXPECT_THROW(make_field(2, 2, {1, 1}), DegreeMismatchError);
    EXPECT_THROW(make_field(2, 2, {1, 1, 2}), DegreeMismatchError);
    // x^2 + 1 = (x+1)^2 over F_2.
    EXPECT_THROW(make_field(2, 2, {1, 0, 1}), NotIrreducibleError);
    // x^2 + 2 = (x+1)(x+2) over F_3.
    EXPECT_THROW(make_field(3, 2, {2, 0, 1}), NotIrreducibleError);
    EXPECT_NO_THROW(make_field(2, 2, {1, 1, 1}));
    EXPECT_NO_THROW(make_field(3, 2, {1, 0, 1}));
    EXPECT_NO_THROW(make_field(2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}));
}

TEST(Fq, FieldSizes) {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 16ull, 25ull}) {
        const FieldSpec F = field_for(q);
        EXPECT_EQ(F.q, q);
        EXPECT_EQ(enumerate_field(F).size(), q);
    }
}

TEST(Fq, IndexRoundTripAndEnumerationOrder) {
    for (std::uint64_t q : {4ull, 8ull, 9ull, 25ull, 7ull}) {
        const FieldSpec F = field_for(q);
        for (std::uint64_t k = 0; k < q; ++k) {
            EXPECT_EQ(element_to_index(F, index_to_element(F, k)), k);
        }
        EXPECT_THROW(index_to_element(F, q), LimitError);
    }
    const FieldSpec F4 = field_for(4);
    EXPECT_EQ(fq_to_string(F4, index_to_element(F4, 0)), "0");
    EXPECT_EQ(fq_to_string(F4, index_to_element(F4, 1)), "1");
    EXPECT_EQ(fq_to_string(F4, index_to_element(F4, 2)), "x");
    EXPECT_EQ(fq_to_string(F4, index_to_element(F4, 3)), "x+1");
}

TEST(Fq, RingAxiomsOnSampledTriples) {
    std::mt19937_64 rng(77);
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 8ull, 9ull, 25ull}) {
        const FieldSpec F = field_for(q);
        const auto elems = enumerate_field(F);
        for (int t = 0; t < 200; ++t) {
            const FqElement a = elems[rng() % q];
            const FqElement b = elems[rng() % q];
            const FqElement c = elems[rng() % q];
            EXPECT_EQ(fq_add(F, a, b), fq_add(F, b, a));
            EXPECT_EQ(fq_mul(F, a, b), fq_mul(F, b, a));
            EXPECT_EQ(fq_mul(F, a, fq_mul(F, b, c)), fq_mul(F, fq_mul(F, a, b), c));
            EXPECT_EQ(fq_add(F, a, fq_add(F, b, c)), fq_add(F, fq_add(F, a, b), c));
            EXPECT_EQ(fq_mul(F, a, fq_add(F, b, c)),
                      fq_add(F, fq_mul(F, a, b), fq_mul(F, a, c)));
            EXPECT_EQ(fq_sub(F, a, a), fq_zero(F));
            EXPECT_EQ(fq_add(F, a, fq_neg(F, a)), fq_zero(F));
        }
    }
}

TEST(Fq, Characteristic) {
    for (std::uint64_t q : {4ull, 9ull, 25ull, 7ull}) {
        const FieldSpec F = field_for(q);
        FqElement acc = fq_zero(F);
        for (std::int64_t k = 0; k < F.p; ++k) acc = fq_add(F, acc, fq_one(F));
        EXPECT_TRUE(acc.is_zero()) << "q=" << q;
    }
}

TEST(Fq, InverseAndFermat) {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 8ull, 9ull, 25ull}) {
        const FieldSpec F = field_for(q);
        for (const FqElement& a : enumerate_field(F)) {
            // a^q = a for every element (Frobenius fixed field).
            EXPECT_EQ(fq_pow(F, a, bigint(q)), a);
            if (a.is_zero()) continue;
            EXPECT_EQ(fq_mul(F, a, fq_inv(F, a)), fq_one(F));
            EXPECT_EQ(fq_pow(F, a, bigint(q) - 1), fq_one(F));
        }
        EXPECT_THROW(fq_inv(F, fq_zero(F)), DivisionByZeroError);
    }
}

TEST(Fq, PowMatchesRepeatedMultiplication) {
    const FieldSpec F = field_for(9);
    for (const FqElement& a : enumerate_field(F)) {
        FqElement acc = fq_one(F);
        for (int n = 0; n <= 12; ++n) {
            EXPECT_EQ(fq_pow(F, a, n), acc);
            acc = fq_mul(F, acc, a);
        }
    }
    EXPECT_EQ(fq_pow(F, fq_zero(F), 0), fq_one(F)); // 0^0 = 1 by convention
    EXPECT_THROW(fq_pow(F, fq_one(F), -1), Error);
}

TEST(Fq, CharacterPowerSumMatchesLiteralSum) {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 9ull}) {
        const FieldSpec F = field_for(q);
        for (bigint m = 0; m <= 3 * (bigint(q) - 1) + 2; ++m) {
            FqElement literal = fq_zero(F);
            for (const FqElement& f : enumerate_field(F)) {
                literal = fq_add(F, literal, fq_pow(F, f, m));
            }
            EXPECT_EQ(character_power_sum(F, m), literal) << "q=" << q << " m=" << m;
        }
    }
}

TEST(Fq, FieldMismatchDetected) {
    const FieldSpec F9 = field_for(9);
    const FieldSpec F3 = field_for(3);
    const FqElement a = index_to_element(F9, 5);
    EXPECT_THROW(fq_add(F3, a, a), FieldMismatchError);
}

TEST(Fq, DefaultPrimeModulus) {
    const FieldSpec F = make_field(7, 1);
    EXPECT_EQ(F.modulus, (std::vector<std::int32_t>{0, 1})); // the polynomial x
    EXPECT_EQ(fq_from_int(F, 10), fq_from_int(F, 3));
    EXPECT_EQ(fq_from_int(F, -1), fq_from_int(F, 6));
}

} // namespace
} // namespace ffzeta
