#include <gtest/gtest.h>

#include <random>

#include "genform/span_search.hpp"

using namespace genform;

namespace {

const RationalField Q;
const PrimeField F2(2);
const PrimeField F3(3);

template <class F>
Mat<F> M(const F& f, std::vector<std::vector<long long>> rows) {
    return Mat<F>::from_ints(f, rows);
}

}  // namespace

TEST(Field, PrimeArithmetic) {
    PrimeField f(7);
    EXPECT_EQ(f.mul(3, 5), 1u);
    EXPECT_EQ(f.inv(3), 5u);
    EXPECT_EQ(f.from_int(-1), 6u);
    EXPECT_EQ(f.parse("1/2"), 4u);
    EXPECT_EQ(f.parse("-3"), 4u);
    EXPECT_THROW(PrimeField(4), Error);
    EXPECT_THROW(f.inv(0), Error);
}

TEST(Field, RationalsCanonical) {
    auto a = Q.parse("6/-4");
    EXPECT_EQ(a.get_num(), -3);
    EXPECT_EQ(a.get_den(), 2);
    EXPECT_EQ(Q.to_string(Q.parse("4/2")), "2");
    EXPECT_THROW(Q.parse("1/0"), Error);
    EXPECT_THROW(Q.parse("x"), std::invalid_argument);
}

TEST(Rref, IdentityAndZero) {
    auto id = Mat<RationalField>::identity(Q, 2);
    auto e = rref(id);
    EXPECT_EQ(e.reduced, id);
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
    auto z = Mat<RationalField>::zero(Q, 3, 3);
    auto ez = rref(z);
    EXPECT_EQ(ez.reduced, z);
    EXPECT_TRUE(ez.pivots.empty());
}

TEST(Rref, HandReduction) {
    auto e = rref(M(Q, {{2, 4}, {1, 2}}));
    EXPECT_EQ(e.reduced, M(Q, {{1, 2}, {0, 0}}));
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, Idempotent) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Mat<PrimeField> m(F3, 4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) m(i, j) = F3.element(rng() % 3);
        auto once = rref(m).reduced;
        EXPECT_EQ(rref(once).reduced, once);
    }
}

TEST(Solve, Examples) {
    auto b = M(Q, {{5}, {-7}});
    EXPECT_EQ(*solve(Mat<RationalField>::identity(Q, 2), b), b);
    EXPECT_FALSE(solve(M(Q, {{1, 1}, {1, 1}}), M(Q, {{0}, {1}})).has_value());
    EXPECT_EQ(*solve(M(Q, {{1, 1}, {0, 1}}), M(Q, {{3}, {1}})), M(Q, {{2}, {1}}));
    EXPECT_THROW(solve(M(Q, {{1}}), M(Q, {{1}, {2}})), Error);
}

TEST(Solve, MultiplyBack) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Mat<PrimeField> a(F3, 3, 4), b(F3, 3, 2);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = F3.element(rng() % 3);
            for (std::size_t j = 0; j < 2; ++j) b(i, j) = F3.element(rng() % 3);
        }
        if (auto x = solve(a, b)) EXPECT_EQ(a * *x, b);
    }
}

TEST(Kernel, Examples) {
    EXPECT_TRUE(kernel_basis(Mat<RationalField>::identity(Q, 3)).empty());
    EXPECT_EQ(kernel_basis(Mat<RationalField>::zero(Q, 2, 2)).size(), 2u);
    auto k = kernel_basis(M(Q, {{1, 2}}));
    ASSERT_EQ(k.size(), 1u);
    // proportional to (-2, 1)
    EXPECT_EQ(Q.mul(k[0][0], Q.from_int(1)), Q.mul(k[0][1], Q.from_int(-2)));
    EXPECT_FALSE(Q.is_zero(k[0][1]));
}

TEST(Invert, Examples) {
    auto i3 = Mat<RationalField>::identity(Q, 3);
    EXPECT_EQ(*invert(i3), i3);
    EXPECT_FALSE(invert(M(Q, {{1, 1}, {1, 1}})).has_value());
    EXPECT_EQ(*invert(M(Q, {{1, 1}, {0, 1}})), M(Q, {{1, -1}, {0, 1}}));
    EXPECT_THROW(invert(M(Q, {{1, 2}})), Error);
}

TEST(Invert, AgreesWithRank) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Mat<PrimeField> m(F2, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = F2.element(rng() % 2);
        auto inv = invert(m);
        EXPECT_EQ(inv.has_value(), rank(m) == 3);
        EXPECT_EQ(inv.has_value(), det(m) != 0);
        if (inv) {
            EXPECT_TRUE((m * *inv).is_identity());
            EXPECT_TRUE((*inv * m).is_identity());
        }
    }
}

TEST(SpanSearch, Examples) {
    auto r = find_invertible_in_span<RationalField>({Mat<RationalField>::identity(Q, 2)});
    EXPECT_EQ(r.status, SearchStatus::Found);
    EXPECT_TRUE(r.element->is_identity());

    auto n = find_invertible_in_span<RationalField>({M(Q, {{0, 1}, {0, 0}})});
    EXPECT_EQ(n.status, SearchStatus::ProvablyNone);

    auto d = find_invertible_in_span<RationalField>({M(Q, {{1, 0}, {0, 0}}), M(Q, {{0, 0}, {0, 1}})});
    ASSERT_EQ(d.status, SearchStatus::Found);
    EXPECT_TRUE(is_invertible(*d.element));
    EXPECT_EQ(d.method, "polynomial-grid");

    EXPECT_THROW(find_invertible_in_span<RationalField>({M(Q, {{1}}), Mat<RationalField>::identity(Q, 2)}), Error);
}

TEST(SpanSearch, OffsetAndEmpty) {
    auto none = find_invertible_in_span<RationalField>(Q, 2, {});
    EXPECT_EQ(none.status, SearchStatus::ProvablyNone);
    auto zero_size = find_invertible_in_span<RationalField>(Q, 0, {});
    EXPECT_EQ(zero_size.status, SearchStatus::Found);
    auto off = find_invertible_in_span<RationalField>(Q, 2, {M(Q, {{1, 0}, {0, 0}})}, {}, M(Q, {{0, 0}, {0, 1}}));
    EXPECT_EQ(off.status, SearchStatus::Found);
}

TEST(SpanSearch, RandomFallbackIsInconclusive) {
    SearchOptions tiny;
    tiny.budget = 1;
    auto r = find_invertible_in_span<RationalField>({M(Q, {{0, 1}, {0, 0}}), M(Q, {{0, 0}, {1, 0}})}, tiny);
    // (s+1)^t = 9 > budget: only random trials are allowed, never a proof of absence
    EXPECT_NE(r.status, SearchStatus::ProvablyNone);
}

// Exhaustive cross-check over F2: for every family of up to three 2x2 matrices and a
// sample of 3x3 families, the search must agree with brute force over all combinations.
TEST(SpanSearch, ExhaustiveCrossCheckF2) {
    auto brute = [](const std::vector<Mat<PrimeField>>& basis, std::size_t s) {
        std::size_t t = basis.size();
        for (std::uint64_t mask = 0; mask < (1ull << t); ++mask) {
            Mat<PrimeField> x(F2, s, s);
            for (std::size_t k = 0; k < t; ++k)
                if (mask >> k & 1) x = x + basis[k];
            if (is_invertible(x)) return true;
        }
        return false;
    };
    auto from_bits = [](std::uint32_t bits, std::size_t s) {
        Mat<PrimeField> m(F2, s, s);
        for (std::size_t k = 0; k < s * s; ++k) m(k / s, k % s) = bits >> k & 1;
        return m;
    };
    std::size_t checked = 0;
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = a; b < 16; ++b)
            for (std::uint32_t c = b; c < 16; ++c) {
                std::vector<Mat<PrimeField>> basis{from_bits(a, 2), from_bits(b, 2), from_bits(c, 2)};
                auto r = find_invertible_in_span(F2, 2, basis);
                ASSERT_NE(r.status, SearchStatus::Inconclusive);
                EXPECT_EQ(r.found(), brute(basis, 2));
                if (r.found()) EXPECT_TRUE(is_invertible(*r.element));
                ++checked;
            }
    std::mt19937 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Mat<PrimeField>> basis;
        std::size_t t = 1 + rng() % 3;
        for (std::size_t k = 0; k < t; ++k) basis.push_back(from_bits(rng() % 512, 3));
        auto r = find_invertible_in_span(F2, 3, basis);
        ASSERT_NE(r.status, SearchStatus::Inconclusive);
        EXPECT_EQ(r.found(), brute(basis, 3));
        ++checked;
    }
    EXPECT_GT(checked, 500u);
}

TEST(Quotient, ProjectionAndSection) {
    QuotientSpace<RationalField> q(Q, 3, {{Q.from_int(1), Q.from_int(1), Q.from_int(0)}});
    EXPECT_EQ(q.dim(), 2u);
    EXPECT_TRUE((q.projection() * q.section()).is_identity());
    EXPECT_TRUE(q.in_subspace({Q.from_int(2), Q.from_int(2), Q.from_int(0)}));
    EXPECT_FALSE(q.in_subspace({Q.from_int(1), Q.from_int(0), Q.from_int(0)}));
    // swapping the first two coordinates preserves the line (1,1,0)
    auto swap = M(Q, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    EXPECT_TRUE(q.induced(swap).has_value());
    auto shear = M(Q, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}});
    EXPECT_FALSE(q.induced(shear).has_value());
}
