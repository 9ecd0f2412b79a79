#include <gtest/gtest.h>

#include <set>

#include "genform/anti_endo.hpp"

using namespace genform;

namespace {

const RationalField Q;
const PrimeField F2(2);
const PrimeField F3(3);

template <class F>
Vec<F> elt(const F& f, std::initializer_list<long long> xs) {
    Vec<F> v;
    for (auto x : xs) v.push_back(f.from_int(x));
    return v;
}

std::vector<std::vector<bool>> mask(std::vector<std::vector<int>> rows) {
    std::vector<std::vector<bool>> out;
    for (auto& r : rows) out.emplace_back(r.begin(), r.end());
    return out;
}

/// Oracle: every unital linear map on a small F2-algebra, filtered by anti-multiplicativity.
std::vector<Mat<PrimeField>> brute_force_anti_endos(const AlgebraPtr<PrimeField>& r) {
    const std::size_t d = r->dim();
    std::vector<Mat<PrimeField>> out;
    for (std::uint64_t bits = 0; bits < (1ull << (d * d)); ++bits) {
        Mat<PrimeField> m(F2, d, d);
        for (std::size_t k = 0; k < d * d; ++k) m(k / d, k % d) = bits >> k & 1;
        if (!vec_equal(F2, m * r->unity(), r->unity())) continue;
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i)
            for (std::size_t j = 0; j < d && ok; ++j)
                ok = vec_equal(F2, m * r->product(i, j), r->mul(m.col(j), m.col(i)));
        if (ok) out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lex_less(b); });
    return out;
}

}  // namespace

TEST(MakeAlgebra, Examples) {
    auto field = make_algebra(F2, 1, {{{F2.one()}}}, {F2.one()});
    EXPECT_EQ(field->dim(), 1u);

    // M2(F2) from matrix-unit constants e_ij e_kl = delta_jk e_il
    typename Algebra<PrimeField>::Products p(4, std::vector<Vec<PrimeField>>(4, Vec<PrimeField>(4, 0)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) p[i * 2 + j][j * 2 + l][i * 2 + l] = 1;
    EXPECT_NO_THROW(make_algebra(F2, 4, p, elt(F2, {1, 0, 0, 1})));

    // e0 e0 = e1 with unity (1,0)
    typename Algebra<PrimeField>::Products bad{{elt(F2, {0, 1}), elt(F2, {0, 1})}, {elt(F2, {0, 1}), elt(F2, {0, 0})}};
    try {
        make_algebra(F2, 2, bad, elt(F2, {1, 0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnityViolation);
    }
}

TEST(MakeAlgebra, NonAssociativeRejected) {
    // unity e0; e1 e1 = e2, e2 e1 = e1, everything else zero: (e1 e1) e1 = e1 but e1 (e1 e1) = 0
    auto z = elt(Q, {0, 0, 0});
    typename Algebra<RationalField>::Products p{{elt(Q, {1, 0, 0}), elt(Q, {0, 1, 0}), elt(Q, {0, 0, 1})},
                                               {elt(Q, {0, 1, 0}), elt(Q, {0, 0, 1}), z},
                                               {elt(Q, {0, 0, 1}), elt(Q, {0, 1, 0}), z}};
    try {
        make_algebra(Q, 3, p, elt(Q, {1, 0, 0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AssociativityViolation);
        EXPECT_EQ(e.indices().size(), 3u);
    }
}

TEST(MatrixAlgebra, Examples) {
    auto one = matrix_algebra(F2, 1);
    EXPECT_EQ(one->dim(), 1u);
    auto m2 = matrix_algebra(Q, 2);
    EXPECT_EQ(m2->dim(), 4u);
    // e11 e12 = e12, e12 e11 = 0 (indices 0 = e11, 1 = e12)
    EXPECT_TRUE(vec_equal(Q, m2->mul(m2->basis(0), m2->basis(1)), m2->basis(1)));
    EXPECT_TRUE(vec_is_zero(Q, m2->mul(m2->basis(1), m2->basis(0))));
    EXPECT_TRUE(vec_equal(F3, matrix_algebra(F3, 2)->unity(), elt(F3, {1, 0, 0, 1})));
    // e12 e21 = e11
    EXPECT_TRUE(vec_equal(Q, m2->mul(m2->basis(1), m2->basis(2)), m2->basis(0)));
}

TEST(StructuredSubalgebra, Examples) {
    auto full = structured_subalgebra(Q, 2, mask({{1, 1}, {1, 1}}));
    EXPECT_TRUE(full->same_as(*matrix_algebra(Q, 2)));
    auto ut = structured_subalgebra(Q, 2, mask({{1, 1}, {0, 1}}));
    EXPECT_EQ(ut->dim(), 3u);
    auto incidence = structured_subalgebra(F2, 3, mask({{1, 1, 1}, {1, 1, 1}, {0, 0, 1}}));
    EXPECT_EQ(incidence->dim(), 7u);
    try {
        structured_subalgebra(Q, 3, mask({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PatternNotClosed);
    }
    try {
        structured_subalgebra(Q, 2, mask({{1, 1}, {0, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PatternNotUnital);
    }
}

TEST(Mul, Examples) {
    auto m2 = matrix_algebra(Q, 2);
    auto a = elt(Q, {3, -1, 2, 5});
    EXPECT_TRUE(vec_equal(Q, m2->mul(a, m2->unity()), a));
    auto t = transpose_anti(m2);
    EXPECT_TRUE(vec_equal(Q, t.apply(m2->basis(1)), m2->basis(2)));
    EXPECT_THROW(m2->mul(a, elt(Q, {1, 0})), Error);
}

TEST(Center, Examples) {
    auto f2xf2 = product_algebra(*field_algebra(F2), *field_algebra(F2));
    EXPECT_EQ(center(*f2xf2).size(), 2u);
    EXPECT_EQ(center(*matrix_algebra(F2, 2)).size(), 1u);
    auto ext = extension_algebra(F3, {1, 0, 1});
    EXPECT_EQ(center(*ext).size(), 2u);
    for (std::size_t n = 1; n <= 3; ++n) {
        EXPECT_EQ(center(*matrix_algebra(F2, n)).size(), 1u);
        EXPECT_EQ(center(*matrix_algebra(F3, n)).size(), 1u);
        EXPECT_EQ(center(*matrix_algebra(Q, n)).size(), 1u);
    }
}

TEST(AntiEndo, MakeExamples) {
    auto ext = extension_algebra(Q, {-2, 0, 1});
    EXPECT_TRUE(identity_anti(ext).is_involution());
    auto m2 = matrix_algebra(Q, 2);
    auto t = transpose_anti(m2);
    EXPECT_TRUE(t.bijective);
    try {
        make_anti_endo(m2, Mat<RationalField>::identity(Q, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAntiMultiplicative);
    }
    try {
        make_anti_endo(m2, Mat<RationalField>::zero(Q, 4, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnital);
    }
}

TEST(AntiEndo, NamedMaps) {
    auto m2 = matrix_algebra(F3, 2);
    EXPECT_TRUE(symplectic_anti(m2).is_involution());
    auto ut = upper_triangular(Q, 2);
    auto s = flip_anti(ut);
    EXPECT_TRUE(s.is_involution());
    EXPECT_THROW(transpose_anti(ut), Error);
    auto f9 = extension_algebra(F3, {1, 0, 1});
    auto fr = frobenius_anti(f9);
    EXPECT_TRUE(fr.is_involution());
    EXPECT_FALSE(fr.is_identity());
    auto f2xf2 = product_algebra(*field_algebra(F2), *field_algebra(F2));
    EXPECT_TRUE(swap_anti(f2xf2).is_involution());
}

TEST(Enumerate, Examples) {
    auto f2 = field_algebra(F2);
    auto one = enumerate_anti_endos(f2);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_TRUE(one[0].is_identity());

    auto f2xf2 = product_algebra(*field_algebra(F2), *field_algebra(F2));
    auto four = enumerate_anti_endos(f2xf2);
    EXPECT_EQ(four.size(), 4u);
    EXPECT_EQ(std::count_if(four.begin(), four.end(), [](const auto& a) { return a.bijective; }), 2);

    auto m2 = enumerate_anti_endos(matrix_algebra(F2, 2));
    EXPECT_EQ(m2.size(), 6u);
    EXPECT_TRUE(std::all_of(m2.begin(), m2.end(), [](const auto& a) { return a.bijective; }));

    EXPECT_EQ(enumerate_anti_endos(matrix_algebra(F3, 2)).size(), 24u);
}

TEST(Enumerate, BudgetExceeded) {
    try {
        enumerate_anti_endos(matrix_algebra(F3, 2), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
}

TEST(Enumerate, MatchesExhaustiveOracle) {
    std::vector<AlgebraPtr<PrimeField>> algebras{
        field_algebra(F2),
        product_algebra(*field_algebra(F2), *field_algebra(F2)),
        upper_triangular(F2, 2),
        extension_algebra(F2, {1, 1, 1}),
        extension_algebra(F2, {0, 0, 1}),  // F2[x]/(x^2)
        product_algebra(*field_algebra(F2), *product_algebra(*field_algebra(F2), *field_algebra(F2))),
        extension_algebra(F2, {1, 1, 0, 1}),
    };
    for (const auto& r : algebras) {
        auto got = enumerate_anti_endos(r);
        auto want = brute_force_anti_endos(r);
        ASSERT_EQ(got.size(), want.size()) << r->name();
        for (std::size_t k = 0; k < got.size(); ++k) EXPECT_EQ(got[k].matrix, want[k]);
    }
}

TEST(Enumerate, Dim4MatchesGeneratorImageOracle) {
    // M2(F2) is generated by e12 and e21: an anti-endomorphism is determined by their images,
    // so filter all 2^8 image pairs by the induced map's validity.
    auto m2 = matrix_algebra(F2, 2);
    std::size_t count = 0;
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        Vec<PrimeField> a(4), b(4);
        for (std::size_t k = 0; k < 4; ++k) {
            a[k] = bits >> k & 1;
            b[k] = bits >> (4 + k) & 1;
        }
        // e11 = e12 e21 -> alpha(e21) alpha(e12); e22 = e21 e12 -> alpha(e12) alpha(e21)
        Mat<PrimeField> m(F2, 4, 4);
        m.set_col(0, m2->mul(b, a));
        m.set_col(1, a);
        m.set_col(2, b);
        m.set_col(3, m2->mul(a, b));
        try {
            make_anti_endo(m2, m);
            ++count;
        } catch (const Error&) {
        }
    }
    EXPECT_EQ(count, enumerate_anti_endos(m2).size());
}

TEST(Inner, Examples) {
    auto m2 = matrix_algebra(Q, 2);
    EXPECT_TRUE(inner_automorphism(*m2, m2->unity()).is_identity());
    auto u = elt(Q, {1, 0, 0, 2});
    auto phi = inner_automorphism(*m2, u);
    auto img = phi * m2->basis(1);
    EXPECT_TRUE(vec_equal(Q, img, vec_scale(Q, Q.parse("1/2"), m2->basis(1))));
    auto tw = inner_twist(transpose_anti(m2), u);
    EXPECT_TRUE(tw.bijective);
    EXPECT_THROW(inner_automorphism(*m2, elt(Q, {1, 0, 0, 0})), Error);
}

TEST(Inner, ComposeThenUndo) {
    auto m2 = matrix_algebra(F3, 2);
    auto t = transpose_anti(m2);
    auto u = elt(F3, {1, 1, 0, 1});
    auto uinv = *m2->inverse(u);
    auto there = inner_twist(t, u);
    auto back = inner_twist(there, uinv);
    EXPECT_EQ(back.matrix, t.matrix);
}

TEST(InnerEquivalent, Examples) {
    auto m2 = matrix_algebra(F3, 2);
    auto t = transpose_anti(m2);
    EXPECT_EQ(is_inner_equivalent(t, t).status, SearchStatus::Found);
    auto s = symplectic_anti(m2);
    auto res = is_inner_equivalent(t, s);
    ASSERT_EQ(res.status, SearchStatus::Found);
    EXPECT_EQ(inner_twist(t, *res.unit).matrix, s.matrix);

    auto f2xf2 = product_algebra(*field_algebra(F2), *field_algebra(F2));
    EXPECT_EQ(is_inner_equivalent(identity_anti(f2xf2), swap_anti(f2xf2)).status, SearchStatus::ProvablyNone);
}

TEST(MatrixOver, BlockStructure) {
    auto f2xf2 = product_algebra(*field_algebra(F2), *field_algebra(F2));
    auto m = matrix_over(f2xf2, 2);
    EXPECT_EQ(m->dim(), 8u);
    EXPECT_EQ(center(*m).size(), 2u);
    // matrix_over of the field is the matrix algebra
    EXPECT_TRUE(matrix_over(field_algebra(F3), 2)->same_as(*matrix_algebra(F3, 2)));
}
