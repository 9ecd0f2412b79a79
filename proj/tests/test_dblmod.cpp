#include <gtest/gtest.h>

#include <random>

#include "genform/catalog.hpp"

using namespace genform;

namespace {

const PrimeField F2{2};
const PrimeField F3{3};

using M = Mat<PrimeField>;

M random_in_span(const std::vector<M>& basis, std::size_t r, std::size_t c, std::mt19937& rng) {
    const PrimeField& f = basis.empty() ? F3 : basis[0].field();
    M out(f, r, c);
    for (const auto& b : basis) out = out + b.scaled(f.element(rng() % f.size()));
    return out;
}

}  // namespace

TEST(StandardDouble, Examples) {
    auto f1 = field_algebra(F3);
    auto k = standard_double(identity_anti(f1));
    EXPECT_EQ(k->dim(), 1u);
    EXPECT_TRUE(k->actions(0)[0].is_identity());
    EXPECT_TRUE(k->actions(1)[0].is_identity());

    auto m2 = matrix_algebra(F2, 2);
    auto kt = standard_double(transpose_anti(m2));
    // basis e11, e12, e21, e22: side-0 action of e12 is left multiplication by e21
    EXPECT_EQ(kt->actions(0)[1], m2->left_basis(2));
    EXPECT_EQ(kt->actions(1)[1], m2->right_basis(1));
}

TEST(StandardDouble, CommutingLawForAllAntiEndos) {
    auto ut = upper_triangular(F2, 2);
    auto all = enumerate_anti_endos(ut);
    EXPECT_FALSE(all.empty());
    for (const auto& a : all) EXPECT_NO_THROW(validate_double(*standard_double(a)));
}

TEST(DoubleModule, RejectsNonCommutingActions) {
    auto m2 = matrix_algebra(F2, 2);
    std::vector<M> p, q;
    for (std::size_t i = 0; i < 4; ++i) {
        p.push_back(m2->right_basis(i));
        q.push_back(m2->right_basis(i));
    }
    try {
        make_double(m2, 4, p, q);
        FAIL() << "expected NotDoubleModule";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotDoubleModule);
    }
}

TEST(SideModule, Examples) {
    auto f1 = field_algebra(F2);
    auto s = side_module(*standard_double(identity_anti(f1)), 1);
    EXPECT_EQ(s->actions(), regular_module(f1)->actions());

    auto m2 = matrix_algebra(F2, 2);
    auto kt = standard_double(transpose_anti(m2));
    EXPECT_EQ(is_module_isomorphic(*side_module(*kt, 0), *side_module(*kt, 1)).status, SearchStatus::Found);

    auto inc = incidence_example(F2);
    EXPECT_EQ(side_module(*inc.codomain, 1)->dim(), 5u);
    EXPECT_EQ(inc.ring->dim(), 7u);
    EXPECT_EQ(inc.module->dim(), 4u);
}

TEST(Dual, RegularDualIsSideOne) {
    auto ut = upper_triangular(F3, 2);
    auto rr = regular_module(ut);
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto k = standard_double(a);
        auto d = dual(rr, k, 1);
        EXPECT_EQ(is_module_isomorphic(*d.module, *side_module(*k, 1)).status, SearchStatus::Found);
        // f -> f(1) is an explicit isomorphism
        M ev(F3, k->dim(), d.basis.size());
        for (std::size_t c = 0; c < d.basis.size(); ++c) ev.set_col(c, d.basis[c] * ut->unity());
        EXPECT_TRUE(is_module_hom(*d.module, *side_module(*k, 1), ev));
        EXPECT_TRUE(is_invertible(ev));
    }
    auto inc = incidence_example(F2);
    auto d = dual(regular_module(inc.ring), inc.codomain, 1);
    EXPECT_EQ(is_module_isomorphic(*d.module, *side_module(*inc.codomain, 1)).status, SearchStatus::Found);
}

TEST(Dual, Examples) {
    auto m2 = matrix_algebra(F2, 2);
    auto k = standard_double(transpose_anti(m2));
    auto col = row_vector_module(m2);
    auto d = dual(col, k, 1);
    EXPECT_EQ(d.module->dim(), 2u);
    // brute-force count of homs into K_0
    auto k0 = side_module(*k, 0);
    std::size_t count = 0;
    for (std::uint32_t code = 0; code < 256; ++code) {
        M h(F2, 4, 2);
        for (std::size_t b = 0; b < 8; ++b) h(b / 2, b % 2) = (code >> b) & 1;
        if (is_module_hom(*col, *k0, h)) ++count;
    }
    EXPECT_EQ(count, 4u);

    auto zero = make_module(m2, 0, std::vector<M>(4, M(F2, 0, 0)), "0");
    EXPECT_EQ(dual(zero, k, 0).module->dim(), 0u);
}

TEST(Dual, AdditiveAndBlockCompatible) {
    auto ut = upper_triangular(F3, 2);
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto kk = standard_double(a);
        auto m1 = regular_module(ut);
        auto m2 = quotient_module(*m1, {unit_vec(F3, 3, 1)});
        auto sum = direct_sum(*m1, *m2);
        for (int side = 0; side < 2; ++side) {
            auto d1 = dual(m1, kk, side), d2 = dual(m2, kk, side), ds = dual(sum, kk, side);
            EXPECT_EQ(ds.module->dim(), d1.module->dim() + d2.module->dim());
            // restriction to the summands identifies the dual of the sum with the sum of duals
            M j(F3, d1.basis.size() + d2.basis.size(), ds.basis.size());
            for (std::size_t c = 0; c < ds.basis.size(); ++c) {
                auto c1 = d1.coords(ds.basis[c].block(0, 0, kk->dim(), m1->dim()));
                auto c2 = d2.coords(ds.basis[c].block(0, m1->dim(), kk->dim(), m2->dim()));
                c1.insert(c1.end(), c2.begin(), c2.end());
                j.set_col(c, c1);
            }
            EXPECT_TRUE(is_invertible(j));
            auto block = direct_sum(*d1.module, *d2.module);
            EXPECT_TRUE(is_module_hom(*ds.module, *block, j));
        }
    }
}

TEST(DualMap, Examples) {
    auto e = vector_space_endo(F3, 2);
    auto k = standard_double(identity_anti(e.module->algebra()));
    auto d = dual(e.module, k, 1);
    EXPECT_TRUE(dual_map(M::identity(F3, 2), d, d).is_identity());
    M rank1 = M::from_ints(F3, {{1, 0}, {0, 0}});
    EXPECT_EQ(rank(dual_map(rank1, d, d)), 1u);
}

TEST(DualMap, Contravariant) {
    std::mt19937 rng(7);
    auto ut = upper_triangular(F3, 2);
    auto rr = regular_module(ut);
    auto q = quotient_module(*rr, {unit_vec(F3, 3, 1)});
    std::vector<ModulePtr<PrimeField>> mods{rr, q, direct_sum(*rr, *q)};
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto k = standard_double(a);
        for (int side = 0; side < 2; ++side)
            for (const auto& x : mods)
                for (const auto& y : mods)
                    for (const auto& z : mods) {
                        auto fb = hom_space(*x, *y), gb = hom_space(*y, *z);
                        M fm = random_in_span(fb, y->dim(), x->dim(), rng);
                        M gm = random_in_span(gb, z->dim(), y->dim(), rng);
                        auto dx = dual(x, k, side), dy = dual(y, k, side), dz = dual(z, k, side);
                        EXPECT_EQ(dual_map(M(gm * fm), dx, dz), dual_map(fm, dx, dy) * dual_map(gm, dy, dz));
                    }
    }
}

TEST(UTheta, Examples) {
    auto f1 = field_algebra(F3);
    auto k = standard_double(identity_anti(f1));
    auto theta = make_dbl_anti_auto(k, M::identity(F3, 1));
    auto m = regular_module(f1);
    auto d0 = dual(m, k, 0), d1 = dual(m, k, 1);
    EXPECT_TRUE(u_theta(theta, d0, d1).is_identity());

    auto inc = incidence_example(F3);
    auto t = make_dbl_anti_auto(inc.codomain, inc.theta);
    EXPECT_TRUE(t.involution);
    auto i0 = dual(inc.module, inc.codomain, 0), i1 = dual(inc.module, inc.codomain, 1);
    M u = u_theta(t, i0, i1);
    EXPECT_EQ(u.rows(), 4u);
    EXPECT_EQ(u.cols(), 4u);
    EXPECT_TRUE(is_invertible(u));
    EXPECT_TRUE(is_module_hom(*i0.module, *i1.module, u));
    // u_{theta^-1} o u_theta is postcomposition by the identity
    auto tinv = make_dbl_anti_auto(inc.codomain, *invert(inc.theta));
    EXPECT_TRUE((u_theta(tinv, i1, i0) * u).is_identity());
    // applying theta twice is postcomposition by theta^2 = id
    EXPECT_TRUE((u_theta(t, i1, i0) * u).is_identity());
}

TEST(UTheta, Natural) {
    std::mt19937 rng(11);
    auto m2 = matrix_algebra(F3, 2);
    for (const auto& a : {transpose_anti(m2), symplectic_anti(m2)}) {
        auto k = standard_double(a);
        auto search = find_anti_auto(k);
        ASSERT_TRUE(search.theta);
        auto rr = regular_module(m2), col = row_vector_module(m2);
        std::vector<ModulePtr<PrimeField>> mods{rr, col, direct_sum(*col, *col)};
        for (const auto& x : mods)
            for (const auto& y : mods) {
                M fm = random_in_span(hom_space(*x, *y), y->dim(), x->dim(), rng);
                auto x0 = dual(x, k, 0), x1 = dual(x, k, 1), y0 = dual(y, k, 0), y1 = dual(y, k, 1);
                EXPECT_EQ(u_theta(*search.theta, x0, x1) * dual_map(fm, x0, y0), dual_map(fm, x1, y1) * u_theta(*search.theta, y0, y1));
            }
    }
}

TEST(Phi, RegularModuleRecoversAlpha) {
    auto ut = upper_triangular(F3, 2);
    auto rr = regular_module(ut);
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto k = standard_double(a);
        auto d1 = dual(rr, k, 1);
        auto d10 = dual(d1.module, k, 0);
        M ph = phi(d1, d10);
        // identify K_1 with R^[1] via k -> (x -> alpha(x) k)
        M iota(F3, d1.basis.size(), 3);
        for (std::size_t c = 0; c < 3; ++c) {
            M fk(F3, 3, 3);
            for (std::size_t j = 0; j < 3; ++j) fk.set_col(j, ut->mul(a.matrix.col(j), unit_vec(F3, 3, c)));
            iota.set_col(c, d1.coords(fk));
        }
        for (std::size_t r = 0; r < 3; ++r) {
            M g = d10.element(ph.col(r));
            EXPECT_EQ(g * iota, ut->left_mult(a.matrix.col(r))) << a.name << " r=" << r;
        }
    }
}

TEST(Phi, ZeroAndBijective) {
    auto m2 = matrix_algebra(F3, 2);
    auto k = standard_double(transpose_anti(m2));
    auto zero = make_module(m2, 0, std::vector<M>(4, M(F3, 0, 0)), "0");
    auto z1 = dual(zero, k, 1);
    auto z10 = dual(z1.module, k, 0);
    EXPECT_EQ(phi(z1, z10).cols(), 0u);
    auto col = row_vector_module(m2);
    auto d1 = dual(col, k, 1);
    auto d10 = dual(d1.module, k, 0);
    M ph = phi(d1, d10);
    EXPECT_EQ(ph.rows(), 2u);
    EXPECT_TRUE(is_invertible(ph));
    EXPECT_TRUE(is_module_hom(*col, *d10.module, ph));
}

TEST(Phi, Natural) {
    std::mt19937 rng(5);
    auto ut = upper_triangular(F3, 2);
    auto rr = regular_module(ut);
    auto q = quotient_module(*rr, {unit_vec(F3, 3, 1)});
    std::vector<ModulePtr<PrimeField>> mods{rr, q, direct_sum(*rr, *q)};
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto k = standard_double(a);
        for (const auto& x : mods)
            for (const auto& y : mods) {
                M fm = random_in_span(hom_space(*x, *y), y->dim(), x->dim(), rng);
                auto x1 = dual(x, k, 1), y1 = dual(y, k, 1);
                auto x10 = dual(x1.module, k, 0), y10 = dual(y1.module, k, 0);
                M f1 = dual_map(fm, x1, y1);          // y^[1] -> x^[1]
                M f10 = dual_map(f1, y10, x10);       // x^[1][0] -> y^[1][0]
                EXPECT_EQ(f10 * phi(x1, x10), phi(y1, y10) * fm);
            }
    }
}

TEST(DblIso, Examples) {
    auto m2 = matrix_algebra(F2, 2);
    auto t = transpose_anti(m2);
    auto k = standard_double(t);
    EXPECT_EQ(is_dbl_isomorphic(*k, *k).status, SearchStatus::Found);
    Vec<PrimeField> u{0, 1, 1, 0};
    auto k2 = standard_double(inner_twist(t, u));
    auto res = is_dbl_isomorphic(*k, *k2);
    ASSERT_EQ(res.status, SearchStatus::Found);
    EXPECT_TRUE(is_dbl_hom(*k, *k2, *res.iso));

    auto ff = product_algebra(*field_algebra(F2), *field_algebra(F2));
    EXPECT_EQ(is_dbl_isomorphic(*standard_double(identity_anti(ff)), *standard_double(swap_anti(ff))).status, SearchStatus::ProvablyNone);
}

TEST(AntiAuto, Examples) {
    auto k = standard_double(identity_anti(field_algebra(F3)));
    auto s = find_anti_auto(k);
    ASSERT_TRUE(s.theta);
    EXPECT_TRUE(s.theta->matrix.is_identity());
    EXPECT_TRUE(s.theta->involution);

    auto inc = incidence_example(F2);
    auto si = find_anti_auto(inc.codomain);
    EXPECT_EQ(si.status, SearchStatus::Found);
    EXPECT_EQ(si.involution_status, SearchStatus::Found);
    auto flip = make_dbl_anti_auto(inc.codomain, inc.theta);
    EXPECT_TRUE(flip.involution);

    for (const auto& f : {F3}) {
        auto tri = triangular_example(f, 2);
        auto q10 = triangular_quotient(tri, 1, 0);
        EXPECT_EQ(find_anti_auto(q10.codomain).status, SearchStatus::ProvablyNone);
        auto q11 = triangular_quotient(tri, 1, 1);
        EXPECT_EQ(find_anti_auto(q11.codomain).status, SearchStatus::Found);
    }
}

TEST(AntiAuto, FoundMapsSatisfyLaws) {
    auto ut = upper_triangular(F3, 2);
    for (const auto& a : enumerate_anti_endos(ut)) {
        auto k = standard_double(a);
        auto s = find_anti_auto(k);
        if (s.theta) {
            EXPECT_TRUE(intertwines_sides(*k, s.theta->matrix));
            EXPECT_TRUE(is_invertible(s.theta->matrix));
        }
        if (s.involution) EXPECT_TRUE((s.involution->matrix * s.involution->matrix).is_identity());
    }
}
