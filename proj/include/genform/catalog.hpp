#pragma once

#include "genform/matrix_space.hpp"

namespace genform {

using Mask = std::vector<std::vector<bool>>;

/// Incidence-algebra setting: R (7-dim, 3x3), M (2x3 matrices), K (5-dim, 3x3) with
/// k o0 r = flip(r) k, k o1 r = k r, and the form b(x, y) = flip(x) y.
template <Field F>
struct IncidenceExample {
    AlgebraPtr<F> ring;
    MatrixSpace<F> mspace, kspace;
    ModulePtr<F> module;
    DoublePtr<F> codomain;
    BilinearForm<F> form;
    EndoAlgebra<F> endo;  // UT2 acting on M by left multiplication
    Mat<F> theta;         // k -> flip(k) on K
};

template <Field F>
IncidenceExample<F> incidence_example(const F& f) {
    const Mask rmask{{true, true, true}, {true, true, true}, {false, false, true}};
    const Mask kmask{{true, true, true}, {false, false, true}, {false, false, true}};
    const Mask mmask{{true, true, true}, {false, false, true}};
    IncidenceExample<F> ex;
    ex.ring = structured_subalgebra(f, 3, rmask, "Inc3(" + f.name() + ")");
    ex.mspace = MatrixSpace<F>::from_mask(f, mmask);
    ex.kspace = MatrixSpace<F>::from_mask(f, kmask);
    ex.module = matrix_module(ex.ring, 2, mmask, "M");
    ex.codomain = matrix_double<F>(ex.ring, ex.kspace, [](const Mat<F>& r) { return flip_matrix(r); }, "K");
    ex.form = matrix_form<F>(ex.module, ex.mspace, ex.codomain, ex.kspace, [](const Mat<F>& x) { return flip_matrix(x); }, "b");
    auto w = upper_triangular(f, 2);
    std::vector<Mat<F>> rep;
    for (const auto& u : w->realization()) {
        Mat<F> a(f, ex.mspace.dim(), ex.mspace.dim());
        for (std::size_t k = 0; k < ex.mspace.dim(); ++k) a.set_col(k, ex.mspace.coords(u * ex.mspace.to_matrix(unit_vec(f, ex.mspace.dim(), k))));
        rep.push_back(std::move(a));
    }
    ex.endo = endo_algebra_from_action(ex.module, w, std::move(rep));
    ex.theta = Mat<F>(f, ex.kspace.dim(), ex.kspace.dim());
    for (std::size_t k = 0; k < ex.kspace.dim(); ++k) ex.theta.set_col(k, ex.kspace.coords(flip_matrix(ex.kspace.to_matrix(unit_vec(f, ex.kspace.dim(), k)))));
    return ex;
}

/// The commutative ring {a I + b e21 + c e31} of 3x3 matrices acting on row vectors F^3;
/// its endomorphism ring is the ring itself acting by right multiplication.
template <Field F>
struct CommutativeRowExample {
    AlgebraPtr<F> ring;
    ModulePtr<F> module;
    EndoAlgebra<F> endo;
};

template <Field F>
CommutativeRowExample<F> commutative_row_example(const F& f) {
    auto unit = [&](std::size_t i, std::size_t j) {
        Mat<F> e(f, 3, 3);
        e(i, j) = f.one();
        return e;
    };
    CommutativeRowExample<F> ex;
    ex.ring = algebra_from_matrices(f, {Mat<F>::identity(f, 3), unit(1, 0), unit(2, 0)}, "C3(" + f.name() + ")");
    ex.module = row_vector_module(ex.ring);
    ex.endo = endo_algebra_from_action(ex.module, ex.ring, ex.module->actions());
    return ex;
}

/// Upper-triangular family: R = UT_n, M = row vectors F^n, K = M_n(F) with
/// A o0 B = B^T A and A o1 B = A B, and b(x, y) = x^T y. End_R(M) = F.
template <Field F>
struct TriangularExample {
    std::size_t n = 0;
    AlgebraPtr<F> ring;
    ModulePtr<F> module;
    MatrixSpace<F> mspace, kspace;
    DoublePtr<F> codomain;
    BilinearForm<F> form;
    EndoAlgebra<F> endo;
};

template <Field F>
TriangularExample<F> triangular_example(const F& f, std::size_t n) {
    TriangularExample<F> ex;
    ex.n = n;
    ex.ring = upper_triangular(f, n);
    ex.module = row_vector_module(ex.ring);
    ex.mspace = MatrixSpace<F>::full(f, 1, n);
    ex.kspace = MatrixSpace<F>::full(f, n, n);
    ex.codomain = matrix_double<F>(ex.ring, ex.kspace, [](const Mat<F>& r) { return r.transpose(); }, "M" + std::to_string(n) + "(" + f.name() + ")");
    ex.form = matrix_form<F>(ex.module, ex.mspace, ex.codomain, ex.kspace, [](const Mat<F>& x) { return x.transpose(); }, "b");
    ex.endo = endo_algebra_from_action(ex.module, field_algebra(f), {Mat<F>::identity(f, n)});
    return ex;
}

/// Basis of K_{u,v}: matrices vanishing in rows <= u and columns <= v (1-based).
template <Field F>
std::vector<Vec<F>> triangular_sub(const TriangularExample<F>& ex, std::size_t u, std::size_t v) {
    std::vector<Vec<F>> out;
    const F& f = ex.kspace.field;
    for (std::size_t k = 0; k < ex.kspace.dim(); ++k) {
        auto [i, j] = ex.kspace.cells[k];
        if (i + 1 > u && j + 1 > v) out.push_back(unit_vec(f, ex.kspace.dim(), k));
    }
    return out;
}

template <Field F>
struct TriangularQuotient {
    DoublePtr<F> codomain;  // K / K_{u,v}
    Mat<F> projection;
    BilinearForm<F> form;  // b_{u,v}
};

template <Field F>
TriangularQuotient<F> triangular_quotient(const TriangularExample<F>& ex, std::size_t u, std::size_t v) {
    auto sub = triangular_sub(ex, u, v);
    std::string tag = std::to_string(u) + "," + std::to_string(v);
    auto k = quotient_double(*ex.codomain, sub, "K/K" + tag);
    QuotientSpace<F> qs(ex.kspace.field, ex.kspace.dim(), sub);
    auto b = pushforward_form(ex.form, k, qs.projection(), "b" + tag);
    return {k, qs.projection(), b};
}

}  // namespace genform
