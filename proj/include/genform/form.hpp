#pragma once

#include "genform/double_module.hpp"

namespace genform {

/// K-valued bilinear form stored by its Gram tensor: gram[i*m + j] = b(x_i, x_j).
template <Field F>
struct BilinearForm {
    ModulePtr<F> module;
    DoublePtr<F> codomain;
    std::vector<Vec<F>> gram;
    std::string name;

    std::size_t m() const { return module->dim(); }
    const Vec<F>& at(std::size_t i, std::size_t j) const { return gram[i * m() + j]; }

    /// b(x, y) for coordinate vectors x, y.
    Vec<F> value(const Vec<F>& x, const Vec<F>& y) const {
        const F& f = module->field();
        Vec<F> out = zero_vec(f, codomain->dim());
        for (std::size_t i = 0; i < m(); ++i) {
            if (f.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < m(); ++j) {
                if (f.is_zero(y[j])) continue;
                out = vec_add(f, out, vec_scale(f, f.mul(x[i], y[j]), at(i, j)));
            }
        }
        return out;
    }
};

/// Checks b(x e_s, y) = b(x,y) o0 e_s and b(x, y e_s) = b(x,y) o1 e_s on basis triples.
template <Field F>
void validate_form(const BilinearForm<F>& b) {
    const F& f = b.module->field();
    const std::size_t m = b.m(), k = b.codomain->dim();
    if (!b.module->algebra()->same_as(*b.codomain->algebra())) fail(ErrorKind::AlgebraMismatch, "module and codomain are over different algebras");
    if (b.gram.size() != m * m) fail(ErrorKind::DimensionMismatch, "Gram tensor needs " + std::to_string(m * m) + " entries");
    for (const auto& g : b.gram)
        if (g.size() != k) fail(ErrorKind::DimensionMismatch, "Gram entries must have length " + std::to_string(k));
    for (std::size_t s = 0; s < b.module->algebra()->dim(); ++s) {
        const Mat<F>& a = b.module->action_basis(s);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Vec<F> lhs0 = zero_vec(f, k), lhs1 = zero_vec(f, k);
                for (std::size_t c = 0; c < m; ++c) {
                    if (!f.is_zero(a(c, i))) lhs0 = vec_add(f, lhs0, vec_scale(f, a(c, i), b.at(c, j)));
                    if (!f.is_zero(a(c, j))) lhs1 = vec_add(f, lhs1, vec_scale(f, a(c, j), b.at(i, c)));
                }
                if (!vec_equal(f, lhs0, b.codomain->actions(0)[s] * b.at(i, j)))
                    fail(ErrorKind::CompatibilityViolation, "side 0 law fails for e" + std::to_string(s) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")", {0, s, i, j});
                if (!vec_equal(f, lhs1, b.codomain->actions(1)[s] * b.at(i, j)))
                    fail(ErrorKind::CompatibilityViolation, "side 1 law fails for e" + std::to_string(s) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")", {1, s, i, j});
            }
    }
}

template <Field F>
BilinearForm<F> make_form(ModulePtr<F> m, DoublePtr<F> k, std::vector<Vec<F>> gram, std::string name = "") {
    BilinearForm<F> b{std::move(m), std::move(k), std::move(gram), std::move(name)};
    validate_form(b);
    return b;
}

template <Field F>
BilinearForm<F> zero_form(ModulePtr<F> m, DoublePtr<F> k) {
    std::size_t n = m->dim();
    Vec<F> z = zero_vec(m->field(), k->dim());
    return make_form(std::move(m), std::move(k), std::vector<Vec<F>>(n * n, z), "0");
}

/// f o b for a double-module homomorphism f from b's codomain to k.
template <Field F>
BilinearForm<F> pushforward_form(const BilinearForm<F>& b, const DoublePtr<F>& k, const Mat<F>& f, std::string name = "") {
    if (!is_dbl_hom(*b.codomain, *k, f)) fail(ErrorKind::NotHomomorphism, "map is not a double-module homomorphism");
    std::vector<Vec<F>> gram;
    for (const auto& g : b.gram) gram.push_back(f * g);
    return make_form(b.module, k, std::move(gram), name.empty() ? b.name : name);
}

/// Classical form over a field-like algebra with 1-dim codomain, from a Gram matrix.
template <Field F>
std::vector<Vec<F>> gram_from_matrix(const Mat<F>& g) {
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) out.push_back({g(i, j)});
    return out;
}

/// Basis of all Gram tensors M x M -> K satisfying both compatibility laws.
template <Field F>
std::vector<std::vector<Vec<F>>> form_space(const ModulePtr<F>& mod, const DoublePtr<F>& k) {
    const F& f = mod->field();
    const std::size_t m = mod->dim(), kd = k->dim(), n = m * m * kd;
    auto idx = [&](std::size_t i, std::size_t j, std::size_t t) { return (i * m + j) * kd + t; };
    std::vector<Vec<F>> rows;
    for (std::size_t s = 0; s < mod->algebra()->dim(); ++s) {
        const Mat<F>& a = mod->action_basis(s);
        for (int side = 0; side < 2; ++side) {
            const Mat<F>& act = k->actions(side)[s];
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t t = 0; t < kd; ++t) {
                        Vec<F> row(n, f.zero());
                        for (std::size_t c = 0; c < m; ++c) {
                            auto coeff = side == 0 ? a(c, i) : a(c, j);
                            if (f.is_zero(coeff)) continue;
                            std::size_t at = side == 0 ? idx(c, j, t) : idx(i, c, t);
                            row[at] = f.add(row[at], coeff);
                        }
                        for (std::size_t u = 0; u < kd; ++u) row[idx(i, j, u)] = f.sub(row[idx(i, j, u)], act(t, u));
                        rows.push_back(std::move(row));
                    }
        }
    }
    std::vector<Vec<F>> kernel;
    if (rows.empty()) {
        for (std::size_t c = 0; c < n; ++c) kernel.push_back(unit_vec(f, n, c));
    } else {
        kernel = kernel_basis(Mat<F>::from_rows(f, rows));
    }
    std::vector<std::vector<Vec<F>>> out;
    for (const auto& v : kernel) {
        std::vector<Vec<F>> g;
        for (std::size_t p = 0; p < m * m; ++p) g.emplace_back(v.begin() + p * kd, v.begin() + (p + 1) * kd);
        out.push_back(std::move(g));
    }
    return out;
}

template <Field F>
struct FormReport {
    Dual<F> dual0, dual1;  // M^[0] = Hom(M, K_1), M^[1] = Hom(M, K_0)
    Mat<F> lad, rad;       // lAd: M -> M^[0], rAd: M -> M^[1]
    bool right_injective = false, right_regular = false;
    bool left_injective = false, left_regular = false;
    std::vector<Vec<F>> right_kernel, left_kernel;  // witnesses of degeneracy
};

template <Field F>
FormReport<F> adjoints(const BilinearForm<F>& b) {
    const F& f = b.module->field();
    const std::size_t m = b.m(), k = b.codomain->dim();
    FormReport<F> r{dual(b.module, b.codomain, 0), dual(b.module, b.codomain, 1), {}, {}, false, false, false, false, {}, {}};
    r.lad = Mat<F>(f, r.dual0.basis.size(), m);
    r.rad = Mat<F>(f, r.dual1.basis.size(), m);
    for (std::size_t i = 0; i < m; ++i) {
        Mat<F> l(f, k, m), rr(f, k, m);
        for (std::size_t j = 0; j < m; ++j) {
            l.set_col(j, b.at(i, j));
            rr.set_col(j, b.at(j, i));
        }
        r.lad.set_col(i, r.dual0.coords(l));
        r.rad.set_col(i, r.dual1.coords(rr));
    }
    r.right_kernel = kernel_basis(r.rad);
    r.left_kernel = kernel_basis(r.lad);
    r.right_injective = r.right_kernel.empty();
    r.left_injective = r.left_kernel.empty();
    r.right_regular = r.right_injective && r.dual1.basis.size() == m;
    r.left_regular = r.left_injective && r.dual0.basis.size() == m;
    return r;
}

/// The alpha with b(w x, y) = b(x, alpha(w) y), i.e. alpha(w) = rAd^{-1} w^[1] rAd.
template <Field F>
AntiEndo<F> corresponding_anti_endo(const BilinearForm<F>& b, const EndoAlgebra<F>& e, const FormReport<F>& rep) {
    if (!rep.right_regular) fail(ErrorKind::NotRightRegular, "form is not right regular");
    if (e.module->dim() != b.m()) fail(ErrorKind::DimensionMismatch, "endomorphism algebra belongs to another module");
    const F& f = b.module->field();
    const std::size_t d = e.algebra->dim(), m = b.m();
    Mat<F> rinv = *invert(rep.rad);
    Mat<F> a(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Mat<F> wd = dual_map(e.rep[i], rep.dual1, rep.dual1);
        a.set_col(i, e.coords(rinv * wd * rep.rad));
    }
    auto alpha = make_anti_endo(e.algebra, a, "alpha(" + b.name + ")");
    for (std::size_t w = 0; w < d; ++w) {
        Mat<F> lw = e.rep[w], aw = e.represent(a.col(w));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                ensure(vec_equal(f, b.value(lw.col(i), unit_vec(f, m, j)), b.value(unit_vec(f, m, i), aw.col(j))), "corresponding anti-endomorphism fails its defining identity");
    }
    return alpha;
}

template <Field F>
AntiEndo<F> corresponding_anti_endo(const BilinearForm<F>& b, const EndoAlgebra<F>& e) {
    return corresponding_anti_endo(b, e, adjoints(b));
}

/// The beta with b(x, w y) = b(beta(w) x, y), i.e. beta(w) = lAd^{-1} w^[0] lAd.
template <Field F>
AntiEndo<F> left_corresponding_anti_endo(const BilinearForm<F>& b, const EndoAlgebra<F>& e, const FormReport<F>& rep) {
    if (!rep.left_regular) fail(ErrorKind::NotLeftRegular, "form is not left regular");
    const F& f = b.module->field();
    const std::size_t d = e.algebra->dim(), m = b.m();
    Mat<F> linv = *invert(rep.lad);
    Mat<F> a(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Mat<F> wd = dual_map(e.rep[i], rep.dual0, rep.dual0);
        a.set_col(i, e.coords(linv * wd * rep.lad));
    }
    auto beta = make_anti_endo(e.algebra, a, "beta(" + b.name + ")");
    for (std::size_t w = 0; w < d; ++w) {
        Mat<F> lw = e.rep[w], bw = e.represent(a.col(w));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                ensure(vec_equal(f, b.value(unit_vec(f, m, i), lw.col(j)), b.value(bw.col(i), unit_vec(f, m, j))), "left corresponding anti-endomorphism fails its defining identity");
    }
    return beta;
}

template <Field F>
AntiEndo<F> left_corresponding_anti_endo(const BilinearForm<F>& b, const EndoAlgebra<F>& e) {
    return left_corresponding_anti_endo(b, e, adjoints(b));
}

template <Field F>
bool is_theta_symmetric(const BilinearForm<F>& b, const DblAntiAuto<F>& theta) {
    const F& f = b.module->field();
    for (std::size_t i = 0; i < b.m(); ++i)
        for (std::size_t j = 0; j < b.m(); ++j)
            if (!vec_equal(f, b.at(i, j), theta.matrix * b.at(j, i))) return false;
    return true;
}

/// b(x,y)^theta = b(y, lambda x) on basis pairs.
template <Field F>
bool is_right_asymmetry(const BilinearForm<F>& b, const DblAntiAuto<F>& theta, const Mat<F>& lambda) {
    const F& f = b.module->field();
    const std::size_t m = b.m();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!vec_equal(f, theta.matrix * b.at(i, j), b.value(unit_vec(f, m, j), lambda.col(i)))) return false;
    return true;
}

/// b(x,y)^theta = b(lambda y, x) on basis pairs.
template <Field F>
bool is_left_asymmetry(const BilinearForm<F>& b, const DblAntiAuto<F>& theta, const Mat<F>& lambda) {
    const F& f = b.module->field();
    const std::size_t m = b.m();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!vec_equal(f, theta.matrix * b.at(i, j), b.value(lambda.col(j), unit_vec(f, m, i)))) return false;
    return true;
}

template <Field F>
struct AsymmetryResult {
    std::optional<Mat<F>> lambda;
    std::size_t solution_dim = 0;  // dimension of the space of right asymmetries (0 when none exist)
    bool unique = false;
};

/// A right theta-asymmetry in End_R(M): rAd^{-1} u_theta lAd when b is right regular,
/// otherwise a direct solve of the defining identity over End_R(M).
template <Field F>
AsymmetryResult<F> right_asymmetry(const BilinearForm<F>& b, const DblAntiAuto<F>& theta) {
    const F& f = b.module->field();
    const std::size_t m = b.m(), k = b.codomain->dim();
    auto rep = adjoints(b);
    AsymmetryResult<F> out;
    if (rep.right_regular) {
        Mat<F> lambda = *invert(rep.rad) * u_theta(theta, rep.dual0, rep.dual1) * rep.lad;
        ensure(is_right_asymmetry(b, theta, lambda), "regular-case asymmetry fails its identity");
        out.lambda = lambda;
        out.solution_dim = 1;
        out.unique = true;
        return out;
    }
    auto ends = hom_space(*b.module, *b.module);
    const std::size_t t = ends.size();
    // unknown coefficients c; equations theta b(x_i,x_j) - sum_c c_c b(x_j, L_c x_i) = 0
    Mat<F> a(f, m * m * k, t);
    Vec<F> rhs(m * m * k, f.zero());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec<F> target = theta.matrix * b.at(i, j);
            for (std::size_t u = 0; u < k; ++u) rhs[(i * m + j) * k + u] = target[u];
            for (std::size_t c = 0; c < t; ++c) {
                Vec<F> v = b.value(unit_vec(f, m, j), ends[c].col(i));
                for (std::size_t u = 0; u < k; ++u) a((i * m + j) * k + u, c) = v[u];
            }
        }
    auto sol = solve_affine(a, rhs);
    if (!sol) return out;
    Mat<F> lambda(f, m, m);
    for (std::size_t c = 0; c < t; ++c) lambda = lambda + ends[c].scaled(sol->particular[c]);
    ensure(is_right_asymmetry(b, theta, lambda), "solved asymmetry fails its identity");
    out.lambda = lambda;
    out.solution_dim = sol->directions.size() + 1;
    out.unique = sol->directions.empty();
    return out;
}

/// (b1 _|_ b2)(x + x', y + y') = b1(x,y) + b2(x',y').
template <Field F>
BilinearForm<F> orthogonal_sum(const BilinearForm<F>& b1, const BilinearForm<F>& b2) {
    if (!same_double(*b1.codomain, *b2.codomain))
        fail(ErrorKind::DimensionMismatch, "orthogonal sum needs a shared codomain");
    const F& f = b1.module->field();
    auto m = direct_sum(*b1.module, *b2.module);
    const std::size_t m1 = b1.m(), m2 = b2.m(), n = m1 + m2;
    std::vector<Vec<F>> gram(n * n, zero_vec(f, b1.codomain->dim()));
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m1; ++j) gram[i * n + j] = b1.at(i, j);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m2; ++j) gram[(m1 + i) * n + m1 + j] = b2.at(i, j);
    return make_form(m, b1.codomain, std::move(gram), b1.name + "+" + b2.name);
}

/// n . b = b _|_ ... _|_ b.
template <Field F>
BilinearForm<F> n_fold(const BilinearForm<F>& b, std::size_t n) {
    if (n == 0) fail(ErrorKind::DimensionMismatch, "n-fold sum needs n >= 1");
    BilinearForm<F> out = b;
    for (std::size_t k = 1; k < n; ++k) out = orthogonal_sum(out, b);
    out.name = std::to_string(n) + "." + b.name;
    return out;
}

}  // namespace genform
