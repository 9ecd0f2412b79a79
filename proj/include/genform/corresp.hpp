#pragma once

#include "genform/form.hpp"
#include "genform/radical.hpp"

namespace genform {

/// Quotient of F^(left*right) (index i*right + j for x_i (x) y_j) by a relation subspace.
template <Field F>
struct TensorQuotient {
    std::size_t left = 0, right = 0;
    QuotientSpace<F> space;

    std::size_t dim() const { return space.dim(); }
    const Mat<F>& projection() const { return space.projection(); }
    const Mat<F>& section() const { return space.section(); }
    const std::vector<Vec<F>>& relations() const { return space.relations(); }
};

/// K_alpha = M (x)_alpha M with its double-module structure and the form b_alpha.
template <Field F>
struct KAlpha {
    EndoAlgebra<F> endo;
    AntiEndo<F> alpha;
    TensorQuotient<F> tensor;
    DoublePtr<F> codomain;
    BilinearForm<F> form;

    std::size_t m() const { return endo.module->dim(); }
};

namespace detail {

template <Field F>
std::vector<Vec<F>> columns_of(const std::vector<Mat<F>>& mats) {
    std::vector<Vec<F>> out;
    for (const auto& a : mats)
        for (std::size_t c = 0; c < a.cols(); ++c) out.push_back(a.col(c));
    return out;
}

/// The map on the quotient induced by t, failing with DescentFailure when t does not preserve the relations.
template <Field F>
Mat<F> descend(const QuotientSpace<F>& qs, const Mat<F>& t, const std::string& what) {
    auto a = qs.induced(t);
    if (!a) fail(ErrorKind::DescentFailure, what + " does not preserve the relation space");
    return *a;
}

/// pi_target t sigma_source, after checking that t maps the source relations into the target relations.
template <Field F>
Mat<F> descend_between(const QuotientSpace<F>& source, const QuotientSpace<F>& target, const Mat<F>& t, const std::string& what) {
    for (const auto& r : source.relations())
        if (!target.in_subspace(t * r)) fail(ErrorKind::DescentFailure, what + " does not respect the relations");
    return target.projection() * t * source.section();
}

/// The m^2 x m^2 matrix of x (x) y -> y (x) x.
template <Field F>
Mat<F> swap_matrix(const F& f, std::size_t m) {
    Mat<F> s(f, m * m, m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s(j * m + i, i * m + j) = f.one();
    return s;
}

}  // namespace detail

/// Builds K_alpha as the quotient of M (x) M by w x (x) y - x (x) alpha(w) y.
template <Field F>
KAlpha<F> tensor_alpha(const EndoAlgebra<F>& e, const AntiEndo<F>& alpha) {
    if (!e.algebra->same_as(*alpha.algebra)) fail(ErrorKind::AlgebraMismatch, "anti-endomorphism is not defined on the endomorphism algebra");
    const auto& mod = e.module;
    const F& f = mod->field();
    const std::size_t m = mod->dim();
    const auto id = Mat<F>::identity(f, m);
    std::vector<Mat<F>> gens;
    for (std::size_t k = 0; k < e.algebra->dim(); ++k) gens.push_back(kron(e.rep[k], id) - kron(id, e.represent(alpha.matrix.col(k))));
    TensorQuotient<F> t{m, m, QuotientSpace<F>(f, m * m, detail::columns_of(gens))};
    std::vector<Mat<F>> p, q;
    for (std::size_t s = 0; s < mod->algebra()->dim(); ++s) {
        p.push_back(detail::descend(t.space, kron(mod->action_basis(s), id), "side-0 action"));
        q.push_back(detail::descend(t.space, kron(id, mod->action_basis(s)), "side-1 action"));
    }
    std::string tag = alpha.name.empty() ? "alpha" : alpha.name;
    auto k = make_double(mod->algebra(), t.dim(), std::move(p), std::move(q), "K_" + tag);
    std::vector<Vec<F>> gram;
    for (std::size_t c = 0; c < m * m; ++c) gram.push_back(t.projection().col(c));
    auto b = make_form(mod, k, std::move(gram), "b_" + tag);
    return KAlpha<F>{e, alpha, std::move(t), std::move(k), std::move(b)};
}

/// The unique double-module map f with b = f o b_alpha, or nothing when b is not alpha-compatible.
template <Field F>
std::optional<Mat<F>> universal_map(const BilinearForm<F>& b, const KAlpha<F>& ka) {
    if (b.m() != ka.m()) fail(ErrorKind::DimensionMismatch, "form and K_alpha live on modules of different dimension");
    const F& f = b.module->field();
    Mat<F> g = Mat<F>::from_columns(f, b.codomain->dim(), b.gram);
    for (const auto& r : ka.tensor.relations())
        if (!vec_is_zero(f, g * r)) return std::nullopt;
    Mat<F> out = g * ka.tensor.section();
    ensure(is_dbl_hom(*ka.codomain, *b.codomain, out), "universal map is not a double-module homomorphism");
    return out;
}

/// theta_alpha(x (x) y) = y (x) x for an involution alpha.
template <Field F>
DblAntiAuto<F> theta_alpha(const KAlpha<F>& ka) {
    if (!ka.alpha.is_involution()) fail(ErrorKind::AlphaNotInvolution, "alpha is not an involution");
    const F& f = ka.endo.module->field();
    Mat<F> t = detail::descend(ka.tensor.space, detail::swap_matrix(f, ka.m()), "swap");
    auto theta = make_dbl_anti_auto(ka.codomain, t);
    ensure(theta.involution, "swap does not descend to an involution");
    ensure(is_theta_symmetric(ka.form, theta), "b_alpha is not theta_alpha-symmetric");
    return theta;
}

template <Field F>
struct SimilarityResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<Mat<F>> map;  // f with b' = f o b
    std::size_t candidates = 0; // dimension of the affine space of compatible homomorphisms (0 when none)
};

/// Existence of a bijective double-module map f: K -> K' with b' = f o b.
template <Field F>
SimilarityResult<F> is_similar(const BilinearForm<F>& b, const BilinearForm<F>& b2, const SearchOptions& opts = {}) {
    if (b.m() != b2.m()) fail(ErrorKind::DimensionMismatch, "similarity compares forms on the same module");
    const F& f = b.module->field();
    const std::size_t m = b.m(), k = b.codomain->dim(), k2 = b2.codomain->dim();
    SimilarityResult<F> out;
    if (k == 0 && k2 == 0) return {SearchStatus::Found, Mat<F>(f, 0, 0), 1};
    auto homs = dbl_hom_space(*b.codomain, *b2.codomain);
    // sum_t c_t H_t gram[p] = gram'[p]
    Mat<F> a(f, m * m * k2, homs.size());
    Vec<F> rhs(m * m * k2, f.zero());
    for (std::size_t p = 0; p < m * m; ++p) {
        for (std::size_t u = 0; u < k2; ++u) rhs[p * k2 + u] = b2.gram[p][u];
        for (std::size_t t = 0; t < homs.size(); ++t) {
            Vec<F> v = homs[t] * b.gram[p];
            for (std::size_t u = 0; u < k2; ++u) a(p * k2 + u, t) = v[u];
        }
    }
    if (homs.empty()) {
        out.status = SearchStatus::ProvablyNone;
        return out;
    }
    auto sol = solve_affine(a, rhs);
    if (!sol) {
        out.status = SearchStatus::ProvablyNone;
        return out;
    }
    out.candidates = sol->directions.size() + 1;
    if (k != k2) {
        out.status = SearchStatus::ProvablyNone;
        return out;
    }
    Mat<F> offset = combine(f, homs, sol->particular, k2, k);
    std::vector<Mat<F>> dirs;
    for (const auto& d : sol->directions) dirs.push_back(combine(f, homs, d, k2, k));
    auto res = find_invertible_in_span(f, k, dirs, opts, std::optional<Mat<F>>(offset));
    out.status = res.status;
    if (res.found()) {
        ensure(is_dbl_hom(*b.codomain, *b2.codomain, *res.element), "similarity is not a homomorphism");
        out.map = res.element;
    }
    return out;
}

template <Field F>
struct Generization {
    AntiEndo<F> alpha;  // alpha(b)
    KAlpha<F> k_alpha;  // carries b_alpha(b)
    SimilarityResult<F> similarity;  // from b_alpha(b) to b; found means b is right generic
};

template <Field F>
Generization<F> generization(const BilinearForm<F>& b, const EndoAlgebra<F>& e, const SearchOptions& opts = {}) {
    auto alpha = corresponding_anti_endo(b, e);
    auto ka = tensor_alpha(e, alpha);
    auto sim = is_similar(ka.form, b, opts);
    return {std::move(alpha), std::move(ka), std::move(sim)};
}

template <Field F>
struct TwistIso {
    KAlpha<F> target;  // K_{phi o alpha}
    Mat<F> map;        // x (x)_alpha y -> x (x)_{phi o alpha} u y
};

/// The isomorphism K_alpha -> K_{phi o alpha} for phi(w) = u w u^{-1}.
template <Field F>
TwistIso<F> inner_twist_iso(const KAlpha<F>& ka, const Vec<F>& u) {
    const Algebra<F>& w = *ka.alpha.algebra;
    if (!w.is_unit(u)) fail(ErrorKind::NotInvertible, "twisting element is not a unit");
    const F& f = w.field();
    auto beta = compose(ka.alpha, inner_automorphism(w, u), "inner o " + ka.alpha.name);
    auto kb = tensor_alpha(ka.endo, beta);
    const auto id = Mat<F>::identity(f, ka.m());
    Mat<F> h = detail::descend_between(ka.tensor.space, kb.tensor.space, kron(id, ka.endo.represent(u)), "inner twist map");
    ensure(is_dbl_hom(*ka.codomain, *kb.codomain, h) && is_invertible(h), "inner twist map is not an isomorphism");
    return {std::move(kb), std::move(h)};
}

/// The anti-automorphism (x (x) y)^theta = y (x) lambda x of K_alpha.
template <Field F>
DblAntiAuto<F> lambda_induced_theta(const KAlpha<F>& ka, const Vec<F>& lambda) {
    const Algebra<F>& w = *ka.alpha.algebra;
    const F& f = w.field();
    const Mat<F>& a = ka.alpha.matrix;
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (!vec_equal(f, w.mul(a * (a * w.basis(i)), lambda), w.mul(lambda, w.basis(i))))
            fail(ErrorKind::HypothesisViolated, "alpha^2(w) lambda != lambda w for basis element " + std::to_string(i), {i});
    Vec<F> norm = w.mul(a * lambda, lambda);
    if (!w.is_unit(norm)) fail(ErrorKind::HypothesisViolated, "alpha(lambda) lambda is not invertible");
    const auto id = Mat<F>::identity(f, ka.m());
    Mat<F> t = detail::descend(ka.tensor.space, kron(id, ka.endo.represent(lambda)) * detail::swap_matrix(f, ka.m()), "lambda-twisted swap");
    auto theta = make_dbl_anti_auto(ka.codomain, t);
    ensure(!vec_equal(f, norm, w.unity()) || theta.involution, "involution flag disagrees with alpha(lambda) lambda");
    ensure(is_right_asymmetry(ka.form, theta, ka.endo.represent(lambda)), "lambda is not a right asymmetry of b_alpha");
    return theta;
}

/// b'(sigma x, sigma y) = f(b(x, y)) with sigma, f bijective homomorphisms.
template <Field F>
bool verify_weak_isometry(const BilinearForm<F>& b, const BilinearForm<F>& b2, const Mat<F>& sigma, const Mat<F>& f) {
    const F& fld = b.module->field();
    const std::size_t m = b.m();
    if (b2.m() != m || sigma.rows() != m || sigma.cols() != m) return false;
    if (!is_invertible(sigma) || !is_invertible(f)) return false;
    if (!is_module_hom(*b.module, *b2.module, sigma) || !is_dbl_hom(*b.codomain, *b2.codomain, f)) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!vec_equal(fld, b2.value(sigma.col(i), sigma.col(j)), f * b.at(i, j))) return false;
    return true;
}

template <Field F>
struct WeakIsometry {
    Mat<F> sigma;  // u acting on M
    Mat<F> map;    // x (x)_alpha y -> x (x)_beta beta(u) u y
};

/// The weak isometry b_alpha -> b_beta coming from an inner automorphism phi = u (.) u^{-1} with phi alpha = beta phi.
template <Field F>
WeakIsometry<F> weak_isometry_from_inner(const KAlpha<F>& ka, const KAlpha<F>& kb, const Vec<F>& u) {
    const Algebra<F>& w = *ka.alpha.algebra;
    const F& f = w.field();
    if (!w.same_as(*kb.alpha.algebra) || ka.m() != kb.m()) fail(ErrorKind::AlgebraMismatch, "K_alpha and K_beta come from different endomorphism rings");
    Mat<F> phi = inner_automorphism(w, u);
    if (phi * ka.alpha.matrix != kb.alpha.matrix * phi) fail(ErrorKind::HypothesisViolated, "phi o alpha != beta o phi");
    Vec<F> c = w.mul(kb.alpha.matrix * u, u);
    const auto id = Mat<F>::identity(f, ka.m());
    Mat<F> h = detail::descend_between(ka.tensor.space, kb.tensor.space, kron(id, ka.endo.represent(c)), "weak isometry map");
    WeakIsometry<F> out{ka.endo.represent(u), std::move(h)};
    ensure(verify_weak_isometry(ka.form, kb.form, out.sigma, out.map), "constructed pair is not a weak isometry");
    return out;
}

/// T_n alpha on M_n(W): transpose the block matrix, then apply alpha entrywise.
template <Field F>
AntiEndo<F> t_n(const AntiEndo<F>& alpha, const AlgebraPtr<F>& wn, std::size_t n) {
    const std::size_t da = alpha.algebra->dim();
    if (n == 0) fail(ErrorKind::DimensionMismatch, "T_n needs n >= 1");
    if (wn->dim() != n * n * da) fail(ErrorKind::DimensionMismatch, "block algebra has the wrong dimension");
    const F& f = wn->field();
    Mat<F> m(f, wn->dim(), wn->dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < da; ++l) m((j * n + i) * da + l, (i * n + j) * da + k) = alpha.matrix(l, k);
    return make_anti_endo(wn, m, "T" + std::to_string(n) + "(" + alpha.name + ")");
}

template <Field F>
std::pair<AlgebraPtr<F>, AntiEndo<F>> t_n(const AntiEndo<F>& alpha, std::size_t n) {
    auto wn = matrix_over(alpha.algebra, n);
    return {wn, t_n(alpha, wn, n)};
}

/// M^alpha (x)_W M together with delta(x (x)_W y) = y (x)_alpha x into K_alpha.
template <Field F>
struct WTensor {
    TensorQuotient<F> tensor;
    DoublePtr<F> module;  // side 0 acts on the M factor, side 1 on the M^alpha factor
    Mat<F> delta;
};

template <Field F>
WTensor<F> tensor_over_w(const KAlpha<F>& ka) {
    const auto& e = ka.endo;
    const auto& mod = e.module;
    const F& f = mod->field();
    const std::size_t m = ka.m();
    const auto id = Mat<F>::identity(f, m);
    std::vector<Mat<F>> gens;
    for (std::size_t k = 0; k < e.algebra->dim(); ++k) gens.push_back(kron(e.represent(ka.alpha.matrix.col(k)), id) - kron(id, e.rep[k]));
    TensorQuotient<F> t{m, m, QuotientSpace<F>(f, m * m, detail::columns_of(gens))};
    std::vector<Mat<F>> p, q;
    for (std::size_t s = 0; s < mod->algebra()->dim(); ++s) {
        p.push_back(detail::descend(t.space, kron(id, mod->action_basis(s)), "action on the M factor"));
        q.push_back(detail::descend(t.space, kron(mod->action_basis(s), id), "action on the twisted factor"));
    }
    auto dm = make_double(mod->algebra(), t.dim(), std::move(p), std::move(q), mod->name() + "^a(x)_W " + mod->name());
    Mat<F> delta = detail::descend_between(t.space, ka.tensor.space, detail::swap_matrix(f, m), "delta");
    ensure(is_dbl_hom(*dm, *ka.codomain, delta) && is_invertible(delta), "delta is not a double-module isomorphism");
    return {std::move(t), std::move(dm), std::move(delta)};
}

/// The square rAd(b_alpha) psi = phi Gamma for Gamma: M^alpha (x)_W W -> Hom_R(M, M^alpha (x)_W M).
template <Field F>
struct GammaDiagram {
    Mat<F> psi, gamma, phi, rad;
    bool commutes = false;
    bool gamma_injective = false, gamma_surjective = false;
};

template <Field F>
GammaDiagram<F> gamma_diagram(const KAlpha<F>& ka) {
    const auto& e = ka.endo;
    const Algebra<F>& w = *e.algebra;
    const F& f = w.field();
    const std::size_t m = ka.m(), dw = w.dim();
    auto wt = tensor_over_w(ka);
    // domain: M^alpha (x)_W W, index i*dw + k for x_i (x) w_k
    std::vector<Mat<F>> gens;
    const auto im = Mat<F>::identity(f, m), iw = Mat<F>::identity(f, dw);
    for (std::size_t k = 0; k < dw; ++k) gens.push_back(kron(e.represent(ka.alpha.matrix.col(k)), iw) - kron(im, w.left_basis(k)));
    QuotientSpace<F> dom(f, m * dw, detail::columns_of(gens));
    Mat<F> psi_pre(f, m, m * dw);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < dw; ++k) psi_pre.set_col(i * dw + k, e.represent(ka.alpha.matrix.col(k)).col(i));
    for (const auto& r : dom.relations()) ensure(vec_is_zero(f, psi_pre * r), "psi does not descend");
    GammaDiagram<F> out;
    out.psi = psi_pre * dom.section();
    auto hom_t = dual(e.module, wt.module, 1);   // Hom_R(M, M^alpha (x)_W M)
    auto hom_k = dual(e.module, ka.codomain, 1); // M^[1] = Hom_R(M, (K_alpha)_0)
    Mat<F> gamma_pre(f, hom_t.basis.size(), m * dw);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < dw; ++k) {
            Mat<F> g(f, wt.tensor.dim(), m);
            for (std::size_t j = 0; j < m; ++j) g.set_col(j, wt.tensor.projection() * kron(Mat<F>::column(f, unit_vec(f, m, i)), Mat<F>::column(f, e.rep[k].col(j))).col(0));
            gamma_pre.set_col(i * dw + k, hom_t.coords(g));
        }
    for (const auto& r : dom.relations()) ensure(vec_is_zero(f, gamma_pre * r), "Gamma does not descend");
    out.gamma = gamma_pre * dom.section();
    out.phi = Mat<F>(f, hom_k.basis.size(), hom_t.basis.size());
    for (std::size_t c = 0; c < hom_t.basis.size(); ++c) out.phi.set_col(c, hom_k.coords(wt.delta * hom_t.basis[c]));
    auto rep = adjoints(ka.form);
    out.rad = rep.rad;
    ensure(rep.dual1.basis.size() == hom_k.basis.size(), "dual bases disagree");
    out.commutes = out.rad * out.psi == out.phi * out.gamma;
    const std::size_t rk = rank(out.gamma);
    out.gamma_injective = rk == dom.dim();
    out.gamma_surjective = rk == hom_t.basis.size();
    ensure(is_invertible(out.psi) && is_invertible(out.phi), "psi or phi is not bijective");
    return out;
}

template <Field F>
struct RegularityPrediction {
    bool right_regular = false;  // predicted; false means no prediction
    bool left_regular = false;
    std::vector<std::string> clauses;  // the sufficient conditions that fired
};

/// Finite-dimensional sufficient conditions for b_alpha to be regular.
template <Field F>
RegularityPrediction<F> regularity_predictor(const EndoAlgebra<F>& e, const AntiEndo<F>& alpha) {
    RegularityPrediction<F> out;
    if (is_fg_projective(e.module)) {
        out.right_regular = true;
        out.clauses.push_back("M is f.g. projective");
    }
    if (is_fg_projective(twist(e, alpha))) {
        out.right_regular = true;
        out.clauses.push_back("M^alpha is f.g. projective over W");
    }
    if (radical_is_zero(*e.algebra)) {
        out.right_regular = true;
        out.clauses.push_back("W is semisimple");
    }
    if (alpha.bijective && is_generator(e.module)) {
        out.right_regular = out.left_regular = true;
        out.clauses.push_back("M is a generator and alpha is bijective");
    }
    return out;
}

/// gamma with K_alpha isomorphic to the standard double module of (R, gamma), for free M.
template <Field F>
struct GammaExtraction {
    AntiEndo<F> gamma;
    Vec<F> generator;  // k in K_alpha with (K_alpha)_1 = k o1 R
    Mat<F> iso;        // standard double module of gamma -> K_alpha, r -> k o1 r
};

template <Field F>
GammaExtraction<F> gamma_of_alpha(const KAlpha<F>& ka, const SearchOptions& opts = {}) {
    const auto& mod = ka.endo.module;
    const auto& r = mod->algebra();
    const F& f = r->field();
    const std::size_t dr = r->dim();
    if (dr == 0 || mod->dim() % dr != 0) fail(ErrorKind::NotFree, "module dimension is not a multiple of the algebra dimension");
    auto free = power_module(regular_module(r), mod->dim() / dr);
    if (!is_module_isomorphic(*mod, *free, opts).iso) fail(ErrorKind::NotFree, "module is not free (or the search was inconclusive)");
    auto rr = regular_module(r);
    auto iso = is_module_isomorphic(*rr, *side_module(*ka.codomain, 1), opts);
    if (!iso.iso) fail(ErrorKind::RankOneIdentificationFailed, "(K_alpha)_1 is not identified with R_R (" + to_string(iso.status) + ")");
    Vec<F> k = *iso.iso * r->unity();
    Mat<F> c(f, ka.codomain->dim(), dr);
    for (std::size_t j = 0; j < dr; ++j) c.set_col(j, ka.codomain->actions(1)[j] * k);
    Mat<F> cinv = *invert(c);
    Mat<F> g(f, dr, dr);
    for (std::size_t i = 0; i < dr; ++i) g.set_col(i, cinv * (ka.codomain->actions(0)[i] * k));
    auto gamma = make_anti_endo(r, g, "gamma(" + ka.alpha.name + ")");
    ensure(is_dbl_hom(*standard_double(gamma), *ka.codomain, c), "K_alpha is not the standard double module of gamma");
    ensure(gamma.bijective == ka.alpha.bijective, "gamma and alpha disagree on bijectivity");
    return {std::move(gamma), std::move(k), std::move(c)};
}

/// For b similar to b_alpha with alpha an involution: the involution f theta_alpha f^{-1} of b's codomain.
template <Field F>
DblAntiAuto<F> transported_involution(const BilinearForm<F>& b, const Generization<F>& g) {
    if (!g.similarity.map) fail(ErrorKind::HypothesisViolated, "form is not similar to its generization");
    auto theta = theta_alpha(g.k_alpha);
    const Mat<F>& s = *g.similarity.map;
    auto out = make_dbl_anti_auto(b.codomain, s * theta.matrix * *invert(s));
    ensure(out.involution && is_theta_symmetric(b, out), "transported involution fails");
    return out;
}

}  // namespace genform
