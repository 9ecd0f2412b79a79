#pragma once

#include "genform/anti_endo.hpp"

namespace genform {

/// Right module over an algebra. Coordinates are columns; x . e_i has coordinates A_i x,
/// so the action is contravariant: A(e_i e_j) = A_j A_i and A(1) = I.
template <Field F>
class RightModule {
public:
    RightModule(AlgebraPtr<F> algebra, std::size_t dim, std::vector<Mat<F>> actions, std::string name = "")
        : algebra_(std::move(algebra)), dim_(dim), actions_(std::move(actions)), name_(std::move(name)) {
        if (actions_.size() != algebra_->dim()) fail(ErrorKind::DimensionMismatch, "module needs one action matrix per algebra basis element");
        for (const auto& a : actions_)
            if (a.rows() != dim_ || a.cols() != dim_) fail(ErrorKind::DimensionMismatch, "action matrix must be " + std::to_string(dim_) + "x" + std::to_string(dim_));
    }

    const AlgebraPtr<F>& algebra() const { return algebra_; }
    const F& field() const { return algebra_->field(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Mat<F>>& actions() const { return actions_; }
    const Mat<F>& action_basis(std::size_t i) const { return actions_[i]; }
    Mat<F> action(const Vec<F>& r) const { return combine(field(), actions_, r, dim_, dim_); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

private:
    AlgebraPtr<F> algebra_;
    std::size_t dim_;
    std::vector<Mat<F>> actions_;
    std::string name_;
};

template <Field F>
using ModulePtr = std::shared_ptr<const RightModule<F>>;

template <Field F>
void validate_module(const RightModule<F>& m) {
    const Algebra<F>& r = *m.algebra();
    if (!m.action(r.unity()).is_identity()) fail(ErrorKind::NotModule, "unity does not act as the identity");
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j)
            if (m.action(r.product(i, j)) != m.action_basis(j) * m.action_basis(i))
                fail(ErrorKind::NotModule, "action of e" + std::to_string(i) + " e" + std::to_string(j) + " is not A_j A_i", {i, j});
}

template <Field F>
ModulePtr<F> make_module(AlgebraPtr<F> r, std::size_t dim, std::vector<Mat<F>> actions, std::string name = "") {
    auto m = std::make_shared<RightModule<F>>(std::move(r), dim, std::move(actions), std::move(name));
    validate_module(*m);
    return m;
}

/// R acting on itself by right multiplication.
template <Field F>
ModulePtr<F> regular_module(const AlgebraPtr<F>& r) {
    std::vector<Mat<F>> acts;
    for (std::size_t i = 0; i < r->dim(); ++i) acts.push_back(r->right_basis(i));
    return make_module(r, r->dim(), std::move(acts), r->name() + "_R");
}

/// Span of the matrix units e_ij (rows x n, selected by mask) under right multiplication
/// by the realization of R. Rows = 1 with a full mask gives the row-vector module.
template <Field F>
ModulePtr<F> matrix_module(const AlgebraPtr<F>& r, std::size_t rows, const std::vector<std::vector<bool>>& mask, std::string name = "") {
    const F& f = r->field();
    const std::size_t n = r->realization_size();
    if (n == 0) fail(ErrorKind::Unsupported, "matrix module needs a realized algebra");
    if (mask.size() != rows) fail(ErrorKind::DimensionMismatch, "mask needs " + std::to_string(rows) + " rows");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < rows; ++i) {
        if (mask[i].size() != n) fail(ErrorKind::DimensionMismatch, "mask rows need " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j)
            if (mask[i][j]) cells.emplace_back(i, j);
    }
    const std::size_t m = cells.size();
    std::vector<Mat<F>> acts;
    for (std::size_t s = 0; s < r->dim(); ++s) {
        const Mat<F>& e = r->realization()[s];
        Mat<F> a(f, m, m);
        for (std::size_t b = 0; b < m; ++b) {
            auto [bi, bj] = cells[b];
            // (unit at (bi,bj)) * e has row bi equal to row bj of e
            for (std::size_t l = 0; l < n; ++l) {
                if (f.is_zero(e(bj, l))) continue;
                std::size_t target = m;
                for (std::size_t c = 0; c < m; ++c)
                    if (cells[c] == std::make_pair(bi, l)) target = c;
                if (target == m) fail(ErrorKind::NotModule, "mask is not closed under the right action", {s, b});
                a(target, b) = e(bj, l);
            }
        }
        acts.push_back(std::move(a));
    }
    return make_module(r, m, std::move(acts), name);
}

template <Field F>
ModulePtr<F> row_vector_module(const AlgebraPtr<F>& r) {
    std::size_t n = r->realization_size();
    return matrix_module(r, 1, {std::vector<bool>(n, true)}, "rows(" + r->name() + ")");
}

template <Field F>
ModulePtr<F> direct_sum(const RightModule<F>& a, const RightModule<F>& b) {
    if (!a.algebra()->same_as(*b.algebra())) fail(ErrorKind::AlgebraMismatch, "direct sum of modules over different algebras");
    std::vector<Mat<F>> acts;
    for (std::size_t i = 0; i < a.actions().size(); ++i) acts.push_back(block_diag(a.action_basis(i), b.action_basis(i)));
    return make_module(a.algebra(), a.dim() + b.dim(), std::move(acts), a.name() + "+" + b.name());
}

template <Field F>
ModulePtr<F> power_module(const ModulePtr<F>& m, std::size_t n) {
    if (n == 0) fail(ErrorKind::DimensionMismatch, "power must be positive");
    ModulePtr<F> out = m;
    for (std::size_t k = 1; k < n; ++k) out = direct_sum(*out, *m);
    auto named = std::make_shared<RightModule<F>>(*out);
    named->set_name(m->name() + "^" + std::to_string(n));
    return named;
}

/// Quotient M/U by an invariant subspace; throws NotModule if U is not a submodule.
template <Field F>
ModulePtr<F> quotient_module(const RightModule<F>& m, const std::vector<Vec<F>>& sub, std::string name = "") {
    QuotientSpace<F> q(m.field(), m.dim(), sub);
    std::vector<Mat<F>> acts;
    for (std::size_t i = 0; i < m.actions().size(); ++i) {
        auto a = q.induced(m.action_basis(i));
        if (!a) fail(ErrorKind::NotModule, "subspace is not a submodule", {i});
        acts.push_back(*a);
    }
    return make_module(m.algebra(), q.dim(), std::move(acts), name.empty() ? m.name() + "/U" : name);
}

/// Submodule generated by the given vectors (column span closed under the action).
template <Field F>
std::vector<Vec<F>> generated_submodule(const RightModule<F>& m, const std::vector<Vec<F>>& gens) {
    std::vector<Vec<F>> cand;
    for (const auto& g : gens)
        for (const auto& a : m.actions()) cand.push_back(a * g);
    return span_basis(m.field(), m.dim(), cand);
}

/// Basis of Hom_R(M, N) as n x m matrices H with B_i H = H A_i.
template <Field F>
std::vector<Mat<F>> hom_space(const RightModule<F>& m, const RightModule<F>& n) {
    if (!m.algebra()->same_as(*n.algebra())) fail(ErrorKind::AlgebraMismatch, "Hom between modules over different algebras");
    const F& f = m.field();
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return {};
    // vec(H) row-major; vec(B H) = (B kron I) vec H, vec(H A) = (I kron A^T) vec H
    std::vector<Mat<F>> blocks;
    auto im = Mat<F>::identity(f, dm), in = Mat<F>::identity(f, dn);
    for (std::size_t i = 0; i < m.actions().size(); ++i)
        blocks.push_back(kron(n.action_basis(i), im) - kron(in, m.action_basis(i).transpose()));
    std::vector<Mat<F>> out;
    for (const auto& v : kernel_basis(vstack(f, blocks, dn * dm))) out.push_back(unflatten(f, v, dn, dm));
    return out;
}

template <Field F>
bool is_module_hom(const RightModule<F>& m, const RightModule<F>& n, const Mat<F>& h) {
    if (h.rows() != n.dim() || h.cols() != m.dim()) return false;
    for (std::size_t i = 0; i < m.actions().size(); ++i)
        if (n.action_basis(i) * h != h * m.action_basis(i)) return false;
    return true;
}

template <Field F>
struct ModuleHom {
    ModulePtr<F> source, target;
    Mat<F> matrix;
};

template <Field F>
ModuleHom<F> make_module_hom(ModulePtr<F> s, ModulePtr<F> t, Mat<F> h) {
    if (!is_module_hom(*s, *t, h)) fail(ErrorKind::NotHomomorphism, "matrix does not intertwine the actions");
    return {std::move(s), std::move(t), std::move(h)};
}

/// W = End_R(M) realized on M: rep[k] is the matrix of the k-th basis element of W.
template <Field F>
struct EndoAlgebra {
    ModulePtr<F> module;
    AlgebraPtr<F> algebra;
    std::vector<Mat<F>> rep;
    std::shared_ptr<const CoordinateSolver<F>> solver;  // coordinates of flattened endomorphisms

    EndoAlgebra() = default;
    EndoAlgebra(ModulePtr<F> m, AlgebraPtr<F> w, std::vector<Mat<F>> r) : module(std::move(m)), algebra(std::move(w)), rep(std::move(r)) {
        std::vector<Vec<F>> flat;
        for (const auto& x : rep) flat.push_back(flatten(x));
        solver = std::make_shared<CoordinateSolver<F>>(module->field(), module->dim() * module->dim(), flat);
    }

    Mat<F> represent(const Vec<F>& w) const { return combine(module->field(), rep, w, module->dim(), module->dim()); }

    /// Coordinates in W of an endomorphism matrix (which must commute with the action).
    Vec<F> coords(const Mat<F>& h) const {
        auto c = solver->try_coords(flatten(h));
        if (!c) fail(ErrorKind::NotHomomorphism, "matrix is not an endomorphism of the module");
        return *c;
    }
};

template <Field F>
typename Algebra<F>::Products products_from_rep(const std::vector<Mat<F>>& rep, const CoordinateSolver<F>& coords) {
    const std::size_t d = rep.size();
    typename Algebra<F>::Products products(d, std::vector<Vec<F>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto c = coords.try_coords(flatten(Mat<F>(rep[i] * rep[j])));
            if (!c) fail(ErrorKind::NotHomomorphism, "endomorphisms are not closed under composition", {i, j});
            products[i][j] = *c;
        }
    return products;
}

/// End_R(M) computed from the Hom-space, with the composition product w1 w2 = w1 o w2.
template <Field F>
EndoAlgebra<F> endo_algebra(const ModulePtr<F>& m, std::string name = "") {
    const F& f = m->field();
    auto basis = hom_space(*m, *m);
    if (basis.empty()) fail(ErrorKind::DimensionMismatch, "endomorphism algebra of the zero module is not unital");
    std::vector<Vec<F>> flat;
    for (const auto& b : basis) flat.push_back(flatten(b));
    CoordinateSolver<F> coords(f, m->dim() * m->dim(), flat);
    auto products = products_from_rep(basis, coords);
    Vec<F> unity = coords.coords(flatten(Mat<F>::identity(f, m->dim())));
    auto w = make_algebra(f, basis.size(), std::move(products), std::move(unity), name.empty() ? "End(" + m->name() + ")" : name);
    return EndoAlgebra<F>{m, w, basis};
}

/// End_R(M) identified with a given algebra acting through rep; checks that rep is an
/// injective unital algebra map into the commutant that exhausts End_R(M).
template <Field F>
EndoAlgebra<F> endo_algebra_from_action(const ModulePtr<F>& m, const AlgebraPtr<F>& w, std::vector<Mat<F>> rep) {
    const F& f = m->field();
    if (rep.size() != w->dim()) fail(ErrorKind::DimensionMismatch, "need one endomorphism per algebra basis element");
    for (std::size_t k = 0; k < rep.size(); ++k)
        if (!is_module_hom(*m, *m, rep[k])) fail(ErrorKind::NotHomomorphism, "basis element " + std::to_string(k) + " does not commute with the action", {k});
    std::vector<Vec<F>> flat;
    for (const auto& r : rep) flat.push_back(flatten(r));
    if (rank(Mat<F>::from_columns(f, m->dim() * m->dim(), flat)) != rep.size()) fail(ErrorKind::NotHomomorphism, "representation is not injective");
    EndoAlgebra<F> e{m, w, std::move(rep)};
    if (!e.represent(w->unity()).is_identity()) fail(ErrorKind::NotHomomorphism, "unity does not act as the identity");
    for (std::size_t i = 0; i < w->dim(); ++i)
        for (std::size_t j = 0; j < w->dim(); ++j)
            if (e.represent(w->product(i, j)) != e.rep[i] * e.rep[j]) fail(ErrorKind::NotHomomorphism, "representation is not multiplicative", {i, j});
    if (hom_space(*m, *m).size() != w->dim()) fail(ErrorKind::DimensionMismatch, "algebra does not exhaust the endomorphisms of the module");
    return e;
}

/// End(R_R) = R acting by left multiplication.
template <Field F>
EndoAlgebra<F> left_regular_endo(const AlgebraPtr<F>& r) {
    std::vector<Mat<F>> rep;
    for (std::size_t i = 0; i < r->dim(); ++i) rep.push_back(r->left_basis(i));
    return endo_algebra_from_action(regular_module(r), r, std::move(rep));
}

/// F^n as a module over the field, with End = M_n(F) acting on columns.
template <Field F>
EndoAlgebra<F> vector_space_endo(const F& f, std::size_t n) {
    auto base = field_algebra(f);
    auto m = make_module(base, n, {Mat<F>::identity(f, n)}, f.name() + "^" + std::to_string(n));
    auto w = matrix_algebra(f, n);
    return endo_algebra_from_action(m, w, w->realization());
}

/// M^n with End = M_n(End M) acting blockwise.
template <Field F>
EndoAlgebra<F> power_endo(const EndoAlgebra<F>& e, std::size_t n) {
    const F& f = e.module->field();
    auto mn = power_module(e.module, n);
    auto w = matrix_over(e.algebra, n);
    const std::size_t dm = e.module->dim(), dw = e.algebra->dim();
    std::vector<Mat<F>> rep;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < dw; ++k) {
                Mat<F> b(f, n * dm, n * dm);
                b.set_block(i * dm, j * dm, e.rep[k]);
                rep.push_back(std::move(b));
            }
    return endo_algebra_from_action(mn, w, std::move(rep));
}

/// R^n with End = M_n(R).
template <Field F>
EndoAlgebra<F> free_module_endo(const AlgebraPtr<F>& r, std::size_t n) {
    return power_endo(left_regular_endo(r), n);
}

/// M viewed as a right W-module via x o w = alpha(w) x.
template <Field F>
ModulePtr<F> twist(const EndoAlgebra<F>& e, const AntiEndo<F>& alpha) {
    if (!e.algebra->same_as(*alpha.algebra)) fail(ErrorKind::AlgebraMismatch, "anti-endomorphism is not defined on the endomorphism algebra");
    std::vector<Mat<F>> acts;
    for (std::size_t i = 0; i < e.algebra->dim(); ++i) acts.push_back(e.represent(alpha.matrix.col(i)));
    return make_module(e.algebra, e.module->dim(), std::move(acts), e.module->name() + "^alpha");
}

/// Trace ideal test: the images of all homs M -> R_R span R.
template <Field F>
bool is_generator(const ModulePtr<F>& m) {
    auto r = regular_module(m->algebra());
    std::vector<Vec<F>> cols;
    for (const auto& h : hom_space(*m, *r))
        for (std::size_t j = 0; j < h.cols(); ++j) cols.push_back(h.col(j));
    if (cols.empty()) return r->dim() == 0;
    return rank(Mat<F>::from_columns(m->field(), r->dim(), cols)) == r->dim();
}

/// A minimal-by-greedy generating set of M as a right module.
template <Field F>
std::vector<Vec<F>> module_generators(const RightModule<F>& m) {
    const F& f = m.field();
    std::vector<Vec<F>> gens, span;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        Vec<F> x = unit_vec(f, m.dim(), j);
        std::vector<Vec<F>> test = span;
        test.push_back(x);
        if (span_basis(f, m.dim(), test).size() == span.size()) continue;
        gens.push_back(x);
        span = generated_submodule(m, gens);
        if (span.size() == m.dim()) break;
    }
    return gens;
}

/// Presentation-splitting test: the surjection R^g -> M onto a generating set splits.
template <Field F>
bool is_fg_projective(const ModulePtr<F>& m) {
    const F& f = m->field();
    if (m->dim() == 0) return true;
    auto gens = module_generators(*m);
    auto r = m->algebra();
    auto free = power_module(regular_module(r), gens.size());
    Mat<F> pi(f, m->dim(), free->dim());
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < r->dim(); ++i) pi.set_col(k * r->dim() + i, m->action_basis(i) * gens[k]);
    ensure(is_module_hom(*free, *m, pi), "presentation map is not R-linear");
    // find s in Hom(M, R^g) with pi s = id
    auto homs = hom_space(*m, *free);
    if (homs.empty()) return false;
    std::vector<Vec<F>> cols;
    for (const auto& h : homs) cols.push_back(flatten(Mat<F>(pi * h)));
    Mat<F> a = Mat<F>::from_columns(f, m->dim() * m->dim(), cols);
    return solve_vec(a, flatten(Mat<F>::identity(f, m->dim()))).has_value();
}

template <Field F>
struct IsoResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<Mat<F>> iso;
};

template <Field F>
IsoResult<F> is_module_isomorphic(const RightModule<F>& m, const RightModule<F>& n, const SearchOptions& opts = {}) {
    if (m.dim() != n.dim()) return {SearchStatus::ProvablyNone, std::nullopt};
    auto res = find_invertible_in_span(m.field(), m.dim(), hom_space(m, n), opts);
    return {res.status, res.element};
}

}  // namespace genform
