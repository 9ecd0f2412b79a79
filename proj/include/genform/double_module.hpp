#pragma once

#include "genform/module.hpp"

namespace genform {

/// One space with two commuting right actions: P (side 0) and Q (side 1).
template <Field F>
class DoubleModule {
public:
    DoubleModule(AlgebraPtr<F> algebra, std::size_t dim, std::vector<Mat<F>> p, std::vector<Mat<F>> q, std::string name = "")
        : algebra_(std::move(algebra)), dim_(dim), p_(std::move(p)), q_(std::move(q)), name_(std::move(name)) {
        if (p_.size() != algebra_->dim() || q_.size() != algebra_->dim()) fail(ErrorKind::DimensionMismatch, "double module needs one action matrix per basis element on each side");
    }

    const AlgebraPtr<F>& algebra() const { return algebra_; }
    const F& field() const { return algebra_->field(); }
    std::size_t dim() const { return dim_; }
    /// Action matrices of side 0 (i = 0) or side 1 (i = 1).
    const std::vector<Mat<F>>& actions(int side) const { return side == 0 ? p_ : q_; }
    Mat<F> action(int side, const Vec<F>& r) const { return combine(field(), actions(side), r, dim_, dim_); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

private:
    AlgebraPtr<F> algebra_;
    std::size_t dim_;
    std::vector<Mat<F>> p_, q_;
    std::string name_;
};

template <Field F>
using DoublePtr = std::shared_ptr<const DoubleModule<F>>;

template <Field F>
ModulePtr<F> side_module(const DoubleModule<F>& k, int side) {
    return make_module(k.algebra(), k.dim(), k.actions(side), k.name() + "_" + std::to_string(side));
}

template <Field F>
void validate_double(const DoubleModule<F>& k) {
    side_module(k, 0);
    side_module(k, 1);
    const auto& p = k.actions(0);
    const auto& q = k.actions(1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            if (p[i] * q[j] != q[j] * p[i]) fail(ErrorKind::NotDoubleModule, "side-0 action of e" + std::to_string(i) + " does not commute with side-1 action of e" + std::to_string(j), {i, j});
}

template <Field F>
DoublePtr<F> make_double(AlgebraPtr<F> r, std::size_t dim, std::vector<Mat<F>> p, std::vector<Mat<F>> q, std::string name = "") {
    auto k = std::make_shared<DoubleModule<F>>(std::move(r), dim, std::move(p), std::move(q), std::move(name));
    validate_double(*k);
    return k;
}

/// R with k o0 r = alpha(r) k and k o1 r = k r.
template <Field F>
DoublePtr<F> standard_double(const AntiEndo<F>& alpha) {
    const auto& r = alpha.algebra;
    std::vector<Mat<F>> p, q;
    for (std::size_t i = 0; i < r->dim(); ++i) {
        p.push_back(r->left_mult(alpha.matrix.col(i)));
        q.push_back(r->right_basis(i));
    }
    return make_double(r, r->dim(), std::move(p), std::move(q), "S(" + r->name() + "," + alpha.name + ")");
}

/// Quotient of a double module by a subspace invariant under both actions.
template <Field F>
DoublePtr<F> quotient_double(const DoubleModule<F>& k, const std::vector<Vec<F>>& sub, std::string name = "") {
    QuotientSpace<F> qs(k.field(), k.dim(), sub);
    std::vector<Mat<F>> p, q;
    for (int side = 0; side < 2; ++side)
        for (std::size_t i = 0; i < k.algebra()->dim(); ++i) {
            auto a = qs.induced(k.actions(side)[i]);
            if (!a) fail(ErrorKind::NotDoubleModule, "subspace is not invariant under side " + std::to_string(side), {i});
            (side == 0 ? p : q).push_back(*a);
        }
    return make_double(k.algebra(), qs.dim(), std::move(p), std::move(q), name.empty() ? k.name() + "/U" : name);
}

/// Structural equality: same algebra, dimension and action matrices.
template <Field F>
bool same_double(const DoubleModule<F>& k, const DoubleModule<F>& l) {
    if (&k == &l) return true;
    if (k.dim() != l.dim() || !k.algebra()->same_as(*l.algebra())) return false;
    return k.actions(0) == l.actions(0) && k.actions(1) == l.actions(1);
}

template <Field F>
bool is_dbl_hom(const DoubleModule<F>& k, const DoubleModule<F>& l, const Mat<F>& h) {
    if (h.rows() != l.dim() || h.cols() != k.dim()) return false;
    for (int side = 0; side < 2; ++side)
        for (std::size_t i = 0; i < k.algebra()->dim(); ++i)
            if (l.actions(side)[i] * h != h * k.actions(side)[i]) return false;
    return true;
}

template <Field F>
std::vector<Mat<F>> dbl_hom_space(const DoubleModule<F>& k, const DoubleModule<F>& l) {
    if (!k.algebra()->same_as(*l.algebra())) fail(ErrorKind::AlgebraMismatch, "double modules over different algebras");
    const F& f = k.field();
    const std::size_t dk = k.dim(), dl = l.dim();
    if (dk == 0 || dl == 0) return {};
    std::vector<Mat<F>> blocks;
    auto ik = Mat<F>::identity(f, dk), il = Mat<F>::identity(f, dl);
    for (int side = 0; side < 2; ++side)
        for (std::size_t i = 0; i < k.algebra()->dim(); ++i)
            blocks.push_back(kron(l.actions(side)[i], ik) - kron(il, k.actions(side)[i].transpose()));
    std::vector<Mat<F>> out;
    for (const auto& v : kernel_basis(vstack(f, blocks, dl * dk))) out.push_back(unflatten(f, v, dl, dk));
    return out;
}

template <Field F>
IsoResult<F> is_dbl_isomorphic(const DoubleModule<F>& k, const DoubleModule<F>& l, const SearchOptions& opts = {}) {
    if (k.dim() != l.dim()) return {SearchStatus::ProvablyNone, std::nullopt};
    auto res = find_invertible_in_span(k.field(), k.dim(), dbl_hom_space(k, l), opts);
    return {res.status, res.element};
}

/// Bijective theta with theta(k o_i a) = theta(k) o_{1-i} a.
template <Field F>
struct DblAntiAuto {
    DoublePtr<F> module;
    Mat<F> matrix;
    bool involution = false;
};

template <Field F>
bool intertwines_sides(const DoubleModule<F>& k, const Mat<F>& t) {
    for (std::size_t i = 0; i < k.algebra()->dim(); ++i)
        if (t * k.actions(0)[i] != k.actions(1)[i] * t || t * k.actions(1)[i] != k.actions(0)[i] * t) return false;
    return true;
}

template <Field F>
DblAntiAuto<F> make_dbl_anti_auto(const DoublePtr<F>& k, const Mat<F>& t) {
    if (t.rows() != k->dim() || t.cols() != k->dim()) fail(ErrorKind::DimensionMismatch, "anti-automorphism matrix has wrong shape");
    if (!is_invertible(t)) fail(ErrorKind::NotInvertible, "anti-automorphism must be bijective");
    if (!intertwines_sides(*k, t)) fail(ErrorKind::NotHomomorphism, "map does not exchange the two actions");
    return {k, t, (t * t).is_identity()};
}

template <Field F>
struct AntiAutoSearch {
    SearchStatus status = SearchStatus::Inconclusive;  // existence of any anti-automorphism
    std::optional<DblAntiAuto<F>> theta;
    SearchStatus involution_status = SearchStatus::Inconclusive;  // existence of an involution
    std::optional<DblAntiAuto<F>> involution;
};

/// Solves the exchange system for theta, then searches the solution space for an
/// invertible element and for an involutive one.
template <Field F>
AntiAutoSearch<F> find_anti_auto(const DoublePtr<F>& k, const SearchOptions& opts = {}) {
    const F& f = k->field();
    const std::size_t d = k->dim();
    AntiAutoSearch<F> out;
    std::vector<Mat<F>> sols;
    if (d > 0) {
        std::vector<Mat<F>> blocks;
        auto id = Mat<F>::identity(f, d);
        for (std::size_t i = 0; i < k->algebra()->dim(); ++i) {
            // theta P_i = Q_i theta and theta Q_i = P_i theta
            blocks.push_back(kron(k->actions(1)[i], id) - kron(id, k->actions(0)[i].transpose()));
            blocks.push_back(kron(k->actions(0)[i], id) - kron(id, k->actions(1)[i].transpose()));
        }
        for (const auto& v : kernel_basis(vstack(f, blocks, d * d))) sols.push_back(unflatten(f, v, d, d));
    }
    auto any = find_invertible_in_span(f, d, sols, opts);
    out.status = any.status;
    if (any.found()) out.theta = make_dbl_anti_auto(k, *any.element);
    if (any.status == SearchStatus::ProvablyNone) {
        out.involution_status = SearchStatus::ProvablyNone;
        return out;
    }
    if (out.theta && out.theta->involution) {
        out.involution_status = SearchStatus::Found;
        out.involution = out.theta;
        return out;
    }
    auto inv = search_affine<F>(
        f, d, d, sols, std::nullopt, [](const Mat<F>& t) { return (t * t).is_identity(); }, std::nullopt, opts);
    out.involution_status = inv.status;
    if (inv.found()) out.involution = make_dbl_anti_auto(k, *inv.element);
    return out;
}

/// M^[i] = Hom_R(M, K_{1-i}) with (f r)(m) = f(m) o_i r, together with its concrete hom basis.
template <Field F>
struct Dual {
    ModulePtr<F> source;
    DoublePtr<F> codomain;
    int side = 0;
    ModulePtr<F> module;
    std::vector<Mat<F>> basis;  // each k x m
    std::shared_ptr<CoordinateSolver<F>> solver;

    Vec<F> coords(const Mat<F>& h) const {
        auto c = solver->try_coords(flatten(h));
        if (!c) fail(ErrorKind::NotHomomorphism, "map is not in the dual hom space");
        return *c;
    }
    Mat<F> element(const Vec<F>& c) const {
        return unflatten(source->field(), solver->combination(c), codomain->dim(), source->dim());
    }
};

template <Field F>
Dual<F> dual(const ModulePtr<F>& m, const DoublePtr<F>& k, int side) {
    const F& f = m->field();
    auto target = side_module(*k, 1 - side);
    auto basis = hom_space(*m, *target);
    std::vector<Vec<F>> flat;
    for (const auto& b : basis) flat.push_back(flatten(b));
    auto solver = std::make_shared<CoordinateSolver<F>>(f, k->dim() * m->dim(), flat);
    const std::size_t n = basis.size();
    std::vector<Mat<F>> acts;
    for (std::size_t s = 0; s < m->algebra()->dim(); ++s) {
        Mat<F> a(f, n, n);
        for (std::size_t c = 0; c < n; ++c) {
            auto col = solver->try_coords(flatten(Mat<F>(k->actions(side)[s] * basis[c])));
            ensure(col.has_value(), "dual action leaves the hom space");
            a.set_col(c, *col);
        }
        acts.push_back(std::move(a));
    }
    auto mod = make_module(m->algebra(), n, std::move(acts), m->name() + "^[" + std::to_string(side) + "]");
    return Dual<F>{m, k, side, mod, std::move(basis), solver};
}

/// Precomposition g -> g o h from dual(target) to dual(source).
template <Field F>
Mat<F> dual_map(const Mat<F>& h, const Dual<F>& source_dual, const Dual<F>& target_dual) {
    if (source_dual.side != target_dual.side) fail(ErrorKind::DimensionMismatch, "duals taken on different sides");
    const F& f = h.field();
    if (h.cols() != source_dual.source->dim() || h.rows() != target_dual.source->dim()) fail(ErrorKind::DimensionMismatch, "map does not match the dual sources");
    Mat<F> out(f, source_dual.basis.size(), target_dual.basis.size());
    for (std::size_t c = 0; c < target_dual.basis.size(); ++c) out.set_col(c, source_dual.coords(target_dual.basis[c] * h));
    return out;
}

/// u_theta: M^[i] -> M^[1-i], f -> theta o f (the usual u_theta is from side 0 to side 1).
template <Field F>
Mat<F> u_theta(const DblAntiAuto<F>& theta, const Dual<F>& from, const Dual<F>& to) {
    if (from.side == to.side) fail(ErrorKind::DimensionMismatch, "u_theta maps between duals of opposite sides");
    if (from.source->dim() != to.source->dim()) fail(ErrorKind::DimensionMismatch, "duals of different modules");
    Mat<F> out(theta.matrix.field(), to.basis.size(), from.basis.size());
    for (std::size_t c = 0; c < from.basis.size(); ++c) out.set_col(c, to.coords(theta.matrix * from.basis[c]));
    return out;
}

/// Phi_M: M -> M^[1][0], x -> (f -> f(x)); needs dual(M,K,1) and dual(M^[1],K,0).
template <Field F>
Mat<F> phi(const Dual<F>& d1, const Dual<F>& d10) {
    const F& f = d1.source->field();
    const std::size_t m = d1.source->dim();
    Mat<F> out(f, d10.basis.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
        Mat<F> ev(f, d1.codomain->dim(), d1.basis.size());
        for (std::size_t c = 0; c < d1.basis.size(); ++c) ev.set_col(c, d1.basis[c].col(j));
        out.set_col(j, d10.coords(ev));
    }
    return out;
}

}  // namespace genform
