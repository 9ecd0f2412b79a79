#pragma once

#include <algorithm>
#include <functional>

#include "genform/algebra.hpp"
#include "genform/span_search.hpp"

namespace genform {

/// Unity-preserving additive map reversing multiplication; column j of the matrix is the image of e_j.
template <Field F>
struct AntiEndo {
    AlgebraPtr<F> algebra;
    Mat<F> matrix;
    bool bijective = false;
    std::string name;

    Vec<F> apply(const Vec<F>& a) const {
        algebra->check(a);
        return matrix * a;
    }
    bool is_involution() const { return (matrix * matrix).is_identity(); }
    bool is_identity() const { return matrix.is_identity(); }
};

template <Field F>
AntiEndo<F> make_anti_endo(const AlgebraPtr<F>& r, const Mat<F>& m, std::string name = "") {
    const F& f = r->field();
    const std::size_t d = r->dim();
    if (m.rows() != d || m.cols() != d) fail(ErrorKind::DimensionMismatch, "anti-endomorphism matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    if (!vec_equal(f, m * r->unity(), r->unity())) fail(ErrorKind::NotUnital, "map does not fix the unity");
    std::vector<Vec<F>> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(m.col(i));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!vec_equal(f, m * r->product(i, j), r->mul(images[j], images[i])))
                fail(ErrorKind::NotAntiMultiplicative, "image of e" + std::to_string(i) + " e" + std::to_string(j) + " is not the reversed product of images", {i, j});
    return AntiEndo<F>{r, m, is_invertible(m), std::move(name)};
}

template <Field F>
AntiEndo<F> identity_anti(const AlgebraPtr<F>& r) {
    return make_anti_endo(r, Mat<F>::identity(r->field(), r->dim()), "identity");
}

/// Anti-endomorphism induced by a map on the matrix realization.
template <Field F>
AntiEndo<F> anti_from_matrix_map(const AlgebraPtr<F>& r, const std::function<Mat<F>(const Mat<F>&)>& g, std::string name) {
    const F& f = r->field();
    Mat<F> m(f, r->dim(), r->dim());
    for (std::size_t i = 0; i < r->dim(); ++i) {
        auto c = r->unrealize(g(r->realization()[i]));
        if (!c) fail(ErrorKind::Unsupported, name + " does not preserve algebra '" + r->name() + "' (basis element " + std::to_string(i) + ")", {i});
        m.set_col(i, *c);
    }
    return make_anti_endo(r, m, std::move(name));
}

template <Field F>
AntiEndo<F> transpose_anti(const AlgebraPtr<F>& r) {
    return anti_from_matrix_map<F>(r, [](const Mat<F>& x) { return x.transpose(); }, "transpose");
}

/// X -> J X^T J with J the antidiagonal permutation (transpose about the antidiagonal).
template <Field F>
AntiEndo<F> flip_anti(const AlgebraPtr<F>& r) {
    const F& f = r->field();
    std::size_t n = r->realization_size();
    Mat<F> j(f, n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = f.one();
    return anti_from_matrix_map<F>(r, [j](const Mat<F>& x) { return j * x.transpose() * j; }, "flip");
}

/// X -> J X^T J^{-1} with J block-diagonal in [[0,1],[-1,0]].
template <Field F>
AntiEndo<F> symplectic_anti(const AlgebraPtr<F>& r) {
    const F& f = r->field();
    std::size_t n = r->realization_size();
    if (n % 2 != 0) fail(ErrorKind::Unsupported, "symplectic adjoint needs an even matrix size");
    Mat<F> j(f, n, n);
    for (std::size_t i = 0; i < n; i += 2) {
        j(i, i + 1) = f.one();
        j(i + 1, i) = f.neg(f.one());
    }
    Mat<F> jinv = *invert(j);
    return anti_from_matrix_map<F>(r, [j, jinv](const Mat<F>& x) { return j * x.transpose() * jinv; }, "symplectic");
}

/// (a, b) -> (b, a) on a product of two equal-dimensional factors.
template <Field F>
AntiEndo<F> swap_anti(const AlgebraPtr<F>& r) {
    auto split = r->product_split();
    if (!split || split->first != split->second) fail(ErrorKind::Unsupported, "swap needs a product of two factors of equal dimension");
    std::size_t h = split->first;
    Mat<F> m(r->field(), r->dim(), r->dim());
    for (std::size_t i = 0; i < h; ++i) {
        m(h + i, i) = r->field().one();
        m(i, h + i) = r->field().one();
    }
    return make_anti_endo(r, m, "swap");
}

/// x -> x^p on a prime-field extension.
template <Field F>
AntiEndo<F> frobenius_anti(const AlgebraPtr<F>& r) {
    const F& f = r->field();
    if (!f.is_finite()) fail(ErrorKind::Unsupported, "Frobenius needs a prime field");
    if (r->extension_modulus().empty() || !r->is_commutative()) fail(ErrorKind::Unsupported, "Frobenius needs a field extension algebra");
    const std::size_t d = r->dim();
    Mat<F> m(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec<F> e = r->basis(i), pw = r->unity();
        for (std::uint64_t k = 0; k < f.size(); ++k) pw = r->mul(pw, e);
        m.set_col(i, pw);
    }
    return make_anti_endo(r, m, "frobenius");
}

/// Matrix of w -> u w u^{-1}.
template <Field F>
Mat<F> inner_automorphism(const Algebra<F>& r, const Vec<F>& u) {
    auto inv = r.inverse(u);
    if (!inv) fail(ErrorKind::NotInvertible, "element is not a unit");
    return r.left_mult(u) * r.right_mult(*inv);
}

/// The anti-endomorphism phi o alpha for an automorphism matrix phi.
template <Field F>
AntiEndo<F> compose(const AntiEndo<F>& alpha, const Mat<F>& phi, std::string name = "") {
    return make_anti_endo(alpha.algebra, phi * alpha.matrix, name.empty() ? "inner o " + alpha.name : name);
}

template <Field F>
AntiEndo<F> inner_twist(const AntiEndo<F>& alpha, const Vec<F>& u) {
    return compose(alpha, inner_automorphism(*alpha.algebra, u));
}

template <Field F>
struct InnerEquivalence {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<Vec<F>> unit;  // u with beta(w) = u alpha(w) u^{-1}
};

/// Existence of a unit u with b(w) u = u a(w) for all w, for linear maps a, b on r.
template <Field F>
InnerEquivalence<F> unit_relating(const Algebra<F>& r, const Mat<F>& a, const Mat<F>& b, const SearchOptions& opts = {}) {
    const std::size_t d = r.dim();
    std::vector<Mat<F>> blocks;
    for (std::size_t i = 0; i < d; ++i) blocks.push_back(r.right_mult(a.col(i)) - r.left_mult(b.col(i)));
    auto sols = kernel_basis(vstack(r.field(), blocks, d));
    std::vector<Mat<F>> lefts;
    for (const auto& s : sols) lefts.push_back(r.left_mult(s));
    auto res = find_invertible_in_span(r.field(), d, lefts, opts);
    InnerEquivalence<F> out{res.status, std::nullopt};
    if (res.found()) {
        Vec<F> u = zero_vec(r.field(), d);
        for (std::size_t k = 0; k < sols.size(); ++k) u = vec_add(r.field(), u, vec_scale(r.field(), res.coefficients[k], sols[k]));
        out.unit = u;
    }
    return out;
}

/// Existence of a unit u with beta(w) u = u alpha(w) for all w.
template <Field F>
InnerEquivalence<F> is_inner_equivalent(const AntiEndo<F>& alpha, const AntiEndo<F>& beta, const SearchOptions& opts = {}) {
    if (!alpha.algebra->same_as(*beta.algebra)) fail(ErrorKind::AlgebraMismatch, "anti-endomorphisms live on different algebras");
    return unit_relating(*alpha.algebra, alpha.matrix, beta.matrix, opts);
}

/// Whether the linear map phi is w -> u w u^{-1} for some unit u.
template <Field F>
InnerEquivalence<F> is_inner_automorphism(const Algebra<F>& r, const Mat<F>& phi, const SearchOptions& opts = {}) {
    return unit_relating(r, Mat<F>::identity(r.field(), r.dim()), phi, opts);
}

namespace detail {

/// Partial linear map known on a subspace, kept as rows (domain, image) whose
/// domains are in echelon form relative to insertion order.
template <Field F>
class PartialLinearMap {
public:
    PartialLinearMap(const F& f, std::size_t d) : f_(f), d_(d) {}

    std::size_t known_dim() const { return rows_.size(); }

    /// Adds (x -> y). Returns false on inconsistency; `added` reports a new dimension.
    bool add(Vec<F> x, Vec<F> y, bool& added) {
        added = false;
        reduce(x, y);
        std::size_t piv = 0;
        while (piv < d_ && f_.is_zero(x[piv])) ++piv;
        if (piv == d_) return vec_is_zero(f_, y);
        auto inv = f_.inv(x[piv]);
        x = vec_scale(f_, inv, x);
        y = vec_scale(f_, inv, y);
        rows_.push_back({std::move(x), std::move(y), piv});
        added = true;
        return true;
    }

    std::optional<std::size_t> first_unknown_basis() const {
        std::vector<bool> covered(d_, false);
        for (const auto& r : rows_) covered[r.pivot] = true;
        for (std::size_t i = 0; i < d_; ++i)
            if (!covered[i]) return i;
        return std::nullopt;
    }

    /// Image of x when x lies in the known domain.
    Vec<F> image_of(Vec<F> x) const {
        Vec<F> y = zero_vec(f_, d_);
        reduce(x, y);
        ensure(vec_is_zero(f_, x), "partial map queried outside its domain");
        return vec_scale(f_, f_.neg(f_.one()), y);
    }

    const Vec<F>& domain(std::size_t k) const { return rows_[k].x; }
    const Vec<F>& image(std::size_t k) const { return rows_[k].y; }

private:
    struct Row {
        Vec<F> x, y;
        std::size_t pivot;
    };
    void reduce(Vec<F>& x, Vec<F>& y) const {
        for (const auto& r : rows_) {
            auto c = x[r.pivot];
            if (f_.is_zero(c)) continue;
            for (std::size_t i = 0; i < d_; ++i) {
                x[i] = f_.sub(x[i], f_.mul(c, r.x[i]));
                y[i] = f_.sub(y[i], f_.mul(c, r.y[i]));
            }
        }
    }

    F f_;
    std::size_t d_;
    std::vector<Row> rows_;
};

}  // namespace detail

/// All anti-endomorphisms of an algebra over a prime field, by backtracking over basis
/// images with closure under products. Sorted lexicographically by matrix entries.
template <Field F>
std::vector<AntiEndo<F>> enumerate_anti_endos(const AlgebraPtr<F>& r, std::uint64_t budget = 1u << 22) {
    const F& f = r->field();
    if (!f.is_finite()) fail(ErrorKind::Unsupported, "enumeration needs a finite prime field");
    const std::size_t d = r->dim();
    const std::uint64_t choices = detail::checked_pow(f.size(), d, ~0ull).value_or(~0ull);
    std::uint64_t nodes = 0;
    std::vector<Mat<F>> found;

    // Close the partial map under a -> alpha(b)alpha(a) for a, b in the known domain.
    auto close = [&](detail::PartialLinearMap<F>& map, std::size_t processed) -> bool {
        // pairs (i, j) with max(i, j) >= processed are new
        std::size_t n = map.known_dim();
        for (std::size_t hi = processed; hi < n; ++hi) {
            for (std::size_t lo = 0; lo <= hi; ++lo) {
                for (int orient = 0; orient < (lo == hi ? 1 : 2); ++orient) {
                    std::size_t a = orient ? lo : hi, b = orient ? hi : lo;
                    Vec<F> xy = r->mul(map.domain(a), map.domain(b));
                    Vec<F> img = r->mul(map.image(b), map.image(a));
                    bool added = false;
                    if (!map.add(std::move(xy), std::move(img), added)) return false;
                    if (added) ++n;
                }
            }
        }
        return true;
    };

    std::function<void(detail::PartialLinearMap<F>, std::size_t)> search = [&](detail::PartialLinearMap<F> map, std::size_t processed) {
        if (++nodes > budget) fail(ErrorKind::BudgetExceeded, "anti-endomorphism enumeration exceeded budget " + std::to_string(budget));
        std::size_t before = map.known_dim();
        if (!close(map, processed)) return;
        processed = map.known_dim();
        (void)before;
        auto next = map.first_unknown_basis();
        if (!next) {
            Mat<F> m(f, d, d);
            for (std::size_t i = 0; i < d; ++i) m.set_col(i, map.image_of(r->basis(i)));
            found.push_back(m);
            return;
        }
        Vec<F> e = r->basis(*next);
        Vec<F> img(d);
        for (std::uint64_t idx = 0; idx < choices; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t k = 0; k < d; ++k) {
                img[k] = f.element(rest % f.size());
                rest /= f.size();
            }
            auto child = map;
            bool added = false;
            if (!child.add(e, img, added)) continue;
            search(std::move(child), processed);
        }
    };

    detail::PartialLinearMap<F> start(f, d);
    bool added = false;
    start.add(r->unity(), r->unity(), added);
    search(std::move(start), 0);

    std::sort(found.begin(), found.end(), [](const Mat<F>& a, const Mat<F>& b) { return a.lex_less(b); });
    std::vector<AntiEndo<F>> out;
    for (const auto& m : found) out.push_back(make_anti_endo(r, m, "enumerated"));
    return out;
}

}  // namespace genform
