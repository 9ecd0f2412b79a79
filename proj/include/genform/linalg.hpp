#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "genform/matrix.hpp"

namespace genform {

template <Field F>
struct Echelon {
    Mat<F> reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with first-nonzero pivoting.
template <Field F>
Echelon<F> rref(const Mat<F>& m) {
    const F& f = m.field();
    Mat<F> a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && f.is_zero(a(p, c))) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        auto inv = f.inv(a(r, c));
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(inv, a(r, j));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || f.is_zero(a(i, c))) continue;
            auto factor = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Mat<F>& m) {
    return rref(m).pivots.size();
}

/// Basis of the right null space, one vector per free column (free variable set to 1).
template <Field F>
std::vector<Vec<F>> kernel_basis(const Mat<F>& m) {
    const F& f = m.field();
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(red(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with a*x = b, or nothing when the system is inconsistent.
template <Field F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
    if (a.rows() != b.rows()) fail(ErrorKind::DimensionMismatch, "solve: a has " + std::to_string(a.rows()) + " rows, b has " + std::to_string(b.rows()));
    const F& f = a.field();
    Mat<F> aug(f, a.rows(), a.cols() + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), b);
    auto [red, pivots] = rref(aug);
    Mat<F> x(f, a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = red(r, a.cols() + j);
    }
    return x;
}

template <Field F>
std::optional<Vec<F>> solve_vec(const Mat<F>& a, const Vec<F>& b) {
    auto x = solve(a, Mat<F>::column(a.field(), b));
    if (!x) return std::nullopt;
    return x->col(0);
}

template <Field F>
std::optional<Mat<F>> invert(const Mat<F>& m) {
    if (!m.square()) fail(ErrorKind::DimensionMismatch, "invert: non-square " + m.shape());
    const F& f = m.field();
    std::size_t n = m.rows();
    Mat<F> aug(f, n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Mat<F>::identity(f, n));
    auto [red, pivots] = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    return red.block(0, n, n, n);
}

template <Field F>
bool is_invertible(const Mat<F>& m) {
    return m.square() && rank(m) == m.rows();
}

template <Field F>
typename F::value_type det(const Mat<F>& m) {
    if (!m.square()) fail(ErrorKind::DimensionMismatch, "det: non-square " + m.shape());
    const F& f = m.field();
    Mat<F> a = m;
    auto d = f.one();
    std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(a(p, c))) ++p;
        if (p == n) return f.zero();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            d = f.neg(d);
        }
        d = f.mul(d, a(c, c));
        auto inv = f.inv(a(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(a(i, c))) continue;
            auto factor = f.mul(a(i, c), inv);
            for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
        }
    }
    return d;
}

/// Indices of a maximal linearly independent subfamily (first-come order).
template <Field F>
std::vector<std::size_t> independent_subset(const F& f, std::size_t dim, const std::vector<Vec<F>>& vectors) {
    if (vectors.empty()) return {};
    auto [red, pivots] = rref(Mat<F>::from_columns(f, dim, vectors));
    return pivots;
}

/// Basis of the span of the given vectors (pivot rows of the row-reduced stack).
template <Field F>
std::vector<Vec<F>> span_basis(const F& f, std::size_t dim, const std::vector<Vec<F>>& vectors) {
    std::vector<Vec<F>> out;
    for (auto i : independent_subset(f, dim, vectors)) out.push_back(vectors[i]);
    return out;
}

/// Expresses vectors in a fixed basis of a subspace (basis vectors must be independent).
template <Field F>
class CoordinateSolver {
public:
    CoordinateSolver() = default;
    CoordinateSolver(const F& field, std::size_t ambient, std::vector<Vec<F>> basis)
        : field_(field), ambient_(ambient), basis_(std::move(basis)) {
        std::size_t t = basis_.size();
        if (t == 0) return;
        Mat<F> b = Mat<F>::from_columns(field_, ambient_, basis_);
        auto [red, rows] = rref(b.transpose());
        if (rows.size() != t) fail(ErrorKind::InternalAssertion, "coordinate basis is not independent");
        rows_ = rows;
        Mat<F> sub(field_, t, t);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) sub(i, j) = b(rows_[i], j);
        inverse_ = *invert(sub);
    }

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<Vec<F>>& basis() const { return basis_; }

    /// Coordinates of v, or nothing when v is outside the span.
    std::optional<Vec<F>> try_coords(const Vec<F>& v) const {
        std::size_t t = basis_.size();
        Vec<F> picked(t);
        for (std::size_t i = 0; i < t; ++i) picked[i] = v[rows_[i]];
        Vec<F> c = t ? inverse_ * picked : Vec<F>{};
        if (!vec_equal(field_, combination(c), v)) return std::nullopt;
        return c;
    }
    Vec<F> coords(const Vec<F>& v) const {
        auto c = try_coords(v);
        if (!c) fail(ErrorKind::InternalAssertion, "vector outside the expected subspace");
        return *c;
    }
    Vec<F> combination(const Vec<F>& c) const {
        Vec<F> r(ambient_, field_.zero());
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (field_.is_zero(c[k])) continue;
            for (std::size_t i = 0; i < ambient_; ++i) r[i] = field_.add(r[i], field_.mul(c[k], basis_[k][i]));
        }
        return r;
    }

private:
    F field_{};
    std::size_t ambient_ = 0;
    std::vector<Vec<F>> basis_;
    std::vector<std::size_t> rows_;
    Mat<F> inverse_;
};

/// Solution set {x : a x = b} as particular solution plus kernel basis.
template <Field F>
struct AffineSolution {
    Vec<F> particular;
    std::vector<Vec<F>> directions;
};

template <Field F>
std::optional<AffineSolution<F>> solve_affine(const Mat<F>& a, const Vec<F>& b) {
    auto x = solve_vec(a, b);
    if (!x) return std::nullopt;
    return AffineSolution<F>{*x, kernel_basis(a)};
}

/// Quotient of F^n by a subspace U, using the pivot-complement basis of U's row echelon form.
/// project(v) reads the non-pivot coordinates of v reduced modulo U; lift picks those coordinates.
template <Field F>
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(const F& f, std::size_t ambient, const std::vector<Vec<F>>& spanning) : field_(f), ambient_(ambient) {
        std::vector<bool> is_pivot(ambient, false);
        if (!spanning.empty()) {
            auto [red, pivots] = rref(Mat<F>::from_rows(f, spanning));
            for (std::size_t k = 0; k < pivots.size(); ++k) {
                relations_.push_back(red.row(k));
                is_pivot[pivots[k]] = true;
            }
            pivots_ = pivots;
        }
        for (std::size_t c = 0; c < ambient; ++c)
            if (!is_pivot[c]) complement_.push_back(c);
        const std::size_t q = complement_.size();
        pi_ = Mat<F>(f, q, ambient);
        sigma_ = Mat<F>(f, ambient, q);
        for (std::size_t a = 0; a < q; ++a) {
            std::size_t c = complement_[a];
            pi_(a, c) = f.one();
            sigma_(c, a) = f.one();
            for (std::size_t k = 0; k < pivots_.size(); ++k) pi_(a, pivots_[k]) = f.neg(relations_[k][c]);
        }
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return complement_.size(); }
    const Mat<F>& projection() const { return pi_; }
    const Mat<F>& section() const { return sigma_; }
    /// Row-reduced basis of the subspace being factored out.
    const std::vector<Vec<F>>& relations() const { return relations_; }
    const std::vector<std::size_t>& complement() const { return complement_; }

    Vec<F> project(const Vec<F>& v) const { return pi_ * v; }
    bool in_subspace(const Vec<F>& v) const { return vec_is_zero(field_, project(v)); }

    /// The map induced by t on the quotient, or nothing if t does not preserve the subspace.
    std::optional<Mat<F>> induced(const Mat<F>& t) const {
        for (const auto& r : relations_)
            if (!in_subspace(t * r)) return std::nullopt;
        return pi_ * t * sigma_;
    }

private:
    F field_{};
    std::size_t ambient_ = 0;
    std::vector<Vec<F>> relations_;
    std::vector<std::size_t> pivots_, complement_;
    Mat<F> pi_, sigma_;
};

}  // namespace genform
