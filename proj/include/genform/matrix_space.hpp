#pragma once

#include "genform/form.hpp"

namespace genform {

/// Span of selected matrix units of a rows x cols matrix space, in row-major order.
template <Field F>
struct MatrixSpace {
    F field;
    std::size_t rows = 0, cols = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cells;

    static MatrixSpace from_mask(const F& f, const std::vector<std::vector<bool>>& mask) {
        MatrixSpace s{f, mask.size(), mask.empty() ? 0 : mask[0].size(), {}};
        for (std::size_t i = 0; i < s.rows; ++i) {
            if (mask[i].size() != s.cols) fail(ErrorKind::DimensionMismatch, "mask rows must have equal length");
            for (std::size_t j = 0; j < s.cols; ++j)
                if (mask[i][j]) s.cells.emplace_back(i, j);
        }
        return s;
    }
    static MatrixSpace full(const F& f, std::size_t r, std::size_t c) {
        return from_mask(f, std::vector<std::vector<bool>>(r, std::vector<bool>(c, true)));
    }

    std::size_t dim() const { return cells.size(); }

    Mat<F> to_matrix(const Vec<F>& v) const {
        if (v.size() != dim()) fail(ErrorKind::DimensionMismatch, "coordinate vector has wrong length");
        Mat<F> out(field, rows, cols);
        for (std::size_t k = 0; k < cells.size(); ++k) out(cells[k].first, cells[k].second) = v[k];
        return out;
    }

    /// Coordinates of a matrix, or nothing when it has entries outside the support.
    std::optional<Vec<F>> from_matrix(const Mat<F>& a) const {
        if (a.rows() != rows || a.cols() != cols) fail(ErrorKind::DimensionMismatch, "matrix has shape " + a.shape());
        Vec<F> out(dim(), field.zero());
        Mat<F> rest = a;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            out[k] = a(cells[k].first, cells[k].second);
            rest(cells[k].first, cells[k].second) = field.zero();
        }
        if (!rest.is_zero()) return std::nullopt;
        return out;
    }

    Vec<F> coords(const Mat<F>& a) const {
        auto c = from_matrix(a);
        if (!c) fail(ErrorKind::NotModule, "matrix leaves the masked space");
        return *c;
    }
};

/// Reflection along the anti-diagonal: J_c A^T J_r for an r x c matrix A.
template <Field F>
Mat<F> flip_matrix(const Mat<F>& a) {
    const std::size_t r = a.rows(), c = a.cols();
    Mat<F> out(a.field(), c, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out(c - 1 - j, r - 1 - i) = a(i, j);
    return out;
}

/// Double module on a matrix space with k o0 r = g(r) k and k o1 r = k r,
/// where r is taken in the realization of R.
template <Field F>
DoublePtr<F> matrix_double(const AlgebraPtr<F>& r, const MatrixSpace<F>& space, const std::function<Mat<F>(const Mat<F>&)>& g, std::string name = "") {
    if (r->realization_size() != space.cols) fail(ErrorKind::DimensionMismatch, "matrix space width must match the realization of the algebra");
    const F& f = r->field();
    std::vector<Mat<F>> p, q;
    for (std::size_t s = 0; s < r->dim(); ++s) {
        const Mat<F>& e = r->realization()[s];
        Mat<F> ge = g(e);
        Mat<F> a0(f, space.dim(), space.dim()), a1(f, space.dim(), space.dim());
        for (std::size_t k = 0; k < space.dim(); ++k) {
            Mat<F> x = space.to_matrix(unit_vec(f, space.dim(), k));
            a0.set_col(k, space.coords(ge * x));
            a1.set_col(k, space.coords(x * e));
        }
        p.push_back(std::move(a0));
        q.push_back(std::move(a1));
    }
    return make_double(r, space.dim(), std::move(p), std::move(q), std::move(name));
}

/// b(x, y) = h(x) y for a module and codomain given as matrix spaces.
template <Field F>
BilinearForm<F> matrix_form(const ModulePtr<F>& m, const MatrixSpace<F>& ms, const DoublePtr<F>& k, const MatrixSpace<F>& ks,
                            const std::function<Mat<F>(const Mat<F>&)>& h, std::string name = "") {
    if (ms.dim() != m->dim() || ks.dim() != k->dim()) fail(ErrorKind::DimensionMismatch, "matrix spaces do not match the module and codomain");
    const F& f = m->field();
    std::vector<Vec<F>> gram;
    for (std::size_t i = 0; i < ms.dim(); ++i)
        for (std::size_t j = 0; j < ms.dim(); ++j)
            gram.push_back(ks.coords(h(ms.to_matrix(unit_vec(f, ms.dim(), i))) * ms.to_matrix(unit_vec(f, ms.dim(), j))));
    return make_form(m, k, std::move(gram), std::move(name));
}

}  // namespace genform
