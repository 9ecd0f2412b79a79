#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "genform/error.hpp"
#include "genform/field.hpp"

namespace genform {

template <Field F>
using Vec = std::vector<typename F::value_type>;

/// Dense row-major matrix over an exact field. Coordinates are columns.
template <Field F>
class Mat {
public:
    using value_type = typename F::value_type;

    Mat() = default;
    Mat(const F& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Mat zero(const F& field, std::size_t rows, std::size_t cols) { return Mat(field, rows, cols); }
    static Mat identity(const F& field, std::size_t n) {
        Mat m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }
    static Mat column(const F& field, const Vec<F>& v) {
        Mat m(field, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }
    static Mat from_columns(const F& field, std::size_t rows, const std::vector<Vec<F>>& cols) {
        Mat m(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) fail(ErrorKind::DimensionMismatch, "column length differs from row count");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }
    static Mat from_rows(const F& field, const std::vector<Vec<F>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows[0].size();
        Mat m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) fail(ErrorKind::DimensionMismatch, "ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat from_ints(const F& field, const std::vector<std::vector<long long>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows[0].size();
        Mat m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) fail(ErrorKind::DimensionMismatch, "ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<value_type>& data() const { return data_; }

    Vec<F> col(std::size_t j) const {
        Vec<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec<F> row(std::size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    void set_col(std::size_t j, const Vec<F>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!field_.is_zero(x)) return false;
        return true;
    }
    bool is_identity() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.equal((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat scaled(const value_type& c) const {
        Mat r = *this;
        for (auto& x : r.data_) x = field_.mul(c, x);
        return r;
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Mat b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(data_[k], o.data_[k]);
        return r;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(data_[k], o.data_[k]);
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.data_) x = field_.neg(x);
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) fail(ErrorKind::DimensionMismatch, "product of " + shape() + " and " + o.shape());
        Mat r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const value_type& a = (*this)(i, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
            }
        return r;
    }
    Vec<F> operator*(const Vec<F>& v) const {
        if (cols_ != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
        Vec<F> r(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const value_type& a = (*this)(i, k);
                if (!field_.is_zero(a)) r[i] = field_.add(r[i], field_.mul(a, v[k]));
            }
        return r;
    }

    bool operator==(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!field_.equal(data_[k], o.data_[k])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Lexicographic order on entries (by their string form is too slow; compare raw values).
    bool lex_less(const Mat& o) const {
        for (std::size_t k = 0; k < data_.size() && k < o.data_.size(); ++k) {
            if (field_.equal(data_[k], o.data_[k])) continue;
            return data_[k] < o.data_[k];
        }
        return data_.size() < o.data_.size();
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i][j] = field_.to_string((*this)(i, j));
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << field_.to_string((*this)(i, j));
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimensionMismatch, "shapes " + shape() + " and " + o.shape());
    }

    F field_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<value_type> data_;
};

/// Kronecker product: kron(A,B)((a*p+b),(i*q+j)) = A(a,i) B(b,j).
template <Field F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b) {
    const F& f = a.field();
    Mat<F> r(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ai = 0; ai < a.rows(); ++ai)
        for (std::size_t aj = 0; aj < a.cols(); ++aj) {
            if (f.is_zero(a(ai, aj))) continue;
            for (std::size_t bi = 0; bi < b.rows(); ++bi)
                for (std::size_t bj = 0; bj < b.cols(); ++bj)
                    r(ai * b.rows() + bi, aj * b.cols() + bj) = f.mul(a(ai, aj), b(bi, bj));
        }
    return r;
}

template <Field F>
Mat<F> block_diag(const Mat<F>& a, const Mat<F>& b) {
    Mat<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

/// Stack matrices vertically (all must share a column count).
template <Field F>
Mat<F> vstack(const F& field, const std::vector<Mat<F>>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) fail(ErrorKind::DimensionMismatch, "vstack column mismatch");
        rows += p.rows();
    }
    Mat<F> r(field, rows, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
        r.set_block(at, 0, p);
        at += p.rows();
    }
    return r;
}

template <Field F>
Vec<F> vec_add(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}
template <Field F>
Vec<F> vec_sub(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}
template <Field F>
Vec<F> vec_scale(const F& f, const typename F::value_type& c, const Vec<F>& a) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
}
template <Field F>
bool vec_is_zero(const F& f, const Vec<F>& a) {
    for (const auto& x : a)
        if (!f.is_zero(x)) return false;
    return true;
}
template <Field F>
bool vec_equal(const F& f, const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!f.equal(a[i], b[i])) return false;
    return true;
}
template <Field F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
    Vec<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}
template <Field F>
Vec<F> zero_vec(const F& f, std::size_t n) {
    return Vec<F>(n, f.zero());
}
/// Linear combination sum_k coeffs[k] * mats[k].
template <Field F>
Mat<F> combine(const F& f, const std::vector<Mat<F>>& mats, const Vec<F>& coeffs, std::size_t rows, std::size_t cols) {
    Mat<F> r(f, rows, cols);
    for (std::size_t k = 0; k < mats.size(); ++k) {
        if (f.is_zero(coeffs[k])) continue;
        r = r + mats[k].scaled(coeffs[k]);
    }
    return r;
}

/// Flatten a matrix row-major into a coordinate vector.
template <Field F>
Vec<F> flatten(const Mat<F>& m) {
    return m.data();
}
template <Field F>
Mat<F> unflatten(const F& f, const Vec<F>& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) fail(ErrorKind::DimensionMismatch, "unflatten size mismatch");
    Mat<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

}  // namespace genform
