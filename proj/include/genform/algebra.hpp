#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genform/linalg.hpp"

namespace genform {

/// Finite-dimensional unital associative algebra given by structure constants:
/// e_i e_j = sum_k c[i][j][k] e_k.
template <Field F>
class Algebra {
public:
    using Products = std::vector<std::vector<Vec<F>>>;

    Algebra(const F& field, std::size_t dim, Products products, Vec<F> unity, std::string name = "")
        : field_(field), dim_(dim), products_(std::move(products)), unity_(std::move(unity)), name_(std::move(name)) {
        if (products_.size() != dim_) fail(ErrorKind::DimensionMismatch, "structure constants need " + std::to_string(dim_) + " rows");
        for (const auto& row : products_) {
            if (row.size() != dim_) fail(ErrorKind::DimensionMismatch, "structure constant row has wrong length");
            for (const auto& v : row)
                if (v.size() != dim_) fail(ErrorKind::DimensionMismatch, "structure constant vector has wrong length");
        }
        if (unity_.size() != dim_) fail(ErrorKind::DimensionMismatch, "unity has wrong length");
        left_.reserve(dim_);
        right_.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Mat<F> l(field_, dim_, dim_), r(field_, dim_, dim_);
            for (std::size_t j = 0; j < dim_; ++j) {
                l.set_col(j, products_[i][j]);
                r.set_col(j, products_[j][i]);
            }
            left_.push_back(std::move(l));
            right_.push_back(std::move(r));
        }
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const Vec<F>& unity() const { return unity_; }
    const Vec<F>& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
    const Products& products() const { return products_; }

    Vec<F> basis(std::size_t i) const { return unit_vec(field_, dim_, i); }
    Vec<F> zero() const { return zero_vec(field_, dim_); }

    Vec<F> mul(const Vec<F>& a, const Vec<F>& b) const {
        check(a);
        check(b);
        Vec<F> r(dim_, field_.zero());
        for (std::size_t i = 0; i < dim_; ++i) {
            if (field_.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (field_.is_zero(b[j])) continue;
                auto c = field_.mul(a[i], b[j]);
                const auto& p = products_[i][j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!field_.is_zero(p[k])) r[k] = field_.add(r[k], field_.mul(c, p[k]));
            }
        }
        return r;
    }

    /// Matrix of x -> a x.
    Mat<F> left_mult(const Vec<F>& a) const { return combine(field_, left_, a, dim_, dim_); }
    /// Matrix of x -> x a.
    Mat<F> right_mult(const Vec<F>& a) const { return combine(field_, right_, a, dim_, dim_); }
    const Mat<F>& left_basis(std::size_t i) const { return left_[i]; }
    const Mat<F>& right_basis(std::size_t i) const { return right_[i]; }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                if (!vec_equal(field_, products_[i][j], products_[j][i])) return false;
        return true;
    }

    /// Inverse of a, when a is a unit (tested through the left-regular representation).
    std::optional<Vec<F>> inverse(const Vec<F>& a) const {
        Mat<F> l = left_mult(a);
        if (!is_invertible(l)) return std::nullopt;
        return solve_vec(l, unity_);
    }
    bool is_unit(const Vec<F>& a) const { return is_invertible(left_mult(a)); }

    /// Optional faithful realization by square matrices (matrix and pattern algebras).
    const std::vector<Mat<F>>& realization() const { return realization_; }
    std::size_t realization_size() const { return realization_.empty() ? 0 : realization_[0].rows(); }
    void set_realization(std::vector<Mat<F>> r) {
        realization_ = std::move(r);
        realization_coords_.reset();
        if (realization_.empty()) return;
        std::vector<Vec<F>> flat;
        for (const auto& m : realization_) flat.push_back(flatten(m));
        realization_coords_ = std::make_shared<CoordinateSolver<F>>(field_, flat[0].size(), flat);
    }
    Mat<F> realize(const Vec<F>& a) const {
        if (realization_.empty()) fail(ErrorKind::Unsupported, "algebra '" + name_ + "' has no matrix realization");
        return combine(field_, realization_, a, realization_size(), realization_size());
    }
    /// Coordinates of a matrix inside the realization, or nothing when it lies outside.
    std::optional<Vec<F>> unrealize(const Mat<F>& m) const {
        if (realization_.empty()) fail(ErrorKind::Unsupported, "algebra '" + name_ + "' has no matrix realization");
        return realization_coords_->try_coords(flatten(m));
    }

    /// When this algebra is M_n(base), the block size n and the base algebra.
    std::size_t block_size() const { return block_size_; }
    const std::shared_ptr<const Algebra>& block_base() const { return block_base_; }
    void set_block_structure(std::size_t n, std::shared_ptr<const Algebra> base) {
        block_size_ = n;
        block_base_ = std::move(base);
    }

    /// When this algebra is a prime-field extension F_p[x]/(f), the modulus coefficients.
    const std::vector<long long>& extension_modulus() const { return extension_modulus_; }
    void set_extension_modulus(std::vector<long long> m) { extension_modulus_ = std::move(m); }

    /// When this algebra is a product A x B, the dimension of the first factor.
    std::optional<std::pair<std::size_t, std::size_t>> product_split() const { return product_split_; }
    void set_product_split(std::size_t a, std::size_t b) { product_split_ = std::make_pair(a, b); }

    bool same_as(const Algebra& o) const {
        if (this == &o) return true;
        if (dim_ != o.dim_ || !(field_ == o.field_)) return false;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (!vec_equal(field_, products_[i][j], o.products_[i][j])) return false;
        return vec_equal(field_, unity_, o.unity_);
    }

    void check(const Vec<F>& a) const {
        if (a.size() != dim_) fail(ErrorKind::AlgebraMismatch, "element of length " + std::to_string(a.size()) + " used in algebra of dimension " + std::to_string(dim_));
    }

private:
    F field_;
    std::size_t dim_;
    Products products_;
    Vec<F> unity_;
    std::string name_;
    std::vector<Mat<F>> left_, right_;
    std::vector<Mat<F>> realization_;
    std::shared_ptr<const CoordinateSolver<F>> realization_coords_;
    std::size_t block_size_ = 0;
    std::shared_ptr<const Algebra> block_base_;
    std::vector<long long> extension_modulus_;
    std::optional<std::pair<std::size_t, std::size_t>> product_split_;
};

template <Field F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Re-asserts associativity and two-sided unity on all basis triples and pairs.
template <Field F>
void validate_algebra(const Algebra<F>& a) {
    const F& f = a.field();
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        Vec<F> e = a.basis(i);
        if (!vec_equal(f, a.mul(a.unity(), e), e) || !vec_equal(f, a.mul(e, a.unity()), e))
            fail(ErrorKind::UnityViolation, "unity does not act trivially on e" + std::to_string(i), {i});
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vec<F>& ij = a.product(i, j);
            for (std::size_t k = 0; k < d; ++k) {
                // (e_i e_j) e_k versus e_i (e_j e_k)
                Vec<F> lhs = a.right_basis(k) * ij;
                Vec<F> rhs = a.left_basis(i) * a.product(j, k);
                if (!vec_equal(f, lhs, rhs)) fail(ErrorKind::AssociativityViolation, "(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k) + " differs from e" + std::to_string(i) + " (e" + std::to_string(j) + " e" + std::to_string(k) + ")", {i, j, k});
            }
        }
}

template <Field F>
AlgebraPtr<F> make_algebra(const F& field, std::size_t dim, typename Algebra<F>::Products products, Vec<F> unity, std::string name = "") {
    auto a = std::make_shared<Algebra<F>>(field, dim, std::move(products), std::move(unity), std::move(name));
    validate_algebra(*a);
    return a;
}

/// Structure constants of the span of a family of matrices closed under products.
template <Field F>
AlgebraPtr<F> algebra_from_matrices(const F& field, const std::vector<Mat<F>>& basis, std::string name) {
    const std::size_t d = basis.size();
    std::vector<Vec<F>> flat;
    for (const auto& b : basis) flat.push_back(flatten(b));
    CoordinateSolver<F> coords(field, flat[0].size(), flat);
    typename Algebra<F>::Products products(d, std::vector<Vec<F>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto c = coords.try_coords(flatten(Mat<F>(basis[i] * basis[j])));
            if (!c) fail(ErrorKind::PatternNotClosed, "product of basis matrices " + std::to_string(i) + " and " + std::to_string(j) + " leaves the span", {i, j});
            products[i][j] = *c;
        }
    auto unity = coords.try_coords(flatten(Mat<F>::identity(field, basis[0].rows())));
    if (!unity) fail(ErrorKind::PatternNotUnital, "identity matrix is not in the span");
    auto a = std::make_shared<Algebra<F>>(field, d, std::move(products), *unity, std::move(name));
    a->set_realization(basis);
    validate_algebra(*a);
    return a;
}

template <Field F>
AlgebraPtr<F> field_algebra(const F& field) {
    auto a = std::make_shared<Algebra<F>>(field, 1, typename Algebra<F>::Products{{Vec<F>{field.one()}}}, Vec<F>{field.one()}, field.name());
    a->set_realization({Mat<F>::identity(field, 1)});
    return a;
}

/// Span of the matrix units e_ij with pattern[i][j] set, in row-major order.
template <Field F>
AlgebraPtr<F> structured_subalgebra(const F& field, std::size_t n, const std::vector<std::vector<bool>>& pattern, std::string name = "") {
    if (pattern.size() != n) fail(ErrorKind::DimensionMismatch, "pattern needs " + std::to_string(n) + " rows");
    for (const auto& row : pattern)
        if (row.size() != n) fail(ErrorKind::DimensionMismatch, "pattern row needs " + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i)
        if (!pattern[i][i]) fail(ErrorKind::PatternNotUnital, "diagonal entry (" + std::to_string(i) + "," + std::to_string(i) + ") missing", {i});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (pattern[i][j] && pattern[j][l] && !pattern[i][l])
                    fail(ErrorKind::PatternNotClosed, "e" + std::to_string(i) + std::to_string(j) + " e" + std::to_string(j) + std::to_string(l) + " leaves the pattern", {i, j, l});
    std::vector<Mat<F>> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pattern[i][j]) {
                Mat<F> e(field, n, n);
                e(i, j) = field.one();
                basis.push_back(std::move(e));
            }
    return algebra_from_matrices(field, basis, name.empty() ? "pattern" + std::to_string(n) : name);
}

template <Field F>
AlgebraPtr<F> matrix_algebra(const F& field, std::size_t n) {
    if (n == 0) fail(ErrorKind::DimensionMismatch, "matrix size must be positive");
    auto a = structured_subalgebra(field, n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, true)), "M" + std::to_string(n) + "(" + field.name() + ")");
    return a;
}

template <Field F>
AlgebraPtr<F> upper_triangular(const F& field, std::size_t n) {
    std::vector<std::vector<bool>> mask(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) mask[i][j] = true;
    return structured_subalgebra(field, n, mask, "UT" + std::to_string(n) + "(" + field.name() + ")");
}

/// Direct product A x B with basis (e_i, 0) followed by (0, f_j).
template <Field F>
AlgebraPtr<F> product_algebra(const Algebra<F>& a, const Algebra<F>& b, std::string name = "") {
    const F& f = a.field();
    if (!(f == b.field())) fail(ErrorKind::FieldMismatch, "product of algebras over different fields");
    std::size_t da = a.dim(), db = b.dim(), d = da + db;
    typename Algebra<F>::Products products(d, std::vector<Vec<F>>(d, zero_vec(f, d)));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < da; ++k) products[i][j][k] = a.product(i, j)[k];
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < db; ++k) products[da + i][da + j][da + k] = b.product(i, j)[k];
    Vec<F> unity(d);
    for (std::size_t k = 0; k < da; ++k) unity[k] = a.unity()[k];
    for (std::size_t k = 0; k < db; ++k) unity[da + k] = b.unity()[k];
    auto p = std::make_shared<Algebra<F>>(f, d, std::move(products), std::move(unity), name.empty() ? a.name() + "x" + b.name() : name);
    if (!a.realization().empty() && !b.realization().empty()) {
        std::vector<Mat<F>> real;
        Mat<F> za(f, a.realization_size(), a.realization_size()), zb(f, b.realization_size(), b.realization_size());
        for (const auto& m : a.realization()) real.push_back(block_diag(m, zb));
        for (const auto& m : b.realization()) real.push_back(block_diag(za, m));
        p->set_realization(std::move(real));
    }
    p->set_product_split(da, db);
    validate_algebra(*p);
    return p;
}

/// F_p[x]/(f) for a monic f given by coefficients from the constant term up (leading 1 included).
template <Field F>
AlgebraPtr<F> extension_algebra(const F& field, const std::vector<long long>& modulus, std::string name = "") {
    if (modulus.size() < 2) fail(ErrorKind::DimensionMismatch, "extension modulus must have degree >= 1");
    const std::size_t n = modulus.size() - 1;
    if (!field.equal(field.from_int(modulus.back()), field.one())) fail(ErrorKind::Unsupported, "extension modulus must be monic");
    // reduce x^k for k < 2n - 1
    std::vector<Vec<F>> powers;
    for (std::size_t k = 0; k < n; ++k) powers.push_back(unit_vec(field, n, k));
    Vec<F> cur = powers.back();
    for (std::size_t k = n; k + 1 < 2 * n; ++k) {
        // multiply cur by x
        Vec<F> next(n, field.zero());
        auto top = cur[n - 1];
        for (std::size_t i = n - 1; i > 0; --i) next[i] = cur[i - 1];
        for (std::size_t i = 0; i < n; ++i) next[i] = field.sub(next[i], field.mul(top, field.from_int(modulus[i])));
        powers.push_back(next);
        cur = next;
    }
    typename Algebra<F>::Products products(n, std::vector<Vec<F>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) products[i][j] = powers[i + j];
    auto a = std::make_shared<Algebra<F>>(field, n, std::move(products), unit_vec(field, n, 0), name.empty() ? field.name() + "[x]/(f)" : name);
    a->set_extension_modulus(modulus);
    validate_algebra(*a);
    return a;
}

/// M_n(A) with basis e_ij (x) a_k at index (i*n + j)*dim(A) + k.
template <Field F>
AlgebraPtr<F> matrix_over(const AlgebraPtr<F>& base, std::size_t n, std::string name = "") {
    const F& f = base->field();
    const std::size_t da = base->dim(), d = n * n * da;
    auto index = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * da + k; };
    typename Algebra<F>::Products products(d, std::vector<Vec<F>>(d, zero_vec(f, d)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t a = 0; a < da; ++a)
                    for (std::size_t b = 0; b < da; ++b) {
                        // (e_ij a)(e_jl b) = e_il (ab)
                        const Vec<F>& ab = base->product(a, b);
                        for (std::size_t k = 0; k < da; ++k) products[index(i, j, a)][index(j, l, b)][index(i, l, k)] = ab[k];
                    }
    Vec<F> unity(d, f.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < da; ++k) unity[index(i, i, k)] = base->unity()[k];
    auto m = std::make_shared<Algebra<F>>(f, d, std::move(products), std::move(unity), name.empty() ? "M" + std::to_string(n) + "(" + base->name() + ")" : name);
    if (!base->realization().empty()) {
        std::vector<Mat<F>> real;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t a = 0; a < da; ++a) {
                    Mat<F> e(f, n, n);
                    e(i, j) = f.one();
                    real.push_back(kron(e, base->realization()[a]));
                }
        m->set_realization(std::move(real));
    }
    m->set_block_structure(n, base);
    validate_algebra(*m);
    return m;
}

/// Basis of the center {z : z e_i = e_i z for all i}.
template <Field F>
std::vector<Vec<F>> center(const Algebra<F>& a) {
    std::vector<Mat<F>> rows;
    for (std::size_t i = 0; i < a.dim(); ++i) rows.push_back(a.right_basis(i) - a.left_basis(i));
    if (rows.empty()) return {};
    return kernel_basis(vstack(a.field(), rows, a.dim()));
}

}  // namespace genform
