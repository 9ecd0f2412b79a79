#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "genform/linalg.hpp"

namespace genform {

enum class SearchStatus { Found, ProvablyNone, Inconclusive };

inline std::string to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ProvablyNone: return "provably-none";
    case SearchStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct SearchOptions {
    std::uint64_t budget = 1u << 18;
    std::uint64_t seed = 20240601;
    std::uint64_t random_trials = 2048;
};

template <Field F>
struct SpanSearchResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<Mat<F>> element;
    Vec<F> coefficients;
    std::string method;
    std::uint64_t evaluated = 0;

    bool found() const { return status == SearchStatus::Found; }
};

namespace detail {

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return std::nullopt;
        r *= base;
    }
    return r <= cap ? std::optional<std::uint64_t>(r) : std::nullopt;
}

}  // namespace detail

/// Searches the affine family offset + sum_k c_k dirs[k] for an element satisfying pred.
///
/// When `degree` is given, pred(x) is taken to mean "a fixed polynomial of total degree
/// <= degree in the coefficients is nonzero"; a grid of degree+1 distinct values per
/// coefficient is then a complete test, so failure on the grid is a proof of absence.
/// Exhaustive enumeration over a finite prime field is always complete. Anything else
/// falls back to seeded random trials and reports inconclusive on failure.
template <Field F>
SpanSearchResult<F> search_affine(const F& f, std::size_t rows, std::size_t cols, const std::vector<Mat<F>>& dirs,
                                  const std::optional<Mat<F>>& offset, const std::function<bool(const Mat<F>&)>& pred,
                                  std::optional<std::size_t> degree, const SearchOptions& opts = {}) {
    SpanSearchResult<F> res;
    const std::size_t t = dirs.size();
    Mat<F> base = offset ? *offset : Mat<F>(f, rows, cols);

    auto evaluate = [&](const Vec<F>& c) -> bool {
        ++res.evaluated;
        Mat<F> x = base;
        for (std::size_t k = 0; k < t; ++k)
            if (!f.is_zero(c[k])) x = x + dirs[k].scaled(c[k]);
        if (pred(x)) {
            res.status = SearchStatus::Found;
            res.element = x;
            res.coefficients = c;
            return true;
        }
        return false;
    };

    // Mixed-radix walk over values[0..radix)^t.
    auto walk = [&](std::uint64_t radix, const std::function<typename F::value_type(std::uint64_t)>& value) -> bool {
        std::vector<std::uint64_t> digits(t, 0);
        Vec<F> c(t, f.zero());
        while (true) {
            for (std::size_t k = 0; k < t; ++k) c[k] = value(digits[k]);
            if (evaluate(c)) return true;
            std::size_t k = 0;
            while (k < t && ++digits[k] == radix) digits[k++] = 0;
            if (k == t) return false;
        }
    };

    if (t == 0) {
        res.method = "single-point";
        if (!evaluate({})) res.status = SearchStatus::ProvablyNone;
        return res;
    }

    std::optional<std::uint64_t> grid;
    if (degree) {
        bool enough_values = f.characteristic() == 0 || f.characteristic() > *degree;
        if (enough_values) grid = detail::checked_pow(*degree + 1, t, opts.budget);
    }
    std::optional<std::uint64_t> exhaustive;
    if (f.is_finite()) exhaustive = detail::checked_pow(f.size(), t, opts.budget);

    if (grid && (!exhaustive || *grid <= *exhaustive)) {
        res.method = "polynomial-grid";
        if (!walk(*degree + 1, [&](std::uint64_t i) { return f.element(i); })) res.status = SearchStatus::ProvablyNone;
        return res;
    }
    if (exhaustive) {
        res.method = "exhaustive";
        if (!walk(f.size(), [&](std::uint64_t i) { return f.element(i); })) res.status = SearchStatus::ProvablyNone;
        return res;
    }

    res.method = "random";
    std::mt19937_64 rng(opts.seed);
    std::uint64_t spread = f.is_finite() ? f.size() : 2 * (degree.value_or(4) + 1) + 1;
    std::uniform_int_distribution<std::uint64_t> pick(0, spread - 1);
    std::uint64_t trials = std::min(opts.budget, opts.random_trials);
    Vec<F> c(t);
    for (std::uint64_t n = 0; n < trials; ++n) {
        for (std::size_t k = 0; k < t; ++k) c[k] = f.element(pick(rng));
        if (evaluate(c)) return res;
    }
    res.status = SearchStatus::Inconclusive;
    return res;
}

/// Finds an invertible matrix in offset + span(basis). The determinant of a generic
/// element is a polynomial of total degree <= s, which drives the grid test.
template <Field F>
SpanSearchResult<F> find_invertible_in_span(const F& f, std::size_t s, const std::vector<Mat<F>>& basis,
                                            const SearchOptions& opts = {},
                                            const std::optional<Mat<F>>& offset = std::nullopt) {
    for (const auto& b : basis)
        if (b.rows() != s || b.cols() != s) fail(ErrorKind::DimensionMismatch, "span search expects " + std::to_string(s) + "x" + std::to_string(s) + " matrices, got " + b.shape());
    if (offset && (offset->rows() != s || offset->cols() != s)) fail(ErrorKind::DimensionMismatch, "span search offset has shape " + offset->shape());
    return search_affine<F>(
        f, s, s, basis, offset, [](const Mat<F>& m) { return is_invertible(m); }, s, opts);
}

template <Field F>
SpanSearchResult<F> find_invertible_in_span(const std::vector<Mat<F>>& basis, const SearchOptions& opts = {}) {
    if (basis.empty()) fail(ErrorKind::DimensionMismatch, "empty basis needs an explicit size");
    return find_invertible_in_span(basis[0].field(), basis[0].rows(), basis, opts);
}

}  // namespace genform
