#pragma once

#include <type_traits>

#include "genform/algebra.hpp"

namespace genform {

namespace detail {

/// Trace of a^(p^i) for an integer lift of a, divided by p^i, reduced mod p.
inline std::uint32_t lifted_trace(const Mat<PrimeField>& a, std::size_t i) {
    const std::uint64_t p = a.field().characteristic();
    std::uint64_t mod = 1;
    for (std::size_t k = 0; k <= i; ++k) mod *= p;
    const std::size_t n = a.rows();
    using Grid = std::vector<std::uint64_t>;
    auto mul = [&](const Grid& x, const Grid& y) {
        Grid z(n * n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t v = x[r * n + k];
                if (v == 0) continue;
                for (std::size_t c = 0; c < n; ++c) z[r * n + c] = (z[r * n + c] + v * y[k * n + c]) % mod;
            }
        return z;
    };
    Grid g(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g[r * n + c] = a(r, c);
    for (std::size_t k = 0; k < i; ++k) {
        Grid h = g;
        for (std::uint64_t e = 1; e < p; ++e) h = mul(h, g);
        g = std::move(h);
    }
    std::uint64_t tr = 0;
    for (std::size_t r = 0; r < n; ++r) tr = (tr + g[r * n + r]) % mod;
    ensure(tr % (mod / p) == 0, "lifted trace is not divisible by p^i");
    return static_cast<std::uint32_t>(tr / (mod / p));
}

}  // namespace detail

/// Basis of the Jacobson radical. Over Q: kernel of the trace form of the left regular
/// representation. Over F_p: the iterated lifted-trace refinement of the regular
/// representation, which terminates after floor(log_p dim) + 1 rounds.
template <Field F>
std::vector<Vec<F>> radical_basis(const Algebra<F>& a) {
    const F& f = a.field();
    const std::size_t d = a.dim();
    if (d == 0) return {};
    auto trace = [&](const Mat<F>& m) {
        auto t = f.zero();
        for (std::size_t k = 0; k < m.rows(); ++k) t = f.add(t, m(k, k));
        return t;
    };
    auto refine = [&](const std::vector<Vec<F>>& current, const std::function<typename F::value_type(const Mat<F>&)>& g) {
        if (current.empty()) return current;
        Mat<F> sys(f, d, current.size());
        for (std::size_t c = 0; c < current.size(); ++c)
            for (std::size_t k = 0; k < d; ++k) sys(k, c) = g(a.left_mult(a.mul(current[c], a.basis(k))));
        std::vector<Vec<F>> next;
        for (const auto& v : kernel_basis(sys)) {
            Vec<F> x = zero_vec(f, d);
            for (std::size_t c = 0; c < current.size(); ++c) x = vec_add(f, x, vec_scale(f, v[c], current[c]));
            next.push_back(std::move(x));
        }
        return next;
    };
    std::vector<Vec<F>> ideal;
    for (std::size_t k = 0; k < d; ++k) ideal.push_back(a.basis(k));
    if constexpr (std::is_same_v<F, PrimeField>) {
        const std::uint64_t p = f.characteristic();
        std::size_t rounds = 0;
        for (std::uint64_t q = p; q <= d; q *= p) ++rounds;
        for (std::size_t i = 0; i <= rounds; ++i)
            ideal = refine(ideal, [&](const Mat<F>& m) { return static_cast<typename F::value_type>(detail::lifted_trace(m, i)); });
    } else {
        ideal = refine(ideal, trace);
    }
    return ideal;
}

template <Field F>
bool radical_is_zero(const Algebra<F>& a) {
    return radical_basis(a).empty();
}

/// A / I for a two-sided ideal I given by a spanning set; basis of the quotient from the pivot complement.
template <Field F>
AlgebraPtr<F> quotient_algebra(const Algebra<F>& a, const std::vector<Vec<F>>& ideal, std::string name = "") {
    const F& f = a.field();
    QuotientSpace<F> qs(f, a.dim(), ideal);
    for (const auto& v : qs.relations())
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (!qs.in_subspace(a.mul(v, a.basis(k))) || !qs.in_subspace(a.mul(a.basis(k), v))) fail(ErrorKind::NotModule, "subspace is not a two-sided ideal");
    const std::size_t q = qs.dim();
    typename Algebra<F>::Products products(q, std::vector<Vec<F>>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) products[i][j] = qs.project(a.mul(qs.section().col(i), qs.section().col(j)));
    return make_algebra(f, q, std::move(products), qs.project(a.unity()), name.empty() ? a.name() + "/I" : name);
}

}  // namespace genform
