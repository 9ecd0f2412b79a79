#pragma once

#include <gmpxx.h>

#include "genform/corresp.hpp"

namespace genform {

namespace detail {

/// Calls fn on every element of F_p^d (index order), stopping early when fn returns true.
/// Returns false when p^d exceeds the budget or the field is infinite.
template <Field F>
bool scan_elements(const F& f, std::size_t d, std::uint64_t budget, const std::function<bool(const Vec<F>&)>& fn) {
    if (!f.is_finite()) return false;
    auto total = checked_pow(f.size(), d, budget);
    if (!total) return false;
    Vec<F> v(d, f.zero());
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t k = 0; k < d; ++k) {
            v[k] = f.element(t % f.size());
            t /= f.size();
        }
        if (fn(v)) break;
    }
    return true;
}

template <Field F>
bool is_idempotent(const Algebra<F>& w, const Vec<F>& e) {
    return vec_equal(w.field(), w.mul(e, e), e);
}

template <Field F>
bool is_trivial_idempotent(const Algebra<F>& w, const Vec<F>& e) {
    return vec_is_zero(w.field(), e) || vec_equal(w.field(), e, w.unity());
}

/// Monic minimal polynomial (coefficients from the constant term up) of z in the corner with unity e.
template <Field F>
std::vector<typename F::value_type> minimal_polynomial(const Algebra<F>& w, const Vec<F>& z, const Vec<F>& e) {
    const F& f = w.field();
    std::vector<Vec<F>> powers{e};
    while (true) {
        Vec<F> next = w.mul(z, powers.back());
        auto sol = solve_vec(Mat<F>::from_columns(f, w.dim(), powers), next);
        if (sol) {
            std::vector<typename F::value_type> poly;
            for (const auto& c : *sol) poly.push_back(f.neg(c));
            poly.push_back(f.one());
            return poly;
        }
        powers.push_back(std::move(next));
    }
}

template <Field F>
typename F::value_type eval_poly(const F& f, const std::vector<typename F::value_type>& poly, const typename F::value_type& x) {
    auto acc = f.zero();
    for (std::size_t k = poly.size(); k-- > 0;) acc = f.add(f.mul(acc, x), poly[k]);
    return acc;
}

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

/// Roots in the base field: all residues over F_p, rational-root candidates over Q.
template <Field F>
std::vector<typename F::value_type> field_roots(const F& f, const std::vector<typename F::value_type>& poly) {
    std::vector<typename F::value_type> out;
    if constexpr (std::is_same_v<F, PrimeField>) {
        if (f.size() > (1u << 20)) fail(ErrorKind::Unsupported, "root search over a large prime field");
        for (std::uint64_t c = 0; c < f.size(); ++c)
            if (f.is_zero(eval_poly(f, poly, f.element(c)))) out.push_back(f.element(c));
    } else {
        mpz_class den = 1;
        for (const auto& c : poly) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        std::vector<mpz_class> ints;
        for (const auto& c : poly) ints.push_back(mpz_class(c * den));
        std::size_t low = 0;
        while (low < ints.size() && ints[low] == 0) ++low;
        if (low > 0) out.push_back(f.zero());
        if (low + 1 >= ints.size()) return out;
        for (const auto& a : positive_divisors(ints[low]))
            for (const auto& b : positive_divisors(ints.back()))
                for (int sign : {1, -1}) {
                    mpq_class x(sign * a, b);
                    x.canonicalize();
                    if (f.is_zero(eval_poly(f, poly, x)) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
                }
    }
    return out;
}

/// Basis of the corner e A (as vectors in A).
template <Field F>
std::vector<Vec<F>> left_corner(const Algebra<F>& a, const Vec<F>& e, const std::vector<Vec<F>>& within) {
    std::vector<Vec<F>> out;
    for (const auto& v : within) out.push_back(a.mul(e, v));
    return span_basis(a.field(), a.dim(), out);
}

}  // namespace detail

template <Field F>
struct CenterRestriction {
    std::vector<Vec<F>> basis;  // center basis, as elements of W
    Mat<F> matrix;              // alpha on center coordinates
    bool bijective = false;
    bool identity = false;
};

template <Field F>
CenterRestriction<F> center_restriction(const AntiEndo<F>& alpha) {
    const Algebra<F>& w = *alpha.algebra;
    const F& f = w.field();
    CenterRestriction<F> out;
    out.basis = center(w);
    CoordinateSolver<F> coords(f, w.dim(), out.basis);
    out.matrix = Mat<F>(f, out.basis.size(), out.basis.size());
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
        auto c = coords.try_coords(alpha.apply(out.basis[k]));
        if (!c) fail(ErrorKind::HypothesisViolated, "alpha does not map the center into itself", {k});
        out.matrix.set_col(k, *c);
    }
    out.bijective = is_invertible(out.matrix);
    out.identity = out.matrix.is_identity();
    return out;
}

/// Complete orthogonal system of primitive idempotents of the center of a semisimple algebra.
/// Over F_p the split part {z : z^p = z} of the center is separated by root search; over Q,
/// rational roots of minimal polynomials are used and unsplit components raise CenterNotSplit.
template <Field F>
std::vector<Vec<F>> primitive_central_idempotents(const Algebra<F>& w) {
    const F& f = w.field();
    if (!radical_is_zero(w)) fail(ErrorKind::NotSemisimple, "algebra has a nonzero radical");
    auto z = center(w);
    std::vector<Vec<F>> split = z;
    if constexpr (std::is_same_v<F, PrimeField>) {
        CoordinateSolver<F> coords(f, w.dim(), z);
        Mat<F> frob(f, z.size(), z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            Vec<F> pw = w.unity();
            for (std::uint64_t i = 0; i < f.size(); ++i) pw = w.mul(pw, z[k]);
            frob.set_col(k, coords.coords(pw));
        }
        split.clear();
        for (const auto& v : kernel_basis(frob - Mat<F>::identity(f, z.size()))) split.push_back(coords.combination(v));
    }
    std::vector<Vec<F>> idems{w.unity()};
    for (const auto& b : split) {
        std::vector<Vec<F>> next;
        for (const auto& e : idems) {
            Vec<F> x = w.mul(e, b);
            auto poly = detail::minimal_polynomial(w, x, e);
            auto roots = detail::field_roots(f, poly);
            if (roots.empty() || poly.size() == 2) {
                next.push_back(e);
                continue;
            }
            Vec<F> rest = e;
            for (const auto& c : roots) {
                Vec<F> p = e;
                for (const auto& c2 : roots) {
                    if (f.equal(c, c2)) continue;
                    Vec<F> factor = vec_scale(f, f.inv(f.sub(c, c2)), vec_sub(f, x, vec_scale(f, c2, e)));
                    p = w.mul(p, factor);
                }
                // Lagrange idempotent of c; with a non-linear cofactor q also multiply by q(x)/q(c)
                if (roots.size() + 1 != poly.size()) {
                    std::vector<typename F::value_type> q = poly;
                    for (const auto& c2 : roots) {
                        // synthetic division by (t - c2)
                        std::vector<typename F::value_type> d(q.size() - 1);
                        auto carry = f.zero();
                        for (std::size_t k = q.size(); k-- > 1;) {
                            carry = f.add(q[k], f.mul(carry, c2));
                            d[k - 1] = carry;
                        }
                        q = d;
                    }
                    Vec<F> qx = zero_vec(f, w.dim()), pw = e;
                    for (const auto& coef : q) {
                        qx = vec_add(f, qx, vec_scale(f, coef, pw));
                        pw = w.mul(pw, x);
                    }
                    p = w.mul(p, vec_scale(f, f.inv(detail::eval_poly(f, q, c)), qx));
                }
                ensure(detail::is_idempotent(w, p), "splitting produced a non-idempotent");
                next.push_back(p);
                rest = vec_sub(f, rest, p);
            }
            if (!vec_is_zero(f, rest)) next.push_back(rest);
        }
        idems = std::move(next);
    }
    for (const auto& e : idems) {
        auto corner = detail::left_corner(w, e, split);
        if (corner.size() != 1) fail(ErrorKind::CenterNotSplit, "a central component does not split over the base field (dimension " + std::to_string(corner.size()) + ")");
    }
    Vec<F> sum = zero_vec(f, w.dim());
    for (std::size_t i = 0; i < idems.size(); ++i) {
        sum = vec_add(f, sum, idems[i]);
        for (std::size_t j = 0; j < idems.size(); ++j)
            ensure(i == j ? detail::is_idempotent(w, idems[i]) : vec_is_zero(f, w.mul(idems[i], idems[j])), "central idempotents are not orthogonal");
    }
    ensure(vec_equal(f, sum, w.unity()), "central idempotents do not sum to 1");
    return idems;
}

enum class InvolutionKind { Orthogonal, Symplectic, Unitary };

inline std::string to_string(InvolutionKind k) {
    switch (k) {
    case InvolutionKind::Orthogonal: return "orthogonal";
    case InvolutionKind::Symplectic: return "symplectic";
    case InvolutionKind::Unitary: return "unitary";
    }
    return "orthogonal";
}

template <Field F>
struct InvolutionType {
    InvolutionKind kind = InvolutionKind::Orthogonal;
    Mat<F> center_action;          // alpha restricted to the center
    std::optional<Mat<F>> theta;   // theta_alpha on K_alpha (orthogonal / symplectic cases)
    bool alternating = false;      // b_alpha(x, x) = 0 for all x
    std::string witness;
};

/// b(x, x) = 0 for all x, via the diagonal and the symmetrized off-diagonal Gram entries.
template <Field F>
bool is_alternating(const BilinearForm<F>& b) {
    const F& f = b.module->field();
    for (std::size_t i = 0; i < b.m(); ++i) {
        if (!vec_is_zero(f, b.at(i, i))) return false;
        for (std::size_t j = i + 1; j < b.m(); ++j)
            if (!vec_is_zero(f, vec_add(f, b.at(i, j), b.at(j, i)))) return false;
    }
    return true;
}

namespace detail {

/// Whether a commutative algebra spanned by `basis` (inside w) is a field.
template <Field F>
bool is_field_span(const Algebra<F>& w, const std::vector<Vec<F>>& basis, std::uint64_t budget) {
    const F& f = w.field();
    if (basis.size() == 1) return true;
    if (!f.is_finite()) return false;
    bool ok = true;
    bool complete = scan_elements(f, basis.size(), budget, [&](const Vec<F>& c) {
        Vec<F> x = zero_vec(f, w.dim());
        for (std::size_t k = 0; k < basis.size(); ++k) x = vec_add(f, x, vec_scale(f, c[k], basis[k]));
        if (!vec_is_zero(f, x) && !w.is_unit(x)) ok = false;
        return !ok;
    });
    if (!complete) fail(ErrorKind::Inconclusive, "center too large to scan for zero divisors");
    return ok;
}

}  // namespace detail

/// V = W e as a right module over e W e, with W acting by left multiplication.
template <Field F>
EndoAlgebra<F> corner_realization(const AlgebraPtr<F>& w, const Vec<F>& e) {
    const F& f = w->field();
    const std::size_t d = w->dim();
    std::vector<Vec<F>> vs, ds;
    for (std::size_t k = 0; k < d; ++k) {
        vs.push_back(w->mul(w->basis(k), e));
        ds.push_back(w->mul(e, w->mul(w->basis(k), e)));
    }
    vs = span_basis(f, d, vs);
    ds = span_basis(f, d, ds);
    CoordinateSolver<F> vc(f, d, vs), dc(f, d, ds);
    typename Algebra<F>::Products products(ds.size(), std::vector<Vec<F>>(ds.size()));
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) products[i][j] = dc.coords(w->mul(ds[i], ds[j]));
    auto r = make_algebra(f, ds.size(), std::move(products), dc.coords(e), "eWe");
    std::vector<Mat<F>> acts;
    for (const auto& s : ds) {
        Mat<F> a(f, vs.size(), vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c) a.set_col(c, vc.coords(w->mul(vs[c], s)));
        acts.push_back(std::move(a));
    }
    auto v = make_module(r, vs.size(), std::move(acts), "We");
    std::vector<Mat<F>> rep;
    for (std::size_t k = 0; k < d; ++k) {
        Mat<F> a(f, vs.size(), vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c) a.set_col(c, vc.coords(w->mul(w->basis(k), vs[c])));
        rep.push_back(std::move(a));
    }
    return endo_algebra_from_action(v, w, std::move(rep));
}

/// A nonzero idempotent e of w minimizing dim W e; primitive when w is simple.
template <Field F>
Vec<F> minimal_idempotent(const Algebra<F>& w, std::uint64_t budget) {
    const F& f = w.field();
    std::optional<Vec<F>> best;
    std::size_t best_rank = w.dim() + 1;
    bool complete = detail::scan_elements(f, w.dim(), budget, [&](const Vec<F>& x) {
        if (vec_is_zero(f, x) || !detail::is_idempotent(w, x)) return false;
        std::size_t rk = rank(w.right_mult(x));
        if (rk < best_rank) {
            best_rank = rk;
            best = x;
        }
        return false;
    });
    if (!complete) {
        if (!f.is_finite()) fail(ErrorKind::Unsupported, "primitive idempotent search needs a finite field");
        fail(ErrorKind::Inconclusive, "primitive idempotent search exceeded the budget");
    }
    ensure(best.has_value(), "no nonzero idempotent");
    return *best;
}

/// Orthogonal / symplectic / unitary type of an involution of W = End(V) with W simple and central over a field.
template <Field F>
InvolutionType<F> classify_involution(const EndoAlgebra<F>& e, const AntiEndo<F>& alpha, const SearchOptions& opts = {}) {
    const Algebra<F>& w = *e.algebra;
    const F& f = w.field();
    if (!alpha.is_involution()) fail(ErrorKind::NotInvolution, "alpha is not an involution");
    auto cr = center_restriction(alpha);
    if (!radical_is_zero(w) || !detail::is_field_span(w, cr.basis, opts.budget)) fail(ErrorKind::NotFieldCase, "W is not simple with a field as center");
    InvolutionType<F> out;
    out.center_action = cr.matrix;
    if (!cr.identity) {
        out.kind = InvolutionKind::Unitary;
        out.witness = "alpha moves the center";
        return out;
    }
    auto ka = tensor_alpha(e, alpha);
    if (ka.codomain->dim() != cr.basis.size()) {
        // V is not simple over its scalars (e.g. the regular module): pass to W e over e W e
        ka = tensor_alpha(corner_realization(e.algebra, minimal_idempotent(w, opts.budget)), alpha);
        ensure(ka.codomain->dim() == cr.basis.size(), "corner K_alpha is not one-dimensional over the center");
    }
    auto theta = theta_alpha(ka);
    out.theta = theta.matrix;
    out.alternating = is_alternating(ka.form);
    const auto id = Mat<F>::identity(f, ka.codomain->dim());
    if (f.characteristic() == 2) {
        out.kind = out.alternating ? InvolutionKind::Symplectic : InvolutionKind::Orthogonal;
        out.witness = out.alternating ? "b_alpha is alternating" : "b_alpha(x, x) != 0 for some x";
    } else if (theta.matrix == id) {
        out.kind = InvolutionKind::Orthogonal;
        out.witness = "theta_alpha = +1";
    } else if (theta.matrix == -id) {
        out.kind = InvolutionKind::Symplectic;
        out.witness = "theta_alpha = -1";
        ensure(out.alternating, "symplectic involution with non-alternating b_alpha");
    } else {
        fail(ErrorKind::InternalAssertion, "theta_alpha is not a sign");
    }
    return out;
}

enum class ScanStatus { Holds, Fails, Inconclusive };

inline std::string to_string(ScanStatus s) {
    switch (s) {
    case ScanStatus::Holds: return "holds";
    case ScanStatus::Fails: return "fails";
    case ScanStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

template <Field F>
struct IdempotentScan {
    ScanStatus status = ScanStatus::Inconclusive;
    std::optional<Vec<F>> witness;  // nontrivial alpha-invariant idempotent
};

/// Exhaustive scan for idempotents e != 0, 1 with alpha(e) = e.
template <Field F>
IdempotentScan<F> invariant_idempotent_hypothesis(const AntiEndo<F>& alpha, std::uint64_t budget = 1u << 20) {
    const Algebra<F>& w = *alpha.algebra;
    IdempotentScan<F> out;
    bool complete = detail::scan_elements(w.field(), w.dim(), budget, [&](const Vec<F>& x) {
        if (detail::is_trivial_idempotent(w, x) || !detail::is_idempotent(w, x)) return false;
        if (!vec_equal(w.field(), alpha.apply(x), x)) return false;
        out.witness = x;
        return true;
    });
    if (out.witness) out.status = ScanStatus::Fails;
    else if (complete) out.status = ScanStatus::Holds;
    return out;
}

enum class OsbornCase { DivisionRing, DxDop, M2Symplectic };

inline std::string to_string(OsbornCase c) {
    switch (c) {
    case OsbornCase::DivisionRing: return "division-ring";
    case OsbornCase::DxDop: return "D x D^op";
    case OsbornCase::M2Symplectic: return "M2 symplectic";
    }
    return "division-ring";
}

template <Field F>
struct OsbornVerdict {
    OsbornCase which = OsbornCase::DivisionRing;
    std::vector<Vec<F>> central_idempotents;
    // DxDop: D = W e1 with basis `block`, iso w -> (coords(w e1), coords(alpha(w e2)))
    std::vector<Vec<F>> block;
    std::optional<Mat<F>> iso;
    // single block: primitive idempotent e, with V = W e over D = e W e and b = b_alpha on V
    std::optional<Vec<F>> primitive;
    std::optional<KAlpha<F>> form;
};

/// The generalized Osborn trichotomy for a semisimple W with an involution whose only
/// invariant idempotents are 0 and 1.
template <Field F>
OsbornVerdict<F> osborn_classify(const AntiEndo<F>& alpha, const SearchOptions& opts = {}, bool assume_hypothesis = false) {
    const auto& wp = alpha.algebra;
    const Algebra<F>& w = *wp;
    const F& f = w.field();
    if (!alpha.is_involution()) fail(ErrorKind::NotInvolution, "alpha is not an involution");
    if (!radical_is_zero(w)) fail(ErrorKind::NotSemisimple, "W has a nonzero radical");
    if (!assume_hypothesis) {
        auto scan = invariant_idempotent_hypothesis(alpha, opts.budget);
        if (scan.status == ScanStatus::Fails) fail(ErrorKind::HypothesisViolated, "alpha fixes a nontrivial idempotent");
        if (scan.status == ScanStatus::Inconclusive) fail(ErrorKind::HypothesisUnverified, "invariant-idempotent scan exceeded the budget");
    }
    OsbornVerdict<F> out;
    out.central_idempotents = primitive_central_idempotents(w);
    const auto& ce = out.central_idempotents;
    if (ce.size() > 2) fail(ErrorKind::InternalAssertion, "more than two central blocks under the invariant-idempotent hypothesis");
    if (ce.size() == 2) {
        ensure(vec_equal(f, alpha.apply(ce[0]), ce[1]), "alpha does not exchange the two central blocks");
        out.which = OsbornCase::DxDop;
        std::vector<Vec<F>> blk;
        for (std::size_t k = 0; k < w.dim(); ++k) blk.push_back(w.mul(w.basis(k), ce[0]));
        out.block = span_basis(f, w.dim(), blk);
        CoordinateSolver<F> bc(f, w.dim(), out.block);
        const std::size_t db = out.block.size();
        Mat<F> iso(f, 2 * db, w.dim());
        for (std::size_t k = 0; k < w.dim(); ++k) {
            Vec<F> a = bc.coords(w.mul(w.basis(k), ce[0]));
            Vec<F> b = bc.coords(alpha.apply(w.mul(w.basis(k), ce[1])));
            for (std::size_t i = 0; i < db; ++i) {
                iso(i, k) = a[i];
                iso(db + i, k) = b[i];
            }
        }
        ensure(is_invertible(iso), "block map is not bijective");
        out.iso = iso;
        return out;
    }
    // one block: W simple
    out.primitive = minimal_idempotent(w, opts.budget);
    auto e = corner_realization(wp, *out.primitive);
    auto ka = tensor_alpha(e, alpha);
    const std::size_t dv = e.module->dim(), dd = e.module->algebra()->dim();
    if (!is_alternating(ka.form)) {
        out.which = OsbornCase::DivisionRing;
        ensure(dv == dd, "V is not one-dimensional over D");
    } else {
        out.which = OsbornCase::M2Symplectic;
        auto theta = theta_alpha(ka);
        ensure(theta.matrix == -Mat<F>::identity(f, ka.codomain->dim()), "theta_alpha is not -1");
        ensure(ka.codomain->actions(0) == ka.codomain->actions(1), "the two actions on K_alpha differ");
        ensure(e.module->algebra()->is_commutative(), "D is not commutative");
        ensure(dv == 2 * dd, "V is not two-dimensional over D");
    }
    out.form = std::move(ka);
    return out;
}

/// Re-checks the witnesses of an Osborn verdict.
template <Field F>
bool verify_osborn(const AntiEndo<F>& alpha, const OsbornVerdict<F>& v, std::uint64_t budget = 1u << 20) {
    const Algebra<F>& w = *alpha.algebra;
    const F& f = w.field();
    switch (v.which) {
    case OsbornCase::DxDop: {
        if (!v.iso || v.central_idempotents.size() != 2) return false;
        const Mat<F>& iso = *v.iso;
        const std::size_t db = v.block.size();
        if (!is_invertible(iso)) return false;
        CoordinateSolver<F> bc(f, w.dim(), v.block);
        auto elem = [&](const Vec<F>& c) { return bc.combination(c); };
        for (std::size_t i = 0; i < w.dim(); ++i)
            for (std::size_t j = 0; j < w.dim(); ++j) {
                Vec<F> lhs = iso * w.product(i, j);
                Vec<F> xi = iso.col(i), xj = iso.col(j);
                Vec<F> a1(xi.begin(), xi.begin() + db), b1(xi.begin() + db, xi.end());
                Vec<F> a2(xj.begin(), xj.begin() + db), b2(xj.begin() + db, xj.end());
                Vec<F> first = bc.coords(w.mul(elem(a1), elem(a2)));
                Vec<F> second = bc.coords(w.mul(elem(b2), elem(b1)));  // product of D^op
                first.insert(first.end(), second.begin(), second.end());
                if (!vec_equal(f, lhs, first)) return false;
            }
        // D has no nontrivial idempotents
        bool clean = true;
        detail::scan_elements(f, db, budget, [&](const Vec<F>& c) {
            Vec<F> x = elem(c);
            if (!vec_is_zero(f, x) && !vec_equal(f, x, v.central_idempotents[0]) && detail::is_idempotent(w, x)) clean = false;
            return !clean;
        });
        return clean;
    }
    case OsbornCase::DivisionRing: {
        bool clean = true;
        bool complete = detail::scan_elements(f, w.dim(), budget, [&](const Vec<F>& x) {
            if (!detail::is_trivial_idempotent(w, x) && detail::is_idempotent(w, x)) clean = false;
            return !clean;
        });
        return complete && clean && v.form && !is_alternating(v.form->form);
    }
    case OsbornCase::M2Symplectic: {
        if (!v.form) return false;
        auto rep = adjoints(v.form->form);
        return is_alternating(v.form->form) && rep.right_regular && rep.left_regular;
    }
    }
    return false;
}

}  // namespace genform
