#pragma once

// Randomized property checks shared by the unit suite and the acceptance runner.

#include <functional>
#include <random>
#include <sstream>

#include "genform/corresp.hpp"

namespace genform::props {

using P = PrimeField;

struct Stats {
    explicit Stats(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::size_t nontrivial = 0;  // instances exercising the non-vacuous branch
    std::string first_failure;

    void fail(const std::string& why) {
        if (failures++ == 0) first_failure = why;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin() { return below(2) == 1; }
    P field() { return P(coin() ? 2 : 3); }

    Vec<P> vec(const P& f, std::size_t n) {
        Vec<P> v(n);
        for (auto& x : v) x = f.element(below(f.characteristic()));
        return v;
    }
    Mat<P> mat(const P& f, std::size_t r, std::size_t c) {
        Mat<P> m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = f.element(below(f.characteristic()));
        return m;
    }

    /// Incidence algebra of a random partial order on {0, ..., n-1} compatible with the natural order.
    AlgebraPtr<P> poset_algebra(const P& f, std::size_t n) {
        std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = coin();
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (rel[i][k] && rel[k][j]) rel[i][j] = true;
        return structured_subalgebra(f, n, rel);
    }

    /// Small algebras of dimension <= 6.
    AlgebraPtr<P> algebra(const P& f) {
        switch (below(8)) {
        case 0: return field_algebra(f);
        case 1: return upper_triangular(f, 2);
        case 2: return matrix_algebra(f, 2);
        case 3: return product_algebra(*field_algebra(f), *field_algebra(f));
        case 4: return extension_algebra(f, {0, 0, 1});  // dual numbers
        case 5: return extension_algebra(f, {1, 1, 1});
        case 6: return poset_algebra(f, 3);
        default: return product_algebra(*upper_triangular(f, 2), *field_algebra(f));
        }
    }

    /// A random right module of dimension 1..limit, or nullptr when none was produced.
    ModulePtr<P> module(const AlgebraPtr<P>& r, std::size_t limit) {
        const P& f = r->field();
        auto reg = regular_module(r);
        for (int attempt = 0; attempt < 8; ++attempt) {
            ModulePtr<P> m;
            switch (below(4)) {
            case 0: m = reg; break;
            case 1: {
                auto sub = generated_submodule(*reg, {vec(f, r->dim())});
                m = quotient_module(*reg, sub);
                break;
            }
            case 2: m = quotient_module(*reg, generated_submodule(*reg, {vec(f, r->dim()), vec(f, r->dim())})); break;
            default: {
                auto a = quotient_module(*reg, generated_submodule(*reg, {vec(f, r->dim())}));
                auto b = quotient_module(*reg, generated_submodule(*reg, {vec(f, r->dim())}));
                if (a->dim() + b->dim() <= limit) m = direct_sum(*a, *b);
            }
            }
            if (m && m->dim() >= 1 && m->dim() <= limit) return m;
        }
        return nullptr;
    }

    /// A random element of a span, given by its basis.
    std::vector<Vec<P>> combination(const P& f, const std::vector<std::vector<Vec<P>>>& basis, std::size_t entries, std::size_t len) {
        std::vector<Vec<P>> out(entries, zero_vec(f, len));
        for (const auto& g : basis) {
            auto c = f.element(below(f.characteristic()));
            for (std::size_t i = 0; i < entries; ++i) out[i] = vec_add(f, out[i], vec_scale(f, c, g[i]));
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

/// K = N1 (x) N2 with side 0 acting on N1 and side 1 on N2.
inline DoublePtr<P> tensor_double(const RightModule<P>& n1, const RightModule<P>& n2) {
    const P& f = n1.field();
    std::vector<Mat<P>> p, q;
    for (std::size_t s = 0; s < n1.algebra()->dim(); ++s) {
        p.push_back(kron(n1.action_basis(s), Mat<P>::identity(f, n2.dim())));
        q.push_back(kron(Mat<P>::identity(f, n1.dim()), n2.action_basis(s)));
    }
    return make_double(n1.algebra(), n1.dim() * n2.dim(), std::move(p), std::move(q), "N1xN2");
}

/// A random double module of dimension <= 6 over r, together with an involutive anti-automorphism when one is at hand.
struct DoubleSample {
    DoublePtr<P> k;
    std::optional<DblAntiAuto<P>> theta;
};

inline DoubleSample random_double(Gen& g, const AlgebraPtr<P>& r) {
    if (g.coin()) {
        auto as = enumerate_anti_endos(r);
        std::vector<AntiEndo<P>> inv;
        for (const auto& a : as)
            if (a.bijective && a.is_involution()) inv.push_back(a);
        if (!inv.empty()) {
            const auto& a = inv[g.below(inv.size())];
            auto k = standard_double(a);
            return {k, make_dbl_anti_auto(k, a.matrix)};
        }
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto n = g.module(r, 2);
        if (!n || n->dim() * n->dim() > 6) continue;
        auto k = tensor_double(*n, *n);
        return {k, make_dbl_anti_auto(k, detail::swap_matrix(r->field(), n->dim()))};
    }
    return {standard_double(identity_anti(r)), std::nullopt};
}

inline std::string describe(const AlgebraPtr<P>& r, const ModulePtr<P>& m, const DoublePtr<P>& k) {
    std::ostringstream os;
    os << "F" << r->field().characteristic() << " algebra dim " << r->dim() << ", module dim " << m->dim() << ", K dim " << k->dim();
    return os.str();
}

inline std::vector<Vec<P>> gram_transpose_theta(const BilinearForm<P>& b, const DblAntiAuto<P>& theta) {
    const std::size_t m = b.m();
    std::vector<Vec<P>> out(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out[i * m + j] = theta.matrix * b.at(j, i);
    return out;
}

/// A random (module, alpha) pair with its K_alpha.
inline std::optional<KAlpha<P>> random_kalpha(Gen& g) {
    auto f = g.field();
    auto r = g.algebra(f);
    auto m = g.module(r, 4);
    if (!m) return std::nullopt;
    auto e = endo_algebra(m);
    if (e.algebra->dim() > 6) return std::nullopt;
    auto as = enumerate_anti_endos(e.algebra);
    if (as.empty()) return std::nullopt;
    return tensor_alpha(e, as[g.below(as.size())]);
}

/// P_s Q_t = Q_t P_s on random standard, tensor, quotient and K_alpha doubles.
inline Stats commuting_law(Gen& g, std::size_t n) {
    Stats st{"double-module commuting law"};
    while (st.instances < n) {
        auto f = g.field();
        auto r = g.algebra(f);
        auto sample = random_double(g, r);
        std::vector<DoublePtr<P>> ks{sample.k};
        // quotient by the double submodule generated by a random vector
        std::vector<Vec<P>> sub{g.vec(f, sample.k->dim())};
        for (std::size_t grow = 0; grow < sub.size() && sub.size() <= sample.k->dim(); ++grow)
            for (int side = 0; side < 2; ++side)
                for (const auto& a : sample.k->actions(side)) {
                    Vec<P> v = a * sub[grow];
                    auto span = span_basis(f, sample.k->dim(), sub);
                    std::vector<Vec<P>> ext = span;
                    ext.push_back(v);
                    if (span_basis(f, sample.k->dim(), ext).size() > span.size()) sub.push_back(v);
                }
        ks.push_back(quotient_double(*sample.k, span_basis(f, sample.k->dim(), sub)));
        if (ks.back()->dim() > 0 && ks.back()->dim() < sample.k->dim()) ++st.nontrivial;
        if (auto ka = random_kalpha(g)) ks.push_back(ka->codomain);
        for (const auto& k : ks) {
            ++st.instances;
            bool ok = true;
            for (const auto& a : k->actions(0))
                for (const auto& b : k->actions(1)) ok = ok && a * b == b * a;
            st.expect(ok, "actions do not commute: " + k->name());
            try {
                validate_double(*k);
            } catch (const Error& e) {
                st.fail(std::string("validator rejects: ") + e.what());
            }
        }
    }
    return st;
}

/// validate_form accepts a Gram tensor exactly when it lies in the solved space of compatible forms.
inline Stats form_compatibility(Gen& g, std::size_t n) {
    Stats st{"form compatibility"};
    while (st.instances < n) {
        auto f = g.field();
        auto r = g.algebra(f);
        auto m = g.module(r, 4);
        if (!m) continue;
        auto k = random_double(g, r).k;
        const std::size_t mm = m->dim() * m->dim(), kd = k->dim();
        auto space = form_space(m, k);
        std::vector<Vec<P>> gram = g.combination(f, space, mm, kd);
        if (g.coin()) gram[g.below(mm)] = g.vec(f, kd);
        std::vector<Vec<P>> flat;
        for (const auto& s : space) {
            Vec<P> v;
            for (const auto& x : s) v.insert(v.end(), x.begin(), x.end());
            flat.push_back(v);
        }
        Vec<P> target;
        for (const auto& x : gram) target.insert(target.end(), x.begin(), x.end());
        CoordinateSolver<P> cs(f, mm * kd, flat);
        const bool in_space = cs.try_coords(target).has_value();
        bool accepted = true;
        try {
            validate_form(BilinearForm<P>{m, k, gram, "b"});
        } catch (const Error& e) {
            accepted = false;
            if (e.kind() != ErrorKind::CompatibilityViolation) st.fail(std::string("unexpected error ") + e.what());
        }
        ++st.instances;
        if (!in_space) ++st.nontrivial;
        st.expect(accepted == in_space, "validator and solved form space disagree: " + describe(r, m, k));
    }
    return st;
}

/// rAd(b1 _|_ b2) equals block_diag(rAd(b1), rAd(b2)) under the restriction isomorphism of duals.
inline Stats orthogonal_sum_blocks(Gen& g, std::size_t n) {
    Stats st{"rAd of an orthogonal sum is the block sum"};
    while (st.instances < n) {
        auto f = g.field();
        auto r = g.algebra(f);
        auto m1 = g.module(r, 3), m2 = g.module(r, 3);
        if (!m1 || !m2) continue;
        auto k = random_double(g, r).k;
        auto b1 = make_form(m1, k, g.combination(f, form_space(m1, k), m1->dim() * m1->dim(), k->dim()));
        auto b2 = make_form(m2, k, g.combination(f, form_space(m2, k), m2->dim() * m2->dim(), k->dim()));
        auto s = orthogonal_sum(b1, b2);
        auto r1 = adjoints(b1), r2 = adjoints(b2), rs = adjoints(s);
        const std::size_t d1 = m1->dim(), d2 = m2->dim(), kd = k->dim();
        const std::size_t n1 = r1.dual1.basis.size(), n2 = r2.dual1.basis.size();
        ++st.instances;
        if (rs.dual1.basis.size() != n1 + n2) {
            st.fail("dual of the sum has the wrong dimension");
            continue;
        }
        Mat<P> split(f, n1 + n2, n1 + n2);
        for (std::size_t c = 0; c < rs.dual1.basis.size(); ++c) {
            const auto& h = rs.dual1.basis[c];
            Mat<P> h1(f, kd, d1), h2(f, kd, d2);
            for (std::size_t i = 0; i < kd; ++i) {
                for (std::size_t j = 0; j < d1; ++j) h1(i, j) = h(i, j);
                for (std::size_t j = 0; j < d2; ++j) h2(i, j) = h(i, d1 + j);
            }
            auto c1 = r1.dual1.coords(h1), c2 = r2.dual1.coords(h2);
            for (std::size_t i = 0; i < n1; ++i) split(i, c) = c1[i];
            for (std::size_t i = 0; i < n2; ++i) split(n1 + i, c) = c2[i];
        }
        if (r1.right_regular && r2.right_regular) ++st.nontrivial;
        st.expect(is_invertible(split), "restriction of duals is not bijective");
        st.expect(split * rs.rad == block_diag(r1.rad, r2.rad), "rAd of the sum differs from the block sum: " + describe(r, s.module, k));
        st.expect(rs.right_regular == (r1.right_regular && r2.right_regular), "right regularity is not additive");
        st.expect(rs.right_kernel.size() == r1.right_kernel.size() + r2.right_kernel.size(), "right kernels do not add");
    }
    return st;
}

/// A random theta-symmetric form b + theta o b^T on a random module.
struct SymmetricSample {
    AlgebraPtr<P> r;
    BilinearForm<P> b;
    DblAntiAuto<P> theta;
};

inline std::optional<SymmetricSample> symmetric_sample(Gen& g, bool symmetrize) {
    auto f = g.field();
    auto r = g.algebra(f);
    auto sample = random_double(g, r);
    if (!sample.theta) return std::nullopt;
    auto m = g.coin() ? regular_module(r) : g.module(r, 4);
    if (!m || m->dim() > 6) return std::nullopt;
    const std::size_t mm = m->dim() * m->dim();
    auto gram = g.combination(f, form_space(m, sample.k), mm, sample.k->dim());
    BilinearForm<P> b{m, sample.k, gram, "b"};
    if (symmetrize) {
        auto t = gram_transpose_theta(b, *sample.theta);
        for (std::size_t i = 0; i < mm; ++i) b.gram[i] = vec_add(f, b.gram[i], t[i]);
    }
    validate_form(b);
    return SymmetricSample{r, b, *sample.theta};
}

/// For theta-symmetric b, right regularity and left regularity coincide.
inline Stats symmetric_regularity(Gen& g, std::size_t n) {
    Stats st{"theta-symmetric implies right-regular iff left-regular"};
    while (st.instances < n) {
        auto s = symmetric_sample(g, true);
        if (!s) continue;
        ++st.instances;
        st.expect(is_theta_symmetric(s->b, s->theta), "symmetrized form is not theta-symmetric");
        auto rep = adjoints(s->b);
        if (rep.right_regular) ++st.nontrivial;
        st.expect(rep.right_regular == rep.left_regular, "regularity differs between sides: " + describe(s->r, s->b.module, s->b.codomain));
    }
    return st;
}

/// Every right theta-asymmetry lambda satisfies u_theta o lAd = rAd o lambda.
inline Stats asymmetry_identity(Gen& g, std::size_t n) {
    Stats st{"asymmetry identity"};
    while (st.instances < n) {
        auto s = symmetric_sample(g, g.below(4) != 0);
        if (!s) continue;
        auto res = right_asymmetry(s->b, s->theta);
        ++st.instances;
        if (!res.lambda) {
            st.expect(!is_theta_symmetric(s->b, s->theta), "symmetric form has no asymmetry (identity should qualify)");
            continue;
        }
        ++st.nontrivial;
        auto rep = adjoints(s->b);
        st.expect(is_right_asymmetry(s->b, s->theta, *res.lambda), "returned lambda fails b(x,y)^theta = b(y, lambda x)");
        st.expect(u_theta(s->theta, rep.dual0, rep.dual1) * rep.lad == rep.rad * *res.lambda,
                  "u_theta lAd != rAd lambda: " + describe(s->r, s->b.module, s->b.codomain));
        if (rep.right_regular) st.expect(res.unique, "regular form with non-unique asymmetry");
    }
    return st;
}

inline bool alpha_compatible(const BilinearForm<P>& b, const EndoAlgebra<P>& e, const AntiEndo<P>& alpha) {
    const P& f = b.module->field();
    const std::size_t m = b.m();
    for (std::size_t w = 0; w < e.algebra->dim(); ++w) {
        const Mat<P> lw = e.rep[w], la = e.represent(alpha.matrix.col(w));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!vec_equal(f, b.value(lw.col(i), unit_vec(f, m, j)), b.value(unit_vec(f, m, i), la.col(j)))) return false;
    }
    return true;
}

/// universal_map(b) exists exactly when b(wx, y) = b(x, alpha(w) y), and then b = f o b_alpha.
inline Stats universal_property(Gen& g, std::size_t n) {
    Stats st{"universal-map existence iff alpha-compatibility"};
    while (st.instances < n) {
        auto ka = random_kalpha(g);
        if (!ka) continue;
        const P& f = ka->endo.module->field();
        const auto& m = ka->endo.module;
        const std::size_t mm = m->dim() * m->dim();
        // target double: K_alpha itself or a random tensor double
        DoublePtr<P> k = ka->codomain;
        if (g.coin())
            if (auto nn = g.module(m->algebra(), 2); nn && nn->dim() * nn->dim() <= 6) k = tensor_double(*nn, *nn);
        BilinearForm<P> b;
        if (g.coin()) {
            // push b_alpha forward along a random double-module map
            auto homs = dbl_hom_space(*ka->codomain, *k);
            Mat<P> h(f, k->dim(), ka->codomain->dim());
            for (const auto& x : homs) h = h + x.scaled(f.element(g.below(f.characteristic())));
            b = pushforward_form(ka->form, k, h);
        } else {
            b = make_form(m, k, g.combination(f, form_space(m, k), mm, k->dim()));
        }
        const bool compatible = alpha_compatible(b, ka->endo, ka->alpha);
        auto u = universal_map(b, *ka);
        ++st.instances;
        if (compatible) ++st.nontrivial;
        st.expect(u.has_value() == compatible, "universal map existence disagrees with compatibility: " + describe(m->algebra(), m, k));
        if (u) {
            bool factors = true;
            for (std::size_t c = 0; c < mm; ++c) factors = factors && vec_equal(f, b.gram[c], *u * ka->form.gram[c]);
            st.expect(factors, "b differs from f o b_alpha");
            st.expect(is_dbl_hom(*ka->codomain, *k, *u), "universal map is not a double-module map");
        }
    }
    return st;
}

/// The relations of K_alpha are stable under both pre-quotient actions (and the swap for involutions);
/// pi o sigma = id and pi kills every relation.
inline Stats relation_descent(Gen& g, std::size_t n) {
    Stats st{"relation-space descent"};
    while (st.instances < n) {
        auto ka = random_kalpha(g);
        if (!ka) continue;
        const auto& m = ka->endo.module;
        const P& f = m->field();
        const auto& qs = ka->tensor.space;
        const auto id = Mat<P>::identity(f, m->dim());
        ++st.instances;
        std::vector<Mat<P>> maps;
        for (std::size_t s = 0; s < m->algebra()->dim(); ++s) {
            maps.push_back(kron(m->action_basis(s), id));
            maps.push_back(kron(id, m->action_basis(s)));
        }
        if (ka->alpha.is_involution()) {
            maps.push_back(detail::swap_matrix(f, m->dim()));
            ++st.nontrivial;
        }
        for (const auto& t : maps)
            for (const auto& rel : qs.relations()) st.expect(qs.in_subspace(t * rel), "relation space is not stable");
        st.expect((qs.projection() * qs.section()).is_identity(), "pi o sigma is not the identity");
        for (const auto& rel : qs.relations()) st.expect(vec_is_zero(f, qs.project(rel)), "pi does not kill a relation");
        st.expect(qs.dim() + qs.relations().size() == m->dim() * m->dim(), "relations and quotient do not fill the tensor square");
    }
    return st;
}

/// Runs every suite with `per_suite` instances each from a fixed seed.
inline std::vector<Stats> run_all(std::uint64_t seed, std::size_t per_suite) {
    std::vector<std::function<Stats(Gen&, std::size_t)>> suites{commuting_law, form_compatibility, orthogonal_sum_blocks, symmetric_regularity,
                                                              asymmetry_identity, universal_property, relation_descent};
    std::vector<Stats> out;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        Gen g(seed + i);
        out.push_back(suites[i](g, per_suite));
    }
    return out;
}

}  // namespace genform::props
