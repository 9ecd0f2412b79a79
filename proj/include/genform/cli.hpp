#pragma once

#include <fstream>
#include <functional>
#include <sstream>

#include "genform/classify.hpp"
#include "genform/format.hpp"
#include "genform/report.hpp"

namespace genform {

struct CommandOptions {
    SearchOptions search;
    bool asymmetry = false;  // form-report: solve for theta-asymmetries
    bool theta = false;      // correspond: build theta_alpha
};

namespace detail {

/// Runs fn, turning parse and library errors into report errors with the matching exit code.
inline void guarded(Report& rep, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        rep.error("ParseError", e.message(), ExitCode::Invalid, e.line(), e.column());
    } catch (const Error& e) {
        rep.error(std::string(to_string(e.kind())), e.what(), exit_for(e.kind()));
    } catch (const std::out_of_range& e) {
        rep.error("UnknownName", e.what(), ExitCode::Invalid);
    }
}

template <Field F>
Json vectors_json(const F& f, const std::vector<Vec<F>>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(to_json(f, v));
    return out;
}

/// Same algebra structure and the same action matrices.
template <Field F>
bool same_module(const ModulePtr<F>& a, const ModulePtr<F>& b) {
    return a == b || (a->algebra()->same_as(*b->algebra()) && a->actions() == b->actions());
}

template <Field F>
const std::string& require(const Workspace<F>& ws, const std::string& name, std::initializer_list<const char*> kinds) {
    auto it = ws.kind_of.find(name);
    if (it == ws.kind_of.end()) throw std::out_of_range("no object named '" + name + "'");
    bool ok = false;
    for (const char* k : kinds) ok = ok || it->second == k;
    if (!ok) throw std::out_of_range("'" + name + "' is a " + it->second);
    for (const auto& d : ws.declarations)
        if (d.name == name && !d.valid) fail(ErrorKind::Unsupported, "'" + name + "' failed validation: " + d.message);
    return it->second;
}

/// The endomorphism algebra named directly, or the first declared one of the named module
/// whose algebra carries alpha.
template <Field F>
std::pair<std::string, EndoAlgebra<F>> resolve_endo(const Workspace<F>& ws, const std::string& name, const AntiEndo<F>& alpha) {
    const auto& kind = require(ws, name, {"endo", "module", "algebra"});
    if (kind == "endo") {
        const auto& e = ws.endos.at(name);
        if (!e.algebra->same_as(*alpha.algebra)) fail(ErrorKind::AlgebraMismatch, "'" + alpha.name + "' is not defined on the endomorphism algebra '" + name + "'");
        return {name, e};
    }
    if (kind == "algebra") {
        const auto& w = ws.algebras.at(name);
        if (!w->same_as(*alpha.algebra)) fail(ErrorKind::AlgebraMismatch, "'" + alpha.name + "' is not defined on '" + name + "'");
        return {name + " (left regular)", left_regular_endo(w)};
    }
    const auto& m = ws.modules.at(name);
    for (const auto& en : ws.names("endo")) {
        const auto& e = ws.endos.at(en);
        if (same_module(e.module, m) && e.algebra->same_as(*alpha.algebra)) return {en, e};
    }
    fail(ErrorKind::AlgebraMismatch, "no declared endomorphism algebra of '" + name + "' carries '" + alpha.name + "'");
}

template <Field F>
std::optional<std::pair<std::string, EndoAlgebra<F>>> endo_of_module(const Workspace<F>& ws, const ModulePtr<F>& m) {
    for (const auto& en : ws.names("endo"))
        if (same_module(ws.endos.at(en).module, m)) return std::make_pair(en, ws.endos.at(en));
    return std::nullopt;
}

template <Field F>
Json matching_antis(const Workspace<F>& ws, const AntiEndo<F>& a) {
    Json out = Json::array();
    for (const auto& n : ws.names("anti")) {
        const auto& b = ws.antis.at(n);
        if (b.algebra->same_as(*a.algebra) && b.matrix == a.matrix) out.push_back(n);
    }
    return out;
}

template <Field F>
Json anti_json(const Workspace<F>& ws, const AntiEndo<F>& a) {
    Json j;
    j["matrix"] = to_json(a.matrix);
    j["bijective"] = a.bijective;
    j["involution"] = a.is_involution();
    j["identity"] = a.is_identity();
    j["matches"] = matching_antis(ws, a);
    return j;
}

}  // namespace detail

/// Validates every declaration; each invalid object becomes a failed check.
template <Field F>
Report cmd_check(const Workspace<F>& ws) {
    Report rep("check");
    auto& r = rep.result();
    r["field"] = ws.field.name();
    Json decls = Json::array();
    std::size_t invalid = 0;
    for (const auto& d : ws.declarations) {
        Json j;
        j["kind"] = d.kind;
        j["name"] = d.name;
        j["constructor"] = d.constructor;
        j["line"] = d.line;
        j["valid"] = d.valid;
        if (!d.valid) {
            ++invalid;
            j["violation"] = d.error_kind;
            j["message"] = d.message;
            j["indices"] = d.indices;
        }
        decls.push_back(std::move(j));
        rep.check(d.kind + " " + d.name + " valid", d.valid);
    }
    r["declarations"] = std::move(decls);
    r["invalid"] = invalid;
    return rep;
}

/// Adjoint regularity, the corresponding anti-endomorphisms, and theta-symmetry against
/// every declared anti-automorphism of the codomain.
template <Field F>
Report cmd_form_report(const Workspace<F>& ws, const std::string& name, const CommandOptions& opts = {}) {
    Report rep("form-report");
    detail::guarded(rep, [&] {
        detail::require(ws, name, {"form"});
        const auto& b = ws.forms.at(name);
        const F& f = ws.field;
        auto a = adjoints(b);
        auto& r = rep.result();
        r["form"] = name;
        r["module_dim"] = b.m();
        r["codomain_dim"] = b.codomain->dim();
        r["dual0_dim"] = a.dual0.basis.size();
        r["dual1_dim"] = a.dual1.basis.size();
        r["right_injective"] = a.right_injective;
        r["right_regular"] = a.right_regular;
        r["left_injective"] = a.left_injective;
        r["left_regular"] = a.left_regular;
        r["right_kernel"] = detail::vectors_json(f, a.right_kernel);
        r["left_kernel"] = detail::vectors_json(f, a.left_kernel);
        auto endo = detail::endo_of_module(ws, b.module);
        if (endo) {
            r["endo"] = endo->first;
            if (a.right_regular) r["corresponding"] = detail::anti_json(ws, corresponding_anti_endo(b, endo->second, a));
            if (a.left_regular) r["left_corresponding"] = detail::anti_json(ws, left_corresponding_anti_endo(b, endo->second, a));
        }
        Json thetas = Json::array();
        for (const auto& tn : ws.names("theta")) {
            const auto& t = ws.thetas.at(tn);
            if (t.module != b.codomain) continue;
            Json j;
            j["name"] = tn;
            j["involution"] = t.involution;
            j["symmetric"] = is_theta_symmetric(b, t);
            if (opts.asymmetry) {
                auto as = right_asymmetry(b, t);
                j["asymmetry_exists"] = as.lambda.has_value();
                j["asymmetry_space_dim"] = as.solution_dim;
                j["asymmetry_unique"] = as.unique;
                if (as.lambda) j["asymmetry"] = to_json(*as.lambda);
            }
            thetas.push_back(std::move(j));
        }
        r["thetas"] = std::move(thetas);
    });
    return rep;
}

/// K_alpha, regularity of b_alpha, the round trip alpha(b_alpha) = alpha, and similarity of
/// every declared form on the module to b_alpha and to each other.
template <Field F>
Report cmd_correspond(const Workspace<F>& ws, const std::string& module, const std::string& alpha_name, const CommandOptions& opts = {}) {
    Report rep("correspond");
    detail::guarded(rep, [&] {
        detail::require(ws, alpha_name, {"anti"});
        const auto& alpha = ws.antis.at(alpha_name);
        auto [ename, e] = detail::resolve_endo(ws, module, alpha);
        auto ka = tensor_alpha(e, alpha);
        auto a = adjoints(ka.form);
        auto& r = rep.result();
        r["endo"] = ename;
        r["alpha"] = alpha_name;
        r["alpha_bijective"] = alpha.bijective;
        r["alpha_involution"] = alpha.is_involution();
        r["k_alpha_dim"] = ka.codomain->dim();
        r["b_alpha_right_regular"] = a.right_regular;
        r["b_alpha_left_regular"] = a.left_regular;
        if (a.right_regular) {
            bool round = corresponding_anti_endo(ka.form, e, a).matrix == alpha.matrix;
            r["round_trip"] = round;
            rep.check("alpha(b_alpha) = alpha", round);
        }
        if (opts.theta) {
            auto th = theta_alpha(ka);
            r["theta_alpha"] = to_json(th.matrix);
            bool sym = is_theta_symmetric(ka.form, th);
            r["b_alpha_theta_symmetric"] = sym;
            rep.check("b_alpha is theta_alpha-symmetric", sym);
        }
        std::vector<std::string> names;
        for (const auto& fn : ws.names("form"))
            if (detail::same_module(ws.forms.at(fn).module, e.module)) names.push_back(fn);
        Json forms = Json::array();
        for (const auto& fn : names) {
            const auto& b = ws.forms.at(fn);
            auto ab = adjoints(b);
            Json j;
            j["name"] = fn;
            j["right_regular"] = ab.right_regular;
            if (ab.right_regular) j["corresponds_to_alpha"] = corresponding_anti_endo(b, e, ab).matrix == alpha.matrix;
            j["universal_map"] = universal_map(b, ka).has_value();
            auto sim = is_similar(ka.form, b, opts.search);
            j["similar_to_b_alpha"] = status_json(sim.status);
            if (sim.status == SearchStatus::Inconclusive) rep.inconclusive("similarity of b_alpha and " + fn);
            forms.push_back(std::move(j));
        }
        r["forms"] = std::move(forms);
        Json table = Json::array();
        for (std::size_t i = 0; i < names.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < names.size(); ++j) {
                if (i == j) {
                    row.push_back("found");
                    continue;
                }
                auto s = is_similar(ws.forms.at(names[i]), ws.forms.at(names[j]), opts.search).status;
                if (s == SearchStatus::Inconclusive) rep.inconclusive("similarity of " + names[i] + " and " + names[j]);
                row.push_back(to_string(s));
            }
            table.push_back(std::move(row));
        }
        r["similarity_names"] = names;
        r["similarity"] = std::move(table);
    });
    return rep;
}

/// Involution type, the invariant-idempotent scan and, when it holds, the Osborn case.
template <Field F>
Report cmd_classify(const Workspace<F>& ws, const std::string& algebra, const std::string& alpha_name, const CommandOptions& opts = {}) {
    Report rep("classify");
    detail::guarded(rep, [&] {
        detail::require(ws, alpha_name, {"anti"});
        const auto& alpha = ws.antis.at(alpha_name);
        auto [ename, e] = detail::resolve_endo(ws, algebra, alpha);
        const F& f = ws.field;
        auto& r = rep.result();
        r["algebra"] = algebra;
        r["alpha"] = alpha_name;
        r["involution"] = alpha.is_involution();
        try {
            auto t = classify_involution(e, alpha, opts.search);
            Json j;
            j["kind"] = to_string(t.kind);
            j["alternating"] = t.alternating;
            if (t.theta) j["theta"] = to_json(*t.theta);
            j["witness"] = t.witness;
            r["involution_type"] = std::move(j);
        } catch (const Error& err) {
            r["involution_type"] = Json{{"not_applicable", std::string(to_string(err.kind()))}};
        }
        auto scan = invariant_idempotent_hypothesis(alpha, opts.search.budget);
        r["hypothesis"] = to_string(scan.status);
        if (scan.status == ScanStatus::Inconclusive) rep.inconclusive("invariant idempotent scan");
        if (scan.status == ScanStatus::Fails) {
            const auto& w = *alpha.algebra;
            const auto& x = *scan.witness;
            r["hypothesis_witness"] = to_json(f, x);
            rep.check("witness is a nontrivial alpha-invariant idempotent",
                      detail::is_idempotent(w, x) && !detail::is_trivial_idempotent(w, x) && vec_equal(f, alpha.apply(x), x));
            r["osborn"] = "skipped";
            return;
        }
        if (scan.status != ScanStatus::Holds) {
            r["osborn"] = "skipped";
            return;
        }
        try {
            auto v = osborn_classify(alpha, opts.search);
            Json j;
            j["case"] = to_string(v.which);
            j["central_idempotents"] = detail::vectors_json(f, v.central_idempotents);
            if (v.iso) j["iso"] = to_json(*v.iso);
            if (v.primitive) j["primitive_idempotent"] = to_json(f, *v.primitive);
            r["osborn"] = std::move(j);
            rep.check("osborn witnesses re-verify", verify_osborn(alpha, v, opts.search.budget));
        } catch (const Error& err) {
            r["osborn"] = Json{{"error", std::string(to_string(err.kind()))}, {"message", err.what()}};
            if (exit_for(err.kind()) == ExitCode::Inconclusive) rep.inconclusive("osborn classification");
        }
    });
    return rep;
}

/// All anti-endomorphisms of an algebra, with their inner-equivalence classes.
template <Field F>
Report cmd_enumerate(const Workspace<F>& ws, const std::string& algebra, const CommandOptions& opts = {}) {
    Report rep("enumerate");
    detail::guarded(rep, [&] {
        const auto& kind = detail::require(ws, algebra, {"algebra", "endo"});
        auto w = kind == "endo" ? ws.endos.at(algebra).algebra : ws.algebras.at(algebra);
        auto all = enumerate_anti_endos(w, opts.search.budget);
        auto& r = rep.result();
        r["algebra"] = algebra;
        r["count"] = all.size();
        std::size_t bij = 0, inv = 0;
        Json items = Json::array();
        for (const auto& a : all) {
            bij += a.bijective;
            inv += a.is_involution();
            items.push_back(detail::anti_json(ws, a));
        }
        r["bijective"] = bij;
        r["involutions"] = inv;
        std::vector<std::size_t> cls(all.size(), 0), reps;
        for (std::size_t i = 0; i < all.size(); ++i) {
            cls[i] = reps.size();
            for (std::size_t c = 0; c < reps.size(); ++c) {
                auto s = is_inner_equivalent(all[reps[c]], all[i], opts.search).status;
                if (s == SearchStatus::Inconclusive) rep.inconclusive("inner equivalence of enumerated maps");
                if (s == SearchStatus::Found) {
                    cls[i] = c;
                    break;
                }
            }
            if (cls[i] == reps.size()) reps.push_back(i);
        }
        const std::size_t classes = reps.size();
        for (std::size_t i = 0; i < all.size(); ++i) items[i]["inner_class"] = cls[i];
        r["inner_classes"] = classes;
        r["anti_endos"] = std::move(items);
    });
    return rep;
}

}  // namespace genform
