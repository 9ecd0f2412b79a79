#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genform/catalog.hpp"
#include "genform/corresp.hpp"

namespace genform {

/// Problem-file syntax error or unresolved reference, with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what), line_(line), col_(col), message_(what) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_, col_;
    std::string message_;
};

struct Token {
    std::string text;
    std::size_t line = 0, col = 0;
};

/// One declaration: `<kind> <name> = <constructor> args...`, optionally followed by a
/// token block closed by a line holding only `end`.
struct Statement {
    std::vector<Token> head;
    std::vector<Token> body;
    bool has_body = false;
};

namespace detail {

inline std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            toks.push_back({raw.substr(i, j - i), lineno, i + 1});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

/// Constructors whose arguments continue in a block terminated by `end`.
inline bool takes_body(const std::string& kind, const std::string& ctor) {
    static const std::set<std::pair<std::string, std::string>> with_body{
        {"algebra", "pattern"}, {"algebra", "structconsts"}, {"algebra", "span"},
        {"module", "matrices"}, {"module", "actions"},
        {"double", "matrices"}, {"double", "actions"}, {"double", "quotient"},
        {"anti", "matrix"}, {"form", "gram"}, {"theta", "matrix"},
    };
    return with_body.count({kind, ctor}) > 0;
}

}  // namespace detail

/// Splits a problem file into statements; the first statement must be `field <p|0|Q>`.
inline std::vector<Statement> parse_statements(const std::string& text) {
    auto lines = detail::tokenize_lines(text);
    std::vector<Statement> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Statement s;
        s.head = lines[i];
        const auto& h = s.head;
        if (h[0].text == "end") throw ParseError("'end' without an open block", h[0].line, h[0].col);
        if (h[0].text != "field") {
            if (h.size() < 4 || h[2].text != "=") throw ParseError("expected '<kind> <name> = <constructor> ...'", h[0].line, h[0].col);
            if (detail::takes_body(h[0].text, h[3].text)) {
                s.has_body = true;
                bool closed = false;
                for (++i; i < lines.size(); ++i) {
                    if (lines[i].size() == 1 && lines[i][0].text == "end") {
                        closed = true;
                        break;
                    }
                    s.body.insert(s.body.end(), lines[i].begin(), lines[i].end());
                }
                if (!closed) throw ParseError("block is missing its 'end'", h[0].line, h[0].col);
            }
        }
        out.push_back(std::move(s));
    }
    if (out.empty() || out[0].head[0].text != "field") throw ParseError("file must start with 'field <p>' or 'field Q'", 1, 1);
    return out;
}

/// The declared characteristic: a prime p, or 0 for the rationals.
inline std::uint32_t declared_characteristic(const std::string& text) {
    auto st = parse_statements(text);
    const auto& h = st[0].head;
    if (h.size() != 2) throw ParseError("expected 'field <p>' or 'field Q'", h[0].line, h[0].col);
    if (h[1].text == "Q" || h[1].text == "0") return 0;
    try {
        std::size_t pos = 0;
        unsigned long p = std::stoul(h[1].text, &pos);
        if (pos != h[1].text.size() || !is_prime(p) || p >= (1ul << 31)) throw std::invalid_argument("bad");
        return static_cast<std::uint32_t>(p);
    } catch (const std::exception&) {
        throw ParseError("field must be a prime below 2^31 or Q", h[1].line, h[1].col);
    }
}

/// Validation outcome of one declaration.
struct Declaration {
    std::string kind, name, constructor;
    std::size_t line = 0;
    bool valid = true;
    std::string error_kind, message;
    std::vector<std::size_t> indices;
};

/// All objects declared in a problem file, by name. Endomorphism declarations are also
/// usable wherever an algebra (their W) or a module (their M) is expected.
template <Field F>
struct Workspace {
    F field;
    std::vector<Declaration> declarations;
    std::map<std::string, std::string> kind_of;
    std::map<std::string, AlgebraPtr<F>> algebras;
    std::map<std::string, ModulePtr<F>> modules;
    std::map<std::string, DoublePtr<F>> doubles;
    std::map<std::string, AntiEndo<F>> antis;
    std::map<std::string, EndoAlgebra<F>> endos;
    std::map<std::string, BilinearForm<F>> forms;
    std::map<std::string, DblAntiAuto<F>> thetas;
    std::map<std::string, MatrixSpace<F>> spaces;                          // matrix-backed modules and doubles
    std::map<std::string, std::pair<std::string, Mat<F>>> quotient_of;     // double -> (parent, projection)

    bool all_valid() const {
        for (const auto& d : declarations)
            if (!d.valid) return false;
        return true;
    }

    /// Names of the given kind in declaration order.
    std::vector<std::string> names(const std::string& kind) const {
        std::vector<std::string> out;
        for (const auto& d : declarations)
            if (d.kind == kind && d.valid) out.push_back(d.name);
        return out;
    }
};

namespace detail {

/// Raised when a declaration refers to an object whose own validation failed.
struct InvalidDependency {
    std::string name;
};

template <Field F>
class Loader {
public:
    explicit Loader(Workspace<F>& ws) : ws_(ws) {}

    void run(const std::vector<Statement>& statements) {
        for (std::size_t i = 1; i < statements.size(); ++i) declare(statements[i]);
    }

private:
    using Matrix = Mat<F>;

    void declare(const Statement& s) {
        const auto& h = s.head;
        static const std::set<std::string> kinds{"algebra", "module", "double", "anti", "endo", "form", "theta"};
        if (!kinds.count(h[0].text)) throw ParseError("unknown declaration kind '" + h[0].text + "'", h[0].line, h[0].col);
        const std::string& name = h[1].text;
        if (ws_.kind_of.count(name)) throw ParseError("name '" + name + "' is already declared", h[1].line, h[1].col);
        ws_.kind_of[name] = h[0].text;
        Declaration d;
        d.kind = h[0].text;
        d.name = name;
        d.constructor = h[3].text;
        d.line = h[0].line;
        stmt_ = &s;
        arg_ = 4;
        body_ = 0;
        try {
            build(h[0].text, name, h[3]);
            if (arg_ < h.size()) throw ParseError("unexpected argument '" + h[arg_].text + "'", h[arg_].line, h[arg_].col);
            if (body_ < s.body.size()) throw ParseError("block has " + std::to_string(s.body.size() - body_) + " surplus tokens", s.body[body_].line, s.body[body_].col);
        } catch (const Error& e) {
            d.valid = false;
            d.error_kind = std::string(to_string(e.kind()));
            d.message = e.what();
            d.indices = e.indices();
        } catch (const InvalidDependency& dep) {
            d.valid = false;
            d.error_kind = "InvalidDependency";
            d.message = "depends on invalid object '" + dep.name + "'";
        }
        ws_.declarations.push_back(std::move(d));
    }

    // --- token access ---

    const Token& arg(const std::string& what) {
        const auto& h = stmt_->head;
        if (arg_ >= h.size()) {
            const Token& last = h.back();
            throw ParseError("missing " + what, last.line, last.col + last.text.size());
        }
        return h[arg_++];
    }
    std::size_t count_arg(const std::string& what) {
        const Token& t = arg(what);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(t.text, &pos);
            if (pos != t.text.size() || v < 0 || v > 4096) throw std::invalid_argument("range");
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw ParseError(what + " must be a non-negative integer", t.line, t.col);
        }
    }
    const Token& body_token() {
        const auto& b = stmt_->body;
        if (body_ >= b.size()) {
            const Token& h = stmt_->head[0];
            throw ParseError("block ends early: more entries expected", h.line, h.col);
        }
        return b[body_++];
    }
    typename F::value_type scalar() {
        const Token& t = body_token();
        try {
            return ws_.field.parse(t.text);
        } catch (const Error& e) {
            throw ParseError(e.what(), t.line, t.col);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + t.text + "'", t.line, t.col);
        }
    }
    bool bit() {
        const Token& t = body_token();
        if (t.text != "0" && t.text != "1") throw ParseError("mask entries must be 0 or 1", t.line, t.col);
        return t.text == "1";
    }
    Matrix matrix(std::size_t r, std::size_t c) {
        Matrix m(ws_.field, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar();
        return m;
    }
    Vec<F> vector(std::size_t n) {
        Vec<F> v(n);
        for (auto& x : v) x = scalar();
        return v;
    }
    Mask mask(std::size_t r, std::size_t c) {
        Mask m(r, std::vector<bool>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m[i][j] = bit();
        return m;
    }

    // --- reference resolution ---

    const std::string& reference(const std::string& what, std::initializer_list<const char*> accepted) {
        const Token& t = arg(what + " name");
        auto it = ws_.kind_of.find(t.text);
        if (it == ws_.kind_of.end()) throw ParseError("unresolved reference '" + t.text + "'", t.line, t.col);
        bool ok = false;
        for (const char* k : accepted) ok = ok || it->second == k;
        if (!ok) throw ParseError("'" + t.text + "' is a " + it->second + ", expected " + what, t.line, t.col);
        for (const auto& d : ws_.declarations)
            if (d.name == t.text && !d.valid) throw InvalidDependency{t.text};
        return t.text;
    }
    AlgebraPtr<F> algebra_ref() {
        const auto& n = reference("algebra", {"algebra", "endo"});
        return ws_.kind_of[n] == "endo" ? ws_.endos.at(n).algebra : ws_.algebras.at(n);
    }
    std::pair<std::string, ModulePtr<F>> module_ref() {
        const auto& n = reference("module", {"module", "endo"});
        return {n, ws_.kind_of[n] == "endo" ? ws_.endos.at(n).module : ws_.modules.at(n)};
    }
    std::pair<std::string, DoublePtr<F>> double_ref() {
        const auto& n = reference("double module", {"double"});
        return {n, ws_.doubles.at(n)};
    }
    const AntiEndo<F>& anti_ref() { return ws_.antis.at(reference("anti-endomorphism", {"anti"})); }
    const EndoAlgebra<F>& endo_ref() { return ws_.endos.at(reference("endomorphism algebra", {"endo"})); }
    const BilinearForm<F>& form_ref() { return ws_.forms.at(reference("form", {"form"})); }

    const MatrixSpace<F>& space_of(const std::string& name) {
        auto it = ws_.spaces.find(name);
        if (it == ws_.spaces.end()) {
            const Token& t = stmt_->head[arg_ - 1];
            throw ParseError("'" + name + "' is not declared as a matrix space", t.line, t.col);
        }
        return it->second;
    }

    std::function<Matrix(const Matrix&)> matrix_map() {
        const Token& t = arg("matrix map (identity, transpose, flip)");
        if (t.text == "identity") return [](const Matrix& x) { return x; };
        if (t.text == "transpose") return [](const Matrix& x) { return x.transpose(); };
        if (t.text == "flip") return [](const Matrix& x) { return flip_matrix(x); };
        throw ParseError("unknown matrix map '" + t.text + "'", t.line, t.col);
    }
    void keyword(const std::string& word) {
        const Token& t = arg("'" + word + "'");
        if (t.text != word) throw ParseError("expected '" + word + "'", t.line, t.col);
    }

    // --- constructors ---

    void build(const std::string& kind, const std::string& name, const Token& ctor) {
        if (kind == "algebra") ws_.algebras[name] = build_algebra(name, ctor);
        else if (kind == "module") ws_.modules[name] = build_module(name, ctor);
        else if (kind == "double") ws_.doubles[name] = build_double(name, ctor);
        else if (kind == "anti") ws_.antis.insert_or_assign(name, build_anti(name, ctor));
        else if (kind == "endo") ws_.endos.insert_or_assign(name, build_endo(name, ctor));
        else if (kind == "form") ws_.forms.insert_or_assign(name, build_form(name, ctor));
        else ws_.thetas.insert_or_assign(name, build_theta(ctor));
    }

    [[noreturn]] void unknown(const Token& ctor, const std::string& kind) {
        throw ParseError("unknown " + kind + " constructor '" + ctor.text + "'", ctor.line, ctor.col);
    }

    AlgebraPtr<F> build_algebra(const std::string& name, const Token& ctor) {
        const F& f = ws_.field;
        const std::string& c = ctor.text;
        if (c == "field") return field_algebra(f);
        if (c == "matrix") return matrix_algebra(f, count_arg("matrix size"));
        if (c == "upper") return upper_triangular(f, count_arg("matrix size"));
        if (c == "pattern") {
            std::size_t n = count_arg("matrix size");
            return structured_subalgebra(f, n, mask(n, n), name);
        }
        if (c == "product") {
            auto a = algebra_ref();
            auto b = algebra_ref();
            return product_algebra(*a, *b, name);
        }
        if (c == "matrices-over") {
            auto a = algebra_ref();
            return matrix_over(a, count_arg("matrix size"), name);
        }
        if (c == "extension") {
            std::vector<long long> coeffs;
            while (arg_ < stmt_->head.size()) {
                const Token& t = arg("coefficient");
                try {
                    std::size_t pos = 0;
                    coeffs.push_back(std::stoll(t.text, &pos));
                    if (pos != t.text.size()) throw std::invalid_argument("junk");
                } catch (const std::exception&) {
                    throw ParseError("modulus coefficients must be integers", t.line, t.col);
                }
            }
            return extension_algebra(f, coeffs, name);
        }
        if (c == "structconsts") {
            std::size_t d = count_arg("dimension");
            if (d == 0) fail(ErrorKind::DimensionMismatch, "algebra dimension must be positive");
            Vec<F> unity = vector(d);
            typename Algebra<F>::Products products(d, std::vector<Vec<F>>(d));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) products[i][j] = vector(d);
            return make_algebra(f, d, std::move(products), std::move(unity), name);
        }
        if (c == "span") {
            std::size_t n = count_arg("matrix size"), count = count_arg("number of matrices");
            if (count == 0 || n == 0) fail(ErrorKind::DimensionMismatch, "span needs at least one nonempty matrix");
            std::vector<Matrix> basis;
            for (std::size_t k = 0; k < count; ++k) basis.push_back(matrix(n, n));
            return algebra_from_matrices(f, basis, name);
        }
        unknown(ctor, "algebra");
    }

    ModulePtr<F> build_module(const std::string& name, const Token& ctor) {
        const std::string& c = ctor.text;
        if (c == "regular") return regular_module(algebra_ref());
        if (c == "rows") {
            auto r = algebra_ref();
            auto m = row_vector_module(r);
            ws_.spaces.insert_or_assign(name, MatrixSpace<F>::full(ws_.field, 1, r->realization_size()));
            return m;
        }
        if (c == "matrices") {
            auto r = algebra_ref();
            std::size_t rows = count_arg("row count");
            if (r->realization_size() == 0) fail(ErrorKind::Unsupported, "matrix module needs a matrix algebra");
            Mask mk = mask(rows, r->realization_size());
            auto m = matrix_module(r, rows, mk, name);
            ws_.spaces.insert_or_assign(name, MatrixSpace<F>::from_mask(ws_.field, mk));
            return m;
        }
        if (c == "direct-sum") {
            auto a = module_ref().second;
            auto b = module_ref().second;
            return direct_sum(*a, *b);
        }
        if (c == "power") {
            auto a = module_ref().second;
            return power_module(a, count_arg("exponent"));
        }
        if (c == "actions") {
            auto r = algebra_ref();
            std::size_t d = count_arg("module dimension");
            std::vector<Matrix> acts;
            for (std::size_t s = 0; s < r->dim(); ++s) acts.push_back(matrix(d, d));
            return make_module(r, d, std::move(acts), name);
        }
        unknown(ctor, "module");
    }

    DoublePtr<F> build_double(const std::string& name, const Token& ctor) {
        const std::string& c = ctor.text;
        if (c == "standard") return standard_double(anti_ref());
        if (c == "matrices") {
            auto r = algebra_ref();
            std::size_t rows = count_arg("row count");
            keyword("twist");
            auto g = matrix_map();
            if (r->realization_size() == 0) fail(ErrorKind::Unsupported, "matrix double module needs a matrix algebra");
            auto space = MatrixSpace<F>::from_mask(ws_.field, mask(rows, r->realization_size()));
            auto k = matrix_double<F>(r, space, g, name);
            ws_.spaces.insert_or_assign(name, space);
            return k;
        }
        if (c == "actions") {
            auto r = algebra_ref();
            std::size_t d = count_arg("dimension");
            std::vector<Matrix> p, q;
            for (std::size_t s = 0; s < r->dim(); ++s) p.push_back(matrix(d, d));
            for (std::size_t s = 0; s < r->dim(); ++s) q.push_back(matrix(d, d));
            return make_double(r, d, std::move(p), std::move(q), name);
        }
        if (c == "quotient") {
            auto [parent, k] = double_ref();
            std::size_t count = count_arg("number of spanning vectors");
            std::vector<Vec<F>> sub;
            for (std::size_t i = 0; i < count; ++i) sub.push_back(vector(k->dim()));
            auto q = quotient_double(*k, sub, name);
            ws_.quotient_of.insert_or_assign(name, std::make_pair(parent, QuotientSpace<F>(ws_.field, k->dim(), sub).projection()));
            return q;
        }
        unknown(ctor, "double module");
    }

    AntiEndo<F> build_anti(const std::string& name, const Token& ctor) {
        const std::string& c = ctor.text;
        auto named = [&](AntiEndo<F> a) {
            a.name = name;
            return a;
        };
        if (c == "identity") return named(identity_anti(algebra_ref()));
        if (c == "transpose") return named(transpose_anti(algebra_ref()));
        if (c == "flip") return named(flip_anti(algebra_ref()));
        if (c == "symplectic") return named(symplectic_anti(algebra_ref()));
        if (c == "swap") return named(swap_anti(algebra_ref()));
        if (c == "frobenius") return named(frobenius_anti(algebra_ref()));
        if (c == "matrix") {
            auto r = algebra_ref();
            return make_anti_endo(r, matrix(r->dim(), r->dim()), name);
        }
        if (c == "tn") {
            const auto& alpha = anti_ref();
            auto w = algebra_ref();
            return named(t_n(alpha, w, count_arg("matrix size")));
        }
        unknown(ctor, "anti-endomorphism");
    }

    EndoAlgebra<F> build_endo(const std::string& name, const Token& ctor) {
        const F& f = ws_.field;
        const std::string& c = ctor.text;
        if (c == "computed") return endo_algebra(module_ref().second, name);
        if (c == "left-regular") return left_regular_endo(algebra_ref());
        if (c == "vector-space") return vector_space_endo(f, count_arg("dimension"));
        if (c == "power") {
            const auto& e = endo_ref();
            return power_endo(e, count_arg("exponent"));
        }
        if (c == "scalars") {
            auto m = module_ref().second;
            return endo_algebra_from_action(m, field_algebra(f), {Matrix::identity(f, m->dim())});
        }
        if (c == "left-matrices") {
            auto [mname, m] = module_ref();
            const auto& ms = space_of(mname);
            auto w = algebra_ref();
            if (w->realization_size() != ms.rows) fail(ErrorKind::DimensionMismatch, "acting matrices must have size " + std::to_string(ms.rows));
            std::vector<Matrix> rep;
            for (const auto& u : w->realization()) {
                Matrix a(f, ms.dim(), ms.dim());
                for (std::size_t k = 0; k < ms.dim(); ++k) a.set_col(k, ms.coords(u * ms.to_matrix(unit_vec(f, ms.dim(), k))));
                rep.push_back(std::move(a));
            }
            return endo_algebra_from_action(m, w, std::move(rep));
        }
        unknown(ctor, "endomorphism algebra");
    }

    BilinearForm<F> build_form(const std::string& name, const Token& ctor) {
        const std::string& c = ctor.text;
        auto named = [&](BilinearForm<F> b) {
            b.name = name;
            return b;
        };
        if (c == "b_alpha") {
            const auto& e = endo_ref();
            const auto& alpha = anti_ref();
            return named(tensor_alpha(e, alpha).form);
        }
        if (c == "product") {
            auto [mname, m] = module_ref();
            auto [kname, k] = double_ref();
            keyword("twist");
            auto h = matrix_map();
            return matrix_form<F>(m, space_of(mname), k, space_of(kname), h, name);
        }
        if (c == "gram") {
            auto m = module_ref().second;
            auto k = double_ref().second;
            std::vector<Vec<F>> gram;
            for (std::size_t i = 0; i < m->dim() * m->dim(); ++i) gram.push_back(vector(k->dim()));
            return make_form(m, k, std::move(gram), name);
        }
        if (c == "push") {
            const auto& b = form_ref();
            auto [kname, k] = double_ref();
            auto it = ws_.quotient_of.find(kname);
            if (it == ws_.quotient_of.end() || ws_.doubles.at(it->second.first) != b.codomain)
                fail(ErrorKind::AlgebraMismatch, "'" + kname + "' is not a declared quotient of the codomain of '" + b.name + "'");
            return pushforward_form(b, k, it->second.second, name);
        }
        if (c == "zero") {
            auto m = module_ref().second;
            auto k = double_ref().second;
            return named(zero_form(m, k));
        }
        if (c == "sum") {
            const auto& a = form_ref();
            const auto& b = form_ref();
            return named(orthogonal_sum(a, b));
        }
        if (c == "fold") {
            const auto& b = form_ref();
            return named(n_fold(b, count_arg("multiplicity")));
        }
        unknown(ctor, "form");
    }

    DblAntiAuto<F> build_theta(const Token& ctor) {
        const F& f = ws_.field;
        const std::string& c = ctor.text;
        if (c == "twist") {
            auto [kname, k] = double_ref();
            const auto& ks = space_of(kname);
            auto g = matrix_map();
            Matrix t(f, k->dim(), k->dim());
            for (std::size_t j = 0; j < k->dim(); ++j) {
                auto img = ks.from_matrix(g(ks.to_matrix(unit_vec(f, k->dim(), j))));
                if (!img) fail(ErrorKind::NotHomomorphism, "matrix map leaves the space of '" + kname + "'", {j});
                t.set_col(j, *img);
            }
            return make_dbl_anti_auto(k, t);
        }
        if (c == "matrix") {
            auto k = double_ref().second;
            return make_dbl_anti_auto(k, matrix(k->dim(), k->dim()));
        }
        unknown(ctor, "double anti-automorphism");
    }

    Workspace<F>& ws_;
    const Statement* stmt_ = nullptr;
    std::size_t arg_ = 0, body_ = 0;
};

}  // namespace detail

/// Parses and loads a problem file over the given field. Syntax and reference errors throw
/// ParseError; objects failing their validator are recorded as invalid declarations.
template <Field F>
Workspace<F> load_problem(const std::string& text, const F& field) {
    auto statements = parse_statements(text);
    Workspace<F> ws;
    ws.field = field;
    detail::Loader<F>(ws).run(statements);
    return ws;
}

}  // namespace genform
