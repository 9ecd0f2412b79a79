#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "genform/span_search.hpp"

namespace genform {

using Json = nlohmann::ordered_json;

/// Process exit codes shared by every command.
enum class ExitCode { Pass = 0, Failed = 1, Invalid = 2, Inconclusive = 3 };

template <Field F>
Json to_json(const Mat<F>& m) {
    Json rows = Json::array();
    for (const auto& r : m.to_strings()) rows.push_back(r);
    return rows;
}

template <Field F>
Json to_json(const F& f, const Vec<F>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(f.to_string(x));
    return out;
}

inline Json status_json(SearchStatus s) { return to_string(s); }

/// Structured command output. The text rendering is derived from the JSON document,
/// so both views agree on every boolean and status by construction.
class Report {
public:
    explicit Report(std::string command) {
        doc_["command"] = std::move(command);
        doc_["result"] = Json::object();
        doc_["checks"] = Json::object();
    }

    Json& result() { return doc_["result"]; }
    const Json& document() const { return doc_; }

    /// Records an assertion: true passes, false fails.
    void check(const std::string& name, bool ok) { doc_["checks"][name] = ok; }
    /// Records a search outcome against the expected status; inconclusive stays inconclusive.
    void check(const std::string& name, SearchStatus actual, SearchStatus expected) {
        if (actual == SearchStatus::Inconclusive)
            doc_["checks"][name] = "inconclusive";
        else
            doc_["checks"][name] = actual == expected;
    }
    void inconclusive(const std::string& name) { doc_["checks"][name] = "inconclusive"; }

    void error(const std::string& kind, const std::string& message, ExitCode code, std::size_t line = 0, std::size_t col = 0) {
        error_code_ = code;
        Json e;
        e["kind"] = kind;
        e["message"] = message;
        if (line > 0) {
            e["line"] = line;
            e["column"] = col;
        }
        doc_["error"] = std::move(e);
    }

    ExitCode exit_code() const {
        if (doc_.contains("error")) return error_code_;
        bool pending = false;
        for (const auto& [name, v] : doc_["checks"].items()) {
            if (v.is_boolean() && !v.get<bool>()) return ExitCode::Failed;
            if (v.is_string()) pending = true;
        }
        return pending ? ExitCode::Inconclusive : ExitCode::Pass;
    }

    std::string json_text() const {
        Json out = doc_;
        out["exit"] = static_cast<int>(exit_code());
        return out.dump(2) + "\n";
    }

    std::string text() const {
        Json out = doc_;
        out["exit"] = static_cast<int>(exit_code());
        std::ostringstream os;
        render(os, out, 0);
        return os.str();
    }

private:
    static bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }
    static bool is_flat_array(const Json& j) {
        if (!j.is_array()) return false;
        for (const auto& x : j)
            if (!is_scalar(x)) return false;
        return true;
    }
    static std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }
    static std::string flat(const Json& j) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar(j[i]);
        return s + "]";
    }

    static void render(std::ostream& os, const Json& j, std::size_t indent) {
        const std::string pad(indent, ' ');
        if (j.is_object()) {
            for (const auto& [key, v] : j.items()) {
                if (is_scalar(v))
                    os << pad << key << ": " << scalar(v) << "\n";
                else if (is_flat_array(v))
                    os << pad << key << ": " << flat(v) << "\n";
                else {
                    os << pad << key << ":\n";
                    render(os, v, indent + 2);
                }
            }
        } else if (j.is_array()) {
            for (const auto& v : j) {
                if (is_scalar(v))
                    os << pad << "- " << scalar(v) << "\n";
                else if (is_flat_array(v))
                    os << pad << flat(v) << "\n";
                else {
                    os << pad << "-\n";
                    render(os, v, indent + 2);
                }
            }
        }
    }

    Json doc_;
    ExitCode error_code_ = ExitCode::Invalid;
};

/// Exit code for a library error: budget exhaustion is inconclusive, malformed or
/// mismatched input is invalid, anything else is a failed mathematical precondition.
inline ExitCode exit_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::Inconclusive:
    case ErrorKind::HypothesisUnverified: return ExitCode::Inconclusive;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::FieldMismatch:
    case ErrorKind::AlgebraMismatch:
    case ErrorKind::NotPrime:
    case ErrorKind::Unsupported: return ExitCode::Invalid;
    default: return ExitCode::Failed;
    }
}

}  // namespace genform
