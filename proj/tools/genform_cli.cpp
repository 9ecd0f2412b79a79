#include <iostream>

#include <CLI11.hpp>

#include "genform/bundled.hpp"

using namespace genform;

namespace {

std::optional<std::uint32_t> parse_field(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text == "Q" || text == "0") return 0u;
    std::size_t pos = 0;
    unsigned long p = std::stoul(text, &pos);
    if (pos != text.size() || !is_prime(p) || p >= (1ul << 31)) throw CLI::ValidationError("--field", "expected a prime or Q");
    return static_cast<std::uint32_t>(p);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with general bilinear forms over finite-dimensional algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    std::string field_text;
    CommandOptions opts;
    app.add_flag("--json", json, "Emit the machine-readable report");
    app.add_option("--budget", opts.search.budget, "Search budget (elements or nodes)");
    app.add_option("--seed", opts.search.seed, "Seed for randomized fallbacks");
    app.add_option("--field", field_text, "Override the field: a prime p, or Q");

    std::string file, name, second;
    auto* check = app.add_subcommand("check", "Validate every object declared in a problem file");
    check->add_option("file", file)->required();
    auto* form = app.add_subcommand("form-report", "Adjoints, corresponding anti-endomorphism and symmetry of a form");
    form->add_option("file", file)->required();
    form->add_option("form", name)->required();
    form->add_flag("--asymmetry", opts.asymmetry, "Solve for the theta-asymmetry of each declared theta");
    auto* corr = app.add_subcommand("correspond", "Universal form b_alpha and genericity of declared forms");
    corr->add_option("file", file)->required();
    corr->add_option("module", name, "Module, endomorphism algebra or algebra")->required();
    corr->add_option("alpha", second)->required();
    corr->add_flag("--theta", opts.theta, "Build theta_alpha (alpha must be an involution)");
    auto* cls = app.add_subcommand("classify", "Involution type and Osborn case");
    cls->add_option("file", file)->required();
    cls->add_option("algebra", name)->required();
    cls->add_option("alpha", second)->required();
    auto* en = app.add_subcommand("enumerate", "All anti-endomorphisms of an algebra over a prime field");
    en->add_option("file", file)->required();
    en->add_option("algebra", name)->required();
    auto* ex = app.add_subcommand("paper-example", "Run a bundled example and check every claim about it");
    ex->add_option("name", name)->required()->check(CLI::IsMember(bundled_examples()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Invalid);
    }

    std::optional<std::uint32_t> field;
    try {
        field = parse_field(field_text);
    } catch (const std::exception&) {
        std::cerr << "--field expects a prime below 2^31 or Q\n";
        return static_cast<int>(ExitCode::Invalid);
    }

    Report rep("none");
    if (*check) rep = with_problem("check", file, field, [&](const auto& ws) { return cmd_check(ws); });
    else if (*form) rep = with_problem("form-report", file, field, [&](const auto& ws) { return cmd_form_report(ws, name, opts); });
    else if (*corr) rep = with_problem("correspond", file, field, [&](const auto& ws) { return cmd_correspond(ws, name, second, opts); });
    else if (*cls) rep = with_problem("classify", file, field, [&](const auto& ws) { return cmd_classify(ws, name, second, opts); });
    else if (*en) rep = with_problem("enumerate", file, field, [&](const auto& ws) { return cmd_enumerate(ws, name, opts); });
    else rep = cmd_paper_example(name, field, opts);

    std::cout << (json ? rep.json_text() : rep.text());
    return static_cast<int>(rep.exit_code());
}
