#include "mulrep/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mulrep/detforms.hpp"
#include "mulrep/errors.hpp"
#include "mulrep/form.hpp"
#include "mulrep/intlinalg.hpp"
#include "mulrep/matrix.hpp"
#include "mulrep/oracle.hpp"
#include "mulrep/solver.hpp"

namespace mulrep {

namespace {

using nlohmann::json;

json to_json(const Int& v) { return to_dec(v); }

json to_json(const Assignment& a) {
    json arr = json::array();
    for (const Int& v : a) arr.push_back(to_dec(v));
    return arr;
}

json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_dec(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string tuple_str(const Assignment& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ", ";
        s += to_dec(a[i]);
    }
    return s + ")";
}

std::string yesno(bool v) { return v ? "yes" : "no"; }

struct Cli {
    bool json_mode = false;
    std::string out_path;
    unsigned long long budget = kDefaultMaxPoints;
    bool out_file_failed = false;
    std::ostream& out;
    std::ostream& err;

    Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}

    // stdout in JSON mode, and the --out file in every mode
    void deliver(const json& payload, bool stdout_too = true) {
        if (json_mode && stdout_too) out << payload.dump(2) << "\n";
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << payload.dump(2) << "\n";
            if (!f) {
                err << "cannot write to " << out_path << "\n";
                out_file_failed = true;
            }
        }
    }
};

json report_json(const SolveReport& r, const char* outcome = "solved") {
    json j{{"outcome", outcome},
           {"method", method_name(r.method)},
           {"solution", to_json(r.solution)},
           {"evaluation", to_json(r.b)},
           {"b", to_json(r.b)}};
    j["bound"] = r.bound_value ? json(to_dec(*r.bound_value)) : json(nullptr);
    j["within_bound"] = r.within_bound ? json(*r.within_bound) : json(nullptr);
    return j;
}

void print_report(Cli& cli, const SolveReport& r) {
    if (!cli.json_mode) {
        cli.out << "solved via " << method_name(r.method) << "\n";
        cli.out << "a = " << tuple_str(r.solution) << "\n";
        cli.out << "F(a) = " << to_dec(r.b) << "\n";
        if (r.bound_value)
            cli.out << "bound = " << to_dec(*r.bound_value)
                    << ", within: " << yesno(*r.within_bound) << "\n";
    }
    cli.deliver(report_json(r));
}

int emit_unrepresentable(Cli& cli, const std::string& message, const Int& witness) {
    if (!cli.json_mode) cli.out << "unrepresentable: " << message << "\n";
    cli.deliver(json{{"outcome", "unrepresentable"},
                     {"message", message},
                     {"witness_divisor", to_json(witness)}});
    return 1;
}

int emit_unknown(Cli& cli, const std::string& reason) {
    if (!cli.json_mode) cli.out << "unknown: " << reason << "\n";
    cli.deliver(json{{"outcome", "unknown"}, {"reason", reason}});
    return 2;
}

// ---- commands ----------------------------------------------------------

int cmd_solve(Cli& cli, const std::string& form_text, const std::string& b_text,
              const std::string& method, const std::string& radius_text) {
    MultilinearForm F = parse_form(form_text);
    Int b = from_dec(b_text);
    std::optional<Int> radius;
    if (!radius_text.empty()) {
        radius = from_dec(radius_text);
        if (*radius < 0) throw parse_error("radius must be nonnegative");
    }

    if (method == "auto") {
        AutoResult res = solve_auto(F, b, radius, cli.budget);
        switch (res.kind) {
            case AutoResult::Kind::solved:
                print_report(cli, *res.report);
                return 0;
            case AutoResult::Kind::unrepresentable:
                return emit_unrepresentable(cli,
                                            "the coefficient gcd " + to_dec(res.gcd_witness) +
                                                " does not divide " + to_dec(b),
                                            res.gcd_witness);
            case AutoResult::Kind::unknown:
                return emit_unknown(cli, res.reason);
        }
        throw verification_error("unhandled dispatch outcome");
    }
    if (method == "search") {
        Int r = radius ? *radius : theorem_bound(F, b);
        auto a = box_search(F, b, r, SearchBudget{cli.budget});
        if (!a) return emit_unknown(cli, "no solution in the box of radius " + to_dec(r));
        print_report(cli, make_report(F, b, Method::search, std::move(*a), r));
        return 0;
    }
    SolveReport r = [&] {
        if (method == "linear") return solve_linear(F, b);
        if (method == "thm1a") return solve_thm1a(F, b);
        if (method == "thm1b") return solve_thm1b(F, b);
        if (method == "prop4") return solve_prop4(F, b);
        // prop2: recover p from the shape
        auto cls = classify(F);
        if (!cls.prop2_p)
            throw precondition_error(
                "the form does not match 6*x1*x2 + 2p*x1*x3 + 3p*x2*x3 for any valid p");
        return solve_prop2(*cls.prop2_p, b);
    }();
    print_report(cli, r);
    return 0;
}

int cmd_check(Cli& cli, const std::string& form_text) {
    MultilinearForm F = parse_form(form_text);
    auto prof = coprimality_profile(F);
    auto cls = classify(F);
    Int nud = nu(F.degree());
    Int unit_bound = theorem_bound(F, Int(1));
    if (!cli.json_mode) {
        cli.out << "variables: " << F.arity() << "\n";
        cli.out << "degree: " << F.degree() << "\n";
        cli.out << "monomials: " << F.monomial_count() << "\n";
        cli.out << "sup_norm: " << to_dec(sup_norm(F)) << "\n";
        cli.out << "coefficient_gcd: " << to_dec(prof.overall_gcd) << "\n";
        cli.out << "pairwise_coprime: " << yesno(prof.pairwise_coprime) << "\n";
        cli.out << "has_coprime_pair: " << yesno(prof.has_coprime_pair) << "\n";
        cli.out << "methods:";
        for (const auto& name : cls.names()) cli.out << " " << name;
        if (cls.names().empty()) cli.out << " none";
        cli.out << "\n";
        cli.out << "nu_" << F.degree() << " = " << to_dec(nud) << "\n";
        cli.out << "bound at |b| = 1: " << to_dec(unit_bound) << "\n";
    }
    cli.deliver(json{{"outcome", "ok"},
                     {"form", render(F)},
                     {"variables", F.arity()},
                     {"degree", F.degree()},
                     {"monomials", F.monomial_count()},
                     {"sup_norm", to_json(sup_norm(F))},
                     {"coefficient_gcd", to_json(prof.overall_gcd)},
                     {"pairwise_coprime", prof.pairwise_coprime},
                     {"has_coprime_pair", prof.has_coprime_pair},
                     {"methods", cls.names()},
                     {"nu", to_json(nud)},
                     {"unit_bound", to_json(unit_bound)}});
    return 0;
}

int cmd_eval(Cli& cli, const std::string& form_text, const std::vector<std::string>& values) {
    MultilinearForm F = parse_form(form_text);
    Assignment a;
    for (const auto& v : values) a.push_back(from_dec(v));
    Int value = evaluate(F, a);
    if (!cli.json_mode) cli.out << "F" << tuple_str(a) << " = " << to_dec(value) << "\n";
    cli.deliver(json{{"outcome", "ok"},
                     {"form", render(F)},
                     {"assignment", to_json(a)},
                     {"evaluation", to_json(value)}});
    return 0;
}

int cmd_bound(Cli& cli, const std::string& form_text, const std::string& b_text) {
    MultilinearForm F = parse_form(form_text);
    Int b = from_dec(b_text);
    Int nud = nu(F.degree());
    Int bound = theorem_bound(F, b);
    if (!cli.json_mode) {
        cli.out << "nu_" << F.degree() << " = " << to_dec(nud) << "\n";
        cli.out << "sup_norm = " << to_dec(sup_norm(F)) << "\n";
        cli.out << "bound = " << to_dec(bound) << "\n";
    }
    cli.deliver(json{{"outcome", "ok"},
                     {"nu", to_json(nud)},
                     {"sup_norm", to_json(sup_norm(F))},
                     {"bound", to_json(bound)}});
    return 0;
}

int cmd_snf(Cli& cli, const std::string& matrix_text) {
    IntMatrix A = parse_matrix(matrix_text);
    auto snf = smith_normal_form(A);
    if (!cli.json_mode) {
        cli.out << "invariant factors:";
        for (const Int& f : snf.invariant_factors) cli.out << " " << to_dec(f);
        if (snf.invariant_factors.empty()) cli.out << " none (zero matrix)";
        cli.out << "\n";
        cli.out << "U = " << render(snf.U) << "\n";
        cli.out << "V = " << render(snf.V) << "\n";
    }
    json factors = json::array();
    for (const Int& f : snf.invariant_factors) factors.push_back(to_dec(f));
    cli.deliver(json{{"outcome", "ok"},
                     {"invariant_factors", std::move(factors)},
                     {"U", to_json(snf.U)},
                     {"V", to_json(snf.V)}});
    return 0;
}

int cmd_detsolve(Cli& cli, const std::string& matrix_text, int n, const std::string& b_text) {
    DetFormInstance inst(parse_matrix(matrix_text), n);
    Int b = from_dec(b_text);
    DetSolution sol = solve_detform(inst, b);
    IntMatrix assembled = sol.assemble(inst);
    if (!cli.json_mode) {
        if (sol.x)
            cli.out << "X = " << render(*sol.x) << "\n";
        else
            cli.out << "X = (empty: the given block fills all rows)\n";
        cli.out << "Y = " << render(sol.y) << "\n";
        cli.out << "assembled = " << render(assembled) << "\n";
        cli.out << "det = " << to_dec(sol.det) << "\n";
    }
    cli.deliver(json{{"outcome", "solved"},
                     {"x", sol.x ? to_json(*sol.x) : json(nullptr)},
                     {"y", to_json(sol.y)},
                     {"assembled", to_json(assembled)},
                     {"det", to_json(sol.det)}});
    return 0;
}

int cmd_detbound(Cli& cli, const std::string& matrix_text, int n, const std::string& b_text) {
    DetFormInstance inst(parse_matrix(matrix_text), n);
    Int b = from_dec(b_text);
    Int bound = detform_bound(inst, b);
    if (!cli.json_mode) {
        cli.out << "bound = " << to_dec(bound) << "\n";
        cli.out << "note: informational only; no solver asserts this bound\n";
    }
    cli.deliver(json{{"outcome", "ok"}, {"bound", to_json(bound)}, {"informational", true}});
    return 0;
}

int cmd_prodsolve(Cli& cli, const std::vector<std::string>& items, bool bounded) {
    if (items.size() < 2)
        throw parse_error("prodsolve needs at least one linear form and the target");
    std::vector<MultilinearForm> factors;
    for (size_t i = 0; i + 1 < items.size(); ++i) factors.push_back(parse_form(items[i]));
    Int b = from_dec(items.back());
    // one more variable than factors keeps the construction applicable even
    // when the given factors mention fewer
    ProductForm P = ProductForm::make(factors, static_cast<int>(factors.size()) + 1);
    SolveReport r = solve_product_linear(P, b, bounded);
    if (!cli.json_mode) {
        cli.out << "a = " << tuple_str(r.solution) << "\n";
        cli.out << "product(a) = " << to_dec(r.b) << "\n";
        cli.out << "mu = " << to_dec(*r.bound_value)
                << ", within: " << yesno(*r.within_bound) << "\n";
    }
    json j = report_json(r);
    j["mu"] = to_dec(*r.bound_value);
    cli.deliver(std::move(j));
    return 0;
}

// forms...: either one multilinear form, or the factors of a product when
// --product is set
int cmd_search(Cli& cli, const std::vector<std::string>& items, bool product) {
    if (items.size() < 3)
        throw parse_error("search needs a form, the target, and the radius");
    Int b = from_dec(items[items.size() - 2]);
    Int radius = from_dec(items.back());
    std::optional<Assignment> a;
    if (product) {
        std::vector<MultilinearForm> factors;
        for (size_t i = 0; i + 2 < items.size(); ++i) factors.push_back(parse_form(items[i]));
        ProductForm P = ProductForm::make(factors);
        a = product_box_search(P, b, radius, SearchBudget{cli.budget});
        if (a && evaluate(P, *a) != b)
            throw verification_error("search returned a non-solution");
    } else {
        if (items.size() != 3) throw parse_error("search takes exactly one multilinear form");
        MultilinearForm F = parse_form(items[0]);
        a = box_search(F, b, radius, SearchBudget{cli.budget});
        if (a && evaluate(F, *a) != b)
            throw verification_error("search returned a non-solution");
    }
    if (!a) return emit_unknown(cli, "no solution in the box of radius " + to_dec(radius));
    if (!cli.json_mode) cli.out << "a = " << tuple_str(*a) << "\n";
    cli.deliver(json{{"outcome", "solved"},
                     {"solution", to_json(*a)},
                     {"evaluation", to_json(b)},
                     {"radius", to_json(radius)}});
    return 0;
}

int cmd_obstruct(Cli& cli, const std::vector<std::string>& items, bool product) {
    if (items.size() < 3)
        throw parse_error("obstruct needs a form, the target, and the modulus ceiling");
    Int b = from_dec(items[items.size() - 2]);
    Int mmax = from_dec(items.back());
    std::optional<ObstructionCertificate> cert;
    if (product) {
        std::vector<MultilinearForm> factors;
        for (size_t i = 0; i + 2 < items.size(); ++i) factors.push_back(parse_form(items[i]));
        cert = find_obstruction(ProductForm::make(factors), b, mmax, SearchBudget{cli.budget});
    } else {
        if (items.size() != 3)
            throw parse_error("obstruct takes exactly one multilinear form");
        cert = find_obstruction(parse_form(items[0]), b, mmax, SearchBudget{cli.budget});
    }
    if (!cert)
        return emit_unknown(cli, "no obstruction with modulus up to " + to_dec(mmax));
    if (!cli.json_mode)
        cli.out << "obstructed: no value is congruent to " << to_dec(cert->residue)
                << " mod " << to_dec(cert->modulus) << "\n";
    cli.deliver(json{{"outcome", "obstructed"},
                     {"modulus", to_json(cert->modulus)},
                     {"residue", to_json(cert->residue)}});
    return 1;
}

int cmd_minrep(Cli& cli, const std::string& form_text, const std::string& b_text,
               const std::string& radius_text) {
    MultilinearForm F = parse_form(form_text);
    Int b = from_dec(b_text);
    Int radius = from_dec(radius_text);
    auto a = minimal_representation(F, b, radius, SearchBudget{cli.budget});
    if (!a) return emit_unknown(cli, "no solution in the box of radius " + to_dec(radius));
    if (evaluate(F, *a) != b) throw verification_error("minrep returned a non-solution");
    if (!cli.json_mode)
        cli.out << "a = " << tuple_str(*a) << ", sup-norm " << to_dec(sup_norm(*a)) << "\n";
    cli.deliver(json{{"outcome", "solved"},
                     {"solution", to_json(*a)},
                     {"sup_norm", to_json(sup_norm(*a))},
                     {"evaluation", to_json(b)}});
    return 0;
}

int cmd_probe(Cli& cli, const std::string& form_text, const std::string& bmin_text,
              const std::string& bmax_text, const std::string& radius_text,
              const std::string& mmax_text) {
    MultilinearForm F = parse_form(form_text);
    Int bmin = from_dec(bmin_text);
    Int bmax = from_dec(bmax_text);
    Int radius = from_dec(radius_text);
    Int mmax = from_dec(mmax_text);
    ProbeReport rep = probe(F, bmin, bmax, radius, mmax, SearchBudget{cli.budget});
    json entries = json::array();
    for (const auto& [b, entry] : rep.entries) {
        json rec{{"b", to_dec(b)}};
        switch (entry.kind) {
            case ProbeEntry::Kind::solved:
                rec["outcome"] = "solved";
                rec["solution"] = to_json(*entry.solution);
                break;
            case ProbeEntry::Kind::obstructed:
                rec["outcome"] = "obstructed";
                rec["modulus"] = to_dec(*entry.modulus);
                break;
            case ProbeEntry::Kind::unknown:
                rec["outcome"] = "unknown";
                rec["reason"] = entry.reason;
                break;
        }
        cli.out << rec.dump() << "\n";  // one record per line in either mode
        entries.push_back(std::move(rec));
    }
    cli.deliver(json{{"outcome", "ok"},
                     {"form", render(F)},
                     {"b_min", to_dec(rep.b_min)},
                     {"b_max", to_dec(rep.b_max)},
                     {"radius", to_dec(rep.radius)},
                     {"max_modulus", to_dec(rep.max_modulus)},
                     {"coprime_warning", rep.coprime_warning},
                     {"entries", std::move(entries)}},
                /*stdout_too=*/false);
    if (rep.coprime_warning)
        cli.err << "note: the form is not coprime; obstructions are expected\n";
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Cli cli(out, err);

    CLI::App app{"exact solvers, searches, and certificates for integer multilinear forms"};
    app.require_subcommand(1);
    // let --json / --out appear after the subcommand name too
    app.fallthrough();
    app.add_flag("--json", cli.json_mode, "machine-readable output");
    app.add_option("--out", cli.out_path, "also write the JSON report to this file");

    std::string form_text, b_text, radius_text, method = "auto";
    std::string matrix_text;
    int ambient = 0;
    std::vector<std::string> items, values;
    bool bounded = false, product = false;
    std::string bmin_text, bmax_text, probe_radius = "10", probe_mmax = "8";

    auto* solve = app.add_subcommand("solve", "construct a with F(a) = b");
    solve->add_option("form", form_text, "multilinear form, e.g. \"6*x1*x2+10*x1*x3+15*x2*x3\"")
        ->required();
    solve->add_option("b", b_text, "target integer")->required();
    solve->add_option("--method", method, "force a construction")
        ->check(CLI::IsMember({"auto", "linear", "thm1a", "thm1b", "prop4", "prop2", "search"}));
    solve->add_option("--radius", radius_text, "fallback search radius");

    auto* check = app.add_subcommand("check", "classify a form and show its invariants");
    check->add_option("form", form_text)->required();

    auto* eval = app.add_subcommand("eval", "evaluate a form at a point");
    eval->add_option("form", form_text)->required();
    eval->add_option("values", values, "one integer per variable")->required()->expected(-1);

    auto* bound = app.add_subcommand("bound", "search-radius bound for a target");
    bound->add_option("form", form_text)->required();
    bound->add_option("b", b_text)->required();

    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("matrix", matrix_text, "rows separated by ';', e.g. \"2 4; 6 8\"")
        ->required();

    auto* detsolve = app.add_subcommand("detsolve", "complete a block to determinant b");
    detsolve->add_option("matrix", matrix_text, "the fixed top-left block")->required();
    detsolve->add_option("n", ambient, "size of the full matrix")->required();
    detsolve->add_option("b", b_text)->required();

    auto* detbound = app.add_subcommand("detbound", "informational search bound, square case");
    detbound->add_option("matrix", matrix_text)->required();
    detbound->add_option("n", ambient)->required();
    detbound->add_option("b", b_text)->required();

    auto* prodsolve = app.add_subcommand("prodsolve", "represent b by a product of linear forms");
    prodsolve->add_option("items", items, "linear forms..., then the target")
        ->required()
        ->expected(-1);
    prodsolve->add_flag("--bounded", bounded, "search the Borosh box for the smallest solution");

    auto* search = app.add_subcommand("search", "exhaustive box search");
    search->add_option("items", items, "form(s), target, radius")->required()->expected(-1);
    search->add_flag("--product", product, "treat the forms as factors of a product");

    auto* obstruct = app.add_subcommand("obstruct", "look for a modular certificate");
    obstruct->add_option("items", items, "form(s), target, modulus ceiling")
        ->required()
        ->expected(-1);
    obstruct->add_flag("--product", product, "treat the forms as factors of a product");

    auto* minrep = app.add_subcommand("minrep", "minimal sup-norm solution in a box");
    minrep->add_option("form", form_text)->required();
    minrep->add_option("b", b_text)->required();
    minrep->add_option("radius", radius_text)->required();

    auto* probe_cmd = app.add_subcommand("probe", "classify each b in a range");
    probe_cmd->add_option("form", form_text)->required();
    probe_cmd->add_option("--bmin", bmin_text)->required();
    probe_cmd->add_option("--bmax", bmax_text)->required();
    probe_cmd->add_option("--radius", probe_radius, "box radius (default 10)");
    probe_cmd->add_option("--mmax", probe_mmax, "modulus ceiling (default 8)");

    std::vector<const char*> argv;
    argv.push_back("mulrep");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    if (const char* env = std::getenv("MULREP_BUDGET")) {
        std::string s(env);
        bool digits = !s.empty();
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
        if (!digits) {
            err << "MULREP_BUDGET must be a nonnegative integer, got \"" << s << "\"\n";
            return 3;
        }
        try {
            cli.budget = std::stoull(s);
        } catch (const std::exception&) {
            err << "MULREP_BUDGET out of range: " << s << "\n";
            return 3;
        }
    }

    int code = [&]() -> int {
        try {
            if (*solve) return cmd_solve(cli, form_text, b_text, method, radius_text);
            if (*check) return cmd_check(cli, form_text);
            if (*eval) return cmd_eval(cli, form_text, values);
            if (*bound) return cmd_bound(cli, form_text, b_text);
            if (*snf) return cmd_snf(cli, matrix_text);
            if (*detsolve) return cmd_detsolve(cli, matrix_text, ambient, b_text);
            if (*detbound) return cmd_detbound(cli, matrix_text, ambient, b_text);
            if (*prodsolve) return cmd_prodsolve(cli, items, bounded);
            if (*search) return cmd_search(cli, items, product);
            if (*obstruct) return cmd_obstruct(cli, items, product);
            if (*minrep) return cmd_minrep(cli, form_text, b_text, radius_text);
            if (*probe_cmd)
                return cmd_probe(cli, form_text, bmin_text, bmax_text, probe_radius,
                                 probe_mmax);
            err << "no command selected\n";
            return 3;
        } catch (const product_not_coprime& e) {
            if (e.heger_ok) {
                err << "error: " << e.what() << "\n";
                cli.deliver(json{{"outcome", "error"}, {"message", e.what()}});
                return 3;
            }
            return emit_unrepresentable(cli, e.what(), e.minor_gcd);
        } catch (const not_completable& e) {
            return emit_unrepresentable(cli, e.what(), e.minor_gcd);
        } catch (const unrepresentable_error& e) {
            return emit_unrepresentable(cli, e.what(), e.divisor);
        } catch (const budget_exceeded& e) {
            return emit_unknown(cli, e.what());
        } catch (const parse_error& e) {
            err << "error: " << e.what() << "\n";
            cli.deliver(json{{"outcome", "error"}, {"message", e.what()}});
            return 3;
        } catch (const precondition_error& e) {
            err << "error: " << e.what() << "\n";
            cli.deliver(json{{"outcome", "error"}, {"message", e.what()}});
            return 3;
        } catch (const std::invalid_argument& e) {
            // from_dec and friends throw the plain stdlib type
            err << "error: " << e.what() << "\n";
            cli.deliver(json{{"outcome", "error"}, {"message", e.what()}});
            return 3;
        } catch (const verification_error& e) {
            err << "internal verification failure: " << e.what() << "\n";
            cli.deliver(json{{"outcome", "error"}, {"message", e.what()}});
            return 4;
        }
    }();
    if (cli.out_file_failed && code == 0) code = 3;
    return code;
}

}  // namespace mulrep
