#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brim/multiplicity.hpp"

using namespace brim;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
    int dim = 2;
    std::string ideal;
    std::vector<std::string> ideals;
    std::string input;
    std::string output = "table";
    long long p = 2;
    long long q = -1;
    int j = 0;
    int k = 1;
    long long table_max_p = 8;   // row bound for the lambda table
    long long grid_max_p = 3;    // row bound for the Lambda grid
    long long q_extra = 4;       // grid rows above the admissible threshold
    long long fit_cap = 0;       // --max-p on fit commands; 0 = unbounded
    int max_advance = 6;
    int rank = 2;
    int max_pure = 3;
    int extra_gens = 1;
    std::uint64_t seed = 1;
};

void add_output_opt(CLI::App* cmd, Options& o)
{
    cmd->add_option("--output", o.output, "report format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
}

void add_fit_opts(CLI::App* cmd, Options& o)
{
    cmd->add_option("--max-p", o.fit_cap,
                    "largest fit window start; 0 leaves the window unbounded")
        ->capture_default_str();
    cmd->add_option("--max-advance", o.max_advance, "window moves before a fit gives up")
        ->capture_default_str();
}

void add_single_ideal_opts(CLI::App* cmd, Options& o)
{
    cmd->add_option("--dim", o.dim, "ambient dimension")->capture_default_str();
    cmd->add_option("--ideal", o.ideal,
                    "generators, e.g. \"x^2, x*y, y^3\" or {\"dim\":2,\"gens\":[[2,0],...]}")
        ->required();
}

void add_module_opts(CLI::App* cmd, Options& o)
{
    cmd->add_option("--dim", o.dim, "ambient dimension")->capture_default_str();
    cmd->add_option("--ideals", o.ideals, "one generator string or JSON ideal per summand")
        ->expected(-1);
    cmd->add_option("--input", o.input, "module file: {\"dim\": d, \"ideals\": [...]}");
}

FitOptions fit_options(const Options& o)
{
    FitOptions f;
    f.max_advances = o.max_advance;
    f.cap = o.fit_cap;
    return f;
}

MonomialIdeal ideal_from_json(const Json& spec, int dim)
{
    if (spec.is_string())
        return parse_ideal(spec.get<std::string>(), dim);
    const Json& list = spec.is_object() ? spec.at("gens") : spec;
    if (spec.is_object())
        dim = spec.value("dim", dim);
    std::vector<Exponent> gens;
    for (const auto& g : list) {
        Exponent e;
        for (const auto& v : g)
            e.push_back(v.get<int>());
        if (static_cast<int>(e.size()) != dim)
            throw std::invalid_argument("exponent vector length does not match dim");
        gens.push_back(std::move(e));
    }
    return MonomialIdeal(dim, gens);
}

// Accepts a generator string or the JSON forms {"dim":d,"gens":[...]} / [[...]].
MonomialIdeal ideal_from_arg(const std::string& text, int dim)
{
    size_t first = text.find_first_not_of(" \t");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
        return ideal_from_json(Json::parse(text), dim);
    return parse_ideal(text, dim);
}

ModuleSpec load_module(Options& o)
{
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in)
            throw std::invalid_argument("cannot open input file: " + o.input);
        Json doc = Json::parse(in);
        o.dim = doc.at("dim").get<int>();
        std::vector<MonomialIdeal> ideals;
        for (const auto& spec : doc.at("ideals"))
            ideals.push_back(ideal_from_json(spec, o.dim));
        return ModuleSpec(o.dim, std::move(ideals));
    }
    if (o.ideals.empty())
        throw std::invalid_argument("no module given: pass --ideals or --input");
    std::vector<MonomialIdeal> ideals;
    for (const auto& s : o.ideals)
        ideals.push_back(ideal_from_arg(s, o.dim));
    return ModuleSpec(o.dim, std::move(ideals));
}

void emit(const Json& doc)
{
    std::cout << doc.dump(2) << "\n";
}

Json gens_json(const MonomialIdeal& I)
{
    Json arr = Json::array();
    for (const auto& g : I.gens()) {
        Json row = Json::array();
        for (int e : g)
            row.push_back(e);
        arr.push_back(row);
    }
    return arr;
}

std::string plain(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

int emit_report(const VerificationReport& rep, const Options& o)
{
    if (o.output == "json") {
        emit(rep.to_json());
    } else {
        std::cout << "identity: " << rep.identity << "\n";
        std::cout << "lhs " << rep.lhs["name"].get<std::string>() << " = "
                  << plain(rep.lhs["value"]) << "\n";
        std::cout << "rhs " << rep.rhs["name"].get<std::string>() << " = "
                  << plain(rep.rhs["value"]) << "\n";
        std::cout << (rep.experimental ? "verdict: " : "pass: ")
                  << (rep.pass ? "true" : "false") << "\n";
    }
    if (rep.experimental)
        return 0;  // probes report, they do not assert
    return rep.pass ? 0 : 1;
}

int run_colength(Options& o)
{
    MonomialIdeal I = ideal_from_arg(o.ideal, o.dim);
    Int value = colength(I);
    if (o.output == "json")
        emit(Json{{"dim", I.dim()}, {"ideal", I.str()}, {"colength", int_str(value)}});
    else
        std::cout << value << "\n";
    return 0;
}

int run_hs(Options& o)
{
    MonomialIdeal I = ideal_from_arg(o.ideal, o.dim);
    Int e = hs_multiplicity(I, fit_options(o));
    if (o.output == "json")
        emit(Json{{"dim", I.dim()}, {"ideal", I.str()}, {"e", int_str(e)}});
    else
        std::cout << e << "\n";
    return 0;
}

int run_mixed(Options& o)
{
    ModuleSpec C = load_module(o);
    MixedTable table = mixed_multiplicities(C, fit_options(o));
    Json tj = Json::object();
    for (const auto& [type, e] : table) {
        std::string key;
        for (size_t i = 0; i < type.size(); ++i)
            key += (i ? "," : "") + std::to_string(type[i]);
        tj[key] = int_str(e);
    }
    if (o.output == "json") {
        Json doc = module_json(C);
        doc["mixed"] = tj;
        emit(doc);
    } else {
        for (const auto& [key, v] : tj.items())
            std::cout << "e[" << key << "] = " << v.get<std::string>() << "\n";
    }
    return 0;
}

int run_lambda_table(Options& o)
{
    ModuleSpec C = load_module(o);
    BrEngine engine(C);
    Json rows = Json::array();
    for (long long p = 0; p <= o.table_max_p; ++p)
        rows.push_back(Json{{"p", p}, {"lambda", int_str(engine.lambda(p))}});
    if (o.output == "json") {
        Json doc = module_json(C);
        doc["rows"] = rows;
        emit(doc);
    } else {
        for (const auto& row : rows)
            std::cout << row["p"].get<long long>() << "\t"
                      << row["lambda"].get<std::string>() << "\n";
    }
    return 0;
}

int run_Lambda_grid(Options& o)
{
    ModuleSpec C = load_module(o);
    BrEngine engine(C);
    Json rows = Json::array();
    auto push = [&](long long p, long long q) {
        rows.push_back(Json{{"p", p}, {"q", q}, {"lambda", int_str(engine.Lambda(p, q))}});
    };
    if (o.q >= 0)
        push(o.p, o.q);  // single requested point
    else
        for (long long p = 1; p <= o.grid_max_p; ++p)
            for (long long q = engine.q_min(p); q <= engine.q_min(p) + o.q_extra; ++q)
                push(p, q);
    if (o.output == "json") {
        Json doc = module_json(C);
        doc["rows"] = rows;
        emit(doc);
    } else {
        for (const auto& row : rows)
            std::cout << row["p"].get<long long>() << "\t" << row["q"].get<long long>()
                      << "\t" << row["lambda"].get<std::string>() << "\n";
    }
    return 0;
}

int run_br(Options& o)
{
    ModuleSpec C = load_module(o);
    Int e = br_multiplicity(C, fit_options(o));
    if (o.output == "json") {
        Json doc = module_json(C);
        doc["e"] = int_str(e);
        emit(doc);
    } else {
        std::cout << e << "\n";
    }
    return 0;
}

int run_assoc(Options& o)
{
    ModuleSpec C = load_module(o);
    AssociatedResult res = associated_multiplicities(C, fit_options(o));
    if (o.output == "json") {
        Json doc = module_json(C);
        Json vals = Json::array();
        for (const auto& v : res.values)
            vals.push_back(int_str(v));
        doc["values"] = vals;
        doc["poly"] = res.poly.to_json();
        doc["fit"] = res.fit.to_json();
        emit(doc);
    } else {
        for (size_t j = 0; j < res.values.size(); ++j)
            std::cout << "e^" << j << " = " << res.values[j] << "\n";
        std::cout << "surface: " << res.poly.str({"p", "q"}) << "\n";
    }
    return 0;
}

int run_random(Options& o)
{
    ModuleSpec C = random_module_spec(o.dim, o.rank, o.max_pure, o.extra_gens, o.seed);
    if (o.output == "json") {
        Json doc;
        doc["dim"] = o.dim;
        Json ideals = Json::array();
        for (const auto& I : C.ideals)
            ideals.push_back(gens_json(I));
        doc["ideals"] = ideals;
        emit(doc);
    } else {
        for (const auto& I : C.ideals)
            std::cout << I.str() << "\n";
    }
    return 0;
}

int dispatch(CLI::App& app, Options& o)
{
    if (auto* c = app.get_subcommand("colength"); c && c->parsed())
        return run_colength(o);
    if (auto* c = app.get_subcommand("hs"); c && c->parsed())
        return run_hs(o);
    if (auto* c = app.get_subcommand("mixed"); c && c->parsed())
        return run_mixed(o);
    if (auto* c = app.get_subcommand("lambda"); c && c->parsed())
        return run_lambda_table(o);
    if (auto* c = app.get_subcommand("Lambda"); c && c->parsed())
        return run_Lambda_grid(o);
    if (auto* c = app.get_subcommand("br"); c && c->parsed())
        return run_br(o);
    if (auto* c = app.get_subcommand("assoc"); c && c->parsed())
        return run_assoc(o);
    if (auto* c = app.get_subcommand("random"); c && c->parsed())
        return run_random(o);

    if (auto* v = app.get_subcommand("verify"); v && v->parsed()) {
        ModuleSpec C = load_module(o);
        FitOptions fo = fit_options(o);
        if (v->get_subcommand("main")->parsed())
            return emit_report(verify_main_theorem(C, fo), o);
        if (v->get_subcommand("last")->parsed())
            return emit_report(verify_last_multiplicity(C, fo), o);
        if (v->get_subcommand("kirby-sum")->parsed())
            return emit_report(verify_kirby_rees_sum(C, fo), o);
        if (v->get_subcommand("nested")->parsed())
            return emit_report(verify_nested_chain(C, o.j, fo), o);
        if (v->get_subcommand("corollary")->parsed())
            return emit_report(verify_corollary_largest(C, fo), o);
        BrEngine probe(C);
        long long q = o.q >= 0 ? o.q : probe.q_min(o.p);
        if (v->get_subcommand("regions")->parsed())
            return emit_report(verify_region_partition(C, o.p, q), o);
        if (v->get_subcommand("props")->parsed())
            return emit_report(verify_closed_forms(C, o.p, q), o);
    }
    if (auto* g = app.get_subcommand("conjecture"); g && g->parsed()) {
        ModuleSpec C = load_module(o);
        FitOptions fo = fit_options(o);
        if (g->get_subcommand("q43")->parsed())
            return emit_report(test_question_43(C, o.k, fo), o);
        if (g->get_subcommand("q44")->parsed())
            return emit_report(test_question_44(C, o.j, fo), o);
    }
    std::cerr << app.help() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Buchsbaum-Rim multiplicity calculator for direct sums of "
                 "cyclic modules over monomial ideals"};
    app.require_subcommand(1);

    auto* colength_cmd = app.add_subcommand("colength", "count standard monomials of an ideal");
    add_single_ideal_opts(colength_cmd, o);
    add_output_opt(colength_cmd, o);

    auto* hs_cmd = app.add_subcommand("hs", "Hilbert-Samuel multiplicity e(R/I)");
    add_single_ideal_opts(hs_cmd, o);
    add_fit_opts(hs_cmd, o);
    add_output_opt(hs_cmd, o);

    auto* mixed_cmd = app.add_subcommand("mixed", "mixed multiplicities of the summands");
    add_module_opts(mixed_cmd, o);
    add_fit_opts(mixed_cmd, o);
    add_output_opt(mixed_cmd, o);

    auto* lambda_cmd = app.add_subcommand("lambda", "table of lambda(p) = Lambda(p,0)");
    add_module_opts(lambda_cmd, o);
    lambda_cmd->add_option("--max-p", o.table_max_p, "largest tabulated p")
        ->capture_default_str();
    add_output_opt(lambda_cmd, o);

    auto* grid_cmd = app.add_subcommand("Lambda", "grid of Lambda(p,q) values");
    add_module_opts(grid_cmd, o);
    grid_cmd->add_option("--max-p", o.grid_max_p, "largest gridded p")->capture_default_str();
    grid_cmd->add_option("--q-extra", o.q_extra, "rows past the admissible threshold")
        ->capture_default_str();
    grid_cmd->add_option("--p", o.p, "evaluate a single point: p");
    grid_cmd->add_option("--q", o.q, "evaluate a single point: q");
    add_output_opt(grid_cmd, o);

    auto* br_cmd = app.add_subcommand("br", "Buchsbaum-Rim multiplicity e(C)");
    add_module_opts(br_cmd, o);
    add_fit_opts(br_cmd, o);
    add_output_opt(br_cmd, o);

    auto* assoc_cmd = app.add_subcommand("assoc", "associated multiplicities e^0..e^{d+r-1}");
    add_module_opts(assoc_cmd, o);
    add_fit_opts(assoc_cmd, o);
    add_output_opt(assoc_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify", "check a proved identity (exit 1 on failure)");
    verify_cmd->require_subcommand(1);
    for (const char* name : {"main", "last", "kirby-sum", "corollary"}) {
        auto* sub = verify_cmd->add_subcommand(name);
        add_module_opts(sub, o);
        add_fit_opts(sub, o);
        add_output_opt(sub, o);
    }
    auto* nested_cmd = verify_cmd->add_subcommand("nested");
    add_module_opts(nested_cmd, o);
    nested_cmd->add_option("--j", o.j, "chain position: e^j vs the tail from j")
        ->capture_default_str();
    add_fit_opts(nested_cmd, o);
    add_output_opt(nested_cmd, o);
    for (const char* name : {"regions", "props"}) {
        auto* sub = verify_cmd->add_subcommand(name);
        add_module_opts(sub, o);
        sub->add_option("--p", o.p, "fixed p")->capture_default_str();
        sub->add_option("--q", o.q, "fixed q; defaults to the admissible threshold");
        add_output_opt(sub, o);
    }

    auto* conj_cmd = app.add_subcommand("conjecture", "probe an open question (always exit 0)");
    conj_cmd->require_subcommand(1);
    auto* q43_cmd = conj_cmd->add_subcommand("q43", "q-degree bound on the remainder F_k");
    add_module_opts(q43_cmd, o);
    q43_cmd->add_option("--k", o.k, "levels peeled off")->capture_default_str();
    add_fit_opts(q43_cmd, o);
    add_output_opt(q43_cmd, o);
    auto* q44_cmd = conj_cmd->add_subcommand("q44", "e^{r-j} from subset aggregates");
    add_module_opts(q44_cmd, o);
    q44_cmd->add_option("--j", o.j, "multiplicity index: checks e^{r-j}")->required();
    add_fit_opts(q44_cmd, o);
    add_output_opt(q44_cmd, o);

    auto* random_cmd = app.add_subcommand("random", "generate a reproducible module");
    random_cmd->add_option("--dim", o.dim, "ambient dimension")->capture_default_str();
    random_cmd->add_option("--rank", o.rank, "number of summands")->capture_default_str();
    random_cmd->add_option("--max-pure", o.max_pure, "largest pure-power exponent")
        ->capture_default_str();
    random_cmd->add_option("--extra-gens", o.extra_gens, "interior generators per ideal")
        ->capture_default_str();
    random_cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    add_output_opt(random_cmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        return dispatch(app, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
