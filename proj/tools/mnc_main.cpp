// Command-line front end: construction, solving, verification, simulation,
// search, and export, each reading/writing the canonical JSON documents.
// Exit codes: 0 success (including "search proved no solution"), 1 a
// verification failed, 2 bad input or caps exceeded. Hard failures land as
// {"error": ...} on standard error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mnc/mnc.hpp"

using namespace mnc;
using nlohmann::json;

namespace {

uint64_t env_cap(const char* name, uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string(name) + " must be an integer");
    }
}

int report_failure(const std::string& what, const json& details) {
    std::cerr << json_text(json{{"error", what}, {"details", details}});
    return 1;
}

NetworkMatroidMapping require_mapping(const json& net_doc, const char* context) {
    const auto map = mapping_from_json(net_doc);
    if (!map)
        throw std::runtime_error(std::string(context) +
                                 " needs a network document with an embedded \"mapping\"");
    return *map;
}

std::vector<FieldElem> parse_assignment(const FieldCtx& f, const std::string& text, int count) {
    std::vector<FieldElem> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) out.push_back(f.element(std::stoull(token)));
    if (static_cast<int>(out.size()) != count)
        throw std::runtime_error("assignment needs " + std::to_string(count) +
                                 " comma-separated values");
    return out;
}

json decode_to_json(const Network& net, const Simulation& sim,
                    const std::vector<FieldElem>& assignment) {
    json decodes = json::array();
    for (const DemandDecode& d : sim.decodes) {
        json entry = {{"node", net.node_names[d.node]},
                      {"message", net.messages[d.message]},
                      {"expected", assignment[d.message].value}};
        entry["decoded"] = d.value ? json(d.value->value) : json();
        entry["ok"] = d.value && *d.value == assignment[d.message];
        decodes.push_back(std::move(entry));
    }
    return decodes;
}

json assignment_to_json(const std::vector<FieldElem>& a) {
    json j = json::array();
    for (const FieldElem e : a) j.push_back(e.value);
    return j;
}

int run_matroid_check(const std::string& matroid_path, uint64_t cap) {
    const Matroid m = matroid_from_json(read_json_file(matroid_path));
    const AxiomReport axioms = verify_axioms(m, cap);
    json doc = {{"kind", matroid_to_json(m).at("kind")},
                {"ground_size", m.ground_size()},
                {"rank", m.rank_full()},
                {"axioms", axioms.ok}};
    if (!axioms.ok) doc["violation"] = axioms.violation;
    json circuit_list = json::array();
    for (const auto& c : circuits(m, cap)) circuit_list.push_back(c);
    doc["circuits"] = std::move(circuit_list);
    json base_list = json::array();
    for (const auto& b : bases(m, cap)) base_list.push_back(b);
    doc["bases"] = std::move(base_list);
    std::cout << json_text(doc);
    if (!axioms.ok) return report_failure("axiom check failed", axioms.violation);
    return 0;
}

int run_construct(const std::string& matroid_path, const std::string& config_path,
                  const std::string& out_path, uint64_t cap) {
    const Matroid m = matroid_from_json(read_json_file(matroid_path));
    ConstructionConfig cfg;
    cfg.enum_cap = cap;
    if (!config_path.empty()) {
        const json c = read_json_file(config_path);
        if (c.contains("base")) cfg.base = c.at("base").get<std::vector<int>>();
        if (c.contains("step3")) cfg.step3 = c.at("step3").get<bool>();
        if (c.contains("step4")) cfg.step4 = c.at("step4").get<bool>();
        if (c.contains("step3_cap")) cfg.step3_cap = c.at("step3_cap").get<int>();
        if (c.contains("step4_cap")) cfg.step4_cap = c.at("step4_cap").get<int>();
        if (c.contains("alphabet")) cfg.alphabet = c.at("alphabet").get<int>();
    }
    const Construction built = construct(m, cfg);
    const json doc = network_to_json(built.net, &built.mapping);
    if (!out_path.empty()) write_json_file(out_path, doc);
    const MatroidalReport report = verify_matroidal(built.net, m, built.mapping);
    std::cout << json_text(json{{"nodes", built.net.node_count()},
                                {"edges", built.net.edge_count()},
                                {"messages", built.net.message_count()},
                                {"matroidal", report.ok},
                                {"out", out_path}});
    if (!report.ok) return report_failure("construction failed verification", report.violations);
    return 0;
}

int write_solution(const Network& net, const NetworkMatroidMapping& mapping,
                   const SolveResult& result, const std::string& out_path,
                   const std::string& out_net_path) {
    if (!out_net_path.empty()) write_json_file(out_net_path, network_to_json(net, &mapping));
    if (!out_path.empty()) write_json_file(out_path, code_to_json(net, result.code));
    const CodeReport report = validate_code(net, result.code);
    std::cout << json_text(json{{"field", result.field.name()},
                                {"dummy_messages", result.dummy_messages},
                                {"edges", net.edge_count()},
                                {"messages", net.message_count()},
                                {"solution", report.solution()},
                                {"out", out_path},
                                {"out_network", out_net_path}});
    if (!report.solution()) {
        json unsatisfied = json::array();
        for (const auto& [node, msg] : report.unsatisfied)
            unsatisfied.push_back(net.node_names[node] + ":" + net.messages[msg]);
        return report_failure("code does not solve the network",
                              json{{"violations", report.violations}, {"unsatisfied", unsatisfied}});
    }
    return 0;
}

int run_solve(const std::string& net_path, const std::string& matrix_path,
              const std::string& out_path, const std::string& out_net_path) {
    const json net_doc = read_json_file(net_path);
    const Network net = network_from_json(net_doc);
    const NetworkMatroidMapping mapping = require_mapping(net_doc, "solve");
    const Matrix a = matrix_from_json(read_json_file(matrix_path));
    const SolveResult result = solve_representable(net, mapping, a);
    return write_solution(net, mapping, result, out_path, out_net_path);
}

int run_solve_uniform(int c, int d, uint32_t p, int alphabet, const std::string& out_path,
                      const std::string& out_net_path) {
    const UniformSolve solved = solve_uniform(c, d, p, alphabet);
    return write_solution(solved.net, solved.mapping, solved.result, out_path, out_net_path);
}

int run_solve_graphic(const std::string& graph_path, int alphabet, const std::string& out_path,
                      const std::string& out_net_path) {
    const Graph g = graph_from_json(read_json_file(graph_path));
    const GraphicSolve solved = solve_graphic(g, alphabet);
    return write_solution(solved.net, solved.mapping, solved.result, out_path, out_net_path);
}

int run_extract(const std::string& net_path, const std::string& code_path,
                const std::string& out_path) {
    const Network net = network_from_json(read_json_file(net_path));
    const GlobalCode code = code_from_json(net, read_json_file(code_path));
    const Extraction ex = extract_representable(net, code);
    json doc = matrix_to_json(ex.matrix);
    doc["kind"] = "vector";
    doc["mapping"] = {{"messages", ex.mapping.message_map}, {"edges", ex.mapping.edge_map}};
    if (!out_path.empty()) write_json_file(out_path, doc);
    const MatroidalReport report = verify_matroidal(net, vector_matroid(ex.matrix), ex.mapping);
    std::cout << json_text(json{{"field", ex.matrix.ctx().name()},
                                {"columns", ex.matrix.cols()},
                                {"matroidal", report.ok},
                                {"out", out_path}});
    if (!report.ok) return report_failure("extracted mapping failed verification", report.violations);
    return 0;
}

int run_verify(const std::string& net_path, const std::string& matroid_path,
               const std::string& code_path) {
    const json net_doc = read_json_file(net_path);
    const Network net = network_from_json(net_doc);
    json doc = {{"network", "ok"}};
    bool ok = true;
    json failures = json::object();

    if (!matroid_path.empty()) {
        const json matroid_doc = read_json_file(matroid_path);
        const Matroid m = matroid_from_json(matroid_doc);
        // a mapping in the matroid document (as `extract` writes) wins over
        // the one embedded in the network document
        NetworkMatroidMapping mapping;
        if (const auto own = mapping_from_json(matroid_doc))
            mapping = *own;
        else
            mapping = require_mapping(net_doc, "verify --matroid");
        const MatroidalReport report = verify_matroidal(net, m, mapping);
        doc["matroidal"] = report.ok;
        doc["matroidal_violations"] = report.violations;
        if (!report.ok) {
            ok = false;
            failures["matroidal"] = report.violations;
        }
    }
    if (!code_path.empty()) {
        const GlobalCode code = code_from_json(net, read_json_file(code_path));
        const CodeReport report = validate_code(net, code);
        json unsatisfied = json::array();
        for (const auto& [node, msg] : report.unsatisfied)
            unsatisfied.push_back(net.node_names[node] + ":" + net.messages[msg]);
        doc["code_valid"] = report.valid;
        doc["code_violations"] = report.violations;
        doc["unsatisfied"] = unsatisfied;
        doc["solution"] = report.solution();
        if (!report.solution()) {
            ok = false;
            failures["code"] = {{"violations", report.violations}, {"unsatisfied", unsatisfied}};
        }
    }
    std::cout << json_text(doc);
    if (!ok) return report_failure("verification failed", failures);
    return 0;
}

int run_simulate(const std::string& net_path, const std::string& code_path,
                 const std::string& assign, bool all) {
    const Network net = network_from_json(read_json_file(net_path));
    const GlobalCode code = code_from_json(net, read_json_file(code_path));
    const SimulationPlan plan = make_simulation_plan(net, code);
    const FieldCtx& f = code.ctx;

    if (!all) {
        const std::vector<FieldElem> a = parse_assignment(f, assign, net.message_count());
        const Simulation sim = run_simulation(plan, a);
        json edges = json::array();
        for (const FieldElem e : sim.edge_symbols) edges.push_back(e.value);
        const json decodes = decode_to_json(net, sim, a);
        bool ok = true;
        for (const json& d : decodes) ok = ok && d.at("ok").get<bool>();
        std::cout << json_text(json{{"assignment", assignment_to_json(a)},
                                    {"edges", std::move(edges)},
                                    {"decodes", decodes},
                                    {"ok", ok}});
        if (!ok) return report_failure("a demand failed to decode", decodes);
        return 0;
    }

    uint64_t total = 1;
    for (int i = 0; i < net.message_count(); ++i) {
        if (total > (uint64_t{1} << 20) / f.order())
            throw std::runtime_error("assignment space exceeds the exhaustive simulation bound");
        total *= f.order();
    }
    uint64_t failures = 0;
    json examples = json::array();
    for (uint64_t t = 0; t < total; ++t) {
        std::vector<FieldElem> a(net.message_count());
        uint64_t rest = t;
        for (int i = 0; i < net.message_count(); ++i) {
            a[i] = f.element(rest % f.order());
            rest /= f.order();
        }
        const Simulation sim = run_simulation(plan, a);
        for (const DemandDecode& d : sim.decodes)
            if (!d.value || *d.value != a[d.message]) {
                ++failures;
                if (examples.size() < 10)
                    examples.push_back(json{{"assignment", assignment_to_json(a)},
                                            {"node", net.node_names[d.node]},
                                            {"message", net.messages[d.message]}});
            }
    }
    std::cout << json_text(
        json{{"assignments", total}, {"failures", failures}, {"ok", failures == 0}});
    if (failures > 0) return report_failure("demands failed to decode", examples);
    return 0;
}

int run_search(const std::string& net_path, const std::string& field_name, uint64_t cap,
               int jobs, const std::string& out_path) {
    const Network net = network_from_json(read_json_file(net_path));
    const FieldCtx f = field_from_name(field_name);
    SearchOptions opts;
    opts.cap = cap;
    opts.jobs = jobs;
    const auto found = exhaustive_solve(net, f, opts);
    json doc = {{"field", f.name()}, {"solution", found.has_value()}, {"out", ""}};
    if (found) {
        if (!out_path.empty()) {
            write_json_file(out_path, code_to_json(net, *found));
            doc["out"] = out_path;
        }
        if (!validate_code(net, *found).solution())
            return report_failure("search produced an invalid code", json::object());
    }
    std::cout << json_text(doc);
    return 0;
}

int run_export_dot(const std::string& net_path, const std::string& code_path,
                   const std::string& out_path) {
    const Network net = network_from_json(read_json_file(net_path));
    std::optional<GlobalCode> code;
    if (!code_path.empty()) code = code_from_json(net, read_json_file(code_path));
    const std::string dot = to_dot(net, code ? &*code : nullptr);
    if (out_path.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        out << dot;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matroidal network coding toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    const uint64_t enum_cap_default = env_cap("MNC_ENUM_CAP", 16);
    const uint64_t search_cap_default = env_cap("MNC_SEARCH_CAP", uint64_t{1} << 24);

    // matroid check
    auto* matroid_cmd = app.add_subcommand("matroid", "matroid inspection");
    matroid_cmd->require_subcommand(1);
    auto* check = matroid_cmd->add_subcommand("check", "axioms, circuits, and bases");
    struct {
        std::string matroid;
        uint64_t cap;
    } check_opt{"", enum_cap_default};
    check->add_option("--matroid", check_opt.matroid, "matroid JSON file")->required();
    check->add_option("--cap", check_opt.cap, "enumeration cap (elements)");
    check->callback([&] { rc = run_matroid_check(check_opt.matroid, check_opt.cap); });

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "build a network from a matroid");
    struct {
        std::string matroid, config, out;
        uint64_t cap;
    } con_opt{"", "", "", enum_cap_default};
    construct_cmd->add_option("--matroid", con_opt.matroid, "matroid JSON file")->required();
    construct_cmd->add_option("--config", con_opt.config, "construction config JSON file");
    construct_cmd->add_option("--out", con_opt.out, "output network JSON file");
    construct_cmd->add_option("--cap", con_opt.cap, "enumeration cap (elements)");
    construct_cmd->callback(
        [&] { rc = run_construct(con_opt.matroid, con_opt.config, con_opt.out, con_opt.cap); });

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "code a network from a matrix representation");
    struct {
        std::string net, matrix, out, out_net;
    } solve_opt;
    solve_cmd->add_option("--network", solve_opt.net, "network JSON file (with mapping)")
        ->required();
    solve_cmd->add_option("--matrix", solve_opt.matrix, "matrix JSON file")->required();
    solve_cmd->add_option("--out", solve_opt.out, "output code JSON file");
    solve_cmd->add_option("--out-network", solve_opt.out_net, "also rewrite the network file");
    solve_cmd->callback(
        [&] { rc = run_solve(solve_opt.net, solve_opt.matrix, solve_opt.out, solve_opt.out_net); });

    // solve-uniform
    auto* uni_cmd = app.add_subcommand("solve-uniform", "build and code a uniform-matroid network");
    struct {
        int c = 0, d = 0, alphabet = 2;
        uint32_t chr = 2;
        std::string out, out_net;
    } uni_opt;
    uni_cmd->add_option("--c", uni_opt.c, "rank")->required();
    uni_cmd->add_option("--d", uni_opt.d, "ground size")->required();
    uni_cmd->add_option("--char", uni_opt.chr, "field characteristic (prime)");
    uni_cmd->add_option("--alphabet", uni_opt.alphabet, "alphabet size");
    uni_cmd->add_option("--out", uni_opt.out, "output code JSON file");
    uni_cmd->add_option("--out-network", uni_opt.out_net, "output network JSON file");
    uni_cmd->callback([&] {
        rc = run_solve_uniform(uni_opt.c, uni_opt.d, uni_opt.chr, uni_opt.alphabet, uni_opt.out,
                               uni_opt.out_net);
    });

    // solve-graphic
    auto* gr_cmd = app.add_subcommand("solve-graphic", "build and code a graphic-matroid network");
    struct {
        std::string graph, out, out_net;
        int alphabet = 2;
    } gr_opt;
    gr_cmd->add_option("--graph", gr_opt.graph, "graph JSON file")->required();
    gr_cmd->add_option("--alphabet", gr_opt.alphabet, "alphabet size");
    gr_cmd->add_option("--out", gr_opt.out, "output code JSON file");
    gr_cmd->add_option("--out-network", gr_opt.out_net, "output network JSON file");
    gr_cmd->callback(
        [&] { rc = run_solve_graphic(gr_opt.graph, gr_opt.alphabet, gr_opt.out, gr_opt.out_net); });

    // extract
    auto* ex_cmd = app.add_subcommand("extract", "matrix representation from a working code");
    struct {
        std::string net, code, out;
    } ex_opt;
    ex_cmd->add_option("--network", ex_opt.net, "network JSON file")->required();
    ex_cmd->add_option("--code", ex_opt.code, "code JSON file")->required();
    ex_cmd->add_option("--out", ex_opt.out, "output matrix JSON file");
    ex_cmd->callback([&] { rc = run_extract(ex_opt.net, ex_opt.code, ex_opt.out); });

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "check a network, mapping, or code");
    struct {
        std::string net, matroid, code;
    } ver_opt;
    ver_cmd->add_option("--network", ver_opt.net, "network JSON file")->required();
    ver_cmd->add_option("--matroid", ver_opt.matroid, "matroid JSON file (needs a mapping)");
    ver_cmd->add_option("--code", ver_opt.code, "code JSON file");
    ver_cmd->callback([&] { rc = run_verify(ver_opt.net, ver_opt.matroid, ver_opt.code); });

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "push message assignments through a code");
    struct {
        std::string net, code, assign;
        bool all = false;
    } sim_opt;
    sim_cmd->add_option("--network", sim_opt.net, "network JSON file")->required();
    sim_cmd->add_option("--code", sim_opt.code, "code JSON file")->required();
    auto* assign_opt = sim_cmd->add_option("--assign", sim_opt.assign,
                                           "comma-separated message values");
    sim_cmd->add_flag("--all", sim_opt.all, "run every assignment exhaustively")
        ->excludes(assign_opt);
    sim_cmd->callback([&] {
        if (!sim_opt.all && sim_opt.assign.empty())
            throw CLI::RequiredError("simulate needs --assign or --all");
        rc = run_simulate(sim_opt.net, sim_opt.code, sim_opt.assign, sim_opt.all);
    });

    // search
    auto* search_cmd = app.add_subcommand("search", "exhaustive scalar-linear code search");
    struct {
        std::string net, field = "2^1", out;
        uint64_t cap;
        int jobs = 1;
    } search_opt;
    search_opt.cap = search_cap_default;
    search_cmd->add_option("--network", search_opt.net, "network JSON file")->required();
    search_cmd->add_option("--field", search_opt.field, "field name, e.g. 2^2");
    search_cmd->add_option("--cap", search_opt.cap, "bound on the nominal search space");
    search_cmd->add_option("--jobs", search_opt.jobs, "parallel workers");
    search_cmd->add_option("--out", search_opt.out, "output code JSON file when found");
    search_cmd->callback([&] {
        rc = run_search(search_opt.net, search_opt.field, search_opt.cap, search_opt.jobs,
                        search_opt.out);
    });

    // export-dot
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of a network");
    struct {
        std::string net, code, out;
    } dot_opt;
    dot_cmd->add_option("--network", dot_opt.net, "network JSON file")->required();
    dot_cmd->add_option("--code", dot_opt.code, "code JSON file for edge labels");
    dot_cmd->add_option("--out", dot_opt.out, "output DOT file (default stdout)");
    dot_cmd->callback([&] { rc = run_export_dot(dot_opt.net, dot_opt.code, dot_opt.out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json_text(json{{"error", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json_text(json{{"error", e.what()}});
        return 2;
    }
    return rc;
}
