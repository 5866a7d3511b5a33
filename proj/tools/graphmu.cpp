// graphmu: build clique-chain graphs from expressions and check their
// spectral claims from the command line. Subcommands:
//   build "<expr>" -o <file>      write the evaluated graph as a text file
//   mu <file> [--method ...]      one CSV row: n,mu,residual,method,orth_defect
//   diameter <file>               the diameter as a bare integer
//   analyze <file>                order, degrees, blocks, diameter, mu, tau
//   verify counterexample ...     replay the paired-graph inequality runs
//   sweep ...                     scaling sweep for one catalog family
//   table1 ...                    audit the regular maximum-diameter table
// Exit code 0 only when every requested check passed and no error occurred.
// Output is deterministic: same invocation, same bytes.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mugraph/construct.hpp"
#include "mugraph/families.hpp"
#include "mugraph/graph.hpp"
#include "mugraph/spectral.hpp"
#include "mugraph/verify.hpp"

namespace {

using namespace mugraph;

struct SizeRange {
    int first = 0;
    int last = 0;
    int step = 1;
};

SizeRange parse_size_range(const std::string& text) {
    SizeRange range;
    int consumed = 0;
    int fields = std::sscanf(text.c_str(), "%d:%d:%d%n", &range.first, &range.last,
                             &range.step, &consumed);
    if (fields == 3 && consumed == static_cast<int>(text.size())) return range;
    fields = std::sscanf(text.c_str(), "%d:%d%n", &range.first, &range.last,
                         &consumed);
    if (fields == 2 && consumed == static_cast<int>(text.size())) {
        range.step = 1;
        return range;
    }
    throw Error("size range must look like first:last or first:last:step, got \"" +
                text + "\"");
}

std::vector<int> parse_size_list(const std::string& text) {
    std::vector<int> sizes;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string field = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int value = 0;
        int consumed = 0;
        if (std::sscanf(field.c_str(), "%d%n", &value, &consumed) != 1 ||
            consumed != static_cast<int>(field.size()))
            throw Error("size list must be comma-separated integers, got \"" +
                        text + "\"");
        sizes.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return sizes;
}

int run_build(const std::string& expr_text, const std::string& out_path) {
    Evaluated result = evaluate(parse(expr_text));
    write_graph_file(result.graph, out_path);
    return 0;
}

int run_mu(const std::string& path, const std::string& method) {
    Graph g = read_graph_file(path);
    FiedlerResult result =
        method == "quotient"
            // Individualizing vertex 0 breaks mirror symmetries that would
            // otherwise hide the second eigenvector from the quotient.
            ? fiedler(g, equitable_refinement(g, 0))
            : fiedler(g);
    std::printf("%s\n", result.csv_row().c_str());
    return 0;
}

int run_diameter(const std::string& path) {
    std::printf("%d\n", diameter(read_graph_file(path)));
    return 0;
}

int run_analyze(const std::string& path) {
    Graph g = read_graph_file(path);
    std::printf("n: %d\n", g.n);
    std::printf("edges: %zu\n", static_cast<std::size_t>(g.edge_count));

    std::vector<int> degrees = degree_profile(g);
    std::string profile;
    for (std::size_t i = 0; i < degrees.size();) {
        std::size_t j = i;
        while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
        if (!profile.empty()) profile += ' ';
        profile += std::to_string(degrees[i]) + ":" + std::to_string(j - i);
        i = j;
    }
    std::printf("degrees: %s\n", profile.c_str());
    if (is_regular(g) && g.n > 0)
        std::printf("regular: yes (d=%d)\n", g.degree(0));
    else
        std::printf("regular: no\n");

    BlockDecomposition blocks = block_decomposition(g);
    std::printf("blocks: %zu\n", blocks.blocks.size());
    std::printf("path_like: %s\n", blocks.block_tree_is_path ? "yes" : "no");
    std::printf("diameter: %d\n", diameter(g));
    FiedlerResult fr = fiedler(g);
    std::printf("mu: %.17g\n", fr.mu);
    std::printf("tau: %.17g\n", relaxation_time(g));
    return 0;
}

int run_verify_counterexample(const std::string& family,
                              const std::string& range_text) {
    SizeRange range = parse_size_range(range_text);
    PairKind kind = family == "cubic" ? PairKind::Cubic : PairKind::Quartic;
    CounterexampleRun run =
        reproduce_counterexamples(kind, range.first, range.last, range.step);
    for (const auto& report : run.reports)
        std::printf("%s\n", format_report(report).c_str());
    std::string path = write_claim_csv("", run.claim_id, run.csv);
    std::printf("wrote %s\n", path.c_str());
    return run.all_passed() ? 0 : 1;
}

int run_sweep(const std::string& family, int d, const std::string& list_text,
              const std::string& out_path) {
    SweepRun run = scaling_sweep(family, d, parse_size_list(list_text));
    std::printf("%s\n", format_report(run.trend).c_str());
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open " + out_path + " for writing");
    out << run.csv;
    out.flush();
    if (!out) throw Error("failed while writing " + out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return run.all_passed() ? 0 : 1;
}

int run_table1(int d, int m) {
    std::vector<VerificationReport> reports = table1_audit({d}, m);
    bool all = true;
    for (const auto& report : reports) {
        std::printf("%s\n", format_report(report).c_str());
        all = all && report.passed;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"build chain graphs and verify their spectral claims"};
    app.require_subcommand(1);

    std::string expr_text, out_path, file_path, method = "dense";
    std::string family, range_text, list_text;
    int d = 0, m = 0;

    CLI::App* build = app.add_subcommand("build", "evaluate an expression to a graph file");
    build->add_option("expr", expr_text, "chain expression")->required();
    build->add_option("-o,--output", out_path, "output graph file")->required();

    CLI::App* mu = app.add_subcommand("mu", "algebraic connectivity as a CSV row");
    mu->add_option("file", file_path, "graph file")->required();
    mu->add_option("--method", method, "dense or quotient")
        ->check(CLI::IsMember({"dense", "quotient"}));

    CLI::App* diam = app.add_subcommand("diameter", "print the diameter");
    diam->add_option("file", file_path, "graph file")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "structural and spectral summary");
    analyze->add_option("file", file_path, "graph file")->required();

    CLI::App* verify = app.add_subcommand("verify", "replay verification runs");
    verify->require_subcommand(1);
    CLI::App* counter = verify->add_subcommand(
        "counterexample", "paired graphs: smaller diameter, smaller connectivity");
    counter->add_option("--family", family, "cubic or quartic")
        ->required()
        ->check(CLI::IsMember({"cubic", "quartic"}));
    counter->add_option("--m", range_text, "size range first:last[:step]")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "scaling sweep for one family");
    sweep->add_option("--family", family, "catalog family name")->required();
    sweep->add_option("--d", d, "degree parameter");
    sweep->add_option("--m", list_text, "comma-separated sizes")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* table = app.add_subcommand("table1", "audit the maximum-diameter table");
    table->add_option("--d", d, "degree")->required();
    table->add_option("--m", m, "chain length (>= 3)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return run_build(expr_text, out_path);
        if (mu->parsed()) return run_mu(file_path, method);
        if (diam->parsed()) return run_diameter(file_path);
        if (analyze->parsed()) return run_analyze(file_path);
        if (counter->parsed()) return run_verify_counterexample(family, range_text);
        if (sweep->parsed()) return run_sweep(family, d, list_text, out_path);
        if (table->parsed()) return run_table1(d, m);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
