#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mugraph/construct.hpp"
#include "mugraph/graph.hpp"

using namespace mugraph;

namespace {

Graph eval_graph(const std::string& s) { return evaluate(parse(s)).graph; }

std::vector<size_t> cell_sizes(const std::string& s) {
    Evaluated ev = evaluate(parse(s));
    std::vector<size_t> out;
    for (const auto& c : ev.cells.cells) out.push_back(c.size());
    return out;
}

template <typename F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

int parse_error_offset(const std::string& s) {
    try {
        parse(s);
    } catch (const ParseError& e) {
        return static_cast<int>(e.offset());
    }
    return -1;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("primitive graphs") {
    CHECK(eval_graph("K1").n == 1);
    CHECK(eval_graph("K1").edge_count == 0);
    CHECK(eval_graph("K4").edge_count == 6);
    CHECK(eval_graph("Kb3").n == 3);
    CHECK(eval_graph("Kb3").edge_count == 0);
    Graph c5 = eval_graph("C5");
    CHECK(c5.n == 5);
    CHECK(c5.edge_count == 5);
    CHECK(degree_profile(c5) == std::vector<int>{2, 2, 2, 2, 2});
    CHECK(diameter(c5) == 2);

    CHECK(contains(thrown_message([] { eval_graph("K0"); }), "at least one"));
    CHECK(contains(thrown_message([] { eval_graph("Kb0"); }), "at least one"));
    CHECK(contains(thrown_message([] { eval_graph("C2"); }), "at least three"));
}

TEST_CASE("named end blocks") {
    for (int d : {4, 6, 8}) {
        Evaluated ev = evaluate(parse("H1(" + std::to_string(d) + ")"));
        CHECK(ev.graph.n == d + 3);
        CHECK(ev.attachment == 0);
        CHECK(ev.graph.degree(ev.attachment) == 2);
        std::vector<int> want(d + 3, d);
        want[0] = 2;
        std::sort(want.begin(), want.end());
        CHECK(degree_profile(ev.graph) == want);
    }
    CHECK(contains(thrown_message([] { eval_graph("H1(5)"); }), "even degree"));
    CHECK(contains(thrown_message([] { eval_graph("H1(2)"); }), ">= 4"));

    Evaluated h2 = evaluate(parse("H2"));
    CHECK(h2.graph.n == 8);
    CHECK(h2.graph.edge_count == 15);
    CHECK(h2.attachment == 7);
    CHECK(degree_profile(h2.graph) == std::vector<int>{2, 4, 4, 4, 4, 4, 4, 4});

    Evaluated h3 = evaluate(parse("H3"));
    CHECK(h3.graph.n == 7);
    CHECK(h3.graph.edge_count == 13);
    CHECK(h3.attachment == 6);
    CHECK(degree_profile(h3.graph) == std::vector<int>{2, 4, 4, 4, 4, 4, 4});

    // Plain primitives and compounds carry no attachment vertex.
    CHECK(evaluate(parse("K2")).attachment == -1);
    CHECK(evaluate(parse("H2 o K2")).attachment == -1);
}

TEST_CASE("parse and print round trips") {
    const std::vector<std::string> canonical = {
        "K1",
        "Kb7",
        "C12",
        "H2",
        "H1(6)",
        "K2 + K3",
        "K2 + K3 + K4",
        "K2 u+1 K2",
        "C4 +-1 C4",
        "K4^-1",
        "Kb4^+2",
        "(K1 + K1 + K2)_3",
        "K2 + K2^-1 + (K1 + K1 + K2)_3",
        "(K2 + K3)_2 + K5",
        "K2 + K2 u+1 K2 + K2",
        "K3 + K2^-1 + (K1 + K2 + K2)_4 o H2",
        "H3 o K2 + K2 o H3",
        "H3 o K2 + K2 + (K1 + K2 + K2)_5 o H3",
        "(K2 u+1 K2 + Kb2 + Kb2)_7 + K4^-3 + C4",
        "K1 + Kb2 + Kb5 +-1 C5",
        "(K2)_1",
    };
    for (const auto& s : canonical) {
        CAPTURE(s);
        CHECK(print(parse(s)) == s);
    }

    // Whitespace and grouping normalize to the same canonical string, the
    // same cells, and the same edge set.
    const std::vector<std::pair<std::string, std::string>> variants = {
        {"K2+K3", "K2 + K3"},
        {"  K2   u+1\tK2 ", "K2 u+1 K2"},
        {"( K1 + K1 + K2 )_ 3", "(K1 + K1 + K2)_3"},
        {"(K4)", "K4"},
        {"K2+K2^-1+(K1+K1+K2)_3", "K2 + K2^-1 + (K1 + K1 + K2)_3"},
        {"H1( 8 )", "H1(8)"},
    };
    for (const auto& [noisy, want] : variants) {
        CAPTURE(noisy);
        CHECK(print(parse(noisy)) == want);
        CHECK(eval_graph(noisy).edges() == eval_graph(want).edges());
    }

    // print . parse is idempotent and evaluation is stable across it.
    for (const auto& s : canonical) {
        std::string once = print(parse(s));
        CHECK(print(parse(once)) == once);
        CHECK(eval_graph(once).edges() == eval_graph(s).edges());
    }
}

TEST_CASE("parse errors carry byte offsets") {
    struct Case {
        std::string text;
        int offset;
        std::string needle;
    };
    const std::vector<Case> cases = {
        {"", 0, "expected a term"},
        {"K", 1, "expected an integer"},
        {"K2 +", 4, "expected a term"},
        {"(K2", 3, "expected ')'"},
        {"K2)", 2, "trailing"},
        {"K2 ^ -1", 3, "expected '^-' or '^+'"},
        {"K2 o K3", 3, "exactly one side of 'o'"},
        {"H2 o H3", 3, "exactly one side of 'o'"},
        {"K2 u+2 K2", 3, "expected operator"},
        {"K2 & K3", 3, "expected an operator"},
        {"K2 oK3", 3, "expected operator"},
        {"(K2)_", 5, "expected an integer"},
        {"K9999999999", 1, "integer too large"},
        {"H1(4", 4, "expected ')'"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        CHECK(parse_error_offset(c.text) == c.offset);
        CHECK(contains(thrown_message([&] { parse(c.text); }), c.needle));
    }
}

TEST_CASE("join, matching, and join-minus-matching semantics") {
    // Complete join of cliques is a bigger clique.
    Graph k5 = eval_graph("K3 + K2");
    CHECK(k5.n == 5);
    CHECK(k5.edge_count == 10);
    CHECK(evaluate(parse("K3 + K2")).cells.cells ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}});

    // Joining empty cells gives complete bipartite graphs.
    Graph k33 = eval_graph("Kb3 + Kb3");
    CHECK(k33.edge_count == 9);
    CHECK(degree_profile(k33) == std::vector<int>(6, 3));
    CHECK(diameter(k33) == 2);

    // Identity matching between two K2 cells closes a 4-cycle.
    Graph u = eval_graph("K2 u+1 K2");
    CHECK(u.edges() ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    // Join minus the identity matching closes the other 4-cycle.
    Graph jm = eval_graph("K2 +-1 K2");
    CHECK(jm.edges() ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

    CHECK(contains(thrown_message([] { eval_graph("K2 u+1 K3"); }),
                   "equal terminal cell sizes"));
    CHECK(contains(thrown_message([] { eval_graph("K2 +-1 K3"); }),
                   "equal terminal cell sizes"));

    // Operators act on terminal cells only: the middle of a chain is inert.
    Graph chain = eval_graph("K1 + K2 u+1 K2");
    // Cells {0}, {1,2}, {3,4}: edges 0-1, 0-2, 1-2, 3-4, matching 1-3, 2-4.
    CHECK(chain.edges() == std::vector<std::pair<int, int>>{
                               {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
}

TEST_CASE("1-factor modifiers") {
    Graph c4ish = eval_graph("K4^-1");
    CHECK(degree_profile(c4ish) == std::vector<int>{2, 2, 2, 2});
    CHECK(c4ish.edge_count == 4);
    CHECK(diameter(c4ish) == 2);

    CHECK(degree_profile(eval_graph("K6^-1")) == std::vector<int>(6, 4));
    CHECK(degree_profile(eval_graph("K6^-3")) == std::vector<int>(6, 2));
    CHECK(degree_profile(eval_graph("K6^-5")) == std::vector<int>(6, 0));

    CHECK(eval_graph("Kb4^+1").edge_count == 2);
    CHECK(degree_profile(eval_graph("Kb4^+2")) == std::vector<int>{2, 2, 2, 2});
    CHECK(eval_graph("Kb4^+3").edge_count == 6);  // builds all of K4

    CHECK(eval_graph("Kb2^+1").edges() == std::vector<std::pair<int, int>>{{0, 1}});

    CHECK(contains(thrown_message([] { eval_graph("K3^-1"); }), "even vertex count"));
    CHECK(contains(thrown_message([] { eval_graph("K2^-2"); }), "out of range"));
    CHECK(contains(thrown_message([] { eval_graph("K2^+1"); }), "already present"));
    CHECK(contains(thrown_message([] { eval_graph("Kb2^-1"); }), "absent"));

    // The modifier binds to the final cell of a chain, not the whole chain.
    Graph g = eval_graph("K1 + K4^-1");
    CHECK(g.n == 5);
    CHECK(g.degree(0) == 4);
    for (int v = 1; v < 5; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("repetition chains copies with complete joins") {
    Graph g = eval_graph("(K1 + K1 + K2)_3");
    CHECK(g.n == 12);
    CHECK(cell_sizes("(K1 + K1 + K2)_3") ==
          std::vector<size_t>{1, 1, 2, 1, 1, 2, 1, 1, 2});
    CHECK(eval_graph("(K2)_1").edges() == eval_graph("K2").edges());
    CHECK(eval_graph("(K2 + K3)_2").edges() == eval_graph("K2 + K3 + K2 + K3").edges());
    CHECK(contains(thrown_message([] { eval_graph("(K2)_0"); }), "repetition count"));

    // The worked 16-vertex example: cap, matched cap, three groups.
    CHECK(eval_graph("K2 + K2^-1 + (K1 + K1 + K2)_3").n == 16);
    CHECK(cell_sizes("K2 + K2^-1 + (K1 + K1 + K2)_3") ==
          std::vector<size_t>{2, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2});
}

TEST_CASE("circle attachment joins a block's degree-2 vertex to a terminal cell") {
    // Block on the right: attachment joins the chain's last cell.
    Evaluated right = evaluate(parse("K2 + K2 o H3"));
    CHECK(right.graph.n == 11);
    int at = 4 + 6;  // H3 occupies 4..10, attachment is its local vertex 6
    CHECK(right.graph.has_edge(at, 2));
    CHECK(right.graph.has_edge(at, 3));
    CHECK(right.graph.degree(at) == 4);
    CHECK(right.cells.cells[0] == std::vector<int>{0, 1});
    CHECK(right.cells.cells[1] == std::vector<int>{2, 3});

    // Block on the left: block vertices come first, chain follows.
    Evaluated left = evaluate(parse("H3 o K2 + K2"));
    CHECK(left.graph.n == 11);
    CHECK(left.graph.has_edge(6, 7));
    CHECK(left.graph.has_edge(6, 8));
    CHECK(left.graph.degree(6) == 4);
    CHECK(left.graph.has_edge(9, 10));  // chain's second K2 stays intact

    // Attachment counts as one neighbour for each terminal-cell vertex.
    for (int v : {7, 8}) CHECK(left.graph.degree(v) == 4);
}

TEST_CASE("one_factor builds a 1-factorization of the complete graph") {
    for (int n : {2, 4, 6, 10, 14}) {
        std::set<std::pair<int, int>> all;
        for (int j = 0; j <= n - 2; ++j) {
            auto f = one_factor(n, j);
            CHECK(static_cast<int>(f.size()) == n / 2);
            std::vector<int> used(n, 0);
            for (auto [u, v] : f) {
                CHECK(u != v);
                used[u]++;
                used[v]++;
                auto e = std::minmax(u, v);
                CHECK(all.insert({e.first, e.second}).second);  // factors are disjoint
            }
            for (int v = 0; v < n; ++v) CHECK(used[v] == 1);  // perfect matching
        }
        CHECK(all.size() == static_cast<size_t>(n) * (n - 1) / 2);  // they cover K_n
    }
    CHECK(!thrown_message([] { one_factor(5, 0); }).empty());
    CHECK(!thrown_message([] { one_factor(4, 3); }).empty());
}

TEST_CASE("public builders agree with the expression language") {
    Graph k2 = eval_graph("K2");
    Graph k3 = eval_graph("K3");

    Evaluated sj = sequential_join({k2, k3, k2});
    CHECK(sj.graph.edges() == eval_graph("K2 + K3 + K2").edges());
    CHECK(sj.cells.cells ==
          std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}, {5, 6}});

    CHECK(factor_mod(eval_graph("K4"), 1, false).edges() == eval_graph("K4^-1").edges());
    CHECK(factor_mod(eval_graph("Kb4"), 2, true).edges() == eval_graph("Kb4^+2").edges());

    CHECK(union_with_factor(k2, k2, FactorJoinMode::MatchingOnly).edges() ==
          eval_graph("K2 u+1 K2").edges());
    CHECK(union_with_factor(k2, k2, FactorJoinMode::JoinMinusMatching).edges() ==
          eval_graph("K2 +-1 K2").edges());
    CHECK(contains(
        thrown_message([&] { union_with_factor(k2, k3, FactorJoinMode::MatchingOnly); }),
        "equal orders"));

    // Direct attachment mirrors the 'o' operator.
    Evaluated h3 = evaluate(parse("H3"));
    Graph chain = eval_graph("K2 + K2");
    Graph attached = attach_end_block(chain, {2, 3}, h3.graph, h3.attachment, Side::Right);
    CHECK(attached.edges() == eval_graph("K2 + K2 o H3").edges());
    Graph attached_left = attach_end_block(chain, {0, 1}, h3.graph, h3.attachment, Side::Left);
    CHECK(attached_left.edges() == eval_graph("H3 o K2 + K2").edges());

    CHECK(contains(
        thrown_message([&] { attach_end_block(chain, {0}, eval_graph("K4"), 0, Side::Right); }),
        "has degree 3"));
    CHECK(contains(
        thrown_message([&] { attach_end_block(chain, {}, h3.graph, 6, Side::Right); }),
        "must not be empty"));
}
