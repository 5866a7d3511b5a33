#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mugraph/graph.hpp"

using namespace mugraph;

namespace {

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return build_graph(n, es);
}

Graph cycle_graph(int n) {
    auto es = path_graph(n).edges();
    es.emplace_back(0, n - 1);
    return build_graph(n, es);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return build_graph(n, es);
}

Graph random_graph(std::mt19937& rng, int n, double p, bool force_connected) {
    std::set<std::pair<int, int>> es;
    if (force_connected) {
        // Random spanning tree: attach each vertex to an earlier one.
        for (int v = 1; v < n; ++v) {
            int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
            es.insert({u, v});
        }
    }
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) es.insert({i, j});
    return build_graph(n, {es.begin(), es.end()});
}

// O(n^3) all-pairs shortest paths, independent of the BFS implementation.
std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
    for (int v = 0; v < g.n; ++v) d[v][v] = 0;
    for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = -1;
    return d;
}

int component_count(const Graph& g, int skip = -1) {
    std::vector<char> seen(g.n, 0);
    if (skip >= 0) seen[skip] = 1;
    int comps = 0;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return comps;
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

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("build_graph validates its input") {
    Graph g = build_graph(4, {{0, 1}, {2, 1}, {2, 3}});
    CHECK(g.n == 4);
    CHECK(g.edge_count == 3);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK(!g.has_edge(0, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});

    CHECK(contains(thrown_message([] { build_graph(3, {{0, 0}}); }), "self-loop"));
    CHECK(contains(thrown_message([] { build_graph(3, {{0, 3}}); }), "outside"));
    CHECK(contains(thrown_message([] { build_graph(3, {{0, 1}, {1, 0}}); }), "duplicate edge"));
    CHECK(contains(thrown_message([] { build_graph(-1, {}); }), "at least one vertex"));
    CHECK(contains(thrown_message([] { build_graph(0, {}); }), "at least one vertex"));
}

TEST_CASE("degree profile and regularity") {
    CHECK(degree_profile(path_graph(4)) == std::vector<int>{1, 1, 2, 2});
    CHECK(is_regular(cycle_graph(5)));
    CHECK(is_regular(complete_graph(6)));
    CHECK(!is_regular(path_graph(3)));
    CHECK(is_regular(build_graph(1, {})));
}

TEST_CASE("BFS distances match a Floyd-Warshall oracle on random graphs") {
    std::mt19937 rng(20260819);
    for (int trial = 0; trial < 60; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 48)(rng);
        double p = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
        Graph g = random_graph(rng, n, p, trial % 2 == 0);
        auto oracle = floyd_warshall(g);
        for (int s = 0; s < n; ++s) CHECK(bfs_distances(g, s) == oracle[s]);
    }
}

TEST_CASE("eccentricities and diameter on closed-form families") {
    for (int n : {2, 3, 7, 12}) {
        CHECK(diameter(path_graph(n)) == n - 1);
        CHECK(diameter(complete_graph(n)) == 1);
    }
    for (int n : {3, 4, 9, 10}) CHECK(diameter(cycle_graph(n)) == n / 2);
    CHECK(eccentricities(path_graph(5)) == std::vector<int>{4, 3, 2, 3, 4});
    CHECK(diameter(build_graph(1, {})) == 0);

    Graph disconnected = build_graph(4, {{0, 1}, {2, 3}});
    CHECK(contains(thrown_message([&] { diameter(disconnected); }), "infinite diameter"));
    CHECK(contains(thrown_message([&] { eccentricities(disconnected); }), "infinite diameter"));
}

TEST_CASE("distance partition layers are consecutive BFS shells") {
    // Two (K1, K1, K2) groups joined in sequence: 0-1, 1-{2,3}, 2-3, {2,3}-4,
    // 4-5, 5-{6,7}, 6-7.
    Graph g = build_graph(8, {{0, 1},
                              {1, 2},
                              {1, 3},
                              {2, 3},
                              {2, 4},
                              {3, 4},
                              {4, 5},
                              {5, 6},
                              {5, 7},
                              {6, 7}});
    CellPartition layers = distance_partition(g, 0);
    std::vector<size_t> sizes;
    for (const auto& cell : layers.cells) sizes.push_back(cell.size());
    CHECK(sizes == std::vector<size_t>{1, 1, 2, 1, 1, 2});
    layers.validate(g);

    // Layer property: neighbours of layer i live in layers i-1, i, i+1, and
    // every layer i+1 vertex has a neighbour in layer i.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Graph h = random_graph(rng, std::uniform_int_distribution<int>(2, 40)(rng), 0.15, true);
        CellPartition dp = distance_partition(h, trial % h.n);
        dp.validate(h);
        std::vector<int> layer = dp.cell_of(h);
        for (auto [u, v] : h.edges()) CHECK(std::abs(layer[u] - layer[v]) <= 1);
        for (size_t i = 1; i < dp.cells.size(); ++i)
            for (int v : dp.cells[i]) {
                bool back = false;
                for (int w : h.adj[v]) back = back || layer[w] == static_cast<int>(i) - 1;
                CHECK(back);
            }
    }

    Graph disconnected = build_graph(3, {{0, 1}});
    CHECK(contains(thrown_message([&] { distance_partition(disconnected, 0); }), "unreachable"));
}

TEST_CASE("block decomposition of known shapes") {
    // A path: every edge is its own block, interior vertices are cuts.
    BlockDecomposition bd = block_decomposition(path_graph(4));
    CHECK(bd.blocks == std::vector<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(bd.cut_vertices == std::vector<int>{1, 2});
    CHECK(bd.block_tree_is_path);
    CHECK(bd.end_blocks == std::vector<int>{0, 2});

    // A cycle: one block, no cuts.
    bd = block_decomposition(cycle_graph(6));
    CHECK(bd.blocks.size() == 1);
    CHECK(bd.cut_vertices.empty());
    CHECK(bd.block_tree_is_path);

    // Triangle with a pendant edge at vertex 0.
    bd = block_decomposition(build_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}));
    CHECK(bd.blocks == std::vector<std::vector<int>>{{0, 1, 2}, {0, 3}});
    CHECK(bd.cut_vertices == std::vector<int>{0});
    CHECK(bd.block_tree_is_path);

    // Three triangles sharing one vertex: a star of blocks, not a path.
    bd = block_decomposition(build_graph(
        7, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}, {0, 5}, {0, 6}, {5, 6}}));
    CHECK(bd.blocks.size() == 3);
    CHECK(bd.cut_vertices == std::vector<int>{0});
    CHECK(!bd.block_tree_is_path);
    CHECK(bd.end_blocks.size() == 3);

    // Isolated vertex: a singleton block.
    bd = block_decomposition(build_graph(1, {}));
    CHECK(bd.blocks == std::vector<std::vector<int>>{{0}});
    CHECK(bd.cut_vertices.empty());

    // Disconnected graphs are decomposed but never path-shaped.
    bd = block_decomposition(build_graph(4, {{0, 1}, {2, 3}}));
    CHECK(bd.blocks.size() == 2);
    CHECK(!bd.block_tree_is_path);
}

TEST_CASE("block decomposition matches brute force on random graphs") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 36)(rng);
        double p = std::uniform_real_distribution<double>(0.05, 0.35)(rng);
        Graph g = random_graph(rng, n, p, trial % 3 != 0);
        BlockDecomposition bd = block_decomposition(g);

        // Cut vertices: deleting one leaves strictly more components.
        int base = component_count(g);
        std::vector<int> brute;
        for (int v = 0; v < n; ++v)
            if (component_count(g, v) > base) brute.push_back(v);
        CHECK(bd.cut_vertices == brute);

        // Every edge lies in exactly one block.
        std::set<std::pair<int, int>> covered;
        long long in_blocks = 0;
        for (const auto& blk : bd.blocks) {
            for (size_t i = 0; i < blk.size(); ++i)
                for (size_t j = i + 1; j < blk.size(); ++j)
                    if (g.has_edge(blk[i], blk[j])) {
                        ++in_blocks;
                        covered.insert({blk[i], blk[j]});
                    }
        }
        CHECK(in_blocks == g.edge_count);
        CHECK(static_cast<long long>(covered.size()) == g.edge_count);

        // Block-tree identity: sum of (|B| - 1) = n - #components.
        long long acc = 0;
        for (const auto& blk : bd.blocks) acc += static_cast<long long>(blk.size()) - 1;
        CHECK(acc == n - base);
    }
}

TEST_CASE("equitable partitions: quotients and witnesses") {
    Graph k4 = complete_graph(4);
    CellPartition p{{{0}, {1, 2, 3}}};
    auto res = is_equitable(k4, p);
    REQUIRE(std::holds_alternative<std::vector<std::vector<int>>>(res));
    CHECK(std::get<0>(res) == std::vector<std::vector<int>>{{0, 3}, {1, 2}});

    Graph p3 = path_graph(3);
    res = is_equitable(p3, CellPartition{{{0, 2}, {1}}});
    REQUIRE(std::holds_alternative<std::vector<std::vector<int>>>(res));
    CHECK(std::get<0>(res) == std::vector<std::vector<int>>{{0, 1}, {2, 0}});

    // {0,1} is not equitable in P3: vertex 0 sees one in-cell neighbour,
    // vertex 1 sees none in-cell but one in {2}.
    res = is_equitable(p3, CellPartition{{{0, 1}, {2}}});
    REQUIRE(std::holds_alternative<EquitableWitness>(res));
    auto w = std::get<EquitableWitness>(res);
    CHECK(w.cell == 0);
    CHECK(w.u != w.v);

    CHECK(contains(thrown_message([&] { is_equitable(p3, CellPartition{{{0}, {1}}}); }),
                   "not covered"));
    CHECK(contains(
        thrown_message([&] { is_equitable(p3, CellPartition{{{0, 1}, {1, 2}}}); }),
        "appears in cells"));
}

TEST_CASE("equitable refinement reaches a stable partition") {
    CellPartition cp = equitable_refinement(path_graph(4));
    CHECK(cp.cells == std::vector<std::vector<int>>{{0, 3}, {1, 2}});

    // Regular graphs refine to a single cell.
    CHECK(equitable_refinement(cycle_graph(8)).cells.size() == 1);

    // Individualizing a cycle vertex yields the distance layers around it.
    CellPartition ind = equitable_refinement(cycle_graph(6), 0);
    CHECK(ind.cells == std::vector<std::vector<int>>{{0}, {1, 5}, {2, 4}, {3}});

    // The result is always equitable, and refining it again is a fixed point.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(rng, std::uniform_int_distribution<int>(1, 40)(rng), 0.2,
                               trial % 2 == 0);
        CellPartition q = equitable_refinement(g, trial % 5 == 0 ? trial % g.n : -1);
        q.validate(g);
        CHECK(std::holds_alternative<std::vector<std::vector<int>>>(is_equitable(g, q)));
    }
}

TEST_CASE("text format writes canonically and reads strictly") {
    Graph g = build_graph(4, {{2, 3}, {0, 1}, {1, 2}});
    std::string text = write_graph_text(g);
    CHECK(text == "4 3\n0 1\n1 2\n2 3\n");
    Graph back = read_graph_text(text);
    CHECK(back.n == g.n);
    CHECK(back.edges() == g.edges());

    CHECK(write_graph_text(build_graph(1, {})) == "1 0\n");
    CHECK(read_graph_text("1 0\n").n == 1);

    // Round trip through a file.
    std::string path = "/tmp/mugraph_test_roundtrip.txt";
    write_graph_file(g, path);
    CHECK(read_graph_file(path).edges() == g.edges());
    std::remove(path.c_str());

    // Every deviation from the canonical form is rejected.
    CHECK(contains(thrown_message([] { read_graph_text("4 3\n0 1\n1 2\n2 3"); }), "newline"));
    CHECK(!thrown_message([] { read_graph_text("4 3\n0 1\n2 3\n1 2\n"); }).empty());  // order
    CHECK(!thrown_message([] { read_graph_text("4 3\n1 0\n1 2\n2 3\n"); }).empty());  // u >= v
    CHECK(!thrown_message([] { read_graph_text("4 3\n0 01\n1 2\n2 3\n"); }).empty());  // zeros
    CHECK(!thrown_message([] { read_graph_text("4 3\n0  1\n1 2\n2 3\n"); }).empty());  // spaces
    CHECK(!thrown_message([] { read_graph_text("4 2\n0 1\n1 2\n2 3\n"); }).empty());  // count
    CHECK(!thrown_message([] { read_graph_text("4 4\n0 1\n1 2\n2 3\n"); }).empty());  // count
    CHECK(!thrown_message([] { read_graph_text("4 3\n0 1\n1 2\n2 5\n"); }).empty());  // range
    CHECK(!thrown_message([] { read_graph_text(" 4 3\n0 1\n1 2\n2 3\n"); }).empty());
    CHECK(!thrown_message([] { read_graph_text("4 3\n0 1\n0 1\n2 3\n"); }).empty());  // dup
    CHECK(!thrown_message([] { read_graph_text(""); }).empty());
}

TEST_CASE("cell partition validation") {
    Graph g = path_graph(4);
    CellPartition ok{{{0, 1}, {2}, {3}}};
    ok.validate(g);
    CHECK(ok.cell_of(g) == std::vector<int>{0, 0, 1, 2});

    CHECK(!thrown_message([&] { CellPartition{{{0, 1}, {2}}}.validate(g); }).empty());
    CHECK(!thrown_message([&] { CellPartition{{{0, 1, 1}, {2}, {3}}}.validate(g); }).empty());
    CHECK(!thrown_message([&] { CellPartition{{{0, 1}, {}, {2, 3}}}.validate(g); }).empty());
    CHECK(!thrown_message([&] { CellPartition{{{0, 1}, {2, 4}}}.validate(g); }).empty());
}
