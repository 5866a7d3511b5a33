#include "mugraph/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace mugraph {

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(edge_count));
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (v > u) out.emplace_back(u, v);
    return out;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw Error("graph must have at least one vertex, got n = " + std::to_string(n));
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    auto name = [](int u, int v) {
        return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
    };
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("edge " + name(u, v) + " has an endpoint outside 0.." +
                        std::to_string(n - 1));
        if (u == v) throw Error("self-loop " + name(u, v) + " is not allowed");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (int u = 0; u < n; ++u) {
        auto& a = g.adj[u];
        std::sort(a.begin(), a.end());
        auto dup = std::adjacent_find(a.begin(), a.end());
        if (dup != a.end()) {
            int v = *dup;
            throw Error("duplicate edge (" + std::to_string(std::min(u, v)) + "," +
                        std::to_string(std::max(u, v)) + ")");
        }
    }
    g.edge_count = static_cast<long long>(edges.size());
    return g;
}

void CellPartition::validate(const Graph& g) const {
    std::vector<int> seen(g.n, -1);
    for (size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty())
            throw Error("partition cell " + std::to_string(c) + " is empty");
        for (int v : cells[c]) {
            if (v < 0 || v >= g.n)
                throw Error("partition cell " + std::to_string(c) + " contains vertex " +
                            std::to_string(v) + " outside 0.." + std::to_string(g.n - 1));
            if (seen[v] != -1)
                throw Error("vertex " + std::to_string(v) + " appears in cells " +
                            std::to_string(seen[v]) + " and " + std::to_string(c));
            seen[v] = static_cast<int>(c);
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (seen[v] == -1)
            throw Error("vertex " + std::to_string(v) + " is not covered by any cell");
}

std::vector<int> CellPartition::cell_of(const Graph& g) const {
    validate(g);
    std::vector<int> owner(g.n, -1);
    for (size_t c = 0; c < cells.size(); ++c)
        for (int v : cells[c]) owner[v] = static_cast<int>(c);
    return owner;
}

std::vector<int> degree_profile(const Graph& g) {
    std::vector<int> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
    std::sort(deg.begin(), deg.end());
    return deg;
}

bool is_regular(const Graph& g) {
    for (int v = 1; v < g.n; ++v)
        if (g.degree(v) != g.degree(0)) return false;
    return true;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n)
        throw Error("BFS source " + std::to_string(source) + " outside 0.." +
                    std::to_string(g.n - 1));
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.adj[u])
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

std::vector<int> eccentricities(const Graph& g) {
    std::vector<int> ecc(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        auto dist = bfs_distances(g, s);
        int far = 0;
        for (int v = 0; v < g.n; ++v) {
            if (dist[v] == -1)
                throw Error("infinite diameter: vertex " + std::to_string(v) +
                            " is unreachable from vertex " + std::to_string(s));
            far = std::max(far, dist[v]);
        }
        ecc[s] = far;
    }
    return ecc;
}

int diameter(const Graph& g) {
    auto ecc = eccentricities(g);
    return *std::max_element(ecc.begin(), ecc.end());
}

CellPartition distance_partition(const Graph& g, int v) {
    auto dist = bfs_distances(g, v);
    int far = 0;
    for (int u = 0; u < g.n; ++u) {
        if (dist[u] == -1)
            throw Error("distance partition undefined: vertex " + std::to_string(u) +
                        " is unreachable from vertex " + std::to_string(v));
        far = std::max(far, dist[u]);
    }
    CellPartition p;
    p.cells.assign(far + 1, {});
    for (int u = 0; u < g.n; ++u) p.cells[dist[u]].push_back(u);
    return p;
}

BlockDecomposition block_decomposition(const Graph& g) {
    const int n = g.n;
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<char> is_cut(n, 0);
    std::vector<std::pair<int, int>> estack;
    BlockDecomposition out;
    int timer = 0;
    int components = 0;

    struct Frame {
        int u;
        size_t ei;
        int children;
    };

    auto emit_block = [&](int p, int u) {
        // Pop the edge stack down to and including (p,u); the popped edges
        // form one biconnected block.
        std::vector<int> verts;
        while (!estack.empty()) {
            auto [a, b] = estack.back();
            estack.pop_back();
            verts.push_back(a);
            verts.push_back(b);
            if (a == p && b == u) break;
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        out.blocks.push_back(std::move(verts));
    };

    for (int s = 0; s < n; ++s) {
        if (disc[s] != -1) continue;
        ++components;
        if (g.adj[s].empty()) {
            disc[s] = timer++;
            out.blocks.push_back({s});
            continue;
        }
        std::vector<Frame> fs;
        disc[s] = low[s] = timer++;
        fs.push_back({s, 0, 0});
        while (!fs.empty()) {
            Frame& f = fs.back();
            int u = f.u;
            if (f.ei < g.adj[u].size()) {
                int v = g.adj[u][f.ei++];
                if (v == parent[u]) continue;
                if (disc[v] == -1) {
                    parent[v] = u;
                    estack.emplace_back(u, v);
                    disc[v] = low[v] = timer++;
                    fs.push_back({v, 0, 0});
                } else if (disc[v] < disc[u]) {
                    estack.emplace_back(u, v);
                    low[u] = std::min(low[u], disc[v]);
                }
            } else {
                int children = f.children;
                fs.pop_back();
                if (fs.empty()) {
                    if (children >= 2) is_cut[u] = 1;
                } else {
                    int p = fs.back().u;
                    fs.back().children++;
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] >= disc[p]) {
                        if (fs.size() >= 2) is_cut[p] = 1;
                        emit_block(p, u);
                    }
                }
            }
        }
    }

    for (int v = 0; v < n; ++v)
        if (is_cut[v]) out.cut_vertices.push_back(v);

    // Sort blocks for a stable, input-independent presentation.
    std::sort(out.blocks.begin(), out.blocks.end());

    // Block-cut tree shape: a path iff the graph is connected, every cut
    // vertex lies in exactly two blocks, and every block holds at most two
    // cut vertices (a tree with maximum degree two is a path).
    std::vector<int> blocks_holding(n, 0);
    std::vector<int> cuts_in_block(out.blocks.size(), 0);
    for (size_t b = 0; b < out.blocks.size(); ++b)
        for (int v : out.blocks[b])
            if (is_cut[v]) {
                blocks_holding[v]++;
                cuts_in_block[b]++;
            }
    bool path = (components == 1);
    for (int v = 0; v < n && path; ++v)
        if (is_cut[v] && blocks_holding[v] != 2) path = false;
    for (size_t b = 0; b < out.blocks.size() && path; ++b)
        if (cuts_in_block[b] > 2) path = false;
    out.block_tree_is_path = path;
    for (size_t b = 0; b < out.blocks.size(); ++b)
        if (cuts_in_block[b] <= 1) out.end_blocks.push_back(static_cast<int>(b));
    return out;
}

EquitableResult is_equitable(const Graph& g, const CellPartition& p) {
    auto owner = p.cell_of(g);
    const int k = static_cast<int>(p.cells.size());
    std::vector<std::vector<int>> q(k, std::vector<int>(k, 0));
    std::vector<int> counts(k);
    for (int c = 0; c < k; ++c) {
        bool first = true;
        int ref = p.cells[c][0];
        for (int v : p.cells[c]) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int w : g.adj[v]) counts[owner[w]]++;
            if (first) {
                for (int t = 0; t < k; ++t) q[c][t] = counts[t];
                first = false;
            } else {
                for (int t = 0; t < k; ++t)
                    if (counts[t] != q[c][t]) return EquitableWitness{ref, v, c, t};
            }
        }
    }
    return q;
}

CellPartition equitable_refinement(const Graph& g, int individualize) {
    std::vector<int> color(g.n, 0);
    if (individualize >= 0) {
        if (individualize >= g.n)
            throw Error("individualized vertex " + std::to_string(individualize) +
                        " outside 0.." + std::to_string(g.n - 1));
        color[individualize] = 1;
    }
    int classes = (individualize >= 0 && g.n > 1) ? 2 : 1;
    for (;;) {
        // Signature of a vertex: own colour plus sorted neighbour colours.
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<int> sig;
            sig.reserve(g.adj[v].size() + 1);
            sig.push_back(color[v]);
            for (int w : g.adj[v]) sig.push_back(color[w]);
            std::sort(sig.begin() + 1, sig.end());
            auto it = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first;
            next[v] = it->second;
        }
        int nclasses = static_cast<int>(ids.size());
        color = std::move(next);
        if (nclasses == classes) break;
        classes = nclasses;
    }
    // Group into cells ordered by smallest contained vertex.
    std::vector<std::vector<int>> byColor(classes);
    for (int v = 0; v < g.n; ++v) byColor[color[v]].push_back(v);
    std::sort(byColor.begin(), byColor.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    CellPartition p;
    p.cells = std::move(byColor);
    return p;
}

std::string write_graph_text(const Graph& g) {
    std::string out;
    out += std::to_string(g.n);
    out += ' ';
    out += std::to_string(g.edge_count);
    out += '\n';
    for (auto [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

namespace {

// Canonical non-negative decimal: digits only, no leading zero except "0".
bool parse_canonical_int(const std::string& tok, long long& value) {
    if (tok.empty() || tok.size() > 10) return false;
    for (char c : tok)
        if (c < '0' || c > '9') return false;
    if (tok.size() > 1 && tok[0] == '0') return false;
    value = 0;
    for (char c : tok) value = value * 10 + (c - '0');
    return true;
}

// Splits "a b" into exactly two canonical integers separated by one space.
bool parse_int_pair(const std::string& line, long long& a, long long& b) {
    auto sp = line.find(' ');
    if (sp == std::string::npos) return false;
    if (line.find(' ', sp + 1) != std::string::npos) return false;
    return parse_canonical_int(line.substr(0, sp), a) &&
           parse_canonical_int(line.substr(sp + 1), b);
}

}  // namespace

Graph read_graph_text(const std::string& text) {
    if (text.empty() || text.back() != '\n')
        throw Error("graph text must end with a newline");
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw Error("graph text is empty");
    long long n = 0, m = 0;
    if (!parse_int_pair(lines[0], n, m))
        throw Error("malformed header line \"" + lines[0] + "\" (expected \"n m\")");
    if (n < 1) throw Error("graph must have at least one vertex");
    if (static_cast<long long>(lines.size()) != m + 1)
        throw Error("expected " + std::to_string(m) + " edge lines, found " +
                    std::to_string(lines.size() - 1));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(m));
    long long pu = -1, pv = -1;
    for (long long i = 1; i <= m; ++i) {
        long long u = 0, v = 0;
        if (!parse_int_pair(lines[static_cast<size_t>(i)], u, v))
            throw Error("malformed edge line " + std::to_string(i) + ": \"" +
                        lines[static_cast<size_t>(i)] + "\"");
        if (u >= v)
            throw Error("edge line " + std::to_string(i) + " violates u < v: \"" +
                        lines[static_cast<size_t>(i)] + "\"");
        if (v >= n)
            throw Error("edge line " + std::to_string(i) + " references vertex " +
                        std::to_string(v) + " outside 0.." + std::to_string(n - 1));
        if (u < pu || (u == pu && v <= pv))
            throw Error("edge line " + std::to_string(i) + " breaks ascending order");
        pu = u;
        pv = v;
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return build_graph(static_cast<int>(n), edges);
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open \"" + path + "\" for writing");
    std::string text = write_graph_text(g);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("failed writing \"" + path + "\"");
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_graph_text(ss.str());
}

}  // namespace mugraph
