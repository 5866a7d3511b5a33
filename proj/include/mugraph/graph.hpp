#pragma once
// Core graph types and combinatorial operations: validated construction, BFS
// metrics, distance layers, biconnected decomposition, equitable partitions,
// and a strict plain-text exchange format.

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mugraph {

/// Generic failure: bad arguments, malformed input, or a broken precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1 with ascending adjacency lists.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    long long edge_count = 0;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
    /// All edges as (u,v) with u < v, in ascending (u,v) order.
    std::vector<std::pair<int, int>> edges() const;
};

/// Ordered list of disjoint, non-empty vertex cells covering 0..n-1.
struct CellPartition {
    std::vector<std::vector<int>> cells;

    /// Throws if the cells overlap, leave a vertex uncovered, contain an
    /// out-of-range vertex, or include an empty cell.
    void validate(const Graph& g) const;
    /// cell_of()[v] = index of the cell containing v (requires valid partition).
    std::vector<int> cell_of(const Graph& g) const;
};

/// Maximal 2-connected pieces (bridges count as 2-vertex blocks), the cut
/// vertices joining them, and the shape of the block tree.
struct BlockDecomposition {
    std::vector<std::vector<int>> blocks;   // sorted vertex sets
    std::vector<int> cut_vertices;          // ascending
    bool block_tree_is_path = false;
    std::vector<int> end_blocks;            // indices of blocks with <= 1 cut vertex
};

/// Witness that a partition is not equitable: vertices u and v share cell
/// `cell` but have different neighbour counts into cell `target_cell`.
struct EquitableWitness {
    int u = -1, v = -1, cell = -1, target_cell = -1;
};

/// Quotient matrix Q with Q[i][j] = #neighbours in cell j of any vertex of
/// cell i (when equitable), or a witness pair when not.
using EquitableResult = std::variant<std::vector<std::vector<int>>, EquitableWitness>;

/// Builds a validated simple graph. Throws Error naming the offending edge on
/// out-of-range endpoints, self-loops, or duplicates.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// Multiset of vertex degrees, ascending.
std::vector<int> degree_profile(const Graph& g);

/// True when every vertex has the same degree (true for n = 1).
bool is_regular(const Graph& g);

/// BFS distances from source (-1 for unreachable vertices).
std::vector<int> bfs_distances(const Graph& g, int source);

/// Eccentricity of every vertex. Throws "infinite diameter" if disconnected.
std::vector<int> eccentricities(const Graph& g);

/// Largest eccentricity. Throws "infinite diameter" if disconnected.
int diameter(const Graph& g);

/// Cells of equal BFS distance from v, ordered by distance starting at 0.
/// Throws if some vertex is unreachable from v.
CellPartition distance_partition(const Graph& g, int v);

/// Biconnected decomposition via iterative depth-first search with an explicit
/// edge stack; no recursion, safe for long path-shaped graphs.
BlockDecomposition block_decomposition(const Graph& g);

/// Tests whether every cell sees a constant neighbour count into every cell;
/// returns the integer quotient matrix on success, else a witness pair.
EquitableResult is_equitable(const Graph& g, const CellPartition& p);

/// Coarsest stable refinement under iterated neighbour-colour counting,
/// starting from a uniform colouring (or with `individualize` split off into
/// its own starting cell when >= 0). The result is always equitable. Cells are
/// ordered by smallest contained vertex.
CellPartition equitable_refinement(const Graph& g, int individualize = -1);

/// Exchange format: "n m\n" then one "u v\n" line per edge, u < v, lines in
/// ascending (u,v) order, single spaces, trailing newline, nothing else.
std::string write_graph_text(const Graph& g);

/// Strict parser for the exchange format; rejects any deviation (ordering,
/// whitespace, leading zeros, missing final newline, wrong counts).
Graph read_graph_text(const std::string& text);

void write_graph_file(const Graph& g, const std::string& path);
Graph read_graph_file(const std::string& path);

}  // namespace mugraph
