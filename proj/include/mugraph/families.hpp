#pragma once
// Catalog of extremal chain families: clique chains with prescribed degree
// behaviour, regular maximum-diameter constructions, paired graphs showing
// that maximum diameter and minimum algebraic connectivity diverge, and the
// closed-form maximum-diameter bounds they attain.

#include <array>
#include <string>
#include <vector>

#include "mugraph/construct.hpp"
#include "mugraph/graph.hpp"

namespace mugraph {

/// Chain specification: degree parameter d and consecutive segments, segment
/// j repeating the triple (a_j, b_j, c_j) with a_j+b_j+c_j = d+1 exactly
/// ms[j] times.
struct GammaSpec {
    int d = 3;
    std::vector<std::array<int, 3>> triples;
    std::vector<int> ms;

    int total_m() const;  // sum of segment lengths
    int order() const;    // (d+1) * total_m()
    void validate() const;
};

/// A catalog member: the graph, its natural cell partition, and — when the
/// expression language can express it — the expression it was built from.
struct FamilyGraph {
    Graph graph;
    CellPartition cells;
    std::string expr;           // empty when not expressible
    bool exact_regular = true;  // false when regularity fails near the ends
};

/// Pair of same-order regular graphs: the diameter maximizer and a rival of
/// strictly smaller algebraic connectivity despite smaller diameter.
struct FamilyPair {
    FamilyGraph max_diam;
    FamilyGraph small_mu;
};

enum class BlockPathKind { L, M };
enum class EndBlockKind { H1, H2, H3 };
enum class PairKind { Cubic, Quartic, OddD, EvenD };
enum class ScalingKind { IIIBase, IIIOdd, IIIEven, IV };

/// The (a,b,c) clique chain of m triples: (Ka + Kb + Kc)_m.
FamilyGraph g_abc(int a, int b, int c, int m);

/// Concatenation of clique-chain segments joined in sequence; order
/// (d+1) * total_m, diameter 3 * total_m - 1.
FamilyGraph gamma_d(const GammaSpec& spec);

/// d-regular path-like graph with exactly m middle (non-bridge) blocks, each
/// L_d (odd d, bridged) or M_d (even d >= 4, bridgeless); order (d+1)*(m+3).
/// Throws when no d-regular completion exists for the requested kind/parity.
FamilyGraph block_path(int d, BlockPathKind kind, int m);

struct EndBlock {
    Graph graph;
    int attachment;  // the unique degree-2 vertex
};

/// Attachable terminal blocks: H1(d) for even d >= 4 (d+3 vertices), H2
/// (8 vertices), H3 (7 vertices); all vertices have degree d (or 4 for H2/H3)
/// except the degree-2 attachment vertex.
EndBlock end_block(EndBlockKind kind, int d = 0);

/// d-regular graph of order n = (d+1)m + r attaining the maximum diameter for
/// its order. Odd d accepts even r in 0..d-1; even d accepts r in 0..d; m >= 3.
FamilyGraph table1(int d, int r, int m);

/// The paired constructions (max_diam, small_mu). Cubic: even m >= 4, order
/// 4m+16. Quartic: m >= 1, order 5m+13. OddD: odd d >= 5, m >= (d+7)/2, order
/// m(d+1). EvenD: even d >= 6, m >= 2(d+1), order m(d+1)+4.
FamilyPair counterexample_pair(PairKind kind, int m, int d = 0);

/// Families with algebraic connectivity exceeding the naive degree-based
/// guess as order grows. IIIBase (d >= 5): exactly d-regular, order
/// (d+1)m + 2(d+3). IIIOdd (odd d >= 3): order (d+3)m. IIIEven (even
/// d >= 4): order (d+2)m. IIIOdd/IIIEven are degree-d away from the two chain
/// ends only (exact_regular = false). IV: minimum degree 4, order 5m+8 (d is
/// ignored).
FamilyGraph scaling_family(ScalingKind kind, int d, int m);

/// Largest possible diameter of a connected graph of order n with minimum
/// degree d (regular = false) or of a connected d-regular graph of order n
/// (regular = true; requires d >= 3, n >= 2d+4, and nd even).
int max_diameter(int n, int d, bool regular);

}  // namespace mugraph
