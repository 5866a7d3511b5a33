#pragma once
// Expression language for assembling graphs from clique/cycle cells chained by
// complete joins, matchings, 1-factor edits, and attachable end blocks. Comes
// with a parser (position-annotated errors), a canonical printer, and a
// deterministic evaluator that also returns the natural cell partition.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mugraph/graph.hpp"

namespace mugraph {

/// Syntax error; carries the 0-based byte offset where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, size_t offset) : Error(what), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

enum class PrimKind { Complete, EmptyComplement, Cycle, NamedBlock };
enum class NamedKind { H1, H2, H3 };
enum class Side { Left, Right };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Single cell: K_k ("K<k>"), its complement ("Kb<k>"), a cycle ("C<k>",
/// k >= 3), or a named attachable block ("H1(<d>)" with even d >= 4, "H2",
/// "H3"). For NamedBlock, k holds H1's degree parameter.
struct Primitive {
    PrimKind kind = PrimKind::Complete;
    int k = 0;
    NamedKind named = NamedKind::H2;
};

/// "<atom>^-r" removes 1-factors 0..r-1 of the operand's vertex range;
/// "<atom>^+r" adds them (add = true).
struct FactorMod {
    ExprPtr child;
    int r = 1;
    bool add = false;
};

/// "a + b + ...": complete join between the last cell of each operand and the
/// first cell of the next.
struct Join {
    std::vector<ExprPtr> parts;
};

/// "a u+1 b": identity matching between the adjacent terminal cells (equal
/// sizes required).
struct UnionPlusOne {
    ExprPtr left, right;
};

/// "a +-1 b": complete join between the adjacent terminal cells minus the
/// identity matching (equal sizes required).
struct JoinMinusOne {
    ExprPtr left, right;
};

/// "(e)_m": m copies of e chained with "+" (m >= 1).
struct Repeat {
    ExprPtr child;
    int m = 1;
};

/// "chain o block" / "block o chain": joins the block's attachment vertex to
/// every vertex of the chain's terminal cell on the given side.
struct AttachCirc {
    ExprPtr chain, block;
    Side side = Side::Right;  // which side the block sits on
};

struct Expr {
    std::variant<Primitive, FactorMod, Join, UnionPlusOne, JoinMinusOne, Repeat, AttachCirc> node;
};

struct Evaluated {
    Graph graph;
    CellPartition cells;  // one cell per primitive, in chain order
    int attachment = -1;  // attachment vertex when the expression is a named block
};

/// Grammar (single precedence level, left-associative, whitespace-insensitive):
///   expr := term { op term } ;          op := "+" | "u+1" | "+-1" | "o" ;
///   term := atom [ "^-" int | "^+" int ] ;
///   atom := "K" int | "Kb" int | "C" int | "H1(" int ")" | "H2" | "H3"
///         | "(" expr ")" [ "_" int ] ;
/// Exactly one operand of "o" must be a named block. Throws ParseError with a
/// byte offset on any violation.
ExprPtr parse(const std::string& text);

/// Canonical rendering; parse(print(e)) == e for parser-produced trees.
std::string print(const ExprPtr& e);

/// Builds the graph bottom-up. Deterministic: equal expressions yield equal
/// edge lists. Throws Error on semantic violations (cell sizes, factor edges,
/// parity, attachment rules).
Evaluated evaluate(const ExprPtr& e);

/// Builds a single primitive cell as a standalone graph.
Graph primitive_graph(const Primitive& p);

/// Attachment vertex index of a named block primitive.
int primitive_attachment(const Primitive& p);

/// Disjoint union of parts plus a complete join between consecutive parts;
/// the returned cells are the parts in order.
Evaluated sequential_join(const std::vector<Graph>& parts);

/// Edges of 1-factor j (0 <= j <= n-2) of the complete graph on the even
/// vertex set 0..n-1, in the rotational factorization: factor j pairs
/// {n-1, j} and {(j+i) mod (n-1), (j-i) mod (n-1)} for i = 1..n/2-1.
std::vector<std::pair<int, int>> one_factor(int n, int j);

/// Removes (add = false) or adds (add = true) 1-factors 0..r-1 over the whole
/// vertex range. Errors if n is odd, r is outside 1..n-1, an edge to remove is
/// absent, or an edge to add is already present. Adding then removing the same
/// factors (or vice versa) returns the original graph.
Graph factor_mod(const Graph& g, int r, bool add);

enum class FactorJoinMode { MatchingOnly, JoinMinusMatching };

/// Disjoint union of g and h (equal orders required) plus either the identity
/// matching alone (u+1) or the complete join minus that matching (+-1).
Graph union_with_factor(const Graph& g, const Graph& h, FactorJoinMode mode);

/// Joins block's attachment vertex to every vertex of the chain's terminal
/// cell. The attachment vertex must have degree 2 inside the block. Block
/// vertices are appended before the chain (Side::Left) or after it
/// (Side::Right).
Graph attach_end_block(const Graph& chain, const std::vector<int>& terminal_cell,
                       const Graph& block, int attachment, Side side);

}  // namespace mugraph
