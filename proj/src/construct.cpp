#include "mugraph/construct.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mugraph {

namespace {

// Flat assembly state: edges plus the [begin,end) vertex range of every
// primitive cell, in chain order.
struct EvalGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> cells;
    int attach = -1;
};

void add_clique(EvalGraph& eg, int begin, int end) {
    for (int i = begin; i < end; ++i)
        for (int j = i + 1; j < end; ++j) eg.edges.emplace_back(i, j);
}

// Complete join between two cell ranges (first range must precede the second).
void join_ranges(EvalGraph& eg, std::pair<int, int> a, std::pair<int, int> b) {
    for (int i = a.first; i < a.second; ++i)
        for (int j = b.first; j < b.second; ++j) eg.edges.emplace_back(i, j);
}

// Appends src after dst's vertices; cell list is extended in order.
void append(EvalGraph& dst, const EvalGraph& src) {
    int off = dst.n;
    for (auto [u, v] : src.edges) dst.edges.emplace_back(u + off, v + off);
    for (auto [b, e] : src.cells) dst.cells.emplace_back(b + off, e + off);
    dst.n += src.n;
}

EvalGraph eval_named_block(const Primitive& p) {
    EvalGraph eg;
    switch (p.named) {
        case NamedKind::H1: {
            int d = p.k;
            if (d < 4 || d % 2 != 0)
                throw Error("H1 needs an even degree parameter >= 4, got " + std::to_string(d));
            eg.n = d + 3;
            // 5-cycle on 0..4 with attachment vertex 0.
            eg.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
            // Cell 5..d+2: complete minus a perfect matching, fully joined to
            // the four non-attachment cycle vertices.
            for (int i = 5; i < d + 3; ++i)
                for (int j = i + 1; j < d + 3; ++j)
                    if (!(j == i + 1 && (i - 5) % 2 == 0)) eg.edges.emplace_back(i, j);
            for (int c = 1; c <= 4; ++c)
                for (int i = 5; i < d + 3; ++i) eg.edges.emplace_back(c, i);
            eg.attach = 0;
            break;
        }
        case NamedKind::H2:
            eg.n = 8;
            eg.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3},
                        {2, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}, {5, 7}, {6, 7}};
            eg.attach = 7;
            break;
        case NamedKind::H3:
            eg.n = 7;
            eg.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3},
                        {2, 5}, {3, 5}, {4, 5}, {4, 6}, {5, 6}};
            eg.attach = 6;
            break;
    }
    eg.cells = {{0, eg.n}};
    return eg;
}

EvalGraph eval_primitive(const Primitive& p) {
    EvalGraph eg;
    switch (p.kind) {
        case PrimKind::Complete:
            if (p.k < 1) throw Error("K needs at least one vertex, got " + std::to_string(p.k));
            eg.n = p.k;
            add_clique(eg, 0, p.k);
            break;
        case PrimKind::EmptyComplement:
            if (p.k < 1) throw Error("Kb needs at least one vertex, got " + std::to_string(p.k));
            eg.n = p.k;
            break;
        case PrimKind::Cycle:
            if (p.k < 3) throw Error("C needs at least three vertices, got " + std::to_string(p.k));
            eg.n = p.k;
            for (int i = 0; i + 1 < p.k; ++i) eg.edges.emplace_back(i, i + 1);
            eg.edges.emplace_back(0, p.k - 1);
            break;
        case PrimKind::NamedBlock:
            return eval_named_block(p);
    }
    eg.cells = {{0, eg.n}};
    return eg;
}

std::pair<int, int> norm_edge(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

// Applies 1-factors 0..r-1 over eg's whole vertex range (see one_factor).
void apply_factor_mod(EvalGraph& eg, int r, bool add) {
    if (eg.n % 2 != 0)
        throw Error("1-factor operations need an even vertex count, got " + std::to_string(eg.n));
    if (r < 1 || r > eg.n - 1)
        throw Error("factor count " + std::to_string(r) + " out of range 1.." +
                    std::to_string(eg.n - 1));
    std::set<std::pair<int, int>> es(eg.edges.begin(), eg.edges.end());
    for (int j = 0; j < r; ++j) {
        for (auto [u, v] : one_factor(eg.n, j)) {
            auto e = norm_edge(u, v);
            if (add) {
                if (!es.insert(e).second)
                    throw Error("cannot add 1-factor edge (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + "): already present");
            } else {
                if (es.erase(e) == 0)
                    throw Error("cannot remove 1-factor edge (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + "): absent");
            }
        }
    }
    eg.edges.assign(es.begin(), es.end());
    eg.attach = -1;
}

EvalGraph eval_expr(const ExprPtr& e);

EvalGraph eval_chain_op(EvalGraph left, const EvalGraph& right, char op) {
    // op: '+' join, 'u' matching, '-' join-minus-matching.
    auto lcell = left.cells.back();
    size_t rfirst = left.cells.size();
    append(left, right);
    auto rcell = left.cells[rfirst];
    int ls = lcell.second - lcell.first, rs = rcell.second - rcell.first;
    if (op == '+') {
        join_ranges(left, lcell, rcell);
    } else {
        if (ls != rs)
            throw Error(std::string(op == 'u' ? "u+1" : "+-1") +
                        " needs equal terminal cell sizes, got " + std::to_string(ls) + " and " +
                        std::to_string(rs));
        if (op == 'u') {
            for (int i = 0; i < ls; ++i)
                left.edges.emplace_back(lcell.first + i, rcell.first + i);
        } else {
            for (int i = 0; i < ls; ++i)
                for (int j = 0; j < rs; ++j)
                    if (i != j) left.edges.emplace_back(lcell.first + i, rcell.first + j);
        }
    }
    left.attach = -1;
    return left;
}

// Finds the attachment vertex of a block operand: an explicit marker from a
// named block, otherwise the unique degree-2 vertex.
int block_attachment(const EvalGraph& block) {
    if (block.attach >= 0) return block.attach;
    std::vector<int> deg(block.n, 0);
    for (auto [u, v] : block.edges) {
        deg[u]++;
        deg[v]++;
    }
    int found = -1;
    for (int v = 0; v < block.n; ++v)
        if (deg[v] == 2) {
            if (found >= 0) throw Error("block side of 'o' has no unique degree-2 vertex");
            found = v;
        }
    if (found < 0) throw Error("block side of 'o' has no degree-2 vertex");
    return found;
}

EvalGraph eval_attach(const AttachCirc& a) {
    EvalGraph chain = eval_expr(a.chain);
    EvalGraph block = eval_expr(a.block);
    int at = block_attachment(block);
    EvalGraph out;
    if (a.side == Side::Left) {
        append(out, block);
        append(out, chain);
        auto cell = out.cells[block.cells.size()];  // chain's first cell
        for (int v = cell.first; v < cell.second; ++v) out.edges.emplace_back(at, v);
    } else {
        append(out, chain);
        auto cell = out.cells[chain.cells.size() - 1];  // chain's last cell
        int boff = out.n;
        append(out, block);
        for (int v = cell.first; v < cell.second; ++v) out.edges.emplace_back(v, boff + at);
    }
    out.attach = -1;
    return out;
}

EvalGraph eval_expr(const ExprPtr& e) {
    return std::visit(
        [](const auto& node) -> EvalGraph {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Primitive>) {
                return eval_primitive(node);
            } else if constexpr (std::is_same_v<T, FactorMod>) {
                EvalGraph eg = eval_expr(node.child);
                apply_factor_mod(eg, node.r, node.add);
                return eg;
            } else if constexpr (std::is_same_v<T, Join>) {
                if (node.parts.empty()) throw Error("empty join");
                EvalGraph acc = eval_expr(node.parts[0]);
                for (size_t i = 1; i < node.parts.size(); ++i)
                    acc = eval_chain_op(std::move(acc), eval_expr(node.parts[i]), '+');
                if (node.parts.size() > 1) acc.attach = -1;
                return acc;
            } else if constexpr (std::is_same_v<T, UnionPlusOne>) {
                return eval_chain_op(eval_expr(node.left), eval_expr(node.right), 'u');
            } else if constexpr (std::is_same_v<T, JoinMinusOne>) {
                return eval_chain_op(eval_expr(node.left), eval_expr(node.right), '-');
            } else if constexpr (std::is_same_v<T, Repeat>) {
                if (node.m < 1)
                    throw Error("repetition count must be >= 1, got " + std::to_string(node.m));
                EvalGraph unit = eval_expr(node.child);
                EvalGraph acc = unit;
                for (int i = 1; i < node.m; ++i) acc = eval_chain_op(std::move(acc), unit, '+');
                if (node.m > 1) acc.attach = -1;
                return acc;
            } else {
                static_assert(std::is_same_v<T, AttachCirc>);
                return eval_attach(node);
            }
        },
        e->node);
}

Evaluated finish(EvalGraph&& eg) {
    Evaluated out;
    out.graph = build_graph(eg.n, eg.edges);
    out.cells.cells.reserve(eg.cells.size());
    for (auto [b, e] : eg.cells) {
        std::vector<int> cell;
        cell.reserve(e - b);
        for (int v = b; v < e; ++v) cell.push_back(v);
        out.cells.cells.push_back(std::move(cell));
    }
    out.attachment = eg.attach;
    return out;
}

}  // namespace

Evaluated evaluate(const ExprPtr& e) {
    if (!e) throw Error("cannot evaluate a null expression");
    return finish(eval_expr(e));
}

Graph primitive_graph(const Primitive& p) {
    EvalGraph eg = eval_primitive(p);
    return build_graph(eg.n, eg.edges);
}

int primitive_attachment(const Primitive& p) {
    if (p.kind != PrimKind::NamedBlock)
        throw Error("only named blocks carry an attachment vertex");
    return eval_named_block(p).attach;
}

Evaluated sequential_join(const std::vector<Graph>& parts) {
    if (parts.empty()) throw Error("sequential join needs at least one part");
    EvalGraph eg;
    for (const auto& g : parts) {
        int off = eg.n;
        for (auto [u, v] : g.edges()) eg.edges.emplace_back(off + u, off + v);
        eg.cells.emplace_back(off, off + g.n);
        eg.n += g.n;
    }
    for (size_t i = 0; i + 1 < eg.cells.size(); ++i)
        join_ranges(eg, eg.cells[i], eg.cells[i + 1]);
    return finish(std::move(eg));
}

std::vector<std::pair<int, int>> one_factor(int n, int j) {
    if (n < 2 || n % 2 != 0)
        throw Error("1-factors exist only for even vertex counts, got " + std::to_string(n));
    int mod = n - 1;
    if (j < 0 || j > n - 2)
        throw Error("factor index " + std::to_string(j) + " out of range 0.." +
                    std::to_string(n - 2));
    std::vector<std::pair<int, int>> f;
    f.reserve(n / 2);
    f.push_back(norm_edge(n - 1, j));
    for (int i = 1; i <= n / 2 - 1; ++i)
        f.push_back(norm_edge((j + i) % mod, ((j - i) % mod + mod) % mod));
    return f;
}

Graph factor_mod(const Graph& g, int r, bool add) {
    EvalGraph eg;
    eg.n = g.n;
    eg.edges = g.edges();
    apply_factor_mod(eg, r, add);
    return build_graph(eg.n, eg.edges);
}

Graph union_with_factor(const Graph& g, const Graph& h, FactorJoinMode mode) {
    if (g.n != h.n)
        throw Error("identity pairing needs equal orders, got " + std::to_string(g.n) + " and " +
                    std::to_string(h.n));
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto [u, v] : h.edges()) edges.emplace_back(g.n + u, g.n + v);
    if (mode == FactorJoinMode::MatchingOnly) {
        for (int i = 0; i < g.n; ++i) edges.emplace_back(i, g.n + i);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < h.n; ++j)
                if (i != j) edges.emplace_back(i, g.n + j);
    }
    return build_graph(g.n + h.n, edges);
}

Graph attach_end_block(const Graph& chain, const std::vector<int>& terminal_cell,
                       const Graph& block, int attachment, Side side) {
    if (terminal_cell.empty()) throw Error("terminal cell must not be empty");
    for (int v : terminal_cell)
        if (v < 0 || v >= chain.n)
            throw Error("terminal cell vertex " + std::to_string(v) + " outside 0.." +
                        std::to_string(chain.n - 1));
    if (attachment < 0 || attachment >= block.n)
        throw Error("attachment vertex " + std::to_string(attachment) + " outside 0.." +
                    std::to_string(block.n - 1));
    if (block.degree(attachment) != 2)
        throw Error("attachment vertex must have degree 2 in the block, has degree " +
                    std::to_string(block.degree(attachment)));
    std::vector<std::pair<int, int>> edges;
    int chain_off = (side == Side::Left) ? block.n : 0;
    int block_off = (side == Side::Left) ? 0 : chain.n;
    for (auto [u, v] : chain.edges()) edges.emplace_back(chain_off + u, chain_off + v);
    for (auto [u, v] : block.edges()) edges.emplace_back(block_off + u, block_off + v);
    for (int v : terminal_cell) edges.push_back(norm_edge(block_off + attachment, chain_off + v));
    return build_graph(chain.n + block.n, edges);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

ExprPtr make(Expr&& e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip();
        if (p_ < s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t p_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(p_), p_);
    }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool at(char c) const { return p_ < s_.size() && s_[p_] == c; }

    bool lit(const char* t) {
        size_t len = std::char_traits<char>::length(t);
        if (s_.compare(p_, len, t) == 0) {
            p_ += len;
            return true;
        }
        return false;
    }

    // Digits immediately at the cursor (primitive sizes are single tokens).
    int parse_int_here() {
        size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (p_ == start) fail("expected an integer");
        if (p_ - start > 9) {
            p_ = start;
            fail("integer too large");
        }
        return std::stoi(s_.substr(start, p_ - start));
    }

    int parse_int_ws() {
        skip();
        return parse_int_here();
    }

    static bool is_named_block(const ExprPtr& e) {
        auto* p = std::get_if<Primitive>(&e->node);
        return p && p->kind == PrimKind::NamedBlock;
    }

    ExprPtr parse_atom() {
        skip();
        if (p_ >= s_.size()) fail("expected a term");
        if (lit("Kb")) return make({Primitive{PrimKind::EmptyComplement, parse_int_here()}});
        if (lit("K")) return make({Primitive{PrimKind::Complete, parse_int_here()}});
        if (lit("C")) return make({Primitive{PrimKind::Cycle, parse_int_here()}});
        if (lit("H1(")) {
            int d = parse_int_ws();
            skip();
            if (!lit(")")) fail("expected ')'");
            return make({Primitive{PrimKind::NamedBlock, d, NamedKind::H1}});
        }
        if (lit("H2")) return make({Primitive{PrimKind::NamedBlock, 0, NamedKind::H2}});
        if (lit("H3")) return make({Primitive{PrimKind::NamedBlock, 0, NamedKind::H3}});
        if (lit("(")) {
            ExprPtr inner = parse_expr();
            skip();
            if (!lit(")")) fail("expected ')'");
            skip();
            if (at('_')) {
                ++p_;
                int m = parse_int_ws();
                return make({Repeat{inner, m}});
            }
            return inner;
        }
        fail("expected a term");
    }

    ExprPtr parse_term() {
        ExprPtr atom = parse_atom();
        skip();
        if (at('^')) {
            if (p_ + 1 >= s_.size() || (s_[p_ + 1] != '-' && s_[p_ + 1] != '+'))
                fail("expected '^-' or '^+'");
            bool add = s_[p_ + 1] == '+';
            p_ += 2;
            int r = parse_int_ws();
            return make({FactorMod{atom, r, add}});
        }
        return atom;
    }

    // Returns 0 at end of input / ')'. Op codes: '+', '-', 'u', 'o'.
    char peek_op() {
        skip();
        if (p_ >= s_.size() || at(')')) return 0;
        if (at('+')) {
            if (s_.compare(p_, 3, "+-1") == 0) {
                p_ += 3;
                return '-';
            }
            ++p_;
            return '+';
        }
        if (at('u')) {
            if (s_.compare(p_, 3, "u+1") != 0) fail("expected operator");
            p_ += 3;
            return 'u';
        }
        if (at('o')) {
            if (p_ + 1 < s_.size() &&
                (std::isalnum(static_cast<unsigned char>(s_[p_ + 1])) || s_[p_ + 1] == '_'))
                fail("expected operator");
            ++p_;
            return 'o';
        }
        fail("expected an operator");
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        for (;;) {
            size_t op_pos = p_;
            char op = peek_op();
            if (op == 0) return left;
            if (op == 'o') {
                ExprPtr right = parse_term();
                bool ln = is_named_block(left), rn = is_named_block(right);
                if (ln == rn) {
                    p_ = op_pos;
                    skip();
                    fail("exactly one side of 'o' must be a named end block");
                }
                left = rn ? make({AttachCirc{left, right, Side::Right}})
                          : make({AttachCirc{right, left, Side::Left}});
                continue;
            }
            ExprPtr right = parse_term();
            if (op == '+') {
                if (auto* j = std::get_if<Join>(&left->node)) {
                    Join merged = *j;
                    merged.parts.push_back(right);
                    left = make({std::move(merged)});
                } else {
                    left = make({Join{{left, right}}});
                }
            } else if (op == 'u') {
                left = make({UnionPlusOne{left, right}});
            } else {
                left = make({JoinMinusOne{left, right}});
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string print_expr(const ExprPtr& e);

// Rendering for grammatical term positions (right operands): primitives,
// factor-modified atoms and repeats stand alone, anything else gets parens.
std::string print_term(const ExprPtr& e) {
    if (std::holds_alternative<Primitive>(e->node) || std::holds_alternative<Repeat>(e->node) ||
        std::holds_alternative<FactorMod>(e->node))
        return print_expr(e);
    return "(" + print_expr(e) + ")";
}

// Rendering for atom positions (a factor modifier's operand): only primitives
// and repeats are atoms.
std::string print_inner_atom(const ExprPtr& e) {
    if (std::holds_alternative<Primitive>(e->node) || std::holds_alternative<Repeat>(e->node))
        return print_expr(e);
    return "(" + print_expr(e) + ")";
}

std::string print_expr(const ExprPtr& e) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Primitive>) {
                switch (node.kind) {
                    case PrimKind::Complete: return "K" + std::to_string(node.k);
                    case PrimKind::EmptyComplement: return "Kb" + std::to_string(node.k);
                    case PrimKind::Cycle: return "C" + std::to_string(node.k);
                    case PrimKind::NamedBlock:
                        switch (node.named) {
                            case NamedKind::H1: return "H1(" + std::to_string(node.k) + ")";
                            case NamedKind::H2: return "H2";
                            case NamedKind::H3: return "H3";
                        }
                }
                return {};
            } else if constexpr (std::is_same_v<T, FactorMod>) {
                return print_inner_atom(node.child) + (node.add ? "^+" : "^-") + std::to_string(node.r);
            } else if constexpr (std::is_same_v<T, Join>) {
                std::string out = print_expr(node.parts[0]);
                for (size_t i = 1; i < node.parts.size(); ++i)
                    out += " + " + print_term(node.parts[i]);
                return out;
            } else if constexpr (std::is_same_v<T, UnionPlusOne>) {
                return print_expr(node.left) + " u+1 " + print_term(node.right);
            } else if constexpr (std::is_same_v<T, JoinMinusOne>) {
                return print_expr(node.left) + " +-1 " + print_term(node.right);
            } else if constexpr (std::is_same_v<T, Repeat>) {
                return "(" + print_expr(node.child) + ")_" + std::to_string(node.m);
            } else {
                static_assert(std::is_same_v<T, AttachCirc>);
                if (node.side == Side::Right)
                    return print_expr(node.chain) + " o " + print_term(node.block);
                return print_term(node.block) + " o " + print_term(node.chain);
            }
        },
        e->node);
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const ExprPtr& e) {
    if (!e) throw Error("cannot print a null expression");
    return print_expr(e);
}

}  // namespace mugraph
