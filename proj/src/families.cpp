#include "mugraph/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

namespace {

std::string K(int k) { return "K" + std::to_string(k); }
std::string Kb(int k) { return "Kb" + std::to_string(k); }
std::string Cyc(int k) { return "C" + std::to_string(k); }

std::string triple_str(int a, int b, int c) { return K(a) + " + " + K(b) + " + " + K(c); }

// "(unit)_t + " with the whole group omitted when t == 0.
std::string rep_str(const std::string& unit, int t) {
    if (t == 0) return "";
    return "(" + unit + ")_" + std::to_string(t) + " + ";
}

// unit u+1 unit u+1 ... (count copies tied by identity matchings).
std::string matched_chain(const std::string& unit, int count) {
    std::string s = unit;
    for (int i = 1; i < count; ++i) s += " u+1 " + unit;
    return s;
}

FamilyGraph from_expr(const std::string& text, bool exact_regular) {
    ExprPtr ast = parse(text);
    Evaluated ev = evaluate(ast);
    FamilyGraph fg;
    fg.graph = std::move(ev.graph);
    fg.cells = std::move(ev.cells);
    fg.expr = print(ast);
    fg.exact_regular = exact_regular;
    return fg;
}

// Incremental chain builder for graphs the expression language cannot express.
struct CellBuilder {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> cells;

    // Appends a cell of `size` fresh vertices and returns its first vertex.
    int cell(int size) {
        std::vector<int> c(size);
        std::iota(c.begin(), c.end(), n);
        cells.push_back(std::move(c));
        int first = n;
        n += size;
        return first;
    }
    void clique(int first, int size) {
        for (int i = first; i < first + size; ++i)
            for (int j = i + 1; j < first + size; ++j) edges.emplace_back(i, j);
    }
    void join(int f1, int s1, int f2, int s2) {
        for (int i = f1; i < f1 + s1; ++i)
            for (int j = f2; j < f2 + s2; ++j) edges.emplace_back(i, j);
    }
    FamilyGraph finish(bool exact_regular) {
        FamilyGraph fg;
        fg.graph = build_graph(n, edges);
        fg.cells.cells = std::move(cells);
        fg.exact_regular = exact_regular;
        return fg;
    }
};

std::pair<int, int> norm_pair(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

// Removes each pair in `gone` from `edges`, insisting every pair is present.
std::vector<std::pair<int, int>> remove_pairs(const std::vector<std::pair<int, int>>& edges,
                                              const std::vector<std::pair<int, int>>& gone) {
    std::set<std::pair<int, int>> es;
    for (auto [u, v] : edges) es.insert(norm_pair(u, v));
    for (auto [u, v] : gone)
        if (es.erase(norm_pair(u, v)) == 0)
            throw Error("internal: 1-factor edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") not present in the host graph");
    return {es.begin(), es.end()};
}

// d-regular chain K3 | K_{d-2} minus a spanning cycle | Kb2 | m middle groups
// (K2, K_{d-3}, K2) | Kb2 | ... | K3, built directly because a spanning-cycle
// deletion on an odd-order clique is outside the expression language.
FamilyGraph iii_base_odd(int d, int m) {
    enum Kind { Empty, Clique, CliqueMinusCycle };
    std::vector<std::pair<int, Kind>> layout = {{3, Clique}, {d - 2, CliqueMinusCycle}, {2, Empty}};
    for (int i = 0; i < m; ++i) {
        layout.emplace_back(2, Clique);
        layout.emplace_back(d - 3, Clique);
        layout.emplace_back(2, Clique);
    }
    layout.emplace_back(2, Empty);
    layout.emplace_back(d - 2, CliqueMinusCycle);
    layout.emplace_back(3, Clique);

    CellBuilder b;
    int prev_first = -1, prev_size = 0;
    for (auto [size, kind] : layout) {
        int f = b.cell(size);
        if (kind == Clique) b.clique(f, size);
        if (kind == CliqueMinusCycle)
            for (int i = 0; i < size; ++i)
                for (int j = i + 1; j < size; ++j)
                    if (!(j == i + 1 || (i == 0 && j == size - 1))) b.edges.emplace_back(f + i, f + j);
        if (prev_first >= 0) b.join(prev_first, prev_size, f, size);
        prev_first = f;
        prev_size = size;
    }
    return b.finish(true);
}

// m bridged blocks, each a clique on d+3 vertices missing the edge between its
// two cut vertices and two 1-factors; d-regular except the two chain endpoints
// (degree d-1).
FamilyGraph iii_odd(int d, int m) {
    int bn = d + 3;  // block order; even since d is odd
    std::vector<std::pair<int, int>> block;
    for (int p = 0; p < bn; ++p)
        for (int q = p + 1; q < bn; ++q)
            if (!(p == 0 && q == bn - 1)) block.emplace_back(p, q);
    std::vector<std::pair<int, int>> gone;
    for (int j : {1, 2})
        for (auto [u, v] : one_factor(bn, j)) gone.emplace_back(u, v);
    block = remove_pairs(block, gone);

    CellBuilder b;
    for (int i = 0; i < m; ++i) {
        int base = b.cell(1);  // local 0: incoming cut vertex
        b.cell(d + 1);         // local 1..d+1: block interior
        b.cell(1);             // local d+2: outgoing cut vertex
        for (auto [p, q] : block) b.edges.emplace_back(base + p, base + q);
        if (i > 0) b.edges.emplace_back(base - 1, base);  // bridge between blocks
    }
    return b.finish(false);
}

// m windows (K1, K_{d-1}, K2) each missing one 1-factor on its d+2 vertices;
// d-regular except the first cell (degree d-2) and the last cell (degree d-1).
FamilyGraph iii_even(int d, int m) {
    int wn = d + 2;  // window order; even since d is even
    std::vector<std::pair<int, int>> window;
    for (int p = 1; p <= d - 1; ++p) window.emplace_back(0, p);  // K1 joined to K_{d-1}
    for (int p = 1; p <= d - 1; ++p)
        for (int q = p + 1; q <= d - 1; ++q) window.emplace_back(p, q);  // K_{d-1}
    for (int p = 1; p <= d - 1; ++p) {
        window.emplace_back(p, d);  // K_{d-1} joined to K2
        window.emplace_back(p, d + 1);
    }
    window.emplace_back(d, d + 1);  // K2
    window = remove_pairs(window, one_factor(wn, 1));

    CellBuilder b;
    int prev_c = -1;
    for (int i = 0; i < m; ++i) {
        int base = b.cell(1);   // local 0
        b.cell(d - 1);          // local 1..d-1
        int c = b.cell(2);      // local d, d+1
        for (auto [p, q] : window) b.edges.emplace_back(base + p, base + q);
        if (prev_c >= 0) b.join(prev_c, 2, base, 1);
        prev_c = c;
    }
    return b.finish(false);
}

}  // namespace

int GammaSpec::total_m() const {
    int s = 0;
    for (int m : ms) s += m;
    return s;
}

int GammaSpec::order() const { return (d + 1) * total_m(); }

void GammaSpec::validate() const {
    if (d < 2) throw Error("chain degree parameter must be >= 2, got " + std::to_string(d));
    if (triples.empty()) throw Error("chain needs at least one segment");
    if (ms.size() != triples.size())
        throw Error("got " + std::to_string(triples.size()) + " triples but " +
                    std::to_string(ms.size()) + " segment lengths");
    for (size_t j = 0; j < triples.size(); ++j) {
        auto [a, b, c] = triples[j];
        if (a < 1 || b < 1 || c < 1)
            throw Error("segment " + std::to_string(j) + ": triple entries must be >= 1");
        if (a + b + c != d + 1)
            throw Error("segment " + std::to_string(j) + ": triple sums to " +
                        std::to_string(a + b + c) + ", need d+1 = " + std::to_string(d + 1));
        if (ms[j] < 1)
            throw Error("segment " + std::to_string(j) + ": length must be >= 1, got " +
                        std::to_string(ms[j]));
    }
}

FamilyGraph g_abc(int a, int b, int c, int m) {
    GammaSpec spec{a + b + c - 1, {{a, b, c}}, {m}};
    return gamma_d(spec);
}

FamilyGraph gamma_d(const GammaSpec& spec) {
    spec.validate();
    std::string s;
    for (size_t j = 0; j < spec.triples.size(); ++j) {
        auto [a, b, c] = spec.triples[j];
        if (!s.empty()) s += " + ";
        s += "(" + triple_str(a, b, c) + ")_" + std::to_string(spec.ms[j]);
    }
    return from_expr(s, false);
}

FamilyGraph block_path(int d, BlockPathKind kind, int m) {
    if (m < 1) throw Error("block_path needs at least one middle block, got " + std::to_string(m));
    if (kind == BlockPathKind::L) {
        if (d < 3 || d % 2 == 0)
            throw Error("block_path kind L needs odd degree >= 3 (its middle blocks hang off "
                        "bridges, and an even-regular graph has no bridge); got " +
                        std::to_string(d));
    } else {
        if (d < 4 || d % 2 != 0)
            throw Error("block_path kind M needs even degree >= 4, got " + std::to_string(d));
    }
    return table1(d, 0, m + 3);
}

EndBlock end_block(EndBlockKind kind, int d) {
    Primitive p;
    p.kind = PrimKind::NamedBlock;
    p.k = d;
    switch (kind) {
        case EndBlockKind::H1: p.named = NamedKind::H1; break;
        case EndBlockKind::H2: p.named = NamedKind::H2; break;
        case EndBlockKind::H3: p.named = NamedKind::H3; break;
    }
    return {primitive_graph(p), primitive_attachment(p)};
}

FamilyGraph table1(int d, int r, int m) {
    if (d < 3) throw Error("regular chain catalog needs degree >= 3, got " + std::to_string(d));
    if (m < 3) throw Error("regular chain catalog needs m >= 3, got " + std::to_string(m));
    bool odd = d % 2 != 0;
    if (odd && (r % 2 != 0 || r < 0 || r > d - 1))
        throw Error("odd degree " + std::to_string(d) + " admits remainders 0,2,..," +
                    std::to_string(d - 1) + "; got " + std::to_string(r));
    if (!odd && (r < 0 || r > d))
        throw Error("even degree " + std::to_string(d) + " admits remainders 0.." +
                    std::to_string(d) + "; got " + std::to_string(r));

    std::string s;
    if (odd) {
        s = "K2 + " + K(d - 1) + "^-1 + ";
        if (r == 0) {
            s += rep_str(triple_str(1, 1, d - 1), m - 3);
            s += "K1 + K1 + " + K(d - 1) + " u+1 " + K(d - 1) + "^-1 + K2";
        } else {
            s += rep_str(triple_str(1, 1, d - 1), m - 2);
            s += "K1 + K1 + " + K(d - 1) + "^-" + std::to_string(r - 1) + " + " + Kb(r) + "^+1";
        }
    } else {
        s = "K3 + " + K(d - 2) + "^-1 + ";
        if (r == 0) {
            s += rep_str(triple_str(1, 2, d - 2), m - 3);
            s += "K1 + K2 + " + K(d - 2) + " u+1 " + K(d - 2) + "^-1 + K3";
        } else if (r == 1) {
            s += rep_str(triple_str(1, 2, d - 2), m - 2);
            s += "K1 + Kb2 + " + K(d - 1);
        } else if (r == 2) {
            s += "(" + triple_str(1, 2, d - 2) + ")_" + std::to_string(m - 2) + " o H1(" +
                 std::to_string(d) + ")";
        } else if (r <= d - 2) {
            s += rep_str(triple_str(1, 2, d - 2), m - 2);
            s += "K1 + K2 + " + K(d - 2) + "^-" + std::to_string(r - 1) + " + " + Cyc(r);
        } else if (r == d - 1) {
            s += rep_str(triple_str(1, 2, d - 2), m - 2);
            s += "K1 + Kb2 + " + Kb(d - 1) + " + " + Kb(d - 2) + "^+1";
        } else {  // r == d
            s += rep_str(triple_str(1, 2, d - 2), m - 2);
            s += "K1 + Kb2 + " + Kb(d - 1) + " +-1 " + Cyc(d - 1);
        }
    }
    return from_expr(s, true);
}

FamilyPair counterexample_pair(PairKind kind, int m, int d) {
    switch (kind) {
        case PairKind::Cubic: {
            if (m < 4 || m % 2 != 0)
                throw Error("cubic pair needs even m >= 4, got " + std::to_string(m));
            int h = m / 2;
            std::string tr = triple_str(1, 1, 2);
            std::string wide = "K2 + K2^-1 + " + rep_str(tr, h) + "K1 + K1 + K2 u+1 K2 + " +
                               rep_str(tr, h) + "K1 + K1 + K2^-1 + K2";
            std::string tight = "K2 + K2^-1 + " + rep_str(tr, m) +
                                "K1 + K1 + K2 u+1 K2 u+1 K2 u+1 K2^-1 + K2";
            return {from_expr(wide, true), from_expr(tight, true)};
        }
        case PairKind::Quartic: {
            if (m < 1) throw Error("quartic pair needs m >= 1, got " + std::to_string(m));
            std::string wide =
                "K3 + K2^-1 + (" + triple_str(1, 2, 2) + ")_" + std::to_string(m) + " o H2";
            std::string tight = m == 1 ? "H3 o K2 + K2 o H3"
                                       : "H3 o K2 + K2 + (" + triple_str(1, 2, 2) + ")_" +
                                             std::to_string(m - 1) + " o H3";
            return {from_expr(wide, true), from_expr(tight, true)};
        }
        case PairKind::OddD: {
            if (d < 5 || d % 2 == 0)
                throw Error("odd-degree pair needs odd d >= 5, got " + std::to_string(d));
            if (m < (d + 7) / 2)
                throw Error("odd-degree pair needs m >= (d+7)/2 = " + std::to_string((d + 7) / 2) +
                            ", got " + std::to_string(m));
            std::string wide = "K4 + " + K(d - 3) + "^-1 + " + rep_str(triple_str(1, 3, d - 3), m - 3) +
                               "K1 + K3 + " + K(d - 3) + " u+1 " + K(d - 3) + "^-1 + K4";
            // Same order, shorter: replace s = (d+1)/2 of the wide chain's plain
            // triples by a run of (d+3)/2 matched cliques K_{d-1}.
            int total = m - 2, s = (d + 1) / 2;
            int t1 = (total - s) / 2, t2 = total - s - t1;
            std::string tr = triple_str(1, 1, d - 1);
            std::string tight = "K2 + " + K(d - 1) + "^-1 + " + rep_str(tr, t1) + "K1 + K1 + " +
                                matched_chain(K(d - 1), (d + 3) / 2) + " + " + rep_str(tr, t2 - 1) +
                                "K1 + K1 + " + K(d - 1) + " u+1 " + K(d - 1) + "^-1 + K2";
            return {from_expr(wide, true), from_expr(tight, true)};
        }
        case PairKind::EvenD: {
            if (d < 6 || d % 2 != 0)
                throw Error("even-degree pair needs even d >= 6, got " + std::to_string(d));
            if (m < 2 * (d + 1))
                throw Error("even-degree pair needs m >= 2(d+1) = " + std::to_string(2 * (d + 1)) +
                            ", got " + std::to_string(m));
            std::string wide = "K3 + " + K(d - 2) + "^-2 + Kb2 + K2 + " + K(d - 3) + " + " +
                               rep_str("K2 + K2 + " + K(d - 3), m - 3) + "K2 + Kb2 + " + K(d - 2) +
                               "^-2 + K3";
            std::string tight = "K3 + " + K(d - 2) + "^-1 + " +
                                rep_str(triple_str(1, 2, d - 2), m - 2 - 2 * d) + "K1 + K2 + (" +
                                K(d - 2) + " u+1 " + K(d - 2) + " + Kb2 + Kb2)_" +
                                std::to_string(d + 1) + " + " + K(d - 2) + "^-3 + C4";
            return {from_expr(wide, true), from_expr(tight, true)};
        }
    }
    throw Error("unknown pair kind");
}

FamilyGraph scaling_family(ScalingKind kind, int d, int m) {
    if (m < 1) throw Error("scaling family needs m >= 1, got " + std::to_string(m));
    switch (kind) {
        case ScalingKind::IIIBase: {
            if (d < 5)
                throw Error("regular middle-group family needs degree >= 5, got " +
                            std::to_string(d));
            if (d % 2 != 0) return iii_base_odd(d, m);
            std::string s = "K3 + " + K(d - 2) + "^-2 + Kb2 + (K2 + " + K(d - 3) + " + K2)_" +
                            std::to_string(m) + " + Kb2 + " + K(d - 2) + "^-2 + K3";
            return from_expr(s, true);
        }
        case ScalingKind::IIIOdd:
            if (d < 3 || d % 2 == 0)
                throw Error("bridged-block family needs odd degree >= 3, got " + std::to_string(d));
            return iii_odd(d, m);
        case ScalingKind::IIIEven:
            if (d < 4 || d % 2 != 0)
                throw Error("windowed family needs even degree >= 4, got " + std::to_string(d));
            return iii_even(d, m);
        case ScalingKind::IV:
            return from_expr("K4 + (" + triple_str(1, 2, 2) + ")_" + std::to_string(m) + " + K4",
                             false);
    }
    throw Error("unknown scaling kind");
}

int max_diameter(int n, int d, bool regular) {
    if (!regular) {
        if (d < 1) throw Error("minimum degree must be >= 1, got " + std::to_string(d));
        if (n < d + 1)
            throw Error("no graph on " + std::to_string(n) + " vertices has minimum degree " +
                        std::to_string(d));
        if (n <= 2 * d + 1) return (n + d) / (d + 1);  // ceil(n / (d+1)), i.e. 1 or 2
        int q = n / (d + 1), r = n % (d + 1);
        return 3 * q - (r == 0 ? 3 : r == 1 ? 2 : 1);
    }
    if (d < 3) throw Error("regular diameter bound needs degree >= 3, got " + std::to_string(d));
    if (static_cast<long long>(n) * d % 2 != 0)
        throw Error("no " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                    " vertices: nd is odd");
    if (n < 2 * d + 4)
        throw Error("regular diameter bound needs order >= 2d+4 = " + std::to_string(2 * d + 4) +
                    ", got " + std::to_string(n));
    int q = n / (d + 1), r = n % (d + 1);
    if (d % 2 != 0) return 3 * q - (r == 0 ? 3 : 1);
    return 3 * q - (r == 0 ? 3 : (r <= 2 ? 2 : 1));
}

}  // namespace mugraph
