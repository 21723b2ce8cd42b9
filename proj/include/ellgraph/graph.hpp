#ifndef ELLGRAPH_GRAPH_HPP
#define ELLGRAPH_GRAPH_HPP

#include <ellgraph/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ellgraph
{

using Label = std::string;
using EdgeIndex = std::size_t;

class GraphError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Directed edge carrying the propagator d^dec P(z_head - z_tail); dec = -1 means -Zhat.
struct Edge {
    Label head;
    Label tail;
    int dec = 0;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Loop at a vertex carrying the constant W_dec.
struct Loop {
    Label vertex;
    int dec = 0;

    friend auto operator<=>(const Loop &, const Loop &) = default;
};

/// Labeled decorated multigraph, always held in canonical form.
///
/// Vertices are sorted and unique, edges sorted by (head, tail, dec), loops by
/// (vertex, dec). Two graphs are equal iff their canonical forms coincide; no
/// isomorphism quotient is taken.
class DecoratedGraph
{
public:
    DecoratedGraph() = default;

    DecoratedGraph(std::vector<Label> vertices, std::vector<Edge> edges, std::vector<Loop> loops)
        : vertices_(std::move(vertices)), edges_(std::move(edges)), loops_(std::move(loops))
    {
        normalize();
    }

    // Endpoints not listed in `vertices` are declared implicitly.
    static DecoratedGraph with_implicit_vertices(std::vector<Label> vertices, std::vector<Edge> edges,
                                                 std::vector<Loop> loops)
    {
        for (const auto &e : edges) {
            vertices.push_back(e.head);
            vertices.push_back(e.tail);
        }
        for (const auto &l : loops) {
            vertices.push_back(l.vertex);
        }
        return DecoratedGraph(std::move(vertices), std::move(edges), std::move(loops));
    }

    [[nodiscard]] const std::vector<Label> &vertices() const
    {
        return vertices_;
    }
    [[nodiscard]] const std::vector<Edge> &edges() const
    {
        return edges_;
    }
    [[nodiscard]] const std::vector<Loop> &loops() const
    {
        return loops_;
    }
    [[nodiscard]] std::size_t num_vertices() const
    {
        return vertices_.size();
    }
    [[nodiscard]] bool has_vertex(const Label &v) const
    {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    }

    void require_vertex(const Label &v) const
    {
        if (!has_vertex(v)) {
            throw GraphError("unknown vertex '" + v + "'");
        }
    }

    // Index of the first edge equal to e, or edges().size() if absent.
    [[nodiscard]] EdgeIndex find_edge(const Edge &e) const
    {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) {
            return edges_.size();
        }
        return static_cast<EdgeIndex>(it - edges_.begin());
    }

    [[nodiscard]] std::size_t find_loop(const Loop &l) const
    {
        auto it = std::lower_bound(loops_.begin(), loops_.end(), l);
        if (it == loops_.end() || *it != l) {
            return loops_.size();
        }
        return static_cast<std::size_t>(it - loops_.begin());
    }

    // Total weight sum(n + 2) over every edge and loop.
    [[nodiscard]] int total_weight() const
    {
        int w = 0;
        for (const auto &e : edges_) {
            w += e.dec + 2;
        }
        for (const auto &l : loops_) {
            w += l.dec + 2;
        }
        return w;
    }

    [[nodiscard]] std::size_t degree(const Label &v) const
    {
        std::size_t d = 0;
        for (const auto &e : edges_) {
            if (e.head == v || e.tail == v) {
                ++d;
            }
        }
        return d;
    }

    // Vertices w != v sharing at least one edge with v, sorted.
    [[nodiscard]] std::vector<Label> neighbors(const Label &v) const
    {
        std::set<Label> out;
        for (const auto &e : edges_) {
            if (e.head == v) {
                out.insert(e.tail);
            } else if (e.tail == v) {
                out.insert(e.head);
            }
        }
        return {out.begin(), out.end()};
    }

    [[nodiscard]] DecoratedGraph without_edge(EdgeIndex i) const
    {
        DecoratedGraph g = *this;
        g.edges_.erase(g.edges_.begin() + static_cast<std::ptrdiff_t>(i));
        return g;
    }

    [[nodiscard]] DecoratedGraph without_loop(std::size_t i) const
    {
        DecoratedGraph g = *this;
        g.loops_.erase(g.loops_.begin() + static_cast<std::ptrdiff_t>(i));
        return g;
    }

    [[nodiscard]] DecoratedGraph with_edges(const Edge &e, std::size_t count) const
    {
        std::vector<Edge> edges = edges_;
        edges.insert(edges.end(), count, e);
        return DecoratedGraph(vertices_, std::move(edges), loops_);
    }

    friend auto operator<=>(const DecoratedGraph &, const DecoratedGraph &) = default;
    friend bool operator==(const DecoratedGraph &, const DecoratedGraph &) = default;

private:
    void normalize()
    {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        for (const auto &e : edges_) {
            if (e.head == e.tail) {
                throw GraphError("edge with head == tail at vertex '" + e.head + "'");
            }
            if (e.dec < -1) {
                throw GraphError("edge decoration " + std::to_string(e.dec) + " below -1");
            }
            if (!has_vertex(e.head) || !has_vertex(e.tail)) {
                throw GraphError("edge endpoint is not a declared vertex");
            }
        }
        for (const auto &l : loops_) {
            if (l.dec < 0) {
                throw GraphError("loop decoration " + std::to_string(l.dec) + " below 0");
            }
            if (!has_vertex(l.vertex)) {
                throw GraphError("loop vertex '" + l.vertex + "' is not declared");
            }
        }
        std::sort(edges_.begin(), edges_.end());
        std::sort(loops_.begin(), loops_.end());
    }

    std::vector<Label> vertices_;
    std::vector<Edge> edges_;
    std::vector<Loop> loops_;
};

/// Returns the canonical representative; idempotent. DecoratedGraph is always
/// canonical, so this re-validates and copies.
inline DecoratedGraph canonicalize(const DecoratedGraph &g)
{
    return DecoratedGraph(g.vertices(), g.edges(), g.loops());
}

inline DecoratedGraph canonicalize(std::vector<Label> vertices, std::vector<Edge> edges, std::vector<Loop> loops)
{
    return DecoratedGraph(std::move(vertices), std::move(edges), std::move(loops));
}

struct Incidence {
    std::vector<EdgeIndex> plus;  // head == v
    std::vector<EdgeIndex> minus; // tail == v
    std::vector<std::size_t> loops;
};

inline Incidence incidence(const DecoratedGraph &g, const Label &v)
{
    g.require_vertex(v);
    Incidence inc;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        if (g.edges()[i].head == v) {
            inc.plus.push_back(i);
        } else if (g.edges()[i].tail == v) {
            inc.minus.push_back(i);
        }
    }
    for (std::size_t i = 0; i < g.loops().size(); ++i) {
        if (g.loops()[i].vertex == v) {
            inc.loops.push_back(i);
        }
    }
    return inc;
}

// Edges connecting v and w in either direction.
inline std::vector<EdgeIndex> edges_between(const DecoratedGraph &g, const Label &v, const Label &w)
{
    std::vector<EdgeIndex> out;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        const auto &e = g.edges()[i];
        if ((e.head == v && e.tail == w) || (e.head == w && e.tail == v)) {
            out.push_back(i);
        }
    }
    return out;
}

/// A sub-multiset of edges and loops, referenced by value.
struct ElementSet {
    std::vector<Edge> edges;
    std::vector<Loop> loops;
};

/// omega(A) = sum (n_e + 2); every element of A must occur in g (with multiplicity).
inline int weight(const DecoratedGraph &g, const ElementSet &a)
{
    std::map<Edge, long> edge_budget;
    for (const auto &e : g.edges()) {
        ++edge_budget[e];
    }
    std::map<Loop, long> loop_budget;
    for (const auto &l : g.loops()) {
        ++loop_budget[l];
    }
    int w = 0;
    for (const auto &e : a.edges) {
        if (--edge_budget[e] < 0) {
            throw GraphError("weight: edge not in graph");
        }
        w += e.dec + 2;
    }
    for (const auto &l : a.loops) {
        if (--loop_budget[l] < 0) {
            throw GraphError("weight: loop not in graph");
        }
        w += l.dec + 2;
    }
    return w;
}

inline int weight_of_edges(const DecoratedGraph &g, const std::vector<EdgeIndex> &idx)
{
    int w = 0;
    for (auto i : idx) {
        w += g.edges()[i].dec + 2;
    }
    return w;
}

inline DecoratedGraph reverse_edge(const DecoratedGraph &g, const Edge &e)
{
    const EdgeIndex i = g.find_edge(e);
    if (i == g.edges().size()) {
        throw GraphError("reverse_edge: edge not in graph");
    }
    std::vector<Edge> edges = g.edges();
    std::swap(edges[i].head, edges[i].tail);
    return DecoratedGraph(g.vertices(), std::move(edges), g.loops());
}

struct UnionResult {
    DecoratedGraph graph;
    std::map<Label, Label> relabeled; // old label in g2 -> new label
};

/// Disjoint union. Colliding labels of g2 get a "_2" style suffix unless
/// relabeling is disabled, in which case a collision is an error.
inline UnionResult disjoint_union(const DecoratedGraph &g1, const DecoratedGraph &g2, bool allow_relabel = true)
{
    std::set<Label> taken(g1.vertices().begin(), g1.vertices().end());
    taken.insert(g2.vertices().begin(), g2.vertices().end());
    std::map<Label, Label> rename;
    for (const auto &v : g2.vertices()) {
        if (!g1.has_vertex(v)) {
            rename[v] = v;
            continue;
        }
        if (!allow_relabel) {
            throw GraphError("disjoint_union: label collision on '" + v + "'");
        }
        int suffix = 2;
        Label candidate;
        do {
            candidate = v + "_" + std::to_string(suffix++);
        } while (taken.contains(candidate));
        taken.insert(candidate);
        rename[v] = candidate;
    }
    std::vector<Label> vertices = g1.vertices();
    std::vector<Edge> edges = g1.edges();
    std::vector<Loop> loops = g1.loops();
    for (const auto &v : g2.vertices()) {
        vertices.push_back(rename[v]);
    }
    for (const auto &e : g2.edges()) {
        edges.push_back({rename[e.head], rename[e.tail], e.dec});
    }
    for (const auto &l : g2.loops()) {
        loops.push_back({rename[l.vertex], l.dec});
    }
    UnionResult out{DecoratedGraph(std::move(vertices), std::move(edges), std::move(loops)), {}};
    for (const auto &[from, to] : rename) {
        if (from != to) {
            out.relabeled.emplace(from, to);
        }
    }
    return out;
}

/// Splits g into connected components (edges connect, loops do not).
inline std::vector<DecoratedGraph> connected_components(const DecoratedGraph &g)
{
    const auto &vs = g.vertices();
    std::map<Label, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        index[vs[i]] = i;
    }
    std::vector<std::size_t> parent(vs.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        parent[i] = i;
    }
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &e : g.edges()) {
        parent[find(index[e.head])] = find(index[e.tail]);
    }
    std::map<std::size_t, std::size_t> comp_of_root;
    std::vector<std::vector<Label>> cv;
    std::vector<std::vector<Edge>> ce;
    std::vector<std::vector<Loop>> cl;
    auto comp = [&](const Label &v) {
        const auto r = find(index[v]);
        auto [it, inserted] = comp_of_root.try_emplace(r, cv.size());
        if (inserted) {
            cv.emplace_back();
            ce.emplace_back();
            cl.emplace_back();
        }
        return it->second;
    };
    for (const auto &v : vs) {
        cv[comp(v)].push_back(v);
    }
    for (const auto &e : g.edges()) {
        ce[comp(e.head)].push_back(e);
    }
    for (const auto &l : g.loops()) {
        cl[comp(l.vertex)].push_back(l);
    }
    std::vector<DecoratedGraph> out;
    out.reserve(cv.size());
    for (std::size_t i = 0; i < cv.size(); ++i) {
        out.emplace_back(std::move(cv[i]), std::move(ce[i]), std::move(cl[i]));
    }
    return out;
}

/// Finite formal Q-linear combination of canonical graphs.
class GraphCombination
{
public:
    using Terms = std::map<DecoratedGraph, Rational>;

    GraphCombination() = default;
    explicit GraphCombination(const DecoratedGraph &g, const Rational &c = 1)
    {
        add(g, c);
    }

    void add(const DecoratedGraph &g, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (inserted) {
            it->second.canonicalize();
        } else {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void add(const GraphCombination &o, const Rational &scale = 1)
    {
        if (scale == 0) {
            return;
        }
        for (const auto &[g, c] : o.terms_) {
            add(g, c * scale);
        }
    }

    [[nodiscard]] const Terms &terms() const
    {
        return terms_;
    }
    [[nodiscard]] bool empty() const
    {
        return terms_.empty();
    }
    [[nodiscard]] std::size_t size() const
    {
        return terms_.size();
    }

    friend GraphCombination operator+(GraphCombination a, const GraphCombination &b)
    {
        a.add(b);
        return a;
    }
    friend GraphCombination operator-(GraphCombination a, const GraphCombination &b)
    {
        a.add(b, Rational(-1));
        return a;
    }
    friend GraphCombination operator*(const Rational &s, const GraphCombination &a)
    {
        GraphCombination out;
        out.add(a, s);
        return out;
    }
    friend bool operator==(const GraphCombination &, const GraphCombination &) = default;

private:
    Terms terms_;
};

inline GraphCombination comb_add(const GraphCombination &a, const GraphCombination &b)
{
    return a + b;
}

inline GraphCombination comb_scale(const GraphCombination &a, const Rational &s)
{
    return s * a;
}

} // namespace ellgraph

#endif
