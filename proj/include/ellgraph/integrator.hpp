#ifndef ELLGRAPH_INTEGRATOR_HPP
#define ELLGRAPH_INTEGRATOR_HPP

#include <ellgraph/graph.hpp>
#include <ellgraph/qmodring.hpp>
#include <ellgraph/residual.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ellgraph
{

enum class NeighborRule { Lowest, Middle, Highest };

/// How evaluate picks the vertex to integrate out and the lift neighbor.
struct EliminationPolicy {
    // Preferred elimination order over labels; the first label still present
    // is eliminated next. Empty: fewest incident edges, ties to lowest label.
    std::vector<Label> order;
    NeighborRule neighbor = NeighborRule::Lowest;
    // Dangling-vertex pruning and factorization over connected components.
    bool shortcuts = true;
};

/// Product of the loop values of g (the terminal value of a single vertex).
inline RingElement loop_product(const DecoratedGraph &g)
{
    RingElement out = RingElement::constant(1);
    for (const auto &l : g.loops()) {
        out *= loop_value(l.dec);
        if (out.is_zero()) {
            break;
        }
    }
    return out;
}

inline Label choose_vertex(const DecoratedGraph &g, const EliminationPolicy &policy)
{
    if (g.num_vertices() == 0) {
        throw GraphError("choose_vertex: empty graph");
    }
    for (const auto &v : policy.order) {
        if (g.has_vertex(v)) {
            return v;
        }
    }
    const Label *best = nullptr;
    std::size_t best_degree = 0;
    for (const auto &v : g.vertices()) {
        const std::size_t d = g.degree(v);
        if (best == nullptr || d < best_degree) {
            best = &v;
            best_degree = d;
        }
    }
    return *best;
}

inline Label choose_lift_neighbor(const DecoratedGraph &g, const Label &v, NeighborRule rule = NeighborRule::Lowest)
{
    auto candidates = g.neighbors(v);
    if (candidates.empty()) {
        for (const auto &x : g.vertices()) {
            if (x != v) {
                candidates.push_back(x);
            }
        }
    }
    if (candidates.empty()) {
        throw GraphError("choose_lift_neighbor: no other vertex to lift towards");
    }
    switch (rule) {
    case NeighborRule::Highest:
        return candidates.back();
    case NeighborRule::Middle:
        return candidates[candidates.size() / 2];
    case NeighborRule::Lowest:
    default:
        return candidates.front();
    }
}

/// Integrates out z_v. The lift delta_bar_inverse(g, v, lift) turns the integral
/// into a residue in z_v; the residue is the sum of 0-shifted residual graphs
/// over the neighbors of v, with an overall sign from the orientation of the
/// lift edges. The result lives on |V| - 1 vertices.
inline GraphCombination integrate_vertex(const DecoratedGraph &g, const Label &v, const Label &lift,
                                         const CollapseObserver *observer = nullptr)
{
    g.require_vertex(v);
    if (g.num_vertices() < 2) {
        throw GraphError("integrate_vertex: need at least two vertices");
    }
    const GraphCombination lifted = delta_bar_inverse(g, v, lift);
    GraphCombination out;
    for (const auto &[h, c] : lifted.terms()) {
        for (const auto &w : h.neighbors(v)) {
            out.add(residual_graph(h, v, w, 0, observer), -c);
        }
    }
    return out;
}

inline GraphCombination integrate_vertex(const DecoratedGraph &g, const Label &v)
{
    return integrate_vertex(g, v, choose_lift_neighbor(g, v));
}

/// Memoizing evaluator for W: graphs -> Q[pi][E2h, E4, E6].
///
/// Not thread-safe; use one instance per thread.
class Evaluator
{
public:
    explicit Evaluator(EliminationPolicy policy = {}) : policy_(std::move(policy))
    {
    }

    [[nodiscard]] const EliminationPolicy &policy() const
    {
        return policy_;
    }

    RingElement evaluate(const GraphCombination &x)
    {
        RingElement out;
        for (const auto &[g, c] : x.terms()) {
            out += evaluate(g) * c;
        }
        return out;
    }

    RingElement evaluate(const DecoratedGraph &g)
    {
        if (auto it = cache_.find(g); it != cache_.end()) {
            return it->second;
        }
        RingElement value = compute(g);
        cache_.emplace(g, value);
        return value;
    }

    [[nodiscard]] std::size_t cache_size() const
    {
        return cache_.size();
    }

private:
    RingElement compute(const DecoratedGraph &g)
    {
        if (g.num_vertices() == 0) {
            return RingElement::constant(1);
        }
        for (const auto &l : g.loops()) {
            if (loop_value(l.dec).is_zero()) {
                return {};
            }
        }
        if (g.num_vertices() == 1) {
            return loop_product(g);
        }
        if (policy_.shortcuts) {
            for (const auto &v : g.vertices()) {
                if (g.degree(v) == 1) {
                    return {};
                }
            }
            auto parts = connected_components(g);
            if (parts.size() > 1) {
                RingElement out = RingElement::constant(1);
                for (const auto &part : parts) {
                    out *= evaluate(part);
                    if (out.is_zero()) {
                        break;
                    }
                }
                return out;
            }
        }
        const Label v = choose_vertex(g, policy_);
        const Label lift = choose_lift_neighbor(g, v, policy_.neighbor);
        return evaluate(integrate_vertex(g, v, lift));
    }

    EliminationPolicy policy_;
    std::map<DecoratedGraph, RingElement> cache_;
};

/// Regularized integral W of a graph.
inline RingElement evaluate(const DecoratedGraph &g)
{
    Evaluator ev;
    return ev.evaluate(g);
}

inline RingElement evaluate(const GraphCombination &x)
{
    Evaluator ev;
    return ev.evaluate(x);
}

/// Closed form for a two-vertex banana with edges v -> w of the given decorations:
///
///   W = - sum_{A nonempty, proper subset of E} (-1)^omega(A)
///         sum_{u in P(E \ A, omega(A) - 1)} prod_A (n_e + 1)! / prod u_e! * prod W_{n_e + u_e},
///
/// where E is the edge set with one extra decoration -1 edge.
inline RingElement banana_closed_form(const std::vector<int> &decorations)
{
    if (decorations.empty()) {
        throw std::invalid_argument("banana_closed_form: need at least one edge");
    }
    std::vector<int> edges = decorations;
    for (int d : decorations) {
        if (d < 0) {
            throw std::invalid_argument("banana_closed_form: decorations must be >= 0");
        }
    }
    edges.insert(edges.begin(), -1);
    const std::size_t n = edges.size();
    RingElement total;
    for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
        int omega = 0;
        Integer num = 1;
        std::vector<int> rest;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1UL) {
                omega += edges[i] + 2;
                num *= factorial(edges[i] + 1);
            } else {
                rest.push_back(edges[i]);
            }
        }
        RingElement stratum;
        for_each_assignment(rest.size(), omega - 1, [&](const std::vector<int> &u) {
            RingElement prod = RingElement::constant(1);
            Integer den = 1;
            for (std::size_t j = 0; j < rest.size() && !prod.is_zero(); ++j) {
                prod *= loop_value(rest[j] + u[j]);
                den *= factorial(u[j]);
            }
            if (prod.is_zero()) {
                return;
            }
            Rational c(num, den);
            c.canonicalize();
            stratum += prod * c;
        });
        if (omega % 2 == 0) {
            total -= stratum;
        } else {
            total += stratum;
        }
    }
    return total;
}

struct AnomalyReport {
    RingElement lhs; // d/dY W(g)
    RingElement rhs; // W(delta g)
    bool equal = false;
};

/// Checks d/dY W(g) == W(delta(g)).
inline AnomalyReport check_anomaly(const DecoratedGraph &g, Evaluator &ev)
{
    AnomalyReport r;
    r.lhs = partial_Y(ev.evaluate(g));
    r.rhs = ev.evaluate(delta(g));
    r.equal = (r.lhs == r.rhs);
    return r;
}

inline AnomalyReport check_anomaly(const DecoratedGraph &g)
{
    Evaluator ev;
    return check_anomaly(g, ev);
}

/// The contraction G / e: tail of e collapsed into its head, no decoration shifts.
inline DecoratedGraph contract_edge(const DecoratedGraph &g, EdgeIndex i)
{
    const Edge &e = g.edges().at(i);
    std::vector<EdgeIndex> rest;
    for (EdgeIndex j = 0; j < g.edges().size(); ++j) {
        if (j != i && (g.edges()[j].head == e.tail || g.edges()[j].tail == e.tail)) {
            rest.push_back(j);
        }
    }
    Assignment zero{rest, std::vector<int>(rest.size(), 0), 0};
    auto q = collapse(g, e.tail, e.head, {i}, zero);
    if (!q) {
        throw GraphError("contract_edge: contraction produced a decoration -1 loop");
    }
    return *q;
}

/// Deletion/contraction form of the anomaly for loop-free graphs with simple
/// decoration-0 edges: d/dY W(G) == sum_e (W(G \ e) - W(G / e)).
inline bool check_simple_anomaly(const DecoratedGraph &g, Evaluator &ev)
{
    if (!g.loops().empty()) {
        throw GraphError("check_simple_anomaly: graph has loops");
    }
    std::set<std::pair<Label, Label>> seen;
    for (const auto &e : g.edges()) {
        if (e.dec != 0) {
            throw GraphError("check_simple_anomaly: all edge decorations must be 0");
        }
        auto key = std::minmax(e.head, e.tail);
        if (!seen.insert({key.first, key.second}).second) {
            throw GraphError("check_simple_anomaly: parallel edges are not allowed");
        }
    }
    RingElement rhs;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        rhs += ev.evaluate(g.without_edge(i));
        rhs -= ev.evaluate(contract_edge(g, i));
    }
    return partial_Y(ev.evaluate(g)) == rhs;
}

inline bool check_simple_anomaly(const DecoratedGraph &g)
{
    Evaluator ev;
    return check_simple_anomaly(g, ev);
}

struct EliminationStep {
    Label vertex;
    Label lift_neighbor;
    GraphCombination input;
    GraphCombination lifted;
    GraphCombination residual;
};

/// Audit record of a shortcut-free evaluation: every graph loses one vertex per step.
struct EliminationTrace {
    std::vector<EliminationStep> steps;
    GraphCombination final_terms; // single-vertex graphs carrying loops only
    RingElement value;

    // Recomputes the value from the terminal graphs.
    [[nodiscard]] RingElement replay() const
    {
        RingElement out;
        for (const auto &[g, c] : final_terms.terms()) {
            out += loop_product(g) * c;
        }
        return out;
    }
};

/// Evaluates by repeated vertex elimination without shortcuts, recording each
/// step. Collapsing keeps the labels of surviving vertices, so all terms of a
/// step share one vertex set. Terms carrying a loop of value zero are dropped.
inline EliminationTrace trace_evaluate(const DecoratedGraph &g, const EliminationPolicy &policy = {})
{
    EliminationTrace trace;
    GraphCombination current(g);
    auto prune = [](const GraphCombination &x) {
        GraphCombination out;
        for (const auto &[h, c] : x.terms()) {
            if (!loop_product(h).is_zero()) {
                out.add(h, c);
            }
        }
        return out;
    };
    current = prune(current);
    while (!current.empty() && current.terms().begin()->first.num_vertices() > 1) {
        const DecoratedGraph &first = current.terms().begin()->first;
        const Label v = choose_vertex(first, policy);
        Label lift;
        for (const auto &[h, c] : current.terms()) {
            if (!h.neighbors(v).empty()) {
                lift = choose_lift_neighbor(h, v, policy.neighbor);
                break;
            }
        }
        if (lift.empty()) {
            lift = choose_lift_neighbor(first, v, policy.neighbor);
        }
        EliminationStep step{v, lift, current, {}, {}};
        for (const auto &[h, c] : current.terms()) {
            step.lifted.add(delta_bar_inverse(h, v, lift), c);
        }
        for (const auto &[h, c] : step.lifted.terms()) {
            for (const auto &w : h.neighbors(v)) {
                step.residual.add(residual_graph(h, v, w, 0), -c);
            }
        }
        step.residual = prune(step.residual);
        current = step.residual;
        trace.steps.push_back(std::move(step));
    }
    trace.final_terms = current;
    trace.value = trace.replay();
    return trace;
}

} // namespace ellgraph

#endif
