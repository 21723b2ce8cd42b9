#ifndef ELLGRAPH_RESIDUAL_HPP
#define ELLGRAPH_RESIDUAL_HPP

#include <ellgraph/graph.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ellgraph
{

/// A map from target edges to N with a prescribed total.
struct Assignment {
    std::vector<EdgeIndex> target_edges;
    std::vector<int> values;
    int total = 0;

    friend bool operator==(const Assignment &, const Assignment &) = default;
};

namespace detail
{

template <typename F>
void colex_assign(std::vector<int> &buf, std::size_t len, int remaining, F &f)
{
    if (len == 1) {
        buf[0] = remaining;
        f(static_cast<const std::vector<int> &>(buf));
        return;
    }
    for (int last = 0; last <= remaining; ++last) {
        buf[len - 1] = last;
        colex_assign(buf, len - 1, remaining - last, f);
    }
}

} // namespace detail

/// Visits every u in P(A, m) for |A| = n, in colexicographic order.
///
/// P(empty, 0) holds the single empty assignment; P(A, m < 0) is empty.
template <typename F>
void for_each_assignment(std::size_t n, int m, F &&f)
{
    if (m < 0) {
        return;
    }
    std::vector<int> buf(n, 0);
    if (n == 0) {
        if (m == 0) {
            f(static_cast<const std::vector<int> &>(buf));
        }
        return;
    }
    detail::colex_assign(buf, n, m, f);
}

inline std::vector<Assignment> enumerate_assignments(const std::vector<EdgeIndex> &targets, int m)
{
    std::vector<Assignment> out;
    for_each_assignment(targets.size(), m, [&](const std::vector<int> &u) { out.push_back({targets, u, m}); });
    return out;
}

/// One (A, u) stratum of a residual graph, reported to an optional observer.
struct CollapseRecord {
    Label collapsed;
    Label target;
    int shift = 0;
    std::vector<EdgeIndex> subset;
    Assignment assignment;
    Rational coefficient;
    std::optional<DecoratedGraph> quotient; // empty when a created loop has W = 0
};

using CollapseObserver = std::function<void(const CollapseRecord &)>;

namespace detail
{

struct CollapseContext {
    std::vector<EdgeIndex> e_v;  // all edges at v
    std::vector<EdgeIndex> e_vw; // edges between v and w
};

inline CollapseContext collapse_context(const DecoratedGraph &g, const Label &v, const Label &w)
{
    CollapseContext ctx;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        const auto &e = g.edges()[i];
        if (e.head != v && e.tail != v) {
            continue;
        }
        ctx.e_v.push_back(i);
        if (e.head == w || e.tail == w) {
            ctx.e_vw.push_back(i);
        }
    }
    return ctx;
}

inline bool contains(const std::vector<EdgeIndex> &sorted, EdgeIndex i)
{
    return std::binary_search(sorted.begin(), sorted.end(), i);
}

} // namespace detail

/// The quotient (Gamma / A, n + u) with v collapsed into w.
///
/// Edges in A vanish, the rest of E_{v,w} become loops at w, other edges at v
/// are re-attached to w, loops at v migrate to w. Returns nullopt when one of
/// the new loops carries decoration -1 (its value W_{-1} is zero).
inline std::optional<DecoratedGraph> collapse(const DecoratedGraph &g, const Label &v, const Label &w,
                                              const std::vector<EdgeIndex> &subset, const Assignment &u)
{
    std::vector<int> shift(g.edges().size(), 0);
    for (std::size_t i = 0; i < u.target_edges.size(); ++i) {
        shift[u.target_edges[i]] = u.values[i];
    }
    std::vector<Label> vertices;
    vertices.reserve(g.num_vertices());
    for (const auto &x : g.vertices()) {
        if (x != v) {
            vertices.push_back(x);
        }
    }
    std::vector<Edge> edges;
    std::vector<Loop> loops;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        const auto &e = g.edges()[i];
        if (e.head != v && e.tail != v) {
            edges.push_back(e);
            continue;
        }
        if (std::find(subset.begin(), subset.end(), i) != subset.end()) {
            continue;
        }
        const int dec = e.dec + shift[i];
        const Label &other = (e.head == v) ? e.tail : e.head;
        if (other == w) {
            if (dec < 0) {
                return std::nullopt;
            }
            loops.push_back({w, dec});
        } else if (e.head == v) {
            edges.push_back({w, e.tail, dec});
        } else {
            edges.push_back({e.head, w, dec});
        }
    }
    for (const auto &l : g.loops()) {
        loops.push_back({l.vertex == v ? w : l.vertex, l.dec});
    }
    return DecoratedGraph(std::move(vertices), std::move(edges), std::move(loops));
}

/// C_{A,u} = (-1)^c prod_{e in A} (n_e + 1)! / prod_{e in E_v \ A} u_e!, where
/// c = omega(E_v^- cap E_{v,w}) + omega(A) + sum_{e in E_v^- \ E_w} u_e.
inline Rational collapse_coefficient(const DecoratedGraph &g, const Label &v, const Label &w,
                                     const std::vector<EdgeIndex> &subset, const Assignment &u)
{
    g.require_vertex(v);
    g.require_vertex(w);
    if (subset.empty()) {
        throw GraphError("collapse_coefficient: A must be nonempty");
    }
    const auto ctx = detail::collapse_context(g, v, w);
    std::vector<EdgeIndex> a = subset;
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        throw GraphError("collapse_coefficient: A has repeated edges");
    }
    for (auto i : a) {
        if (!detail::contains(ctx.e_vw, i)) {
            throw GraphError("collapse_coefficient: A is not contained in E_{v,w}");
        }
    }
    std::vector<EdgeIndex> rest;
    for (auto i : ctx.e_v) {
        if (!detail::contains(a, i)) {
            rest.push_back(i);
        }
    }
    std::vector<EdgeIndex> domain = u.target_edges;
    std::sort(domain.begin(), domain.end());
    if (domain != rest || u.values.size() != u.target_edges.size()) {
        throw GraphError("collapse_coefficient: u must assign exactly E_v \\ A");
    }

    long sign_exp = 0;
    Integer num = 1;
    for (auto i : ctx.e_vw) {
        if (g.edges()[i].tail == v) {
            sign_exp += g.edges()[i].dec + 2;
        }
    }
    for (auto i : a) {
        sign_exp += g.edges()[i].dec + 2;
        num *= factorial(g.edges()[i].dec + 1);
    }
    Integer den = 1;
    for (std::size_t j = 0; j < u.target_edges.size(); ++j) {
        const auto &e = g.edges()[u.target_edges[j]];
        if (u.values[j] < 0) {
            throw GraphError("collapse_coefficient: negative assignment value");
        }
        den *= factorial(u.values[j]);
        if (e.tail == v && e.head != w) {
            sign_exp += u.values[j];
        }
    }
    Rational c(num, den);
    c.canonicalize();
    return (sign_exp % 2 == 0) ? c : Rational(-c);
}

/// k-shifted residual graph Res_w^{(v)}[k]: v collapsed into w, summed over
/// nonempty A in E_{v,w} and u in P(E_v \ A, omega(A) - 1 - k).
inline GraphCombination residual_graph(const DecoratedGraph &g, const Label &v, const Label &w, int k,
                                       const CollapseObserver *observer = nullptr)
{
    if (v == w) {
        throw GraphError("residual_graph: v and w must differ");
    }
    g.require_vertex(v);
    g.require_vertex(w);
    GraphCombination out;
    const auto ctx = detail::collapse_context(g, v, w);
    const std::size_t nvw = ctx.e_vw.size();
    if (nvw == 0) {
        return out;
    }
    if (nvw >= 8 * sizeof(unsigned long)) {
        throw GraphError("residual_graph: too many parallel edges");
    }

    int tail_weight = 0;
    for (auto i : ctx.e_vw) {
        if (g.edges()[i].tail == v) {
            tail_weight += g.edges()[i].dec + 2;
        }
    }

    for (unsigned long mask = 1; mask < (1UL << nvw); ++mask) {
        std::vector<EdgeIndex> subset;
        int omega_a = 0;
        Integer num = 1;
        for (std::size_t b = 0; b < nvw; ++b) {
            if ((mask >> b) & 1UL) {
                const auto i = ctx.e_vw[b];
                subset.push_back(i);
                omega_a += g.edges()[i].dec + 2;
                num *= factorial(g.edges()[i].dec + 1);
            }
        }
        const int m = omega_a - 1 - k;
        if (m < 0) {
            continue;
        }
        std::vector<EdgeIndex> rest;
        std::vector<bool> flips; // edge whose tail is v and which leaves E_w
        for (auto i : ctx.e_v) {
            if (!detail::contains(subset, i)) {
                rest.push_back(i);
                const auto &e = g.edges()[i];
                flips.push_back(e.tail == v && e.head != w);
            }
        }
        const int base_sign = tail_weight + omega_a;
        for_each_assignment(rest.size(), m, [&](const std::vector<int> &values) {
            Assignment u{rest, values, m};
            auto quotient = collapse(g, v, w, subset, u);
            if (!quotient && observer == nullptr) {
                return;
            }
            Integer den = 1;
            long sign_exp = base_sign;
            for (std::size_t j = 0; j < values.size(); ++j) {
                den *= factorial(values[j]);
                if (flips[j]) {
                    sign_exp += values[j];
                }
            }
            Rational c(num, den);
            c.canonicalize();
            if (sign_exp % 2 != 0) {
                c = -c;
            }
            if (observer != nullptr) {
                (*observer)(CollapseRecord{v, w, k, subset, u, c, quotient});
            }
            if (quotient) {
                out.add(*quotient, c);
            }
        });
    }
    return out;
}

inline GraphCombination residual_graph(const GraphCombination &x, const Label &v, const Label &w, int k,
                                       const CollapseObserver *observer = nullptr)
{
    GraphCombination out;
    for (const auto &[g, c] : x.terms()) {
        out.add(residual_graph(g, v, w, k, observer), c);
    }
    return out;
}

/// Graph holomorphic-anomaly operator:
/// delta(G) = sum_{n_e = 0, e in E u L} (G \ e) - 1/2 sum_{v != w} Res_w^{(v)}[1](G).
inline GraphCombination delta(const DecoratedGraph &g)
{
    GraphCombination out;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        if (g.edges()[i].dec == 0) {
            out.add(g.without_edge(i), Rational(1));
        }
    }
    for (std::size_t i = 0; i < g.loops().size(); ++i) {
        if (g.loops()[i].dec == 0) {
            out.add(g.without_loop(i), Rational(1));
        }
    }
    const Rational minus_half = make_rational(-1, 2);
    for (const auto &v : g.vertices()) {
        for (const auto &w : g.vertices()) {
            if (v != w) {
                out.add(residual_graph(g, v, w, 1), minus_half);
            }
        }
    }
    return out;
}

inline GraphCombination delta(const GraphCombination &x)
{
    GraphCombination out;
    for (const auto &[g, c] : x.terms()) {
        out.add(delta(g), c);
    }
    return out;
}

/// Anti-holomorphic differential at v: signed deletion of decoration -1 edges,
/// + for edges with head v and - for edges with tail v.
inline GraphCombination delta_bar(const DecoratedGraph &g, const Label &v)
{
    g.require_vertex(v);
    GraphCombination out;
    for (EdgeIndex i = 0; i < g.edges().size(); ++i) {
        const auto &e = g.edges()[i];
        if (e.dec != -1) {
            continue;
        }
        if (e.head == v) {
            out.add(g.without_edge(i), Rational(1));
        } else if (e.tail == v) {
            out.add(g.without_edge(i), Rational(-1));
        }
    }
    return out;
}

inline GraphCombination delta_bar(const GraphCombination &x, const Label &v)
{
    GraphCombination out;
    for (const auto &[g, c] : x.terms()) {
        out.add(delta_bar(g, v), c);
    }
    return out;
}

/// A right inverse of delta_bar at v built from decoration -1 edges v -> w:
///
///   gamma = sum_{k >= 1} (-1)^(k-1) / k! * (delta_bar^(k-1) g  with k new edges v -> w),
///
/// so that delta_bar(gamma, v) == g exactly. The sum stops once the iterated
/// delta_bar has removed every decoration -1 edge at v.
inline GraphCombination delta_bar_inverse(const DecoratedGraph &g, const Label &v, const Label &w)
{
    if (v == w) {
        throw GraphError("delta_bar_inverse: v and w must differ");
    }
    g.require_vertex(v);
    g.require_vertex(w);
    const Edge lift{v, w, -1};
    GraphCombination out;
    GraphCombination current(g);
    Rational coeff = 1;
    for (int k = 1; !current.empty(); ++k) {
        coeff /= k;
        const Rational signed_coeff = (k % 2 == 1) ? coeff : Rational(-coeff);
        for (const auto &[h, c] : current.terms()) {
            out.add(h.with_edges(lift, static_cast<std::size_t>(k)), c * signed_coeff);
        }
        current = delta_bar(current, v);
    }
    return out;
}

} // namespace ellgraph

#endif
