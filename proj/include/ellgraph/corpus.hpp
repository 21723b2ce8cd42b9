#ifndef ELLGRAPH_CORPUS_HPP
#define ELLGRAPH_CORPUS_HPP

#include <ellgraph/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellgraph
{

struct CorpusLimits {
    int max_vertices = 4;
    int max_weight = 12;     // bound on omega(E) + omega(L)
    int max_decoration = 4;  // decorations are drawn from [0, max_decoration]
    std::size_t size = 240;
};

namespace detail
{

// Portable bounded draw; std::uniform_int_distribution is not specified
// bit-for-bit across standard libraries.
inline int draw(std::mt19937_64 &rng, int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

} // namespace detail

inline std::vector<Label> corpus_labels(int n)
{
    std::vector<Label> out;
    for (int i = 0; i < n; ++i) {
        out.push_back("v" + std::to_string(i + 1));
    }
    return out;
}

/// One random graph. Vertex count is uniform in [1, max_vertices]. Three graphs
/// in four start from a cycle through all vertices (two parallel edges for two
/// vertices), so that most graphs have no dangling vertex; the rest of a weight
/// target is spent on random edges (three to one) and loops. Five graphs in six
/// get an even total weight and even loop decorations; the others are left
/// unconstrained, so odd weights and vanishing loops still occur.
inline DecoratedGraph random_graph(std::mt19937_64 &rng, const CorpusLimits &lim)
{
    if (lim.max_vertices < 1 || lim.max_weight < 0 || lim.max_decoration < 0) {
        throw std::invalid_argument("random_graph: bad limits");
    }
    const int nv = detail::draw(rng, 1, lim.max_vertices);
    const auto labels = corpus_labels(nv);
    const bool even = detail::draw(rng, 0, 5) != 0;
    int target = detail::draw(rng, std::min(2 * nv, lim.max_weight), lim.max_weight);
    if (even) {
        target -= target % 2;
    }
    std::vector<Edge> edges;
    std::vector<Loop> loops;
    int weight = 0;
    auto add_edge = [&](int h, int t, int dec) {
        if (detail::draw(rng, 0, 1)) {
            std::swap(h, t);
        }
        edges.push_back({labels[h], labels[t], dec});
        weight += dec + 2;
    };
    if (nv >= 2 && 2 * nv <= target && detail::draw(rng, 0, 3) != 0) {
        for (int i = 0; i < nv; ++i) {
            if (nv == 2 && i == 1) {
                add_edge(0, 1, 0);
            } else {
                add_edge(i, (i + 1) % nv, 0);
            }
        }
    }
    while (target - weight >= 2) {
        int dec = detail::draw(rng, 0, std::min(lim.max_decoration, target - weight - 2));
        if (nv >= 2 && detail::draw(rng, 0, 3) != 0) {
            const int h = detail::draw(rng, 0, nv - 1);
            int t = detail::draw(rng, 0, nv - 2);
            add_edge(h, t >= h ? t + 1 : t, dec);
        } else {
            if (even) {
                dec -= dec % 2;
            }
            loops.push_back({labels[detail::draw(rng, 0, nv - 1)], dec});
            weight += dec + 2;
        }
    }
    // Spread leftover budget over the cycle's decorations.
    for (auto &e : edges) {
        const int room = std::min(lim.max_decoration - e.dec, lim.max_weight - weight);
        if (room > 0 && detail::draw(rng, 0, 1)) {
            const int add = detail::draw(rng, 0, room);
            e.dec += add;
            weight += add;
        }
    }
    if (even && weight % 2 != 0) {
        // Only edges can be odd here; drop one unit from the last odd edge.
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            if (it->dec % 2 != 0) {
                --it->dec;
                break;
            }
        }
    }
    return DecoratedGraph(labels, std::move(edges), std::move(loops));
}

/// Deterministic corpus of distinct graphs for a given seed.
inline std::vector<DecoratedGraph> random_corpus(std::uint64_t seed, const CorpusLimits &lim)
{
    std::mt19937_64 rng(seed);
    std::set<DecoratedGraph> seen;
    std::vector<DecoratedGraph> out;
    // Small limits admit few distinct graphs; stop after enough fruitless draws.
    std::size_t misses = 0;
    while (out.size() < lim.size && misses < 50 * lim.size + 1000) {
        auto g = random_graph(rng, lim);
        if (seen.insert(g).second) {
            out.push_back(std::move(g));
            misses = 0;
        } else {
            ++misses;
        }
    }
    return out;
}

/// All multisets of decorations in [0, max_dec] with 1..max_edges elements,
/// in nondecreasing order.
inline std::vector<std::vector<int>> all_banana_decorations(int max_edges, int max_dec)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto &&self, int from) -> void {
        if (!cur.empty()) {
            out.push_back(cur);
        }
        if (static_cast<int>(cur.size()) == max_edges) {
            return;
        }
        for (int d = from; d <= max_dec; ++d) {
            cur.push_back(d);
            self(self, d);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline DecoratedGraph banana(const std::vector<int> &decorations, const Label &v = "v", const Label &w = "w")
{
    std::vector<Edge> edges;
    for (int d : decorations) {
        edges.push_back({v, w, d});
    }
    return DecoratedGraph({v, w}, std::move(edges), {});
}

} // namespace ellgraph

#endif
