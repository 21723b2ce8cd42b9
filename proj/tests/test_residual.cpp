#include <ellgraph/corpus.hpp>
#include <ellgraph/graph_io.hpp>
#include <ellgraph/integrator.hpp>
#include <ellgraph/residual.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace ellgraph;

namespace
{

const DecoratedGraph banana2 = banana({0, 0});
const DecoratedGraph banana3 = banana({0, 0, 0});

DecoratedGraph single(std::vector<Loop> loops, const Label &v = "w")
{
    return DecoratedGraph({v}, {}, std::move(loops));
}

// Pascal's triangle, independent of the library's binomial.
long pascal(int n, int k)
{
    std::vector<std::vector<long>> t(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) {
            t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
    }
    return (k < 0 || k > n) ? 0 : t[n][k];
}

// Brute force: every vector in [0, m]^n with sum m.
std::set<std::vector<int>> brute_assignments(int n, int m)
{
    std::set<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto &&self, int i) -> void {
        if (i == n) {
            int s = 0;
            for (int x : cur) {
                s += x;
            }
            if (s == m) {
                out.insert(cur);
            }
            return;
        }
        for (int x = 0; x <= m; ++x) {
            cur[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

TEST(Assignments, SmallCases)
{
    auto a = enumerate_assignments({7}, 3);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].values, (std::vector<int>{3}));
    EXPECT_EQ(a[0].total, 3);

    a = enumerate_assignments({0, 1}, 1);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].values, (std::vector<int>{1, 0}));
    EXPECT_EQ(a[1].values, (std::vector<int>{0, 1}));

    EXPECT_EQ(enumerate_assignments({0, 1, 2}, 2).size(), 6u);
    EXPECT_EQ(enumerate_assignments({}, 0).size(), 1u);
    EXPECT_TRUE(enumerate_assignments({}, 2).empty());
    EXPECT_TRUE(enumerate_assignments({0}, -1).empty());
}

TEST(Assignments, MatchBruteForceAndStarsAndBars)
{
    for (int n = 1; n <= 5; ++n) {
        for (int m = 0; m <= 8; ++m) {
            std::vector<EdgeIndex> targets(n);
            for (int i = 0; i < n; ++i) {
                targets[i] = i;
            }
            const auto got = enumerate_assignments(targets, m);
            std::set<std::vector<int>> seen;
            for (const auto &u : got) {
                EXPECT_EQ(u.target_edges, targets);
                int s = 0;
                for (int x : u.values) {
                    s += x;
                }
                EXPECT_EQ(s, m);
                seen.insert(u.values);
            }
            EXPECT_EQ(seen.size(), got.size()) << "duplicates for n=" << n << " m=" << m;
            EXPECT_EQ(seen, brute_assignments(n, m));
            EXPECT_EQ(static_cast<long>(got.size()), pascal(m + n - 1, n - 1));
        }
    }
}

TEST(CollapseCoefficient, BananaStrata)
{
    // Plain banana: A = one edge, u = 1 on the other.
    const Assignment u1{{1}, {1}, 1};
    EXPECT_EQ(collapse_coefficient(banana2, "v", "w", {0}, u1), Rational(1));

    // Lifted banana (-1, 0, 0): A = {-1 edge, one 0 edge}, u = 2 on the other.
    const DecoratedGraph lifted = banana({-1, 0, 0});
    ASSERT_EQ(lifted.edges()[0].dec, -1);
    EXPECT_EQ(collapse_coefficient(lifted, "v", "w", {0, 1}, Assignment{{2}, {2}, 2}), Rational(-1, 2));
    // A = both 0 edges, u = 3 on the -1 edge.
    EXPECT_EQ(collapse_coefficient(lifted, "v", "w", {1, 2}, Assignment{{0}, {3}, 3}), Rational(1, 6));
}

TEST(CollapseCoefficient, SignsFromTails)
{
    // Edge w -> v (v is the tail) adds omega(E_v^- cap E_vw) = 2 to the exponent.
    const DecoratedGraph g({"v", "w", "x"}, {{"w", "v", 1}, {"x", "v", 0}, {"v", "x", 0}}, {});
    // A = {w->v}: omega = 3 and tail weight 3. Only u on x->v counts towards the sign.
    ASSERT_EQ(g.edges()[0], (Edge{"v", "x", 0}));
    ASSERT_EQ(g.edges()[1], (Edge{"w", "v", 1}));
    ASSERT_EQ(g.edges()[2], (Edge{"x", "v", 0}));
    // u = 2 on v->x (v is head): exponent 3 + 3 = even, magnitude 2!/2! = 1.
    EXPECT_EQ(collapse_coefficient(g, "v", "w", {1}, Assignment{{0, 2}, {2, 0}, 2}), Rational(1));
    // u = 2 on x->v (v is tail): exponent 3 + 3 + 2, magnitude 1.
    EXPECT_EQ(collapse_coefficient(g, "v", "w", {1}, Assignment{{0, 2}, {0, 2}, 2}), Rational(1));
    // u = (1, 1): exponent 3 + 3 + 1 is odd.
    EXPECT_EQ(collapse_coefficient(g, "v", "w", {1}, Assignment{{0, 2}, {1, 1}, 2}), Rational(-2));
}

TEST(CollapseCoefficient, Errors)
{
    const Assignment u{{1}, {1}, 1};
    EXPECT_THROW(collapse_coefficient(banana2, "v", "w", {}, u), GraphError);
    const DecoratedGraph g({"v", "w", "x"}, {{"v", "w", 0}, {"v", "x", 0}}, {});
    EXPECT_THROW(collapse_coefficient(g, "v", "w", {1}, Assignment{{0}, {1}, 1}), GraphError);
    EXPECT_THROW(collapse_coefficient(banana2, "v", "w", {0}, Assignment{{0}, {1}, 1}), GraphError);
    EXPECT_THROW(collapse_coefficient(banana2, "v", "w", {0}, Assignment{{}, {}, 0}), GraphError);
}

TEST(Collapse, QuotientShape)
{
    // v has a loop, an edge to w (kept as a loop) and an edge to x (re-attached).
    const DecoratedGraph g({"v", "w", "x"}, {{"v", "w", 0}, {"v", "w", 1}, {"x", "v", 2}, {"w", "x", 0}},
                           {{"v", 4}});
    ASSERT_EQ(g.edges()[0], (Edge{"v", "w", 0}));
    ASSERT_EQ(g.edges()[1], (Edge{"v", "w", 1}));
    ASSERT_EQ(g.edges()[3], (Edge{"x", "v", 2}));
    const auto q = collapse(g, "v", "w", {0}, Assignment{{1, 3}, {2, 1}, 3});
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, DecoratedGraph({"w", "x"}, {{"w", "x", 0}, {"x", "w", 3}}, {{"w", 3}, {"w", 4}}));

    // A surviving -1 edge between v and w would become a -1 loop: dropped.
    const DecoratedGraph h = banana({-1, 0});
    EXPECT_FALSE(collapse(h, "v", "w", {1}, Assignment{{0}, {0}, 0}));
    EXPECT_TRUE(collapse(h, "v", "w", {1}, Assignment{{0}, {1}, 1}));
}

TEST(Residual, NoEdgesGivesEmpty)
{
    const DecoratedGraph g({"v", "w", "x"}, {{"v", "x", 0}, {"x", "w", 0}}, {});
    EXPECT_TRUE(residual_graph(g, "v", "w", 0).empty());
    EXPECT_TRUE(residual_graph(g, "v", "w", 1).empty());
    EXPECT_THROW(residual_graph(g, "v", "v", 0), GraphError);
    EXPECT_THROW(residual_graph(g, "v", "q", 0), GraphError);
}

TEST(Residual, BananaOneShifted)
{
    // A = one edge: omega - 2 = 0 left for the other edge, which becomes a loop.
    // A = both: 2 left over with nothing to assign to.
    EXPECT_EQ(residual_graph(banana2, "v", "w", 1), GraphCombination(single({{"w", 0}}), 2));
}

TEST(Residual, TripleBananaOneShifted)
{
    GraphCombination expect(single({{"w", 0}, {"w", 0}}), 3);
    expect.add(single({{"w", 2}}), Rational(3, 2));
    EXPECT_EQ(residual_graph(banana3, "v", "w", 1), expect);
}

TEST(Residual, ObserverSeesEveryStratum)
{
    std::size_t seen = 0;
    Rational sum = 0;
    CollapseObserver obs = [&](const CollapseRecord &r) {
        ++seen;
        EXPECT_EQ(r.collapsed, "v");
        EXPECT_EQ(r.target, "w");
        EXPECT_EQ(r.coefficient, collapse_coefficient(banana3, "v", "w", r.subset, r.assignment));
        sum += r.coefficient;
    };
    residual_graph(banana3, "v", "w", 1, &obs);
    EXPECT_EQ(seen, 6u); // 3 singletons + 3 pairs
    EXPECT_EQ(sum, Rational(3) + Rational(3, 2));
}

TEST(Delta, Examples)
{
    EXPECT_TRUE(delta(DecoratedGraph({"v"}, {}, {})).empty());

    GraphCombination expect(DecoratedGraph({"v", "w"}, {{"v", "w", 0}}, {}), 2);
    expect.add(single({{"w", 0}}), -1);
    expect.add(single({{"v", 0}}, "v"), -1);
    EXPECT_EQ(delta(banana2), expect);

    // Deletion hits decoration-0 loops too, and skips other decorations.
    const DecoratedGraph loops({"v"}, {}, {{"v", 0}, {"v", 2}});
    EXPECT_EQ(delta(loops), GraphCombination(single({{"v", 2}}, "v")));
}

TEST(Delta, TripleBananaStrata)
{
    const GraphCombination d = delta(banana3);
    // 3 deletions, then -1/2 (Res_w^v[1] + Res_v^w[1]).
    EXPECT_EQ(d.terms().at(banana2), Rational(3));
    EXPECT_EQ(d.terms().at(single({{"w", 2}})), Rational(-3, 4));
    EXPECT_EQ(d.terms().at(single({{"w", 0}, {"w", 0}})), Rational(-3, 2));
}

TEST(DeltaBar, SignedDeletion)
{
    const DecoratedGraph head({"v", "w", "x"}, {{"v", "w", -1}, {"w", "x", 0}}, {});
    EXPECT_EQ(delta_bar(head, "v"), GraphCombination(DecoratedGraph({"v", "w", "x"}, {{"w", "x", 0}}, {})));
    const DecoratedGraph tail({"v", "w"}, {{"w", "v", -1}, {"v", "w", 0}}, {});
    EXPECT_EQ(delta_bar(tail, "v"), GraphCombination(DecoratedGraph({"v", "w"}, {{"v", "w", 0}}, {}), -1));
    EXPECT_TRUE(delta_bar(banana2, "v").empty());
    // A -1 edge not at v is ignored.
    EXPECT_TRUE(delta_bar(DecoratedGraph({"v", "a", "b"}, {{"a", "b", -1}}, {}), "v").empty());
    EXPECT_THROW(delta_bar(banana2, "zz"), GraphError);
}

TEST(DeltaBarInverse, BananasGainOneLiftEdge)
{
    EXPECT_EQ(delta_bar_inverse(banana2, "v", "w"), GraphCombination(banana({-1, 0, 0})));
    EXPECT_EQ(delta_bar_inverse(banana3, "v", "w"), GraphCombination(banana({-1, 0, 0, 0})));
    EXPECT_THROW(delta_bar_inverse(banana2, "v", "v"), GraphError);
}

TEST(DeltaBarInverse, RoundTripWithExistingLiftEdges)
{
    const std::vector<DecoratedGraph> graphs = {
        banana2,
        DecoratedGraph({"v", "w"}, {{"v", "w", -1}, {"w", "v", -1}, {"v", "w", 0}}, {}),
        DecoratedGraph({"v", "w", "x"}, {{"v", "x", -1}, {"x", "v", -1}, {"w", "v", -1}, {"v", "w", 2}}, {{"v", 0}}),
        DecoratedGraph({"v", "w"}, {}, {}),
    };
    for (const auto &g : graphs) {
        for (const auto &w : g.vertices()) {
            if (w != "v") {
                EXPECT_EQ(delta_bar(delta_bar_inverse(g, "v", w), "v"), GraphCombination(g)) << to_compact(g);
            }
        }
    }
}

TEST(DeltaBarInverse, RoundTripOnCorpus)
{
    for (const auto &g : random_corpus(77, CorpusLimits{4, 12, 4, 120})) {
        for (const auto &v : g.vertices()) {
            for (const auto &w : g.vertices()) {
                if (v != w) {
                    EXPECT_EQ(delta_bar(delta_bar_inverse(g, v, w), v), GraphCombination(g));
                }
            }
        }
    }
}

TEST(Residual, SymmetryAfterEvaluation)
{
    Evaluator ev;
    const std::vector<DecoratedGraph> graphs = {
        banana2, banana3, banana({0, 2}),
        DecoratedGraph({"v", "w", "x"}, {{"v", "w", 0}, {"w", "v", 1}, {"x", "v", 0}, {"w", "x", 1}}, {}),
        DecoratedGraph({"v", "w", "x"}, {{"v", "w", 0}, {"w", "x", 0}, {"x", "v", 0}}, {{"x", 0}})};
    for (const auto &g : graphs) {
        for (int k : {0, 1}) {
            RingElement b = ev.evaluate(residual_graph(g, "w", "v", k));
            if (k == 0) {
                b = -b;
            }
            EXPECT_EQ(ev.evaluate(residual_graph(g, "v", "w", k)), b) << to_compact(g) << " k=" << k;
        }
    }
}
