#include <ellgraph/corpus.hpp>
#include <ellgraph/verify.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace ellgraph;

TEST(Corpus, DeterministicAndDistinct)
{
    const CorpusLimits lim{4, 12, 4, 120};
    const auto a = random_corpus(99, lim);
    EXPECT_EQ(a, random_corpus(99, lim));
    EXPECT_NE(a, random_corpus(100, lim));
    EXPECT_EQ(a.size(), 120u);
    EXPECT_EQ(std::set<DecoratedGraph>(a.begin(), a.end()).size(), a.size());
}

TEST(Corpus, RespectsLimits)
{
    for (const CorpusLimits lim : {CorpusLimits{}, CorpusLimits{2, 8, 2, 40}, CorpusLimits{3, 6, 4, 40}}) {
        for (const auto &g : random_corpus(4, lim)) {
            EXPECT_GE(g.num_vertices(), 1u);
            EXPECT_LE(g.num_vertices(), static_cast<std::size_t>(lim.max_vertices));
            EXPECT_LE(g.total_weight(), lim.max_weight);
            for (const auto &e : g.edges()) {
                EXPECT_GE(e.dec, 0);
                EXPECT_LE(e.dec, lim.max_decoration);
            }
            for (const auto &l : g.loops()) {
                EXPECT_GE(l.dec, 0);
                EXPECT_LE(l.dec, lim.max_decoration);
            }
        }
    }
}

TEST(Corpus, DefaultCorpusIsRichEnough)
{
    const auto corpus = random_corpus(VerifyOptions{}.seed, CorpusLimits{});
    ASSERT_GE(corpus.size(), 200u);
    std::size_t big = 0;
    std::size_t nonzero = 0;
    Evaluator ev;
    for (const auto &g : corpus) {
        big += g.num_vertices() >= 3 ? 1 : 0;
        nonzero += ev.evaluate(g).is_zero() ? 0 : 1;
    }
    EXPECT_GE(big, 50u);
    EXPECT_GE(nonzero, corpus.size() / 2);
}

TEST(Corpus, BananaDecorations)
{
    const auto all = all_banana_decorations(4, 4);
    EXPECT_EQ(all.size(), 125u); // multisets of size 1..4 from 5 values: 5 + 15 + 35 + 70
    EXPECT_EQ(std::set<std::vector<int>>(all.begin(), all.end()).size(), all.size());
    EXPECT_EQ(banana({2, 0}), DecoratedGraph({"v", "w"}, {{"v", "w", 0}, {"v", "w", 2}}, {}));
}

TEST(Verify, SmallRunPassesAndIsReproducible)
{
    VerifyOptions opt;
    opt.seed = 5;
    opt.limits = CorpusLimits{3, 8, 3, 40};
    const VerifyReport a = run_verify(opt);
    EXPECT_TRUE(a.passed()) << to_text(a);
    EXPECT_EQ(a.suites.size(), 9u);
    for (const auto &s : a.suites) {
        EXPECT_GT(s.checked, 0u) << s.name;
    }
    EXPECT_EQ(to_json(a).dump(), to_json(run_verify(opt)).dump());
    EXPECT_NE(to_text(a).find("all suites passed"), std::string::npos);
}

TEST(Verify, OracleCoversTwoVertexGraphs)
{
    Evaluator ev;
    const auto corpus = random_corpus(8, CorpusLimits{2, 8, 3, 30});
    const SuiteResult r = suite_oracle(corpus, 3, ev);
    EXPECT_TRUE(r.passed());
    EXPECT_GT(r.checked, all_banana_decorations(4, 3).size());
}

TEST(Verify, SuiteResultRecordsFailures)
{
    SuiteResult r{"demo"};
    r.check(true, "fine");
    for (int i = 0; i < 10; ++i) {
        r.check(false, "bad " + std::to_string(i));
    }
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.checked, 11u);
    EXPECT_EQ(r.failed, 10u);
    EXPECT_EQ(r.failures.size(), 8u);
}

TEST(Verify, OrderIndependenceOnSmallCorpus)
{
    std::size_t graphs = 0;
    const SuiteResult r = suite_order_independence(random_corpus(12, CorpusLimits{4, 10, 3, 40}), &graphs);
    EXPECT_TRUE(r.passed());
    EXPECT_GT(graphs, 0u);
}
