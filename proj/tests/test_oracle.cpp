#include <ellgraph/corpus.hpp>
#include <ellgraph/graph_io.hpp>
#include <ellgraph/integrator.hpp>
#include <ellgraph/oracle.hpp>

#include <gtest/gtest.h>

using namespace ellgraph;

namespace
{

const RingElement E2h = RingElement::term(1, 0, 1, 0, 0);
const RingElement E4 = RingElement::term(1, 0, 0, 1, 0);

RingElement pi_pow(int p)
{
    return RingElement::term(1, p, 0, 0, 0);
}

RingElement q(long n, long d = 1)
{
    return RingElement::constant(n, d);
}

const RingElement W0 = q(1, 3) * pi_pow(2) * E2h;
const RingElement W2 = q(2, 15) * pi_pow(4) * E4;

template <typename C>
bool same(const BiSeries<C> &a, const BiSeries<C> &b)
{
    return a.truncation() == b.truncation() && a.holomorphic() == b.holomorphic() &&
           a.zbar_terms() == b.zbar_terms();
}

} // namespace

TEST(Series, ZhatCoefficients)
{
    const auto s = series_Zhat(4);
    EXPECT_EQ(s.coefficient(-1), q(-1));
    EXPECT_TRUE(s.coefficient(0).is_zero());
    EXPECT_EQ(s.coefficient(1), W0);
    EXPECT_TRUE(s.coefficient(2).is_zero());
    EXPECT_EQ(s.coefficient(3), W2 * q(1, 6));
    EXPECT_EQ(s.zbar_terms().size(), 1u);
    EXPECT_EQ(s.valuation(), -1);
}

TEST(Series, ZbarTermsHaveNoResidue)
{
    BiSeries<RingElement> s(3);
    s.add_zbar(-1, 1, q(5));
    s.add_zbar(-2, 2, q(1));
    EXPECT_TRUE(s.residue().is_zero());
    EXPECT_THROW(s.add_zbar(0, 0, q(1)), std::invalid_argument);
}

TEST(Series, PhatDerivatives)
{
    auto s = series_Phat_deriv(0, 4);
    EXPECT_EQ(s.coefficient(-2), q(1));
    EXPECT_EQ(s.coefficient(0), W0);
    EXPECT_TRUE(s.coefficient(1).is_zero());
    EXPECT_EQ(s.coefficient(2), W2 * q(1, 2));
    EXPECT_EQ(series_Phat_deriv(1, 2).coefficient(-3), q(-2));
    EXPECT_EQ(series_Phat_deriv(2, 2).coefficient(-4), q(6));
    EXPECT_EQ(series_Phat_deriv(2, 2).coefficient(0), W2);
    EXPECT_THROW(series_Phat_deriv(-1, 2), std::invalid_argument);
}

TEST(Series, DerivativeRelations)
{
    for (int n = 0; n <= 4; ++n) {
        EXPECT_TRUE(same(series_Phat_deriv(n, 8).derivative(), series_Phat_deriv(n + 1, 7))) << "n = " << n;
    }
    // d/dz of the decoration -1 series is the decoration 0 series, up to the zbar part.
    EXPECT_EQ(series_Zhat(8).derivative().holomorphic(), series_Phat_deriv(0, 7).holomorphic());
}

TEST(Series, ProductIsCommutativeAndAssociative)
{
    const auto a = series_Zhat(6), b = series_Phat_deriv(1, 6), c = series_Phat_deriv(2, 6);
    EXPECT_TRUE(same(a * b, b * a));
    EXPECT_TRUE(same((a * b) * c, a * (b * c)));
    EXPECT_TRUE(same(a + b, b + a));
    EXPECT_TRUE(same(b.reflected().reflected(), b));
}

TEST(ShiftExpand, Examples)
{
    const Edge e{"w", "x", 0};
    const auto s = series_shift_expand(e, false, 3);
    EXPECT_EQ(s.coefficient(0), SymbolicSum(q(1), {Edge{"w", "x", 0}}));
    EXPECT_EQ(s.coefficient(2), SymbolicSum(q(1, 2), {Edge{"w", "x", 2}}));
    EXPECT_TRUE(s.zbar_terms().empty());

    const auto t = series_shift_expand(Edge{"x", "w", -1}, true, 3);
    EXPECT_EQ(t.coefficient(1), SymbolicSum(q(-1), {Edge{"x", "w", 0}}));
    EXPECT_EQ(t.coefficient(3), SymbolicSum(q(-1, 6), {Edge{"x", "w", 2}}));
    EXPECT_EQ(t.zbar_terms().size(), 1u);
}

TEST(OracleResidue, Examples)
{
    // Res of the lifted banana; the integral over z_v is minus this.
    const auto lifted = oracle_residue_2vertex(banana({-1, 0, 0}), "v", "w", 0);
    EXPECT_EQ(lifted, SymbolicSum(W0 * W0 - q(5, 6) * W2));
    EXPECT_EQ(evaluate(integrate_vertex(banana({0, 0}), "v")), -(W0 * W0 - q(5, 6) * W2));

    EXPECT_EQ(oracle_residue_2vertex(banana({0}), "v", "w", 1), SymbolicSum(q(1)));
    EXPECT_EQ(oracle_residue_2vertex(banana({0, 0}), "v", "w", 1), SymbolicSum(q(2) * W0));
    EXPECT_THROW(oracle_residue_2vertex(DecoratedGraph({"v", "w"}, {}, {}), "v", "w", 0), GraphError);
}

TEST(OracleResidue, MatchesResidualGraphs)
{
    std::vector<DecoratedGraph> graphs = {
        banana({0, 0}), banana({-1, 0, 0}), banana({1, 2}),
        DecoratedGraph({"v", "w", "x"}, {{"v", "w", 0}, {"w", "v", 1}, {"x", "v", 0}, {"v", "x", 2}}, {{"v", 0}}),
        DecoratedGraph({"v", "w", "x"}, {{"v", "w", -1}, {"w", "v", 0}, {"x", "v", -1}}, {})};
    for (const auto &g : random_corpus(31, CorpusLimits{4, 10, 3, 60})) {
        graphs.push_back(g);
    }
    for (const auto &g : graphs) {
        for (const auto &v : g.vertices()) {
            for (const auto &w : g.neighbors(v)) {
                for (int k : {0, 1, 2}) {
                    EXPECT_EQ(oracle_residue_2vertex(g, v, w, k), residual_as_symbolic(residual_graph(g, v, w, k)))
                        << to_compact(g) << " v=" << v << " w=" << w << " k=" << k;
                }
            }
        }
    }
}

TEST(OracleBanana, Examples)
{
    EXPECT_EQ(oracle_evaluate_banana({0, 0}), q(1, 9) * pi_pow(4) * (E4 - E2h * E2h));
    EXPECT_EQ(oracle_evaluate_banana({0, 2}), banana_closed_form({0, 2}));
    EXPECT_TRUE(oracle_evaluate_banana({0}).is_zero());
    EXPECT_THROW(oracle_evaluate_banana({}), std::invalid_argument);
    for (const auto &decs : all_banana_decorations(3, 4)) {
        EXPECT_EQ(oracle_evaluate_banana(decs), banana_closed_form(decs));
    }
}
