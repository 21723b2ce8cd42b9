#ifndef ELLGRAPH_VERIFY_HPP
#define ELLGRAPH_VERIFY_HPP

// Invariant suites over a seeded random corpus. Shared by the CLI `verify`
// command and the acceptance runner.

#include <ellgraph/corpus.hpp>
#include <ellgraph/graph_io.hpp>
#include <ellgraph/integrator.hpp>
#include <ellgraph/oracle.hpp>
#include <ellgraph/ring_io.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ellgraph
{

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures; // first few, for diagnostics

    [[nodiscard]] bool passed() const
    {
        return failed == 0;
    }

    void check(bool ok, const std::string &what)
    {
        ++checked;
        if (!ok) {
            ++failed;
            if (failures.size() < 8) {
                failures.push_back(what);
            }
        }
    }
};

/// Evaluates a graph along every elimination order and every lift neighbor.
///
/// At each graph, every (vertex, lift) pair is tried and the resulting values
/// must coincide; since results are memoized per graph, agreement at every node
/// means every path through the elimination tree yields the same value. No
/// shortcuts are taken.
class OrderIndependenceChecker
{
public:
    explicit OrderIndependenceChecker(SuiteResult &sink) : sink_(sink)
    {
    }

    RingElement value(const DecoratedGraph &g)
    {
        if (auto it = memo_.find(g); it != memo_.end()) {
            return it->second;
        }
        RingElement out;
        if (g.num_vertices() <= 1 || loop_product(g).is_zero()) {
            out = g.num_vertices() == 0 ? RingElement::constant(1) : loop_product(g);
        } else {
            std::optional<RingElement> common;
            for (const auto &v : g.vertices()) {
                for (const auto &lift : g.vertices()) {
                    if (lift == v) {
                        continue;
                    }
                    RingElement r;
                    const GraphCombination next = integrate_vertex(g, v, lift);
                    for (const auto &[h, c] : next.terms()) {
                        r += value(h) * c;
                    }
                    if (!common) {
                        common = r;
                    } else {
                        sink_.check(r == *common, "order dependence at " + to_compact(g) + " eliminating " + v +
                                                      " lifted to " + lift + ": " + to_text(r) +
                                                      " vs " + to_text(*common));
                    }
                }
            }
            out = *common;
        }
        memo_.emplace(g, out);
        return out;
    }

private:
    SuiteResult &sink_;
    std::map<DecoratedGraph, RingElement> memo_;
};

inline SuiteResult suite_order_independence(const std::vector<DecoratedGraph> &corpus, std::size_t *graphs = nullptr)
{
    SuiteResult r{"order_independence"};
    OrderIndependenceChecker checker(r);
    Evaluator ev;
    std::size_t n = 0;
    for (const auto &g : corpus) {
        if (g.num_vertices() < 3) {
            continue;
        }
        ++n;
        const RingElement all = checker.value(g);
        r.check(all == ev.evaluate(g), "exhaustive value differs from default evaluation on " + to_compact(g));
    }
    if (graphs != nullptr) {
        *graphs = n;
    }
    return r;
}

inline SuiteResult suite_weight_homogeneity(const std::vector<DecoratedGraph> &corpus, Evaluator &ev)
{
    SuiteResult r{"weight_homogeneity"};
    for (const auto &g : corpus) {
        const RingElement x = ev.evaluate(g);
        int w = 0;
        const bool ok = x.is_zero() || (x.is_weight_matched(&w) && w == g.total_weight());
        r.check(ok, "not homogeneous of weight " + std::to_string(g.total_weight()) + ": " + to_compact(g) + " -> " +
                        to_text(x));
    }
    return r;
}

/// Triple agreement on bananas plus the residual module against series residues.
inline SuiteResult suite_oracle(const std::vector<DecoratedGraph> &corpus, int max_decoration, Evaluator &ev)
{
    SuiteResult r{"oracle_equivalence"};
    for (const auto &decs : all_banana_decorations(4, max_decoration)) {
        const RingElement a = ev.evaluate(banana(decs));
        const RingElement b = banana_closed_form(decs);
        const RingElement c = oracle_evaluate_banana(decs);
        r.check(a == b && b == c, "banana " + to_compact(banana(decs)) + ": evaluate " + to_text(a) + ", closed form " +
                                      to_text(b) + ", oracle " + to_text(c));
    }
    auto compare = [&](const DecoratedGraph &g) {
        for (const auto &v : g.vertices()) {
            for (const auto &w : g.neighbors(v)) {
                for (int k : {0, 1}) {
                    const bool ok =
                        residual_as_symbolic(residual_graph(g, v, w, k)) == oracle_residue_2vertex(g, v, w, k);
                    r.check(ok, "residual vs series residue on " + to_compact(g) + " v=" + v + " w=" + w +
                                    " k=" + std::to_string(k));
                }
            }
        }
    };
    // Every two-vertex graph with up to three edges of decoration -1..3 in
    // either orientation.
    std::vector<Edge> kinds;
    for (int d = -1; d <= 3; ++d) {
        kinds.push_back({"v", "w", d});
        kinds.push_back({"w", "v", d});
    }
    std::vector<Edge> cur;
    auto rec = [&](auto &&self, std::size_t from) -> void {
        if (!cur.empty()) {
            compare(DecoratedGraph({"v", "w"}, cur, {}));
        }
        if (cur.size() == 3) {
            return;
        }
        for (std::size_t i = from; i < kinds.size(); ++i) {
            cur.push_back(kinds[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    for (const auto &g : corpus) {
        compare(g);
    }
    return r;
}

inline SuiteResult suite_round_trip(const std::vector<DecoratedGraph> &corpus)
{
    SuiteResult r{"delta_bar_round_trip"};
    auto run = [&](const DecoratedGraph &g) {
        for (const auto &v : g.vertices()) {
            for (const auto &w : g.vertices()) {
                if (v == w) {
                    continue;
                }
                const GraphCombination back = delta_bar(delta_bar_inverse(g, v, w), v);
                r.check(back == GraphCombination(g), "round trip fails on " + to_compact(g) + " v=" + v + " w=" + w);
            }
        }
    };
    for (const auto &g : corpus) {
        run(g);
        // Variants that already carry -1 edges at several vertices.
        const auto &vs = g.vertices();
        if (vs.size() >= 2) {
            std::vector<Edge> edges = g.edges();
            edges.push_back({vs[0], vs[1], -1});
            if (vs.size() >= 3) {
                edges.push_back({vs[2], vs[0], -1});
                edges.push_back({vs[1], vs[2], -1});
            }
            run(DecoratedGraph(vs, edges, g.loops()));
        }
    }
    return r;
}

inline SuiteResult suite_reversal_parity(const std::vector<DecoratedGraph> &corpus, Evaluator &ev)
{
    SuiteResult r{"reversal_parity"};
    for (const auto &g : corpus) {
        const RingElement base = ev.evaluate(g);
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            if (i > 0 && g.edges()[i] == g.edges()[i - 1]) {
                continue;
            }
            const Edge &e = g.edges()[i];
            RingElement expect = base;
            if (e.dec % 2 != 0) {
                expect *= Rational(-1);
            }
            r.check(ev.evaluate(reverse_edge(g, e)) == expect, "parity fails reversing edge " + std::to_string(i) +
                                                                   " of " + to_compact(g));
        }
    }
    return r;
}

// Checked with shortcuts disabled, so the zero comes out of the elimination itself.
inline SuiteResult suite_dangling(const std::vector<DecoratedGraph> &corpus, int max_weight)
{
    SuiteResult r{"dangling_vertex"};
    Evaluator plain(EliminationPolicy{{}, NeighborRule::Lowest, false});
    for (const auto &g : corpus) {
        bool dangling = false;
        for (const auto &v : g.vertices()) {
            dangling = dangling || g.degree(v) == 1;
        }
        if (dangling) {
            const RingElement x = plain.evaluate(g);
            r.check(x.is_zero(), "dangling graph " + to_compact(g) + " -> " + to_text(x));
        }
        if (g.num_vertices() <= 3 && g.total_weight() + 4 <= max_weight + 2) {
            std::vector<Label> vs = g.vertices();
            vs.push_back("x");
            std::vector<Edge> edges = g.edges();
            const int dec = static_cast<int>(g.edges().size() % 3);
            edges.push_back(g.edges().size() % 2 ? Edge{"x", vs[0], dec} : Edge{vs[0], "x", dec});
            std::vector<Loop> loops = g.loops();
            loops.push_back({"x", 0}); // loops do not rescue a dangling vertex
            const DecoratedGraph h(vs, edges, loops);
            const RingElement x = plain.evaluate(h);
            r.check(x.is_zero(), "dangling graph " + to_compact(h) + " -> " + to_text(x));
        }
    }
    return r;
}

inline SuiteResult suite_multiplicativity(const std::vector<DecoratedGraph> &corpus, int max_weight, Evaluator &ev)
{
    SuiteResult r{"multiplicativity"};
    Evaluator plain(EliminationPolicy{{}, NeighborRule::Lowest, false});
    // Each graph is paired with the next one that keeps the union small.
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto &a = corpus[i];
        for (std::size_t j = i + 1; j < corpus.size() && j <= i + 16; ++j) {
            const auto &b = corpus[j];
            if (a.num_vertices() + b.num_vertices() > 5 || a.total_weight() + b.total_weight() > max_weight + 4) {
                continue;
            }
            const DecoratedGraph u = disjoint_union(a, b).graph;
            r.check(plain.evaluate(u) == ev.evaluate(a) * ev.evaluate(b),
                    "union of " + to_compact(a) + " and " + to_compact(b));
            break;
        }
    }
    return r;
}

inline SuiteResult suite_anomaly(const std::vector<DecoratedGraph> &corpus, Evaluator &ev)
{
    SuiteResult r{"anomaly"};
    for (const auto &g : corpus) {
        const AnomalyReport rep = check_anomaly(g, ev);
        r.check(rep.equal, "anomaly on " + to_compact(g) + ": " + to_text(rep.lhs) + " vs " + to_text(rep.rhs));
    }
    return r;
}

inline SuiteResult suite_residual_symmetry(const std::vector<DecoratedGraph> &corpus, Evaluator &ev)
{
    SuiteResult r{"residual_symmetry"};
    for (const auto &g : corpus) {
        const auto &vs = g.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                if (edges_between(g, vs[i], vs[j]).empty()) {
                    continue;
                }
                for (int k : {0, 1}) {
                    const RingElement a = ev.evaluate(residual_graph(g, vs[i], vs[j], k));
                    RingElement b = ev.evaluate(residual_graph(g, vs[j], vs[i], k));
                    if (k % 2 == 0) {
                        b *= Rational(-1);
                    }
                    r.check(a == b, "residual symmetry on " + to_compact(g) + " " + vs[i] + "," + vs[j] +
                                        " k=" + std::to_string(k));
                }
            }
        }
    }
    return r;
}

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    CorpusLimits limits;
};

struct VerifyReport {
    VerifyOptions options;
    std::size_t corpus_size = 0;
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool passed() const
    {
        for (const auto &s : suites) {
            if (!s.passed()) {
                return false;
            }
        }
        return true;
    }
};

inline VerifyReport run_verify(const VerifyOptions &opt)
{
    VerifyReport rep{opt};
    const auto corpus = random_corpus(opt.seed, opt.limits);
    rep.corpus_size = corpus.size();
    Evaluator ev;
    rep.suites.push_back(suite_order_independence(corpus));
    rep.suites.push_back(suite_weight_homogeneity(corpus, ev));
    rep.suites.push_back(suite_oracle(corpus, opt.limits.max_decoration, ev));
    rep.suites.push_back(suite_round_trip(corpus));
    rep.suites.push_back(suite_reversal_parity(corpus, ev));
    rep.suites.push_back(suite_dangling(corpus, opt.limits.max_weight));
    rep.suites.push_back(suite_multiplicativity(corpus, opt.limits.max_weight, ev));
    rep.suites.push_back(suite_anomaly(corpus, ev));
    rep.suites.push_back(suite_residual_symmetry(corpus, ev));
    return rep;
}

inline nlohmann::json to_json(const SuiteResult &s)
{
    return {{"name", s.name},
            {"passed", s.passed()},
            {"checked", s.checked},
            {"failed", s.failed},
            {"failures", s.failures}};
}

inline nlohmann::json to_json(const VerifyReport &r)
{
    nlohmann::json suites = nlohmann::json::array();
    for (const auto &s : r.suites) {
        suites.push_back(to_json(s));
    }
    return {{"seed", r.options.seed},
            {"max_vertices", r.options.limits.max_vertices},
            {"max_weight", r.options.limits.max_weight},
            {"max_decoration", r.options.limits.max_decoration},
            {"corpus_size", r.corpus_size},
            {"passed", r.passed()},
            {"suites", suites}};
}

inline std::string to_text(const VerifyReport &r)
{
    std::string out = "corpus: " + std::to_string(r.corpus_size) + " graphs (seed " + std::to_string(r.options.seed) +
                      ", max vertices " + std::to_string(r.options.limits.max_vertices) + ", max weight " +
                      std::to_string(r.options.limits.max_weight) + ")\n";
    for (const auto &s : r.suites) {
        out += s.name + ": " + (s.passed() ? "PASS" : "FAIL") + " (" + std::to_string(s.checked) + " checks";
        if (s.failed) {
            out += ", " + std::to_string(s.failed) + " failed";
        }
        out += ")\n";
        for (const auto &f : s.failures) {
            out += "  " + f + "\n";
        }
    }
    out += r.passed() ? "all suites passed\n" : "verification FAILED\n";
    return out;
}

} // namespace ellgraph

#endif
