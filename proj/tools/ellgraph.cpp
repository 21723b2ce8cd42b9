// Command-line front end: eval, delta, anomaly, verify, trace.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <ellgraph.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using namespace ellgraph;
using nlohmann::json;

namespace
{

enum class Format { Text, Json, Latex };

struct Job {
    std::vector<std::string> inputs;
    Format format = Format::Text;
    std::string trace_path;
    std::uint64_t seed = VerifyOptions{}.seed;
    int max_vertices = CorpusLimits{}.max_vertices;
    int max_weight = CorpusLimits{}.max_weight;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<DecoratedGraph> load_all(const std::vector<std::string> &paths)
{
    std::vector<DecoratedGraph> out;
    for (const auto &p : paths) {
        try {
            out.push_back(read_graph_file(p));
        } catch (const ParseError &e) {
            throw InputError(p + ": " + e.what());
        } catch (const GraphError &e) {
            throw InputError(p + ": " + e.what());
        }
    }
    return out;
}

std::string render(const RingElement &x, Format f)
{
    switch (f) {
    case Format::Json:
        return to_json(x).dump();
    case Format::Latex:
        return to_latex(x);
    default:
        return to_text(x);
    }
}

std::string render(const GraphCombination &x, Format f)
{
    switch (f) {
    case Format::Json:
        return to_json(x).dump();
    case Format::Latex:
        return to_latex(x);
    default:
        return to_text(x);
    }
}

// Prints one value per input; a bare value when there is exactly one input.
template <typename T>
void print_results(const Job &job, const std::vector<T> &values)
{
    if (job.format == Format::Json) {
        json results = json::array();
        for (std::size_t i = 0; i < values.size(); ++i) {
            results.push_back({{"file", job.inputs[i]}, {"value", json::parse(render(values[i], Format::Json))}});
        }
        std::cout << json{{"results", results}}.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values.size() > 1) {
            std::cout << job.inputs[i] << ": ";
        }
        std::cout << render(values[i], job.format) << '\n';
    }
}

void write_trace(std::ostream &os, const std::string &file, const DecoratedGraph &g)
{
    os << json{{"kind", "graph"}, {"file", file}, {"graph", to_json(g)}}.dump() << '\n';
    const EliminationTrace trace = trace_evaluate(g);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto &s = trace.steps[i];
        os << json{{"kind", "step"},
                   {"index", i},
                   {"vertex", s.vertex},
                   {"lift_neighbor", s.lift_neighbor},
                   {"input", to_json(s.input)},
                   {"lifted", to_json(s.lifted)},
                   {"residual", to_json(s.residual)}}
                  .dump()
           << '\n';
        // The individual (A, u) strata behind this step's residual.
        for (const auto &[h, c] : s.lifted.terms()) {
            const json source = to_json(h);
            const std::string weight = c.get_str();
            CollapseObserver obs = [&](const CollapseRecord &r) {
                json line = to_json(r, h);
                line["step"] = i;
                line["source"] = source;
                line["source_coeff"] = weight;
                os << line.dump() << '\n';
            };
            for (const auto &w : h.neighbors(s.vertex)) {
                residual_graph(h, s.vertex, w, 0, &obs);
            }
        }
    }
    os << json{{"kind", "final"},
               {"file", file},
               {"terms", to_json(trace.final_terms)},
               {"value", to_json(trace.value)}}
              .dump()
       << '\n';
}

std::unique_ptr<std::ofstream> open_trace(const Job &job)
{
    if (job.trace_path.empty()) {
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(job.trace_path);
    if (!*f) {
        throw InputError("cannot write trace file '" + job.trace_path + "'");
    }
    return f;
}

int cmd_eval(const Job &job)
{
    const auto graphs = load_all(job.inputs);
    auto trace = open_trace(job);
    Evaluator ev;
    std::vector<RingElement> values;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        values.push_back(ev.evaluate(graphs[i]));
        if (trace) {
            write_trace(*trace, job.inputs[i], graphs[i]);
        }
    }
    print_results(job, values);
    return 0;
}

int cmd_delta(const Job &job)
{
    const auto graphs = load_all(job.inputs);
    std::vector<GraphCombination> values;
    for (const auto &g : graphs) {
        values.push_back(delta(g));
    }
    print_results(job, values);
    return 0;
}

int cmd_anomaly(const Job &job)
{
    const auto graphs = load_all(job.inputs);
    Evaluator ev;
    bool all = true;
    json results = json::array();
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const AnomalyReport rep = check_anomaly(graphs[i], ev);
        all = all && rep.equal;
        if (job.format == Format::Json) {
            results.push_back(
                {{"file", job.inputs[i]}, {"lhs", to_json(rep.lhs)}, {"rhs", to_json(rep.rhs)}, {"equal", rep.equal}});
        } else {
            std::cout << job.inputs[i] << ": " << (rep.equal ? "equal" : "NOT EQUAL") << '\n'
                      << "  dY W(g)     = " << render(rep.lhs, job.format) << '\n'
                      << "  W(delta g)  = " << render(rep.rhs, job.format) << '\n';
        }
    }
    if (job.format == Format::Json) {
        std::cout << json{{"results", results}, {"passed", all}}.dump(2) << '\n';
    }
    return all ? 0 : 1;
}

int cmd_verify(const Job &job)
{
    if (job.max_vertices < 1 || job.max_weight < 0) {
        throw InputError("--max-vertices must be >= 1 and --max-weight >= 0");
    }
    VerifyOptions opt;
    opt.seed = job.seed;
    opt.limits.max_vertices = job.max_vertices;
    opt.limits.max_weight = job.max_weight;
    const VerifyReport rep = run_verify(opt);
    if (job.format == Format::Json) {
        std::cout << to_json(rep).dump(2) << '\n';
    } else {
        std::cout << to_text(rep);
    }
    return rep.passed() ? 0 : 1;
}

int cmd_trace(const Job &job)
{
    const auto graphs = load_all(job.inputs);
    auto file = open_trace(job);
    std::ostream &os = file ? *file : std::cout;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        write_trace(os, job.inputs[i], graphs[i]);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact evaluation of decorated graph integrals on elliptic curves"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Job job;
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
    app.add_option("--trace", job.trace_path, "Write elimination steps as JSON lines to this file");
    app.add_option("--seed", job.seed, "Seed for the random verification corpus");
    app.add_option("--max-vertices", job.max_vertices, "Corpus limit on vertices");
    app.add_option("--max-weight", job.max_weight, "Corpus limit on total weight");

    auto *eval = app.add_subcommand("eval", "Print W(g) for each graph file");
    auto *del = app.add_subcommand("delta", "Print the anomaly graph combination delta(g)");
    auto *anom = app.add_subcommand("anomaly", "Check dY W(g) = W(delta g) for each graph file");
    auto *verify = app.add_subcommand("verify", "Run the invariant suites on a seeded random corpus");
    auto *trace = app.add_subcommand("trace", "Dump the elimination trace as JSON lines");
    for (auto *sub : {eval, del, anom, trace}) {
        sub->add_option("files", job.inputs, "Graph files (text or JSON)")->required()->check(CLI::ExistingFile);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    job.format = format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text;

    try {
        if (eval->parsed()) {
            return cmd_eval(job);
        }
        if (del->parsed()) {
            return cmd_delta(job);
        }
        if (anom->parsed()) {
            return cmd_anomaly(job);
        }
        if (verify->parsed()) {
            return cmd_verify(job);
        }
        return cmd_trace(job);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
