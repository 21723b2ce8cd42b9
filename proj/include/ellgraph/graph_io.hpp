#ifndef ELLGRAPH_GRAPH_IO_HPP
#define ELLGRAPH_GRAPH_IO_HPP

#include <ellgraph/graph.hpp>
#include <ellgraph/residual.hpp>
#include <ellgraph/ring_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ellgraph
{

namespace detail
{

inline int parse_decoration(const std::string &token, int line)
{
    if (token.empty() || token.find_first_not_of("-+0123456789") != std::string::npos) {
        throw ParseError("decoration '" + token + "' is not an integer", line);
    }
    try {
        std::size_t used = 0;
        const int d = std::stoi(token, &used);
        if (used != token.size()) {
            throw ParseError("decoration '" + token + "' is not an integer", line);
        }
        return d;
    } catch (const std::logic_error &) {
        throw ParseError("decoration '" + token + "' is not an integer", line);
    }
}

} // namespace detail

/// Parses the line-oriented graph format:
///
///   vertex <label>
///   edge <head> <tail> <dec>     (dec >= -1, head != tail)
///   loop <vertex> <dec>          (dec >= 0)
///
/// '#' starts a comment. Endpoints are declared by first use.
inline DecoratedGraph graph_from_text(std::string_view text)
{
    std::vector<Label> vertices;
    std::vector<Edge> edges;
    std::vector<Loop> loops;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const std::string &kw = tok[0];
        if (kw == "vertex") {
            if (tok.size() != 2) {
                throw ParseError("expected 'vertex <label>'", line);
            }
            vertices.push_back(tok[1]);
        } else if (kw == "edge") {
            if (tok.size() != 4) {
                throw ParseError("expected 'edge <head> <tail> <dec>'", line);
            }
            if (tok[1] == tok[2]) {
                throw ParseError("edge head equals tail ('" + tok[1] + "'); use 'loop'", line);
            }
            const int d = detail::parse_decoration(tok[3], line);
            if (d < -1) {
                throw ParseError("edge decoration " + std::to_string(d) + " below -1", line);
            }
            edges.push_back({tok[1], tok[2], d});
            vertices.push_back(tok[1]);
            vertices.push_back(tok[2]);
        } else if (kw == "loop") {
            if (tok.size() != 3) {
                throw ParseError("expected 'loop <vertex> <dec>'", line);
            }
            const int d = detail::parse_decoration(tok[2], line);
            if (d < 0) {
                throw ParseError("loop decoration " + std::to_string(d) + " below 0", line);
            }
            loops.push_back({tok[1], d});
            vertices.push_back(tok[1]);
        } else {
            throw ParseError("unknown directive '" + kw + "'", line);
        }
    }
    return DecoratedGraph(std::move(vertices), std::move(edges), std::move(loops));
}

inline std::string to_text(const DecoratedGraph &g)
{
    std::ostringstream os;
    for (const auto &v : g.vertices()) {
        os << "vertex " << v << '\n';
    }
    for (const auto &e : g.edges()) {
        os << "edge " << e.head << ' ' << e.tail << ' ' << e.dec << '\n';
    }
    for (const auto &l : g.loops()) {
        os << "loop " << l.vertex << ' ' << l.dec << '\n';
    }
    return os.str();
}

// One-line rendering used inside combinations: [v w | v>w:0 v>w:0 | w:2].
inline std::string to_compact(const DecoratedGraph &g)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        os << (i ? " " : "") << g.vertices()[i];
    }
    os << " |";
    for (const auto &e : g.edges()) {
        os << ' ' << e.head << '>' << e.tail << ':' << e.dec;
    }
    os << " |";
    for (const auto &l : g.loops()) {
        os << ' ' << l.vertex << ':' << l.dec;
    }
    os << ']';
    return os.str();
}

inline nlohmann::json to_json(const DecoratedGraph &g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : g.edges()) {
        edges.push_back(nlohmann::json::array({e.head, e.tail, e.dec}));
    }
    nlohmann::json loops = nlohmann::json::array();
    for (const auto &l : g.loops()) {
        loops.push_back(nlohmann::json::array({l.vertex, l.dec}));
    }
    return {{"vertices", g.vertices()}, {"edges", edges}, {"loops", loops}};
}

inline DecoratedGraph graph_from_json(const nlohmann::json &j)
{
    if (!j.is_object()) {
        throw ParseError("graph JSON must be an object");
    }
    try {
        std::vector<Label> vertices = j.value("vertices", std::vector<Label>{});
        std::vector<Edge> edges;
        std::vector<Loop> loops;
        std::size_t idx = 0;
        for (const auto &e : j.value("edges", nlohmann::json::array())) {
            ++idx;
            if (!e.is_array() || e.size() != 3) {
                throw ParseError("edge " + std::to_string(idx) + " must be [head, tail, dec]");
            }
            Edge edge{e[0].get<Label>(), e[1].get<Label>(), e[2].get<int>()};
            if (edge.head == edge.tail) {
                throw ParseError("edge " + std::to_string(idx) + " has head equal to tail");
            }
            if (edge.dec < -1) {
                throw ParseError("edge " + std::to_string(idx) + " decoration below -1");
            }
            edges.push_back(edge);
        }
        idx = 0;
        for (const auto &l : j.value("loops", nlohmann::json::array())) {
            ++idx;
            if (!l.is_array() || l.size() != 2) {
                throw ParseError("loop " + std::to_string(idx) + " must be [vertex, dec]");
            }
            Loop loop{l[0].get<Label>(), l[1].get<int>()};
            if (loop.dec < 0) {
                throw ParseError("loop " + std::to_string(idx) + " decoration below 0");
            }
            loops.push_back(loop);
        }
        return DecoratedGraph::with_implicit_vertices(std::move(vertices), std::move(edges), std::move(loops));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what());
    }
}

/// Reads a graph file; JSON if the first non-blank character is '{'.
inline DecoratedGraph read_graph_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        return graph_from_json(j);
    }
    return graph_from_text(text);
}

inline nlohmann::json to_json(const GraphCombination &x)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[g, c] : x.terms()) {
        terms.push_back({{"coeff", c.get_str()}, {"graph", to_json(g)}});
    }
    return {{"terms", terms}};
}

inline GraphCombination combination_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("terms")) {
        throw ParseError("combination JSON must have a 'terms' array");
    }
    GraphCombination out;
    for (const auto &t : j.at("terms")) {
        try {
            out.add(graph_from_json(t.at("graph")), parse_rational(t.at("coeff").get<std::string>()));
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(std::string("malformed combination term: ") + e.what());
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what());
        }
    }
    return out;
}

inline std::string to_text(const GraphCombination &x)
{
    if (x.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[g, c] : x.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + c.get_str() + ")*" + to_compact(g);
    }
    return out;
}

inline std::string to_latex(const GraphCombination &x)
{
    if (x.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[g, c] : x.terms()) {
        os << (first ? "" : " + ") << "\\left(" << to_latex(RingElement(c)) << "\\right)\\,\\texttt{"
           << to_compact(g) << "}";
        first = false;
    }
    return os.str();
}

inline nlohmann::json to_json(const CollapseRecord &r, const DecoratedGraph &source)
{
    nlohmann::json subset = nlohmann::json::array();
    for (auto i : r.subset) {
        const auto &e = source.edges()[i];
        subset.push_back(nlohmann::json::array({e.head, e.tail, e.dec}));
    }
    nlohmann::json u = nlohmann::json::array();
    for (std::size_t i = 0; i < r.assignment.target_edges.size(); ++i) {
        const auto &e = source.edges()[r.assignment.target_edges[i]];
        u.push_back({{"edge", nlohmann::json::array({e.head, e.tail, e.dec})}, {"value", r.assignment.values[i]}});
    }
    return {{"kind", "collapse"},
            {"collapsed", r.collapsed},
            {"target", r.target},
            {"shift", r.shift},
            {"A", subset},
            {"u", u},
            {"coeff", r.coefficient.get_str()},
            {"quotient", r.quotient ? to_json(*r.quotient) : nlohmann::json(nullptr)}};
}

} // namespace ellgraph

#endif
