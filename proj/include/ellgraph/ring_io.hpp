#ifndef ELLGRAPH_RING_IO_HPP
#define ELLGRAPH_RING_IO_HPP

#include <ellgraph/qmodring.hpp>

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellgraph
{

class ParseError : public std::runtime_error
{
public:
    explicit ParseError(const std::string &what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    [[nodiscard]] int line() const
    {
        return line_;
    }

private:
    int line_;
};

namespace detail
{

inline void append_factor(std::string &out, std::string_view name, int exp)
{
    if (exp == 0) {
        return;
    }
    out += '*';
    out += name;
    if (exp != 1) {
        out += '^';
        out += std::to_string(exp);
    }
}

inline std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

} // namespace detail

/// Canonical text, e.g. "(-1/9)*pi^4*E2h^2 + (1/9)*pi^4*E4". Zero prints as "0".
inline std::string to_text(const RingElement &a)
{
    if (a.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : a.terms()) {
        if (!first) {
            out += " + ";
        }
        first = false;
        out += '(';
        out += c.get_str();
        out += ')';
        detail::append_factor(out, "pi", m.pi);
        detail::append_factor(out, "E2h", m.e2);
        detail::append_factor(out, "E4", m.e4);
        detail::append_factor(out, "E6", m.e6);
    }
    return out;
}

/// Parses the canonical text form. Also tolerates bare factors without a
/// leading coefficient ("pi^2*E2h") and arbitrary whitespace.
inline RingElement ring_from_text(std::string_view text)
{
    const std::string s = detail::trim(text);
    if (s == "0") {
        return {};
    }
    if (s.empty()) {
        throw ParseError("empty ring element");
    }
    RingElement out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(" + ", pos);
        const std::string term = detail::trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (term.empty()) {
            throw ParseError("empty term in ring element");
        }
        Rational coeff = 1;
        Monomial mono;
        std::size_t tp = 0;
        if (term[0] == '(') {
            const std::size_t close = term.find(')');
            if (close == std::string::npos) {
                throw ParseError("unbalanced parenthesis in '" + term + "'");
            }
            try {
                coeff = parse_rational(detail::trim(term.substr(1, close - 1)));
            } catch (const std::invalid_argument &e) {
                throw ParseError(e.what());
            }
            tp = close + 1;
            if (tp < term.size()) {
                if (term[tp] != '*') {
                    throw ParseError("expected '*' after coefficient in '" + term + "'");
                }
                ++tp;
            }
        }
        while (tp < term.size()) {
            std::size_t star = term.find('*', tp);
            const std::string factor = detail::trim(term.substr(tp, star == std::string::npos ? std::string::npos : star - tp));
            tp = star == std::string::npos ? term.size() : star + 1;
            std::string name = factor;
            int exp = 1;
            if (auto caret = factor.find('^'); caret != std::string::npos) {
                name = factor.substr(0, caret);
                const std::string e = factor.substr(caret + 1);
                if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos) {
                    throw ParseError("bad exponent in factor '" + factor + "'");
                }
                exp = std::stoi(e);
            }
            if (name == "pi") {
                mono.pi += exp;
            } else if (name == "E2h") {
                mono.e2 += exp;
            } else if (name == "E4") {
                mono.e4 += exp;
            } else if (name == "E6") {
                mono.e6 += exp;
            } else {
                throw ParseError("unknown factor '" + name + "'");
            }
        }
        out.add_term(mono, coeff);
        if (next == std::string::npos) {
            break;
        }
        pos = next + 3;
    }
    return out;
}

inline nlohmann::json to_json(const RingElement &a)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : a.terms()) {
        terms.push_back({{"coeff", c.get_str()}, {"pi", m.pi}, {"E2h", m.e2}, {"E4", m.e4}, {"E6", m.e6}});
    }
    return {{"terms", terms}};
}

inline RingElement ring_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
        throw ParseError("ring JSON must be an object with a 'terms' array");
    }
    RingElement out;
    for (const auto &t : j["terms"]) {
        try {
            const auto coeff = parse_rational(t.at("coeff").get<std::string>());
            const Monomial m{t.value("pi", 0), t.value("E2h", 0), t.value("E4", 0), t.value("E6", 0)};
            if (m.pi < 0 || m.e2 < 0 || m.e4 < 0 || m.e6 < 0) {
                throw ParseError("negative exponent in ring JSON");
            }
            out.add_term(m, coeff);
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(std::string("malformed ring term: ") + e.what());
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what());
        }
    }
    return out;
}

/// LaTeX rendering using \widehat{E}_2, E_4, E_6 and \pi.
inline std::string to_latex(const RingElement &a)
{
    if (a.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : a.terms()) {
        Rational mag = abs(c);
        if (c < 0) {
            os << (first ? "-" : " - ");
        } else if (!first) {
            os << " + ";
        }
        first = false;
        const bool bare = (m.pi == 0 && m.e2 == 0 && m.e4 == 0 && m.e6 == 0);
        if (mag.get_den() != 1) {
            os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
        } else if (mag != 1 || bare) {
            os << mag.get_num().get_str();
        }
        auto factor = [&os](const char *sym, int e) {
            if (e == 0) {
                return;
            }
            os << sym;
            if (e != 1) {
                os << "^{" << e << "}";
            }
        };
        factor("\\pi", m.pi);
        factor("\\widehat{E}_2", m.e2);
        factor("E_4", m.e4);
        factor("E_6", m.e6);
    }
    return os.str();
}

} // namespace ellgraph

#endif
