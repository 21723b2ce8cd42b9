#ifndef ELLGRAPH_ORACLE_HPP
#define ELLGRAPH_ORACLE_HPP

// Independent residue oracle: expands propagators as Laurent series in one
// variable and reads off residues directly, without the collapse combinatorics.

#include <ellgraph/graph.hpp>
#include <ellgraph/qmodring.hpp>
#include <ellgraph/series.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ellgraph
{

/// Sum of RingElement coefficients times products of propagator symbols.
/// A symbol is an edge (head, tail, dec) standing for d^dec P(z_head - z_tail).
class SymbolicSum
{
public:
    using Key = std::vector<Edge>; // sorted multiset of symbols

    SymbolicSum() = default;
    explicit SymbolicSum(const RingElement &c, Key key = {})
    {
        add(std::move(key), c);
    }

    void add(Key key, const RingElement &c)
    {
        if (c.is_zero()) {
            return;
        }
        std::sort(key.begin(), key.end());
        auto [it, inserted] = terms_.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] const std::map<Key, RingElement> &terms() const
    {
        return terms_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return terms_.empty();
    }

    SymbolicSum &operator+=(const SymbolicSum &o)
    {
        for (const auto &[k, c] : o.terms_) {
            add(k, c);
        }
        return *this;
    }
    SymbolicSum &operator*=(const Rational &s)
    {
        if (s == 0) {
            terms_.clear();
        }
        for (auto &[k, c] : terms_) {
            c *= s;
        }
        return *this;
    }
    friend SymbolicSum operator*(const SymbolicSum &a, const SymbolicSum &b)
    {
        SymbolicSum out;
        for (const auto &[ka, ca] : a.terms_) {
            for (const auto &[kb, cb] : b.terms_) {
                Key k = ka;
                k.insert(k.end(), kb.begin(), kb.end());
                out.add(std::move(k), ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const SymbolicSum &, const SymbolicSum &) = default;

private:
    std::map<Key, RingElement> terms_;
};

/// Laurent series of -Zhat (the decoration -1 propagator):
/// -1/z + sum_{k >= 0} W_{k-1}/k! z^k, plus one opaque zbar-linear term.
inline BiSeries<RingElement> series_Zhat(int truncation)
{
    if (truncation < 0) {
        throw std::invalid_argument("series_Zhat: truncation must be >= 0");
    }
    BiSeries<RingElement> s(truncation);
    s.add(-1, RingElement::constant(-1));
    for (int k = 0; k <= truncation; ++k) {
        s.add(k, loop_value(k - 1) * Rational(1 / Rational(factorial(k))));
    }
    // The zbar coefficient is -Y = pi / Im(tau), kept as the opaque unit -1.
    s.add_zbar(0, 1, RingElement::constant(-1));
    return s;
}

/// Laurent series of d^n Phat: (-1)^n (n+1)!/z^(n+2) + sum_k W_{n+k}/k! z^k.
inline BiSeries<RingElement> series_Phat_deriv(int n, int truncation)
{
    if (n < 0) {
        throw std::invalid_argument("series_Phat_deriv: n must be >= 0");
    }
    BiSeries<RingElement> s(truncation);
    Rational lead(factorial(n + 1));
    if (n % 2 != 0) {
        lead = -lead;
    }
    s.add(-(n + 2), RingElement(lead));
    for (int k = 0; k <= truncation; ++k) {
        s.add(k, loop_value(n + k) * Rational(1 / Rational(factorial(k))));
    }
    return s;
}

// Propagator series for decoration n >= -1 at argument z.
inline BiSeries<RingElement> series_propagator(int n, int truncation)
{
    return n == -1 ? series_Zhat(truncation) : series_Phat_deriv(n, truncation);
}

/// Taylor expansion in z of a propagator at a shifted argument.
///
/// `reattached` is the edge after v has been replaced by its collapse target;
/// its decoration is the base decoration n. The coefficient of z^u is the
/// symbol with decoration n + u, times 1/u! and (-1)^u when v was the tail.
/// A decoration -1 edge also carries a constant zbar-linear term.
inline BiSeries<SymbolicSum> series_shift_expand(const Edge &reattached, bool v_is_tail, int truncation)
{
    if (reattached.dec < -1) {
        throw std::invalid_argument("series_shift_expand: decoration below -1");
    }
    BiSeries<SymbolicSum> s(truncation);
    for (int u = 0; u <= truncation; ++u) {
        Rational c = 1 / Rational(factorial(u));
        if (v_is_tail && u % 2 != 0) {
            c = -c;
        }
        Edge sym = reattached;
        sym.dec += u;
        s.add(u, SymbolicSum(RingElement(c), {sym}));
    }
    if (reattached.dec == -1) {
        s.add_zbar(0, 1, SymbolicSum(RingElement::constant(v_is_tail ? 1 : -1)));
    }
    return s;
}

/// Res_{z_v = z_w} ((z_v - z_w)^k Psi_g dz_v) computed from series.
///
/// Edges between v and w become Laurent series in z = z_v - z_w; other edges at
/// v are Taylor-expanded around z_w; everything else is a constant symbol; loops
/// contribute their values. The result is comparable with residual_as_symbolic.
inline SymbolicSum oracle_residue_2vertex(const DecoratedGraph &g, const Label &v, const Label &w, int k)
{
    g.require_vertex(v);
    g.require_vertex(w);
    if (v == w) {
        throw GraphError("oracle_residue_2vertex: v and w must differ");
    }
    int singular = 0;
    bool any = false;
    for (const auto &e : g.edges()) {
        if ((e.head == v && e.tail == w) || (e.head == w && e.tail == v)) {
            singular += e.dec + 2;
            any = true;
        }
    }
    if (!any) {
        throw GraphError("oracle_residue_2vertex: no edge between v and w");
    }
    const int truncation = singular + 2;

    RingElement constant = RingElement::constant(1);
    for (const auto &l : g.loops()) {
        constant *= loop_value(l.dec);
    }
    SymbolicSum::Key fixed;
    BiSeries<SymbolicSum> product(truncation);
    product.add(0, SymbolicSum(constant));
    for (const auto &e : g.edges()) {
        const bool at_v = (e.head == v || e.tail == v);
        if (!at_v) {
            fixed.push_back(e);
            continue;
        }
        const Label &other = e.head == v ? e.tail : e.head;
        if (other == w) {
            auto s = series_propagator(e.dec, truncation);
            if (e.tail == v) {
                s = s.reflected();
            }
            BiSeries<SymbolicSum> lifted(s.truncation());
            for (const auto &[d, c] : s.holomorphic()) {
                lifted.add(d, SymbolicSum(c));
            }
            for (const auto &[key, c] : s.zbar_terms()) {
                lifted.add_zbar(key.first, key.second, SymbolicSum(c));
            }
            product = product * lifted;
        } else {
            const Edge reattached{e.head == v ? w : e.head, e.tail == v ? w : e.tail, e.dec};
            product = product * series_shift_expand(reattached, e.tail == v, truncation);
        }
    }
    product = product.shifted(k);
    if (product.truncation() < -1) {
        throw std::logic_error("oracle_residue_2vertex: truncation insufficient");
    }
    SymbolicSum res = product.residue();
    return res * SymbolicSum(RingElement::constant(1), fixed);
}

/// Maps a graph combination to the oracle's representation: edges become
/// symbols, loops are evaluated.
inline SymbolicSum residual_as_symbolic(const GraphCombination &x)
{
    SymbolicSum out;
    for (const auto &[g, c] : x.terms()) {
        RingElement value = RingElement::constant(1);
        for (const auto &l : g.loops()) {
            value *= loop_value(l.dec);
        }
        out.add(g.edges(), value * c);
    }
    return out;
}

/// W of a banana with all edges v -> w, as Res_{z=0}(prod d^n_i Phat * Zhat dz).
inline RingElement oracle_evaluate_banana(const std::vector<int> &decorations)
{
    if (decorations.empty()) {
        throw std::invalid_argument("oracle_evaluate_banana: need at least one edge");
    }
    int singular = 1;
    for (int d : decorations) {
        if (d < 0) {
            throw std::invalid_argument("oracle_evaluate_banana: decorations must be >= 0");
        }
        singular += d + 2;
    }
    const int truncation = singular + 2;
    // Zhat = -(decoration -1 propagator).
    BiSeries<RingElement> product = series_Zhat(truncation).negated();
    for (int d : decorations) {
        product = product * series_Phat_deriv(d, truncation);
    }
    if (product.truncation() < -1) {
        throw std::logic_error("oracle_evaluate_banana: truncation insufficient");
    }
    return product.residue();
}

} // namespace ellgraph

#endif
