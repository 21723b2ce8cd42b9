#ifndef ELLGRAPH_QMODRING_HPP
#define ELLGRAPH_QMODRING_HPP

#include <ellgraph/rational.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellgraph
{

// Exponent vector of pi^pi * E2h^e2 * E4^e4 * E6^e6.
struct Monomial {
    int pi = 0;
    int e2 = 0;
    int e4 = 0;
    int e6 = 0;

    [[nodiscard]] int weight() const
    {
        return 2 * e2 + 4 * e4 + 6 * e6;
    }

    friend auto operator<=>(const Monomial &, const Monomial &) = default;

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        return {a.pi + b.pi, a.e2 + b.e2, a.e4 + b.e4, a.e6 + b.e6};
    }
};

/// Element of Q[pi][E2h, E4, E6], where E2h is the modular completion of E2.
///
/// Terms are kept in descending lexicographic order of (pi, e2, e4, e6); zero
/// coefficients are never stored, so structural equality is ring equality.
class RingElement
{
public:
    using Terms = std::map<Monomial, Rational, std::greater<>>;

    RingElement() = default;

    explicit RingElement(const Rational &c)
    {
        add_term(Monomial{}, c);
    }

    static RingElement monomial(const Rational &c, const Monomial &m)
    {
        RingElement r;
        r.add_term(m, c);
        return r;
    }

    static RingElement constant(long num, long den = 1)
    {
        return RingElement(make_rational(num, den));
    }

    // pi^p * E2h^a * E4^b * E6^c with coefficient q.
    static RingElement term(const Rational &q, int p, int a, int b, int c)
    {
        if (p < 0 || a < 0 || b < 0 || c < 0) {
            throw std::invalid_argument("RingElement::term: negative exponent");
        }
        return monomial(q, Monomial{p, a, b, c});
    }

    [[nodiscard]] const Terms &terms() const
    {
        return terms_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return terms_.empty();
    }
    [[nodiscard]] std::size_t size() const
    {
        return terms_.size();
    }

    // Adds c*m in place, dropping the term if it cancels.
    void add_term(const Monomial &m, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (inserted) {
            it->second.canonicalize(); // callers may hand in e.g. 2/4
        } else {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    RingElement &operator+=(const RingElement &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    RingElement &operator-=(const RingElement &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    RingElement &operator*=(const Rational &s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend RingElement operator+(RingElement a, const RingElement &b)
    {
        a += b;
        return a;
    }
    friend RingElement operator-(RingElement a, const RingElement &b)
    {
        a -= b;
        return a;
    }
    friend RingElement operator-(RingElement a)
    {
        a *= Rational(-1);
        return a;
    }
    friend RingElement operator*(RingElement a, const Rational &s)
    {
        a *= s;
        return a;
    }
    friend RingElement operator*(const Rational &s, RingElement a)
    {
        a *= s;
        return a;
    }
    friend RingElement operator*(const RingElement &a, const RingElement &b)
    {
        RingElement out;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }
    RingElement &operator*=(const RingElement &o)
    {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const RingElement &, const RingElement &) = default;

    [[nodiscard]] RingElement pow(unsigned n) const
    {
        RingElement out = RingElement::constant(1);
        for (unsigned i = 0; i < n; ++i) {
            out *= *this;
        }
        return out;
    }

    // True when every term has weight w and pi exponent w. Zero is homogeneous
    // of every weight; in that case *weight is left untouched.
    [[nodiscard]] bool is_weight_matched(int *weight = nullptr) const
    {
        if (terms_.empty()) {
            return true;
        }
        const int w = terms_.begin()->first.weight();
        for (const auto &[m, c] : terms_) {
            if (m.weight() != w || m.pi != w) {
                return false;
            }
        }
        if (weight != nullptr) {
            *weight = w;
        }
        return true;
    }

private:
    Terms terms_;
};

/// The derivation d/dY, where E2h = E2 + (3/pi^2) Y.
///
/// Each term c pi^p E2h^i ... maps to 3 i c pi^(p-2) E2h^(i-1) ...
inline RingElement partial_Y(const RingElement &a)
{
    RingElement out;
    for (const auto &[m, c] : a.terms()) {
        if (m.e2 == 0) {
            continue;
        }
        if (m.pi < 2) {
            throw std::domain_error("partial_Y: term with E2h has pi exponent below 2");
        }
        out.add_term(Monomial{m.pi - 2, m.e2 - 1, m.e4, m.e6}, c * m.e2 * 3);
    }
    return out;
}

namespace detail
{

class BernoulliTable
{
public:
    Rational get(std::size_t n)
    {
        std::lock_guard lock(mutex_);
        while (values_.size() <= n) {
            const std::size_t m = values_.size();
            if (m == 0) {
                values_.emplace_back(1);
                continue;
            }
            // sum_{k=0}^{m} C(m+1, k) B_k = 0
            Rational acc = 0;
            for (std::size_t k = 0; k < m; ++k) {
                acc += Rational(binomial(static_cast<long>(m + 1), static_cast<long>(k))) * values_[k];
            }
            Rational b = -acc / Rational(static_cast<long>(m + 1));
            b.canonicalize();
            values_.push_back(b);
        }
        return values_[n];
    }

private:
    std::mutex mutex_;
    std::vector<Rational> values_;
};

inline BernoulliTable &bernoulli_table()
{
    static BernoulliTable table;
    return table;
}

} // namespace detail

/// Bernoulli number with B_1 = -1/2.
inline Rational bernoulli(std::size_t n)
{
    return detail::bernoulli_table().get(n);
}

/// zeta(s) for even s >= 2, returned as q * pi^s.
inline RingElement zeta_even(int s)
{
    if (s < 2 || s % 2 != 0) {
        throw std::domain_error("zeta_even: argument must be even and >= 2");
    }
    const int n = s / 2;
    Rational q = bernoulli(static_cast<std::size_t>(s));
    q *= Rational(Integer(1) << static_cast<unsigned>(s));
    q /= Rational(2 * factorial(s));
    if (n % 2 == 0) {
        q = -q;
    }
    q.canonicalize();
    return RingElement::term(q, s, 0, 0, 0);
}

/// Divisor power sum sigma_p(n).
inline Integer divisor_sigma(unsigned p, unsigned long n)
{
    Integer acc = 0;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, p);
        acc += t;
        const unsigned long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, p);
            acc += t;
        }
    }
    return acc;
}

/// First n_terms coefficients of E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
inline std::vector<Rational> q_expansion(int k, std::size_t n_terms)
{
    if (k < 2 || k % 2 != 0) {
        throw std::domain_error("q_expansion: weight must be even and >= 2");
    }
    if (n_terms == 0) {
        throw std::domain_error("q_expansion: need at least one coefficient");
    }
    const Rational scale = -Rational(2 * k) / bernoulli(static_cast<std::size_t>(k));
    std::vector<Rational> out;
    out.reserve(n_terms);
    out.emplace_back(1);
    for (std::size_t n = 1; n < n_terms; ++n) {
        Rational c = scale * Rational(divisor_sigma(static_cast<unsigned>(k - 1), n));
        c.canonicalize();
        out.push_back(c);
    }
    return out;
}

namespace detail
{

inline std::vector<Rational> truncated_product(const std::vector<Rational> &a, const std::vector<Rational> &b)
{
    std::vector<Rational> out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Monomials E4^a E6^b of weight k, ordered by descending a.
inline std::vector<std::pair<int, int>> modular_basis(int k)
{
    std::vector<std::pair<int, int>> basis;
    for (int a = k / 4; a >= 0; --a) {
        const int rest = k - 4 * a;
        if (rest % 6 == 0) {
            basis.emplace_back(a, rest / 6);
        }
    }
    return basis;
}

inline std::vector<Rational> basis_q_expansion(int a, int b, std::size_t n)
{
    std::vector<Rational> out(n, Rational(0));
    out[0] = 1;
    const auto e4 = q_expansion(4, n);
    const auto e6 = q_expansion(6, n);
    for (int i = 0; i < a; ++i) {
        out = truncated_product(out, e4);
    }
    for (int i = 0; i < b; ++i) {
        out = truncated_product(out, e6);
    }
    return out;
}

} // namespace detail

/// Writes E_k (k even, >= 4) in the E4/E6 basis by matching q-expansions.
///
/// The linear system uses dim + 1 coefficients; the extra row must be consistent.
inline RingElement reduce_Ek(int k)
{
    if (k < 4 || k % 2 != 0) {
        throw std::domain_error("reduce_Ek: weight must be even and >= 4");
    }
    const auto basis = detail::modular_basis(k);
    const std::size_t d = basis.size();
    const std::size_t rows = d + 1;
    const auto target = q_expansion(k, rows);

    // Augmented matrix: rows = q-coefficients, columns = basis monomials.
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(d + 1));
    for (std::size_t j = 0; j < d; ++j) {
        const auto col = detail::basis_q_expansion(basis[j].first, basis[j].second, rows);
        for (std::size_t i = 0; i < rows; ++i) {
            m[i][j] = col[i];
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        m[i][d] = target[i];
    }

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t p = pivot_row;
        while (p < rows && m[p][col] == 0) {
            ++p;
        }
        if (p == rows) {
            throw std::logic_error("reduce_Ek: singular q-expansion system");
        }
        std::swap(m[p], m[pivot_row]);
        const Rational inv = 1 / m[pivot_row][col];
        for (auto &x : m[pivot_row]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || m[i][col] == 0) {
                continue;
            }
            const Rational f = m[i][col];
            for (std::size_t j = col; j <= d; ++j) {
                m[i][j] -= f * m[pivot_row][j];
            }
        }
        ++pivot_row;
    }
    for (std::size_t i = pivot_row; i < rows; ++i) {
        if (m[i][d] != 0) {
            throw std::logic_error("reduce_Ek: over-determined q-expansion check failed");
        }
    }

    RingElement out;
    for (std::size_t j = 0; j < d; ++j) {
        Rational c = m[j][d];
        c.canonicalize();
        out.add_term(Monomial{0, 0, basis[j].first, basis[j].second}, c);
    }
    return out;
}

/// Lattice sum G_k = 2 zeta(k) E_k, with E_k already reduced to E4/E6.
inline RingElement eisenstein_G(int k)
{
    if (k < 4 || k % 2 != 0) {
        throw std::domain_error("eisenstein_G: weight must be even and >= 4");
    }
    return zeta_even(k) * reduce_Ek(k) * Rational(2);
}

namespace detail
{

class LoopValueCache
{
public:
    RingElement get(int k)
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(k);
        if (it != cache_.end()) {
            return it->second;
        }
        RingElement value = compute(k);
        cache_.emplace(k, value);
        return value;
    }

private:
    static RingElement compute(int k)
    {
        if (k == -1 || k % 2 != 0) {
            return {};
        }
        if (k == 0) {
            return RingElement::term(make_rational(1, 3), 2, 1, 0, 0);
        }
        return eisenstein_G(k + 2) * Rational(factorial(k + 1));
    }

    std::mutex mutex_;
    std::map<int, RingElement> cache_;
};

inline LoopValueCache &loop_value_cache()
{
    static LoopValueCache cache;
    return cache;
}

} // namespace detail

/// Regularized self-contraction W_k of a decoration-k propagator.
///
/// W_{-1} = 0, W_0 = (pi^2/3) E2h, W_k = 0 for odd k, W_k = (k+1)! G_{k+2} otherwise.
inline RingElement loop_value(int k)
{
    if (k < -1) {
        throw std::domain_error("loop_value: decoration below -1");
    }
    return detail::loop_value_cache().get(k);
}

} // namespace ellgraph

#endif
