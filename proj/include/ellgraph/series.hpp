#ifndef ELLGRAPH_SERIES_HPP
#define ELLGRAPH_SERIES_HPP

#include <ellgraph/rational.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace ellgraph
{

/// Truncated Laurent series in z with extra terms z^a zbar^b (b >= 1).
///
/// Coefficients of z^d are exact for every d <= truncation(). The zbar terms
/// multiply an opaque constant per power of zbar; they are tracked only so that
/// residue() can discard them. Coeff must provide +=, * and is_zero(), and
/// scaling by Rational.
template <typename Coeff>
class BiSeries
{
public:
    using ZbarKey = std::pair<int, int>; // (z degree, zbar degree)

    explicit BiSeries(int truncation) : truncation_(truncation)
    {
    }

    [[nodiscard]] int truncation() const
    {
        return truncation_;
    }
    [[nodiscard]] const std::map<int, Coeff> &holomorphic() const
    {
        return holo_;
    }
    [[nodiscard]] const std::map<ZbarKey, Coeff> &zbar_terms() const
    {
        return zbar_;
    }

    // Adds c z^deg; degrees above the truncation are dropped.
    void add(int deg, const Coeff &c)
    {
        if (deg > truncation_ || c.is_zero()) {
            return;
        }
        accumulate(holo_, deg, c);
    }

    void add_zbar(int zdeg, int zbar_deg, const Coeff &c)
    {
        if (zbar_deg < 1) {
            throw std::invalid_argument("BiSeries::add_zbar: zbar degree must be >= 1");
        }
        if (zdeg > truncation_ || c.is_zero()) {
            return;
        }
        accumulate(zbar_, ZbarKey{zdeg, zbar_deg}, c);
    }

    [[nodiscard]] Coeff coefficient(int deg) const
    {
        if (deg > truncation_) {
            throw std::out_of_range("BiSeries::coefficient: degree above truncation");
        }
        auto it = holo_.find(deg);
        return it == holo_.end() ? Coeff{} : it->second;
    }

    // Lowest degree that may carry a nonzero coefficient.
    [[nodiscard]] int valuation() const
    {
        int v = truncation_ + 1;
        if (!holo_.empty()) {
            v = std::min(v, holo_.begin()->first);
        }
        for (const auto &[k, c] : zbar_) {
            v = std::min(v, k.first);
        }
        return v;
    }

    /// Coefficient of z^-1 dz. Every zbar term has zero residue.
    [[nodiscard]] Coeff residue() const
    {
        return coefficient(-1);
    }

    [[nodiscard]] BiSeries shifted(int k) const
    {
        BiSeries out(truncation_ + k);
        for (const auto &[d, c] : holo_) {
            out.holo_.emplace(d + k, c);
        }
        for (const auto &[key, c] : zbar_) {
            out.zbar_.emplace(ZbarKey{key.first + k, key.second}, c);
        }
        return out;
    }

    [[nodiscard]] BiSeries derivative() const
    {
        BiSeries out(truncation_ - 1);
        for (const auto &[d, c] : holo_) {
            if (d != 0) {
                out.add(d - 1, scaled(c, Rational(d)));
            }
        }
        for (const auto &[key, c] : zbar_) {
            if (key.first != 0) {
                out.add_zbar(key.first - 1, key.second, scaled(c, Rational(key.first)));
            }
        }
        return out;
    }

    // The series of f(-z).
    [[nodiscard]] BiSeries reflected() const
    {
        BiSeries out(truncation_);
        for (const auto &[d, c] : holo_) {
            out.add(d, (d % 2 == 0) ? c : scaled(c, Rational(-1)));
        }
        for (const auto &[key, c] : zbar_) {
            out.add_zbar(key.first, key.second, ((key.first + key.second) % 2 == 0) ? c : scaled(c, Rational(-1)));
        }
        return out;
    }

    [[nodiscard]] BiSeries negated() const
    {
        BiSeries out(truncation_);
        for (const auto &[d, c] : holo_) {
            out.add(d, scaled(c, Rational(-1)));
        }
        for (const auto &[key, c] : zbar_) {
            out.add_zbar(key.first, key.second, scaled(c, Rational(-1)));
        }
        return out;
    }

    friend BiSeries operator+(const BiSeries &a, const BiSeries &b)
    {
        BiSeries out(std::min(a.truncation_, b.truncation_));
        for (const auto *s : {&a, &b}) {
            for (const auto &[d, c] : s->holo_) {
                out.add(d, c);
            }
            for (const auto &[key, c] : s->zbar_) {
                out.add_zbar(key.first, key.second, c);
            }
        }
        return out;
    }

    friend BiSeries operator*(const BiSeries &a, const BiSeries &b)
    {
        const int t = std::min(a.truncation_ + b.valuation(), b.truncation_ + a.valuation());
        BiSeries out(t);
        for (const auto &[da, ca] : a.holo_) {
            for (const auto &[db, cb] : b.holo_) {
                out.add(da + db, ca * cb);
            }
            for (const auto &[kb, cb] : b.zbar_) {
                out.add_zbar(da + kb.first, kb.second, ca * cb);
            }
        }
        for (const auto &[ka, ca] : a.zbar_) {
            for (const auto &[db, cb] : b.holo_) {
                out.add_zbar(ka.first + db, ka.second, ca * cb);
            }
            for (const auto &[kb, cb] : b.zbar_) {
                out.add_zbar(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return out;
    }

    // Equality of the coefficients both series know.
    [[nodiscard]] bool agrees_with(const BiSeries &o) const
    {
        const int t = std::min(truncation_, o.truncation_);
        auto restrict = [t](const BiSeries &s) {
            BiSeries r(t);
            for (const auto &[d, c] : s.holo_) {
                r.add(d, c);
            }
            for (const auto &[k, c] : s.zbar_) {
                r.add_zbar(k.first, k.second, c);
            }
            return r;
        };
        const BiSeries x = restrict(*this);
        const BiSeries y = restrict(o);
        return x.holo_ == y.holo_ && x.zbar_ == y.zbar_;
    }

private:
    static Coeff scaled(Coeff c, const Rational &s)
    {
        c *= s;
        return c;
    }

    template <typename Map, typename Key>
    static void accumulate(Map &m, const Key &key, const Coeff &c)
    {
        auto [it, inserted] = m.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m.erase(it);
            }
        }
    }

    int truncation_;
    std::map<int, Coeff> holo_;
    std::map<ZbarKey, Coeff> zbar_;
};

} // namespace ellgraph

#endif
