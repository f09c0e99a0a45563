#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsv/error.hpp"
#include "qsv/ring.hpp"

namespace qsv {

/// Truncated power series sum_{n<=N} c_n q^n over a coefficient ring.
/// All statements about a Series hold modulo q^{N+1}, where N = order().
template <class Ring>
class Series {
public:
    using Element = typename Ring::Element;

    Series(Ring ring, std::size_t order) : ring_(std::move(ring)), coeffs_(order + 1, ring_.zero()) {}

    static Series one(Ring ring, std::size_t order)
    {
        Series s(std::move(ring), order);
        s.coeffs_[0] = s.ring_.one();
        return s;
    }

    /// c * q^exponent; zero if exponent > order.
    static Series monomial(Ring ring, std::size_t order, Element c, std::size_t exponent)
    {
        Series s(std::move(ring), order);
        if (exponent <= order) s.coeffs_[exponent] = std::move(c);
        return s;
    }

    /// Builds a series whose order is coeffs.size()-1.
    static Series from_coeffs(Ring ring, std::vector<Element> coeffs)
    {
        if (coeffs.empty()) throw ContractError("a series needs at least one coefficient");
        Series s(std::move(ring), 0);
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Ring& ring() const noexcept { return ring_; }
    std::span<const Element> coeffs() const noexcept { return coeffs_; }
    const Element& operator[](std::size_t n) const { return coeffs_.at(n); }
    Element& at(std::size_t n) { return coeffs_.at(n); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Element& c) { return ring_.is_zero(c); });
    }

    std::optional<std::size_t> valuation() const
    {
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            if (!ring_.is_zero(coeffs_[n])) return n;
        return std::nullopt;
    }

    Series truncated(std::size_t order) const
    {
        if (order > this->order()) throw ContractError("cannot extend a truncated series to a higher order");
        Series r(ring_, order);
        std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order) + 1, r.coeffs_.begin());
        return r;
    }

    Series operator-() const
    {
        Series r = *this;
        for (auto& c : r.coeffs_) c = ring_.neg(c);
        return r;
    }

    Series& operator+=(const Series& b)
    {
        check_order(b);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) ring_.add_to(coeffs_[n], b.coeffs_[n]);
        return *this;
    }
    Series& operator-=(const Series& b)
    {
        check_order(b);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) ring_.sub_from(coeffs_[n], b.coeffs_[n]);
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    /// Truncated convolution. Iterates over the nonzero terms of the sparser operand.
    friend Series operator*(const Series& a, const Series& b)
    {
        a.check_order(b);
        const std::size_t order = a.order();
        const Series* sparse = &a;
        const Series* dense = &b;
        if (b.nonzero_count() < a.nonzero_count()) std::swap(sparse, dense);
        Series r(a.ring_, order);
        for (std::size_t i = 0; i <= order; ++i) {
            const Element& x = sparse->coeffs_[i];
            if (a.ring_.is_zero(x)) continue;
            for (std::size_t j = 0; i + j <= order; ++j) {
                const Element& y = dense->coeffs_[j];
                if (!a.ring_.is_zero(y)) a.ring_.add_mul(r.coeffs_[i + j], x, y);
            }
        }
        return r;
    }
    Series& operator*=(const Series& b) { return *this = *this * b; }

    /// Multiplicative inverse; the constant term must be a unit of the ring.
    Series inverse() const
    {
        if (!ring_.is_unit(coeffs_[0])) throw NotInvertibleError();
        const Element inv0 = ring_.inverse(coeffs_[0]);
        Series r(ring_, order());
        r.coeffs_[0] = inv0;
        for (std::size_t n = 1; n <= order(); ++n) {
            Element acc = ring_.zero();
            for (std::size_t k = 1; k <= n; ++k)
                if (!ring_.is_zero(coeffs_[k])) ring_.add_mul(acc, coeffs_[k], r.coeffs_[n - k]);
            r.coeffs_[n] = ring_.neg(ring_.mul(acc, inv0));
        }
        return r;
    }

    /// q -> sign * q^m, keeping the order. Source coefficients beyond order/m are dropped.
    Series substituted(int sign, std::size_t m) const { return substituted(sign, m, order()); }

    /// q -> sign * q^m into a series of the given order (which may exceed this one's
    /// as long as m * this->order() >= order, i.e. no information is invented).
    Series substituted(int sign, std::size_t m, std::size_t new_order) const
    {
        if (m == 0) throw ContractError("substitution q -> q^0 is not allowed");
        if (sign != 1 && sign != -1) throw ContractError("substitution sign must be +1 or -1");
        if (new_order / m > order()) throw ContractError("substitution needs source coefficients beyond the truncation order");
        Series r(ring_, new_order);
        for (std::size_t k = 0; k * m <= new_order; ++k)
            r.coeffs_[k * m] = (sign < 0 && (k & 1U)) ? ring_.neg(coeffs_[k]) : coeffs_[k];
        return r;
    }

    /// Multiplies by q^e, keeping the order.
    Series shifted(std::size_t e) const
    {
        Series r(ring_, order());
        for (std::size_t n = e; n <= order(); ++n) r.coeffs_[n] = coeffs_[n - e];
        return r;
    }

    Series scaled(const Element& c) const
    {
        Series r = *this;
        for (auto& x : r.coeffs_) ring_.scale(x, c);
        return r;
    }

    /// In place: *this *= (1 - c q^e).
    void mul_binomial(const Element& c, std::size_t e)
    {
        if (ring_.is_zero(c)) return;
        if (e == 0) {
            const Element f = ring_.sub(ring_.one(), c);
            for (auto& x : coeffs_) ring_.scale(x, f);
            return;
        }
        for (std::size_t n = order(); n >= e; --n) {
            ring_.sub_mul(coeffs_[n], c, coeffs_[n - e]);
            if (n == e) break;
        }
    }

    /// In place: *this /= (1 - c q^e). For e = 0, 1 - c must be a unit.
    void div_binomial(const Element& c, std::size_t e)
    {
        if (ring_.is_zero(c)) return;
        if (e == 0) {
            const Element f = ring_.sub(ring_.one(), c);
            if (!ring_.is_unit(f)) throw NotInvertibleError();
            const Element inv = ring_.inverse(f);
            for (auto& x : coeffs_) ring_.scale(x, inv);
            return;
        }
        for (std::size_t n = e; n <= order(); ++n) ring_.add_mul(coeffs_[n], c, coeffs_[n - e]);
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        if (a.order() != b.order()) return false;
        for (std::size_t n = 0; n <= a.order(); ++n)
            if (!a.ring_.equal(a.coeffs_[n], b.coeffs_[n])) return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            if (n) out += ",";
            out += ring_.to_string(coeffs_[n]);
        }
        return out + "] + O(q^" + std::to_string(order() + 1) + ")";
    }

private:
    void check_order(const Series& b) const
    {
        if (order() != b.order())
            throw ContractError("truncation order mismatch: " + std::to_string(order()) + " vs " +
                                std::to_string(b.order()));
    }
    std::size_t nonzero_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(coeffs_.begin(), coeffs_.end(), [&](const Element& c) { return !ring_.is_zero(c); }));
    }

    Ring ring_;
    std::vector<Element> coeffs_;
};

using IntSeries = Series<IntegerRing>;
using TSeries = Series<TPolyRing>;

/// Lowest exponent where a and b differ, if any. Orders must agree.
template <class Ring>
std::optional<std::size_t> first_mismatch(const Series<Ring>& a, const Series<Ring>& b)
{
    if (a.order() != b.order()) throw ContractError("truncation order mismatch in comparison");
    for (std::size_t n = 0; n <= a.order(); ++n)
        if (!a.ring().equal(a[n], b[n])) return n;
    return std::nullopt;
}

/// Integer series from a list of small coefficients; order = size-1.
inline IntSeries int_series(std::initializer_list<long> values)
{
    std::vector<Integer> c;
    for (long v : values) c.emplace_back(v);
    return IntSeries::from_coeffs(IntegerRing{}, std::move(c));
}

}  // namespace qsv

namespace qsv {

template <class Ring>
Series<Ring> add(const Series<Ring>& a, const Series<Ring>& b)
{
    return a + b;
}

template <class Ring>
Series<Ring> mul(const Series<Ring>& a, const Series<Ring>& b)
{
    return a * b;
}

template <class Ring>
Series<Ring> invert(const Series<Ring>& a)
{
    return a.inverse();
}

}  // namespace qsv
