#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsv/error.hpp"
#include "qsv/series.hpp"

namespace qsv {

/// Laurent polynomial in z whose coefficients are truncated q-series of a common order.
/// Coefficients are stored for z-exponents in [lo, hi]. Outside the window a side is
/// either certified zero (modulo q^{N+1}) or unknown.
template <class Ring>
class ZSeries {
public:
    using S = Series<Ring>;

    ZSeries(Ring ring, std::size_t order, long lo, long hi, bool low_exact = true, bool high_exact = true)
        : ring_(std::move(ring)), order_(order), lo_(lo), hi_(hi), low_exact_(low_exact), high_exact_(high_exact)
    {
        if (hi < lo) throw ContractError("empty z-window");
        c_.assign(static_cast<std::size_t>(hi - lo + 1), S(ring_, order));
    }

    static ZSeries constant(const S& s)
    {
        ZSeries z(s.ring(), s.order(), 0, 0);
        z.c_[0] = s;
        return z;
    }

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    bool low_exact() const { return low_exact_; }
    bool high_exact() const { return high_exact_; }
    std::size_t order() const { return order_; }
    const Ring& ring() const { return ring_; }

    bool known(long w) const
    {
        if (w < lo_) return low_exact_;
        if (w > hi_) return high_exact_;
        return true;
    }
    bool in_window(long w) const { return w >= lo_ && w <= hi_; }

    S& at(long w)
    {
        if (!in_window(w)) throw ContractError("z-exponent outside window");
        return c_[static_cast<std::size_t>(w - lo_)];
    }
    const S& at(long w) const
    {
        if (!in_window(w)) throw ContractError("z-exponent outside window");
        return c_[static_cast<std::size_t>(w - lo_)];
    }

    /// Coefficient of z^w; zero when certified, WindowError when unknown.
    S coeff(long w) const
    {
        if (in_window(w)) return at(w);
        if (known(w)) return S(ring_, order_);
        throw WindowError("coefficient of z^" + std::to_string(w) + " lies outside the certified window [" +
                          std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }

    /// Multiplies by z^dz.
    ZSeries shifted(long dz) const
    {
        ZSeries r = *this;
        r.lo_ += dz;
        r.hi_ += dz;
        return r;
    }

    /// Multiplies every coefficient by a q-series.
    ZSeries scaled(const S& f) const
    {
        ZSeries r = *this;
        for (auto& x : r.c_)
            if (!x.is_zero()) x *= f;
        return r;
    }

    ZSeries operator-() const
    {
        ZSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend ZSeries combine(const ZSeries& a, const ZSeries& b, int sign)
    {
        a.check_order(b);
        long lo = std::min(a.lo_, b.lo_);
        long hi = std::max(a.hi_, b.hi_);
        if (!a.low_exact_) lo = std::max(lo, a.lo_);
        if (!b.low_exact_) lo = std::max(lo, b.lo_);
        if (!a.high_exact_) hi = std::min(hi, a.hi_);
        if (!b.high_exact_) hi = std::min(hi, b.hi_);
        if (hi < lo) throw WindowError("sum of Laurent series has no common certified window");
        ZSeries r(a.ring_, a.order_, lo, hi, a.low_exact_ && b.low_exact_, a.high_exact_ && b.high_exact_);
        for (long w = lo; w <= hi; ++w) {
            S x = a.coeff(w);
            if (sign > 0) x += b.coeff(w);
            else x -= b.coeff(w);
            r.at(w) = std::move(x);
        }
        return r;
    }
    friend ZSeries operator+(const ZSeries& a, const ZSeries& b) { return combine(a, b, 1); }
    friend ZSeries operator-(const ZSeries& a, const ZSeries& b) { return combine(a, b, -1); }

    void check_order(const ZSeries& b) const
    {
        if (order_ != b.order_) throw ContractError("q-order mismatch between Laurent series");
    }

private:
    Ring ring_;
    std::size_t order_;
    long lo_;
    long hi_;
    bool low_exact_;
    bool high_exact_;
    std::vector<S> c_;
};

/// Cauchy product in z. Each output coefficient is kept only where it is exact;
/// `only` restricts the computation to a sub-window.
template <class Ring>
ZSeries<Ring> zmul(const ZSeries<Ring>& a, const ZSeries<Ring>& b,
                   std::optional<std::pair<long, long>> only = std::nullopt)
{
    a.check_order(b);
    constexpr long inf = std::numeric_limits<long>::max() / 4;
    long lo = a.lo() + b.lo();
    long hi = a.hi() + b.hi();
    // Unknown tails of one factor meet the other factor's support.
    if (!a.low_exact()) lo = std::max(lo, b.high_exact() ? a.lo() + b.hi() : inf);
    if (!b.low_exact()) lo = std::max(lo, a.high_exact() ? b.lo() + a.hi() : inf);
    if (!a.high_exact()) hi = std::min(hi, b.low_exact() ? a.hi() + b.lo() : -inf);
    if (!b.high_exact()) hi = std::min(hi, a.low_exact() ? b.hi() + a.lo() : -inf);
    bool low_exact = a.low_exact() && b.low_exact();
    bool high_exact = a.high_exact() && b.high_exact();
    if (only) {
        if (only->first > lo) {
            lo = only->first;
            low_exact = false;
        }
        if (only->second < hi) {
            hi = only->second;
            high_exact = false;
        }
    }
    if (hi < lo) throw WindowError("product of Laurent series has an empty certified window");
    ZSeries<Ring> r(a.ring(), a.order(), lo, hi, low_exact, high_exact);
    for (long w = lo; w <= hi; ++w) {
        auto& dst = r.at(w);
        const long i0 = std::max(a.lo(), w - b.hi());
        const long i1 = std::min(a.hi(), w - b.lo());
        for (long i = i0; i <= i1; ++i) {
            const auto& x = a.at(i);
            const auto& y = b.at(w - i);
            if (x.is_zero() || y.is_zero()) continue;
            dst += x * y;
        }
    }
    return r;
}

template <class Ring>
Series<Ring> constant_term(const ZSeries<Ring>& a)
{
    return a.coeff(0);
}

/// ±q^exp times a ring element (which may carry t).
template <class Ring>
struct ZMono {
    typename Ring::Element coef;
    long exp = 0;
};

namespace detail {

// r * (alpha q^x - q^y), x, y >= 0, truncated to `order`.
template <class Ring>
Series<Ring> times_difference(const Series<Ring>& r, const typename Ring::Element& alpha, long x, long y,
                              std::size_t order)
{
    const Ring& ring = r.ring();
    Series<Ring> out(ring, order);
    for (std::size_t n = 0; n <= order; ++n) {
        auto& dst = out.at(n);
        if (static_cast<long>(n) >= x && static_cast<std::size_t>(static_cast<long>(n) - x) <= r.order())
            ring.add_mul(dst, alpha, r[static_cast<std::size_t>(static_cast<long>(n) - x)]);
        if (static_cast<long>(n) >= y && static_cast<std::size_t>(static_cast<long>(n) - y) <= r.order())
            ring.sub_from(dst, r[static_cast<std::size_t>(static_cast<long>(n) - y)]);
    }
    return out;
}

template <class Ring>
Series<Ring> place(const Series<Ring>& unit, long shift, std::size_t order)
{
    Series<Ring> out(unit.ring(), order);
    for (long n = shift; n <= static_cast<long>(order); ++n)
        out.at(static_cast<std::size_t>(n)) = unit[static_cast<std::size_t>(n - shift)];
    return out;
}

}  // namespace detail

/// sum over all integers k of (-1)^k q^{B k(k-1)/2} u^{-k} z^{-dk} / (T; q^B)_k,
/// with (T;q^B)_{-j} = 1/(T q^{-Bj}; q^B)_j. T absent means T = 0 (giving theta(u/z^d; q^B)).
/// u = u_sign * q^u_exp. The z-window is certified from explicit valuation bounds and a
/// direct recomputation of the first omitted coefficient; when that is impossible and
/// `cap` is given, positive z-exponents beyond d*cap are marked unknown.
template <class Ring>
ZSeries<Ring> expand_bilateral(const Ring& ring, std::size_t order, const std::optional<ZMono<Ring>>& T, long B,
                               int u_sign, long u_exp, long d, std::optional<long> cap = std::nullopt)
{
    using S = Series<Ring>;
    if (B < 1 || d < 1) throw ContractError("bilateral expansion needs B >= 1 and d >= 1");
    if (T && T->exp < 0) throw ContractError("T must not carry a negative power of q");
    const long N = static_cast<long>(order);

    // k >= 0: q^{E_k} * U_k at z^{-dk}, with E_k = B k(k-1)/2 - u_exp k.
    std::vector<std::pair<long, S>> neg_side;
    {
        S unit = S::one(ring, order);
        for (long k = 0;; ++k) {
            const long Ek = B * k * (k - 1) / 2 - u_exp * k;
            if (Ek < 0) throw WindowError("bilateral expansion has negative powers of q at z^" + std::to_string(-d * k));
            if (Ek > N && B * k - u_exp > 0) break;
            if (k > 0) {
                // Later exponents never drop below E_k once the increments are nonnegative.
                if (B * k - u_exp >= 0) unit = unit.truncated(static_cast<std::size_t>(std::max(0L, N - Ek)));
                if (T) {
                    try {
                        unit.div_binomial(T->coef, static_cast<std::size_t>(T->exp + B * (k - 1)));
                    } catch (const NotInvertibleError&) {
                        throw WindowError("(T;q^B)_k has a non-invertible constant term");
                    }
                }
                unit = u_sign < 0 ? unit : -unit;
            }
            neg_side.emplace_back(Ek, Ek > N ? S(ring, order) : detail::place(unit, Ek, order));
        }
    }

    // k = -j, j >= 1: C_j = u^j prod_{s=1..j} (T - q^{Bs}) = q^{a_j} R_j at z^{dj}.
    std::vector<S> pos_side;
    bool certified = false;
    long a = 0;
    {
        S R = S::one(ring, order);
        bool exactly_zero = false;
        const long limit = cap ? *cap : std::numeric_limits<long>::max();
        for (long j = 1; j <= limit; ++j) {
            if (exactly_zero) {
                certified = true;
                break;
            }
            long m;
            if (!T) {
                m = B * j;
                R = -R;
            } else {
                m = std::min(T->exp, B * j);
                if (ring.is_one(T->coef) && T->exp == B * j) exactly_zero = true;
            }
            if (m + u_exp < 0) throw WindowError("bilateral expansion: q-valuation bound is not monotone");
            a += m + u_exp;
            if (a < 0) throw WindowError("bilateral expansion has negative powers of q at z^" + std::to_string(d * j));
            const std::size_t rel = static_cast<std::size_t>(std::max(0L, N - a));
            if (T) R = detail::times_difference(R, T->coef, T->exp - m, B * j - m, rel);
            else R = R.truncated(std::min(rel, R.order()));
            if (u_sign < 0) R = -R;
            if (exactly_zero) R = S(ring, rel);
            pos_side.push_back(a > N ? S(ring, order) : detail::place(R, a, order));
            const long next_m = T ? std::min(T->exp, B * (j + 1)) : B * (j + 1);
            if (a > N && next_m + u_exp >= 0) {
                certified = true;
                break;
            }
            const long asymptotic = T ? T->exp + u_exp : 1;
            if (!cap && asymptotic <= 0 && a <= N) {
                const bool zero_ahead = T && ring.is_one(T->coef) && T->exp % B == 0 && T->exp / B > j;
                if (!zero_ahead && j > N + 2)
                    throw WindowError("cannot certify the z-window of the bilateral expansion; supply a cap");
            }
        }
        if (exactly_zero) certified = true;
    }

    const long K = static_cast<long>(neg_side.size()) - 1;
    const long J = static_cast<long>(pos_side.size());
    ZSeries<Ring> z(ring, order, -d * K, d * J, true, certified);
    for (long k = 0; k <= K; ++k) z.at(-d * k) = std::move(neg_side[static_cast<std::size_t>(k)].second);
    for (long j = 1; j <= J; ++j) z.at(d * j) = std::move(pos_side[static_cast<std::size_t>(j - 1)]);

    if (certified) {
        // Boundary check: recompute C_{J+1} from scratch at a raised order and confirm it vanishes.
        const long jj = J + 1;
        const long lift = u_exp < 0 ? -u_exp * jj : 0;
        const std::size_t work = order + static_cast<std::size_t>(lift);
        S P = S::one(ring, work);
        for (long s = 1; s <= jj; ++s) {
            S next(ring, work);
            for (std::size_t n = 0; n <= work; ++n) {
                if (T && static_cast<long>(n) >= T->exp)
                    ring.add_mul(next.at(n), T->coef, P[n - static_cast<std::size_t>(T->exp)]);
                if (static_cast<long>(n) >= B * s) ring.sub_from(next.at(n), P[n - static_cast<std::size_t>(B * s)]);
            }
            P = std::move(next);
        }
        const long shift = u_exp * jj;  // multiply by q^shift
        for (long n = 0; n <= static_cast<long>(work); ++n) {
            const long target = n + shift;
            if (target <= N && !ring.is_zero(P[static_cast<std::size_t>(n)]))
                throw WindowError("boundary coefficient at z^" + std::to_string(d * jj) + " does not vanish");
        }
    }
    return z;
}

/// sum_{k>=0} q^{B*kk(k-1)/2 * quad} c^k z^{dk} / (q^B;q^B)_k, where quad is 0 (Euler's
/// exponential series 1/(c z^d; q^B)_inf) or 1 (the series (-c z^d; q^B)_inf).
template <class Ring>
ZSeries<Ring> expand_euler(const Ring& ring, std::size_t order, const ZMono<Ring>& c, long d, long B, bool quadratic,
                           std::optional<long> cap = std::nullopt)
{
    using S = Series<Ring>;
    if (B < 1 || d < 1) throw ContractError("Euler expansion needs B >= 1 and d >= 1");
    if (c.exp < 0) throw ContractError("Euler expansion needs a nonnegative power of q in c");
    const long N = static_cast<long>(order);
    std::vector<S> terms;
    bool certified = false;
    S unit = S::one(ring, order);
    typename Ring::Element ck = ring.one();
    const long limit = cap ? *cap : std::numeric_limits<long>::max();
    for (long k = 0; k <= limit; ++k) {
        const long Ek = (quadratic ? B * k * (k - 1) / 2 : 0) + c.exp * k;
        if (k > 0) {
            ck = ring.mul(ck, c.coef);
            if (ring.is_zero(ck)) {
                certified = true;
                break;
            }
            if (Ek <= N) {
                unit = unit.truncated(static_cast<std::size_t>(N - Ek));
                unit.div_binomial(ring.one(), static_cast<std::size_t>(B * k));
            }
        }
        if (Ek > N && (quadratic ? B * k + c.exp > 0 : c.exp > 0)) {
            certified = true;
            break;
        }
        if (Ek > N) {
            terms.emplace_back(ring, order);
        } else {
            S v = unit.scaled(ck);
            terms.push_back(detail::place(v, Ek, order));
        }
        if (!cap && !quadratic && c.exp == 0 && k > N + 2 && ring.t_valuation(c.coef) == 0)
            throw WindowError("cannot certify the z-window of the Euler expansion; supply a cap");
    }
    const long K = static_cast<long>(terms.size()) - 1;
    if (K < 0) return ZSeries<Ring>::constant(S::one(ring, order));
    ZSeries<Ring> z(ring, order, 0, d * K, true, certified);
    for (long k = 0; k <= K; ++k) z.at(d * k) = std::move(terms[static_cast<std::size_t>(k)]);
    return z;
}

/// First (w, exponent) in [wlo, whi] where a and b differ.
template <class Ring>
std::optional<std::pair<long, std::size_t>> compare_window(const ZSeries<Ring>& a, const ZSeries<Ring>& b, long wlo,
                                                           long whi)
{
    for (long w = wlo; w <= whi; ++w) {
        if (auto m = first_mismatch(a.coeff(w), b.coeff(w))) return std::make_pair(w, *m);
    }
    return std::nullopt;
}

}  // namespace qsv
