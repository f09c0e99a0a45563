#include "qsv/replay.hpp"

#include <algorithm>

#include "qsv/products.hpp"

namespace qsv {

namespace {

const std::vector<std::string> kReplays = {"lemma-4ta", "lemma-4tb", "lemma-ttqa", "lemma-ttqb"};

template <class Ring>
ZMono<Ring> to_zmono(const Ring& ring, const Binding& b)
{
    if (b.kind == Binding::Kind::Symbolic) return {ring.monomial(b.symbolic_sign, 1), 0};
    if (b.value.zero) throw EvalError("replay parameters must be nonzero");
    return {ring.from_int(b.value.sign), b.value.exp};
}

template <class Ring>
ZMono<Ring> times(const Ring& ring, const ZMono<Ring>& a, const ZMono<Ring>& b)
{
    return {ring.mul(a.coef, b.coef), a.exp + b.exp};
}

template <class Ring>
ZMono<Ring> qpow(const Ring& ring, long e, int sign = 1)
{
    return {ring.from_int(sign), e};
}

// (c q^e; q^m)_inf
template <class Ring>
Series<Ring> poch(const Ring& ring, const ZMono<Ring>& c, long m, std::size_t order)
{
    Series<Ring> s = Series<Ring>::one(ring, order);
    apply_pochhammer(s, c.coef, c.exp, 1, m, std::nullopt, 1);
    return s;
}

const Binding& need(const Bindings& b, const std::string& name)
{
    auto it = b.find(name);
    if (it == b.end()) throw EvalError("replay needs parameter '" + name + "'");
    return it->second;
}

long base_exponent(const Bindings& b)
{
    auto it = b.find("p");
    if (it == b.end()) return 1;
    const Binding& p = it->second;
    if (p.kind != Binding::Kind::Monomial || p.value.zero || p.value.sign != 1 || p.value.exp < 1)
        throw EvalError("replay base p must be q^m with m >= 1");
    return p.value.exp;
}

template <class Ring>
std::optional<ZMismatch> window_diff(const ZSeries<Ring>& a, const ZSeries<Ring>& b, long lo, long hi)
{
    const auto m = compare_window(a, b, lo, hi);
    if (!m) return std::nullopt;
    const Ring& ring = a.ring();
    return ZMismatch{m->first, m->second, ring.to_string(a.coeff(m->first)[m->second]),
                     ring.to_string(b.coeff(m->first)[m->second])};
}

}  // namespace

bool has_replay(const std::string& id)
{
    return std::find(kReplays.begin(), kReplays.end(), id) != kReplays.end();
}

std::vector<std::string> replay_ids() { return kReplays; }

template <class Ring>
ReplayOutcome<Ring> replay_constant_term(const std::string& id, const Ring& ring, const Bindings& b,
                                         std::size_t order, long cap)
{
    using Z = ZSeries<Ring>;
    if (!has_replay(id)) throw UnknownIdError(id);
    const std::size_t N = order;
    const ZMono<Ring> t = to_zmono(ring, need(b, "t"));
    const std::optional<long> bcap = ring.has_t() ? std::optional<long>(std::max(cap, 4L)) : std::nullopt;
    const std::pair<long, long> win{-2, 2};
    const auto neg = [&](const ZMono<Ring>& a) { return ZMono<Ring>{ring.neg(a.coef), a.exp}; };

    ReplayOutcome<Ring> out{Series<Ring>(ring, N), Series<Ring>(ring, N), Series<Ring>::one(ring, N), std::nullopt};
    Z first = Z::constant(Series<Ring>::one(ring, N));
    Z second = first;

    if (id == "lemma-4ta" || id == "lemma-4tb") {
        const bool a = id == "lemma-4ta";
        const ZMono<Ring> T1 = a ? t : times(ring, qpow(ring, 1), t);
        const ZMono<Ring> T2 = a ? neg(times(ring, qpow(ring, 1), t)) : neg(t);
        const ZMono<Ring> c2 = times(ring, a ? qpow(ring, 0) : qpow(ring, 2), times(ring, t, t));
        out.prefactor = poch(ring, T1, 2, N);
        first = zmul(expand_bilateral(ring, N, std::optional(T1), 2, 1, 0, 1, bcap),
                     expand_euler(ring, N, neg(t), 1, 1, false), win)
                    .scaled(out.prefactor);
        second = zmul(expand_bilateral(ring, N, std::optional(T2), 2, 1, 0, 1, bcap),
                      expand_euler(ring, N, c2, 2, 4, false), win)
                     .scaled(poch(ring, T2, 2, N));
    } else {
        const bool a = id == "lemma-ttqa";
        const long beta = base_exponent(b);
        const ZMono<Ring> Q = qpow(ring, beta);
        const ZMono<Ring> t2 = times(ring, t, t);
        first = zmul(expand_bilateral(ring, N, std::optional(t), beta, 1, 0, 1, bcap),
                     expand_euler(ring, N, a ? neg(t) : neg(times(ring, Q, t)), 1, 2 * beta, false), win)
                    .scaled(poch(ring, t, beta, N));
        const ZMono<Ring> ce = a ? times(ring, Q, t) : t;
        const ZMono<Ring> Ta = neg(times(ring, qpow(ring, (a ? 1 : 3) * beta), t2));
        const ZMono<Ring> Tb = neg(times(ring, qpow(ring, (a ? 3 : 5) * beta), t2));
        const Z even = zmul(expand_bilateral(ring, N, std::optional(Ta), 4 * beta, -1, -beta, 2, bcap),
                            expand_euler(ring, N, ce, 1, 2 * beta, false), win)
                           .scaled(poch(ring, Ta, 4 * beta, N));
        const Z odd = zmul(expand_bilateral(ring, N, std::optional(Tb), 4 * beta, -1, -3 * beta, 2, bcap),
                           expand_euler(ring, N, ce, 1, 2 * beta, false), std::pair<long, long>{-1, 3})
                          .scaled(poch(ring, Tb, 4 * beta, N))
                          .shifted(-1);
        second = even - odd;
    }
    out.ct_first = constant_term(first);
    out.ct_second = constant_term(second);
    out.window_mismatch = window_diff(first, second, win.first, win.second);
    return out;
}

template <class Ring>
std::optional<ZMismatch> check_bilateral_sum(const Ring& ring, const Binding& tb, std::size_t order, long window)
{
    const ZMono<Ring> t = to_zmono(ring, tb);
    const std::optional<long> bcap = ring.has_t() ? std::optional<long>(window + 2) : std::nullopt;
    const std::pair<long, long> win{-window, window};
    const ZSeries<Ring> left =
        zmul(expand_euler(ring, order, ZMono<Ring>{ring.neg(t.coef), t.exp}, 1, 1, true),
             expand_bilateral(ring, order, std::optional(t), 1, 1, 0, 1, bcap), win)
            .scaled(poch(ring, t, 1, order));
    const ZSeries<Ring> right = expand_bilateral<Ring>(ring, order, std::nullopt, 1, 1, 0, 1, window + 2);
    return window_diff(left, right, -window, window);
}

template ReplayOutcome<IntegerRing> replay_constant_term(const std::string&, const IntegerRing&, const Bindings&,
                                                         std::size_t, long);
template ReplayOutcome<TPolyRing> replay_constant_term(const std::string&, const TPolyRing&, const Bindings&,
                                                       std::size_t, long);
template std::optional<ZMismatch> check_bilateral_sum(const IntegerRing&, const Binding&, std::size_t, long);
template std::optional<ZMismatch> check_bilateral_sum(const TPolyRing&, const Binding&, std::size_t, long);

}  // namespace qsv
