#include "qsv/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qsv/products.hpp"

namespace qsv {

Binding Binding::parse(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s == "t") return symbolic(1);
    if (s == "-t") return symbolic(-1);
    return monomial(MonomialSpec::parse(s));
}

std::string Binding::to_string() const
{
    if (kind == Kind::Symbolic) return symbolic_sign < 0 ? "-t" : "t";
    return value.to_string();
}

std::string to_string(const Bindings& b)
{
    std::string out;
    for (const auto& [name, v] : b) {
        if (!out.empty()) out += ",";
        out += name + "=" + v.to_string();
    }
    return out;
}

template <class Ring>
Series<Ring> Laurent<Ring>::to_series(std::size_t order) const
{
    if (prec() < static_cast<long>(order)) throw EvalError("internal: insufficient precision");
    Series<Ring> r(s.ring(), order);
    for (long n = offset; n <= static_cast<long>(order); ++n) {
        const auto& c = s[static_cast<std::size_t>(n - offset)];
        if (n < 0) {
            if (!s.ring().is_zero(c)) throw EvalError("result has a negative power of q (q^" + std::to_string(n) + ")");
            continue;
        }
        r.at(static_cast<std::size_t>(n)) = c;
    }
    return r;
}

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

long sat_add(long a, long b)
{
    if (a >= kInf || b >= kInf) return kInf;
    return a + b;
}

bool depends_on_k(const Expr& e)
{
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PochNode>) {
                if (n.length && !n.length->is_constant()) return true;
                if (depends_on_k(*n.base)) return true;
                return std::any_of(n.args.begin(), n.args.end(), [](const ExprPtr& a) { return depends_on_k(*a); });
            } else if constexpr (std::is_same_v<T, ThetaNode>) {
                if (depends_on_k(*n.base)) return true;
                return std::any_of(n.args.begin(), n.args.end(), [](const ExprPtr& a) { return depends_on_k(*a); });
            } else if constexpr (std::is_same_v<T, CallNode>) {
                return depends_on_k(*n.arg);
            } else if constexpr (std::is_same_v<T, AddNode>) {
                return std::any_of(n.terms.begin(), n.terms.end(), [](const auto& t) { return depends_on_k(*t.second); });
            } else if constexpr (std::is_same_v<T, MulNode>) {
                return std::any_of(n.factors.begin(), n.factors.end(),
                                   [](const auto& f) { return !f.second.is_constant() || depends_on_k(*f.first); });
            } else {
                return false;  // numbers, symbols, and nested sums (their k is their own)
            }
        },
        e.node);
}

}  // namespace

template <class Ring>
struct Evaluator<Ring>::Impl {
    using Element = typename Ring::Element;
    using L = Laurent<Ring>;

    struct Mono {
        Element coef;
        long exp = 0;
        bool zero = false;
    };

    // Lower bound on the q-valuation of a sum_k body, as a polynomial in k plus a constant.
    struct Shape {
        bool ok = true;
        ExpPoly qexp;
        ExpPoly tdeg;
        std::vector<ExpPoly> zero_powers;
        long base = 0;
    };

    Ring ring;
    SeriesLookup lookup;
    Side default_side;
    std::map<std::string, Series<Ring>> overrides;
    std::map<std::pair<std::string, int>, Series<Ring>> cache;
    std::map<const Expr*, Shape> shapes;
    std::set<std::string> in_progress;
    Bindings bindings;
    std::vector<long> kstack;

    Impl(Ring r, SeriesLookup lk, Side side) : ring(std::move(r)), lookup(std::move(lk)), default_side(side) {}

    long current_k() const
    {
        if (kstack.empty()) throw EvalError("the index k is used outside sum_k");
        return kstack.back();
    }

    long expo(const ExpPoly& p) const
    {
        if (p.is_constant()) return static_cast<long>(p.eval(0));
        return static_cast<long>(p.eval(current_k()));
    }

    L zero_at(long prec) const { return L{prec, Series<Ring>(ring, 0)}; }

    Element power(const Element& c, long n) const
    {
        if (n == 0 || ring.is_one(c)) return ring.one();
        const Element minus_one = ring.neg(ring.one());
        if (ring.equal(c, minus_one)) return (n & 1) ? minus_one : ring.one();
        Element base = c;
        if (n < 0) {
            if (!ring.is_unit(base)) throw EvalError("cannot raise " + ring.to_string(c) + " to a negative power");
            base = ring.inverse(base);
            n = -n;
        }
        Element r = ring.one();
        while (n > 0) {
            if (n & 1) r = ring.mul(r, base);
            n >>= 1;
            if (n > 0) base = ring.mul(base, base);
        }
        return r;
    }

    std::optional<Mono> mono(const Expr& e)
    {
        if (const auto* n = std::get_if<NumberNode>(&e.node)) {
            return Mono{ring.monomial(n->value, 0), 0, sgn(n->value) == 0};
        }
        if (const auto* s = std::get_if<SymbolNode>(&e.node)) {
            if (s->name == "q") return Mono{ring.one(), 1, false};
            auto it = bindings.find(s->name);
            if (it == bindings.end()) throw EvalError("parameter '" + s->name + "' is not bound");
            const Binding& b = it->second;
            if (b.kind == Binding::Kind::Symbolic) return Mono{ring.monomial(Integer(b.symbolic_sign), 1), 0, false};
            if (b.value.zero) return Mono{ring.zero(), 0, true};
            return Mono{ring.from_int(b.value.sign), b.value.exp, false};
        }
        if (const auto* a = std::get_if<AddNode>(&e.node)) {
            if (a->terms.size() != 1) return std::nullopt;
            auto m = mono(*a->terms[0].second);
            if (m && a->terms[0].first < 0) m->coef = ring.neg(m->coef);
            return m;
        }
        if (const auto* m = std::get_if<MulNode>(&e.node)) {
            Mono r{ring.one(), 0, false};
            for (const auto& [f, ex] : m->factors) {
                auto fm = mono(*f);
                if (!fm) return std::nullopt;
                const long n = expo(ex);
                if (n == 0) continue;
                if (fm->zero) {
                    if (n < 0) throw EvalError("division by zero");
                    r.zero = true;
                    continue;
                }
                r.coef = ring.mul(r.coef, power(fm->coef, n));
                r.exp += fm->exp * n;
            }
            if (r.zero) r.coef = ring.zero();
            return r;
        }
        return std::nullopt;
    }

    Mono require_mono(const Expr& e, const char* what)
    {
        auto m = mono(e);
        if (!m) throw EvalError(std::string(what) + " must be a monomial (column " + std::to_string(e.column) + ")");
        return *m;
    }

    // base of a Pochhammer symbol or theta function: ±q^m, m >= 1
    std::pair<int, long> base_of(const Expr& e)
    {
        const Mono m = require_mono(e, "a base");
        const Element minus_one = ring.neg(ring.one());
        int sign = 0;
        if (ring.is_one(m.coef)) sign = 1;
        else if (ring.equal(m.coef, minus_one)) sign = -1;
        if (m.zero || sign == 0 || m.exp < 1)
            throw EvalError("a base must be ±q^m with m >= 1 (column " + std::to_string(e.column) + ")");
        return {sign, m.exp};
    }

    int unit_sign(const Element& c, std::size_t column)
    {
        if (ring.is_one(c)) return 1;
        if (ring.equal(c, ring.neg(ring.one()))) return -1;
        throw EvalError("theta arguments must be ±q^e (column " + std::to_string(column) + ")");
    }

    static long theta_min(long e, long m)
    {
        const long k0 = static_cast<long>(std::floor(0.5 - static_cast<double>(e) / static_cast<double>(m)));
        auto f = [&](long k) { return m * k * (k - 1) / 2 + e * k; };
        return std::min(f(k0), f(k0 + 1));
    }

    long lower_bound(const Expr& e)
    {
        if (auto m = mono(e)) return m->zero ? kInf : m->exp;
        if (std::holds_alternative<PochNode>(e.node) || std::holds_alternative<CallNode>(e.node)) return 0;
        if (const auto* t = std::get_if<ThetaNode>(&e.node)) {
            const auto [bs, m] = base_of(*t->base);
            long total = 0;
            for (const auto& a : t->args) {
                const Mono am = require_mono(*a, "a theta argument");
                if (am.zero) throw EvalError("theta argument must be nonzero");
                total += theta_min(am.exp, m);
            }
            return total;
        }
        if (const auto* s = std::get_if<SumNode>(&e.node)) return sum_lower_bound(*s, e);
        if (const auto* a = std::get_if<AddNode>(&e.node)) {
            long r = kInf;
            for (const auto& [sign, term] : a->terms) r = std::min(r, lower_bound(*term));
            return r;
        }
        if (const auto* m = std::get_if<MulNode>(&e.node)) {
            long r = 0;
            for (const auto& [f, ex] : m->factors) {
                const long n = expo(ex);
                if (n == 0) continue;
                if (auto fm = mono(*f)) {
                    if (fm->zero) return kInf;
                    r = sat_add(r, fm->exp * n);
                } else if (n > 0) {
                    const long lb = lower_bound(*f);
                    r = lb >= kInf ? kInf : sat_add(r, lb * n);
                }
            }
            return r;
        }
        return 0;
    }

    // Nested products raised to constant powers become factors of the parent.
    static void flatten(const Expr& e, const ExpPoly& ex, std::vector<std::pair<const Expr*, ExpPoly>>& out)
    {
        const auto* m = std::get_if<MulNode>(&e.node);
        if (!m || !ex.is_constant()) {
            out.emplace_back(&e, ex);
            return;
        }
        for (const auto& [f, fe] : m->factors) flatten(*f, fe * ex, out);
    }

    const Shape& shape_of(const Expr& body)
    {
        auto it = shapes.find(&body);
        if (it != shapes.end()) return it->second;
        Shape sh;
        std::vector<std::pair<const Expr*, ExpPoly>> factors;
        flatten(body, ExpPoly::constant(1), factors);
        for (const auto& [f, ex] : factors) {
            if (!depends_on_k(*f)) {
                if (auto fm = mono(*f)) {
                    if (fm->zero) {
                        sh.zero_powers.push_back(ex);
                    } else {
                        sh.qexp = sh.qexp + ex * ExpPoly::constant(fm->exp);
                        const long td = ring.t_valuation(fm->coef);
                        if (td > 0) sh.tdeg = sh.tdeg + ex * ExpPoly::constant(td);
                    }
                    continue;
                }
                if (!ex.is_constant()) {
                    sh.ok = false;
                    continue;
                }
                const long n = static_cast<long>(ex.eval(0));
                if (n > 0 && !std::holds_alternative<PochNode>(f->node)) sh.base = sat_add(sh.base, lower_bound(*f) * n);
                continue;
            }
            if (std::holds_alternative<PochNode>(f->node) && ex.is_constant()) continue;
            sh.ok = false;
        }
        return shapes.emplace(&body, std::move(sh)).first->second;
    }

    // True when every term with index >= k is zero modulo q^{prec+1}.
    bool dead_from(const Shape& sh, long k, long prec) const
    {
        if (!sh.ok) return false;
        try {
            if (sh.qexp.increasing_from(k) && sat_add(static_cast<long>(sh.qexp.eval(k)), sh.base) > prec) return true;
            if (ring.has_t() && sh.tdeg.increasing_from(k) && sh.tdeg.eval(k) > ring.t_cap()) return true;
            for (const auto& z : sh.zero_powers)
                if (z.increasing_from(k) && z.eval(k) > 0) return true;
        } catch (const EvalError&) {
            return false;
        }
        return false;
    }

    long term_limit(long prec) const { return 64 + 4 * std::max(prec, 0L) + 4 * std::max(ring.t_cap(), 0L); }

    long sum_lower_bound(const SumNode& s, const Expr& where)
    {
        const Shape& sh = shape_of(*s.body);
        long best = kInf;
        const long limit = term_limit(1000);
        for (long k = 0; k <= limit; ++k) {
            kstack.push_back(k);
            const long lb = lower_bound(*s.body);
            const bool stop = best < kInf && dead_from(sh, k, best - 1);
            kstack.pop_back();
            if (stop) return best;
            best = std::min(best, lb);
        }
        if (!sh.ok) return std::min(best, 0L);
        throw EvalError("cannot bound the sum at column " + std::to_string(where.column));
    }

    static L normalize(const L& a)
    {
        const auto v = a.s.valuation();
        if (!v) return a;
        if (*v == 0) return a;
        std::vector<Element> c(a.s.coeffs().begin() + static_cast<std::ptrdiff_t>(*v), a.s.coeffs().end());
        return L{a.offset + static_cast<long>(*v), Series<Ring>::from_coeffs(a.s.ring(), std::move(c))};
    }

    L add(const L& a, const L& b, int sign) const
    {
        const long prec = std::min(a.prec(), b.prec());
        const long off = std::min({a.offset, b.offset, prec});
        Series<Ring> s(ring, static_cast<std::size_t>(prec - off));
        for (long n = std::max(off, a.offset); n <= prec; ++n)
            s.at(static_cast<std::size_t>(n - off)) = a.s[static_cast<std::size_t>(n - a.offset)];
        for (long n = std::max(off, b.offset); n <= prec; ++n) {
            auto& dst = s.at(static_cast<std::size_t>(n - off));
            const auto& src = b.s[static_cast<std::size_t>(n - b.offset)];
            if (sign > 0) ring.add_to(dst, src);
            else ring.sub_from(dst, src);
        }
        return L{off, std::move(s)};
    }

    L eval(const Expr& e, long prec)
    {
        if (auto m = mono(e)) {
            if (m->zero || m->exp > prec) return zero_at(prec);
            return L{m->exp, Series<Ring>::monomial(ring, static_cast<std::size_t>(prec - m->exp), m->coef, 0)};
        }
        if (const auto* a = std::get_if<AddNode>(&e.node)) {
            L acc = zero_at(prec);
            for (const auto& [sign, term] : a->terms) acc = add(acc, eval(*term, prec), sign);
            return acc;
        }
        if (const auto* s = std::get_if<SumNode>(&e.node)) return eval_sum(*s, e, prec);
        if (const auto* c = std::get_if<CallNode>(&e.node)) return eval_call(*c, e, prec);
        if (const auto* m = std::get_if<MulNode>(&e.node)) {
            std::vector<std::pair<const Expr*, ExpPoly>> flat;
            flatten(e, ExpPoly::constant(1), flat);
            std::vector<std::pair<const Expr*, long>> items;
            for (const auto& [f, ex] : flat) items.emplace_back(f, expo(ex));
            return eval_product(items, prec);
        }
        if (const auto* t = std::get_if<ThetaNode>(&e.node)) {
            if (t->args.size() == 1) return eval_theta(*t->args[0], *t->base, prec);
        }
        return eval_product({{&e, 1L}}, prec);
    }

    L eval_theta(const Expr& arg, const Expr& base, long prec)
    {
        const auto [bs, m] = base_of(base);
        const Mono am = require_mono(arg, "a theta argument");
        if (am.zero) throw EvalError("theta argument must be nonzero");
        const int cs = unit_sign(am.coef, arg.column);
        const ThetaTerms terms = theta_terms(cs, am.exp, bs, m, prec);
        if (terms.offset > prec) return zero_at(prec);
        Series<Ring> s(ring, static_cast<std::size_t>(prec - terms.offset));
        for (const auto& [ex, sign] : terms.terms) {
            auto& c = s.at(static_cast<std::size_t>(ex - terms.offset));
            if (sign > 0) ring.add_to(c, ring.one());
            else ring.sub_from(c, ring.one());
        }
        return L{terms.offset, std::move(s)};
    }

    struct Item {
        const Expr* e;
        long n;
        long lb = 0;
        std::optional<L> value;
    };

    L eval_product(const std::vector<std::pair<const Expr*, long>>& factors, long prec)
    {
        Element coef = ring.one();
        long E = 0;
        std::vector<Item> pochs;
        std::vector<Item> others;
        for (const auto& [f, n] : factors) {
            if (n == 0) continue;
            if (auto fm = mono(*f)) {
                if (fm->zero) {
                    if (n < 0) throw EvalError("division by zero");
                    return zero_at(prec);
                }
                coef = ring.mul(coef, power(fm->coef, n));
                E += fm->exp * n;
                continue;
            }
            if (std::holds_alternative<PochNode>(f->node)) {
                pochs.push_back(Item{f, n, 0, std::nullopt});
            } else if (const auto* t = std::get_if<ThetaNode>(&f->node); t && t->args.size() > 1) {
                for (const auto& a : t->args) {
                    // theta(a1,...,an; b) is handled one argument at a time
                    auto single = std::make_shared<Expr>();
                    single->node = ThetaNode{{a}, t->base};
                    single->column = f->column;
                    temporaries.push_back(single);
                    others.push_back(Item{single.get(), n, 0, std::nullopt});
                }
            } else {
                others.push_back(Item{f, n, 0, std::nullopt});
            }
        }
        long V = E;
        for (auto& it : others) {
            if (it.n > 0) {
                it.lb = lower_bound(*it.e);
                if (it.lb >= kInf) return zero_at(prec);
                V = sat_add(V, it.lb * it.n);
            }
        }
        if (V > prec) return zero_at(prec);
        long O = E;
        for (auto& it : others) {
            if (it.n > 0) {
                it.value = eval(*it.e, prec - (V - it.lb));
                O += it.value->offset * it.n;
            } else {
                L v = normalize(eval(*it.e, prec - V));
                if (v.offset != 0 || !ring.is_unit(v.s[0]))
                    throw EvalError("cannot divide by a series whose constant term is not a unit (column " +
                                    std::to_string(it.e->column) + ")");
                v.s = v.s.inverse();
                it.value = std::move(v);
            }
        }
        if (O > prec) return zero_at(prec);
        const std::size_t r = static_cast<std::size_t>(prec - O);
        Series<Ring> acc = Series<Ring>::monomial(ring, r, coef, 0);
        for (const auto& it : pochs) apply_poch(acc, std::get<PochNode>(it.e->node), it.n);
        for (const auto& it : others) {
            const Series<Ring> f = it.value->s.truncated(r);
            const long copies = it.n < 0 ? -it.n : it.n;
            for (long c = 0; c < copies; ++c) acc *= f;
        }
        return L{O, std::move(acc)};
    }

    void apply_poch(Series<Ring>& acc, const PochNode& p, long n)
    {
        const auto [bs, m] = base_of(*p.base);
        std::optional<long> len;
        if (p.length) len = expo(*p.length);
        for (const auto& a : p.args) {
            const Mono am = require_mono(*a, "a Pochhammer argument");
            if (am.zero) continue;
            if (am.exp < 0)
                throw EvalError("Pochhammer argument has a negative power of q (column " + std::to_string(a->column) + ")");
            apply_pochhammer(acc, am.coef, am.exp, bs, m, len, n);
        }
    }

    L eval_sum(const SumNode& s, const Expr& where, long prec)
    {
        const Shape& sh = shape_of(*s.body);
        L acc = zero_at(prec);
        const long limit = term_limit(prec);
        for (long k = 0;; ++k) {
            if (k > limit)
                throw EvalError("sum at column " + std::to_string(where.column) + " does not terminate at this order");
            kstack.push_back(k);
            try {
                if (dead_from(sh, k, prec)) {
                    kstack.pop_back();
                    break;
                }
                if (lower_bound(*s.body) <= prec) acc = add(acc, eval(*s.body, prec), 1);
            } catch (...) {
                kstack.pop_back();
                throw;
            }
            kstack.pop_back();
        }
        return acc;
    }

    const Series<Ring>& named(const std::string& name, Side side, std::size_t order)
    {
        const auto key = std::make_pair(name, static_cast<int>(side));
        auto it = cache.find(key);
        if (it != cache.end() && it->second.order() >= order) return it->second;
        if (!lookup) throw EvalError("unknown series '" + name + "'");
        ExprPtr def = lookup(name, side);
        if (!def) throw EvalError("unknown series '" + name + "'");
        if (!in_progress.insert(name).second) throw EvalError("series '" + name + "' is defined in terms of itself");
        Bindings saved_b = std::move(bindings);
        std::vector<long> saved_k = std::move(kstack);
        bindings.clear();
        kstack.clear();
        try {
            Series<Ring> v = eval(*def, static_cast<long>(order)).to_series(order);
            bindings = std::move(saved_b);
            kstack = std::move(saved_k);
            in_progress.erase(name);
            return cache.insert_or_assign(key, std::move(v)).first->second;
        } catch (...) {
            bindings = std::move(saved_b);
            kstack = std::move(saved_k);
            in_progress.erase(name);
            throw;
        }
    }

    L eval_call(const CallNode& c, const Expr& where, long prec)
    {
        const Mono am = require_mono(*c.arg, "a series argument");
        const Element minus_one = ring.neg(ring.one());
        int sign = 0;
        if (!am.zero && ring.is_one(am.coef)) sign = 1;
        else if (!am.zero && ring.equal(am.coef, minus_one)) sign = -1;
        if (sign == 0 || am.exp < 1)
            throw EvalError("series argument must be ±q^m with m >= 1 (column " + std::to_string(where.column) + ")");
        if (prec < 0) return zero_at(prec);
        const std::size_t order = static_cast<std::size_t>(prec);
        const std::size_t src_order = order / static_cast<std::size_t>(am.exp);
        const Side side = c.side ? *c.side : default_side;
        auto ov = overrides.find(c.name);
        const Series<Ring>* src = nullptr;
        if (ov != overrides.end()) {
            if (ov->second.order() < src_order) throw EvalError("override for '" + c.name + "' has too small an order");
            src = &ov->second;
        } else {
            src = &named(c.name, side, src_order);
        }
        return L{0, src->truncated(src_order).substituted(sign, static_cast<std::size_t>(am.exp), order)};
    }

    std::vector<std::shared_ptr<Expr>> temporaries;
};

template <class Ring>
Evaluator<Ring>::Evaluator(Ring ring, SeriesLookup lookup, Side default_side)
    : ring_(ring), impl_(std::make_shared<Impl>(std::move(ring), std::move(lookup), default_side))
{
}

template <class Ring>
void Evaluator<Ring>::set_override(const std::string& name, Series<Ring> value)
{
    impl_->overrides.insert_or_assign(name, std::move(value));
}

template <class Ring>
void Evaluator<Ring>::clear_overrides()
{
    impl_->overrides.clear();
}

template <class Ring>
Laurent<Ring> Evaluator<Ring>::evaluate_laurent(const Expr& e, const Bindings& b, long prec)
{
    impl_->bindings = b;
    impl_->kstack.clear();
    impl_->shapes.clear();
    impl_->temporaries.clear();
    Laurent<Ring> r = impl_->eval(e, prec);
    impl_->temporaries.clear();
    return r;
}

template <class Ring>
Series<Ring> Evaluator<Ring>::evaluate(const Expr& e, const Bindings& b, std::size_t order)
{
    return evaluate_laurent(e, b, static_cast<long>(order)).to_series(order);
}

template struct Laurent<IntegerRing>;
template struct Laurent<TPolyRing>;
template class Evaluator<IntegerRing>;
template class Evaluator<TPolyRing>;

}  // namespace qsv
