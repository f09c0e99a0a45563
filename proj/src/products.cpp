#include "qsv/products.hpp"

#include <algorithm>
#include <cmath>

#include "qsv/expr.hpp"

namespace qsv {

namespace {

struct SignedPower {
    int sign = 1;
    long exp = 0;
};

long constant_exponent(const ExpPoly& p, std::size_t column)
{
    if (!p.is_constant() || p.denominator() != 1) throw ParseError(column, "product exponents must be integer constants");
    return static_cast<long>(p.numerator(0));
}

// ±q^e with constant integer e; used for Pochhammer arguments and bases.
SignedPower signed_power(const Expr& e)
{
    if (const auto* n = std::get_if<NumberNode>(&e.node)) {
        if (n->value == 1) return {1, 0};
        throw ParseError(e.column, "expected a power of q");
    }
    if (const auto* s = std::get_if<SymbolNode>(&e.node)) {
        if (s->name == "q") return {1, 1};
        throw ParseError(e.column, "parameter '" + s->name + "' is not allowed in a product specification");
    }
    if (const auto* a = std::get_if<AddNode>(&e.node)) {
        if (a->terms.size() == 1) {
            SignedPower r = signed_power(*a->terms[0].second);
            r.sign *= a->terms[0].first;
            return r;
        }
    }
    if (const auto* m = std::get_if<MulNode>(&e.node)) {
        SignedPower r;
        for (const auto& [f, ex] : m->factors) {
            const long n = constant_exponent(ex, f->column);
            const SignedPower b = signed_power(*f);
            r.exp += b.exp * n;
            if (b.sign < 0 && (n & 1)) r.sign = -r.sign;
        }
        return r;
    }
    throw ParseError(e.column, "expected a power of q");
}

void collect(const Expr& e, long power, ProductSpec& out)
{
    if (const auto* p = std::get_if<PochNode>(&e.node)) {
        const SignedPower base = signed_power(*p->base);
        if (base.sign != 1 || base.exp < 1) throw ParseError(p->base->column, "product base must be q^m with m >= 1");
        std::optional<long> len;
        if (p->length) len = constant_exponent(*p->length, e.column);
        for (const auto& a : p->args) {
            const SignedPower arg = signed_power(*a);
            if (arg.exp < 0) throw ParseError(a->column, "negative power of q in a factor");
            out.factors.push_back(FactorSpec{arg.sign, arg.exp, base.exp, static_cast<int>(power), len});
        }
        return;
    }
    if (const auto* m = std::get_if<MulNode>(&e.node)) {
        for (const auto& [f, ex] : m->factors) collect(*f, power * constant_exponent(ex, f->column), out);
        return;
    }
    if (const auto* a = std::get_if<AddNode>(&e.node); a && a->terms.size() == 1) {
        if (a->terms[0].first < 0 && (power & 1)) out.prefactor_sign = -out.prefactor_sign;
        collect(*a->terms[0].second, power, out);
        return;
    }
    const SignedPower mono = signed_power(e);
    out.prefactor += mono.exp * power;
    if (mono.sign < 0 && (power & 1)) out.prefactor_sign = -out.prefactor_sign;
}

std::string q_power(int sign, long e)
{
    std::string s = sign < 0 ? "-" : "";
    if (e == 0) return s + "1";
    s += "q";
    if (e != 1) s += "^" + std::to_string(e);
    return s;
}

}  // namespace

void validate_factor(const FactorSpec& f)
{
    if (f.sign != 1 && f.sign != -1) throw ContractError("factor sign must be +1 or -1");
    if (f.offset < 0) throw ContractError("factor offset must be nonnegative");
    if (f.modulus < 1) throw ContractError("factor modulus must be at least 1");
    if (f.power == 0) throw ContractError("factor power must be nonzero");
    const bool nonempty = !f.length || *f.length != 0;
    if (f.sign == 1 && f.offset == 0 && nonempty) {
        if (f.length && *f.length < 0) return;
        throw ContractError("factor " + format_factor(f) + " is identically zero or not invertible");
    }
    if (f.sign == -1 && f.offset == 0 && f.power < 0 && nonempty && !(f.length && *f.length < 0))
        throw ContractError("factor " + format_factor(f) + " has constant term 2 and cannot be inverted");
}

ProductSpec parse_product(std::string_view text)
{
    ExprPtr e = parse_expr(text);
    ProductSpec out;
    collect(*e, 1, out);
    if (out.prefactor < 0) throw ParseError(1, "product prefactor must be a nonnegative power of q");
    return out;
}

std::string format_factor(const FactorSpec& f)
{
    std::string s = "(" + q_power(f.sign, f.offset) + ";" + q_power(1, f.modulus) + ")";
    s += f.length ? "_" + (*f.length < 0 ? "(" + std::to_string(*f.length) + ")" : std::to_string(*f.length)) : "oo";
    return s;
}

std::string format_product(const ProductSpec& p)
{
    std::string num;
    std::string den;
    auto append = [](std::string& dst, const std::string& item) {
        if (!dst.empty()) dst += " ";
        dst += item;
    };
    if (p.prefactor != 0 || p.prefactor_sign < 0) append(num, q_power(p.prefactor_sign, p.prefactor));
    for (const auto& f : p.factors) {
        const int r = std::abs(f.power);
        std::string item = format_factor(f);
        if (r != 1) item += "^" + std::to_string(r);
        append(f.power > 0 ? num : den, item);
    }
    if (num.empty()) num = "1";
    if (den.empty()) return num;
    return num + "/(" + den + ")";
}

ThetaTerms theta_terms(int c_sign, long e, int base_sign, long m, long order)
{
    if (m < 1) throw ContractError("theta base must be a positive power of q");
    ThetaTerms out;
    // f(k) = m k(k-1)/2 + e k is convex; walk outward from its minimum.
    const double kstar = 0.5 - static_cast<double>(e) / static_cast<double>(m);
    const long k0 = static_cast<long>(std::floor(kstar));
    auto f = [&](long k) { return m * k * (k - 1) / 2 + e * k; };
    out.offset = std::min(f(k0), f(k0 + 1));
    auto emit = [&](long k) {
        int sign = (k & 1) ? -1 : 1;
        if (base_sign < 0 && ((k * (k - 1) / 2) & 1)) sign = -sign;
        if (c_sign < 0 && (k & 1)) sign = -sign;
        out.terms.emplace_back(f(k), sign);
    };
    for (long k = k0 + 1; f(k) <= order; ++k) emit(k);
    for (long k = k0; f(k) <= order; --k) emit(k);
    return out;
}

ThetaResult theta_expand(const MonomialSpec& z, long m, std::size_t order)
{
    if (z.zero) throw ContractError("theta argument must be nonzero");
    if (z.exp < 0 || z.exp > m) throw ContractError("theta_expand needs 0 <= e <= m; use the evaluator for other arguments");
    ThetaResult r{IntSeries(IntegerRing{}, order), false};
    const ThetaTerms t = theta_terms(z.sign, z.exp, 1, m, static_cast<long>(order));
    for (const auto& [ex, sign] : t.terms) r.series.at(static_cast<std::size_t>(ex)) += sign;
    r.vanishes = z.sign == 1 && z.exp % m == 0;
    return r;
}

}  // namespace qsv
