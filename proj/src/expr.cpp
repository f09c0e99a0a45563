#include "qsv/expr.hpp"

#include <cctype>

#include "qsv/error.hpp"

namespace qsv {

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Int, std::string(src.substr(i, j - i)), col});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), col});
            i = j;
        } else if (std::string_view("(),;+-*/^_.").find(ch) != std::string_view::npos) {
            out.push_back({Tok::Punct, std::string(1, ch), col});
            ++i;
        } else {
            throw ParseError(col, std::string("unexpected character '") + ch + "'");
        }
    }
    out.push_back({Tok::End, "", src.size() + 1});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        if (peek().kind != Tok::End) throw ParseError(peek().column, "unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool is_punct(const char* p, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
    }
    bool is_ident(const char* name) const { return peek().kind == Tok::Ident && peek().text == name; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    void expect(const char* p)
    {
        if (!is_punct(p)) throw ParseError(peek().column, std::string("expected '") + p + "'" + found());
        next();
    }
    std::string found() const
    {
        return peek().kind == Tok::End ? " but reached end of input" : " but found '" + peek().text + "'";
    }

    static ExprPtr make(auto node, std::size_t column)
    {
        auto e = std::make_shared<Expr>();
        e->node = std::move(node);
        e->column = column;
        return e;
    }

    ExprPtr expr()
    {
        const std::size_t col = peek().column;
        AddNode add;
        int sign = 1;
        if (is_punct("+") || is_punct("-")) sign = next().text == "-" ? -1 : 1;
        add.terms.emplace_back(sign, term());
        while (is_punct("+") || is_punct("-")) {
            sign = next().text == "-" ? -1 : 1;
            add.terms.emplace_back(sign, term());
        }
        if (add.terms.size() == 1 && add.terms[0].first == 1) return add.terms[0].second;
        return make(std::move(add), col);
    }

    bool starts_factor() const
    {
        const Token& t = peek();
        if (t.kind == Tok::Int) return true;
        if (t.kind == Tok::Ident) return t.text != "oo";
        return t.kind == Tok::Punct && t.text == "(";
    }

    ExprPtr term()
    {
        const std::size_t col = peek().column;
        MulNode mul;
        mul.factors.push_back(factor());
        for (;;) {
            if (is_punct("*")) {
                next();
                mul.factors.push_back(factor());
            } else if (is_punct("/")) {
                next();
                auto f = factor();
                f.second = -f.second;
                mul.factors.push_back(std::move(f));
            } else if (starts_factor()) {
                mul.factors.push_back(factor());
            } else {
                break;
            }
        }
        if (mul.factors.size() == 1 && mul.factors[0].second == ExpPoly::constant(1)) return mul.factors[0].first;
        return make(std::move(mul), col);
    }

    std::pair<ExprPtr, ExpPoly> factor()
    {
        ExprPtr a = atom();
        if (is_punct("^")) {
            next();
            return {a, exponent_atom()};
        }
        return {a, ExpPoly::constant(1)};
    }

    // Exponent after '^' or '_': INT | k | -INT | (epoly)
    ExpPoly exponent_atom()
    {
        if (is_punct("-")) {
            next();
            return -exponent_atom();
        }
        if (peek().kind == Tok::Int) return ExpPoly::constant(integer(next()));
        if (is_ident("k")) {
            next();
            return ExpPoly::index();
        }
        if (is_punct("(")) {
            next();
            ExpPoly p = epoly();
            expect(")");
            return p;
        }
        throw ParseError(peek().column, "expected an exponent (integer, k or parenthesized expression)" + found());
    }

    std::int64_t integer(const Token& t)
    {
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.column, "integer literal out of range");
        }
    }

    ExpPoly epoly()
    {
        ExpPoly acc;
        int sign = 1;
        if (is_punct("+") || is_punct("-")) sign = next().text == "-" ? -1 : 1;
        acc = sign < 0 ? -eterm() : eterm();
        while (is_punct("+") || is_punct("-")) {
            sign = next().text == "-" ? -1 : 1;
            acc = sign < 0 ? acc - eterm() : acc + eterm();
        }
        return acc;
    }

    ExpPoly eterm()
    {
        ExpPoly acc = epower();
        for (;;) {
            if (is_punct("*")) {
                next();
                acc = acc * epower();
            } else if (is_punct("/")) {
                next();
                if (peek().kind != Tok::Int) throw ParseError(peek().column, "exponents may only be divided by an integer");
                const std::int64_t d = integer(next());
                if (d == 0) throw ParseError(peek().column, "division by zero in exponent");
                acc = acc.divided_by(d);
            } else if (peek().kind == Tok::Int || is_ident("k") || is_punct("(")) {
                acc = acc * epower();
            } else {
                return acc;
            }
        }
    }

    ExpPoly epower()
    {
        ExpPoly base = efactor();
        if (is_punct("^")) {
            next();
            if (peek().kind != Tok::Int) throw ParseError(peek().column, "expected integer power in exponent");
            const std::int64_t n = integer(next());
            ExpPoly r = ExpPoly::constant(1);
            for (std::int64_t i = 0; i < n; ++i) r = r * base;
            return r;
        }
        return base;
    }

    ExpPoly efactor()
    {
        if (peek().kind == Tok::Int) return ExpPoly::constant(integer(next()));
        if (is_ident("k")) {
            next();
            return ExpPoly::index();
        }
        if (is_punct("(")) {
            next();
            ExpPoly p = epoly();
            expect(")");
            return p;
        }
        throw ParseError(peek().column, "expected integer, k or '(' in exponent" + found());
    }

    // True when the '(' at the cursor opens a Pochhammer symbol, i.e. a ';'
    // occurs at nesting depth one before the matching ')'.
    bool paren_is_pochhammer() const
    {
        int depth = 0;
        for (std::size_t i = pos_; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (t.kind != Tok::Punct) continue;
            if (t.text == "(") ++depth;
            else if (t.text == ")") {
                if (--depth == 0) return false;
            } else if (t.text == ";" && depth == 1) {
                return true;
            }
        }
        return false;
    }

    std::vector<ExprPtr> arg_list()
    {
        std::vector<ExprPtr> args;
        args.push_back(expr());
        while (is_punct(",")) {
            next();
            args.push_back(expr());
        }
        return args;
    }

    ExprPtr atom()
    {
        const Token& t = peek();
        const std::size_t col = t.column;
        if (t.kind == Tok::Int) {
            next();
            return make(NumberNode{Integer(t.text)}, col);
        }
        if (t.kind == Tok::Ident) {
            const std::string name = next().text;
            if (name == "theta") {
                expect("(");
                ThetaNode th;
                th.args = arg_list();
                expect(";");
                th.base = expr();
                expect(")");
                return make(std::move(th), col);
            }
            if (name == "sum") {
                expect("_");
                if (!is_ident("k")) throw ParseError(peek().column, "only the index k is supported in sum_k" + found());
                next();
                expect("(");
                ExprPtr body = expr();
                expect(")");
                return make(SumNode{body}, col);
            }
            if (name == "k") throw ParseError(col, "the index k may only appear in exponents and lengths");
            if (name == "oo") throw ParseError(col, "'oo' must follow a Pochhammer symbol");
            if (std::isupper(static_cast<unsigned char>(name[0]))) {
                CallNode call{name, std::nullopt, nullptr};
                if (is_punct(".")) {
                    next();
                    if (is_ident("sum")) call.side = Side::Sum;
                    else if (is_ident("prod")) call.side = Side::Product;
                    else throw ParseError(peek().column, "expected 'sum' or 'prod' after '.'" + found());
                    next();
                }
                expect("(");
                call.arg = expr();
                expect(")");
                return make(std::move(call), col);
            }
            return make(SymbolNode{name}, col);
        }
        if (is_punct("(")) {
            if (paren_is_pochhammer()) {
                next();
                PochNode p;
                p.args = arg_list();
                expect(";");
                p.base = expr();
                expect(")");
                if (is_ident("oo")) {
                    next();
                } else if (is_punct("_")) {
                    next();
                    if (is_ident("oo")) next();
                    else p.length = exponent_atom();
                } else {
                    throw ParseError(peek().column, "expected 'oo' or '_length' after Pochhammer symbol" + found());
                }
                return make(std::move(p), col);
            }
            next();
            ExprPtr inner = expr();
            expect(")");
            return inner;
        }
        throw ParseError(col, "expected a number, symbol, Pochhammer symbol, theta, sum or '('" + found());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string exp_text(const ExpPoly& p)
{
    const std::string s = p.to_string();
    bool simple = p.is_constant() && p.denominator() == 1 && p.numerator(0) >= 0;
    if (p == ExpPoly::index()) simple = true;
    return simple ? s : "(" + s + ")";
}

void print(const Expr& e, std::string& out);

void print_args(const std::vector<ExprPtr>& args, const Expr& base, std::string& out)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        print(*args[i], out);
    }
    out += ";";
    print(base, out);
}

void print(const Expr& e, std::string& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberNode>) {
                out += n.value.get_str();
            } else if constexpr (std::is_same_v<T, SymbolNode>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, PochNode>) {
                out += "(";
                print_args(n.args, *n.base, out);
                out += ")";
                out += n.length ? "_" + exp_text(*n.length) : "oo";
            } else if constexpr (std::is_same_v<T, ThetaNode>) {
                out += "theta(";
                print_args(n.args, *n.base, out);
                out += ")";
            } else if constexpr (std::is_same_v<T, SumNode>) {
                out += "sum_k(";
                print(*n.body, out);
                out += ")";
            } else if constexpr (std::is_same_v<T, CallNode>) {
                out += n.name;
                if (n.side) out += *n.side == Side::Sum ? ".sum" : ".prod";
                out += "(";
                print(*n.arg, out);
                out += ")";
            } else if constexpr (std::is_same_v<T, AddNode>) {
                out += "(";
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    if (i || n.terms[i].first < 0) out += n.terms[i].first < 0 ? " - " : " + ";
                    print(*n.terms[i].second, out);
                }
                out += ")";
            } else if constexpr (std::is_same_v<T, MulNode>) {
                bool first = true;
                for (const auto& [f, ex] : n.factors) {
                    const bool inverse = ex.is_constant() && ex.numerator(0) < 0;
                    const ExpPoly mag = inverse ? -ex : ex;
                    if (first) {
                        if (inverse) out += "1/";
                    } else {
                        out += inverse ? " / " : " * ";
                    }
                    first = false;
                    const bool wrap = std::holds_alternative<MulNode>(f->node);
                    if (wrap) out += "(";
                    print(*f, out);
                    if (wrap) out += ")";
                    if (!(mag == ExpPoly::constant(1))) out += "^" + exp_text(mag);
                }
            }
        },
        e.node);
}

void walk(const Expr& e, const auto& fn)
{
    fn(e);
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PochNode> || std::is_same_v<T, ThetaNode>) {
                for (const auto& a : n.args) walk(*a, fn);
                walk(*n.base, fn);
            } else if constexpr (std::is_same_v<T, SumNode>) {
                walk(*n.body, fn);
            } else if constexpr (std::is_same_v<T, CallNode>) {
                walk(*n.arg, fn);
            } else if constexpr (std::is_same_v<T, AddNode>) {
                for (const auto& [s, t] : n.terms) walk(*t, fn);
            } else if constexpr (std::is_same_v<T, MulNode>) {
                for (const auto& [f, ex] : n.factors) walk(*f, fn);
            }
        },
        e.node);
}

}  // namespace

ExprPtr parse_expr(std::string_view text)
{
    return Parser(text).parse();
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(e, out);
    return out;
}

std::set<std::string> collect_parameters(const Expr& e)
{
    std::set<std::string> names;
    walk(e, [&](const Expr& x) {
        if (const auto* s = std::get_if<SymbolNode>(&x.node); s && s->name != "q") names.insert(s->name);
    });
    return names;
}

std::set<std::string> collect_calls(const Expr& e)
{
    std::set<std::string> names;
    walk(e, [&](const Expr& x) {
        if (const auto* c = std::get_if<CallNode>(&x.node)) names.insert(c->name);
    });
    return names;
}

}  // namespace qsv
