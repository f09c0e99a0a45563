#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qsv/exppoly.hpp"
#include "qsv/ring.hpp"

namespace qsv {

/// Which builder a named series reference resolves to.
enum class Side { Sum, Product };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberNode {
    Integer value;
};
/// `q` or a parameter name (t, x, y, z, p, r, ...).
struct SymbolNode {
    std::string name;
};
/// (a1,...,an; base)_length; an empty length means infinite.
struct PochNode {
    std::vector<ExprPtr> args;
    ExprPtr base;
    std::optional<ExpPoly> length;
};
/// theta(a1,...,an; base) = product of theta(ai; base).
struct ThetaNode {
    std::vector<ExprPtr> args;
    ExprPtr base;
};
/// sum_k(body), k = 0, 1, 2, ...
struct SumNode {
    ExprPtr body;
};
/// NAME(arg) or NAME.sum(arg) / NAME.prod(arg): a catalog series evaluated at arg = ±q^m.
struct CallNode {
    std::string name;
    std::optional<Side> side;
    ExprPtr arg;
};
struct AddNode {
    std::vector<std::pair<int, ExprPtr>> terms;  // (sign, term)
};
struct MulNode {
    std::vector<std::pair<ExprPtr, ExpPoly>> factors;  // factor ^ exponent
};

struct Expr {
    std::variant<NumberNode, SymbolNode, PochNode, ThetaNode, SumNode, CallNode, AddNode, MulNode> node;
    std::size_t column = 0;
};

/// Parses a q-expression. Grammar in docs/syntax.md. Throws ParseError.
ExprPtr parse_expr(std::string_view text);

std::string to_string(const Expr& e);

/// Parameter names referenced (excluding q).
std::set<std::string> collect_parameters(const Expr& e);
/// Names of catalog series referenced through calls.
std::set<std::string> collect_calls(const Expr& e);

}  // namespace qsv
