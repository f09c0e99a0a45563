#include "doctest.h"
#include "qsv/catalog.hpp"
#include "qsv/expr.hpp"

using namespace qsv;

namespace {

std::size_t error_column(const std::string& text)
{
    try {
        parse_expr(text);
    } catch (const ParseError& e) {
        return e.column();
    }
    return 0;
}

}  // namespace

TEST_SUITE("expr")
{
    TEST_CASE("syntax errors carry the column")
    {
        CHECK(error_column("(q;q") == 5);
        CHECK(error_column("q^") == 3);
        CHECK(error_column("(q,q^2;q^3)x") == 12);
        CHECK(error_column("1 + * q") == 5);
        CHECK(error_column("theta(z)") == 8);
        CHECK(error_column("k") == 1);
        CHECK(error_column("q^(k/0)") == 7);
        CHECK(error_column("A.foo(q)") == 3);
        CHECK(error_column("q @ 2") == 3);
        CHECK(error_column("oo") == 1);
    }

    TEST_CASE("printing and parsing round-trip")
    {
        for (const auto& r : Catalog::builtin().records()) {
            if (!r.lhs_expr) continue;
            for (const auto* e : {r.lhs_expr.get(), r.rhs_expr.get()}) {
                const std::string once = to_string(*e);
                CHECK_MESSAGE(to_string(*parse_expr(once)) == once, r.id);
            }
        }
    }

    TEST_CASE("parameters and calls")
    {
        const auto e = parse_expr("(-x;p)oo sum_k(p^(k(k-1)) y^k/((p^2;p^2)_k (-x;p)_k))");
        CHECK(collect_parameters(*e) == std::set<std::string>{"p", "x", "y"});
        const auto f = parse_expr("1/(q^2;q^4)oo^2 (q C(-q^2) + A.prod(q^8))");
        CHECK(collect_calls(*f) == std::set<std::string>{"A", "C"});
        CHECK(collect_parameters(*f).empty());
    }

    TEST_CASE("juxtaposition binds like multiplication")
    {
        CHECK(to_string(*parse_expr("2 q t")) == to_string(*parse_expr("2*q*t")));
        CHECK(to_string(*parse_expr("x/y theta(x;p)")) == to_string(*parse_expr("x * y^-1 * theta(x;p)")));
    }
}
