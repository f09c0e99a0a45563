#include "doctest.h"
#include "qsv/catalog.hpp"
#include "qsv/evaluator.hpp"
#include "support.hpp"

using namespace qsv;

namespace {

IntSeries eval_int(const std::string& text, const Bindings& b, std::size_t n)
{
    return Evaluator<IntegerRing>(IntegerRing{}, Catalog::builtin().lookup()).evaluate(*parse_expr(text), b, n);
}

Bindings bind(std::initializer_list<std::pair<const char*, const char*>> kv)
{
    Bindings b;
    for (const auto& [k, v] : kv) b[k] = Binding::parse(v);
    return b;
}

}  // namespace

TEST_SUITE("evaluator")
{
    TEST_CASE("sums term by term")
    {
        // sum q^{k^2}/(q;q)_k through q^6 against partitions into parts = 1, 4 mod 5
        const auto g = eval_int("sum_k(q^(k^2)/(q;q)_k)", {}, 6);
        CHECK(as_ll(g) == oracle::partition_counts(5, {1, 4}, 6));
        CHECK(as_ll(eval_int("sum_k(q^(k^2)/(q;q)_k)", {}, 0)) == std::vector<long long>{1});
    }

    TEST_CASE("summand oracle for a sum with two Pochhammer denominators")
    {
        const std::size_t N = 40;
        oracle::Poly acc(N + 1, 0);
        for (long k = 0; 2 * k * k <= static_cast<long>(N); ++k) {
            oracle::Poly term(N + 1, 0);
            term[static_cast<std::size_t>(2 * k * k)] = 1;
            for (long j = 0; j < k; ++j) {
                term = oracle::mul(term, oracle::binomial(1, 4 * (j + 1), true, N), N);
                term = oracle::mul(term, oracle::binomial(-1, 2 * j + 1, true, N), N);
            }
            for (std::size_t i = 0; i <= N; ++i) acc[i] += term[i];
        }
        CHECK(as_ll(eval_int("sum_k(q^(2k^2)/((q^4;q^4)_k (-q;q^2)_k))", {}, N)) == acc);
    }

    TEST_CASE("parameters")
    {
        const auto a = eval_int("(-x;q)oo", bind({{"x", "q^2"}}), 10);
        CHECK(as_ll(a) == oracle::product({{-1, 2, 1, 1}}, 10));
        const auto z = eval_int("sum_k(x^k/(q;q)_k)", bind({{"x", "0"}}), 10);
        CHECK(z == IntSeries::one(IntegerRing{}, 10));
        CHECK_THROWS_AS(eval_int("(-x;q)oo", {}, 5), EvalError);
    }

    TEST_CASE("negative powers through Laurent evaluation")
    {
        Evaluator<IntegerRing> ev(IntegerRing{});
        const auto l = ev.evaluate_laurent(*parse_expr("q^-2 (q;q)oo"), {}, 5);
        CHECK(l.offset == -2);
        CHECK(l.prec() == 5);
        CHECK(l.coeff(-2) == 1);
        CHECK(l.coeff(-1) == -1);
        CHECK_THROWS_AS(ev.evaluate(*parse_expr("q^-2 (q;q)oo"), {}, 5), EvalError);
    }

    TEST_CASE("named series and substitution")
    {
        const auto a = eval_int("A.prod(q)", {}, 30);
        CHECK(a == eval_int("1/(q,q^2,q^5,q^6;q^7)oo", {}, 30));
        const auto a2 = eval_int("A.prod(-q^2)", {}, 30);
        CHECK(a2 == a.truncated(15).substituted(-1, 2, 30));
        CHECK_THROWS_AS(eval_int("Nope(q)", {}, 5), EvalError);
    }

    TEST_CASE("formal t")
    {
        const TPolyRing R(6);
        Evaluator<TPolyRing> ev(R);
        Bindings b{{"t", Binding::symbolic()}};
        // 1/(t;q)_inf = sum_k t^k/(q;q)_k
        const auto lhs = ev.evaluate(*parse_expr("sum_k(t^k/(q;q)_k)"), b, 12);
        const auto rhs = ev.evaluate(*parse_expr("1/(t;q)oo"), b, 12);
        CHECK(lhs == rhs);
        CHECK_THROWS_AS(Evaluator<IntegerRing>(IntegerRing{}).evaluate(*parse_expr("(t;q)oo"), b, 4), EvalError);
    }

    TEST_CASE("theta at arguments of either size")
    {
        Evaluator<IntegerRing> ev(IntegerRing{});
        // theta(z;p) = -z theta(1/z;p)
        for (long e : {-3, 1, 2, 5, 9}) {
            Bindings b{{"z", Binding::monomial(MonomialSpec::q_power(e))}, {"w", Binding::monomial(MonomialSpec::q_power(-e))}};
            const auto l = ev.evaluate_laurent(*parse_expr("theta(z;q^4)"), b, 40);
            const auto r = ev.evaluate_laurent(*parse_expr("-z theta(w;q^4)"), b, 40);
            for (long n = std::min(l.offset, r.offset); n <= 40; ++n) CHECK(l.coeff(n) == r.coeff(n));
        }
    }
}
