#include "doctest.h"
#include "qsv/catalog.hpp"
#include "qsv/laurent.hpp"
#include "qsv/replay.hpp"
#include "support.hpp"

using namespace qsv;

namespace {

using Z = ZSeries<IntegerRing>;

Z laurent(long lo, const std::vector<long>& c, std::size_t order = 3)
{
    Z z(IntegerRing{}, order, lo, lo + static_cast<long>(c.size()) - 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        z.at(lo + static_cast<long>(i)) = IntSeries::monomial(IntegerRing{}, order, Integer(c[i]), 0);
    return z;
}

}  // namespace

TEST_SUITE("laurent")
{
    TEST_CASE("products and constant terms")
    {
        const Z p = zmul(laurent(-1, {1, 0, 1}), laurent(-1, {-1, 0, 1}));
        CHECK(p.coeff(-2) == IntSeries::monomial(IntegerRing{}, 3, Integer(-1), 0));
        CHECK(p.coeff(0).is_zero());
        CHECK(p.coeff(2) == IntSeries::monomial(IntegerRing{}, 3, Integer(1), 0));
        const Z a = laurent(-2, {4, 5, 6});
        CHECK(zmul(a, Z::constant(IntSeries::one(IntegerRing{}, 3))).coeff(-1) == a.coeff(-1));
        CHECK(constant_term(laurent(-1, {1, 3, 1})) == IntSeries::monomial(IntegerRing{}, 3, Integer(3), 0));
        CHECK(constant_term(laurent(-3, {1, 2})).is_zero());
    }

    TEST_CASE("unknown tails are never read")
    {
        Z a(IntegerRing{}, 2, 0, 3, true, false);
        CHECK_THROWS_AS(a.coeff(4), WindowError);
        CHECK(a.coeff(-1).is_zero());
        const Z b = laurent(0, {1, 1}, 2);
        const Z p = zmul(a, b);
        CHECK(p.hi() == 3);
        CHECK_FALSE(p.high_exact());
    }

    TEST_CASE("bilateral sum without denominators is theta")
    {
        const std::size_t N = 40;
        const auto z = expand_bilateral<IntegerRing>(IntegerRing{}, N, std::nullopt, 1, 1, 0, 1);
        // coefficient of z^{-k} is (-1)^k q^{k(k-1)/2}
        for (long k = -6; k <= 6; ++k) {
            auto want = IntSeries(IntegerRing{}, N);
            const long e = k * (k - 1) / 2;
            if (e <= static_cast<long>(N)) want.at(static_cast<std::size_t>(e)) = (k % 2 == 0) ? 1 : -1;
            CHECK(z.coeff(-k) == want);
        }
    }

    TEST_CASE("Euler expansion is 1/(cz;q)_inf")
    {
        const std::size_t N = 30;
        const auto e = expand_euler(IntegerRing{}, N, ZMono<IntegerRing>{Integer(1), 1}, 1, 1, false);
        // [z^2] = q^2/(q;q)_2
        const auto c2 = oracle::mul({0, 0, 1}, oracle::mul(oracle::binomial(1, 1, true, N), oracle::binomial(1, 2, true, N), N), N);
        CHECK(as_ll(e.coeff(2)) == c2);
        CHECK(e.high_exact());
    }

    TEST_CASE("constant term replay of the first transformation at t = q")
    {
        // CT of theta(1/z;q^2)/((tz;q^2)(-tz;q)) at t=q is (-q^2;q^2)_inf times the inner sum
        const std::size_t N = 30;
        Bindings b{{"t", Binding::parse("q")}};
        const auto out = replay_constant_term("lemma-4ta", IntegerRing{}, b, N);
        Evaluator<IntegerRing> ev(IntegerRing{});
        const auto want =
            ev.evaluate(*parse_expr("(-q^2;q^2)oo sum_k(q^(2k(2k-1)) q^(2k)/((q^4;q^4)_k (-q^2;q^2)_(2k)))"), {}, N);
        CHECK(out.ct_first == want);
        CHECK(out.ct_second == want);
        CHECK_FALSE(out.window_mismatch);
    }

    TEST_CASE("replays with formal t")
    {
        const TPolyRing R(6);
        for (const auto& id : replay_ids()) {
            Bindings b{{"t", Binding::symbolic()}, {"p", Binding::parse("q^2")}};
            const auto out = replay_constant_term(id, R, b, 20);
            CHECK_MESSAGE(out.ct_first == out.ct_second, id);
            CHECK_FALSE(out.window_mismatch);
        }
    }

    TEST_CASE("a wrong Laurent expression is caught on the window")
    {
        const std::size_t N = 30;
        const auto t = ZMono<IntegerRing>{Integer(1), 1};
        const auto left = zmul(expand_bilateral(IntegerRing{}, N, std::optional(t), 1, 1, 0, 1),
                               expand_euler(IntegerRing{}, N, ZMono<IntegerRing>{Integer(-1), 1}, 1, 1, true), std::pair{-3L, 3L});
        const auto right = expand_bilateral<IntegerRing>(IntegerRing{}, N, std::nullopt, 1, 1, 0, 1);
        // left lacks the (t;q)_inf factor
        CHECK(compare_window(left, right, -3, 3).has_value());
        CHECK_FALSE(check_bilateral_sum(IntegerRing{}, Binding::parse("q"), N).has_value());
        CHECK_FALSE(check_bilateral_sum(TPolyRing(5), Binding::symbolic(), 20).has_value());
    }
}
