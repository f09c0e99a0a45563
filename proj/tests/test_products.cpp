#include "doctest.h"
#include "qsv/catalog.hpp"
#include "qsv/products.hpp"
#include "support.hpp"

using namespace qsv;

TEST_SUITE("products")
{
    TEST_CASE("basic products")
    {
        CHECK(as_ll(expand_factor<IntegerRing>(FactorSpec{1, 1, 1, 1, std::nullopt}, 7)) ==
              std::vector<long long>{1, -1, -1, 0, 0, 1, 0, 1});
        CHECK(as_ll(expand_factor<IntegerRing>(FactorSpec{-1, 1, 1, 1, std::nullopt}, 5)) ==
              std::vector<long long>{1, 1, 1, 2, 2, 3});
        CHECK(as_ll(expand_factor<IntegerRing>(FactorSpec{1, 3, 2, 1, 0L}, 5)) ==
              std::vector<long long>{1, 0, 0, 0, 0, 0});
        CHECK(as_ll(expand_product<IntegerRing>(parse_product("1/(q,q^2,q^5,q^6;q^7)oo"), 5)) ==
              std::vector<long long>{1, 1, 2, 2, 3, 4});
        CHECK(as_ll(expand_product<IntegerRing>(parse_product("(q^3,q^4,q^7;q^7)oo/(q^2;q^2)oo"), 0)) ==
              std::vector<long long>{1});
        CHECK(as_ll(expand_product<IntegerRing>(parse_product("1/(q,q^4;q^5)oo"), 6)) ==
              std::vector<long long>{1, 1, 1, 1, 2, 2, 3});
    }

    TEST_CASE("catalog product sides match the schoolbook oracle")
    {
        const std::size_t N = 60;
        for (const auto* r : mutable_records(Catalog::builtin())) {
            const ProductSpec p = parse_product(r->rhs);
            std::vector<oracle::Factor> fs;
            for (const auto& f : p.factors) fs.push_back({f.sign, f.offset, f.modulus, f.power});
            auto want = oracle::product(fs, N);
            CHECK_MESSAGE(as_ll(expand_product<IntegerRing>(p, N)) == want, r->id);
        }
    }

    TEST_CASE("product specs round-trip through text")
    {
        for (const auto* r : mutable_records(Catalog::builtin())) {
            const ProductSpec p = parse_product(r->rhs);
            CHECK(parse_product(format_product(p)) == p);
        }
        ProductSpec p;
        p.prefactor = 3;
        p.prefactor_sign = -1;
        p.factors = {{-1, 1, 1, 1, 4L}, {1, 2, 3, -2, std::nullopt}};
        CHECK(parse_product(format_product(p)) == p);
    }

    TEST_CASE("finite and negative lengths")
    {
        // (a;q)_{-k} (a q^{-k};q)_k = 1
        auto s = IntSeries::one(IntegerRing{}, 30);
        apply_pochhammer(s, Integer(1), 5, 1, 1, -3L, 1);
        apply_pochhammer(s, Integer(1), 2, 1, 1, 3L, 1);
        CHECK(s == IntSeries::one(IntegerRing{}, 30));
        // (q;q^2)_3 = (1-q)(1-q^3)(1-q^5)
        auto f = expand_factor<IntegerRing>(FactorSpec{1, 1, 2, 1, 3L}, 10);
        auto g = oracle::mul(oracle::mul(oracle::binomial(1, 1, false, 10), oracle::binomial(1, 3, false, 10), 10),
                             oracle::binomial(1, 5, false, 10), 10);
        CHECK(as_ll(f) == g);
    }

    TEST_CASE("invalid factors")
    {
        CHECK_THROWS_AS(validate_factor(FactorSpec{1, 0, 1, 1, std::nullopt}), ContractError);
        CHECK_THROWS_AS(validate_factor(FactorSpec{-1, 0, 1, -1, std::nullopt}), ContractError);
        CHECK_THROWS_AS(validate_factor(FactorSpec{1, 1, 0, 1, std::nullopt}), ContractError);
        CHECK_THROWS_AS(validate_factor(FactorSpec{1, 1, 1, 0, std::nullopt}), ContractError);
        CHECK_NOTHROW(validate_factor(FactorSpec{-1, 0, 1, 1, std::nullopt}));
        CHECK_THROWS_AS(parse_product("(t;q)oo"), ParseError);
        CHECK_THROWS_AS(parse_product("(q;q)oo + 1"), ParseError);
    }

    TEST_CASE("theta by the triple product")
    {
        const auto th = theta_expand(MonomialSpec::q_power(1), 3, 7);
        CHECK_FALSE(th.vanishes);
        CHECK(th.series == expand_factor<IntegerRing>(FactorSpec{1, 1, 1, 1, std::nullopt}, 7));
        for (long m : {2, 5, 7})
            for (long e = 1; e < m; ++e)
                for (int sign : {1, -1}) {
                    // theta(z;p) = (z, p/z, p; p)_inf
                    const auto want = oracle::product({{sign, e, m, 1}, {sign, m - e, m, 1}, {1, m, m, 1}}, 80);
                    CHECK(as_ll(theta_expand(MonomialSpec::q_power(e, sign), m, 80).series) == want);
                }
        const auto zero = theta_expand(MonomialSpec::q_power(0), 1, 20);
        CHECK(zero.vanishes);
        CHECK(zero.series.is_zero());
    }
}
