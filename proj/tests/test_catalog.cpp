#include <set>

#include "doctest.h"
#include "qsv/catalog.hpp"
#include "support.hpp"

using namespace qsv;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

}  // namespace

TEST_SUITE("catalog")
{
    TEST_CASE("every id the interface promises is present")
    {
        for (const char* id : {"slater-31", "slater-32", "slater-33", "slater-59", "slater-60", "slater-61", "slater-80",
                               "slater-81", "slater-82", "slater-117", "slater-118", "slater-119", "rr-G", "rr-H",
                               "norm-A", "norm-B", "norm-C", "norm-D", "norm-E", "norm-F", "lemma-4ta", "lemma-4tb",
                               "eq-ttqu", "eq-tbt", "eq-tpt", "lemma-ttqa", "lemma-ttqb", "theta-thd", "theta-thm",
                               "euler-ei", "euler-eib", "eq-abs", "fe-A", "fe-B", "fe-C", "deff-D", "deff-E",
                               "deff-F", "rrr-G", "rrr-H"})
            CHECK_MESSAGE(cat().find(id) != nullptr, id);
        CHECK(cat().select("equiv-ar").size() == 3);
        CHECK(cat().select("equiv-defa").size() == 3);
        CHECK_THROWS_AS(cat().get("no-such"), UnknownIdError);
    }

    TEST_CASE("sides at small order")
    {
        CHECK(as_ll(sum_side(cat(), "norm-A", {}, 5)) == std::vector<long long>{1, 1, 2, 2, 3, 4});
        CHECK(as_ll(sum_side(cat(), "rr-G", {}, 6)) == oracle::partition_counts(5, {1, 4}, 6));
        CHECK(as_ll(product_side(cat(), "norm-D", {}, 4)) == std::vector<long long>{1, 0, 1, 1, 2});
        CHECK(as_ll(product_side(cat(), "norm-C", {}, 5)) == std::vector<long long>{1, 0, 1, 1, 2, 2});
        CHECK(as_ll(product_side(cat(), "slater-33", {}, 0)) == std::vector<long long>{1});
        for (const auto& r : cat().records()) {
            if (!r.lhs_expr || !r.params.empty()) continue;
            CHECK_MESSAGE(as_ll(sum_side(cat(), r.id, {}, 0)) == std::vector<long long>{1}, r.id);
        }
    }

    TEST_CASE("normalized product sides count partitions")
    {
        const std::vector<std::pair<const char*, std::vector<long>>> cases = {
            {"norm-A", {1, 2, 5, 6}}, {"norm-B", {1, 3, 4, 6}}, {"norm-C", {2, 3, 4, 5}}};
        for (const auto& [id, res] : cases)
            CHECK(as_ll(sum_side(cat(), id, {}, 30)) == oracle::partition_counts(7, res, 30));
        CHECK(as_ll(sum_side(cat(), "norm-D", {}, 30)) == oracle::partition_counts(14, {2, 3, 4, 10, 11, 12}, 30));
        CHECK(as_ll(sum_side(cat(), "norm-E", {}, 30)) == oracle::partition_counts(14, {1, 4, 6, 8, 10, 13}, 30));
        CHECK(as_ll(sum_side(cat(), "norm-F", {}, 30)) == oracle::partition_counts(14, {2, 5, 6, 8, 9, 12}, 30));
        CHECK(as_ll(sum_side(cat(), "rr-H", {}, 30)) == oracle::partition_counts(5, {2, 3}, 30));
    }

    TEST_CASE("verify")
    {
        CHECK(verify(cat(), cat().get("slater-33"), {}, 200).pass);
        Bindings t{{"t", Binding::parse("q")}};
        CHECK(verify(cat(), cat().get("lemma-4ta"), t, 200).pass);
        Bindings tbt{{"p", Binding::parse("q^2")}, {"r", Binding::parse("q")}, {"x", Binding::parse("0")},
                     {"y", Binding::parse("q")}};
        CHECK(verify(cat(), cat().get("eq-tbt"), tbt, 100).pass);
        Bindings thd{{"p", Binding::parse("q")}, {"z", Binding::parse("q")}};
        CHECK(verify(cat(), cat().get("theta-thd"), thd, 50).pass);
        for (const char* z : {"q", "-q^2"}) {
            CHECK(verify(cat(), cat().get("euler-ei"), {{"z", Binding::parse(z)}}, 100).pass);
            CHECK(verify(cat(), cat().get("euler-eib"), {{"z", Binding::parse(z)}}, 100).pass);
        }
    }

    TEST_CASE("parameter ranges are enforced")
    {
        CHECK_THROWS_AS(verify(cat(), cat().get("euler-ei"), {{"z", Binding::parse("1")}}, 10), EvalError);
        CHECK_THROWS_AS(verify(cat(), cat().get("euler-ei"), {{"z", Binding::parse("-1")}}, 10), EvalError);
        CHECK_THROWS_AS(verify(cat(), cat().get("lemma-4ta"), {}, 10), EvalError);
        CHECK_THROWS_AS(verify(cat(), cat().get("slater-33"), {{"t", Binding::parse("q")}}, 10), EvalError);
        CHECK_THROWS_AS(verify(cat(), cat().get("eq-tpt"), {{"x", Binding::symbolic()}, {"y", Binding::parse("q")}}, 10),
                        EvalError);
    }

    TEST_CASE("a corrupted product side fails at the first affected exponent")
    {
        ProductSpec p = parse_product(cat().get("slater-33").rhs);
        p.prefactor = 1;
        const auto lhs = sum_side(cat(), "slater-33", {}, 40);
        const auto rhs = expand_product<IntegerRing>(p, 40);
        CHECK(first_mismatch(lhs, rhs) == std::optional<std::size_t>(0));

        ProductSpec q = parse_product(cat().get("norm-A").rhs);
        q.factors[2].offset += 1;  // q^5 -> q^6
        CHECK(first_mismatch(sum_side(cat(), "norm-A", {}, 40), expand_product<IntegerRing>(q, 40)) ==
              std::optional<std::size_t>(5));
    }

    TEST_CASE("equivalences and functional equations")
    {
        for (const auto& r : check_equivalences(cat(), 100)) CHECK_MESSAGE(r.pass, r.id);
        for (const auto& r : check_equivalences(cat(), 0)) CHECK(r.pass);
        CHECK(check_equivalences(cat(), 10).size() == 6);
        const auto fe = check_functional_equations(cat(), "abc", 60, false);
        CHECK(fe.size() == 6);
        for (const auto& r : fe) CHECK_MESSAGE(r.pass, r.id);
        for (const auto& r : check_functional_equations(cat(), "def", 60)) CHECK_MESSAGE(r.pass, r.id);
        for (const auto& r : check_functional_equations(cat(), "gh", 0)) CHECK(r.pass);
        CHECK_THROWS_AS(check_functional_equations(cat(), "xyz", 10), EvalError);
    }

    TEST_CASE("functional systems determine the series")
    {
        for (const char* fam : {"abc", "def", "gh"}) {
            const auto sol = solve_functional_system(cat(), fam, 80);
            for (const auto& [name, s] : sol)
                CHECK_MESSAGE(s == product_side(cat(), cat().find_series(name)->id, {}, 80), name);
        }
    }

    TEST_CASE("mutations are valid, deterministic and detected")
    {
        std::set<std::string> fields;
        for (unsigned long seed = 0; seed < 40; ++seed) {
            const Mutation m = random_mutation(cat(), seed);
            const Mutation again = random_mutation(cat(), seed);
            CHECK(m.after == again.after);
            CHECK(m.after != m.before);
            fields.insert(m.field);
            const auto rep = verify_mutation(cat(), m, 80);
            CHECK_FALSE(rep.pass);
            REQUIRE(rep.first_mismatch);
            CHECK(rep.first_mismatch->exponent <= 60);
        }
        CHECK(fields.size() == 4);
    }

    TEST_CASE("catalogs load from text")
    {
        const auto c = Catalog::from_json(R"J({"records":[{"id":"x","lhs":"sum_k(z^k/(q;q)_k)","rhs":"1/(z;q)oo",
            "params":[{"name":"z","min_exp":1}],"instances":[{"z":"q"}]}]})J");
        CHECK(verify_record(c, c.get("x"), 30).front().pass);
        CHECK_THROWS(Catalog::from_json(R"J({"records":[{"id":"x","lhs":"(q;q","rhs":"1"}]})J"));
        CHECK_THROWS(Catalog::from_json(R"J({"records":[{"id":"x","lhs":"1","rhs":"1"},{"id":"x","lhs":"1","rhs":"1"}]})J"));
    }
}
