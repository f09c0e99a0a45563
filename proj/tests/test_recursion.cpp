#include "doctest.h"
#include "qsv/recursion.hpp"
#include "support.hpp"

using namespace qsv;

namespace {

std::vector<long long> ll(const CoeffSeq& s)
{
    std::vector<long long> out;
    for (const auto& x : s) out.push_back(x.get_si());
    return out;
}

}  // namespace

TEST_SUITE("recursion")
{
    TEST_CASE("small counts")
    {
        CHECK(ll(count_dp(partition_class("phi"), 4)) == std::vector<long long>{1, 2, 3, 6, 9});
        CHECK(ll(count_dp(partition_class("psi"), 5)) == std::vector<long long>{1, 1, 2, 3, 4, 6});
        CHECK(ll(count_dp(partition_class("a"), 5)) == std::vector<long long>{1, 1, 2, 2, 3, 4});
        CHECK(count_dp(partition_class("a"), 0)[0] == 1);
        CHECK(count_dp(partition_class("b"), 4)[4] == 3);
        CHECK(count_dp(partition_class("d"), 1)[1] == 0);
        CHECK(count_dp(partition_class("d"), 4)[4] == 2);
        CHECK(ll(count_dp(partition_class("g"), 6)) == std::vector<long long>{1, 1, 1, 1, 2, 2, 3});
        CHECK(ll(count_dp(partition_class("h"), 6)) == std::vector<long long>{1, 0, 1, 1, 1, 1, 2});
        CHECK_THROWS_AS(partition_class("zz"), UnknownIdError);
    }

    TEST_CASE("dynamic programming agrees with enumeration")
    {
        for (const auto& c : partition_classes()) {
            CHECK_MESSAGE(count_dp(c, 25) == count_bruteforce(c, 25), c.label);
            CHECK_MESSAGE(ll(count_dp(c, 25)) == oracle::partition_counts(c.modulus, c.residues, 25), c.label);
        }
        CHECK_THROWS_AS(count_bruteforce(partition_class("a"), 61), ContractError);
    }

    TEST_CASE("recursions reproduce the partition counts")
    {
        const std::size_t N = 200;
        for (const char* fam : {"abc", "def", "gh"})
            for (const auto& [label, seq] : run_recursion(fam, N))
                CHECK_MESSAGE(seq == count_dp(partition_class(label), N), label);
        CHECK(run_recursion_gh(0).at("g") == CoeffSeq{1});
        CHECK(ll(run_recursion_def(4).at("d")) == std::vector<long long>{1, 0, 1, 1, 2});
    }

    TEST_CASE("recursion reports")
    {
        for (const char* fam : {"abc", "def", "gh"})
            for (const auto& r : check_recursion(Catalog::builtin(), fam, 100)) CHECK_MESSAGE(r.pass, r.params.at("sequence"));
        CHECK_THROWS_AS(run_recursion("xyz", 5), EvalError);
    }
}
