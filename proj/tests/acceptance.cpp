// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "qsv/catalog.hpp"
#include "qsv/recursion.hpp"

using namespace qsv;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome all_pass(const std::vector<VerifyReport>& reps, std::size_t expected_min)
{
    Outcome o;
    std::size_t failed = 0;
    std::string first;
    for (const auto& r : reps) {
        if (r.pass) continue;
        ++failed;
        if (first.empty()) {
            first = r.id;
            for (const auto& [k, v] : r.params) first += " " + k + "=" + v;
            if (r.first_mismatch) first += " at q^" + std::to_string(r.first_mismatch->exponent);
        }
    }
    o.pass = failed == 0 && reps.size() >= expected_min;
    o.detail = std::to_string(reps.size() - failed) + "/" + std::to_string(reps.size()) + " checks";
    if (reps.size() < expected_min) o.detail += ", expected at least " + std::to_string(expected_min);
    if (!first.empty()) o.detail += ", first failure " + first;
    return o;
}

std::vector<VerifyReport> records(const Catalog& c, const std::vector<std::string>& keys, std::size_t n)
{
    std::vector<VerifyReport> out;
    for (const auto& k : keys)
        for (const auto* r : c.select(k)) {
            auto v = verify_record(c, *r, n);
            out.insert(out.end(), v.begin(), v.end());
        }
    return out;
}

std::size_t count_instances(const Catalog& c, const std::string& id)
{
    return c.get(id).instances.size();
}

}  // namespace

int main()
{
    const Catalog& c = Catalog::builtin();
    int failures = 0;
    auto criterion = [&](int n, const std::string& name, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f s", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << name << " (" << o.detail << ", " << buf
                  << ")" << std::endl;
        if (!o.pass) ++failures;
    };

    criterion(1, "twelve septic identities through N=500", [&] {
        return all_pass(records(c, {"septic"}, 500), 12);
    });
    criterion(2, "normalized families A-F and G, H through N=500", [&] {
        return all_pass(records(c, {"normalized"}, 500), 8);
    });
    criterion(3, "transformation suite through N=200", [&] {
        Outcome o = all_pass(check_transformations(c, 200), 30);
        const bool coverage = count_instances(c, "lemma-4ta") >= 6 && count_instances(c, "lemma-4tb") >= 6 &&
                              count_instances(c, "eq-ttqu") >= 3 && count_instances(c, "eq-tbt") >= 6 &&
                              count_instances(c, "eq-tpt") >= 3 && count_instances(c, "lemma-ttqa") >= 2 &&
                              count_instances(c, "lemma-ttqb") >= 1;
        if (!coverage) o = {false, o.detail + ", instance coverage too small"};
        return o;
    });
    criterion(4, "theta, Euler and bilateral identities through N=300", [&] {
        auto reps = check_theta_identities(c, 300);
        const auto e = check_euler(c, 300);
        reps.insert(reps.end(), e.begin(), e.end());
        Outcome o = all_pass(reps, 2 * 23 + 3 * 6);
        return o;
    });
    criterion(5, "constant-term replays with certified z-windows through N=200", [&] {
        return all_pass(check_replays(c, 200), 15);
    });
    criterion(6, "functional equations with sum and product builders through N=150", [&] {
        std::vector<VerifyReport> reps;
        for (const char* f : {"abc", "def", "gh"}) {
            auto v = check_functional_equations(c, f, 150, true);
            reps.insert(reps.end(), v.begin(), v.end());
        }
        return all_pass(reps, 8 * 4);
    });
    criterion(7, "recursions against products through N=300; counting oracle for n <= 40", [&] {
        std::vector<VerifyReport> reps;
        for (const char* f : {"abc", "def", "gh"}) {
            auto v = check_recursion(c, f, 300);
            reps.insert(reps.end(), v.begin(), v.end());
        }
        Outcome o = all_pass(reps, 8);
        std::size_t agree = 0;
        for (const auto& cls : partition_classes())
            if (count_dp(cls, 40) == count_bruteforce(cls, 40)) ++agree;
        o.detail += ", " + std::to_string(agree) + "/" + std::to_string(partition_classes().size()) + " sequences enumerated";
        o.pass = o.pass && agree == partition_classes().size() && agree == 10;
        return o;
    });
    criterion(8, "20 random single-field mutations all detected by q^60", [&] {
        const unsigned long base = 20240601;
        std::size_t caught = 0;
        long worst = -1;
        std::string missed;
        for (unsigned long i = 0; i < 20; ++i) {
            const Mutation m = random_mutation(c, base + i);
            const VerifyReport r = verify_mutation(c, m, 120);
            if (!r.pass && r.first_mismatch && r.first_mismatch->exponent <= 60) {
                ++caught;
                worst = std::max(worst, r.first_mismatch->exponent);
            } else if (missed.empty()) {
                missed = m.id + " " + m.after;
            }
        }
        Outcome o{caught == 20, std::to_string(caught) + "/20 detected, latest first mismatch at q^" + std::to_string(worst)};
        if (!missed.empty()) o.detail += ", missed " + missed;
        return o;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
