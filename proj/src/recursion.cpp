#include "qsv/recursion.hpp"

#include <chrono>
#include <functional>

#include "qsv/products.hpp"

namespace qsv {

namespace {

const std::vector<ClassSpec> kClasses = {
    {"a", 7, {1, 2, 5, 6}},
    {"b", 7, {1, 3, 4, 6}},
    {"c", 7, {2, 3, 4, 5}},
    {"d", 14, {2, 3, 4, 10, 11, 12}},
    {"e", 14, {1, 4, 6, 8, 10, 13}},
    {"f", 14, {2, 5, 6, 8, 9, 12}},
    {"g", 5, {1, 4}},
    {"h", 5, {2, 3}},
    {"phi", 2, {1, 1}},
    {"psi", 4, {1, 2, 3}},
};

// Number of colors available to parts of size p.
long colors(const ClassSpec& s, long p)
{
    long k = 0;
    for (long r : s.residues)
        if (p % s.modulus == r % s.modulus) ++k;
    return k;
}

// x[i] for 0 <= i < n; the recursions only look backwards.
const Integer& prior(const CoeffSeq& x, long i, long n)
{
    if (i < 0 || i >= n) throw ContractError("recursion referenced index " + std::to_string(i) + " at n = " + std::to_string(n));
    return x[static_cast<std::size_t>(i)];
}

int alt(long m) { return (m & 1) ? -1 : 1; }

// floor division for possibly negative numerators
long fdiv(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

const std::vector<ClassSpec>& partition_classes() { return kClasses; }

const ClassSpec& partition_class(const std::string& label)
{
    for (const auto& c : kClasses)
        if (c.label == label) return c;
    throw UnknownIdError(label);
}

CoeffSeq count_dp(const ClassSpec& spec, std::size_t n)
{
    CoeffSeq out(n + 1);
    out[0] = 1;
    for (long p = 1; p <= static_cast<long>(n); ++p) {
        const long k = colors(spec, p);
        for (long c = 0; c < k; ++c)
            for (std::size_t m = static_cast<std::size_t>(p); m <= n; ++m) out[m] += out[m - static_cast<std::size_t>(p)];
    }
    return out;
}

CoeffSeq count_bruteforce(const ClassSpec& spec, std::size_t n)
{
    if (n > 60) throw ContractError("count_bruteforce is limited to n <= 60");
    // (part, color) pairs in decreasing order; a partition is a nonincreasing list of them.
    std::vector<std::pair<long, long>> kinds;
    for (long p = static_cast<long>(n); p >= 1; --p)
        for (long c = colors(spec, p) - 1; c >= 0; --c) kinds.emplace_back(p, c);
    CoeffSeq out(n + 1);
    for (std::size_t total = 0; total <= n; ++total) {
        unsigned long long count = 0;
        std::function<void(std::size_t, long)> walk = [&](std::size_t from, long left) {
            if (left == 0) {
                ++count;
                return;
            }
            for (std::size_t i = from; i < kinds.size(); ++i)
                if (kinds[i].first <= left) walk(i, left - kinds[i].first);
        };
        walk(0, static_cast<long>(total));
        out[total] = static_cast<unsigned long>(count);
    }
    return out;
}

std::map<std::string, CoeffSeq> run_recursion_abc(std::size_t n)
{
    const CoeffSeq phi = count_dp(partition_class("phi"), n);
    CoeffSeq a(n + 1), b(n + 1), c(n + 1);
    a[0] = b[0] = c[0] = 1;
    for (long N = 1; N <= static_cast<long>(n); ++N) {
        const long k = N / 2;
        Integer& A = a[static_cast<std::size_t>(N)];
        Integer& B = b[static_cast<std::size_t>(N)];
        Integer& C = c[static_cast<std::size_t>(N)];
        if (N % 2 == 0) {
            for (long m = 0; m <= k / 4; ++m) A += phi[static_cast<std::size_t>(k - 4 * m)] * prior(a, m, N);
            for (long m = 0; m <= k; ++m) B += alt(m) * phi[static_cast<std::size_t>(k - m)] * prior(a, m, N);
            for (long m = 0; m <= k; ++m) C += alt(m) * phi[static_cast<std::size_t>(k - m)] * prior(b, m, N);
        } else {
            for (long m = 0; m <= k; ++m) A += alt(m) * phi[static_cast<std::size_t>(k - m)] * prior(c, m, N);
            for (long m = 0; m <= k / 4; ++m) B += phi[static_cast<std::size_t>(k - 4 * m)] * prior(b, m, N);
            for (long m = 0; m <= fdiv(k - 1, 4); ++m) C += phi[static_cast<std::size_t>(k - 4 * m - 1)] * prior(c, m, N);
        }
    }
    return {{"a", a}, {"b", b}, {"c", c}};
}

std::map<std::string, CoeffSeq> run_recursion_def(std::size_t n)
{
    const CoeffSeq psi = count_dp(partition_class("psi"), n);
    CoeffSeq d(n + 1), e(n + 1), f(n + 1);
    d[0] = e[0] = f[0] = 1;
    for (long N = 1; N <= static_cast<long>(n); ++N) {
        const long k = N / 2;
        Integer& D = d[static_cast<std::size_t>(N)];
        Integer& E = e[static_cast<std::size_t>(N)];
        Integer& F = f[static_cast<std::size_t>(N)];
        if (N % 2 == 0) {
            for (long m = 0; m <= k / 4; ++m) D += psi[static_cast<std::size_t>(k - 4 * m)] * prior(d, m, N);
            for (long m = 0; m <= k / 2; ++m) E += alt(m) * psi[static_cast<std::size_t>(k - 2 * m)] * prior(d, m, N);
            for (long m = 0; m <= k / 2; ++m) F += alt(m) * psi[static_cast<std::size_t>(k - 2 * m)] * prior(e, m, N);
        } else {
            for (long m = 0; m <= fdiv(k - 1, 2); ++m)
                D += alt(m) * psi[static_cast<std::size_t>(k - 2 * m - 1)] * prior(f, m, N);
            for (long m = 0; m <= k / 4; ++m) E += psi[static_cast<std::size_t>(k - 4 * m)] * prior(e, m, N);
            for (long m = 0; m <= fdiv(k - 2, 4); ++m) F += psi[static_cast<std::size_t>(k - 4 * m - 2)] * prior(f, m, N);
        }
    }
    return {{"d", d}, {"e", e}, {"f", f}};
}

std::map<std::string, CoeffSeq> run_recursion_gh(std::size_t n)
{
    const IntSeries P = expand_product<IntegerRing>(parse_product("(q^8;q^8)oo/(q^2;q^2)oo"), n);
    CoeffSeq g(n + 1), h(n + 1);
    g[0] = h[0] = 1;
    for (long N = 1; N <= static_cast<long>(n); ++N) {
        Integer G, H;
        for (long i = 0; i <= N; ++i) {
            const Integer& p = P[static_cast<std::size_t>(i)];
            if (sgn(p) == 0) continue;
            const long m = N - i;
            if (m % 16 == 0) G += p * prior(g, m / 16, N);
            if (m % 4 == 1) G += alt((m - 1) / 4) * p * prior(h, (m - 1) / 4, N);
            if (m % 4 == 0) H += alt(m / 4) * p * prior(g, m / 4, N);
            if (m % 16 == 3) H += p * prior(h, (m - 3) / 16, N);
        }
        g[static_cast<std::size_t>(N)] = G;
        h[static_cast<std::size_t>(N)] = H;
    }
    return {{"g", g}, {"h", h}};
}

std::map<std::string, CoeffSeq> run_recursion(const std::string& family, std::size_t n)
{
    if (family == "abc") return run_recursion_abc(n);
    if (family == "def") return run_recursion_def(n);
    if (family == "gh") return run_recursion_gh(n);
    throw EvalError("unknown family '" + family + "' (expected abc, def or gh)");
}

std::string sequence_record(const std::string& label)
{
    if (label == "g" || label == "h") return "rr-" + std::string(1, static_cast<char>(label[0] - 'a' + 'A'));
    if (label.size() == 1 && label[0] >= 'a' && label[0] <= 'f')
        return "norm-" + std::string(1, static_cast<char>(label[0] - 'a' + 'A'));
    throw UnknownIdError(label);
}

std::vector<VerifyReport> check_recursion(const Catalog& c, const std::string& family, std::size_t n)
{
    std::vector<VerifyReport> out;
    for (const auto& [label, seq] : run_recursion(family, n)) {
        const auto start = std::chrono::steady_clock::now();
        const auto& rec = c.get(sequence_record(label));
        VerifyReport rep{rec.id, rec.label, n, {{"sequence", label}, {"check", "recursion"}}, true, std::nullopt, 0, ""};
        const IntSeries prod = product_side(c, rec.id, {}, n);
        const IntSeries sum = sum_side(c, rec.id, {}, n);
        for (std::size_t i = 0; i <= n && !rep.first_mismatch; ++i) {
            if (seq[i] != prod[i]) rep.first_mismatch = Mismatch{static_cast<long>(i), seq[i].get_str(), prod[i].get_str()};
            else if (seq[i] != sum[i]) rep.first_mismatch = Mismatch{static_cast<long>(i), seq[i].get_str(), sum[i].get_str()};
        }
        rep.pass = !rep.first_mismatch;
        rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace qsv
