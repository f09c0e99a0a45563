#pragma once

// Small independent reference implementations used as test oracles.
// Plain 64-bit arithmetic and direct enumeration; nothing from the library.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Poly = std::vector<long long>;

inline Poly mul(const Poly& a, const Poly& b, std::size_t n)
{
    Poly r(n + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

// (1 - s q^e) or its inverse as a geometric series, through q^n.
inline Poly binomial(long s, long e, bool inverse, std::size_t n)
{
    Poly r(n + 1, 0);
    r[0] = 1;
    if (e == 0) return r;  // callers avoid e = 0
    if (!inverse) {
        if (static_cast<std::size_t>(e) <= n) r[static_cast<std::size_t>(e)] -= s;
        return r;
    }
    long long p = 1;
    for (std::size_t k = static_cast<std::size_t>(e); k <= n; k += static_cast<std::size_t>(e)) {
        p *= s;
        r[k] = p;
    }
    return r;
}

struct Factor {
    long sign;
    long offset;
    long modulus;
    int power;
};

// product of (sign q^offset; q^modulus)_inf ^ power, through q^n
inline Poly product(const std::vector<Factor>& fs, std::size_t n)
{
    Poly r(n + 1, 0);
    r[0] = 1;
    for (const auto& f : fs) {
        const int reps = f.power < 0 ? -f.power : f.power;
        for (long e = f.offset; e <= static_cast<long>(n); e += f.modulus)
            for (int t = 0; t < reps; ++t) r = mul(r, binomial(f.sign, e, f.power < 0, n), n);
    }
    return r;
}

// Number of partitions of n with parts from `parts` (a part listed twice has two colors).
inline long long count(const std::vector<long>& parts, long n, std::size_t from = 0)
{
    if (n == 0) return 1;
    long long c = 0;
    for (std::size_t i = from; i < parts.size(); ++i)
        if (parts[i] <= n) c += count(parts, n - parts[i], i);
    return c;
}

inline std::vector<long> allowed_parts(long modulus, const std::vector<long>& residues, long n)
{
    std::vector<long> out;
    for (long p = 1; p <= n; ++p)
        for (long r : residues)
            if (p % modulus == r % modulus) out.push_back(p);
    return out;
}

inline Poly partition_counts(long modulus, const std::vector<long>& residues, long n)
{
    const auto parts = allowed_parts(modulus, residues, n);
    Poly r;
    for (long k = 0; k <= n; ++k) r.push_back(count(parts, k));
    return r;
}

}  // namespace oracle
