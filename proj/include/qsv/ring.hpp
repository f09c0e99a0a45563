#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsv/error.hpp"

namespace qsv {

using Integer = mpz_class;

// A coefficient ring is a small value type exposing element arithmetic.
// Two models exist: IntegerRing (exact integers) and TPolyRing (integer
// polynomials in t truncated above a fixed degree).

struct IntegerRing {
    using Element = Integer;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(long v) const { return v; }

    bool is_zero(const Element& a) const { return sgn(a) == 0; }
    bool is_one(const Element& a) const { return a == 1; }
    bool is_unit(const Element& a) const { return a == 1 || a == -1; }
    Element inverse(const Element& a) const
    {
        if (!is_unit(a)) throw NotInvertibleError("integer " + a.get_str() + " is not a unit");
        return a;
    }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }

    void add_to(Element& acc, const Element& a) const { acc += a; }
    void sub_from(Element& acc, const Element& a) const { acc -= a; }
    void add_mul(Element& acc, const Element& a, const Element& b) const
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    void sub_mul(Element& acc, const Element& a, const Element& b) const
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    void scale(Element& a, const Element& b) const { a *= b; }

    bool equal(const Element& a, const Element& b) const { return a == b; }
    std::string to_string(const Element& a) const { return a.get_str(); }

    /// scalar * t^degree; the integer ring has no t.
    Element monomial(const Integer& scalar, long degree) const
    {
        if (degree != 0) throw EvalError("symbolic t is not available over the integer ring");
        return scalar;
    }
    /// Smallest t-degree present, or -1 for zero.
    long t_valuation(const Element& a) const { return is_zero(a) ? -1 : 0; }
    bool has_t() const { return false; }
    long t_cap() const { return -1; }

    bool operator==(const IntegerRing&) const = default;
};

/// Element of Z[t]/(t^{cap+1}).
struct TPoly {
    std::vector<Integer> c;  // size cap+1
    bool operator==(const TPoly&) const = default;
};

class TPolyRing {
public:
    using Element = TPoly;

    explicit TPolyRing(long cap) : cap_(cap)
    {
        if (cap < 0) throw ContractError("t-degree cap must be nonnegative");
    }

    long t_cap() const { return cap_; }
    bool has_t() const { return true; }

    Element zero() const { return TPoly{std::vector<Integer>(static_cast<std::size_t>(cap_) + 1)}; }
    Element one() const { return from_int(1); }
    Element from_int(long v) const
    {
        Element r = zero();
        r.c[0] = v;
        return r;
    }
    Element monomial(const Integer& scalar, long degree) const
    {
        if (degree < 0) throw EvalError("negative power of t");
        Element r = zero();
        if (degree <= cap_) r.c[static_cast<std::size_t>(degree)] = scalar;
        return r;
    }

    bool is_zero(const Element& a) const
    {
        for (const auto& x : a.c)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_one(const Element& a) const
    {
        if (a.c[0] != 1) return false;
        for (std::size_t i = 1; i < a.c.size(); ++i)
            if (sgn(a.c[i]) != 0) return false;
        return true;
    }
    bool is_unit(const Element& a) const { return a.c[0] == 1 || a.c[0] == -1; }
    Element inverse(const Element& a) const;

    Element add(const Element& a, const Element& b) const
    {
        Element r = a;
        add_to(r, b);
        return r;
    }
    Element sub(const Element& a, const Element& b) const
    {
        Element r = a;
        sub_from(r, b);
        return r;
    }
    Element mul(const Element& a, const Element& b) const
    {
        Element r = zero();
        add_mul(r, a, b);
        return r;
    }
    Element neg(const Element& a) const
    {
        Element r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }

    void add_to(Element& acc, const Element& a) const
    {
        for (std::size_t i = 0; i < acc.c.size(); ++i) acc.c[i] += a.c[i];
    }
    void sub_from(Element& acc, const Element& a) const
    {
        for (std::size_t i = 0; i < acc.c.size(); ++i) acc.c[i] -= a.c[i];
    }
    void add_mul(Element& acc, const Element& a, const Element& b) const
    {
        const std::size_t n = acc.c.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(a.c[i]) == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j)
                if (sgn(b.c[j]) != 0) mpz_addmul(acc.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
        }
    }
    void sub_mul(Element& acc, const Element& a, const Element& b) const
    {
        const std::size_t n = acc.c.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(a.c[i]) == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j)
                if (sgn(b.c[j]) != 0) mpz_submul(acc.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
        }
    }
    void scale(Element& a, const Element& b) const { a = mul(a, b); }

    bool equal(const Element& a, const Element& b) const { return a == b; }
    std::string to_string(const Element& a) const;
    long t_valuation(const Element& a) const
    {
        for (std::size_t i = 0; i < a.c.size(); ++i)
            if (sgn(a.c[i]) != 0) return static_cast<long>(i);
        return -1;
    }

    bool operator==(const TPolyRing&) const = default;

private:
    long cap_;
};

}  // namespace qsv
