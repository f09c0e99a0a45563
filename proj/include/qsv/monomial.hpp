#pragma once

#include <string>
#include <string_view>

#include "qsv/series.hpp"

namespace qsv {

/// A value ±q^exp (or the constant 0) substituted for a parameter such as t, x, y, z.
struct MonomialSpec {
    int sign = 1;
    long exp = 0;
    bool zero = false;

    static MonomialSpec q_power(long e, int sign = 1) { return MonomialSpec{sign, e, false}; }
    static MonomialSpec null() { return MonomialSpec{1, 0, true}; }

    /// Parses "q", "-q", "q^3", "-q^2", "1", "-1", "0".
    static MonomialSpec parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const MonomialSpec&) const = default;
};

/// q -> ±q^m applied to a series; exp must be at least 1.
template <class Ring>
Series<Ring> substitute(const Series<Ring>& a, const MonomialSpec& s)
{
    if (s.zero) throw ContractError("cannot substitute q -> 0");
    if (s.exp < 1) throw ContractError("substitution exponent must be at least 1");
    return a.substituted(s.sign, static_cast<std::size_t>(s.exp));
}

}  // namespace qsv
