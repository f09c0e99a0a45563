#pragma once

#include <vector>

#include "oracle.hpp"
#include "qsv/series.hpp"

inline std::vector<long long> as_ll(const qsv::IntSeries& s)
{
    std::vector<long long> out;
    for (const auto& c : s.coeffs()) out.push_back(c.get_si());
    return out;
}

inline qsv::IntSeries from_ll(const std::vector<long long>& v)
{
    std::vector<qsv::Integer> c;
    for (long long x : v) c.emplace_back(static_cast<long>(x));
    return qsv::IntSeries::from_coeffs(qsv::IntegerRing{}, std::move(c));
}
