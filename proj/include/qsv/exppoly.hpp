#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qsv/error.hpp"

namespace qsv {

/// Polynomial in the summation index k with rational coefficients,
/// used for exponents such as k(k+1)/2 and Pochhammer lengths such as 2k+1.
class ExpPoly {
public:
    ExpPoly() = default;
    static ExpPoly constant(std::int64_t c) { return ExpPoly({c}, 1); }
    static ExpPoly index() { return ExpPoly({0, 1}, 1); }

    bool is_constant() const { return num_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(num_.size()) - 1; }
    std::int64_t denominator() const { return den_; }
    /// Coefficient of k^i multiplied by denominator().
    std::int64_t numerator(int i) const { return i < static_cast<int>(num_.size()) ? num_[i] : 0; }

    /// Value at k; throws when the value is not an integer.
    std::int64_t eval(std::int64_t k) const
    {
        std::int64_t acc = 0;
        for (auto it = num_.rbegin(); it != num_.rend(); ++it) acc = acc * k + *it;
        if (acc % den_ != 0) throw EvalError("exponent " + to_string() + " is not an integer at k=" + std::to_string(k));
        return acc / den_;
    }

    /// True when p(j+1) > p(j) for every j >= k (only decided for degree <= 2).
    bool increasing_from(std::int64_t k) const
    {
        if (degree() > 2) throw EvalError("exponents of degree above 2 in k are not supported: " + to_string());
        if (degree() < 1) return false;
        if (degree() == 2 && num_[2] < 0) return false;
        return eval_raw(k + 1) > eval_raw(k);
    }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b)
    {
        const std::int64_t den = std::lcm(a.den_, b.den_);
        std::vector<std::int64_t> n(std::max(a.num_.size(), b.num_.size()), 0);
        for (std::size_t i = 0; i < a.num_.size(); ++i) n[i] += a.num_[i] * (den / a.den_);
        for (std::size_t i = 0; i < b.num_.size(); ++i) n[i] += b.num_[i] * (den / b.den_);
        return ExpPoly(std::move(n), den);
    }
    friend ExpPoly operator-(const ExpPoly& a) { return a * constant(-1); }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b)
    {
        if (a.num_.empty() || b.num_.empty()) return ExpPoly();
        std::vector<std::int64_t> n(a.num_.size() + b.num_.size() - 1, 0);
        for (std::size_t i = 0; i < a.num_.size(); ++i)
            for (std::size_t j = 0; j < b.num_.size(); ++j) n[i + j] += a.num_[i] * b.num_[j];
        return ExpPoly(std::move(n), a.den_ * b.den_);
    }
    ExpPoly divided_by(std::int64_t d) const
    {
        if (d == 0) throw EvalError("division by zero in exponent");
        std::vector<std::int64_t> n = num_;
        if (d < 0) {
            for (auto& x : n) x = -x;
            d = -d;
        }
        return ExpPoly(std::move(n), den_ * d);
    }

    bool operator==(const ExpPoly&) const = default;

    std::string to_string() const
    {
        if (num_.empty()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const std::int64_t c = num_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!out.empty()) out += c < 0 ? "-" : "+";
            else if (c < 0) out += "-";
            const std::int64_t m = c < 0 ? -c : c;
            if (i == 0 || m != 1) out += std::to_string(m);
            if (i >= 1) out += "k";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        if (den_ != 1) out = "(" + out + ")/" + std::to_string(den_);
        return out;
    }

private:
    ExpPoly(std::vector<std::int64_t> num, std::int64_t den) : num_(std::move(num)), den_(den) { normalize(); }

    std::int64_t eval_raw(std::int64_t k) const
    {
        std::int64_t acc = 0;
        for (auto it = num_.rbegin(); it != num_.rend(); ++it) acc = acc * k + *it;
        return acc;  // scaled by den_ > 0, so comparisons are preserved
    }

    void normalize()
    {
        while (!num_.empty() && num_.back() == 0) num_.pop_back();
        std::int64_t g = den_;
        for (auto x : num_) g = std::gcd(g, x);
        if (g > 1) {
            for (auto& x : num_) x /= g;
            den_ /= g;
        }
    }

    std::vector<std::int64_t> num_;  // coefficients of k^i, times den_
    std::int64_t den_ = 1;
};

}  // namespace qsv
