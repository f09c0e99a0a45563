#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "qsv/expr.hpp"
#include "qsv/monomial.hpp"
#include "qsv/series.hpp"

namespace qsv {

/// Value of a parameter: a monomial ±q^e (or 0), or the formal variable t
/// (optionally negated), which needs a ring with t.
struct Binding {
    enum class Kind { Monomial, Symbolic };
    Kind kind = Kind::Monomial;
    MonomialSpec value;
    int symbolic_sign = 1;

    static Binding monomial(MonomialSpec m) { return Binding{Kind::Monomial, m, 1}; }
    static Binding symbolic(int sign = 1) { return Binding{Kind::Symbolic, {}, sign}; }
    /// Parses "t", "-t", or a monomial such as "-q^3".
    static Binding parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const Binding&) const = default;
};

using Bindings = std::map<std::string, Binding>;

std::string to_string(const Bindings& b);

/// q^offset * s, known modulo q^{prec+1}; s.order() == prec - offset.
template <class Ring>
struct Laurent {
    long offset = 0;
    Series<Ring> s;

    long prec() const { return offset + static_cast<long>(s.order()); }
    /// Coefficient of q^n (zero outside the stored range); n <= prec().
    typename Ring::Element coeff(long n) const
    {
        if (n < offset) return s.ring().zero();
        return s[static_cast<std::size_t>(n - offset)];
    }
    /// Series in q of the given order; throws when negative powers are present.
    Series<Ring> to_series(std::size_t order) const;
};

/// Looks up the definition of a named series (e.g. "A") for one side.
/// Returns nullptr when the name is unknown.
using SeriesLookup = std::function<ExprPtr(const std::string& name, Side side)>;

template <class Ring>
class Evaluator {
public:
    Evaluator(Ring ring, SeriesLookup lookup = {}, Side default_side = Side::Sum);

    /// Named series whose values are fixed instead of evaluated (used to iterate
    /// functional equations). Order must be at least the evaluation order.
    void set_override(const std::string& name, Series<Ring> value);
    void clear_overrides();

    Series<Ring> evaluate(const Expr& e, const Bindings& b, std::size_t order);
    Laurent<Ring> evaluate_laurent(const Expr& e, const Bindings& b, long prec);

    const Ring& ring() const { return ring_; }

private:
    struct Impl;
    Ring ring_;
    std::shared_ptr<Impl> impl_;
};

extern template struct Laurent<IntegerRing>;
extern template struct Laurent<TPolyRing>;
extern template class Evaluator<IntegerRing>;
extern template class Evaluator<TPolyRing>;

}  // namespace qsv
