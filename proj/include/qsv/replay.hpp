#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsv/evaluator.hpp"
#include "qsv/laurent.hpp"

namespace qsv {

/// Transformations that can be re-derived as constant terms of Laurent series in z.
bool has_replay(const std::string& id);
std::vector<std::string> replay_ids();

/// First difference between two Laurent expressions: z-exponent, q-exponent and both coefficients.
struct ZMismatch {
    long z = 0;
    std::size_t exponent = 0;
    std::string first;
    std::string second;
};

template <class Ring>
struct ReplayOutcome {
    Series<Ring> ct_first;   // constant term of the expression built from the sum side
    Series<Ring> ct_second;  // constant term of the expression built from the other side
    Series<Ring> prefactor;  // ct_first = prefactor * lhs and ct_second = prefactor * rhs
    /// Where the two Laurent expressions first differ on [-2, 2].
    std::optional<ZMismatch> window_mismatch;
};

/// Bindings use the parameter names of the catalog record (t, and p where present).
/// Over a ring with t, `t` may be symbolic; `cap` bounds the bilateral sums then.
template <class Ring>
ReplayOutcome<Ring> replay_constant_term(const std::string& id, const Ring& ring, const Bindings& b,
                                         std::size_t order, long cap = 4);

/// (t;q)_inf * (t z;q)_inf * sum_k (-1)^k q^{k(k-1)/2} z^{-k}/(t;q)_k against theta(1/z;q),
/// coefficient by coefficient for z-exponents in [-window, window].
template <class Ring>
std::optional<ZMismatch> check_bilateral_sum(const Ring& ring, const Binding& t,
                                                                std::size_t order, long window = 3);

extern template ReplayOutcome<IntegerRing> replay_constant_term(const std::string&, const IntegerRing&,
                                                                const Bindings&, std::size_t, long);
extern template ReplayOutcome<TPolyRing> replay_constant_term(const std::string&, const TPolyRing&,
                                                              const Bindings&, std::size_t, long);
extern template std::optional<ZMismatch> check_bilateral_sum(const IntegerRing&, const Binding&,
                                                                                std::size_t, long);
extern template std::optional<ZMismatch> check_bilateral_sum(const TPolyRing&, const Binding&,
                                                                                std::size_t, long);

}  // namespace qsv
