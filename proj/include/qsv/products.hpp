#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsv/monomial.hpp"
#include "qsv/series.hpp"

namespace qsv {

/// One factor (sign*q^offset; q^modulus)_length ^ power.
struct FactorSpec {
    int sign = 1;
    long offset = 1;
    long modulus = 1;
    int power = 1;
    std::optional<long> length;  // nullopt = infinite

    bool operator==(const FactorSpec&) const = default;
};

/// prefactor_sign * q^prefactor * product of factors.
struct ProductSpec {
    std::vector<FactorSpec> factors;
    long prefactor = 0;
    int prefactor_sign = 1;

    bool operator==(const ProductSpec&) const = default;
};

/// Parses a pure product such as `(q^3,q^4,q^7;q^7)oo / (q^2;q^2)oo`.
/// Throws ParseError (with column) for syntax errors or non-product input.
ProductSpec parse_product(std::string_view text);
std::string format_product(const ProductSpec& p);
std::string format_factor(const FactorSpec& f);

/// Throws ContractError when the factor is identically zero or otherwise invalid.
void validate_factor(const FactorSpec& f);

/// In place: s *= (c q^e; b q^m)_len ^ power, where b = ±1 is the base sign and
/// len is nullopt for an infinite product. Negative len follows
/// (a;q)_{-k} = 1/(a q^{-k}; q)_k, which needs e - k*m >= 0.
template <class Ring>
void apply_pochhammer(Series<Ring>& s, const typename Ring::Element& c, long e, int base_sign, long m,
                      std::optional<long> len, long power)
{
    const Ring& ring = s.ring();
    if (m < 1) throw ContractError("Pochhammer base must be a positive power of q");
    if (e < 0) throw ContractError("Pochhammer argument must not have a negative power of q");
    if (power == 0 || ring.is_zero(c)) return;
    const long order = static_cast<long>(s.order());

    auto binomial = [&](const typename Ring::Element& coef, long exponent, bool multiply) {
        if (exponent > order) return;
        for (long r = 0; r < (power < 0 ? -power : power); ++r) {
            if (multiply) s.mul_binomial(coef, static_cast<std::size_t>(exponent));
            else s.div_binomial(coef, static_cast<std::size_t>(exponent));
        }
    };
    const typename Ring::Element neg_c = ring.neg(c);
    auto coef_at = [&](long j) -> const typename Ring::Element& { return (base_sign < 0 && (j & 1)) ? neg_c : c; };

    if (!len || *len >= 0) {
        const bool multiply = power > 0;
        for (long j = 0; !len || j < *len; ++j) {
            const long ex = e + j * m;
            if (ex > order) break;
            binomial(coef_at(j), ex, multiply);
        }
        return;
    }
    const long k = -*len;
    if (e - k * m < 0) throw ContractError("negative-length Pochhammer symbol would need negative powers of q");
    for (long j = 1; j <= k; ++j) binomial(coef_at(j), e - j * m, power < 0);
}

template <class Ring>
Series<Ring> expand_factor(const FactorSpec& f, std::size_t order, const Ring& ring = Ring{})
{
    validate_factor(f);
    Series<Ring> s = Series<Ring>::one(ring, order);
    apply_pochhammer(s, ring.from_int(f.sign), f.offset, 1, f.modulus, f.length, f.power);
    return s;
}

template <class Ring>
Series<Ring> expand_product(const ProductSpec& p, std::size_t order, const Ring& ring = Ring{})
{
    if (p.prefactor < 0) throw ContractError("product prefactor must be a nonnegative power of q");
    Series<Ring> s(ring, order);
    if (static_cast<std::size_t>(p.prefactor) > order) return s;
    s = Series<Ring>::monomial(ring, order, ring.from_int(p.prefactor_sign), static_cast<std::size_t>(p.prefactor));
    for (const auto& f : p.factors) {
        validate_factor(f);
        apply_pochhammer(s, ring.from_int(f.sign), f.offset, 1, f.modulus, f.length, f.power);
    }
    return s;
}

/// theta(c q^e; b q^m) = sum over all integers k of (-1)^k (b q^m)^{k(k-1)/2} (c q^e)^k,
/// returned as q^offset * series with the series known through absolute order `order`.
/// c and b must be ±1.
struct ThetaTerms {
    long offset = 0;
    std::vector<std::pair<long, int>> terms;  // (exponent, sign), exponents <= order
};
ThetaTerms theta_terms(int c_sign, long e, int base_sign, long m, long order);

struct ThetaResult {
    IntSeries series;
    bool vanishes = false;  // argument is an integral power of the base: theta is identically zero
};

/// theta(z; q^m) for z = ±q^e with e >= 0 and e <= m (so no negative powers arise).
ThetaResult theta_expand(const MonomialSpec& z, long m, std::size_t order);

}  // namespace qsv
