#include "qsv/ring.hpp"

namespace qsv {

TPoly TPolyRing::inverse(const TPoly& a) const
{
    if (!is_unit(a)) throw NotInvertibleError("t-polynomial with constant term " + a.c[0].get_str() + " is not a unit");
    // b_0 = 1/a_0, b_n = -(1/a_0) sum_{i=1..n} a_i b_{n-i}
    const Integer inv0 = a.c[0];
    TPoly b = zero();
    b.c[0] = inv0;
    for (std::size_t n = 1; n < b.c.size(); ++n) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            if (sgn(a.c[i]) != 0) mpz_addmul(acc.get_mpz_t(), a.c[i].get_mpz_t(), b.c[n - i].get_mpz_t());
        b.c[n] = -acc * inv0;
    }
    return b;
}

std::string TPolyRing::to_string(const TPoly& a) const
{
    std::string out;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const Integer& x = a.c[i];
        if (sgn(x) == 0) continue;
        Integer mag = abs(x);
        if (out.empty()) {
            if (sgn(x) < 0) out += "-";
        } else {
            out += sgn(x) < 0 ? " - " : " + ";
        }
        if (i == 0 || mag != 1) out += mag.get_str();
        if (i > 0) {
            if (mag != 1) out += "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace qsv
