#include "qsv/monomial.hpp"

#include <cctype>
#include <charconv>

namespace qsv {

MonomialSpec MonomialSpec::parse(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto fail = [&] { return ContractError("invalid monomial '" + std::string(text) + "' (expected ±q^e or 0)"); };
    if (s.empty()) throw fail();
    if (s == "0") return null();
    MonomialSpec m;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        m.sign = s[pos] == '-' ? -1 : 1;
        ++pos;
    }
    if (pos < s.size() && s.substr(pos) == "1") {
        m.exp = 0;
        return m;
    }
    if (pos >= s.size() || s[pos] != 'q') throw fail();
    ++pos;
    if (pos == s.size()) {
        m.exp = 1;
        return m;
    }
    if (s[pos] != '^') throw fail();
    ++pos;
    if (pos < s.size() && s[pos] == '(' && s.back() == ')') {
        ++pos;
        s.pop_back();
    }
    long e = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), e);
    if (ec != std::errc{} || ptr != s.data() + s.size() || e < 0) throw fail();
    m.exp = e;
    return m;
}

std::string MonomialSpec::to_string() const
{
    if (zero) return "0";
    std::string out = sign < 0 ? "-" : "";
    if (exp == 0) return out + "1";
    out += "q";
    if (exp != 1) out += "^" + std::to_string(exp);
    return out;
}

}  // namespace qsv
