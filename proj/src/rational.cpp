#include "ptopo/rational.hpp"

#include <cstdio>

namespace ptopo {

Rat parse_rat(const std::string& s) {
    if (s.empty()) fail_input("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) fail_input("zero denominator in '" + s + "'");
            return Rat(num) / Rat(den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac = s.size() - dot - 1;
            Int num(digits);
            Int den = 1;
            for (size_t i = 0; i < frac; ++i) den *= 10;
            return Rat(num) / Rat(den);
        }
        return Rat(Int(s));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_input("bad rational literal '" + s + "'");
    }
}

std::string rat_str(const Rat& q) {
    Int num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string real_str17(const Real& x) {
    return double_str17(x.convert_to<double>());
}

std::string double_str17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

Rat rationalize(const Real& x, unsigned bits) {
    Real scaled = x;
    for (unsigned i = 0; i < bits; ++i) scaled *= 2;
    Int n = scaled.convert_to<Int>();
    Int den = Int(1) << bits;
    return Rat(n) / Rat(den);
}

} // namespace ptopo
