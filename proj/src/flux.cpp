#include "grushin/flux.hpp"

#include <cctype>
#include <cstdlib>

#include "grushin/errors.hpp"

namespace grushin {

namespace {

long long parse_ll(const std::string& s) {
    if (s.empty()) throw usage_error("empty integer in flux");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw usage_error("cannot parse flux component '" + s + "'");
    }
    if (pos != s.size()) throw usage_error("cannot parse flux component '" + s + "'");
    return v;
}

} // namespace

Flux parse_flux(const std::string& text, bool generic) {
    if (text.empty()) throw usage_error("empty flux");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long p = parse_ll(text.substr(0, slash));
        long long q = parse_ll(text.substr(slash + 1));
        if (q <= 0) throw usage_error("flux denominator must be positive");
        return Flux(Rational(p, q), generic);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        // finite decimal, parsed exactly: "0.9" -> 9/10
        std::string intpart = text.substr(0, dot);
        std::string fracpart = text.substr(dot + 1);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (neg || (!intpart.empty() && intpart[0] == '+')) intpart = intpart.substr(1);
        if (fracpart.size() > 15) throw usage_error("flux decimal too long; use P/Q");
        for (char c : intpart)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw usage_error("cannot parse flux '" + text + "'");
        for (char c : fracpart)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw usage_error("cannot parse flux '" + text + "'");
        long long den = 1;
        for (std::size_t i = 0; i < fracpart.size(); ++i) den *= 10;
        long long num = (intpart.empty() ? 0 : parse_ll(intpart)) * den +
                        (fracpart.empty() ? 0 : parse_ll(fracpart));
        if (neg) num = -num;
        return Flux(Rational(num, den), generic);
    }
    return Flux(Rational(parse_ll(text)), generic);
}

} // namespace grushin
