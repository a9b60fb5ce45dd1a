#pragma once

#include <string>

#include "grushin/rational.hpp"

namespace grushin {

// Aharonov-Bohm flux b. Exact rational value plus a "generic" flag marking an
// irrational surrogate: the rational value is still used for arithmetic, but
// the flux is treated as non-integer in every integer/rational trichotomy
// decision (spectral type, excluded modes, closed-form multiplicity claims).
struct Flux {
    Rational value;
    bool generic = false;

    Flux() = default;
    Flux(Rational v, bool g = false) : value(v), generic(g) {}
    Flux(long long n) : value(n) {}
    Flux(long long n, long long d) : value(n, d) {}

    bool is_integer() const { return !generic && value.is_integer(); }
    double to_double() const { return value.to_double(); }

    // Closest integer kappa to b, ties to even.
    long long nearest_integer() const { return value.round_half_even(); }

    std::string str() const { return value.str() + (generic ? " (generic)" : ""); }
};

// Accepts "P", "P/Q", or a finite decimal like "0.9" (parsed exactly as 9/10).
Flux parse_flux(const std::string& text, bool generic = false);

} // namespace grushin
