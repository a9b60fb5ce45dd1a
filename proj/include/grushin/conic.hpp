#pragma once

#include <map>
#include <string>

#include "grushin/flux.hpp"

namespace grushin::conic {

// metric g_alpha = dx^2 + x^{-2 alpha} dtheta^2 on the cone/anti-cone family
struct ConicStructure {
    double alpha = 1.0;
    Flux flux;
};

enum class SpectralType { PurelyDiscrete, ACPlusEmbeddedDiscrete, OutOfScope };

struct ClassificationRecord {
    double alpha = 0;
    Flux flux;
    bool full_operator_esa = false;
    std::map<long long, bool> mode_verdicts;
    SpectralType spectral_type = SpectralType::OutOfScope;
    std::string notes;
};

// b integer (generic counts as non-integer): alpha >= 1 or alpha <= -3;
// b non-integer: |alpha| >= 1.
bool is_full_operator_esa(double alpha, const Flux& b);

// alpha >= 1 or alpha <= -3: every mode is essentially self-adjoint.
// -3 < alpha <= -1: every mode except the flux mode k = b (which exists only
// for integer b). -1 < alpha < 1: no mode is.
bool is_mode_esa(double alpha, long long k, const Flux& b);

// alpha > 0 only; nonpositive alpha is classified OutOfScope and explained in
// the record notes instead.
SpectralType spectral_type(double alpha, const Flux& b);

const char* spectral_type_name(SpectralType t);

ClassificationRecord classify(double alpha, const Flux& b, long long kmin = -20,
                              long long kmax = 20);

} // namespace grushin::conic
