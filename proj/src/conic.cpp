#include "grushin/conic.hpp"

#include "grushin/errors.hpp"

namespace grushin::conic {

bool is_full_operator_esa(double alpha, const Flux& b) {
    if (b.is_integer()) return alpha >= 1.0 || alpha <= -3.0;
    return alpha >= 1.0 || alpha <= -1.0;
}

bool is_mode_esa(double alpha, long long k, const Flux& b) {
    if (alpha >= 1.0 || alpha <= -3.0) return true;
    if (alpha <= -1.0) {
        // only the flux mode fails, and it exists only for integer flux
        if (!b.is_integer()) return true;
        return Rational(k) != b.value;
    }
    return false;
}

SpectralType spectral_type(double alpha, const Flux& b) {
    if (alpha <= 0.0) return SpectralType::OutOfScope;
    return b.is_integer() ? SpectralType::ACPlusEmbeddedDiscrete
                          : SpectralType::PurelyDiscrete;
}

const char* spectral_type_name(SpectralType t) {
    switch (t) {
        case SpectralType::PurelyDiscrete: return "PurelyDiscrete";
        case SpectralType::ACPlusEmbeddedDiscrete: return "ACPlusEmbeddedDiscrete";
        case SpectralType::OutOfScope: return "OutOfScope";
    }
    return "OutOfScope";
}

ClassificationRecord classify(double alpha, const Flux& b, long long kmin,
                              long long kmax) {
    if (kmin > kmax) throw usage_error("empty mode range");
    ClassificationRecord rec;
    rec.alpha = alpha;
    rec.flux = b;
    rec.full_operator_esa = is_full_operator_esa(alpha, b);
    for (long long k = kmin; k <= kmax; ++k)
        rec.mode_verdicts[k] = is_mode_esa(alpha, k, b);
    rec.spectral_type = spectral_type(alpha, b);
    if (alpha <= 0.0) {
        rec.notes = "spectral type reported only for alpha > 0";
        if (alpha == -1.0)
            rec.notes += "; alpha = -1 on the half-cylinder is the Aharonov-Bohm "
                         "Laplacian of the punctured flat plane in polar coordinates";
        if (alpha == -0.5)
            rec.notes += "; alpha = -1/2 combines absolutely continuous spectrum "
                         "[0, inf) with discrete spectrum accumulating at 0, plus "
                         "an extra accumulating family for non-integer flux";
    } else if (!rec.full_operator_esa) {
        rec.notes = "operator not essentially self-adjoint; the type verdict is "
                    "extension independent (finite deficiency indices per mode)";
    }
    return rec;
}

} // namespace grushin::conic
