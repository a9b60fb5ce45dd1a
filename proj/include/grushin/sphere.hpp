#pragma once

#include <map>
#include <vector>

#include "grushin/cylinder.hpp" // EigenfunctionSample, SpectralLine, WeylReference
#include "grushin/flux.hpp"

namespace grushin::sphere {

using cylinder::EigenfunctionSample;
using cylinder::WeylReference;

struct SphereEigenIndex {
    long long n; // >= 1
    long long k;
    friend bool operator==(const SphereEigenIndex&, const SphereEigenIndex&) = default;
};

struct SpectralLine {
    Rational lambda;
    std::vector<SphereEigenIndex> indices;
    long long multiplicity = 0;
};

enum class KRange { FullPlane, HalfPlane }; // k in Z, or k >= 0

inline constexpr double default_scan_cap = 1.0e7;

struct ScanOptions {
    bool strict = true;           // lambda < emax (the counting function uses <=)
    KRange krange = KRange::FullPlane;
    long long index_cap = cylinder::default_index_cap;
    double emax_cap = default_scan_cap;
};

struct MultiplicityScan {
    double emax = 0;
    long long total_with_multiplicity = 0;
    std::vector<std::pair<Rational, long long>> lines; // ascending lambda
    long long max_halved_multiplicity = 0;             // max over lines of mult/2
    std::vector<Rational> argmax_lambdas;
};

// 4 n (n + |k - b|); no excluded mode, the spectrum is purely discrete.
Rational eigenvalue(const Flux& b, const SphereEigenIndex& idx);

// cos(x)^kappa F(-n, n+kappa; 1+kappa; cos^2 x), kappa = |k - b|; the angular
// phase stays symbolic in k_phase.
EigenfunctionSample eigenfunction_radial(const Flux& b, const SphereEigenIndex& idx,
                                         const std::vector<double>& x_nodes);

std::vector<SpectralLine> enumerate_spectrum(const Flux& b, double emax,
                                             long long index_cap = cylinder::default_index_cap);

// N(E) with multiplicity: sum over n of the number of admissible k with
// 4 n (n + |k - b|) <= E; O(sqrt E) since the k-set per n is an interval.
long long counting_exact(const Flux& b, double E);

WeylReference weyl_reference(const Flux& b, double E);

MultiplicityScan multiplicity_scan(const Flux& b, double emax,
                                   const ScanOptions& opt = {});

// Pole/sign classification of the first frobenius branch at x = 0: for k >= 1
// the Gamma-ratio value cannot vanish (numerator pole, finite denominator
// factors), so only the second branch yields eigenfunctions.
bool phi1_at_zero_is_nonzero(long long k, double lambda);

} // namespace grushin::sphere
