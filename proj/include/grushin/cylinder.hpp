#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "grushin/flux.hpp"

namespace grushin::cylinder {

// Radial quantum number n >= 1 (the index set starts at 1 throughout),
// Fourier mode k; for integer flux b the mode k = b is excluded.
struct EigenIndex {
    long long n;
    long long k;
    friend bool operator==(const EigenIndex&, const EigenIndex&) = default;
};

struct SpectralLine {
    Rational lambda;
    std::vector<EigenIndex> indices; // sorted by (k, n)
    long long multiplicity = 0;      // == indices.size()
};

struct EigenfunctionSample {
    std::vector<double> x_nodes;
    std::vector<double> values;
    long long k_phase = 0; // the angular factor e^{ik theta}, kept symbolic
};

struct WeylReference {
    double leading;
    double second;
};

enum class SpectralType { AbsolutelyContinuousPlusEmbedded, PurePoint };

inline constexpr long long default_index_cap = 50'000'000;

bool mode_admissible(const Flux& b, long long k);

// 4 n |k - b|, exact.
Rational eigenvalue(const Flux& b, const EigenIndex& idx);

// Radial part W_{n,1/2}(|k-b| x^2) / x on positive nodes.
EigenfunctionSample eigenfunction_radial(const Flux& b, const EigenIndex& idx,
                                         const std::vector<double>& x_nodes);

// Generalized eigenfunction of the continuous spectrum, bounded branch:
// (sqrt(lambda)/2) J_1(sqrt(lambda) x); identically 0 for lambda = 0.
EigenfunctionSample generalized_eigenfunction(double lambda,
                                              const std::vector<double>& x_nodes);

// All (n,k) with 4n|k-b| <= emax, grouped by exact eigenvalue, ascending.
std::vector<SpectralLine> enumerate_spectrum(const Flux& b, double emax,
                                             long long index_cap = default_index_cap);

// N(E) with multiplicity: sum over admissible k of floor(E / (4|k-b|)).
long long counting_exact(const Flux& b, double E);

// Same value as counting_exact for integer or half-integer flux, in O(sqrt E)
// via the divisor summatory function (Dirichlet hyperbola); E up to 1e12.
long long counting_fast(const Flux& b, double E);

WeylReference weyl_reference(const Flux& b, double E);

// Ground truth multiplicity of an exact eigenvalue.
SpectralLine multiplicity_bruteforce(const Flux& b, const Rational& lambda);

// Closed-form divisor-count multiplicity for integer flux, lambda/4 in N:
// 2 d(lambda/4) when lambda/4 is odd, 2 d(lambda/4) - 2 when even. Compared
// against brute force, never asserted equal (they disagree for lambda/4 even).
long long multiplicity_divisor_formula(long long lambda);

// 4 |k - b|, exact.
Rational level_spacing(const Flux& b, long long k);

// #{n >= 1 : lambda_{n,k}^b in [x1, x2]}.
long long accumulation_count(const Flux& b, long long k, double x1, double x2);

struct DegenerationPair {
    Flux b_j;
    long long n_j;
    bool within_half_window; // |b_j - k| < 1/2
};

// n_j = 2j, b_j = k + lambda / (4 (n_j + 1)); then the (n_j+1, k) eigenvalue
// at flux b_j equals lambda exactly.
DegenerationPair degeneration_pair(const Rational& lambda, long long k, long long j);

// n(b) = 2 ceil(lambda / (8 |b - k|)).
long long n_of_b(const Rational& lambda, long long k, const Flux& b);

// sup over the default grid [0,6], 1201 nodes, of the distance between the
// (n_j+1, k) eigenfunction at flux b_j and the generalized eigenfunction
// (sqrt(lambda)/2) J_1(sqrt(lambda) x); the x = 0 node contributes 0 - 0.
double degeneration_sup_error(const Rational& lambda, long long k, long long j,
                              double xmax = 6.0, int points = 1201);

SpectralType spectral_type(const Flux& b);

} // namespace grushin::cylinder
