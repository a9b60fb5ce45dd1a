#include "grushin/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grushin/errors.hpp"
#include "grushin/specialfn.hpp"

namespace grushin::cylinder {

namespace {

// floor(E / (p/q)) = floor(E q / p) for p/q > 0. Exact integer path when E is
// integral; long double otherwise (E is then irrational in practice, e.g.
// the 10^6.5 sampling points, so ties cannot occur).
long long floor_div_energy(double E, const Rational& s) {
    if (E < 0) return -1;
    const long long p = s.num(), q = s.den();
    if (E == std::floor(E) && std::fabs(E) < 9.0e15) {
        __int128 t = (__int128)(long long)E * q;
        return (long long)(t / p);
    }
    long double ld = (long double)E * q / p;
    long long m = (long long)std::floor(ld);
    while ((long double)(m + 1) * p <= (long double)E * q) ++m;
    while (m > 0 && (long double)m * p > (long double)E * q) --m;
    return m;
}

long long ceil_div_energy(double x, const Rational& s) {
    if (x <= 0) return 0;
    const long long p = s.num(), q = s.den();
    if (x == std::floor(x) && std::fabs(x) < 9.0e15) {
        __int128 t = (__int128)(long long)x * q;
        return (long long)((t + p - 1) / p);
    }
    long double ld = (long double)x * q / p;
    long long m = (long long)std::ceil(ld);
    while (m > 0 && (long double)(m - 1) * p >= (long double)x * q) --m;
    while ((long double)m * p < (long double)x * q) ++m;
    return m;
}

// admissible k with |k - b| <= E/4, as an integer interval
std::pair<long long, long long> mode_range(const Flux& b, double E) {
    double bd = b.to_double();
    long long lo = (long long)std::floor(bd - E / 4.0) - 2;
    long long hi = (long long)std::ceil(bd + E / 4.0) + 2;
    return {lo, hi};
}

__int128 divisor_summatory(long long M) {
    // D(M) = sum_{j<=M} floor(M/j) = 2 sum_{j<=sqrt(M)} floor(M/j) - floor(sqrt(M))^2
    if (M <= 0) return 0;
    long long s = (long long)std::sqrt((double)M);
    while ((s + 1) * (s + 1) <= M) ++s;
    while (s * s > M) --s;
    __int128 acc = 0;
    for (long long j = 1; j <= s; ++j) acc += M / j;
    return 2 * acc - (__int128)s * s;
}

} // namespace

bool mode_admissible(const Flux& b, long long k) {
    return !(b.is_integer() && b.value == Rational(k));
}

Rational eigenvalue(const Flux& b, const EigenIndex& idx) {
    if (idx.n < 1) throw usage_error("quantum number n must be >= 1");
    if (!mode_admissible(b, idx.k))
        throw excluded_mode_error("mode k = " + std::to_string(idx.k) +
                                  " is excluded for integer flux");
    return Rational(4 * idx.n) * (Rational(idx.k) - b.value).abs();
}

EigenfunctionSample eigenfunction_radial(const Flux& b, const EigenIndex& idx,
                                         const std::vector<double>& x_nodes) {
    if (idx.n < 1) throw usage_error("quantum number n must be >= 1");
    if (!mode_admissible(b, idx.k))
        throw excluded_mode_error("mode k = " + std::to_string(idx.k) +
                                  " is excluded for integer flux");
    const double kappa = (Rational(idx.k) - b.value).abs().to_double();
    EigenfunctionSample s;
    s.k_phase = idx.k;
    s.x_nodes = x_nodes;
    s.values.reserve(x_nodes.size());
    for (double x : x_nodes) {
        if (x <= 0.0) throw usage_error("cylinder eigenfunction nodes must be > 0");
        s.values.push_back(specialfn::whittaker_w_half((int)idx.n, kappa * x * x) / x);
    }
    return s;
}

EigenfunctionSample generalized_eigenfunction(double lambda,
                                              const std::vector<double>& x_nodes) {
    if (lambda < 0.0) throw usage_error("generalized eigenfunction requires lambda >= 0");
    EigenfunctionSample s;
    s.x_nodes = x_nodes;
    s.values.reserve(x_nodes.size());
    const double r = std::sqrt(lambda);
    for (double x : x_nodes)
        s.values.push_back(lambda == 0.0 ? 0.0 : 0.5 * r * specialfn::bessel_j(1, r * x));
    return s;
}

std::vector<SpectralLine> enumerate_spectrum(const Flux& b, double emax,
                                             long long index_cap) {
    if (emax < 0) throw usage_error("emax must be >= 0");
    std::map<Rational, std::vector<EigenIndex>> groups;
    auto [klo, khi] = mode_range(b, emax);
    long long total = 0;
    for (long long k = klo; k <= khi; ++k) {
        if (!mode_admissible(b, k)) continue;
        Rational s = Rational(4) * (Rational(k) - b.value).abs();
        long long nmax = floor_div_energy(emax, s);
        if (nmax < 1) continue;
        total += nmax;
        if (total > index_cap)
            throw resource_cap_error("spectrum enumeration exceeds index cap");
        for (long long n = 1; n <= nmax; ++n)
            groups[s * Rational(n)].push_back({n, k});
    }
    std::vector<SpectralLine> lines;
    lines.reserve(groups.size());
    for (auto& [lam, idxs] : groups) {
        std::sort(idxs.begin(), idxs.end(), [](const EigenIndex& a, const EigenIndex& c) {
            return a.k != c.k ? a.k < c.k : a.n < c.n;
        });
        lines.push_back({lam, idxs, (long long)idxs.size()});
    }
    return lines;
}

long long counting_exact(const Flux& b, double E) {
    if (E < 0) return 0;
    auto [klo, khi] = mode_range(b, E);
    long long total = 0;
    for (long long k = klo; k <= khi; ++k) {
        if (!mode_admissible(b, k)) continue;
        Rational s = Rational(4) * (Rational(k) - b.value).abs();
        long long c = floor_div_energy(E, s);
        if (c > 0) total += c;
    }
    return total;
}

long long counting_fast(const Flux& b, double E) {
    if (E < 0) return 0;
    if (E > 1.0e12) throw resource_cap_error("counting_fast supports E <= 1e12");
    if (b.value.is_integer()) {
        long long M = (long long)std::floor(E / 4.0);
        return (long long)(2 * divisor_summatory(M));
    }
    if (b.value.den() == 2) {
        // modes at odd half-integer distances: N = 2 sum_{d odd} floor(M/d),
        // M = floor(E/2), and the odd-d sum telescopes to D(M) - D(M/2)
        long long M = (long long)std::floor(E / 2.0);
        return (long long)(2 * (divisor_summatory(M) - divisor_summatory(M / 2)));
    }
    throw usage_error("counting_fast requires integer or half-integer flux");
}

WeylReference weyl_reference(const Flux& b, double E) {
    if (E <= 1.0) throw usage_error("weyl_reference requires E > 1");
    WeylReference w;
    w.leading = 0.5 * E * std::log(E);
    if (b.is_integer()) {
        w.second = (specialfn::euler_gamma - 2.0 * std::log(2.0)) * 0.5 * E;
    } else {
        const long long kappa = b.nearest_integer();
        const double delta = (Rational(kappa) - b.value).abs().to_double();
        w.second = 0.5 * E *
                   (0.5 / delta + specialfn::euler_gamma - 2.0 * std::log(2.0) -
                    0.5 * (specialfn::digamma(1.0 - delta) + specialfn::digamma(1.0 + delta)));
    }
    return w;
}

SpectralLine multiplicity_bruteforce(const Flux& b, const Rational& lambda) {
    if (!(Rational(0) < lambda)) throw usage_error("multiplicity requires lambda > 0");
    SpectralLine line;
    line.lambda = lambda;
    Rational quarter = lambda / Rational(4);
    long long klo = (b.value - quarter).ceil();
    long long khi = (b.value + quarter).floor();
    for (long long k = klo; k <= khi; ++k) {
        if (!mode_admissible(b, k)) continue;
        Rational s = Rational(4) * (Rational(k) - b.value).abs();
        if (s.is_zero()) continue;
        Rational n = lambda / s;
        if (n.is_integer() && n.num() >= 1) line.indices.push_back({n.num(), k});
    }
    std::sort(line.indices.begin(), line.indices.end(),
              [](const EigenIndex& a, const EigenIndex& c) {
                  return a.k != c.k ? a.k < c.k : a.n < c.n;
              });
    line.multiplicity = (long long)line.indices.size();
    return line;
}

long long multiplicity_divisor_formula(long long lambda) {
    if (lambda <= 0 || lambda % 4 != 0)
        throw usage_error("divisor formula requires lambda a positive multiple of 4");
    long long m = lambda / 4;
    long long d = specialfn::divisor_count(m);
    return (m % 2 == 1) ? 2 * d : 2 * d - 2;
}

Rational level_spacing(const Flux& b, long long k) {
    if (!mode_admissible(b, k))
        throw excluded_mode_error("mode k = " + std::to_string(k) +
                                  " is excluded for integer flux");
    return Rational(4) * (Rational(k) - b.value).abs();
}

long long accumulation_count(const Flux& b, long long k, double x1, double x2) {
    if (x1 < 0 || x2 < x1) throw usage_error("accumulation interval needs 0 <= x1 <= x2");
    if (!mode_admissible(b, k))
        throw excluded_mode_error("mode k = " + std::to_string(k) +
                                  " is excluded for integer flux");
    Rational s = Rational(4) * (Rational(k) - b.value).abs();
    long long hi = floor_div_energy(x2, s);
    long long lo = std::max<long long>(ceil_div_energy(x1, s), 1);
    return std::max<long long>(0, hi - lo + 1);
}

DegenerationPair degeneration_pair(const Rational& lambda, long long k, long long j) {
    if (!(Rational(0) < lambda)) throw usage_error("degeneration requires lambda > 0");
    if (j < 1) throw usage_error("degeneration requires j >= 1");
    const long long n_j = 2 * j;
    Rational offset = lambda / Rational(4 * (n_j + 1));
    DegenerationPair p;
    p.b_j = Flux(Rational(k) + offset);
    p.n_j = n_j;
    p.within_half_window = offset < Rational(1, 2);
    return p;
}

long long n_of_b(const Rational& lambda, long long k, const Flux& b) {
    if (!(Rational(0) < lambda)) throw usage_error("n_of_b requires lambda > 0");
    Rational diff = (b.value - Rational(k)).abs();
    if (diff.is_zero())
        throw excluded_mode_error("n_of_b undefined at b = k");
    return 2 * (lambda / (Rational(8) * diff)).ceil();
}

double degeneration_sup_error(const Rational& lambda, long long k, long long j,
                              double xmax, int points) {
    DegenerationPair p = degeneration_pair(lambda, k, j);
    const double beta = (p.b_j.value - Rational(k)).abs().to_double();
    const double lam = lambda.to_double();
    const double r = std::sqrt(lam);
    const int n_quantum = (int)(p.n_j + 1); // eigenvalue of (n_j+1, k) is exactly lambda
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = xmax * i / (points - 1);
        const double f =
            (x == 0.0) ? 0.0 : specialfn::whittaker_w_half(n_quantum, beta * x * x) / x;
        const double g = 0.5 * r * specialfn::bessel_j(1, r * x);
        worst = std::max(worst, std::fabs(f - g));
    }
    return worst;
}

SpectralType spectral_type(const Flux& b) {
    return b.is_integer() ? SpectralType::AbsolutelyContinuousPlusEmbedded
                          : SpectralType::PurePoint;
}

} // namespace grushin::cylinder
