#include "grushin/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grushin/errors.hpp"
#include "grushin/specialfn.hpp"

namespace grushin::sphere {

namespace {

// admissible k interval for fixed n: 4n(n + |k-b|) <= E, i.e.
// |k - b| <= E/(4n) - n =: R. Exact integer arithmetic when E is integral.
struct KInterval {
    long long lo, hi;
    bool empty;
};

long long floordiv(__int128 a, __int128 d) { // d > 0
    __int128 q = a / d;
    if (a % d != 0 && a < 0) --q;
    return (long long)q;
}

KInterval mode_interval(const Flux& b, double E, long long n, bool strict) {
    const long long p = b.value.num(), q = b.value.den();
    if (E == std::floor(E) && std::fabs(E) < 9.0e15) {
        // k <= b + R  <=>  4nq k <= Eq - 4n^2 q + 4np   (and mirrored below)
        const __int128 Eq = (__int128)(long long)E * q;
        const __int128 base = Eq - (__int128)4 * n * n * q;
        __int128 hi_num = base + (__int128)4 * n * p;
        __int128 lo_num = -base + (__int128)4 * n * p; // k >= b - R
        const __int128 d = (__int128)4 * n * q;
        long long hi = floordiv(hi_num, d);
        long long lo = -floordiv(-lo_num, d); // ceil(lo_num/d)
        if (strict) {
            // lambda < E: shave exact boundary hits off both ends
            if ((__int128)hi * d == hi_num) --hi;
            if ((__int128)lo * d == lo_num) ++lo;
        }
        return {lo, hi, lo > hi};
    }
    const double bd = b.to_double();
    const double R = E / (4.0 * n) - n;
    if (R < -0.5) return {0, -1, true};
    long long hi = (long long)std::floor(bd + R);
    long long lo = (long long)std::ceil(bd - R);
    // exact endpoint correction: compare q*lambda against q*E in long double
    const long double Eq = (long double)E * (long double)q;
    auto fits = [&](long long k) {
        __int128 t = (__int128)k * q - p;
        if (t < 0) t = -t;
        long double lamq = 4.0L * (long double)n *
                           ((long double)n * (long double)q + (long double)(long long)t);
        return strict ? (lamq < Eq) : (lamq <= Eq);
    };
    for (int i = 0; i < 4 && lo <= hi && !fits(hi); ++i) --hi;
    for (int i = 0; i < 4 && fits(hi + 1); ++i) ++hi;
    for (int i = 0; i < 4 && lo <= hi && !fits(lo); ++i) ++lo;
    for (int i = 0; i < 4 && fits(lo - 1); ++i) --lo;
    if (lo > hi || !fits(lo) || !fits(hi)) return {0, -1, true};
    return {lo, hi, lo > hi};
}

} // namespace

Rational eigenvalue(const Flux& b, const SphereEigenIndex& idx) {
    if (idx.n < 1) throw usage_error("quantum number n must be >= 1");
    Rational kappa = (Rational(idx.k) - b.value).abs();
    return Rational(4 * idx.n) * (Rational(idx.n) + kappa);
}

EigenfunctionSample eigenfunction_radial(const Flux& b, const SphereEigenIndex& idx,
                                         const std::vector<double>& x_nodes) {
    if (idx.n < 1) throw usage_error("quantum number n must be >= 1");
    const double kappa = (Rational(idx.k) - b.value).abs().to_double();
    EigenfunctionSample s;
    s.k_phase = idx.k;
    s.x_nodes = x_nodes;
    s.values.reserve(x_nodes.size());
    const double half_pi = 1.5707963267948966; // closest double to pi/2
    for (double x : x_nodes) {
        if (x <= 0.0 || x > half_pi)
            throw usage_error("sphere eigenfunction nodes must lie in (0, pi/2]");
        const double c = std::cos(x);
        const double z = c * c;
        s.values.push_back(std::pow(c, kappa) *
                           specialfn::hypergeom_terminating((int)idx.n, idx.n + kappa,
                                                            1.0 + kappa, z));
    }
    return s;
}

std::vector<SpectralLine> enumerate_spectrum(const Flux& b, double emax,
                                             long long index_cap) {
    if (emax < 0) throw usage_error("emax must be >= 0");
    std::map<Rational, std::vector<SphereEigenIndex>> groups;
    long long total = 0;
    for (long long n = 1; 4.0 * n * n <= emax; ++n) {
        KInterval ki = mode_interval(b, emax, n, /*strict=*/false);
        if (ki.empty) continue;
        total += ki.hi - ki.lo + 1;
        if (total > index_cap)
            throw resource_cap_error("spectrum enumeration exceeds index cap");
        for (long long k = ki.lo; k <= ki.hi; ++k)
            groups[eigenvalue(b, {n, k})].push_back({n, k});
    }
    std::vector<SpectralLine> lines;
    lines.reserve(groups.size());
    for (auto& [lam, idxs] : groups) {
        std::sort(idxs.begin(), idxs.end(),
                  [](const SphereEigenIndex& a, const SphereEigenIndex& c) {
                      return a.k != c.k ? a.k < c.k : a.n < c.n;
                  });
        lines.push_back({lam, idxs, (long long)idxs.size()});
    }
    return lines;
}

long long counting_exact(const Flux& b, double E) {
    if (E < 0) return 0;
    long long total = 0;
    for (long long n = 1; 4.0 * n * n <= E; ++n) {
        KInterval ki = mode_interval(b, E, n, /*strict=*/false);
        if (!ki.empty) total += ki.hi - ki.lo + 1;
    }
    return total;
}

WeylReference weyl_reference(const Flux&, double E) {
    if (E <= 1.0) throw usage_error("weyl_reference requires E > 1");
    WeylReference w;
    w.leading = 0.25 * E * std::log(E);
    // flux-independent second term; the flux enters only at order sqrt(E)
    w.second = (specialfn::euler_gamma - std::log(2.0) - 0.5) * 0.5 * E;
    return w;
}

MultiplicityScan multiplicity_scan(const Flux& b, double emax, const ScanOptions& opt) {
    if (emax < 0) throw usage_error("emax must be >= 0");
    if (emax > opt.emax_cap)
        throw resource_cap_error("multiplicity scan cap exceeded");
    std::map<Rational, long long> counts;
    long long total = 0;
    for (long long n = 1; 4.0 * n * n <= emax; ++n) {
        KInterval ki = mode_interval(b, emax, n, opt.strict);
        if (ki.empty) continue;
        for (long long k = ki.lo; k <= ki.hi; ++k) {
            if (opt.krange == KRange::HalfPlane && k < 0) continue;
            ++counts[eigenvalue(b, {n, k})];
            ++total;
            if (total > opt.index_cap)
                throw resource_cap_error("multiplicity scan exceeds index cap");
        }
    }
    MultiplicityScan scan;
    scan.emax = emax;
    scan.total_with_multiplicity = total;
    scan.lines.assign(counts.begin(), counts.end());
    for (const auto& [lam, mult] : scan.lines) {
        long long halved = mult / 2;
        if (halved > scan.max_halved_multiplicity) {
            scan.max_halved_multiplicity = halved;
            scan.argmax_lambdas.clear();
        }
        if (halved == scan.max_halved_multiplicity) scan.argmax_lambdas.push_back(lam);
    }
    if (scan.max_halved_multiplicity == 0) scan.argmax_lambdas.clear();
    return scan;
}

bool phi1_at_zero_is_nonzero(long long k, double lambda) {
    if (k < 1 || lambda <= 0) return false;
    // value = Gamma(1-k) / (Gamma(arg_minus) Gamma(arg_plus)),
    // arg_{+-} = 1 - k/2 +- sqrt(k^2+lambda)/2. Gamma(1-k) is a pole for
    // k >= 1. arg_plus > 1 because sqrt(k^2+lambda) > k, so that factor is
    // finite and nonzero. The denominator can contribute at most one pole
    // (when arg_minus is a nonpositive integer), which cancels to a nonzero
    // residue ratio; otherwise the value diverges. Either way it is nonzero.
    const double root = std::sqrt((double)k * k + lambda);
    const double arg_plus = 1.0 - 0.5 * k + 0.5 * root;
    return arg_plus > 1.0;
}

} // namespace grushin::sphere
