#include "grushin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grushin/errors.hpp"

namespace grushin::oracle {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

void check_grid(const Grid1D& g) {
    if (!(g.left < g.right)) throw usage_error("grid requires left < right");
    if (g.points < 3) throw usage_error("grid requires at least 3 points");
}

// symmetrized matrix B = M^{-1/2} A M^{-1/2}
void symmetrize(const TridiagonalOperator& op, std::vector<double>& d,
                std::vector<double>& e) {
    const size_t n = op.diagonal.size();
    d.resize(n);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    for (size_t i = 0; i < n; ++i) d[i] = op.diagonal[i] / op.mass_weights[i];
    for (size_t i = 0; i + 1 < n; ++i)
        e[i] = op.offdiagonal[i] /
               std::sqrt(op.mass_weights[i] * op.mass_weights[i + 1]);
}

// number of eigenvalues of the symmetric tridiagonal (d, e) below x
long long sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                      double x) {
    long long count = 0;
    double q = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (size_t i = 0; i < d.size(); ++i) {
        double off = (i == 0) ? 0.0 : e[i - 1];
        q = d[i] - x - off * off / q;
        if (std::fabs(q) < tiny) q = (q < 0 ? -tiny : tiny);
        if (q < 0) ++count;
    }
    return count;
}

std::vector<double> bisect_lowest(const std::vector<double>& d,
                                  const std::vector<double>& e, int m) {
    const size_t n = d.size();
    double lo = d[0], hi = d[0];
    for (size_t i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::fabs(e[i - 1]);
        if (i + 1 < n) r += std::fabs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    std::vector<double> evs(m);
    for (int j = 0; j < m; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sturm_count(d, e, mid) >= j + 1) b = mid;
            else a = mid;
            if (b - a <= 1e-14 * std::max(1.0, std::fabs(b))) break;
        }
        evs[j] = 0.5 * (a + b);
    }
    return evs;
}

TridiagonalOperator build_operator(const Grid1D& g, bool sphere, double kappa) {
    const double h = g.spacing();
    const long long n = g.points - 2; // interior unknowns
    if (n < 1) throw usage_error("grid has no interior nodes");
    TridiagonalOperator op;
    op.diagonal.resize(n);
    op.offdiagonal.resize(n - 1);
    op.mass_weights.resize(n);
    if (!sphere) {
        for (long long i = 0; i < n; ++i) {
            const double x = g.left + h * (i + 1);
            op.diagonal[i] = 2.0 / (h * h) + 0.75 / (x * x) + kappa * kappa * x * x;
            op.mass_weights[i] = 1.0;
        }
        for (long long i = 0; i + 1 < n; ++i) op.offdiagonal[i] = -1.0 / (h * h);
        return op;
    }
    auto w = [](double x) { return std::cos(x) / std::sin(x); };
    for (long long i = 0; i < n; ++i) {
        const double x = g.left + h * (i + 1);
        const double wl = w(x - 0.5 * h), wr = w(x + 0.5 * h);
        const double t = std::tan(x);
        op.diagonal[i] = (wl + wr) / (h * h) + w(x) * kappa * kappa * t * t;
        op.mass_weights[i] = w(x);
        if (i + 1 < n) op.offdiagonal[i] = -wr / (h * h);
    }
    return op;
}

Grid1D coarsen(const Grid1D& g) {
    Grid1D c = g;
    c.points = (g.points - 1) / 2 + 1;
    return c;
}

EigResult fd_eigs(bool sphere, double kappa, const Grid1D& grid, int m) {
    check_grid(grid);
    if (m < 1) throw usage_error("need m >= 1 eigenvalues");
    if (m > grid.points / 10) throw usage_error("m too large for the grid");
    if (!sphere && grid.left <= 0.0)
        throw usage_error("cylinder mode grid requires left > 0");
    if (sphere && (grid.left <= 0.0 || grid.right >= kHalfPi))
        throw usage_error("sphere mode grid must lie inside (0, pi/2)");

    const Grid1D g2 = coarsen(grid), g4 = coarsen(g2);
    auto solve = [&](const Grid1D& g) {
        return lowest_eigenvalues(build_operator(g, sphere, kappa), m);
    };
    const std::vector<double> fine = solve(grid), mid = solve(g2), coarse = solve(g4);

    EigResult res;
    res.grid = grid;
    res.eigenvalues = fine;
    res.refinement_error_estimates.resize(m);
    for (int j = 0; j < m; ++j) {
        const double est_fine = std::fabs(fine[j] - mid[j]) / 3.0;
        const double est_coarse = std::fabs(mid[j] - coarse[j]) / 3.0;
        res.refinement_error_estimates[j] = est_fine;
        const double noise = 1e-9 * std::max(1.0, std::fabs(fine[j]));
        if (est_fine > est_coarse && est_fine > noise)
            throw convergence_error("refinement error estimates do not decrease");
    }
    return res;
}

} // namespace

TridiagonalOperator cylinder_mode_operator(double kappa, const Grid1D& grid) {
    check_grid(grid);
    if (grid.left <= 0.0) throw usage_error("cylinder mode grid requires left > 0");
    return build_operator(grid, false, kappa);
}

TridiagonalOperator sphere_mode_operator(double kappa, const Grid1D& grid) {
    check_grid(grid);
    if (grid.left <= 0.0 || grid.right >= kHalfPi)
        throw usage_error("sphere mode grid must lie inside (0, pi/2)");
    return build_operator(grid, true, kappa);
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int m) {
    if (m < 1 || (size_t)m > op.diagonal.size())
        throw usage_error("invalid eigenvalue count");
    std::vector<double> d, e;
    symmetrize(op, d, e);
    return bisect_lowest(d, e, m);
}

std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda) {
    std::vector<double> d, e;
    symmetrize(op, d, e);
    const size_t n = d.size();
    // inverse iteration with a tridiagonal LU (partial pivoting, one fill-in)
    const double shift = lambda * (1.0 + 1e-12) + 1e-300;
    std::vector<double> v(n, 1.0);
    for (int iter = 0; iter < 3; ++iter) {
        std::vector<double> a(n), b(n > 0 ? n - 1 : 0), c(n > 1 ? n - 1 : 0),
            f(n > 2 ? n - 2 : 0, 0.0);
        for (size_t i = 0; i < n; ++i) a[i] = d[i] - shift;
        for (size_t i = 0; i + 1 < n; ++i) { b[i] = e[i]; c[i] = e[i]; }
        // forward elimination on rows (a=diag, c=super, f=supersuper, b=sub)
        std::vector<int> piv(n, 0);
        for (size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(b[i]) > std::fabs(a[i])) {
                piv[i] = 1;
                std::swap(a[i], b[i]);
                double tmp = c[i];
                c[i] = a[i + 1];
                a[i + 1] = tmp;
                if (i + 2 < n) { f[i] = c[i + 1]; c[i + 1] = 0.0; }
            }
            double denom = a[i];
            if (denom == 0.0) denom = 1e-300;
            const double mlt = b[i] / denom;
            b[i] = mlt; // store multiplier
            a[i + 1] -= mlt * c[i];
            if (i + 2 < n) c[i + 1] -= mlt * (i < f.size() ? f[i] : 0.0);
        }
        std::vector<double> y(v);
        for (size_t i = 0; i + 1 < n; ++i) {
            if (piv[i]) std::swap(y[i], y[i + 1]);
            y[i + 1] -= b[i] * y[i];
        }
        for (size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            if (ii + 1 < n) s -= c[ii] * y[ii + 1];
            if (ii + 2 < n && ii < f.size()) s -= f[ii] * y[ii + 2];
            double denom = a[ii];
            if (denom == 0.0) denom = 1e-300;
            y[ii] = s / denom;
        }
        double norm = 0;
        for (double t : y) norm = std::max(norm, std::fabs(t));
        if (norm == 0) throw numeric_error("inverse iteration broke down");
        for (size_t i = 0; i < n; ++i) v[i] = y[i] / norm;
    }
    // undo the mass symmetrization: u = M^{-1/2} v
    double norm = 0;
    for (size_t i = 0; i < n; ++i) {
        v[i] /= std::sqrt(op.mass_weights[i]);
        norm = std::max(norm, std::fabs(v[i]));
    }
    for (double& t : v) t /= norm;
    return v;
}

EigResult fd_eigs_cylinder_mode(double kappa, const Grid1D& grid, int m) {
    if (kappa <= 0.0) throw usage_error("cylinder mode requires kappa > 0");
    return fd_eigs(false, kappa, grid, m);
}

EigResult fd_eigs_sphere_mode(double kappa, const Grid1D& grid, int m) {
    if (kappa < 0.0) throw usage_error("sphere mode requires kappa >= 0");
    return fd_eigs(true, kappa, grid, m);
}

OdeCoefficients cylinder_mode_coefficients(double kappa) {
    return {[](double x) { return -1.0 / x; },
            [kappa](double x) { return 1.0 / (x * x) + kappa * kappa * x * x; }};
}

OdeCoefficients sphere_mode_coefficients(double kappa) {
    return {[](double x) { return 1.0 / (std::sin(x) * std::cos(x)); },
            [kappa](double x) {
                const double t = std::tan(x);
                return kappa * kappa * t * t;
            }};
}

double ode_residual(const OdeCoefficients& op,
                    const cylinder::EigenfunctionSample& sample, double lambda) {
    const auto& x = sample.x_nodes;
    const auto& psi = sample.values;
    if (x.size() != psi.size()) throw usage_error("sample size mismatch");
    if (x.size() < 7) throw usage_error("need at least 5 interior nodes");
    const double h = x[1] - x[0];
    for (size_t i = 1; i + 1 < x.size(); ++i)
        if (std::fabs((x[i + 1] - x[i]) - h) > 1e-9 * std::max(1.0, std::fabs(h)))
            throw usage_error("ode_residual requires a uniform grid");
    double sup = 0;
    for (double v : psi) sup = std::max(sup, std::fabs(v));
    if (sup == 0 || lambda == 0) throw usage_error("degenerate sample");
    double worst = 0;
    for (size_t i = 1; i + 1 < x.size(); ++i) {
        const long double d2 = ((long double)psi[i + 1] - 2.0L * psi[i] + psi[i - 1]) / ((long double)h * h);
        const long double d1 = ((long double)psi[i + 1] - psi[i - 1]) / (2.0L * h);
        const long double r = -d2 + (long double)op.first_order(x[i]) * d1 +
                              (long double)op.potential(x[i]) * psi[i] -
                              (long double)lambda * psi[i];
        worst = std::max(worst, (double)std::fabs((double)r));
    }
    return worst / (std::fabs(lambda) * sup);
}

WeylFit weyl_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw usage_error("weyl_fit needs at least 4 samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].first <= 1.0) throw usage_error("weyl_fit requires E > 1");
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first)
                throw usage_error("weyl_fit requires distinct E values");
    }
    long double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    for (const auto& [E, N] : samples) {
        const long double p1 = (long double)E * std::log((long double)E);
        const long double p2 = E;
        s11 += p1 * p1;
        s12 += p1 * p2;
        s22 += p2 * p2;
        b1 += p1 * N;
        b2 += p2 * N;
    }
    const long double det = s11 * s22 - s12 * s12;
    if (!(det > 1e-14L * s11 * s22))
        throw numeric_error("weyl_fit normal equations are singular");
    WeylFit fit;
    fit.a = (double)((b1 * s22 - b2 * s12) / det);
    fit.c = (double)((s11 * b2 - s12 * b1) / det);
    long double acc = 0;
    for (const auto& [E, N] : samples) {
        const long double model = (long double)fit.a * E * std::log((long double)E) +
                                  (long double)fit.c * E;
        const long double denom = std::max(1.0L, (long double)std::fabs(N));
        const long double rel = (model - N) / denom;
        acc += rel * rel;
    }
    fit.rms = (double)std::sqrt((double)(acc / samples.size()));
    return fit;
}

} // namespace grushin::oracle
