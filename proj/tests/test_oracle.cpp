#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "grushin/errors.hpp"
#include "grushin/oracle.hpp"

using namespace grushin;
using namespace grushin::oracle;

namespace {
constexpr double kHalfPi = 1.5707963267948966;

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }
}

TEST_CASE("cylinder mode eigenvalues converge to 4 n kappa") {
    Grid1D g{1e-4, 30.0, 20001};
    auto r = fd_eigs_cylinder_mode(1.0, g, 5);
    REQUIRE(r.eigenvalues.size() == 5);
    for (int n = 1; n <= 5; ++n) {
        CHECK(rel_err(r.eigenvalues[n - 1], 4.0 * n) < 0.005);
    }
    for (size_t i = 0; i + 1 < r.eigenvalues.size(); ++i) {
        CHECK(r.eigenvalues[i] < r.eigenvalues[i + 1]);
    }

    auto rh = fd_eigs_cylinder_mode(0.5, g, 3);
    CHECK(rel_err(rh.eigenvalues[0], 2.0) < 0.005);
    CHECK(rel_err(rh.eigenvalues[1], 4.0) < 0.005);
    CHECK(rel_err(rh.eigenvalues[2], 6.0) < 0.005);
}

TEST_CASE("sphere mode eigenvalues converge to 4 n (n + kappa)") {
    Grid1D g{1e-3, kHalfPi - 1e-3, 20001};
    auto r = fd_eigs_sphere_mode(2.0, g, 4);
    const double targets[] = {12.0, 32.0, 60.0, 96.0};
    for (int i = 0; i < 4; ++i) CHECK(rel_err(r.eigenvalues[i], targets[i]) < 0.01);

    for (double kappa : {0.5, 1.0, 2.5}) {
        auto s = fd_eigs_sphere_mode(kappa, g, 4);
        for (int n = 1; n <= 4; ++n) {
            CHECK(rel_err(s.eigenvalues[n - 1], 4.0 * n * (n + kappa)) < 0.01);
        }
    }
}

TEST_CASE("sphere kappa = 0 is truncation sensitive, not convergent") {
    // the k = b mode does not vanish at pi/2, so Dirichlet truncation biases
    // the eigenvalues upward, the more so the wider the cut
    auto ground = [](double eps) {
        Grid1D g{eps, kHalfPi - eps, 20001};
        return fd_eigs_sphere_mode(0.0, g, 1).eigenvalues[0];
    };
    const double a = ground(1e-3), b = ground(1e-2), c = ground(5e-2);
    CHECK(a > 4.0);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(std::fabs(a - 4.0) > 0.1); // far outside the 1% bar met by kappa > 0
}

TEST_CASE("halving the spacing divides the error by about four") {
    auto err = [](long long pts) {
        Grid1D g{1e-4, 30.0, pts};
        auto r = fd_eigs_cylinder_mode(1.0, g, 1);
        return std::fabs(r.eigenvalues[0] - 4.0);
    };
    const double e1 = err(2001), e2 = err(4001);
    const double ratio = e1 / e2;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("richardson extrapolation beats either grid") {
    Grid1D fine{1e-4, 30.0, 4001};
    Grid1D coarse{1e-4, 30.0, 2001};
    auto lf = lowest_eigenvalues(cylinder_mode_operator(1.0, fine), 3);
    auto lc = lowest_eigenvalues(cylinder_mode_operator(1.0, coarse), 3);
    for (int n = 1; n <= 3; ++n) {
        const double truth = 4.0 * n;
        const double extrap = (4.0 * lf[n - 1] - lc[n - 1]) / 3.0;
        CHECK(std::fabs(extrap - truth) < std::fabs(lf[n - 1] - truth));
        CHECK(std::fabs(extrap - truth) < std::fabs(lc[n - 1] - truth));
    }
}

TEST_CASE("refinement error estimates decrease and bound the truth") {
    Grid1D g{1e-4, 30.0, 20001};
    auto r = fd_eigs_cylinder_mode(1.0, g, 3);
    REQUIRE(r.refinement_error_estimates.size() == 3);
    for (int n = 1; n <= 3; ++n) {
        const double est = r.refinement_error_estimates[n - 1];
        CHECK(est > 0);
        // Richardson estimate is the right order of magnitude
        CHECK(std::fabs(r.eigenvalues[n - 1] - 4.0 * n) < 10.0 * est + 1e-9);
    }
}

TEST_CASE("a non-converging refinement sequence is reported") {
    Grid1D g{1e-4, 30.0, 101}; // far too coarse: coarsened grids go erratic
    CHECK_THROWS_AS(fd_eigs_cylinder_mode(1.0, g, 3), convergence_error);
}

TEST_CASE("grid and argument validation") {
    CHECK_THROWS_AS(fd_eigs_cylinder_mode(1.0, {0.0, 30.0, 1001}, 2), usage_error);
    CHECK_THROWS_AS(fd_eigs_cylinder_mode(1.0, {5.0, 1.0, 1001}, 2), usage_error);
    CHECK_THROWS_AS(fd_eigs_cylinder_mode(1.0, {1e-4, 30.0, 1001}, 200), usage_error);
    CHECK_THROWS_AS(fd_eigs_cylinder_mode(0.0, {1e-4, 30.0, 1001}, 2), usage_error);
    CHECK_THROWS_AS(fd_eigs_sphere_mode(1.0, {1e-3, 2.0, 1001}, 2), usage_error);
    CHECK_THROWS_AS(fd_eigs_sphere_mode(-1.0, {1e-3, 1.5, 1001}, 2), usage_error);
}

TEST_CASE("discrete eigenvector is consistent with the residual oracle") {
    // same stencil on both sides, so the discrete pair must null the residual
    Grid1D g{0.25, 12.0, 401};
    const double kappa = 1.0;
    auto op = cylinder_mode_operator(kappa, g);
    auto evs = lowest_eigenvalues(op, 2);
    const double h = g.spacing();
    for (double lambda : evs) {
        auto v = eigenvector(op, lambda);
        REQUIRE(v.size() == (size_t)(g.points - 2));
        cylinder::EigenfunctionSample sample;
        sample.x_nodes.resize(v.size());
        for (size_t i = 0; i < v.size(); ++i) sample.x_nodes[i] = g.left + h * (i + 1);
        sample.values = v;
        OdeCoefficients liouville{
            [](double) { return 0.0; },
            [kappa](double x) { return 0.75 / (x * x) + kappa * kappa * x * x; }};
        CHECK(ode_residual(liouville, sample, lambda) < 1e-12);
    }
}

TEST_CASE("residual oracle input validation") {
    cylinder::EigenfunctionSample s;
    s.x_nodes = {0.1, 0.2, 0.35, 0.4, 0.5, 0.6, 0.7}; // non-uniform
    s.values = {1, 1, 1, 1, 1, 1, 1};
    OdeCoefficients co{[](double) { return 0.0; }, [](double) { return 0.0; }};
    CHECK_THROWS_AS(ode_residual(co, s, 1.0), usage_error);
    cylinder::EigenfunctionSample tiny;
    tiny.x_nodes = {0.1, 0.2, 0.3};
    tiny.values = {1, 1, 1};
    CHECK_THROWS_AS(ode_residual(co, tiny, 1.0), usage_error);
}

TEST_CASE("weyl fit recovers its own model class") {
    std::vector<std::pair<double, double>> pure;
    for (double E : {1e4, 3e4, 1e5, 3e5, 1e6}) pure.push_back({E, 0.5 * E * std::log(E)});
    auto f = weyl_fit(pure);
    CHECK(std::fabs(f.a - 0.5) < 1e-10);
    CHECK(std::fabs(f.c) < 1e-10);
    CHECK(f.rms < 1e-10);

    std::vector<std::pair<double, double>> mixed;
    for (double E : {2e3, 1e4, 7e4, 4e5, 2e6}) {
        mixed.push_back({E, 0.25 * E * std::log(E) - 0.3 * E});
    }
    auto m = weyl_fit(mixed);
    CHECK(std::fabs(m.a - 0.25) < 1e-9);
    CHECK(std::fabs(m.c + 0.3) < 1e-9);
}

TEST_CASE("weyl fit rejects degenerate sample sets") {
    std::vector<std::pair<double, double>> few = {{1e4, 1.0}, {1e5, 2.0}, {1e6, 3.0}};
    CHECK_THROWS_AS(weyl_fit(few), usage_error);

    std::vector<std::pair<double, double>> dup = {
        {1e4, 1.0}, {1e4, 1.0}, {1e5, 2.0}, {1e6, 3.0}};
    CHECK_THROWS_AS(weyl_fit(dup), usage_error);

    std::vector<std::pair<double, double>> low = {
        {0.5, 1.0}, {1e4, 1.0}, {1e5, 2.0}, {1e6, 3.0}};
    CHECK_THROWS_AS(weyl_fit(low), usage_error);

    // distinct but collinear to rounding: the normal equations degenerate
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i < 4; ++i) {
        const double E = 1e5 * (1.0 + i * 1e-12);
        flat.push_back({E, 0.5 * E * std::log(E)});
    }
    CHECK_THROWS_AS(weyl_fit(flat), numeric_error);
}
