#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "grushin/cylinder.hpp" // EigenfunctionSample

namespace grushin::oracle {

struct Grid1D {
    double left = 0;
    double right = 1;
    long long points = 2; // nodes including both endpoints
    double spacing() const { return (right - left) / (double)(points - 1); }
};

// A u = lambda M u on the interior nodes, M = diag(mass_weights); offdiagonal
// has size diagonal.size() - 1. mass_weights identity for Schroedinger form.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;
    std::vector<double> mass_weights;
};

struct EigResult {
    std::vector<double> eigenvalues; // ascending
    Grid1D grid;
    std::vector<double> refinement_error_estimates; // per eigenvalue
};

// -(d/dx)^2 + (3/4)/x^2 + kappa^2 x^2, Dirichlet at both truncation ends
TridiagonalOperator cylinder_mode_operator(double kappa, const Grid1D& grid);

// divergence form with weight w = cot x: -(w u')' + w kappa^2 tan^2(x) u
// against mass w, Dirichlet at both truncated ends of (0, pi/2)
TridiagonalOperator sphere_mode_operator(double kappa, const Grid1D& grid);

// lowest m eigenvalues by Sturm bisection on the mass-symmetrized matrix
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int m);

// eigenvector of the generalized problem for an already computed eigenvalue,
// by inverse iteration; normalized to unit sup norm
std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda);

// three-level refinement: eigenvalues on the given grid, error estimates
// |lambda_h - lambda_2h| / 3 required to shrink from the coarser pair
EigResult fd_eigs_cylinder_mode(double kappa, const Grid1D& grid, int m);
EigResult fd_eigs_sphere_mode(double kappa, const Grid1D& grid, int m);

// -psi'' + first_order(x) psi' + potential(x) psi = lambda psi
struct OdeCoefficients {
    std::function<double(double)> first_order;
    std::function<double(double)> potential;
};

// coefficients of the mode equations solved by the closed-form radial
// profiles: cylinder -psi'' - (1/x) psi' + (1/x^2 + kappa^2 x^2) psi,
// sphere -psi'' + psi'/(sin x cos x) + kappa^2 tan^2 x psi
OdeCoefficients cylinder_mode_coefficients(double kappa);
OdeCoefficients sphere_mode_coefficients(double kappa);

// max over interior nodes of |(Op - lambda) psi| / (lambda ||psi||_inf),
// central 3-point differences; the sample grid must be uniform
double ode_residual(const OdeCoefficients& op, const cylinder::EigenfunctionSample& sample,
                    double lambda);

struct WeylFit {
    double a = 0; // coefficient of E ln E
    double c = 0; // coefficient of E
    double rms = 0; // RMS relative residual
};

WeylFit weyl_fit(const std::vector<std::pair<double, double>>& samples);

} // namespace grushin::oracle
