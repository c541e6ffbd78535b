#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypersurf/geometry.hpp"
#include "hypersurf/homogeneity.hpp"

namespace hypersurf {

enum class Verdict { LinearlyHomogeneousFlat, MultinomialPower, NotFlat, NotHomogeneous };

std::string to_string(Verdict verdict);

// Verdict for one function over one grid, with the fitted normal form
// when the multinomial branch applies.
struct Classification {
    Verdict verdict = Verdict::NotHomogeneous;
    HomogeneityReport homogeneity;
    std::vector<double> coefficients;  // fitted c, canonicalized
    double degree = 0.0;
    double fit_residual = 0.0;
    bool gk_zero_but_not_flat = false;
    double riemann_max = 0.0;          // max over grid
    double k_max_abs = 0.0;            // max |K| over grid
    double flat_fraction = 0.0;        // fraction of flat-flagged grid points
    std::optional<bool> developable;   // n == 2 only
};

struct ClassifyOptions {
    double flat_tolerance = kFlatTolerance;
    double degree_tolerance = kDegreeTolerance;
    double degree_one_cutoff = 1e-6;
    Convention convention = Convention::Paper;
};

// Decision pipeline: estimate degree, sweep Riemann minors, and either
// label the degree-1 flat branch, fit the multinomial power form, or
// report non-flatness (with the Gauss-Kronecker-zero flag).
Classification classify(const Expression& expr,
                        const std::vector<std::vector<double>>& grid,
                        const ClassifyOptions& options = {});

struct MultinomialFit {
    std::vector<double> coefficients;
    double residual = 0.0;
};

// Fits f = (c . x)^r through the gradient direction at the base point;
// scale fixed by f(base), sign canonicalized (first nonzero coefficient
// positive) when r is an even integer.
MultinomialFit fit_multinomial(const Expression& expr, double r,
                               std::span<const double> base,
                               const std::vector<std::vector<double>>& grid);

// Bernoulli profile equation u w' = w - w^2 / r integrated numerically
// against the closed form w(u) = r u / (u + r c).
struct ProfileSolution {
    double r = 0.0;
    double c = 0.0;
    std::vector<double> u;
    std::vector<double> w_numeric;
    std::vector<double> w_closed;
    double max_error = 0.0;

    double closed_form(double u) const;
    // Profile h(u) = (c1 u + c2)^r reconstructed from (r, c): a positive
    // multiple of (u + r c)^r; c = 0 degenerates to h(u) ~ u^r.
    double profile_c1() const { return 1.0; }
    double profile_c2() const { return r * c; }
};

ProfileSolution solve_profile_ode(double r, double c, double u_min, double u_max,
                                  std::size_t samples = 257);

}  // namespace hypersurf
