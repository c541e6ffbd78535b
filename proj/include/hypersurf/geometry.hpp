#pragma once

#include <array>
#include <functional>
#include <optional>

#include "hypersurf/autodiff.hpp"

namespace hypersurf {

// Normalization of the Riemann component denominator: "paper"-style
// reporting uses w^4, "gauss" the w^2 that the Gauss-equation
// derivation with h_ij = f_ij / w yields.  Flatness verdicts are
// identical under both since w > 0; the flag only changes reported
// magnitudes.
enum class Convention { Paper, Gauss };

inline constexpr double kFlatTolerance = 1e-9;
inline constexpr double kGkZeroTolerance = 1e-10;

// Per-point curvature record for a graph hypersurface z = f(x).
struct CurvatureSample {
    std::vector<double> point;
    double value = 0.0;
    double K = 0.0;
    double w = 1.0;
    double hessian_det = 0.0;
    double riemann_max_abs = 0.0;
    std::optional<double> monge_ampere_residual;  // n == 2 only
    bool flat_flagged = false;
    bool gk_zero_flagged = false;
};

double hessian_det(const Jet2& jet);

// Gauss-Kronecker curvature det(Hessian) / w^(n+2).
double gk_curvature(const Jet2& jet);

// Component g(R(d_i, d_j) d_k, d_l) = (f_il f_jk - f_ik f_jl) / w^4
// (w^2 under Convention::Gauss).
double riemann_component(const Jet2& jet, std::size_t i, std::size_t j,
                         std::size_t k, std::size_t l,
                         Convention convention = Convention::Paper);

// Max |component| over all index tuples; requires arity >= 2.
double riemann_max_abs(const Jet2& jet, Convention convention = Convention::Paper);

// Relative flatness test: all 2x2 Hessian minors below
// tol * (1 + max_ij f_ij^2).  Equivalent to the w^4-normalized bound on
// riemann_max_abs and independent of the convention flag.
bool riemann_flat_flagged(const Jet2& jet, double tolerance = kFlatTolerance);

// Relative Gauss-Kronecker-zero test: |det Hessian| below
// tol * (1 + max_ij |f_ij|)^n.
bool gk_zero_flagged(const Jet2& jet, double tolerance = kGkZeroTolerance);

// f_xx f_yy - f_xy^2 (raw, unnormalized).  Arity must be 2.
double monge_ampere_residual(const Jet2& jet);

CurvatureSample curvature_sample(const Expression& expr,
                                 std::span<const double> point,
                                 Convention convention = Convention::Paper);

// Developable graph generated from two one-variable functions g, h with
// g' != 0:  x = g(t) - s h'(t),  y = s,
// z = t g(t) - integral_0^t g + s (h(t) - t h'(t)).
struct UshakovSurface {
    Expression g;
    Expression h;
    double t_min, t_max;
    double s_min, s_max;

    UshakovSurface(Expression g, Expression h, double t_min, double t_max,
                   double s_min, double s_max);
};

std::array<double, 3> ushakov_point(const UshakovSurface& surface, double t, double s);

// A parametric surface evaluable on hyper-dual scalars; three passes
// recover all first and second partials needed for the fundamental forms.
using SurfaceMap =
    std::function<std::array<HyperDual, 3>(const HyperDual&, const HyperDual&)>;

SurfaceMap ushakov_map(const UshakovSurface& surface);

// Gaussian curvature K = (LN - M^2) / (EG - F^2) from the first and
// second fundamental forms.  Throws DomainError at degenerate points.
double parametric_gauss_curvature(const SurfaceMap& surface, double t, double s);

double ushakov_gauss_curvature(const UshakovSurface& surface, double t, double s);

}  // namespace hypersurf
