#pragma once

#include <string>
#include <vector>

#include "hypersurf/autodiff.hpp"

namespace hypersurf {

inline constexpr double kDegreeTolerance = 1e-8;

enum class ReturnsToScale { Constant, Increasing, Decreasing, NotHomogeneous };

std::string to_string(ReturnsToScale label);

struct HomogeneityReport {
    bool is_homogeneous = false;
    double degree = 0.0;
    double euler_residual_max = 0.0;
    double degree_stddev = 0.0;
    ReturnsToScale returns_to_scale = ReturnsToScale::NotHomogeneous;
};

// Normalized Euler identity residual |sum x_i f_i - r f| / (1 + |r f|).
double euler_residual(const Jet2& jet, double r);

// Per-point degree estimate sum x_i f_i / f, accepted as homogeneous only
// when the estimates agree across the grid AND direct scaling
// f(t x) = t^r f(x) holds for t in {0.5, 2, 3} on the leading points.
HomogeneityReport estimate_degree(const Expression& expr,
                                  const std::vector<std::vector<double>>& grid,
                                  double tolerance = kDegreeTolerance);

struct EconomicDiagnostics {
    bool strictly_increasing = true;     // f_i > 0 everywhere sampled
    bool decreasing_efficiency = true;   // f_ii < 0 everywhere sampled
    std::size_t points_checked = 0;
};

EconomicDiagnostics economic_diagnostics(const Expression& expr,
                                         const std::vector<std::vector<double>>& grid);

}  // namespace hypersurf
