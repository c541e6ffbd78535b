#include "hypersurf/homogeneity.hpp"

#include <algorithm>
#include <cmath>

namespace hypersurf {

std::string to_string(ReturnsToScale label) {
    switch (label) {
        case ReturnsToScale::Constant: return "constant";
        case ReturnsToScale::Increasing: return "increasing";
        case ReturnsToScale::Decreasing: return "decreasing";
        case ReturnsToScale::NotHomogeneous: return "not-homogeneous";
    }
    return "not-homogeneous";
}

double euler_residual(const Jet2& jet, double r) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < jet.arity(); ++i)
        lhs += jet.point[i] * jet.gradient[i];
    return std::fabs(lhs - r * jet.value) / (1.0 + std::fabs(r * jet.value));
}

HomogeneityReport estimate_degree(const Expression& expr,
                                  const std::vector<std::vector<double>>& grid,
                                  double tolerance) {
    if (grid.empty()) throw InvalidArgument("empty grid");

    std::vector<Jet2> jets;
    std::vector<double> estimates;
    jets.reserve(grid.size());
    for (const auto& p : grid) {
        Jet2 jet = jet2(expr, p);
        if (jet.value == 0.0) continue;
        double euler_sum = 0.0;
        for (std::size_t i = 0; i < jet.arity(); ++i)
            euler_sum += p[i] * jet.gradient[i];
        estimates.push_back(euler_sum / jet.value);
        jets.push_back(std::move(jet));
    }
    if (estimates.empty()) throw DomainError("f vanishes on the whole grid");

    double mean = 0.0;
    for (double r : estimates) mean += r;
    mean /= static_cast<double>(estimates.size());
    double var = 0.0;
    for (double r : estimates) var += (r - mean) * (r - mean);
    var /= static_cast<double>(estimates.size());
    double stddev = std::sqrt(var);

    HomogeneityReport report;
    report.degree = mean;
    report.degree_stddev = stddev;

    // Direct scaling check on up to 10 grid points; the Euler ratio alone
    // can be constant for functions homogeneous on a subcone only.
    bool scaling_ok = stddev <= tolerance;
    if (scaling_ok) {
        const double factors[] = {0.5, 2.0, 3.0};
        std::size_t checked = 0;
        for (std::size_t k = 0; k < jets.size() && checked < 10 && scaling_ok; ++k) {
            const auto& p = jets[k].point;
            double fx = jets[k].value;
            for (double t : factors) {
                std::vector<double> scaled(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) scaled[i] = t * p[i];
                double expected = std::pow(t, mean) * fx;
                double got;
                try {
                    got = expr(scaled);
                } catch (const DomainError&) {
                    scaling_ok = false;
                    break;
                }
                if (std::fabs(got - expected) > tolerance * std::fabs(expected)) {
                    scaling_ok = false;
                    break;
                }
            }
            ++checked;
        }
    }

    report.is_homogeneous = scaling_ok;
    if (scaling_ok) {
        double residual_max = 0.0;
        for (const auto& jet : jets)
            residual_max = std::max(residual_max, euler_residual(jet, mean));
        report.euler_residual_max = residual_max;
        if (std::fabs(mean - 1.0) <= tolerance)
            report.returns_to_scale = ReturnsToScale::Constant;
        else if (mean > 1.0)
            report.returns_to_scale = ReturnsToScale::Increasing;
        else
            report.returns_to_scale = ReturnsToScale::Decreasing;
    } else {
        report.returns_to_scale = ReturnsToScale::NotHomogeneous;
    }
    return report;
}

EconomicDiagnostics economic_diagnostics(const Expression& expr,
                                         const std::vector<std::vector<double>>& grid) {
    EconomicDiagnostics diag;
    for (const auto& p : grid) {
        Jet2 jet = jet2(expr, p);
        for (std::size_t i = 0; i < jet.arity(); ++i) {
            if (!(jet.gradient[i] > 0.0)) diag.strictly_increasing = false;
            if (!(jet.hess(i, i) < 0.0)) diag.decreasing_efficiency = false;
        }
        ++diag.points_checked;
    }
    return diag;
}

}  // namespace hypersurf
