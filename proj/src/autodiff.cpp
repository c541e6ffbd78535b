#include "hypersurf/autodiff.hpp"

#include <cmath>

namespace hypersurf {

double Jet2::max_abs_hessian() const {
    double m = 0.0;
    for (double h : hessian) m = std::max(m, std::fabs(h));
    return m;
}

namespace {

double slope_factor(const std::vector<double>& gradient) {
    double s = 1.0;
    for (double g : gradient) s += g * g;
    return std::sqrt(s);
}

void check_finite(const Jet2& jet) {
    bool ok = std::isfinite(jet.value);
    for (double g : jet.gradient) ok = ok && std::isfinite(g);
    for (double h : jet.hessian) ok = ok && std::isfinite(h);
    if (!ok) throw DomainError("non-finite derivative at evaluation point");
}

}  // namespace

Jet2 jet2(const Expression& expr, std::span<const double> point) {
    const std::size_t n = expr.arity();
    if (point.size() != n) throw InvalidArgument("point arity mismatch");

    Jet2 jet;
    jet.point.assign(point.begin(), point.end());
    jet.gradient.assign(n, 0.0);
    jet.hessian.assign(n * n, 0.0);

    std::vector<HyperDual> args(n);
    for (std::size_t i = 0; i < n; ++i) args[i] = HyperDual(point[i]);

    // Pass (i, j), i <= j: seed e1 in direction i and e2 in direction j.
    // The mixed coefficient is the exact second partial; the e1
    // coefficient of the diagonal pass is the exact gradient entry.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            args[i].b = 1.0;
            args[j].c = 1.0;
            HyperDual out = evaluate<HyperDual>(expr, args);
            args[i].b = 0.0;
            args[j].c = 0.0;
            if (i == j) {
                jet.gradient[i] = out.b;
                if (i == 0) jet.value = out.a;
            }
            jet.hessian[i * n + j] = out.d;
            jet.hessian[j * n + i] = out.d;
        }
    }
    if (n == 0) jet.value = expr(point);
    jet.w = slope_factor(jet.gradient);
    check_finite(jet);
    return jet;
}

Jet2 fd_jet2(const Expression& expr, std::span<const double> point, double step) {
    if (step <= 0.0) throw InvalidArgument("finite-difference step must be positive");
    const std::size_t n = expr.arity();
    if (point.size() != n) throw InvalidArgument("point arity mismatch");

    std::vector<double> x(point.begin(), point.end());
    auto f = [&](const std::vector<double>& p) { return expr(p); };

    Jet2 jet;
    jet.point = x;
    jet.gradient.assign(n, 0.0);
    jet.hessian.assign(n * n, 0.0);
    jet.value = f(x);

    const double h = step;
    for (std::size_t i = 0; i < n; ++i) {
        double xi = x[i];
        x[i] = xi + h;
        double fp = f(x);
        x[i] = xi - h;
        double fm = f(x);
        x[i] = xi;
        jet.gradient[i] = (fp - fm) / (2.0 * h);
        jet.hessian[i * n + i] = (fp - 2.0 * jet.value + fm) / (h * h);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double xi = x[i], xj = x[j];
            x[i] = xi + h; x[j] = xj + h; double fpp = f(x);
            x[j] = xj - h;               double fpm = f(x);
            x[i] = xi - h; x[j] = xj + h; double fmp = f(x);
            x[j] = xj - h;               double fmm = f(x);
            x[i] = xi; x[j] = xj;
            double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            jet.hessian[i * n + j] = v;
            jet.hessian[j * n + i] = v;
        }
    }
    jet.w = slope_factor(jet.gradient);
    check_finite(jet);
    return jet;
}

}  // namespace hypersurf
