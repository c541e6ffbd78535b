#include "hypersurf/classify.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

#include "hypersurf/grid.hpp"
#include "hypersurf/numerics.hpp"

namespace hypersurf {

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::LinearlyHomogeneousFlat: return "LinearlyHomogeneousFlat";
        case Verdict::MultinomialPower: return "MultinomialPower";
        case Verdict::NotFlat: return "NotFlat";
        case Verdict::NotHomogeneous: return "NotHomogeneous";
    }
    return "NotHomogeneous";
}

namespace {

bool even_integer(double r) {
    long long n;
    return detail::is_integer_value(r, n) && (n % 2 == 0);
}

// (c . x)^r respecting the integer/fractional power split.
double power_form(double base, double r) {
    long long n;
    if (detail::is_integer_value(r, n)) return detail::powi(base, n);
    if (base <= 0.0) throw DomainError("fractional power requires a positive base");
    return std::pow(base, r);
}

}  // namespace

MultinomialFit fit_multinomial(const Expression& expr, double r,
                               std::span<const double> base,
                               const std::vector<std::vector<double>>& grid) {
    // estimated degrees carry O(1e-12) noise; snap so the integer-power
    // path (which permits sign changes of c.x) is taken when intended
    if (std::fabs(r - std::nearbyint(r)) <= 1e-8) r = std::nearbyint(r);
    if (std::fabs(r - 1.0) <= 1e-9)
        throw InvalidArgument("multinomial fit requires r != 1");
    if (grid.empty()) throw InvalidArgument("empty grid");

    Jet2 jet = jet2(expr, base);
    const std::size_t n = jet.arity();

    std::vector<double> c = jet.gradient;
    double gradient_norm = 0.0;
    for (double g : c) gradient_norm = std::max(gradient_norm, std::fabs(g));
    if (gradient_norm == 0.0)
        throw DomainError("zero gradient at the base point");

    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += c[i] * base[i];

    // Solve t^r (c.base)^r = f(base) for the scale t.
    long long ri;
    double t;
    if (detail::is_integer_value(r, ri)) {
        if (dot == 0.0) throw DomainError("gradient direction orthogonal to base point");
        double rhs = jet.value / detail::powi(dot, ri);
        if (ri % 2 == 0) {
            if (rhs <= 0.0) throw DomainError("unscalable fit: negative power ratio");
            t = std::pow(rhs, 1.0 / static_cast<double>(ri));
        } else {
            t = std::copysign(std::pow(std::fabs(rhs), 1.0 / static_cast<double>(ri)), rhs);
        }
    } else {
        if (dot <= 0.0 || jet.value <= 0.0)
            throw DomainError("unscalable fit: fractional r requires c.base > 0");
        t = std::pow(jet.value, 1.0 / r) / dot;
    }
    for (double& ci : c) ci *= t;

    // Sign is free exactly when r is an even integer.
    if (even_integer(r)) {
        for (double ci : c) {
            if (ci == 0.0) continue;
            if (ci < 0.0)
                for (double& cj : c) cj = -cj;
            break;
        }
    }

    MultinomialFit fit;
    fit.coefficients = c;
    for (const auto& p : grid) {
        double cx = 0.0;
        for (std::size_t i = 0; i < n; ++i) cx += c[i] * p[i];
        double predicted;
        try {
            predicted = power_form(cx, r);
        } catch (const DomainError&) {
            fit.residual = std::numeric_limits<double>::infinity();
            return fit;
        }
        double f = expr(p);
        fit.residual = std::max(fit.residual,
                                std::fabs(f - predicted) / (1.0 + std::fabs(f)));
    }
    return fit;
}

Classification classify(const Expression& expr,
                        const std::vector<std::vector<double>>& grid,
                        const ClassifyOptions& options) {
    if (grid.empty()) throw InvalidArgument("empty grid");

    Classification result;
    result.homogeneity = estimate_degree(expr, grid, options.degree_tolerance);
    result.degree = result.homogeneity.degree;

    const std::size_t count = grid.size();
    std::vector<char> flat(count, 0), flat_loose(count, 0), gk_zero(count, 0);
    std::vector<double> riemann(count, 0.0), k_abs(count, 0.0);
    std::vector<double> grad_norms(count, 0.0);

    std::exception_ptr sweep_error;
    std::mutex error_mutex;
    parallel_for(count, [&](std::size_t idx) {
        try {
            Jet2 jet = jet2(expr, grid[idx]);
            flat[idx] = riemann_flat_flagged(jet, options.flat_tolerance);
            flat_loose[idx] = riemann_flat_flagged(jet, 10.0 * options.flat_tolerance);
            gk_zero[idx] = gk_zero_flagged(jet);
            riemann[idx] = riemann_max_abs(jet, options.convention);
            k_abs[idx] = std::fabs(gk_curvature(jet));
            double g = 0.0;
            for (double v : jet.gradient) g += v * v;
            grad_norms[idx] = g;
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!sweep_error) sweep_error = std::current_exception();
        }
    });
    if (sweep_error) std::rethrow_exception(sweep_error);

    std::size_t flat_count = 0;
    bool none_exceed_loose = true;
    bool gk_zero_everywhere = true;
    for (std::size_t i = 0; i < count; ++i) {
        flat_count += flat[i] != 0;
        none_exceed_loose = none_exceed_loose && flat_loose[i] != 0;
        gk_zero_everywhere = gk_zero_everywhere && gk_zero[i] != 0;
        result.riemann_max = std::max(result.riemann_max, riemann[i]);
        result.k_max_abs = std::max(result.k_max_abs, k_abs[i]);
    }
    result.flat_fraction = static_cast<double>(flat_count) / static_cast<double>(count);

    // Grid verdict: flat when >= 99% of points are flagged and none
    // exceeds 10x the tolerance.
    bool is_flat = result.flat_fraction >= 0.99 && none_exceed_loose;
    if (grid.front().size() == 2) result.developable = is_flat;

    if (!result.homogeneity.is_homogeneous) {
        result.verdict = Verdict::NotHomogeneous;
        result.gk_zero_but_not_flat = gk_zero_everywhere && !is_flat;
        return result;
    }

    const double r = result.homogeneity.degree;
    if (is_flat && std::fabs(r - 1.0) <= options.degree_one_cutoff) {
        result.verdict = Verdict::LinearlyHomogeneousFlat;
        return result;
    }
    if (is_flat) {
        // Base point: the grid point with the strongest gradient.
        std::size_t best = 0;
        for (std::size_t i = 1; i < count; ++i)
            if (grad_norms[i] > grad_norms[best]) best = i;
        try {
            MultinomialFit fit = fit_multinomial(expr, r, grid[best], grid);
            if (fit.residual <= 1e-6) {
                result.verdict = Verdict::MultinomialPower;
                result.coefficients = fit.coefficients;
                result.fit_residual = fit.residual;
                return result;
            }
            result.fit_residual = fit.residual;
        } catch (const DomainError&) {
            // fall through to NotFlat-style reporting
        }
    }
    result.verdict = Verdict::NotFlat;
    result.gk_zero_but_not_flat = gk_zero_everywhere && !is_flat;
    return result;
}

double ProfileSolution::closed_form(double at) const {
    return r * at / (at + r * c);
}

ProfileSolution solve_profile_ode(double r, double c, double u_min, double u_max,
                                  std::size_t samples) {
    if (r == 0.0) throw InvalidArgument("profile equation requires r != 0");
    if (!(u_min < u_max)) throw InvalidArgument("invalid u range");
    if (samples < 2) throw InvalidArgument("at least two samples required");
    if (u_min <= 0.0 && u_max >= 0.0)
        throw DomainError("u range crosses the singular point u = 0");
    double pole = -r * c;
    if (pole >= u_min && pole <= u_max)
        throw DomainError("u range crosses the pole u = -r*c");

    ProfileSolution sol;
    sol.r = r;
    sol.c = c;
    sol.u.resize(samples);
    sol.w_numeric.resize(samples);
    sol.w_closed.resize(samples);

    auto rhs = [r](double u, double w) { return (w - w * w / r) / u; };

    const std::size_t substeps = 16;  // fixed step, local error << 1e-10
    double u0 = u_min;
    double w = sol.closed_form(u0);
    sol.u[0] = u0;
    sol.w_numeric[0] = w;
    sol.w_closed[0] = w;
    for (std::size_t k = 1; k < samples; ++k) {
        double u1 = u_min + (u_max - u_min) * static_cast<double>(k) /
                                static_cast<double>(samples - 1);
        w = rk4(rhs, u0, u1, w, substeps).back();
        sol.u[k] = u1;
        sol.w_numeric[k] = w;
        sol.w_closed[k] = sol.closed_form(u1);
        sol.max_error = std::max(sol.max_error, std::fabs(w - sol.w_closed[k]));
        u0 = u1;
    }
    return sol;
}

}  // namespace hypersurf
