#include "hypersurf/geometry.hpp"

#include <cmath>

#include "hypersurf/numerics.hpp"

namespace hypersurf {

double hessian_det(const Jet2& jet) {
    return determinant(jet.hessian, jet.arity());
}

double gk_curvature(const Jet2& jet) {
    const double n = static_cast<double>(jet.arity());
    return hessian_det(jet) / std::pow(jet.w, n + 2.0);
}

namespace {

double riemann_denominator(const Jet2& jet, Convention convention) {
    double w2 = jet.w * jet.w;
    return convention == Convention::Paper ? w2 * w2 : w2;
}

// Raw 2x2 Hessian minor f_il f_jk - f_ik f_jl.
double hessian_minor(const Jet2& jet, std::size_t i, std::size_t j,
                     std::size_t k, std::size_t l) {
    return jet.hess(i, l) * jet.hess(j, k) - jet.hess(i, k) * jet.hess(j, l);
}

double max_abs_minor(const Jet2& jet) {
    const std::size_t n = jet.arity();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    m = std::max(m, std::fabs(hessian_minor(jet, i, j, k, l)));
    return m;
}

}  // namespace

double riemann_component(const Jet2& jet, std::size_t i, std::size_t j,
                         std::size_t k, std::size_t l, Convention convention) {
    const std::size_t n = jet.arity();
    if (i >= n || j >= n || k >= n || l >= n)
        throw InvalidArgument("riemann component index out of range");
    return hessian_minor(jet, i, j, k, l) / riemann_denominator(jet, convention);
}

double riemann_max_abs(const Jet2& jet, Convention convention) {
    if (jet.arity() < 2)
        throw InvalidArgument("riemann curvature requires arity >= 2");
    return max_abs_minor(jet) / riemann_denominator(jet, convention);
}

bool riemann_flat_flagged(const Jet2& jet, double tolerance) {
    double h = jet.max_abs_hessian();
    return max_abs_minor(jet) <= tolerance * (1.0 + h * h);
}

bool gk_zero_flagged(const Jet2& jet, double tolerance) {
    double scale = std::pow(1.0 + jet.max_abs_hessian(),
                            static_cast<double>(jet.arity()));
    return std::fabs(hessian_det(jet)) <= tolerance * scale;
}

double monge_ampere_residual(const Jet2& jet) {
    if (jet.arity() != 2)
        throw InvalidArgument("Monge-Ampere residual requires arity 2");
    return jet.hess(0, 0) * jet.hess(1, 1) - jet.hess(0, 1) * jet.hess(0, 1);
}

CurvatureSample curvature_sample(const Expression& expr,
                                 std::span<const double> point,
                                 Convention convention) {
    Jet2 jet = jet2(expr, point);
    CurvatureSample s;
    s.point.assign(point.begin(), point.end());
    s.value = jet.value;
    s.w = jet.w;
    s.hessian_det = hessian_det(jet);
    s.K = gk_curvature(jet);
    s.riemann_max_abs = riemann_max_abs(jet, convention);
    if (jet.arity() == 2) s.monge_ampere_residual = monge_ampere_residual(jet);
    s.flat_flagged = riemann_flat_flagged(jet);
    s.gk_zero_flagged = gk_zero_flagged(jet);
    return s;
}

// ---------------------------------------------------------------------------
// Ushakov developable surfaces
// ---------------------------------------------------------------------------

UshakovSurface::UshakovSurface(Expression g_in, Expression h_in, double t_min,
                               double t_max, double s_min, double s_max)
    : g(std::move(g_in)),
      h(std::move(h_in)),
      t_min(t_min),
      t_max(t_max),
      s_min(s_min),
      s_max(s_max) {
    if (g.arity() != 1 || h.arity() != 1)
        throw InvalidArgument("ushakov generators must be one-variable functions");
    if (!(t_min < t_max) || !(s_min <= s_max))
        throw InvalidArgument("invalid ushakov parameter ranges");
    // g' != 0 is required by the construction; reject early on a coarse
    // sweep so CLI errors point at the generator, not at a sample point.
    for (int i = 0; i <= 16; ++i) {
        double t = t_min + (t_max - t_min) * i / 16.0;
        double gp = jet2(g, std::array{t}).gradient[0];
        if (std::fabs(gp) <= 1e-9)
            throw DomainError("g' vanishes on the parameter range (t = " +
                              std::to_string(t) + ")");
    }
}

namespace {

double g_prime_checked(const UshakovSurface& surface, double t) {
    double gp = jet2(surface.g, std::array{t}).gradient[0];
    if (std::fabs(gp) <= 1e-9)
        throw DomainError("g' vanishes at t = " + std::to_string(t));
    return gp;
}

// h'''(t): one central difference on the exact hyper-dual h''.  It only
// feeds the pure-tt second-order coefficient of h'(t); for Ushakov
// surfaces that coefficient multiplies the identically-zero N form.
double h_third(const Expression& h, double t) {
    const double delta = 1e-5;
    double hi = jet2(h, std::array{t + delta}).hess(0, 0);
    double lo = jet2(h, std::array{t - delta}).hess(0, 0);
    return (hi - lo) / (2.0 * delta);
}

}  // namespace

std::array<double, 3> ushakov_point(const UshakovSurface& surface, double t,
                                    double s) {
    if (t < surface.t_min || t > surface.t_max || s < surface.s_min ||
        s > surface.s_max)
        throw InvalidArgument("parameters outside declared ranges");
    g_prime_checked(surface, t);

    double g = surface.g(std::array{t});
    Jet2 hj = jet2(surface.h, std::array{t});
    double hp = hj.gradient[0];
    double gi = integrate([&](double r) { return surface.g(std::array{r}); },
                          0.0, t, 1e-10);
    return {g - s * hp, s, t * g - gi + s * (hj.value - t * hp)};
}

SurfaceMap ushakov_map(const UshakovSurface& surface) {
    // Copy the expressions; the returned closure must not dangle.
    Expression g = surface.g;
    Expression h = surface.h;
    return [g, h](const HyperDual& t, const HyperDual& s) -> std::array<HyperDual, 3> {
        double t0 = t.a;
        Jet2 gj = jet2(g, std::array{t0});
        if (std::fabs(gj.gradient[0]) <= 1e-9)
            throw DomainError("g' vanishes at t = " + std::to_string(t0));
        Jet2 hj = jet2(h, std::array{t0});

        std::array<HyperDual, 1> targ{t};
        HyperDual gv = evaluate<HyperDual>(*g.root(), std::span<const HyperDual>(targ));
        HyperDual hv = evaluate<HyperDual>(*h.root(), std::span<const HyperDual>(targ));
        // integral_0^t g lifted through the univariate chain rule:
        // value by quadrature, first derivative g(t), second g'(t).
        double iv = integrate([&](double r) { return g(std::array{r}); }, 0.0,
                              t0, 1e-10);
        HyperDual gi = compose(t, iv, gj.value, gj.gradient[0]);
        // h'(t) lifted: value h'(t), derivative h''(t), second h'''(t).
        HyperDual hp = compose(t, hj.gradient[0], hj.hess(0, 0), h_third(h, t0));

        HyperDual x = gv - s * hp;
        HyperDual z = t * gv - gi + s * (hv - t * hp);
        return {x, s, z};
    };
}

double parametric_gauss_curvature(const SurfaceMap& surface, double t, double s) {
    // Pass (t,t): e1 and e2 both along t -> X_t and X_tt.
    // Pass (t,s): mixed -> X_ts.  Pass (s,s) -> X_s and X_ss.
    std::array<HyperDual, 3> tt = surface(HyperDual(t, 1, 1, 0), HyperDual(s));
    std::array<HyperDual, 3> ts = surface(HyperDual(t, 1, 0, 0), HyperDual(s, 0, 1, 0));
    std::array<HyperDual, 3> ss = surface(HyperDual(t), HyperDual(s, 1, 1, 0));

    std::array<double, 3> Xt, Xs, Xtt, Xts, Xss;
    for (int i = 0; i < 3; ++i) {
        Xt[i] = tt[i].b;
        Xtt[i] = tt[i].d;
        Xts[i] = ts[i].d;
        Xs[i] = ss[i].b;
        Xss[i] = ss[i].d;
    }

    auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    std::array<double, 3> normal = {Xt[1] * Xs[2] - Xt[2] * Xs[1],
                                    Xt[2] * Xs[0] - Xt[0] * Xs[2],
                                    Xt[0] * Xs[1] - Xt[1] * Xs[0]};
    double nn = std::sqrt(dot(normal, normal));
    double E = dot(Xt, Xt), F = dot(Xt, Xs), G = dot(Xs, Xs);
    double metric_det = E * G - F * F;
    if (nn == 0.0 || metric_det <= 1e-14 * std::max(1.0, E * G))
        throw DomainError("degenerate first fundamental form");
    for (int i = 0; i < 3; ++i) normal[i] /= nn;

    double L = dot(Xtt, normal);
    double M = dot(Xts, normal);
    double N = dot(Xss, normal);
    return (L * N - M * M) / metric_det;
}

double ushakov_gauss_curvature(const UshakovSurface& surface, double t, double s) {
    return parametric_gauss_curvature(ushakov_map(surface), t, s);
}

}  // namespace hypersurf
