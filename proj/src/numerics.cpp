#include "hypersurf/numerics.hpp"

#include <cmath>

namespace hypersurf {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw DomainError("quadrature failed to converge");
    return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive(f, a, fa, b, fb, m, fm, whole, tolerance, 48);
}

double determinant(std::vector<double> m, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r * n + col]) > std::fabs(m[pivot * n + col])) pivot = r;
        if (m[pivot * n + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m[pivot * n + c], m[col * n + c]);
            det = -det;
        }
        double p = m[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = m[r * n + col] / p;
            for (std::size_t c = col; c < n; ++c)
                m[r * n + c] -= factor * m[col * n + c];
        }
    }
    return det;
}

std::size_t matrix_rank(std::vector<double> m, std::size_t rows,
                        std::size_t cols, double relative_tolerance) {
    double scale = 0.0;
    for (double v : m) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return 0;
    const double threshold = relative_tolerance * scale;

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::fabs(m[r * cols + col]) > std::fabs(m[pivot * cols + col])) pivot = r;
        if (std::fabs(m[pivot * cols + col]) <= threshold) continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(m[pivot * cols + c], m[rank * cols + c]);
        double p = m[rank * cols + col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            double factor = m[r * cols + col] / p;
            for (std::size_t c = col; c < cols; ++c)
                m[r * cols + c] -= factor * m[rank * cols + c];
        }
        ++rank;
    }
    return rank;
}

std::vector<double> rk4(const std::function<double(double, double)>& f,
                        double u0, double u1, double y0, std::size_t steps) {
    if (steps == 0) throw InvalidArgument("rk4 requires at least one step");
    std::vector<double> y(steps + 1);
    y[0] = y0;
    const double h = (u1 - u0) / static_cast<double>(steps);
    double u = u0, v = y0;
    for (std::size_t i = 0; i < steps; ++i) {
        double k1 = f(u, v);
        double k2 = f(u + 0.5 * h, v + 0.5 * h * k1);
        double k3 = f(u + 0.5 * h, v + 0.5 * h * k2);
        double k4 = f(u + h, v + h * k3);
        v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        u = u0 + (static_cast<double>(i) + 1.0) * h;
        y[i + 1] = v;
    }
    return y;
}

}  // namespace hypersurf
