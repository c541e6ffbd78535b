#pragma once

#include <functional>
#include <vector>

#include "hypersurf/errors.hpp"

namespace hypersurf {

// Adaptive Simpson quadrature of f over [a, b] to the given absolute
// tolerance.  Throws DomainError if the recursion depth limit is hit
// before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance = 1e-10);

// Pivoted-elimination determinant of a dense row-major n x n matrix.
double determinant(std::vector<double> matrix, std::size_t n);

// Rank of a dense row-major matrix by pivoted elimination with a
// relative threshold.  Used as an independent oracle for the
// Hessian-minor flatness check.
std::size_t matrix_rank(std::vector<double> matrix, std::size_t rows,
                        std::size_t cols, double relative_tolerance = 1e-10);

// Classic fixed-step 4th-order Runge-Kutta for a scalar ODE
// y' = f(u, y) from u0 to u1 with the given number of steps.
// Returns the trajectory at the step endpoints (steps + 1 values).
std::vector<double> rk4(const std::function<double(double, double)>& f,
                        double u0, double u1, double y0, std::size_t steps);

}  // namespace hypersurf
