#pragma once

#include <span>
#include <vector>

#include "hypersurf/expr.hpp"

namespace hypersurf {

// Value, gradient and Hessian of f at a point, plus the slope factor
// w = sqrt(1 + |grad f|^2).  The Hessian is stored dense row-major;
// each entry is computed once for i <= j and mirrored, so it is
// symmetric exactly.
struct Jet2 {
    double value = 0.0;
    std::vector<double> gradient;
    std::vector<double> hessian;  // n*n, row-major
    std::vector<double> point;
    double w = 1.0;

    std::size_t arity() const { return gradient.size(); }
    double hess(std::size_t i, std::size_t j) const { return hessian[i * arity() + j]; }
    double max_abs_hessian() const;
};

// Exact first and second derivatives via n(n+1)/2 hyper-dual passes.
Jet2 jet2(const Expression& expr, std::span<const double> point);

// Central-difference oracle with O(step^2) truncation error.  Kept
// independent of the hyper-dual path; test code compares the two.
Jet2 fd_jet2(const Expression& expr, std::span<const double> point, double step);

}  // namespace hypersurf
