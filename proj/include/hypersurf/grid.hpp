#pragma once

#include <functional>
#include <vector>

#include "hypersurf/errors.hpp"

namespace hypersurf {

// Axis-aligned box in R^n.
struct DomainBox {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t arity() const { return lower.size(); }
    void validate() const;

    static DomainBox uniform(std::size_t n, double lo = 0.5, double hi = 2.0);
};

// Regular lattice with `resolution` samples per axis (>= 2, endpoints
// included).  Total point count must not exceed `max_points`.
std::vector<std::vector<double>> lattice_grid(const DomainBox& box,
                                              std::size_t resolution,
                                              std::size_t max_points = 100000);

// Low-discrepancy Halton points mapped into the box.  `seed` offsets the
// start index into the sequence so runs are reproducible yet selectable.
std::vector<std::vector<double>> halton_grid(const DomainBox& box,
                                             std::size_t count,
                                             std::uint64_t seed = 0);

// Runs fn(i) for i in [0, count) on up to HYPERSURF_THREADS workers
// (hardware concurrency when unset).  fn must be safe to call
// concurrently for distinct i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hypersurf
