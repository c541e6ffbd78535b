#include "hypersurf/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace hypersurf {

void DomainBox::validate() const {
    if (lower.size() != upper.size() || lower.empty())
        throw InvalidArgument("domain box dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i]))
            throw InvalidArgument("domain box requires min < max on every axis");
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw InvalidArgument("domain box bounds must be finite");
    }
}

DomainBox DomainBox::uniform(std::size_t n, double lo, double hi) {
    DomainBox box;
    box.lower.assign(n, lo);
    box.upper.assign(n, hi);
    return box;
}

std::vector<std::vector<double>> lattice_grid(const DomainBox& box,
                                              std::size_t resolution,
                                              std::size_t max_points) {
    box.validate();
    if (resolution < 2) throw InvalidArgument("lattice resolution must be >= 2");
    const std::size_t n = box.arity();

    double total = std::pow(static_cast<double>(resolution), static_cast<double>(n));
    if (total > static_cast<double>(max_points))
        throw InvalidArgument("lattice grid exceeds the point cap");

    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            double t = static_cast<double>(idx[i]) / static_cast<double>(resolution - 1);
            p[i] = box.lower[i] + t * (box.upper[i] - box.lower[i]);
        }
        points.push_back(std::move(p));
        std::size_t axis = 0;
        while (axis < n && ++idx[axis] == resolution) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == n) break;
    }
    return points;
}

namespace {

constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double halton(std::uint64_t index, std::uint32_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

}  // namespace

std::vector<std::vector<double>> halton_grid(const DomainBox& box,
                                             std::size_t count,
                                             std::uint64_t seed) {
    box.validate();
    if (count == 0) throw InvalidArgument("empty sample set");
    const std::size_t n = box.arity();
    if (n > std::size(kPrimes))
        throw InvalidArgument("halton grid supports at most 20 dimensions");

    std::vector<std::vector<double>> points(count, std::vector<double>(n));
    for (std::size_t k = 0; k < count; ++k) {
        // index 0 maps every axis to 0 (a box corner); skip it.
        std::uint64_t index = seed + k + 1;
        for (std::size_t i = 0; i < n; ++i) {
            double t = halton(index, kPrimes[i]);
            points[k][i] = box.lower[i] + t * (box.upper[i] - box.lower[i]);
        }
    }
    return points;
}

namespace {

std::size_t thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t budget = hw > 0 ? hw : 1;
    if (const char* env = std::getenv("HYPERSURF_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) budget = static_cast<std::size_t>(v);
    }
    return budget;
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hypersurf
