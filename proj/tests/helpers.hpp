#pragma once

// Shared fixtures for the unit tests: bound builders, random populations and
// two tiny mock problems with hand-computable probe behaviour.

#include <cstdint>
#include <span>
#include <vector>

#include "pamea/core.hpp"
#include "pamea/rng.hpp"

namespace pamea_test {

inline pamea::Bounds unit_bounds(std::size_t d, double lo = 0.0, double hi = 1.0) {
    return {pamea::RealVector(d, lo), pamea::RealVector(d, hi)};
}

inline pamea::BinaryMask random_mask(std::size_t d, double density,
                                     pamea::RngStream& rng) {
    pamea::BinaryMask mask(d, 0);
    for (auto& bit : mask) bit = rng.uniform01() < density ? 1 : 0;
    return mask;
}

inline pamea::RealVector random_reals(std::size_t d, pamea::RngStream& rng,
                                      double lo = 0.0, double hi = 1.0) {
    pamea::RealVector reals(d);
    for (auto& v : reals) v = rng.uniform_real(lo, hi);
    return reals;
}

/// Unevaluated random population; pass density < 0 to randomize it per member.
inline pamea::Population random_population(std::size_t n, std::size_t d,
                                           double density, pamea::RngStream& rng) {
    pamea::Population population(n);
    for (auto& s : population) {
        const double use = density < 0.0 ? rng.uniform01() : density;
        s.mask = random_mask(d, use, rng);
        s.reals = random_reals(d, rng);
    }
    return population;
}

/// D = 2 problem whose single-variable probes always rank variable 1 on front
/// 1 and variable 2 on front 2: any point with x1 nonzero dominates any point
/// with x1 zero.
struct RankedProbeProblem : pamea::Problem {
    pamea::Bounds box = unit_bounds(2);
    std::size_t dimension() const override { return 2; }
    std::size_t objective_count() const override { return 2; }
    const pamea::Bounds& bounds() const override { return box; }
    pamea::ObjectiveVector evaluate(std::span<const double> x) const override {
        const double level = x[0] != 0.0 ? 1.0 : 2.0;
        return {level, level};
    }
};

/// Problem where every probe ties: constant objectives.
struct FlatProblem : pamea::Problem {
    std::size_t d;
    pamea::Bounds box;
    explicit FlatProblem(std::size_t dim) : d(dim), box(unit_bounds(dim)) {}
    std::size_t dimension() const override { return d; }
    std::size_t objective_count() const override { return 2; }
    const pamea::Bounds& bounds() const override { return box; }
    pamea::ObjectiveVector evaluate(std::span<const double>) const override {
        return {1.0, 1.0};
    }
};

} // namespace pamea_test
