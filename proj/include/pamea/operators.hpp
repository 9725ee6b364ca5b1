#pragma once

#include <cstddef>
#include <vector>

#include "pamea/core.hpp"
#include "pamea/rng.hpp"

namespace pamea {

/// Shared parameters for the real-valued variation operators.
struct OperatorParams {
    double crossover_probability = 1.0; // per-variable SBX gate
    double mutation_probability = 0.0;  // per-component mutation gate, typically 1/D
    double distribution_index = 20.0;   // eta for both SBX and polynomial mutation
};

/// Latin hypercube sample: `samples` points in the box, one stratum per
/// sample and variable. Per variable, a Fisher-Yates stratum permutation is
/// drawn first, then one uniform offset per sample; values lie in [lo, hi).
std::vector<RealVector> latin_hypercube(std::size_t samples, std::size_t dim,
                                        const Bounds& bounds, RngStream& rng);

/// Simulated binary crossover producing a single child. Per variable: a gate
/// draw against crossover_probability (failed gate copies the first parent),
/// then the spread-factor draw, then a fair sign coin choosing which of the
/// two symmetric children to keep, so the child mean is the parent midpoint.
/// Results are clamped to the bounds.
RealVector sbx(const RealVector& p, const RealVector& q,
               const OperatorParams& params, const Bounds& bounds, RngStream& rng);

/// Bounded polynomial mutation. Per component: a gate draw against
/// mutation_probability, then one uniform draw shaping the perturbation. A
/// component at its lower bound can only move up, and vice versa.
RealVector polynomial_mutation(RealVector x, const OperatorParams& params,
                               const Bounds& bounds, RngStream& rng);

/// Binary tournament with replacement over fitness values where smaller is
/// better: per slot two index draws, then a fair coin only when the two
/// fitness values tie exactly. Returns the selected member indices.
std::vector<std::size_t> tournament_indices(const std::vector<double>& fitness,
                                            std::size_t count, RngStream& rng);

/// Tournament returning copies of the selected members.
Population binary_tournament(const Population& population,
                             const std::vector<double>& fitness, std::size_t count,
                             RngStream& rng);

} // namespace pamea
