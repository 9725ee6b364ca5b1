#include "pamea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pamea {

std::vector<RealVector> latin_hypercube(std::size_t samples, std::size_t dim,
                                        const Bounds& bounds, RngStream& rng) {
    if (bounds.size() != dim)
        throw std::invalid_argument("latin_hypercube: bounds dimension mismatch");
    if (samples == 0 || dim == 0)
        throw std::invalid_argument("latin_hypercube: samples and dim must be positive");
    for (std::size_t j = 0; j < dim; ++j)
        if (!std::isfinite(bounds.lower[j]) || !std::isfinite(bounds.upper[j]))
            throw std::invalid_argument("latin_hypercube: bounds must be finite");

    std::vector<RealVector> points(samples, RealVector(dim));
    std::vector<std::size_t> perm(samples);
    for (std::size_t j = 0; j < dim; ++j) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = samples - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
        const double lo = bounds.lower[j];
        const double width = bounds.upper[j] - bounds.lower[j];
        for (std::size_t s = 0; s < samples; ++s) {
            const double u = rng.uniform01();
            points[s][j] = lo + width * (static_cast<double>(perm[s]) + u) /
                                    static_cast<double>(samples);
        }
    }
    return points;
}

RealVector sbx(const RealVector& p, const RealVector& q,
               const OperatorParams& params, const Bounds& bounds, RngStream& rng) {
    if (p.size() != q.size() || bounds.size() != p.size())
        throw std::invalid_argument("sbx: parent/bounds dimension mismatch");

    const double exponent = 1.0 / (params.distribution_index + 1.0);
    RealVector child(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(rng.uniform01() < params.crossover_probability)) {
            child[i] = p[i];
            continue;
        }
        const double u = rng.uniform01();
        double beta = (u <= 0.5) ? std::pow(2.0 * u, exponent)
                                 : std::pow(2.0 - 2.0 * u, -exponent);
        if (!rng.coin()) beta = -beta;
        const double value = 0.5 * ((p[i] + q[i]) + beta * (p[i] - q[i]));
        child[i] = std::clamp(value, bounds.lower[i], bounds.upper[i]);
    }
    return child;
}

RealVector polynomial_mutation(RealVector x, const OperatorParams& params,
                               const Bounds& bounds, RngStream& rng) {
    if (bounds.size() != x.size())
        throw std::invalid_argument("polynomial_mutation: bounds dimension mismatch");

    const double eta = params.distribution_index;
    const double mut_pow = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(rng.uniform01() < params.mutation_probability)) continue;
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        if (hi <= lo) continue;
        const double u = rng.uniform01();
        const double d1 = (x[i] - lo) / (hi - lo);
        const double d2 = (hi - x[i]) / (hi - lo);
        double dq;
        if (u < 0.5) {
            const double xy = 1.0 - d1;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            dq = std::pow(val, mut_pow) - 1.0;
        } else {
            const double xy = 1.0 - d2;
            const double val =
                2.0 * (1.0 - u) + (2.0 * u - 1.0) * std::pow(xy, eta + 1.0);
            dq = 1.0 - std::pow(val, mut_pow);
        }
        x[i] = std::clamp(x[i] + dq * (hi - lo), lo, hi);
    }
    return x;
}

std::vector<std::size_t> tournament_indices(const std::vector<double>& fitness,
                                            std::size_t count, RngStream& rng) {
    if (fitness.empty())
        throw std::invalid_argument("binary_tournament: empty fitness vector");

    std::vector<std::size_t> selected;
    selected.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t i = rng.uniform_index(fitness.size());
        const std::size_t j = rng.uniform_index(fitness.size());
        if (fitness[i] < fitness[j]) selected.push_back(i);
        else if (fitness[j] < fitness[i]) selected.push_back(j);
        else selected.push_back(rng.coin() ? i : j);
    }
    return selected;
}

Population binary_tournament(const Population& population,
                             const std::vector<double>& fitness, std::size_t count,
                             RngStream& rng) {
    if (fitness.size() != population.size())
        throw std::invalid_argument("binary_tournament: fitness length mismatch");
    Population selected;
    selected.reserve(count);
    for (std::size_t i : tournament_indices(fitness, count, rng))
        selected.push_back(population[i]);
    return selected;
}

} // namespace pamea
