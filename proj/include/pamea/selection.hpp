#pragma once

#include <cstddef>
#include <vector>

#include "pamea/core.hpp"

namespace pamea {

/// Result of nondominated sorting; front numbers start at 1.
struct FrontAssignment {
    std::vector<std::size_t> front; // front number per member, parallel to input
    std::size_t front_count = 0;
};

/// SPEA2 fitness decomposition. fitness = raw_strength_sum + 1/(kth_distance + 2);
/// smaller is better and values below 1 identify the nondominated members.
struct Spea2Fitness {
    std::vector<double> fitness;
    std::vector<double> raw;          // R(i): summed strengths of dominators
    std::vector<double> kth_distance; // Euclidean distance to the k-th neighbour
};

/// Fast nondominated sort over raw objective vectors.
FrontAssignment nondominated_sort(const std::vector<ObjectiveVector>& objectives);

/// SPEA2 fitness with k = floor(sqrt(n)) clamped to [1, n-1]; a singleton
/// population gets kth_distance 0.
Spea2Fitness spea2_fitness(const std::vector<ObjectiveVector>& objectives);

/// SPEA2 environmental selection of exactly n members; requires
/// 1 <= n <= population size.
/// Nondominated members are kept and, when they overflow n, thinned by
/// iteratively removing the member with the lexicographically smallest sorted
/// vector of distances to the remaining survivors (equal profiles drop the
/// larger index). A shortfall is filled with dominated members by ascending
/// fitness, ties by smaller index. The returned indices are ascending.
std::vector<std::size_t>
spea2_environmental_selection(const std::vector<ObjectiveVector>& objectives,
                              std::size_t n);

} // namespace pamea
