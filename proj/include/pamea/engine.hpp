#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pamea/core.hpp"
#include "pamea/operators.hpp"
#include "pamea/rng.hpp"

namespace pamea {

/// Which search operators drive the two offspring halves.
///   full:              exploitation half + annealing half
///   exploitation_only: both halves via exploitation search
///   annealing_only:    both halves via annealing search
///   no_annealing:      like full, but the annealing rate is pinned to 1
enum class SearchVariant { full, exploitation_only, annealing_only, no_annealing };

std::string_view to_string(SearchVariant v);
std::optional<SearchVariant> parse_variant(std::string_view name);

struct PameaConfig {
    std::size_t population_size = 100; // even, at least 4
    std::uint64_t evaluation_budget = 0;
    std::size_t sampling_cycles = 1; // Latin hypercube rows per variable probe
    double crossover_probability = 1.0;
    std::optional<double> mutation_probability; // unset selects 1/dimension
    double distribution_index = 20.0;
    std::uint64_t seed = 1;
};

/// Structural validation (sizes, probability ranges). Budget headroom is the
/// caller's policy: run() itself tolerates budgets already consumed by setup
/// and then performs zero main-loop generations.
void validate_config(const PameaConfig& config, std::size_t dimension);

/// Counts problem evaluations; a solution is charged exactly once.
class CountingEvaluator {
public:
    explicit CountingEvaluator(const Problem& problem) : problem_(problem) {}

    ObjectiveVector evaluate_raw(std::span<const double> x) {
        ++count_;
        return problem_.evaluate(x);
    }

    void ensure_evaluated(Solution& s) {
        if (s.objectives) return;
        scratch_.resize(s.reals.size());
        for (std::size_t i = 0; i < scratch_.size(); ++i)
            scratch_[i] = s.mask[i] ? s.reals[i] : 0.0;
        s.objectives = evaluate_raw(scratch_);
    }

    std::uint64_t count() const { return count_; }

private:
    const Problem& problem_;
    std::uint64_t count_ = 0;
    RealVector scratch_;
};

/// Contiguous blocks of the importance-sorted variable order, with one flip
/// probability per block.
struct VariableGrouping {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<double> probabilities; // mean annealing probability per group
    std::size_t group_size = 0;
};

/// One logged trajectory row. The annealing columns describe the state used
/// while breeding this generation and are NaN on the generation-0 row.
struct TrajectoryPoint {
    std::uint64_t generation = 0;
    std::uint64_t fe = 0;
    double igd = 0.0;
    double hv = 0.0;
    double mean_sparsity = 0.0;
    double rate = 0.0;
    double apv_spread = 0.0;
    double bit_fraction_spread = 0.0;
};

struct TrajectoryOptions {
    std::vector<ObjectiveVector> reference_front; // empty logs igd as NaN
    ObjectiveVector hv_reference{1.0, 1.0};
    std::size_t log_every = 1; // generations between rows; 0 logs first and last only
};

struct RunResult {
    Population final_population;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
};

/// Convergence-probability vector from single-variable probes: per sampling
/// cycle, each variable is tried alone at a Latin hypercube level, the probe
/// set is nondominated-sorted, and front numbers accumulate per variable. The
/// accumulated numbers are min-max normalised and inverted, so variables whose
/// lone activation lands on good fronts score high. A flat accumulation
/// yields 0.5 everywhere.
ProbabilityVector cpv_calculate(const Problem& problem, CountingEvaluator& evaluator,
                                std::size_t cycles, RngStream& rng);

/// Initial population: uniform reals, then per member ceil(u*D) rounds of
/// pairwise bit seeding, each setting the higher-scored of two uniformly
/// drawn variables (score ties resolved by coin).
Population initialize(const Problem& problem, CountingEvaluator& evaluator,
                      std::size_t population_size, const ProbabilityVector& cpv,
                      RngStream& rng);

/// Exploitation offspring: parents pair up without replacement; each child
/// copies the first parent's mask, then applies one score-guided bit write
/// drawn from the parents' disagreement set (crossover) and one from its own
/// zero or one bits (mutation), so the child mask stays within Hamming
/// distance 2 of the template. Reals undergo SBX and polynomial mutation.
Population exploitation_search(const Population& parents, const ProbabilityVector& cpv,
                               const OperatorParams& params, const Bounds& bounds,
                               RngStream& rng);

/// Annealing probability vector: blend of indifference (0.5) and the
/// population bit fraction, weighted by the annealing rate.
ProbabilityVector apv_compute(const Population& population, double rate);

/// Mean-sparsity-sized blocks of the variables sorted by annealing
/// probability (descending, index-ascending on ties).
VariableGrouping variable_clustering(const Population& population,
                                     const ProbabilityVector& apv);

/// Annealing offspring: like exploitation pairing, but bit edits happen in
/// group-sized strokes. Crossover rewrites the disagreement bits inside one
/// random group; mutation rewrites a random half of another group; each
/// stroke is set wholesale to 1 or 0 by a coin biased with the group
/// probability. Reals undergo SBX and polynomial mutation.
Population annealing_search(const Population& parents, const VariableGrouping& grouping,
                            const OperatorParams& params, const Bounds& bounds,
                            RngStream& rng);

/// Full optimisation run.
RunResult run(const Problem& problem, const PameaConfig& config, SearchVariant variant,
              const TrajectoryOptions& trajectory_options);

namespace detail {

/// Removes and returns a uniformly chosen pair (first draw, then second).
std::pair<std::size_t, std::size_t> draw_pair(std::vector<std::size_t>& pool,
                                              RngStream& rng);

/// Two distinct uniform positions in [0, n); n >= 2.
std::pair<std::size_t, std::size_t> two_distinct(std::size_t n, RngStream& rng);

/// Index with the larger (resp. smaller) score; exact ties flip a coin.
std::size_t pick_higher(const ProbabilityVector& score, std::size_t m, std::size_t n,
                        RngStream& rng);
std::size_t pick_lower(const ProbabilityVector& score, std::size_t m, std::size_t n,
                       RngStream& rng);

/// Positions where the two masks disagree.
std::vector<std::size_t> xor_indices(const BinaryMask& a, const BinaryMask& b);

/// Per-variable fraction of set bits across the population.
std::vector<double> bit_fractions(const Population& population);

/// k distinct members of `from`, via partial Fisher-Yates on a copy.
std::vector<std::size_t> sample_distinct(const std::vector<std::size_t>& from,
                                         std::size_t k, RngStream& rng);

/// Crossover bit step of the exploitation search, in place.
void exploit_crossover(BinaryMask& child, const std::vector<std::size_t>& disagreement,
                       const ProbabilityVector& cpv, RngStream& rng);

/// Mutation bit step of the exploitation search, in place.
void exploit_mutation(BinaryMask& child, const ProbabilityVector& cpv, RngStream& rng);

/// Crossover stroke of the annealing search, in place. `disagreement_mask`
/// flags the positions where the parents differ.
void anneal_crossover(BinaryMask& child, const BinaryMask& disagreement_mask,
                      const VariableGrouping& grouping, RngStream& rng);

/// Mutation stroke of the annealing search, in place.
void anneal_mutation(BinaryMask& child, const VariableGrouping& grouping,
                     RngStream& rng);

} // namespace detail
} // namespace pamea
