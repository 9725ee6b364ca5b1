#include "pamea/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pamea/metrics.hpp"
#include "pamea/selection.hpp"

namespace pamea {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::vector<ObjectiveVector> objectives_of(const Population& population) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& s : population) objs.push_back(*s.objectives);
    return objs;
}

double spread(const std::vector<double>& values) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    return *mx - *mn;
}

} // namespace

std::string_view to_string(SearchVariant v) {
    switch (v) {
    case SearchVariant::full: return "full";
    case SearchVariant::exploitation_only: return "exploitation_only";
    case SearchVariant::annealing_only: return "annealing_only";
    case SearchVariant::no_annealing: return "no_annealing";
    }
    return "full";
}

std::optional<SearchVariant> parse_variant(std::string_view name) {
    if (name == "full") return SearchVariant::full;
    if (name == "exploitation_only") return SearchVariant::exploitation_only;
    if (name == "annealing_only") return SearchVariant::annealing_only;
    if (name == "no_annealing") return SearchVariant::no_annealing;
    return std::nullopt;
}

void validate_config(const PameaConfig& config, std::size_t dimension) {
    if (dimension == 0)
        throw std::invalid_argument("config: dimension must be positive");
    if (config.population_size < 4 || config.population_size % 2 != 0)
        throw std::invalid_argument("config: population size must be even and at least 4");
    if (config.evaluation_budget == 0)
        throw std::invalid_argument("config: evaluation budget must be positive");
    if (config.sampling_cycles == 0)
        throw std::invalid_argument("config: sampling cycles must be positive");
    if (config.crossover_probability < 0.0 || config.crossover_probability > 1.0)
        throw std::invalid_argument("config: crossover probability outside [0,1]");
    if (config.mutation_probability &&
        (*config.mutation_probability < 0.0 || *config.mutation_probability > 1.0))
        throw std::invalid_argument("config: mutation probability outside [0,1]");
    if (!(config.distribution_index >= 0.0))
        throw std::invalid_argument("config: distribution index must be nonnegative");
}

namespace detail {

std::pair<std::size_t, std::size_t> draw_pair(std::vector<std::size_t>& pool,
                                              RngStream& rng) {
    const std::size_t a = rng.uniform_index(pool.size());
    const std::size_t first = pool[a];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
    const std::size_t b = rng.uniform_index(pool.size());
    const std::size_t second = pool[b];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(b));
    return {first, second};
}

std::pair<std::size_t, std::size_t> two_distinct(std::size_t n, RngStream& rng) {
    const std::size_t i = rng.uniform_index(n);
    std::size_t j = rng.uniform_index(n - 1);
    if (j >= i) ++j;
    return {i, j};
}

std::size_t pick_higher(const ProbabilityVector& score, std::size_t m, std::size_t n,
                        RngStream& rng) {
    if (score[m] > score[n]) return m;
    if (score[n] > score[m]) return n;
    return rng.coin() ? m : n;
}

std::size_t pick_lower(const ProbabilityVector& score, std::size_t m, std::size_t n,
                       RngStream& rng) {
    if (score[m] < score[n]) return m;
    if (score[n] < score[m]) return n;
    return rng.coin() ? m : n;
}

std::vector<std::size_t> xor_indices(const BinaryMask& a, const BinaryMask& b) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) out.push_back(i);
    return out;
}

std::vector<double> bit_fractions(const Population& population) {
    const std::size_t d = population.front().mask.size();
    std::vector<double> fractions(d, 0.0);
    for (const auto& s : population)
        for (std::size_t i = 0; i < d; ++i) fractions[i] += s.mask[i];
    for (auto& f : fractions) f /= static_cast<double>(population.size());
    return fractions;
}

std::vector<std::size_t> sample_distinct(const std::vector<std::size_t>& from,
                                         std::size_t k, RngStream& rng) {
    std::vector<std::size_t> copy = from;
    for (std::size_t t = 0; t < k; ++t)
        std::swap(copy[t], copy[t + rng.uniform_index(copy.size() - t)]);
    copy.resize(k);
    return copy;
}

void exploit_crossover(BinaryMask& child, const std::vector<std::size_t>& disagreement,
                       const ProbabilityVector& cpv, RngStream& rng) {
    // The branch coin precedes the bit picks and is drawn even when there is
    // nothing to write.
    const bool set_one = rng.uniform01() < 0.5;
    if (disagreement.empty()) return;
    std::size_t target;
    if (disagreement.size() == 1) {
        target = disagreement.front();
    } else {
        const auto [a, b] = two_distinct(disagreement.size(), rng);
        target = set_one ? pick_higher(cpv, disagreement[a], disagreement[b], rng)
                         : pick_lower(cpv, disagreement[a], disagreement[b], rng);
    }
    child[target] = set_one ? 1 : 0;
}

void exploit_mutation(BinaryMask& child, const ProbabilityVector& cpv, RngStream& rng) {
    const bool set_one = rng.uniform01() < 0.5;
    const std::uint8_t wanted = set_one ? 0 : 1;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < child.size(); ++i)
        if (child[i] == wanted) pool.push_back(i);
    if (pool.empty()) return;
    std::size_t target;
    if (pool.size() == 1) {
        target = pool.front();
    } else {
        const auto [a, b] = two_distinct(pool.size(), rng);
        target = set_one ? pick_higher(cpv, pool[a], pool[b], rng)
                         : pick_lower(cpv, pool[a], pool[b], rng);
    }
    child[target] = set_one ? 1 : 0;
}

void anneal_crossover(BinaryMask& child, const BinaryMask& disagreement_mask,
                      const VariableGrouping& grouping, RngStream& rng) {
    const std::size_t g = rng.uniform_index(grouping.groups.size());
    const bool set_one = rng.uniform01() < grouping.probabilities[g];
    const std::uint8_t value = set_one ? 1 : 0;
    for (std::size_t i : grouping.groups[g])
        if (disagreement_mask[i]) child[i] = value;
}

void anneal_mutation(BinaryMask& child, const VariableGrouping& grouping,
                     RngStream& rng) {
    const std::size_t g = rng.uniform_index(grouping.groups.size());
    const auto& block = grouping.groups[g];
    const auto chosen = sample_distinct(block, block.size() / 2, rng);
    const bool set_one = rng.uniform01() < grouping.probabilities[g];
    const std::uint8_t value = set_one ? 1 : 0;
    for (std::size_t i : chosen) child[i] = value;
}

namespace {

Population breed(const Population& base, std::vector<std::size_t> pool,
                 const ProbabilityVector* cpv, const VariableGrouping* grouping,
                 const OperatorParams& params, const Bounds& bounds, RngStream& rng) {
    Population children;
    children.reserve(pool.size() / 2);
    while (pool.size() >= 2) {
        const auto [pi, qi] = draw_pair(pool, rng);
        const Solution& p = base[pi];
        const Solution& q = base[qi];
        Solution child;
        child.mask = p.mask;
        if (cpv) {
            const auto disagreement = xor_indices(p.mask, q.mask);
            exploit_crossover(child.mask, disagreement, *cpv, rng);
            exploit_mutation(child.mask, *cpv, rng);
        } else {
            BinaryMask disagreement_mask(p.mask.size());
            for (std::size_t i = 0; i < p.mask.size(); ++i)
                disagreement_mask[i] = p.mask[i] ^ q.mask[i];
            anneal_crossover(child.mask, disagreement_mask, *grouping, rng);
            anneal_mutation(child.mask, *grouping, rng);
        }
        child.reals = polynomial_mutation(sbx(p.reals, q.reals, params, bounds, rng),
                                          params, bounds, rng);
        children.push_back(std::move(child));
    }
    return children;
}

} // namespace

Population exploitation_offspring(const Population& base, std::vector<std::size_t> pool,
                                  const ProbabilityVector& cpv,
                                  const OperatorParams& params, const Bounds& bounds,
                                  RngStream& rng) {
    return breed(base, std::move(pool), &cpv, nullptr, params, bounds, rng);
}

Population annealing_offspring(const Population& base, std::vector<std::size_t> pool,
                               const VariableGrouping& grouping,
                               const OperatorParams& params, const Bounds& bounds,
                               RngStream& rng) {
    return breed(base, std::move(pool), nullptr, &grouping, params, bounds, rng);
}

} // namespace detail

ProbabilityVector cpv_calculate(const Problem& problem, CountingEvaluator& evaluator,
                                std::size_t cycles, RngStream& rng) {
    const std::size_t d = problem.dimension();
    if (cycles == 0)
        throw std::invalid_argument("cpv_calculate: cycles must be positive");
    const auto levels = latin_hypercube(cycles, d, problem.bounds(), rng);

    // Single-variable probes live in the decoded space: every inactive
    // variable is exactly zero regardless of the bounds.
    std::vector<double> accumulated(d, 0.0);
    RealVector x(d, 0.0);
    std::vector<ObjectiveVector> probe_objs(d);
    for (std::size_t s = 0; s < cycles; ++s) {
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = levels[s][i];
            probe_objs[i] = evaluator.evaluate_raw(x);
            x[i] = 0.0;
        }
        const FrontAssignment fronts = nondominated_sort(probe_objs);
        for (std::size_t i = 0; i < d; ++i)
            accumulated[i] += static_cast<double>(fronts.front[i]);
    }

    const auto [mn_it, mx_it] =
        std::minmax_element(accumulated.begin(), accumulated.end());
    ProbabilityVector cpv(d, 0.5);
    if (*mx_it > *mn_it) {
        const double range = *mx_it - *mn_it;
        for (std::size_t i = 0; i < d; ++i)
            cpv[i] = 1.0 - (accumulated[i] - *mn_it) / range;
    }
    return cpv;
}

Population initialize(const Problem& problem, CountingEvaluator& evaluator,
                      std::size_t population_size, const ProbabilityVector& cpv,
                      RngStream& rng) {
    const std::size_t d = problem.dimension();
    const Bounds& bounds = problem.bounds();
    Population population(population_size);

    // The whole real matrix is drawn before any mask seeding.
    for (auto& s : population) {
        s.reals.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            s.reals[j] = rng.uniform_real(bounds.lower[j], bounds.upper[j]);
    }
    for (auto& s : population) {
        s.mask.assign(d, 0);
        const double u = rng.uniform01();
        const auto rounds =
            static_cast<std::size_t>(std::ceil(u * static_cast<double>(d)));
        for (std::size_t r = 0; r < rounds; ++r) {
            const std::size_t m = rng.uniform_index(d);
            const std::size_t n = rng.uniform_index(d);
            s.mask[detail::pick_higher(cpv, m, n, rng)] = 1;
        }
    }
    for (auto& s : population) evaluator.ensure_evaluated(s);
    return population;
}

Population exploitation_search(const Population& parents, const ProbabilityVector& cpv,
                               const OperatorParams& params, const Bounds& bounds,
                               RngStream& rng) {
    std::vector<std::size_t> pool(parents.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    return detail::exploitation_offspring(parents, std::move(pool), cpv, params,
                                          bounds, rng);
}

ProbabilityVector apv_compute(const Population& population, double rate) {
    if (population.empty())
        throw std::invalid_argument("apv_compute: empty population");
    auto fractions = detail::bit_fractions(population);
    for (auto& f : fractions) f = 0.5 * (1.0 - rate) + rate * f;
    return fractions;
}

VariableGrouping variable_clustering(const Population& population,
                                     const ProbabilityVector& apv) {
    if (population.empty())
        throw std::invalid_argument("variable_clustering: empty population");
    const std::size_t d = apv.size();

    double mean_support = 0.0;
    for (const auto& s : population)
        mean_support += static_cast<double>(support_size(s.mask));
    mean_support /= static_cast<double>(population.size());

    VariableGrouping grouping;
    grouping.group_size = static_cast<std::size_t>(std::clamp<long long>(
        std::llround(mean_support), 1, static_cast<long long>(d)));

    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (apv[a] != apv[b]) return apv[a] > apv[b];
        return a < b;
    });

    for (std::size_t start = 0; start < d; start += grouping.group_size) {
        const std::size_t stop = std::min(start + grouping.group_size, d);
        std::vector<std::size_t> block(order.begin() + static_cast<std::ptrdiff_t>(start),
                                       order.begin() + static_cast<std::ptrdiff_t>(stop));
        double mean = 0.0;
        for (std::size_t i : block) mean += apv[i];
        mean /= static_cast<double>(block.size());
        grouping.groups.push_back(std::move(block));
        grouping.probabilities.push_back(mean);
    }
    return grouping;
}

Population annealing_search(const Population& parents, const VariableGrouping& grouping,
                            const OperatorParams& params, const Bounds& bounds,
                            RngStream& rng) {
    std::vector<std::size_t> pool(parents.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    return detail::annealing_offspring(parents, std::move(pool), grouping, params,
                                       bounds, rng);
}

RunResult run(const Problem& problem, const PameaConfig& config, SearchVariant variant,
              const TrajectoryOptions& trajectory_options) {
    validate_config(config, problem.dimension());
    const std::size_t d = problem.dimension();
    const std::size_t n = config.population_size;
    const Bounds& bounds = problem.bounds();

    OperatorParams params;
    params.crossover_probability = config.crossover_probability;
    params.mutation_probability =
        config.mutation_probability.value_or(1.0 / static_cast<double>(d));
    params.distribution_index = config.distribution_index;

    RngStream cpv_rng(config.seed, "cpv");
    RngStream init_rng(config.seed, "init");
    RngStream selection_rng(config.seed, "selection");
    RngStream half1_rng(config.seed, "subpop1");
    RngStream half2_rng(config.seed, "subpop2");

    CountingEvaluator evaluator(problem);
    const ProbabilityVector cpv =
        cpv_calculate(problem, evaluator, config.sampling_cycles, cpv_rng);
    Population population = initialize(problem, evaluator, n, cpv, init_rng);

    RunResult result;
    auto log_row = [&](std::uint64_t generation, double rate, double apv_spread,
                       double frac_spread) {
        TrajectoryPoint row;
        row.generation = generation;
        row.fe = evaluator.count();
        const auto objs = objectives_of(population);
        row.igd = trajectory_options.reference_front.empty()
                      ? nan_value
                      : igd(trajectory_options.reference_front, objs);
        row.hv = hv2d(objs, trajectory_options.hv_reference);
        row.mean_sparsity = mean_sparsity(population);
        row.rate = rate;
        row.apv_spread = apv_spread;
        row.bit_fraction_spread = frac_spread;
        result.trajectory.push_back(row);
    };

    log_row(0, nan_value, nan_value, nan_value);

    const bool anneal_half1 = variant == SearchVariant::annealing_only;
    const bool anneal_half2 = variant != SearchVariant::exploitation_only;

    std::uint64_t generation = 0;
    while (evaluator.count() < config.evaluation_budget) {
        ++generation;
        const double rate = variant == SearchVariant::no_annealing
                                ? 1.0
                                : static_cast<double>(evaluator.count()) /
                                      static_cast<double>(config.evaluation_budget);
        const auto fractions = detail::bit_fractions(population);
        ProbabilityVector apv(d);
        for (std::size_t i = 0; i < d; ++i)
            apv[i] = 0.5 * (1.0 - rate) + rate * fractions[i];

        VariableGrouping grouping;
        if (anneal_half1 || anneal_half2)
            grouping = variable_clustering(population, apv);

        const Spea2Fitness fit = spea2_fitness(objectives_of(population));

        auto pool1 = tournament_indices(fit.fitness, n, selection_rng);
        Population q1 =
            anneal_half1
                ? detail::annealing_offspring(population, std::move(pool1), grouping,
                                              params, bounds, half1_rng)
                : detail::exploitation_offspring(population, std::move(pool1), cpv,
                                                 params, bounds, half1_rng);
        auto pool2 = tournament_indices(fit.fitness, n, selection_rng);
        Population q2 =
            anneal_half2
                ? detail::annealing_offspring(population, std::move(pool2), grouping,
                                              params, bounds, half2_rng)
                : detail::exploitation_offspring(population, std::move(pool2), cpv,
                                                 params, bounds, half2_rng);

        for (auto& s : q1) evaluator.ensure_evaluated(s);
        for (auto& s : q2) evaluator.ensure_evaluated(s);

        Population merged;
        merged.reserve(population.size() + q1.size() + q2.size());
        for (auto& s : population) merged.push_back(std::move(s));
        for (auto& s : q1) merged.push_back(std::move(s));
        for (auto& s : q2) merged.push_back(std::move(s));

        const auto keep = spea2_environmental_selection(objectives_of(merged), n);
        Population next;
        next.reserve(keep.size());
        for (std::size_t idx : keep) next.push_back(std::move(merged[idx]));
        population = std::move(next);

        const bool final_generation = evaluator.count() >= config.evaluation_budget;
        const bool scheduled = trajectory_options.log_every > 0 &&
                               generation % trajectory_options.log_every == 0;
        if (final_generation || scheduled)
            log_row(generation, rate, spread(apv), spread(fractions));
    }

    result.final_population = std::move(population);
    result.evaluations = evaluator.count();
    result.generations = generation;
    return result;
}

} // namespace pamea
