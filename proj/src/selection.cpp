#include "pamea/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamea {
namespace {

// Pairwise dominance in one pass: a dominates b iff a is nowhere worse and
// somewhere strictly better.
inline void relate(const ObjectiveVector& a, const ObjectiveVector& b,
                   bool& a_dom, bool& b_dom) {
    bool a_less = false, b_less = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < b[k]) a_less = true;
        else if (b[k] < a[k]) b_less = true;
    }
    a_dom = a_less && !b_less;
    b_dom = b_less && !a_less;
}

inline double squared_distance(const ObjectiveVector& a, const ObjectiveVector& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

void check_uniform_size(const std::vector<ObjectiveVector>& objectives) {
    for (const auto& o : objectives)
        if (o.size() != objectives.front().size())
            throw std::invalid_argument("objective vectors differ in length");
}

} // namespace

FrontAssignment nondominated_sort(const std::vector<ObjectiveVector>& objectives) {
    FrontAssignment result;
    const std::size_t n = objectives.size();
    result.front.assign(n, 0);
    if (n == 0) return result;
    check_uniform_size(objectives);

    std::vector<std::size_t> dominated_count(n, 0);
    std::vector<std::vector<std::size_t>> dominates_list(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool i_dom = false, j_dom = false;
            relate(objectives[i], objectives[j], i_dom, j_dom);
            if (i_dom) {
                dominates_list[i].push_back(j);
                ++dominated_count[j];
            } else if (j_dom) {
                dominates_list[j].push_back(i);
                ++dominated_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominated_count[i] == 0) current.push_back(i);

    std::size_t front_number = 0;
    while (!current.empty()) {
        ++front_number;
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            result.front[i] = front_number;
            for (std::size_t j : dominates_list[i])
                if (--dominated_count[j] == 0) next.push_back(j);
        }
        current = std::move(next);
    }
    result.front_count = front_number;
    return result;
}

Spea2Fitness spea2_fitness(const std::vector<ObjectiveVector>& objectives) {
    Spea2Fitness result;
    const std::size_t n = objectives.size();
    result.fitness.assign(n, 0.0);
    result.raw.assign(n, 0.0);
    result.kth_distance.assign(n, 0.0);
    if (n == 0) return result;
    check_uniform_size(objectives);

    // Strength S(j) = #dominated by j; raw R(i) = sum of strengths of i's
    // dominators. Both need the full dominance relation.
    std::vector<double> strength(n, 0.0);
    std::vector<std::vector<std::size_t>> dominators(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool i_dom = false, j_dom = false;
            relate(objectives[i], objectives[j], i_dom, j_dom);
            if (i_dom) {
                strength[i] += 1.0;
                dominators[j].push_back(i);
            } else if (j_dom) {
                strength[j] += 1.0;
                dominators[i].push_back(j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : dominators[i]) result.raw[i] += strength[j];

    if (n == 1) {
        result.kth_distance[0] = 0.0;
        result.fitness[0] = result.raw[0] + 1.0 / (0.0 + 2.0);
        return result;
    }

    const std::size_t k = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::sqrt(static_cast<double>(n))), 1, n - 1);
    std::vector<double> row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) row[m++] = squared_distance(objectives[i], objectives[j]);
        std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
        result.kth_distance[i] = std::sqrt(row[k - 1]);
        result.fitness[i] = result.raw[i] + 1.0 / (result.kth_distance[i] + 2.0);
    }
    return result;
}

std::vector<std::size_t>
spea2_environmental_selection(const std::vector<ObjectiveVector>& objectives,
                              std::size_t n) {
    const std::size_t total = objectives.size();
    if (n == 0 || total < n)
        throw std::invalid_argument(
            "spea2_environmental_selection: need 1 <= n <= population size");
    if (total == n) {
        std::vector<std::size_t> all(total);
        for (std::size_t i = 0; i < total; ++i) all[i] = i;
        return all;
    }

    const Spea2Fitness fit = spea2_fitness(objectives);
    std::vector<std::size_t> nondom;
    for (std::size_t i = 0; i < total; ++i)
        if (fit.raw[i] == 0.0) nondom.push_back(i);

    if (nondom.size() == n) return nondom;

    if (nondom.size() < n) {
        std::vector<std::size_t> dominated;
        for (std::size_t i = 0; i < total; ++i)
            if (fit.raw[i] != 0.0) dominated.push_back(i);
        std::sort(dominated.begin(), dominated.end(),
                  [&](std::size_t a, std::size_t b) {
                      if (fit.fitness[a] != fit.fitness[b])
                          return fit.fitness[a] < fit.fitness[b];
                      return a < b;
                  });
        std::vector<std::size_t> chosen = nondom;
        chosen.insert(chosen.end(), dominated.begin(),
                      dominated.begin() +
                          static_cast<std::ptrdiff_t>(n - nondom.size()));
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

    // Truncation. Distances are kept squared: the square preserves both the
    // ordering and the exact-tie structure the profile comparison relies on.
    const std::size_t a = nondom.size();
    std::vector<double> dist2(a * a, 0.0);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = i + 1; j < a; ++j) {
            const double d =
                squared_distance(objectives[nondom[i]], objectives[nondom[j]]);
            dist2[i * a + j] = d;
            dist2[j * a + i] = d;
        }

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<char> alive(a, 1);
    std::vector<double> nn_val(a, inf);
    std::vector<std::size_t> nn_idx(a, a);
    auto rescan = [&](std::size_t i) {
        nn_val[i] = inf;
        nn_idx[i] = a;
        const double* row = &dist2[i * a];
        for (std::size_t j = 0; j < a; ++j) {
            if (j == i || !alive[j]) continue;
            if (row[j] < nn_val[i]) {
                nn_val[i] = row[j];
                nn_idx[i] = j;
            }
        }
    };
    for (std::size_t i = 0; i < a; ++i) rescan(i);

    auto profile = [&](std::size_t i) {
        std::vector<double> p;
        p.reserve(a);
        const double* row = &dist2[i * a];
        for (std::size_t j = 0; j < a; ++j)
            if (j != i && alive[j]) p.push_back(row[j]);
        std::sort(p.begin(), p.end());
        return p;
    };

    std::size_t alive_count = a;
    while (alive_count > n) {
        double min_nn = inf;
        for (std::size_t i = 0; i < a; ++i)
            if (alive[i] && nn_val[i] < min_nn) min_nn = nn_val[i];

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < a; ++i)
            if (alive[i] && nn_val[i] == min_nn) candidates.push_back(i);

        std::size_t victim = candidates.front();
        if (candidates.size() > 1) {
            // Full profiles are only materialised on exact first-element ties.
            std::vector<double> best = profile(victim);
            for (std::size_t c = 1; c < candidates.size(); ++c) {
                std::vector<double> p = profile(candidates[c]);
                if (std::lexicographical_compare(p.begin(), p.end(),
                                                 best.begin(), best.end())) {
                    best = std::move(p);
                    victim = candidates[c];
                } else if (p == best) {
                    victim = candidates[c]; // equal profiles: drop larger index
                }
            }
        }

        alive[victim] = 0;
        --alive_count;
        for (std::size_t i = 0; i < a; ++i)
            if (alive[i] && nn_idx[i] == victim) rescan(i);
    }

    std::vector<std::size_t> kept;
    kept.reserve(n);
    for (std::size_t i = 0; i < a; ++i)
        if (alive[i]) kept.push_back(nondom[i]);
    return kept;
}

} // namespace pamea
