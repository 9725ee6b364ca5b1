#include "pamea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamea {

double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& approximation) {
    if (reference.empty() || approximation.empty())
        throw std::invalid_argument("igd: empty input set");
    const std::size_t m = reference.front().size();
    for (const auto& p : approximation)
        if (p.size() != m)
            throw std::invalid_argument("igd: objective dimension mismatch");

    double total = 0.0;
    for (const auto& r : reference) {
        if (r.size() != m)
            throw std::invalid_argument("igd: objective dimension mismatch");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : approximation) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double d = r[k] - p[k];
                s += d * d;
            }
            if (s < best) best = s;
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

double hv2d(const std::vector<ObjectiveVector>& points,
            const ObjectiveVector& reference) {
    if (reference.size() != 2)
        throw std::invalid_argument("hv2d: reference must be two-dimensional");

    std::vector<std::pair<double, double>> inside;
    for (const auto& p : points) {
        if (p.size() != 2)
            throw std::invalid_argument("hv2d: points must be two-dimensional");
        if (p[0] < reference[0] && p[1] < reference[1])
            inside.emplace_back(p[0], p[1]);
    }
    if (inside.empty()) return 0.0;

    // Sweep left to right; each point adds the rectangle between its f2 and
    // the best f2 seen so far. Dominated points fail the f2 test and add 0.
    std::sort(inside.begin(), inside.end());
    double area = 0.0;
    double prev_f2 = reference[1];
    for (const auto& [f1, f2] : inside) {
        if (f2 < prev_f2) {
            area += (reference[0] - f1) * (prev_f2 - f2);
            prev_f2 = f2;
        }
    }
    return area;
}

double mean_sparsity(const Population& population) {
    if (population.empty())
        throw std::invalid_argument("mean_sparsity: empty population");
    double total = 0.0;
    for (const auto& s : population) {
        if (s.mask.empty())
            throw std::invalid_argument("mean_sparsity: empty mask");
        total += static_cast<double>(support_size(s.mask)) /
                 static_cast<double>(s.mask.size());
    }
    return total / static_cast<double>(population.size());
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

RankSumResult rank_sum_test(const std::vector<double>& a,
                            const std::vector<double>& b, double alpha) {
    if (a.size() < 5 || b.size() < 5)
        throw std::invalid_argument("rank_sum_test: both samples need at least 5 values");

    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::pair<double, int>> pooled; // (value, origin: 0 = a, 1 = b)
    pooled.reserve(n);
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // Mid-ranks over tie groups; accumulate the tie correction term sum(t^3-t).
    double rank_sum_a = 0.0, rank_sum_b = 0.0, tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i);
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j); // 1-based
        for (std::size_t k = i; k < j; ++k)
            (pooled[k].second == 0 ? rank_sum_a : rank_sum_b) += mid_rank;
        if (t > 1.0) tie_term += t * t * t - t;
        i = j;
    }

    RankSumResult result;
    const double u_a = rank_sum_a - 0.5 * static_cast<double>(na) *
                                        static_cast<double>(na + 1);
    const double mean_u = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    const double nn = static_cast<double>(n);
    const double variance = static_cast<double>(na) * static_cast<double>(nb) /
                            12.0 *
                            ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));

    if (variance > 0.0) {
        result.z = (u_a - mean_u) / std::sqrt(variance);
        result.p_value = std::erfc(std::abs(result.z) / std::sqrt(2.0));
    } else {
        result.z = 0.0;
        result.p_value = 1.0;
    }
    result.significant = result.p_value < alpha;

    const double med_a = median(a), med_b = median(b);
    if (med_a < med_b) result.direction = -1;
    else if (med_b < med_a) result.direction = 1;
    else {
        const double mean_rank_a = rank_sum_a / static_cast<double>(na);
        const double mean_rank_b = rank_sum_b / static_cast<double>(nb);
        if (mean_rank_a < mean_rank_b) result.direction = -1;
        else if (mean_rank_b < mean_rank_a) result.direction = 1;
    }

    if (!result.significant || result.direction == 0)
        result.verdict = RankSumVerdict::approx;
    else
        result.verdict = result.direction < 0 ? RankSumVerdict::better
                                              : RankSumVerdict::worse;
    return result;
}

HvEstimate hv_monte_carlo(const std::vector<ObjectiveVector>& points,
                          const ObjectiveVector& reference, std::size_t samples,
                          RngStream& rng) {
    const std::size_t m = reference.size();
    if (m < 2)
        throw std::invalid_argument("hv_monte_carlo: need at least 2 objectives");
    if (samples == 0)
        throw std::invalid_argument("hv_monte_carlo: need at least 1 sample");

    std::vector<ObjectiveVector> inside;
    for (const auto& p : points) {
        if (p.size() != m)
            throw std::invalid_argument("hv_monte_carlo: objective dimension mismatch");
        bool strictly = true;
        for (std::size_t k = 0; k < m; ++k)
            if (!(p[k] < reference[k])) { strictly = false; break; }
        if (strictly) inside.push_back(p);
    }
    if (inside.empty()) return {};

    ObjectiveVector lo = inside.front();
    for (const auto& p : inside)
        for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], p[k]);
    double volume = 1.0;
    for (std::size_t k = 0; k < m; ++k) volume *= reference[k] - lo[k];

    // For two objectives the membership test reduces to a staircase lookup:
    // after sorting by f1, prefix-minimum f2 tells whether any point lies
    // below-left of a sample.
    std::size_t hits = 0;
    if (m == 2) {
        std::sort(inside.begin(), inside.end());
        std::vector<double> f1(inside.size()), min_f2(inside.size());
        double running = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inside.size(); ++i) {
            f1[i] = inside[i][0];
            running = std::min(running, inside[i][1]);
            min_f2[i] = running;
        }
        for (std::size_t s = 0; s < samples; ++s) {
            const double x1 = rng.uniform_real(lo[0], reference[0]);
            const double x2 = rng.uniform_real(lo[1], reference[1]);
            const auto it = std::upper_bound(f1.begin(), f1.end(), x1);
            if (it != f1.begin() &&
                min_f2[static_cast<std::size_t>(it - f1.begin()) - 1] <= x2)
                ++hits;
        }
    } else {
        ObjectiveVector x(m);
        for (std::size_t s = 0; s < samples; ++s) {
            for (std::size_t k = 0; k < m; ++k)
                x[k] = rng.uniform_real(lo[k], reference[k]);
            for (const auto& p : inside) {
                bool covered = true;
                for (std::size_t k = 0; k < m; ++k)
                    if (p[k] > x[k]) { covered = false; break; }
                if (covered) { ++hits; break; }
            }
        }
    }

    const double fraction = static_cast<double>(hits) / static_cast<double>(samples);
    HvEstimate estimate;
    estimate.value = volume * fraction;
    estimate.standard_error =
        volume * std::sqrt(fraction * (1.0 - fraction) /
                           static_cast<double>(samples));
    return estimate;
}

} // namespace pamea
