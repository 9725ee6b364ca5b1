#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pamea/core.hpp"
#include "pamea/rng.hpp"

namespace pamea {

/// One sampled row of indicator values along a run.
struct IndicatorPoint {
    std::uint64_t fe = 0;
    double igd = 0.0;
    double hv = 0.0;
    double mean_sparsity = 0.0;
};

using IndicatorTrajectory = std::vector<IndicatorPoint>;

/// Inverted generational distance: mean over reference points of the
/// Euclidean distance to the closest approximation point. Both sets must be
/// non-empty and dimensionally consistent.
double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& approximation);

/// Exact bi-objective hypervolume dominated by `points` relative to
/// `reference`, via a sort-and-sweep over the points strictly inside the
/// reference box. Points must be two-dimensional.
double hv2d(const std::vector<ObjectiveVector>& points,
            const ObjectiveVector& reference);

/// Mean fraction of active mask bits across a non-empty population.
double mean_sparsity(const Population& population);

/// Verdict of a rank-sum comparison under the smaller-is-better convention:
/// `better` means sample a is significantly smaller.
enum class RankSumVerdict { better, worse, approx };

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) comparison of two samples.
struct RankSumResult {
    double z = 0.0;
    double p_value = 1.0;
    int direction = 0;        // -1: a tends smaller, +1: a tends larger, 0: none
    bool significant = false; // p_value < alpha
    RankSumVerdict verdict = RankSumVerdict::approx;
};

/// Normal approximation with mid-rank tie correction and no continuity
/// correction; both samples need at least 5 values. Direction comes from the
/// sample medians, falling back to mean ranks on an exact median tie.
/// Degenerate data (zero rank variance) yields z = 0, p = 1, verdict approx.
RankSumResult rank_sum_test(const std::vector<double>& a,
                            const std::vector<double>& b, double alpha = 0.05);

/// Monte Carlo hypervolume estimate for any objective count >= 2; the
/// approximate fallback where no exact sweep exists, and an independent
/// cross-check for the exact 2-D result.
struct HvEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

HvEstimate hv_monte_carlo(const std::vector<ObjectiveVector>& points,
                          const ObjectiveVector& reference, std::size_t samples,
                          RngStream& rng);

/// Median of a sample (mid-average for even sizes). Input need not be sorted.
double median(std::vector<double> values);

/// Linear-interpolation quantile (the common "type 7" rule) of a sample.
double quantile(std::vector<double> values, double q);

} // namespace pamea
