#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pamea {

/// Bit vector stored one bit per byte; values are always 0 or 1.
using BinaryMask = std::vector<std::uint8_t>;
using RealVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;
using ProbabilityVector = std::vector<double>;

/// Candidate solution in the two-layer encoding: a binary mask selecting the
/// active variables and a real vector carrying their magnitudes. Objectives
/// stay unset until the solution has been evaluated.
struct Solution {
    BinaryMask mask;
    RealVector reals;
    std::optional<ObjectiveVector> objectives;
};

using Population = std::vector<Solution>;

/// Box constraints for the real layer.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
};

/// Minimisation problem over a box-bounded real domain.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::size_t dimension() const = 0;
    virtual std::size_t objective_count() const = 0;
    virtual const Bounds& bounds() const = 0;
    virtual ObjectiveVector evaluate(std::span<const double> x) const = 0;
};

/// Pareto dominance for minimisation: a is no worse in every objective and
/// strictly better in at least one. Mismatched lengths are a contract
/// violation and throw.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Element-wise product of mask and reals; the phenotype seen by problems.
RealVector decode(const Solution& s);

/// Number of set bits in a mask.
std::size_t support_size(const BinaryMask& mask);

} // namespace pamea
