#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pamea/core.hpp"

namespace pamea {

/// Landscape flavour of the sparse benchmark family.
enum class DeskVariant { easy, multimodal, deceptive };

std::string_view to_string(DeskVariant v);

/// Sparse bi-objective benchmark with an analytically known Pareto set: the
/// front is the segment f1 + f2 = 1, reached exactly when every off-support
/// variable is zero and every non-position support variable sits on its
/// target. Variable 0 is the position variable sweeping the front.
///
/// Per decoded point x in [0,1]^D:
///   f1 = x_0 * (1 + g),  f2 = (1 - x_0) * (1 + g)
/// with g summing a target penalty h over the support (minus the position
/// variable) and an off-support penalty d elsewhere. h and d depend on the
/// variant; d(0) = 0 always, so sparse solutions pay nothing off support.
class DeskSmop final : public Problem {
public:
    struct Config {
        std::size_t dimension = 0;
        DeskVariant variant = DeskVariant::easy;
        std::size_t sparsity = 0;        // 0 selects the default ceil(0.1*(D-1))
        std::uint64_t placement_seed = 0; // 0 keeps the support on the first indices
    };

    explicit DeskSmop(const Config& config);

    /// Parses ids of the form
    ///   desk-smop:<easy|multimodal|deceptive>:D=<int>[:theta=<int>][:seed=<int>]
    /// Malformed ids throw std::invalid_argument.
    static DeskSmop from_id(std::string_view id);

    /// Canonical id string; optional fields appear only when non-default.
    std::string id() const;

    std::size_t dimension() const override { return dimension_; }
    std::size_t objective_count() const override { return 2; }
    const Bounds& bounds() const override { return bounds_; }
    ObjectiveVector evaluate(std::span<const double> x) const override;

    /// n points equally spaced along the true front, endpoints included.
    std::vector<ObjectiveVector> sample_front(std::size_t n) const;

    DeskVariant variant() const { return variant_; }
    std::size_t sparsity() const { return support_.size(); }
    const std::vector<std::size_t>& support() const { return support_; }
    double target_value() const { return 0.6; }

private:
    std::size_t dimension_;
    DeskVariant variant_;
    std::uint64_t placement_seed_;
    std::vector<std::size_t> support_;   // ascending, always contains 0
    std::vector<std::uint8_t> in_support_;
    Bounds bounds_;
};

} // namespace pamea
