#include "pamea/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pamea/rng.hpp"

namespace pamea {
namespace {

std::size_t default_sparsity(std::size_t dimension) {
    // ceil(0.1 * (D - m + 1)) with m = 2 objectives, in exact integer form.
    return (dimension - 1 + 9) / 10;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("desk-smop id: bad " + std::string(what) +
                                    " value '" + std::string(text) + "'");
    return value;
}

} // namespace

std::string_view to_string(DeskVariant v) {
    switch (v) {
    case DeskVariant::easy: return "easy";
    case DeskVariant::multimodal: return "multimodal";
    case DeskVariant::deceptive: return "deceptive";
    }
    return "easy";
}

DeskSmop::DeskSmop(const Config& config)
    : dimension_(config.dimension), variant_(config.variant),
      placement_seed_(config.placement_seed) {
    if (dimension_ < 2)
        throw std::invalid_argument("desk-smop: dimension must be at least 2");
    const std::size_t theta =
        config.sparsity == 0 ? default_sparsity(dimension_) : config.sparsity;
    if (theta < 1 || theta > dimension_)
        throw std::invalid_argument("desk-smop: sparsity out of range");

    if (placement_seed_ == 0) {
        support_.resize(theta);
        for (std::size_t i = 0; i < theta; ++i) support_[i] = i;
    } else {
        // Randomised placement still pins the position variable at index 0.
        RngStream rng(placement_seed_, "desk-smop-support");
        std::vector<std::size_t> rest(dimension_ - 1);
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = i + 1;
        for (std::size_t i = 0; i + 1 < theta; ++i)
            std::swap(rest[i], rest[i + rng.uniform_index(rest.size() - i)]);
        support_.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(theta - 1));
        support_.push_back(0);
        std::sort(support_.begin(), support_.end());
    }

    in_support_.assign(dimension_, 0);
    for (std::size_t i : support_) in_support_[i] = 1;

    bounds_.lower.assign(dimension_, 0.0);
    bounds_.upper.assign(dimension_, 1.0);
}

DeskSmop DeskSmop::from_id(std::string_view id) {
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (start <= id.size()) {
        const std::size_t pos = id.find(':', start);
        if (pos == std::string_view::npos) {
            tokens.push_back(id.substr(start));
            break;
        }
        tokens.push_back(id.substr(start, pos - start));
        start = pos + 1;
    }
    if (tokens.size() < 3 || tokens[0] != "desk-smop")
        throw std::invalid_argument("desk-smop id: expected "
                                    "desk-smop:<variant>:D=<int>[:theta=<int>][:seed=<int>]");

    Config config;
    if (tokens[1] == "easy") config.variant = DeskVariant::easy;
    else if (tokens[1] == "multimodal") config.variant = DeskVariant::multimodal;
    else if (tokens[1] == "deceptive") config.variant = DeskVariant::deceptive;
    else
        throw std::invalid_argument("desk-smop id: unknown variant '" +
                                    std::string(tokens[1]) + "'");

    if (tokens[2].substr(0, 2) != "D=")
        throw std::invalid_argument("desk-smop id: third field must be D=<int>");
    config.dimension = parse_u64(tokens[2].substr(2), "dimension");

    for (std::size_t i = 3; i < tokens.size(); ++i) {
        const std::string_view t = tokens[i];
        if (t.substr(0, 6) == "theta=") {
            config.sparsity = parse_u64(t.substr(6), "theta");
            if (config.sparsity == 0) // 0 is the internal use-the-default sentinel
                throw std::invalid_argument("desk-smop id: theta must be positive");
        } else if (t.substr(0, 5) == "seed=") {
            config.placement_seed = parse_u64(t.substr(5), "seed");
        } else {
            throw std::invalid_argument("desk-smop id: unknown field '" + std::string(t) + "'");
        }
    }
    return DeskSmop(config);
}

std::string DeskSmop::id() const {
    std::string out = "desk-smop:";
    out += to_string(variant_);
    out += ":D=" + std::to_string(dimension_);
    if (support_.size() != default_sparsity(dimension_))
        out += ":theta=" + std::to_string(support_.size());
    if (placement_seed_ != 0) out += ":seed=" + std::to_string(placement_seed_);
    return out;
}

ObjectiveVector DeskSmop::evaluate(std::span<const double> x) const {
    if (x.size() != dimension_)
        throw std::invalid_argument("desk-smop: input dimension mismatch");

    double g = 0.0;
    for (std::size_t i = 1; i < dimension_; ++i) {
        const double xi = x[i];
        if (xi < 0.0 || xi > 1.0)
            throw std::invalid_argument("desk-smop: input outside [0,1]");
        if (in_support_[i]) {
            const double t = xi - 0.6;
            g += t * t;
            if (variant_ == DeskVariant::multimodal)
                g += 0.1 * (1.0 - std::cos(2.0 * std::numbers::pi * t));
        } else {
            if (variant_ == DeskVariant::deceptive) {
                if (xi != 0.0) {
                    const double r = 1.0 - xi;
                    g += 0.1 + 0.1 * r * r;
                }
            } else {
                g += std::abs(xi);
            }
        }
    }
    const double x0 = x[0];
    if (x0 < 0.0 || x0 > 1.0)
        throw std::invalid_argument("desk-smop: input outside [0,1]");
    return {x0 * (1.0 + g), (1.0 - x0) * (1.0 + g)};
}

std::vector<ObjectiveVector> DeskSmop::sample_front(std::size_t n) const {
    if (n == 0)
        throw std::invalid_argument("desk-smop: front sample size must be positive");
    std::vector<ObjectiveVector> front;
    front.reserve(n);
    if (n == 1) {
        front.push_back({0.5, 0.5});
        return front;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double f1 = static_cast<double>(i) / static_cast<double>(n - 1);
        front.push_back({f1, 1.0 - f1});
    }
    return front;
}

} // namespace pamea
