#include "pamea/core.hpp"

#include <stdexcept>

namespace pamea {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dominates: objective vectors differ in length");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

RealVector decode(const Solution& s) {
    RealVector x(s.reals.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = s.mask[i] ? s.reals[i] : 0.0;
    return x;
}

std::size_t support_size(const BinaryMask& mask) {
    std::size_t n = 0;
    for (auto b : mask) n += (b != 0);
    return n;
}

} // namespace pamea
