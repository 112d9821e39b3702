#include "pdilab/detectors_classic.hpp"

#include <cmath>
#include <stdexcept>

namespace pdilab {

namespace {

void require_nonempty(const CorrelatorBlock& block, const char* who) {
    if (block.empty()) throw std::invalid_argument(std::string(who) + ": empty block");
}

void require_pair(const CorrelatorBlock& block, const char* who) {
    if (block.size() < 2)
        throw std::invalid_argument(std::string(who) + ": needs at least 2 samples");
}

} // namespace

double coherent(const CorrelatorBlock& block) {
    require_nonempty(block, "coherent");
    ComplexSample sum{0.0, 0.0};
    for (const auto& y : block) sum += y;
    return std::abs(sum);
}

double npdi(const CorrelatorBlock& block) {
    require_nonempty(block, "npdi");
    double sum = 0.0;
    for (const auto& y : block) sum += std::norm(y);
    return sum;
}

double dpdi(const CorrelatorBlock& block) {
    require_pair(block, "dpdi");
    ComplexSample sum{0.0, 0.0};
    for (std::size_t k = 1; k < block.size(); ++k) sum += block[k] * std::conj(block[k - 1]);
    return std::abs(sum);
}

double nq_npdi(const CorrelatorBlock& block) {
    require_nonempty(block, "nq_npdi");
    double sum = 0.0;
    for (const auto& y : block) sum += std::abs(y);
    return sum;
}

double gpdit(const CorrelatorBlock& block) {
    require_pair(block, "gpdit");
    return npdi(block) + 2.0 * dpdi(block);
}

double npdisd(const CorrelatorBlock& block) {
    require_nonempty(block, "npdisd");
    double power = 0.0;
    ComplexSample sq_sum{0.0, 0.0};
    for (const auto& y : block) {
        power += std::norm(y);
        sq_sum += y * y;
    }
    return power + std::abs(sq_sum);
}

} // namespace pdilab
