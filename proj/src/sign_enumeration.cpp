#include "pdilab/sign_enumeration.hpp"

namespace pdilab {

std::vector<std::vector<int>> sign_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("sign_matrix: n must be >= 1");
    if (n > kSignEnumerationCap)
        throw CapacityError("sign_matrix: n " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kSignEnumerationCap));
    const std::uint64_t rows = std::uint64_t{1} << (n - 1);
    std::vector<std::vector<int>> m(rows, std::vector<int>(n, 1));
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::size_t k = 1; k < n; ++k)
            m[r][k] = (r >> (k - 1)) & 1 ? 1 : -1;
    return m;
}

std::vector<double> combination_magnitudes(const CorrelatorBlock& block) {
    detail::check_enumerable(block);
    std::vector<double> out;
    out.reserve(std::size_t{1} << (block.size() - 1));
    for_each_combination_magnitude(block, [&](double mag) { out.push_back(mag); });
    return out;
}

} // namespace pdilab
