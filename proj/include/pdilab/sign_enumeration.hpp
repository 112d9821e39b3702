#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pdilab/signal_model.hpp"

namespace pdilab {

// Exact enumeration of 2^(n-1) combinations caps at n = 25 (~1.7e7 per
// block); larger n is rejected rather than silently truncated.
inline constexpr std::size_t kSignEnumerationCap = 25;

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The 2^(n-1) x n matrix of +-1 rows with the first element pinned to +1,
// in binary-counting order: row m assigns element k (k >= 2) the sign
// +1 if bit (k-2) of m is set, -1 otherwise. No row is the negation of
// another. Materialized form, for small n and as a test oracle.
std::vector<std::vector<int>> sign_matrix(std::size_t n);

namespace detail {

inline void check_enumerable(const CorrelatorBlock& block) {
    if (block.empty())
        throw std::invalid_argument("sign enumeration: empty block");
    if (block.size() > kSignEnumerationCap)
        throw CapacityError("sign enumeration: n_nc " + std::to_string(block.size()) +
                            " exceeds cap " + std::to_string(kSignEnumerationCap));
}

} // namespace detail

// Visits sqrt(a_m^2 + b_m^2) for every row m of the sign matrix, where
// (a_m, b_m) = (sum_k s_k I_k, sum_k s_k Q_k). Gray-code order: each step
// flips one sign, so the update is O(1) per combination. The running (a, b)
// is re-anchored with a direct sum every 2^16 steps to bound float drift.
// The visited multiset equals the one produced by sign_matrix().
template <typename Fn>
void for_each_combination_magnitude(const CorrelatorBlock& block, Fn&& fn) {
    detail::check_enumerable(block);
    const std::size_t n = block.size();

    // gray = 0: elements 2..n all at -1
    double a = block[0].real();
    double b = block[0].imag();
    for (std::size_t k = 1; k < n; ++k) {
        a -= block[k].real();
        b -= block[k].imag();
    }
    fn(std::sqrt(a * a + b * b));

    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    std::uint64_t gray = 0;
    for (std::uint64_t m = 1; m < total; ++m) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(m));
        gray ^= std::uint64_t{1} << j;
        if ((m & 0xFFFFu) == 0) {
            a = block[0].real();
            b = block[0].imag();
            for (std::size_t k = 1; k < n; ++k) {
                const double s = (gray >> (k - 1)) & 1 ? 1.0 : -1.0;
                a += s * block[k].real();
                b += s * block[k].imag();
            }
        } else {
            const double d = ((gray >> j) & 1) ? 2.0 : -2.0;
            a += d * block[j + 1].real();
            b += d * block[j + 1].imag();
        }
        fn(std::sqrt(a * a + b * b));
    }
}

// Materialized magnitudes, Gray-code enumeration order. Every consumer is
// order-invariant; compare as sorted multisets.
std::vector<double> combination_magnitudes(const CorrelatorBlock& block);

} // namespace pdilab
