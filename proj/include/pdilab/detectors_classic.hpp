#pragma once

#include "pdilab/signal_model.hpp"

namespace pdilab {

// Benchmark PDI statistics. All are scalar functions of one block, pure and
// thread-safe. Empty blocks are rejected; dpdi/gpdit additionally require
// length >= 2 (their differential sum is empty otherwise).

// |sum_k y_k|
double coherent(const CorrelatorBlock& block);

// sum_k |y_k|^2
double npdi(const CorrelatorBlock& block);

// |sum_{k>=2} y_k * conj(y_{k-1})|
double dpdi(const CorrelatorBlock& block);

// sum_k |y_k|
double nq_npdi(const CorrelatorBlock& block);

// npdi + 2 * dpdi
double gpdit(const CorrelatorBlock& block);

// sum_k |y_k|^2 + |sum_k y_k^2|   (complex square inside the second sum)
double npdisd(const CorrelatorBlock& block);

} // namespace pdilab
