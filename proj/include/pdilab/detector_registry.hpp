#pragma once

#include <string>
#include <vector>

#include "pdilab/detectors_proposed.hpp"
#include "pdilab/signal_model.hpp"

namespace pdilab {

// Stable CLI/CSV identifiers for the eleven statistics.
const std::vector<std::string>& all_detector_ids();

bool is_detector_id(const std::string& id);

// True for statistics that need (A, sigma^2): bapdi, glrt, glrt-cf.
bool detector_needs_ctx(const std::string& id);

// Evaluates the listed detectors on one block. ctx may be null when no
// listed detector needs it. bapdi and mbapdi share one enumeration pass
// when both are requested. Output order matches `ids`.
std::vector<double> evaluate_detectors(const CorrelatorBlock& block,
                                       const DetectorContext* ctx,
                                       const std::vector<std::string>& ids);

} // namespace pdilab
