#include "pdilab/detector_registry.hpp"

#include <algorithm>
#include <stdexcept>

#include "pdilab/detectors_classic.hpp"

namespace pdilab {

const std::vector<std::string>& all_detector_ids() {
    static const std::vector<std::string> ids = {
        "coherent", "npdi",   "dpdi", "nq-npdi", "gpdit",      "npdisd",
        "bapdi",    "mbapdi", "glrt", "glrt-cf", "glrt-approx"};
    return ids;
}

bool is_detector_id(const std::string& id) {
    const auto& ids = all_detector_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool detector_needs_ctx(const std::string& id) {
    return id == "bapdi" || id == "glrt" || id == "glrt-cf";
}

std::vector<double> evaluate_detectors(const CorrelatorBlock& block,
                                       const DetectorContext* ctx,
                                       const std::vector<std::string>& ids) {
    std::vector<double> out(ids.size());
    const bool want_bapdi = std::find(ids.begin(), ids.end(), "bapdi") != ids.end();
    const bool want_mbapdi = std::find(ids.begin(), ids.end(), "mbapdi") != ids.end();

    BayesPair bayes{0.0, 0.0};
    bool have_bayes = false;
    if (want_bapdi) {
        if (!ctx) throw std::invalid_argument("detector 'bapdi' requires a context");
        bayes = bapdi_mbapdi(block, *ctx);
        have_bayes = true;
    } else if (want_mbapdi) {
        bayes.mbapdi = mbapdi(block);
        have_bayes = true;
    }

    for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::string& id = ids[i];
        if (detector_needs_ctx(id) && !ctx)
            throw std::invalid_argument("detector '" + id + "' requires a context");
        if (id == "coherent") out[i] = coherent(block);
        else if (id == "npdi") out[i] = npdi(block);
        else if (id == "dpdi") out[i] = dpdi(block);
        else if (id == "nq-npdi") out[i] = nq_npdi(block);
        else if (id == "gpdit") out[i] = gpdit(block);
        else if (id == "npdisd") out[i] = npdisd(block);
        else if (id == "bapdi") out[i] = bayes.bapdi;
        else if (id == "mbapdi") out[i] = have_bayes ? bayes.mbapdi : mbapdi(block);
        else if (id == "glrt") out[i] = glrt_strict(block, *ctx);
        else if (id == "glrt-cf") out[i] = glrt_closed_form(block, *ctx);
        else if (id == "glrt-approx") out[i] = glrt_high_snr(block);
        else throw std::invalid_argument("unknown detector '" + id + "'");
    }
    return out;
}

} // namespace pdilab
