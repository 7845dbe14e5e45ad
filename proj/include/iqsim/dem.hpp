#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iqsim/circuit.hpp"

namespace iq {

// One independent fault mechanism: with probability p it fires `detectors`
// and flips the observables in `obs_mask`.
struct Mechanism {
    double p;
    std::vector<int32_t> detectors;  // sorted
    uint32_t obs_mask;
};

struct DetectorErrorModel {
    int n_detectors = 0;
    int n_observables = 0;
    std::vector<Mechanism> mechanisms;

    // one line per mechanism: "error(p) D3 D7 L0"
    std::string to_text() const;
};

// Single-fault propagation over the noisy circuit, walked backwards so each
// channel reads off the detectors its components flip. Y and multi-detector
// components are decomposed into their X-part and Z-part mechanisms, each
// inheriting the component probability; a part still firing more than two
// detectors raises an error naming the instruction.
DetectorErrorModel extract_dem(const Circuit& c);

}  // namespace iq
