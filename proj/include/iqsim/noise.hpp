#pragma once

#include <array>

#include "iqsim/circuit.hpp"

namespace iq {

struct NoiseParams {
    double p_1q = 1e-3;
    double p_2q = 1e-3;
    double p_meas = 1e-3;
    double t_1q_us = 1.0;
    double t_2q_us = 5.0;
    double t_meas_us = 1e4;
    double T1_us = 1e6;
    double T2_us = 1e6;

    void validate() const;  // probabilities in [0,1], times > 0, T2 <= 2*T1
    static NoiseParams defaults() { return NoiseParams{}; }
    bool is_noiseless() const;
};

// Idle decoherence twirl: px = py = (1-exp(-t/T1))/4,
// pz = (1-exp(-t/T2))/2 - (1-exp(-t/T1))/4, clamped at 0 from below.
// Infinite T1/T2 are allowed and give zero probabilities.
std::array<double, 3> idle_twirl_probs(double t_us, double T1_us, double T2_us);

// Inserts the circuit-level noise model: DEPOL1 after 1q gates, DEPOL2 after
// CX/CZ, MFLIP before measurements, X-flip after RESET, and a per-qubit
// idle PAULI_CHANNEL for each TICK the qubit sits out.
Circuit attach_noise(const Circuit& c, const NoiseParams& params);

}  // namespace iq
