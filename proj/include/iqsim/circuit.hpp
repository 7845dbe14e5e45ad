#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iqsim/tableau.hpp"

namespace iq {

enum class Op : uint8_t {
    H, S, X, Z, CX, CZ, RESET, MZ, MX,
    TICK, DEPOL1, DEPOL2, PAULI_CHANNEL, MFLIP,
    DETECTOR, OBSERVABLE,
};

bool op_is_gate(Op op);        // unitary or reset
bool op_is_measurement(Op op);
bool op_is_noise(Op op);
bool op_is_annotation(Op op);  // DETECTOR/OBSERVABLE
const char* op_name(Op op);

struct Instruction {
    Op op;
    // qubit indices; for DETECTOR/OBSERVABLE these are negative record offsets
    std::vector<int32_t> targets;
    // probabilities (DEPOL1/2: p; PAULI_CHANNEL: px,py,pz; MFLIP: p),
    // TICK: duration in us, OBSERVABLE: observable id
    std::vector<double> args;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Instruction> instructions;
    std::map<int, int> site_of_qubit;  // optional layout metadata

    void append(Op op, std::vector<int32_t> targets, std::vector<double> args = {});

    int num_measurements() const;
    int num_detectors() const;
    int num_observables() const;
    bool has_noise() const;

    // Throws std::invalid_argument naming the first violated rule.
    void validate() const;

    std::string to_text() const;
    static Circuit from_text(const std::string& text);

    // Strips noise channels (DEPOL1/2, PAULI_CHANNEL, MFLIP).
    Circuit without_noise() const;
};

// Noiseless outcome of every measurement on a tableau; random outcomes pin
// to 0 (the +1 eigenvalue). Noise instructions are skipped.
std::vector<uint8_t> reference_sample(const Circuit& c);

// Full tableau run with rng for nondeterministic outcomes (noise skipped).
// Returns measurement bits; used by tests and logical-channel checks.
std::vector<uint8_t> tableau_sample(const Circuit& c, Rng& rng);

// Detector/observable values for a given measurement-bit vector.
std::vector<uint8_t> detector_values(const Circuit& c, const std::vector<uint8_t>& meas);
std::vector<uint8_t> observable_values(const Circuit& c, const std::vector<uint8_t>& meas);

}  // namespace iq
