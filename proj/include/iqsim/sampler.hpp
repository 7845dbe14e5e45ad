#pragma once

#include <cstdint>
#include <vector>

#include "iqsim/bitvec.hpp"
#include "iqsim/circuit.hpp"
#include "iqsim/rng.hpp"

namespace iq {

// Circuit flattened for the hot sampling loop. Immutable once built; shared
// read-only across worker threads.
struct CompiledCircuit {
    struct FlatOp {
        Op op;
        int32_t a = -1, b = -1;   // qubits; for MZ/MX b = measurement index,
                                  // for MFLIP a = qubit, b = measurement index
        double p0 = 0, p1 = 0, p2 = 0;
    };

    int n_qubits = 0;
    int n_meas = 0;
    std::vector<FlatOp> ops;
    std::vector<std::vector<int32_t>> detectors;    // absolute measurement indices
    std::vector<std::vector<int32_t>> observables;  // absolute measurement indices

    static CompiledCircuit compile(const Circuit& c);
};

// Scratch owned by one worker; reused across shots.
struct FrameWorkspace {
    BitVec fx, fz;
    std::vector<uint8_t> flips;  // per-measurement flip bits

    void resize(const CompiledCircuit& cc) {
        fx = BitVec(cc.n_qubits);
        fz = BitVec(cc.n_qubits);
        flips.assign(cc.n_meas, 0);
    }
};

// Propagates one shot's Pauli frame; fills ws.flips. Deterministic in
// (seed, shot_index) regardless of the calling thread.
void run_frame_shot(const CompiledCircuit& cc, uint64_t seed, uint64_t shot, FrameWorkspace& ws);

struct ShotTable {
    int n_det = 0, n_obs = 0, shots = 0;
    std::vector<uint8_t> det;  // shots x n_det, row-major
    std::vector<uint8_t> obs;  // shots x n_obs
};

// Samples detector/observable outcome rows. `ref` must equal
// reference_sample(c.without_noise()); passing it in keeps the contract
// between generator and sampler explicit.
ShotTable sample_shots(const Circuit& c, const std::vector<uint8_t>& ref, int shots,
                       uint64_t seed, int num_threads = 0);

}  // namespace iq
