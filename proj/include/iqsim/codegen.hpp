#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iqsim/circuit.hpp"
#include "iqsim/geometry.hpp"
#include "iqsim/surface.hpp"

namespace iq {

enum class LogicalState : uint8_t { Zero, One, Plus, Minus };
inline bool is_x_basis(LogicalState s) { return s == LogicalState::Plus || s == LogicalState::Minus; }
inline bool is_flipped(LogicalState s) { return s == LogicalState::One || s == LogicalState::Minus; }

struct TimingInfo {
    double t_1q_us = 1.0;
    double t_2q_us = 5.0;
    double t_meas_us = 1e4;
};

struct GeneratedExperiment {
    Circuit circuit;               // noiseless; detectors and observables wired
    InterleavedLayout layout;
    int cz_layers_per_round = 0;   // of the first full stabilizer round
    int oneq_layers_per_round = 0;
    double round_duration_us = 0;
    int n_patches = 0;
};

struct MemoryOptions {
    int k = 1;
    int d = 3;
    int rounds = 3;
    LogicalState state = LogicalState::Zero;
    double spacing_um = 10.0;
    Radii radii{};
    TimingInfo timing{};
};

struct CnotOptions {
    int k = 4;  // transversal experiments need k >= 2; lattice surgery uses k = 1
    int d = 3;
    LogicalState control = LogicalState::Zero;
    LogicalState target = LogicalState::Plus;
    double spacing_um = 10.0;
    Radii radii{};
    TimingInfo timing{};
};

struct MergeOptions {
    int k = 4;
    int d = 3;
    int pos_a = 0;
    int pos_b = 0;
    char basis = 'X';  // 'X': side-by-side groups, 'Z': stacked groups
    LogicalState state_a = LogicalState::Plus;
    LogicalState state_b = LogicalState::Plus;
    double spacing_um = 10.0;
    Radii radii{};
    TimingInfo timing{};
};

// k memory patches (one per group position), `rounds` stabilizer rounds,
// transversal readout; observable `pos` is patch pos's logical readout.
GeneratedExperiment gen_memory(const MemoryOptions& opt);

// Control at position 0, target at position 1 of one interleaved group:
// d rounds, transversal CNOT, d rounds, readout. Two observables.
GeneratedExperiment gen_transversal_cnot_experiment(const CnotOptions& opt);

// Standard-architecture CNOT via MZZ and MXX merges with a logical ancilla
// patch; d pre-rounds plus 2d merge rounds. Two observables.
GeneratedExperiment gen_lattice_surgery_cnot_experiment(const CnotOptions& opt);

// Joint logical measurement between position pos_a of one group and pos_b of
// the adjacent group; seam product is OBSERVABLE(0), uninvolved positions run
// memory alongside.
GeneratedExperiment gen_interleaved_merge(const MergeOptions& opt);

// Exposed for structural tests: seam face descriptions of a merge.
struct SeamFace {
    Face face;
    int anc_pos;
    bool is_new;  // brand-new (carries the joint outcome) vs extended boundary
};
std::vector<SeamFace> merge_seam_faces(int d, int r0a, int c0a, char basis, int pos_a, int pos_b);

}  // namespace iq
