#include "iqsim/sampler.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iq {

CompiledCircuit CompiledCircuit::compile(const Circuit& c) {
    c.validate();
    CompiledCircuit cc;
    cc.n_qubits = c.n_qubits;
    int meas = 0;
    std::vector<int> pending_mflip_start;  // indices of MFLIP flat ops awaiting their meas index
    for (const auto& ins : c.instructions) {
        switch (ins.op) {
            case Op::H: case Op::S: case Op::RESET:
                for (int32_t q : ins.targets) cc.ops.push_back({ins.op, q, -1, 0, 0, 0});
                break;
            case Op::X: case Op::Z:
                break;  // Pauli gates commute through the frame
            case Op::CX: case Op::CZ:
                cc.ops.push_back({ins.op, ins.targets[0], ins.targets[1], 0, 0, 0});
                break;
            case Op::MZ: case Op::MX:
                for (int32_t q : ins.targets) {
                    cc.ops.push_back({ins.op, q, meas, 0, 0, 0});
                    // resolve any MFLIP waiting on this qubit's next measurement
                    for (int idx : pending_mflip_start) {
                        auto& f = cc.ops[idx];
                        if (f.a == q && f.b < 0) f.b = meas;
                    }
                    meas++;
                }
                break;
            case Op::MFLIP:
                for (int32_t q : ins.targets) {
                    cc.ops.push_back({Op::MFLIP, q, -1, ins.args[0], 0, 0});
                    pending_mflip_start.push_back(int(cc.ops.size()) - 1);
                }
                break;
            case Op::DEPOL1:
                for (int32_t q : ins.targets)
                    cc.ops.push_back({Op::DEPOL1, q, -1, ins.args[0], 0, 0});
                break;
            case Op::DEPOL2:
                cc.ops.push_back({Op::DEPOL2, ins.targets[0], ins.targets[1], ins.args[0], 0, 0});
                break;
            case Op::PAULI_CHANNEL:
                for (int32_t q : ins.targets)
                    cc.ops.push_back({Op::PAULI_CHANNEL, q, -1, ins.args[0], ins.args[1], ins.args[2]});
                break;
            case Op::DETECTOR: {
                std::vector<int32_t> abs;
                for (int32_t off : ins.targets) abs.push_back(meas + off);
                cc.detectors.push_back(std::move(abs));
                break;
            }
            case Op::OBSERVABLE: {
                int id = int(ins.args.at(0));
                if (id >= int(cc.observables.size())) cc.observables.resize(id + 1);
                for (int32_t off : ins.targets) cc.observables[id].push_back(meas + off);
                break;
            }
            case Op::TICK:
                break;
        }
    }
    // prune resolved entries sanity: an MFLIP with no following measurement is a bug
    for (const auto& f : cc.ops)
        if (f.op == Op::MFLIP && f.b < 0)
            throw std::invalid_argument("MFLIP without a following measurement on its qubit");
    cc.n_meas = meas;
    return cc;
}

void run_frame_shot(const CompiledCircuit& cc, uint64_t seed, uint64_t shot, FrameWorkspace& ws) {
    Rng rng(seed, shot);
    BitVec& fx = ws.fx;
    BitVec& fz = ws.fz;
    fx.clear();
    fz.clear();
    std::fill(ws.flips.begin(), ws.flips.end(), 0);

    for (const auto& op : cc.ops) {
        switch (op.op) {
            case Op::H: {
                bool x = fx.get(op.a), z = fz.get(op.a);
                fx.assign(op.a, z);
                fz.assign(op.a, x);
                break;
            }
            case Op::S:
                if (fx.get(op.a)) fz.flip(op.a);
                break;
            case Op::CX:
                if (fx.get(op.a)) fx.flip(op.b);
                if (fz.get(op.b)) fz.flip(op.a);
                break;
            case Op::CZ:
                if (fx.get(op.a)) fz.flip(op.b);
                if (fx.get(op.b)) fz.flip(op.a);
                break;
            case Op::RESET:
                fx.unset(op.a);
                fz.unset(op.a);
                break;
            case Op::MZ:
                ws.flips[op.b] ^= fx.get(op.a);
                break;
            case Op::MX:
                ws.flips[op.b] ^= fz.get(op.a);
                break;
            case Op::MFLIP:
                if (rng.next_double() < op.p0) ws.flips[op.b] ^= 1;
                break;
            case Op::DEPOL1:
                if (rng.next_double() < op.p0) {
                    switch (rng.next_below(3)) {
                        case 0: fx.flip(op.a); break;
                        case 1: fx.flip(op.a); fz.flip(op.a); break;
                        case 2: fz.flip(op.a); break;
                    }
                }
                break;
            case Op::DEPOL2:
                if (rng.next_double() < op.p0) {
                    uint32_t c = 1 + rng.next_below(15);  // skip II
                    uint32_t pa = c >> 2, pb = c & 3;
                    if (pa == 1 || pa == 2) fx.flip(op.a);
                    if (pa == 2 || pa == 3) fz.flip(op.a);
                    if (pb == 1 || pb == 2) fx.flip(op.b);
                    if (pb == 2 || pb == 3) fz.flip(op.b);
                }
                break;
            case Op::PAULI_CHANNEL: {
                double u = rng.next_double();
                if (u < op.p0) { fx.flip(op.a); }
                else if (u < op.p0 + op.p1) { fx.flip(op.a); fz.flip(op.a); }
                else if (u < op.p0 + op.p1 + op.p2) { fz.flip(op.a); }
                break;
            }
            default:
                break;
        }
    }
}

ShotTable sample_shots(const Circuit& c, const std::vector<uint8_t>& ref, int shots,
                       uint64_t seed, int num_threads) {
    CompiledCircuit cc = CompiledCircuit::compile(c);
    if (int(ref.size()) != cc.n_meas)
        throw std::invalid_argument("sample_shots: reference sample length mismatch");

    // reference parities per detector/observable (all-zero for valid circuits)
    std::vector<uint8_t> det_ref(cc.detectors.size(), 0);
    for (size_t d = 0; d < cc.detectors.size(); d++)
        for (int32_t m : cc.detectors[d]) det_ref[d] ^= ref[m];
    std::vector<uint8_t> obs_ref(cc.observables.size(), 0);
    for (size_t o = 0; o < cc.observables.size(); o++)
        for (int32_t m : cc.observables[o]) obs_ref[o] ^= ref[m];

    ShotTable table;
    table.n_det = int(cc.detectors.size());
    table.n_obs = int(cc.observables.size());
    table.shots = shots;
    table.det.assign(size_t(shots) * table.n_det, 0);
    table.obs.assign(size_t(shots) * table.n_obs, 0);

#ifdef _OPENMP
    int prev = omp_get_max_threads();
    if (num_threads > 0) omp_set_num_threads(num_threads);
#pragma omp parallel
    {
        FrameWorkspace ws;
        ws.resize(cc);
#pragma omp for schedule(dynamic, 64)
        for (int s = 0; s < shots; s++) {
            run_frame_shot(cc, seed, uint64_t(s), ws);
            for (int d = 0; d < table.n_det; d++) {
                uint8_t v = det_ref[d];
                for (int32_t m : cc.detectors[d]) v ^= ws.flips[m];
                table.det[size_t(s) * table.n_det + d] = v;
            }
            for (int o = 0; o < table.n_obs; o++) {
                uint8_t v = obs_ref[o];
                for (int32_t m : cc.observables[o]) v ^= ws.flips[m];
                table.obs[size_t(s) * table.n_obs + o] = v;
            }
        }
    }
    if (num_threads > 0) omp_set_num_threads(prev);
#else
    (void)num_threads;
    FrameWorkspace ws;
    ws.resize(cc);
    for (int s = 0; s < shots; s++) {
        run_frame_shot(cc, seed, uint64_t(s), ws);
        for (int d = 0; d < table.n_det; d++) {
            uint8_t v = det_ref[d];
            for (int32_t m : cc.detectors[d]) v ^= ws.flips[m];
            table.det[size_t(s) * table.n_det + d] = v;
        }
        for (int o = 0; o < table.n_obs; o++) {
            uint8_t v = obs_ref[o];
            for (int32_t m : cc.observables[o]) v ^= ws.flips[m];
            table.obs[size_t(s) * table.n_obs + o] = v;
        }
    }
#endif
    return table;
}

}  // namespace iq
