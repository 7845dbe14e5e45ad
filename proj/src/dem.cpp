#include "iqsim/dem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace iq {

namespace {

// Sorted-int sets with xor-merge; detector ids, observables offset by n_det.
using Sparse = std::vector<int32_t>;

Sparse xor_merge(const Sparse& a, const Sparse& b) {
    Sparse out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { i++; j++; }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

struct Collector {
    int n_det, n_obs;
    std::map<std::pair<Sparse, uint32_t>, double> merged;

    int det_count(const Sparse& fired) const {
        int n = 0;
        for (int32_t id : fired) n += id < n_det;
        return n;
    }

    void add_graphlike(double p, const Sparse& fired) {
        if (p <= 0) return;
        Sparse dets;
        uint32_t obs = 0;
        for (int32_t id : fired) {
            if (id < n_det) dets.push_back(id);
            else obs |= uint32_t(1) << (id - n_det);
        }
        if (dets.empty() && obs == 0) return;
        if (dets.empty() && obs != 0)
            throw std::invalid_argument("undetectable logical mechanism in circuit");
        if (dets.size() > 2)
            throw std::invalid_argument("non-graphlike mechanism with " +
                                        std::to_string(dets.size()) + " detectors");
        double& q = merged[{std::move(dets), obs}];
        q = q * (1 - p) + p * (1 - q);
    }

    // component given as its X-part and Z-part flip sets; decomposed when the
    // joint set would fire more than two detectors
    void add(double p, const Sparse& x_part, const Sparse& z_part) {
        if (p <= 0) return;
        Sparse joint = xor_merge(x_part, z_part);
        if (det_count(joint) <= 2) {
            add_graphlike(p, joint);
        } else {
            add_graphlike(p, x_part);
            add_graphlike(p, z_part);
        }
    }
};

}  // namespace

DetectorErrorModel extract_dem(const Circuit& c) {
    c.validate();
    const int n_det = c.num_detectors();
    const int n_obs = c.num_observables();

    // Map each measurement to the detectors/observables that consume it.
    int total_meas = c.num_measurements();
    std::vector<Sparse> consumers(total_meas);
    {
        int meas_so_far = 0, det_idx = 0;
        for (const auto& ins : c.instructions) {
            if (op_is_measurement(ins.op)) meas_so_far += int(ins.targets.size());
            if (ins.op == Op::DETECTOR) {
                for (int32_t off : ins.targets)
                    consumers[meas_so_far + off] = xor_merge(consumers[meas_so_far + off], {det_idx});
                det_idx++;
            } else if (ins.op == Op::OBSERVABLE) {
                int32_t id = n_det + int32_t(ins.args.at(0));
                for (int32_t off : ins.targets)
                    consumers[meas_so_far + off] = xor_merge(consumers[meas_so_far + off], {id});
            }
        }
    }

    // Backward pass: FX[q]/FZ[q] = detectors flipped by an X/Z fault on q at
    // the current position.
    std::vector<Sparse> FX(c.n_qubits), FZ(c.n_qubits);
    Collector coll{n_det, n_obs, {}};

    // walk instructions backwards, with per-instruction measurement bases
    int meas_cursor = total_meas;
    std::vector<int> last_meas_of_qubit(c.n_qubits, -1);  // index of the measurement just processed

    for (auto it = c.instructions.rbegin(); it != c.instructions.rend(); ++it) {
        const auto& ins = *it;
        switch (ins.op) {
            case Op::H:
                for (int32_t q : ins.targets) std::swap(FX[q], FZ[q]);
                break;
            case Op::S:
                for (int32_t q : ins.targets) FX[q] = xor_merge(FX[q], FZ[q]);
                break;
            case Op::X: case Op::Z:
                break;
            case Op::CX: {
                int a = ins.targets[0], b = ins.targets[1];
                FX[a] = xor_merge(FX[a], FX[b]);
                FZ[b] = xor_merge(FZ[b], FZ[a]);
                break;
            }
            case Op::CZ: {
                int a = ins.targets[0], b = ins.targets[1];
                Sparse na = xor_merge(FX[a], FZ[b]);
                Sparse nb = xor_merge(FX[b], FZ[a]);
                FX[a] = std::move(na);
                FX[b] = std::move(nb);
                break;
            }
            case Op::RESET:
                for (int32_t q : ins.targets) { FX[q].clear(); FZ[q].clear(); }
                break;
            case Op::MZ: case Op::MX:
                for (size_t k = ins.targets.size(); k-- > 0;) {
                    int32_t q = ins.targets[k];
                    int m = --meas_cursor;
                    if (ins.op == Op::MZ) FX[q] = xor_merge(FX[q], consumers[m]);
                    else FZ[q] = xor_merge(FZ[q], consumers[m]);
                    last_meas_of_qubit[q] = m;
                }
                break;
            case Op::MFLIP:
                for (int32_t q : ins.targets) {
                    int m = last_meas_of_qubit[q];
                    if (m < 0) throw std::invalid_argument("MFLIP without following measurement");
                    coll.add_graphlike(ins.args[0], consumers[m]);
                }
                break;
            case Op::DEPOL1:
                for (int32_t q : ins.targets) {
                    double p = ins.args[0] / 3.0;
                    coll.add(p, FX[q], {});
                    coll.add(p, {}, FZ[q]);
                    coll.add(p, FX[q], FZ[q]);
                }
                break;
            case Op::PAULI_CHANNEL:
                for (int32_t q : ins.targets) {
                    coll.add(ins.args[0], FX[q], {});
                    coll.add(ins.args[1], FX[q], FZ[q]);
                    coll.add(ins.args[2], {}, FZ[q]);
                }
                break;
            case Op::DEPOL2: {
                int a = ins.targets[0], b = ins.targets[1];
                double p = ins.args[0] / 15.0;
                for (int ca = 0; ca < 4; ca++) {
                    for (int cb = 0; cb < 4; cb++) {
                        if (ca == 0 && cb == 0) continue;
                        // X-part and Z-part of the two-qubit Pauli component
                        Sparse xp, zp;
                        if (ca == 1 || ca == 2) xp = FX[a];
                        if (cb == 1 || cb == 2) xp = xor_merge(xp, FX[b]);
                        if (ca == 3 || ca == 2) zp = FZ[a];
                        if (cb == 3 || cb == 2) zp = xor_merge(zp, FZ[b]);
                        coll.add(p, xp, zp);
                    }
                }
                break;
            }
            default:
                break;
        }
    }

    // Decompose into graphlike mechanisms (<= 2 detectors). A component with
    // more detectors splits at its midpoint pairs only if that is exact; here
    // components come pre-split per Pauli axis, so > 2 detectors is an error.
    DetectorErrorModel dem;
    dem.n_detectors = n_det;
    dem.n_observables = n_obs;
    for (auto& [key, p] : coll.merged) {
        const auto& [dets, obs] = key;
        if (dets.size() > 2)
            throw std::invalid_argument("non-graphlike mechanism with " +
                                        std::to_string(dets.size()) + " detectors");
        if (p > 0 && p < 1)
            dem.mechanisms.push_back({p, dets, obs});
    }
    return dem;
}

std::string DetectorErrorModel::to_text() const {
    std::string out;
    char buf[64];
    for (const auto& m : mechanisms) {
        snprintf(buf, sizeof buf, "error(%.12g)", m.p);
        out += buf;
        for (int32_t d : m.detectors) {
            out += " D";
            out += std::to_string(d);
        }
        for (int i = 0; i < 32; i++)
            if (m.obs_mask & (uint32_t(1) << i)) {
                out += " L";
                out += std::to_string(i);
            }
        out += '\n';
    }
    return out;
}

}  // namespace iq
