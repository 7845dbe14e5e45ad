#include "iqsim/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace iq {

void NoiseParams::validate() const {
    for (double p : {p_1q, p_2q, p_meas})
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("noise probability out of [0,1]");
    for (double t : {t_1q_us, t_2q_us, t_meas_us})
        if (!(t > 0.0)) throw std::invalid_argument("gate/measurement time must be positive");
    if (!(T1_us > 0.0) || !(T2_us > 0.0))
        throw std::invalid_argument("T1/T2 must be positive");
    if (T2_us > 2.0 * T1_us)
        throw std::invalid_argument("T2 must not exceed 2*T1");
}

bool NoiseParams::is_noiseless() const {
    return p_1q == 0 && p_2q == 0 && p_meas == 0 && std::isinf(T1_us) && std::isinf(T2_us);
}

std::array<double, 3> idle_twirl_probs(double t_us, double T1_us, double T2_us) {
    if (t_us < 0) throw std::invalid_argument("idle duration must be nonnegative");
    if (T2_us > 2.0 * T1_us) throw std::invalid_argument("T2 must not exceed 2*T1");
    double ex1 = std::isinf(T1_us) ? 0.0 : -std::expm1(-t_us / T1_us);  // 1 - e^-t/T1
    double ex2 = std::isinf(T2_us) ? 0.0 : -std::expm1(-t_us / T2_us);
    double pxy = ex1 / 4.0;
    double pz = std::max(0.0, ex2 / 2.0 - ex1 / 4.0);
    return {pxy, pxy, pz};
}

Circuit attach_noise(const Circuit& c, const NoiseParams& params) {
    params.validate();
    if (c.has_noise())
        throw std::invalid_argument("attach_noise: circuit already carries noise instructions");
    c.validate();

    Circuit out;
    out.n_qubits = c.n_qubits;
    out.site_of_qubit = c.site_of_qubit;

    std::vector<uint8_t> busy(c.n_qubits, 0);
    auto mark = [&](const Instruction& ins) {
        for (int32_t q : ins.targets) busy[q] = 1;
    };

    for (const auto& ins : c.instructions) {
        switch (ins.op) {
            case Op::H: case Op::S: case Op::X: case Op::Z:
                out.instructions.push_back(ins);
                if (params.p_1q > 0)
                    out.append(Op::DEPOL1, ins.targets, {params.p_1q});
                mark(ins);
                break;
            case Op::CX: case Op::CZ:
                out.instructions.push_back(ins);
                if (params.p_2q > 0)
                    out.append(Op::DEPOL2, ins.targets, {params.p_2q});
                mark(ins);
                break;
            case Op::RESET:
                out.instructions.push_back(ins);
                // reset error tied to the measurement error rate
                if (params.p_meas > 0)
                    out.append(Op::PAULI_CHANNEL, ins.targets, {params.p_meas, 0.0, 0.0});
                mark(ins);
                break;
            case Op::MZ: case Op::MX:
                if (params.p_meas > 0)
                    out.append(Op::MFLIP, ins.targets, {params.p_meas});
                out.instructions.push_back(ins);
                mark(ins);
                break;
            case Op::TICK: {
                double dur = ins.args.at(0);
                auto tw = idle_twirl_probs(dur, params.T1_us, params.T2_us);
                if (tw[0] + tw[1] + tw[2] > 0) {
                    std::vector<int32_t> idle;
                    for (int q = 0; q < c.n_qubits; q++)
                        if (!busy[q]) idle.push_back(q);
                    if (!idle.empty())
                        out.append(Op::PAULI_CHANNEL, idle, {tw[0], tw[1], tw[2]});
                }
                out.instructions.push_back(ins);
                std::fill(busy.begin(), busy.end(), 0);
                break;
            }
            default:
                out.instructions.push_back(ins);
                break;
        }
    }
    return out;
}

}  // namespace iq
