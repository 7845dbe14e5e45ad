#include "iqsim/circuit.hpp"

#include <cstdio>
#include <cstring>
#include <set>
#include <sstream>
#include <stdexcept>

namespace iq {

bool op_is_gate(Op op) {
    switch (op) {
        case Op::H: case Op::S: case Op::X: case Op::Z:
        case Op::CX: case Op::CZ: case Op::RESET:
            return true;
        default: return false;
    }
}

bool op_is_measurement(Op op) { return op == Op::MZ || op == Op::MX; }

bool op_is_noise(Op op) {
    switch (op) {
        case Op::DEPOL1: case Op::DEPOL2: case Op::PAULI_CHANNEL: case Op::MFLIP:
            return true;
        default: return false;
    }
}

bool op_is_annotation(Op op) { return op == Op::DETECTOR || op == Op::OBSERVABLE; }

const char* op_name(Op op) {
    switch (op) {
        case Op::H: return "H";
        case Op::S: return "S";
        case Op::X: return "X";
        case Op::Z: return "Z";
        case Op::CX: return "CX";
        case Op::CZ: return "CZ";
        case Op::RESET: return "RESET";
        case Op::MZ: return "MZ";
        case Op::MX: return "MX";
        case Op::TICK: return "TICK";
        case Op::DEPOL1: return "DEPOL1";
        case Op::DEPOL2: return "DEPOL2";
        case Op::PAULI_CHANNEL: return "PAULI_CHANNEL";
        case Op::MFLIP: return "MFLIP";
        case Op::DETECTOR: return "DETECTOR";
        case Op::OBSERVABLE: return "OBSERVABLE";
    }
    return "?";
}

static int op_arg_count(Op op) {
    switch (op) {
        case Op::DEPOL1: case Op::DEPOL2: case Op::MFLIP: case Op::TICK: case Op::OBSERVABLE:
            return 1;
        case Op::PAULI_CHANNEL: return 3;
        default: return 0;
    }
}

void Circuit::append(Op op, std::vector<int32_t> targets, std::vector<double> args) {
    instructions.push_back({op, std::move(targets), std::move(args)});
}

int Circuit::num_measurements() const {
    int n = 0;
    for (const auto& i : instructions)
        if (op_is_measurement(i.op)) n += int(i.targets.size());
    return n;
}

int Circuit::num_detectors() const {
    int n = 0;
    for (const auto& i : instructions) n += i.op == Op::DETECTOR;
    return n;
}

int Circuit::num_observables() const {
    int max_id = -1;
    for (const auto& i : instructions)
        if (i.op == Op::OBSERVABLE) max_id = std::max(max_id, int(i.args.at(0)));
    return max_id + 1;
}

bool Circuit::has_noise() const {
    for (const auto& i : instructions)
        if (op_is_noise(i.op)) return true;
    return false;
}

void Circuit::validate() const {
    int meas_so_far = 0;
    for (size_t idx = 0; idx < instructions.size(); idx++) {
        const auto& ins = instructions[idx];
        std::string where = std::string(op_name(ins.op)) + " at instruction " + std::to_string(idx);
        if (int(ins.args.size()) != op_arg_count(ins.op))
            throw std::invalid_argument("wrong argument count for " + where);
        for (double a : ins.args) {
            bool is_prob = op_is_noise(ins.op);
            if (is_prob && (a < 0.0 || a > 1.0))
                throw std::invalid_argument("probability out of range in " + where);
        }
        if (op_is_annotation(ins.op)) {
            for (int32_t t : ins.targets) {
                if (t >= 0) throw std::invalid_argument("record offset must be negative in " + where);
                if (-t > meas_so_far)
                    throw std::invalid_argument("forward measurement reference in " + where);
            }
            continue;
        }
        if (ins.op == Op::TICK) {
            if (!ins.targets.empty()) throw std::invalid_argument("TICK takes no targets");
            if (ins.args[0] < 0) throw std::invalid_argument("negative TICK duration");
            continue;
        }
        if (ins.targets.empty()) throw std::invalid_argument("no targets in " + where);
        std::set<int32_t> seen;
        for (int32_t t : ins.targets) {
            if (t < 0 || t >= n_qubits)
                throw std::invalid_argument("target out of range in " + where);
            if (!seen.insert(t).second)
                throw std::invalid_argument("duplicate target in " + where);
        }
        if ((ins.op == Op::CX || ins.op == Op::CZ || ins.op == Op::DEPOL2) &&
            ins.targets.size() != 2)
            throw std::invalid_argument("exactly 2 targets required in " + where);
        if (op_is_measurement(ins.op)) meas_so_far += int(ins.targets.size());
    }
}

static std::string fmt_double(double v) {
    // shortest representation that round-trips
    char buf[64];
    for (int prec = 1; prec <= 17; prec++) {
        snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string Circuit::to_text() const {
    std::string out;
    for (const auto& ins : instructions) {
        out += op_name(ins.op);
        if (!ins.args.empty()) {
            out += '(';
            for (size_t i = 0; i < ins.args.size(); i++) {
                if (i) out += ',';
                out += fmt_double(ins.args[i]);
            }
            out += ')';
        }
        if (op_is_annotation(ins.op)) {
            for (int32_t t : ins.targets) {
                out += " rec[";
                out += std::to_string(t);
                out += ']';
            }
        } else {
            for (int32_t t : ins.targets) {
                out += ' ';
                out += std::to_string(t);
            }
        }
        out += '\n';
    }
    return out;
}

static Op op_from_name(const std::string& name, int line_no) {
    static const Op all[] = {Op::H, Op::S, Op::X, Op::Z, Op::CX, Op::CZ, Op::RESET,
                             Op::MZ, Op::MX, Op::TICK, Op::DEPOL1, Op::DEPOL2,
                             Op::PAULI_CHANNEL, Op::MFLIP, Op::DETECTOR, Op::OBSERVABLE};
    for (Op op : all)
        if (name == op_name(op)) return op;
    throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown mnemonic '" + name + "'");
}

Circuit Circuit::from_text(const std::string& text) {
    Circuit c;
    int max_q = -1;
    int meas_so_far = 0;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        line = line.substr(pos);

        auto err = [&](const std::string& msg) {
            return std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
        };

        size_t name_end = line.find_first_of("( \t");
        std::string name = line.substr(0, name_end);
        Op op = op_from_name(name, line_no);

        Instruction ins{op, {}, {}};
        size_t i = name_end == std::string::npos ? line.size() : name_end;
        if (i < line.size() && line[i] == '(') {
            size_t close = line.find(')', i);
            if (close == std::string::npos) throw err("missing ')'");
            std::string args = line.substr(i + 1, close - i - 1);
            std::istringstream as(args);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                size_t used = 0;
                double v = std::stod(tok, &used);
                ins.args.push_back(v);
            }
            i = close + 1;
        }
        if (int(ins.args.size()) != op_arg_count(op))
            throw err(std::string("wrong argument count for ") + op_name(op));
        for (double a : ins.args)
            if (op_is_noise(op) && (a < 0.0 || a > 1.0)) throw err("probability out of range");

        std::istringstream ts(line.substr(i));
        std::string tok;
        while (ts >> tok) {
            if (op_is_annotation(op)) {
                if (tok.rfind("rec[", 0) != 0 || tok.back() != ']')
                    throw err("expected rec[-k], got '" + tok + "'");
                int off = std::stoi(tok.substr(4, tok.size() - 5));
                if (off >= 0) throw err("record offset must be negative");
                if (-off > meas_so_far) throw err("forward measurement reference");
                ins.targets.push_back(off);
            } else {
                int q = std::stoi(tok);
                if (q < 0) throw err("negative qubit index");
                max_q = std::max(max_q, q);
                ins.targets.push_back(q);
            }
        }
        if (op_is_measurement(op)) meas_so_far += int(ins.targets.size());
        c.instructions.push_back(std::move(ins));
    }
    c.n_qubits = max_q + 1;
    c.validate();
    return c;
}

Circuit Circuit::without_noise() const {
    Circuit c;
    c.n_qubits = n_qubits;
    c.site_of_qubit = site_of_qubit;
    for (const auto& ins : instructions)
        if (!op_is_noise(ins.op)) c.instructions.push_back(ins);
    return c;
}

template <typename MeasZ, typename MeasX, typename GateF>
static void walk_circuit(const Circuit& c, GateF gate, MeasZ mz, MeasX mx) {
    for (const auto& ins : c.instructions) {
        switch (ins.op) {
            case Op::H: case Op::S: case Op::X: case Op::Z: case Op::RESET:
                for (int32_t q : ins.targets) gate(ins.op, size_t(q), size_t(q));
                break;
            case Op::CX: case Op::CZ:
                gate(ins.op, size_t(ins.targets[0]), size_t(ins.targets[1]));
                break;
            case Op::MZ:
                for (int32_t q : ins.targets) mz(size_t(q));
                break;
            case Op::MX:
                for (int32_t q : ins.targets) mx(size_t(q));
                break;
            default: break;  // noise handled by samplers, annotations elsewhere
        }
    }
}

std::vector<uint8_t> reference_sample(const Circuit& c) {
    StabilizerTableau t(c.n_qubits);
    std::vector<uint8_t> out;
    walk_circuit(
        c,
        [&](Op op, size_t a, size_t b) {
            switch (op) {
                case Op::H: t.apply_h(a); break;
                case Op::S: t.apply_s(a); break;
                case Op::X: t.apply_x(a); break;
                case Op::Z: t.apply_z(a); break;
                case Op::RESET: t.apply_reset(a); break;
                case Op::CX: t.apply_cx(a, b); break;
                case Op::CZ: t.apply_cz(a, b); break;
                default: break;
            }
        },
        [&](size_t q) { out.push_back(t.measure_z(q, nullptr) < 0); },
        [&](size_t q) { out.push_back(t.measure_x(q, nullptr) < 0); });
    return out;
}

std::vector<uint8_t> tableau_sample(const Circuit& c, Rng& rng) {
    StabilizerTableau t(c.n_qubits);
    std::vector<uint8_t> out;
    walk_circuit(
        c,
        [&](Op op, size_t a, size_t b) {
            switch (op) {
                case Op::H: t.apply_h(a); break;
                case Op::S: t.apply_s(a); break;
                case Op::X: t.apply_x(a); break;
                case Op::Z: t.apply_z(a); break;
                case Op::RESET: t.apply_reset(a); break;
                case Op::CX: t.apply_cx(a, b); break;
                case Op::CZ: t.apply_cz(a, b); break;
                default: break;
            }
        },
        [&](size_t q) { out.push_back(t.measure_z(q, &rng) < 0); },
        [&](size_t q) { out.push_back(t.measure_x(q, &rng) < 0); });
    return out;
}

static std::vector<uint8_t> annotation_values(const Circuit& c, const std::vector<uint8_t>& meas,
                                              Op kind) {
    std::vector<uint8_t> out(kind == Op::DETECTOR ? c.num_detectors() : c.num_observables(), 0);
    int meas_so_far = 0, det_idx = 0;
    for (const auto& ins : c.instructions) {
        if (op_is_measurement(ins.op)) meas_so_far += int(ins.targets.size());
        if (ins.op != kind) continue;
        uint8_t v = 0;
        for (int32_t off : ins.targets) v ^= meas.at(meas_so_far + off);
        if (kind == Op::DETECTOR)
            out[det_idx++] = v;
        else
            out[int(ins.args.at(0))] ^= v;
    }
    return out;
}

std::vector<uint8_t> detector_values(const Circuit& c, const std::vector<uint8_t>& meas) {
    return annotation_values(c, meas, Op::DETECTOR);
}

std::vector<uint8_t> observable_values(const Circuit& c, const std::vector<uint8_t>& meas) {
    return annotation_values(c, meas, Op::OBSERVABLE);
}

}  // namespace iq
