#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "iqsim/pauli.hpp"
#include "iqsim/rng.hpp"

namespace iq {

enum class Gate : uint8_t { H, S, X, Z, CX, CZ, RESET };

// Aaronson-Gottesman stabilizer tableau over bit-packed rows.
// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. Row i of each
// half pairs up: destabilizer i anticommutes with stabilizer i only.
class StabilizerTableau {
public:
    explicit StabilizerTableau(size_t n);

    size_t n() const { return n_; }

    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_x(size_t q);
    void apply_z(size_t q);
    void apply_cx(size_t c, size_t t);
    void apply_cz(size_t a, size_t b);
    void apply_reset(size_t q);

    // Dispatcher matching the circuit-level gate set. targets: 1 or 2 qubits.
    void apply(Gate g, const std::vector<size_t>& targets);

    // Measures Hermitian Pauli p. Returns (outcome, was_deterministic) with
    // outcome +1/-1. If rng is null, nondeterministic outcomes pin to +1.
    std::pair<int, bool> measure_pauli(const PauliString& p, Rng* rng);

    int measure_z(size_t q, Rng* rng);
    int measure_x(size_t q, Rng* rng);

    PauliString row(size_t r) const;  // r in [0, 2n)
    PauliString stabilizer(size_t i) const { return row(n_ + i); }
    PauliString destabilizer(size_t i) const { return row(i); }

    // Commutation/rank invariants; used by tests.
    bool check_invariants() const;

private:
    bool anticommutes(size_t r, const PauliString& p) const;
    void row_mul(size_t dst, size_t src);  // row[dst] *= row[src]
    int row_mul_phase(size_t dst, size_t src) const;

    size_t n_, words_;
    // row-major, 2n rows, words_ words per row
    std::vector<uint64_t> xs_, zs_;
    std::vector<uint8_t> phase_;  // exponent of i per row (0 or 2 in practice)
};

}  // namespace iq
