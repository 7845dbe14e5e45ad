#pragma once

#include <cstdint>
#include <string>

#include "iqsim/bitvec.hpp"

namespace iq {

// n-qubit Pauli operator: i^phase * prod_q P_q with P_q in {I,X,Y,Z} Hermitian.
// phase is the exponent of i (0:+1, 1:+i, 2:-1, 3:-i).
struct PauliString {
    size_t n = 0;
    BitVec xs, zs;
    uint8_t phase = 0;

    PauliString() = default;
    explicit PauliString(size_t n_) : n(n_), xs(n_), zs(n_) {}

    // "IXYZ"-style string, optional leading sign: "+", "-", "+i", "-i"
    static PauliString from_str(const std::string& s);
    std::string str() const;

    void set_x(size_t q) { xs.set(q); }
    void set_z(size_t q) { zs.set(q); }
    void set_y(size_t q) { xs.set(q); zs.set(q); }

    bool is_identity_bits() const { return xs.none() && zs.none(); }

    bool commutes(const PauliString& o) const {
        return !(xs.parity_and(o.zs) ^ zs.parity_and(o.xs));
    }

    bool operator==(const PauliString& o) const {
        return n == o.n && phase == o.phase && xs == o.xs && zs == o.zs;
    }
};

// Group product a*b with exact sign.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

PauliString pauli_inverse(const PauliString& a);

}  // namespace iq
