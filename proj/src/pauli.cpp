#include "iqsim/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace iq {

PauliString PauliString::from_str(const std::string& s) {
    size_t i = 0;
    uint8_t phase = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool neg = s[i] == '-';
        i++;
        if (i < s.size() && s[i] == 'i') {
            phase = neg ? 3 : 1;
            i++;
        } else {
            phase = neg ? 2 : 0;
        }
    }
    PauliString p(s.size() - i);
    p.phase = phase;
    for (size_t q = 0; i < s.size(); i++, q++) {
        switch (s[i]) {
            case 'I': case '_': break;
            case 'X': p.xs.set(q); break;
            case 'Y': p.xs.set(q); p.zs.set(q); break;
            case 'Z': p.zs.set(q); break;
            default: throw std::invalid_argument("bad pauli character in " + s);
        }
    }
    return p;
}

std::string PauliString::str() const {
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    std::string out = signs[phase & 3];
    for (size_t q = 0; q < n; q++) {
        bool x = xs.get(q), z = zs.get(q);
        out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
}

// Per-qubit products that pick up +i: XY, YZ, ZX. Their reverses pick up -i.
static int mul_phase_exponent(const PauliString& a, const PauliString& b) {
    int plus = 0, minus = 0;
    for (size_t i = 0; i < a.xs.words(); i++) {
        uint64_t x1 = a.xs.data()[i], z1 = a.zs.data()[i];
        uint64_t x2 = b.xs.data()[i], z2 = b.zs.data()[i];
        uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
        uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
        plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
        minus += std::popcount((X1 & Z2) | (Y1 & X2) | (Z1 & Y2));
    }
    return plus - minus;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
    if (a.n != b.n)
        throw std::invalid_argument("pauli_mul: length mismatch");
    PauliString r(a.n);
    r.phase = uint8_t((int(a.phase) + int(b.phase) + mul_phase_exponent(a, b)) & 3);
    r.xs = a.xs;
    r.zs = a.zs;
    r.xs.xor_with(b.xs);
    r.zs.xor_with(b.zs);
    return r;
}

PauliString pauli_inverse(const PauliString& a) {
    // Hermitian part is its own inverse; only the global phase conjugates.
    PauliString r = a;
    r.phase = uint8_t((4 - (a.phase & 3)) & 3);
    return r;
}

}  // namespace iq
