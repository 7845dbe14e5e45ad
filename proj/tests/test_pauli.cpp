#include <doctest.h>

#include "iqsim/pauli.hpp"
#include "statevector_oracle.hpp"

using namespace iq;

TEST_CASE("single-qubit pauli products") {
    auto X = PauliString::from_str("X");
    auto Z = PauliString::from_str("Z");
    auto Y = PauliString::from_str("Y");

    CHECK(pauli_mul(X, X) == PauliString::from_str("I"));
    CHECK(pauli_mul(X, Z) == PauliString::from_str("-iY"));
    CHECK(pauli_mul(Z, X) == PauliString::from_str("+iY"));
    CHECK(pauli_mul(X, Y) == PauliString::from_str("+iZ"));
    CHECK(pauli_mul(Y, Z) == PauliString::from_str("+iX"));
}

TEST_CASE("length mismatch is rejected") {
    CHECK_THROWS_AS(pauli_mul(PauliString::from_str("X"), PauliString::from_str("XX")),
                    std::invalid_argument);
}

TEST_CASE("inverse composes to identity with plus sign") {
    Rng rng(7);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng.next_below(5);
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            uint32_t c = rng.next_below(4);
            if (c & 1) p.xs.set(q);
            if (c & 2) p.zs.set(q);
        }
        p.phase = uint8_t(rng.next_below(4));
        PauliString id = pauli_mul(p, pauli_inverse(p));
        CHECK(id.is_identity_bits());
        CHECK(id.phase == 0);
    }
}

TEST_CASE("two-qubit products match the 4x4 matrix oracle") {
    static const char P[4] = {'I', 'X', 'Y', 'Z'};
    static const oracle::cplx ifac[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    for (int a = 0; a < 16; a++) {
        for (int b = 0; b < 16; b++) {
            char sa[3] = {P[a % 4], P[a / 4], 0};
            char sb[3] = {P[b % 4], P[b / 4], 0};
            auto pa = PauliString::from_str(sa);
            auto pb = PauliString::from_str(sb);
            auto pc = pauli_mul(pa, pb);

            auto ma = oracle::two_qubit_pauli(sa);
            auto mb = oracle::two_qubit_pauli(sb);
            auto prod = ma * mb;

            std::string cs = pc.str();  // sign prefix + letters
            const char* letters = cs.c_str() + (cs[1] == 'i' ? 2 : 1);
            auto mc = oracle::two_qubit_pauli(letters);
            CHECK(prod.approx(mc, ifac[pc.phase & 3]));
        }
    }
}

TEST_CASE("spec example: XZ times ZX is YY with derived sign") {
    // oracle says: (X tensor Z)(Z tensor X) = (XZ) tensor (ZX) = (-iY) tensor (iY) = +YY
    auto pa = PauliString::from_str("XZ");
    auto pb = PauliString::from_str("ZX");
    auto pc = pauli_mul(pa, pb);
    CHECK(pc.str() == "+YY");
    auto prod = oracle::two_qubit_pauli("XZ") * oracle::two_qubit_pauli("ZX");
    CHECK(prod.approx(oracle::two_qubit_pauli("YY"), 1.0));
}
