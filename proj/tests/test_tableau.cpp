#include <doctest.h>

#include <cmath>

#include "iqsim/tableau.hpp"
#include "statevector_oracle.hpp"

using namespace iq;

TEST_CASE("H makes |+> a deterministic X eigenstate") {
    StabilizerTableau t(1);
    t.apply_h(0);
    PauliString x(1);
    x.set_x(0);
    auto [outcome, det] = t.measure_pauli(x, nullptr);
    CHECK(outcome == 1);
    CHECK(det);
}

TEST_CASE("CNOT truth table on tableau") {
    StabilizerTableau t(2);
    t.apply_x(0);  // control |1>
    t.apply_cx(0, 1);
    CHECK(t.measure_z(1, nullptr) == -1);
    CHECK(t.measure_z(0, nullptr) == -1);
}

TEST_CASE("S twice on |+> flips X") {
    StabilizerTableau t(1);
    t.apply_h(0);
    t.apply_s(0);
    t.apply_s(0);
    PauliString x(1);
    x.set_x(0);
    auto [outcome, det] = t.measure_pauli(x, nullptr);
    CHECK(outcome == -1);
    CHECK(det);
}

TEST_CASE("repeated measurement is idempotent") {
    Rng rng(3);
    StabilizerTableau t(2);
    t.apply_h(0);
    t.apply_cx(0, 1);
    int first = t.measure_z(0, &rng);
    auto [second, det] = [&] {
        PauliString z(2);
        z.set_z(0);
        return t.measure_pauli(z, &rng);
    }();
    CHECK(det);
    CHECK(second == first);
}

TEST_CASE("fresh |0> measures +1 deterministically") {
    StabilizerTableau t(1);
    PauliString z(1);
    z.set_z(0);
    auto [outcome, det] = t.measure_pauli(z, nullptr);
    CHECK(outcome == 1);
    CHECK(det);
}

TEST_CASE("GHZ joint operators are deterministic") {
    StabilizerTableau t(3);
    t.apply_h(0);
    t.apply_cx(0, 1);
    t.apply_cx(1, 2);
    auto zz = PauliString::from_str("ZZI");
    auto [o1, d1] = t.measure_pauli(zz, nullptr);
    CHECK(o1 == 1);
    CHECK(d1);
    auto xxx = PauliString::from_str("XXX");
    auto [o2, d2] = t.measure_pauli(xxx, nullptr);
    CHECK(o2 == 1);
    CHECK(d2);

    // cross-check against the statevector oracle
    Rng rng(11);
    oracle::StateVector sv(3);
    sv.h(0);
    sv.cx(0, 1);
    sv.cx(1, 2);
    CHECK(sv.expect_pauli(zz) == doctest::Approx(1.0));
    CHECK(sv.expect_pauli(xxx) == doctest::Approx(1.0));
}

TEST_CASE("CZ phase rule matches H-conjugated CX and the statevector") {
    Rng rng(17);
    for (int trial = 0; trial < 100; trial++) {
        StabilizerTableau a(2), b(2);
        oracle::StateVector sv(2);
        // random prefix
        for (int g = 0; g < 6; g++) {
            uint32_t c = rng.next_below(5);
            size_t q = rng.next_below(2);
            switch (c) {
                case 0: a.apply_h(q); b.apply_h(q); sv.h(q); break;
                case 1: a.apply_s(q); b.apply_s(q); sv.s(q); break;
                case 2: a.apply_x(q); b.apply_x(q); sv.x(q); break;
                case 3: a.apply_cx(0, 1); b.apply_cx(0, 1); sv.cx(0, 1); break;
                case 4: a.apply_cz(0, 1);
                        b.apply_h(1); b.apply_cx(0, 1); b.apply_h(1);
                        sv.cz(0, 1); break;
            }
        }
        // compare all 2-qubit pauli expectations
        static const char P[4] = {'I', 'X', 'Y', 'Z'};
        for (int i = 1; i < 16; i++) {
            char s[3] = {P[i % 4], P[i / 4], 0};
            auto p = PauliString::from_str(s);
            StabilizerTableau ta = a, tb = b;
            auto [oa, da] = ta.measure_pauli(p, nullptr);
            auto [ob, db] = tb.measure_pauli(p, nullptr);
            CHECK(da == db);
            double e = sv.expect_pauli(p);
            if (da) {
                CHECK(oa == ob);
                CHECK(std::abs(e - oa) < 1e-9);
            } else {
                CHECK(std::abs(e) < 1e-9);
            }
        }
    }
}

TEST_CASE("invariants hold through random gate and measurement sequences") {
    Rng rng(23);
    StabilizerTableau t(4);
    for (int step = 0; step < 300; step++) {
        uint32_t c = rng.next_below(8);
        size_t q = rng.next_below(4);
        size_t q2 = (q + 1 + rng.next_below(3)) % 4;
        switch (c) {
            case 0: t.apply_h(q); break;
            case 1: t.apply_s(q); break;
            case 2: t.apply_x(q); break;
            case 3: t.apply_z(q); break;
            case 4: t.apply_cx(q, q2); break;
            case 5: t.apply_cz(q, q2); break;
            case 6: t.apply_reset(q); break;
            default: {
                PauliString p(4);
                for (size_t i = 0; i < 4; i++) {
                    uint32_t pc = rng.next_below(4);
                    if (pc & 1) p.xs.set(i);
                    if (pc & 2) p.zs.set(i);
                }
                if (!p.is_identity_bits()) t.measure_pauli(p, &rng);
            }
        }
        if (step % 50 == 0) CHECK(t.check_invariants());
    }
    CHECK(t.check_invariants());
}

TEST_CASE("duplicate CX/CZ targets are rejected") {
    StabilizerTableau t(2);
    CHECK_THROWS_AS(t.apply_cx(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(t.apply_cz(0, 0), std::invalid_argument);
}

TEST_CASE("same seed gives bit-identical outcome sequences") {
    for (uint64_t seed : {1ull, 42ull}) {
        std::vector<int> a, b;
        for (auto* out : {&a, &b}) {
            Rng rng(seed);
            StabilizerTableau t(3);
            for (int i = 0; i < 40; i++) {
                t.apply_h(i % 3);
                t.apply_cx(i % 3, (i + 1) % 3);
                out->push_back(t.measure_z(i % 3, &rng));
            }
        }
        CHECK(a == b);
    }
}

TEST_CASE("measurement distributions match the statevector oracle within 3 sigma") {
    // a few fixed 3-qubit circuits, 10^4 shots each
    struct Step { int kind; size_t a, b; };
    std::vector<std::vector<Step>> circuits = {
        {{0, 0, 0}, {3, 0, 1}, {1, 1, 0}, {4, 1, 2}},
        {{0, 1, 0}, {0, 2, 0}, {4, 0, 1}, {3, 1, 2}, {1, 0, 0}},
        {{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {4, 0, 2}, {4, 1, 2}},
    };
    const int shots = 10000;
    int ci = 0;
    for (const auto& steps : circuits) {
        ci++;
        int ones_tab = 0;
        double p1_exact = 0;
        {
            oracle::StateVector sv(3);
            for (auto& st : steps) {
                switch (st.kind) {
                    case 0: sv.h(st.a); break;
                    case 1: sv.s(st.a); break;
                    case 3: sv.cx(st.a, st.b); break;
                    case 4: sv.cz(st.a, st.b); break;
                }
            }
            iq::PauliString z0(3);
            z0.set_z(0);
            p1_exact = (1.0 - sv.expect_pauli(z0)) / 2.0;
        }
        for (int s = 0; s < shots; s++) {
            Rng rng(1000 + ci, s);
            StabilizerTableau t(3);
            for (auto& st : steps) {
                switch (st.kind) {
                    case 0: t.apply_h(st.a); break;
                    case 1: t.apply_s(st.a); break;
                    case 3: t.apply_cx(st.a, st.b); break;
                    case 4: t.apply_cz(st.a, st.b); break;
                }
            }
            if (t.measure_z(0, &rng) < 0) ones_tab++;
        }
        double sigma = std::sqrt(shots * std::max(1e-9, p1_exact * (1 - p1_exact)));
        CHECK(std::abs(ones_tab - shots * p1_exact) <= 3 * sigma + 1);
    }
}
