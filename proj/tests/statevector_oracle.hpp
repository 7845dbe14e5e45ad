#pragma once

// Brute-force statevector simulator for n <= 10 qubits. Test-only oracle,
// independent of the tableau implementation.

#include <complex>
#include <stdexcept>
#include <vector>

#include "iqsim/pauli.hpp"
#include "iqsim/rng.hpp"

namespace oracle {

using cplx = std::complex<double>;

class StateVector {
public:
    explicit StateVector(size_t n) : n_(n), amp_(size_t(1) << n, 0.0) { amp_[0] = 1.0; }

    size_t n() const { return n_; }

    void h(size_t q) {
        const double s = 1.0 / std::sqrt(2.0);
        for1(q, [&](cplx& a0, cplx& a1) {
            cplx t0 = s * (a0 + a1), t1 = s * (a0 - a1);
            a0 = t0; a1 = t1;
        });
    }
    void s(size_t q) {
        for1(q, [&](cplx&, cplx& a1) { a1 *= cplx(0, 1); });
    }
    void x(size_t q) {
        for1(q, [&](cplx& a0, cplx& a1) { std::swap(a0, a1); });
    }
    void z(size_t q) {
        for1(q, [&](cplx&, cplx& a1) { a1 = -a1; });
    }
    void cx(size_t c, size_t t) {
        for (size_t i = 0; i < amp_.size(); i++)
            if (((i >> c) & 1) && !((i >> t) & 1)) std::swap(amp_[i], amp_[i | (size_t(1) << t)]);
    }
    void cz(size_t a, size_t b) {
        for (size_t i = 0; i < amp_.size(); i++)
            if (((i >> a) & 1) && ((i >> b) & 1)) amp_[i] = -amp_[i];
    }

    // phase walked qubit by qubit (exponent of i), Y = [[0,-i],[i,0]]
    void apply_pauli(const iq::PauliString& p) {
        std::vector<cplx> out(amp_.size(), 0.0);
        static const cplx ifac[4] = {1.0, {0, 1}, -1.0, {0, -1}};
        for (size_t i = 0; i < amp_.size(); i++) {
            size_t j = i;
            cplx f = ifac[p.phase & 3];
            for (size_t q = 0; q < p.n; q++) {
                bool px = p.xs.get(q), pz = p.zs.get(q);
                bool b = (i >> q) & 1;
                if (px && pz) { f *= b ? cplx(0, -1) : cplx(0, 1); j ^= size_t(1) << q; }
                else if (px) { j ^= size_t(1) << q; }
                else if (pz && b) { f = -f; }
            }
            out[j] += f * amp_[i];
        }
        amp_ = std::move(out);
    }

    double expect_pauli(const iq::PauliString& p) const {
        StateVector tmp = *this;
        tmp.apply_pauli(p);
        cplx e = 0;
        for (size_t i = 0; i < amp_.size(); i++) e += std::conj(amp_[i]) * tmp.amp_[i];
        return e.real();
    }

    // projective measurement of Hermitian Pauli p; returns +1/-1
    int measure_pauli(const iq::PauliString& p, iq::Rng& rng) {
        double e = expect_pauli(p);
        double p_plus = (1.0 + e) / 2.0;
        int outcome = rng.next_double() < p_plus ? +1 : -1;
        project_pauli(p, outcome);
        return outcome;
    }

    void project_pauli(const iq::PauliString& p, int outcome) {
        StateVector tmp = *this;
        tmp.apply_pauli(p);
        double norm2 = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            amp_[i] = 0.5 * (amp_[i] + double(outcome) * tmp.amp_[i]);
            norm2 += std::norm(amp_[i]);
        }
        if (norm2 < 1e-12) throw std::runtime_error("projected onto zero state");
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& a : amp_) a *= inv;
    }

    int measure_z(size_t q, iq::Rng& rng) {
        iq::PauliString p(n_);
        p.set_z(q);
        return measure_pauli(p, rng);
    }

    void reset(size_t q, iq::Rng& rng) {
        if (measure_z(q, rng) < 0) x(q);
    }

    const std::vector<cplx>& amps() const { return amp_; }

private:
    template <typename F>
    void for1(size_t q, F f) {
        size_t bit = size_t(1) << q;
        for (size_t i = 0; i < amp_.size(); i++)
            if (!(i & bit)) f(amp_[i], amp_[i | bit]);
    }

    size_t n_;
    std::vector<cplx> amp_;
};

// 4x4 matrix product oracle for 2-qubit Pauli algebra.
struct Mat4 {
    cplx m[4][4] = {};
    static Mat4 pauli1(char p) {
        Mat4 r;
        switch (p) {
            case 'I': r.m[0][0] = r.m[1][1] = 1; break;
            case 'X': r.m[0][1] = r.m[1][0] = 1; break;
            case 'Y': r.m[0][1] = {0, -1}; r.m[1][0] = {0, 1}; break;
            case 'Z': r.m[0][0] = 1; r.m[1][1] = -1; break;
        }
        return r;
    }
    static Mat4 kron(const Mat4& a, const Mat4& b) {  // a,b are 2x2 embedded in Mat4
        Mat4 r;
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 2; j++)
                for (int k = 0; k < 2; k++)
                    for (int l = 0; l < 2; l++)
                        r.m[i * 2 + k][j * 2 + l] = a.m[i][j] * b.m[k][l];
        return r;
    }
    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                cplx s = 0;
                for (int k = 0; k < 4; k++) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    bool approx(const Mat4& o, cplx scale) const {
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++)
                if (std::abs(m[i][j] - scale * o.m[i][j]) > 1e-12) return false;
        return true;
    }
};

// Returns the 2-qubit Pauli matrix for string like "XZ" (qubit 0 first).
inline Mat4 two_qubit_pauli(const char* s) {
    // qubit 0 is the low-order bit in StateVector; use kron(q1, q0) so the
    // matrix convention matches index = q1*2 + q0
    return Mat4::kron(Mat4::pauli1(s[1]), Mat4::pauli1(s[0]));
}

}  // namespace oracle
