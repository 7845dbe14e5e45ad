#include "iqsim/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace iq {

StabilizerTableau::StabilizerTableau(size_t n)
    : n_(n), words_((n + 63) / 64),
      xs_(2 * n * words_, 0), zs_(2 * n * words_, 0), phase_(2 * n, 0) {
    for (size_t i = 0; i < n; i++) {
        xs_[i * words_ + (i >> 6)] |= uint64_t(1) << (i & 63);            // destab i = X_i
        zs_[(n + i) * words_ + (i >> 6)] |= uint64_t(1) << (i & 63);      // stab i = Z_i
    }
}

static inline bool bit(const std::vector<uint64_t>& m, size_t row, size_t w, size_t q) {
    return (m[row * w + (q >> 6)] >> (q & 63)) & 1;
}
static inline void bxor(std::vector<uint64_t>& m, size_t row, size_t w, size_t q, bool v) {
    if (v) m[row * w + (q >> 6)] ^= uint64_t(1) << (q & 63);
}

void StabilizerTableau::apply_h(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        bool x = bit(xs_, r, words_, q), z = bit(zs_, r, words_, q);
        if (x && z) phase_[r] = uint8_t((phase_[r] + 2) & 3);
        bxor(xs_, r, words_, q, x ^ z);
        bxor(zs_, r, words_, q, x ^ z);
    }
}

void StabilizerTableau::apply_s(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        bool x = bit(xs_, r, words_, q), z = bit(zs_, r, words_, q);
        if (x && z) phase_[r] = uint8_t((phase_[r] + 2) & 3);
        bxor(zs_, r, words_, q, x);
    }
}

void StabilizerTableau::apply_x(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++)
        if (bit(zs_, r, words_, q)) phase_[r] = uint8_t((phase_[r] + 2) & 3);
}

void StabilizerTableau::apply_z(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++)
        if (bit(xs_, r, words_, q)) phase_[r] = uint8_t((phase_[r] + 2) & 3);
}

void StabilizerTableau::apply_cx(size_t c, size_t t) {
    if (c == t) throw std::invalid_argument("CX: duplicate targets");
    for (size_t r = 0; r < 2 * n_; r++) {
        bool xc = bit(xs_, r, words_, c), zc = bit(zs_, r, words_, c);
        bool xt = bit(xs_, r, words_, t), zt = bit(zs_, r, words_, t);
        if (xc && zt && (xt == zc)) phase_[r] = uint8_t((phase_[r] + 2) & 3);
        bxor(xs_, r, words_, t, xc);
        bxor(zs_, r, words_, c, zt);
    }
}

void StabilizerTableau::apply_cz(size_t a, size_t b) {
    if (a == b) throw std::invalid_argument("CZ: duplicate targets");
    for (size_t r = 0; r < 2 * n_; r++) {
        bool xa = bit(xs_, r, words_, a), za = bit(zs_, r, words_, a);
        bool xb = bit(xs_, r, words_, b), zb = bit(zs_, r, words_, b);
        if (xa && xb && (za ^ zb)) phase_[r] = uint8_t((phase_[r] + 2) & 3);
        bxor(zs_, r, words_, a, xb);
        bxor(zs_, r, words_, b, xa);
    }
}

void StabilizerTableau::apply_reset(size_t q) {
    PauliString z(n_);
    z.set_z(q);
    auto [outcome, det] = measure_pauli(z, nullptr);
    if (outcome < 0) apply_x(q);
}

void StabilizerTableau::apply(Gate g, const std::vector<size_t>& targets) {
    switch (g) {
        case Gate::H: apply_h(targets.at(0)); break;
        case Gate::S: apply_s(targets.at(0)); break;
        case Gate::X: apply_x(targets.at(0)); break;
        case Gate::Z: apply_z(targets.at(0)); break;
        case Gate::CX: apply_cx(targets.at(0), targets.at(1)); break;
        case Gate::CZ: apply_cz(targets.at(0), targets.at(1)); break;
        case Gate::RESET: apply_reset(targets.at(0)); break;
    }
}

bool StabilizerTableau::anticommutes(size_t r, const PauliString& p) const {
    int c = 0;
    const uint64_t* rx = &xs_[r * words_];
    const uint64_t* rz = &zs_[r * words_];
    for (size_t i = 0; i < words_; i++) {
        c += std::popcount(rx[i] & p.zs.data()[i]);
        c += std::popcount(rz[i] & p.xs.data()[i]);
    }
    return c & 1;
}

int StabilizerTableau::row_mul_phase(size_t dst, size_t src) const {
    int plus = 0, minus = 0;
    const uint64_t* x1 = &xs_[dst * words_];
    const uint64_t* z1 = &zs_[dst * words_];
    const uint64_t* x2 = &xs_[src * words_];
    const uint64_t* z2 = &zs_[src * words_];
    for (size_t i = 0; i < words_; i++) {
        uint64_t X1 = x1[i] & ~z1[i], Y1 = x1[i] & z1[i], Z1 = ~x1[i] & z1[i];
        uint64_t X2 = x2[i] & ~z2[i], Y2 = x2[i] & z2[i], Z2 = ~x2[i] & z2[i];
        plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
        minus += std::popcount((X1 & Z2) | (Y1 & X2) | (Z1 & Y2));
    }
    return plus - minus;
}

void StabilizerTableau::row_mul(size_t dst, size_t src) {
    phase_[dst] = uint8_t((int(phase_[dst]) + int(phase_[src]) + row_mul_phase(dst, src)) & 3);
    for (size_t i = 0; i < words_; i++) {
        xs_[dst * words_ + i] ^= xs_[src * words_ + i];
        zs_[dst * words_ + i] ^= zs_[src * words_ + i];
    }
}

std::pair<int, bool> StabilizerTableau::measure_pauli(const PauliString& p, Rng* rng) {
    if (p.n != n_) throw std::invalid_argument("measure_pauli: dimension mismatch");
    if (p.phase & 1) throw std::invalid_argument("measure_pauli: non-Hermitian sign");

    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (anticommutes(r, p)) { pivot = r; break; }
    }

    if (pivot < 2 * n_) {
        // Nondeterministic: collapse onto (outcome) * p.
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != pivot && anticommutes(r, p)) row_mul(r, pivot);
        }
        size_t d = pivot - n_;
        for (size_t i = 0; i < words_; i++) {
            xs_[d * words_ + i] = xs_[pivot * words_ + i];
            zs_[d * words_ + i] = zs_[pivot * words_ + i];
        }
        phase_[d] = phase_[pivot];
        bool one = rng ? rng->next_bit() : false;
        for (size_t i = 0; i < words_; i++) {
            xs_[pivot * words_ + i] = p.xs.data()[i];
            zs_[pivot * words_ + i] = p.zs.data()[i];
        }
        phase_[pivot] = uint8_t((p.phase + (one ? 2 : 0)) & 3);
        return {one ? -1 : +1, false};
    }

    // Deterministic: p = +/- product of stabilizers i where destab i anticommutes.
    PauliString acc(n_);
    size_t acc_row = SIZE_MAX;
    for (size_t i = 0; i < n_; i++) {
        if (!anticommutes(i, p)) continue;
        PauliString s = row(n_ + i);
        acc = acc_row == SIZE_MAX ? s : pauli_mul(acc, s);
        acc_row = i;
    }
    if (acc.xs != p.xs || acc.zs != p.zs)
        throw std::logic_error("measure_pauli: stabilizer decomposition failed");
    int outcome = ((acc.phase - p.phase) & 3) == 0 ? +1 : -1;
    return {outcome, true};
}

int StabilizerTableau::measure_z(size_t q, Rng* rng) {
    PauliString p(n_);
    p.set_z(q);
    return measure_pauli(p, rng).first;
}

int StabilizerTableau::measure_x(size_t q, Rng* rng) {
    PauliString p(n_);
    p.set_x(q);
    return measure_pauli(p, rng).first;
}

PauliString StabilizerTableau::row(size_t r) const {
    PauliString p(n_);
    p.phase = phase_[r];
    for (size_t i = 0; i < words_; i++) {
        p.xs.data()[i] = xs_[r * words_ + i];
        p.zs.data()[i] = zs_[r * words_ + i];
    }
    return p;
}

bool StabilizerTableau::check_invariants() const {
    // stabilizers mutually commute; destab i anticommutes with stab i only
    for (size_t i = 0; i < n_; i++) {
        PauliString si = row(n_ + i);
        for (size_t j = 0; j < n_; j++) {
            if (anticommutes(n_ + j, si) != false && j != i) return false;
            bool anti = anticommutes(j, si);
            if (anti != (i == j)) return false;
        }
        if (phase_[n_ + i] & 1) return false;
    }
    // rank 2n over GF(2): rows must be independent; Gaussian elimination
    size_t rows = 2 * n_, cols = 2 * n_;
    std::vector<std::vector<uint64_t>> m(rows, std::vector<uint64_t>((cols + 63) / 64, 0));
    for (size_t r = 0; r < rows; r++) {
        for (size_t q = 0; q < n_; q++) {
            if (bit(xs_, r, words_, q)) m[r][q >> 6] |= uint64_t(1) << (q & 63);
            if (bit(zs_, r, words_, q)) m[r][(n_ + q) >> 6] |= uint64_t(1) << ((n_ + q) & 63);
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; c++) {
        size_t piv = rank;
        while (piv < rows && !((m[piv][c >> 6] >> (c & 63)) & 1)) piv++;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (size_t r = 0; r < rows; r++) {
            if (r != rank && ((m[r][c >> 6] >> (c & 63)) & 1))
                for (size_t w = 0; w < m[r].size(); w++) m[r][w] ^= m[rank][w];
        }
        rank++;
    }
    return rank == 2 * n_;
}

}  // namespace iq
