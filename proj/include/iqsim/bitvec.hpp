#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace iq {

// Fixed-length bit vector packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    size_t words() const { return w_.size(); }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void unset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void assign(size_t i, bool v) { v ? set(i) : unset(i); }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void clear() { std::fill(w_.begin(), w_.end(), uint64_t(0)); }

    void xor_with(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
    }

    bool none() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    size_t popcount_and(const BitVec& o) const {
        size_t c = 0;
        for (size_t i = 0; i < w_.size(); i++) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    bool parity_and(const BitVec& o) const { return popcount_and(o) & 1; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    uint64_t* data() { return w_.data(); }
    const uint64_t* data() const { return w_.data(); }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace iq
