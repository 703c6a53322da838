#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace apsat {

/** Fixed-capacity bitset sized at construction.
 *
 * Backs PointSet membership, coverage bookkeeping in the predicate
 * checks, and the undo journals inside the exhaustive searches.
 */
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & std::uint64_t(1);
    }

    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }

    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    /** Sets bit i and reports whether it was previously clear. */
    bool test_and_set(std::size_t i) {
        std::uint64_t& word = w_[i >> 6];
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (word & mask) return false;
        word |= mask;
        return true;
    }

    void clear() { std::fill(w_.begin(), w_.end(), std::uint64_t(0)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /** In-place union; both bitsets must have the same capacity. */
    void or_with(const Bitset& other) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= other.w_[i];
    }

    bool operator==(const Bitset&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace apsat
