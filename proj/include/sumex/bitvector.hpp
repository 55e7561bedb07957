#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sumex {

// Fixed-size bit vector over 64-bit words. Observation masks and feature
// columns are stored in this form so that support counting reduces to
// word-wise AND + popcount. Bits at positions >= size() are always zero.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t n, bool value = false)
        : size_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        clear_tail();
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void reset() {
        for (auto& w : words_) w = 0;
    }

    void fill() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        clear_tail();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : words_) {
            if (w != 0) return true;
        }
        return false;
    }

    bool none() const { return !any(); }

    // this = a & b. Operands must share this vector's size.
    void assign_and(const BitVector& a, const BitVector& b) {
        resize_like(a);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] = a.words_[k] & b.words_[k];
    }

    // this = a & ~b.
    void assign_andnot(const BitVector& a, const BitVector& b) {
        resize_like(a);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] = a.words_[k] & ~b.words_[k];
    }

    // this = ~a (tail bits kept zero).
    void assign_not(const BitVector& a) {
        resize_like(a);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] = ~a.words_[k];
        clear_tail();
    }

    void operator&=(const BitVector& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    }

    void operator|=(const BitVector& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    }

    // |this & o| without materializing the intersection.
    std::size_t count_and(const BitVector& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }

    // |this & a & b|.
    std::size_t count_and(const BitVector& a, const BitVector& b) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(
                std::popcount(words_[k] & a.words_[k] & b.words_[k]));
        return c;
    }

    // |this & a & ~b|.
    std::size_t count_and_andnot(const BitVector& a, const BitVector& b) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(
                std::popcount(words_[k] & a.words_[k] & ~b.words_[k]));
        return c;
    }

    bool intersects(const BitVector& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & o.words_[k]) return true;
        }
        return false;
    }

    // (this & a & ~b) nonempty?
    bool intersects_andnot(const BitVector& a, const BitVector& b) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & a.words_[k] & ~b.words_[k]) return true;
        }
        return false;
    }

    bool is_subset_of(const BitVector& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & ~o.words_[k]) return false;
        }
        return true;
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int bit = std::countr_zero(w);
                out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(bit)));
                w &= w - 1;
            }
        }
        return out;
    }

    bool operator==(const BitVector& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }

private:
    void clear_tail() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    void resize_like(const BitVector& a) {
        if (size_ != a.size_) {
            size_ = a.size_;
            words_.assign(a.words_.size(), 0);
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace sumex
