#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace randset {

/// Fixed-width bitset over dense feature indices (nodes, edges or frontier
/// nodes). Width is set at construction and never changes; every binary
/// operation requires equal widths.
class Bitmap {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Bitmap() = default;
    explicit Bitmap(std::size_t width) : width_(width), words_((width + kWordBits - 1) / kWordBits, 0) {}

    std::size_t width() const { return width_; }
    std::size_t word_count() const { return words_.size(); }
    const Word* words() const { return words_.data(); }

    bool test(std::size_t i) const
    {
        check_index(i);
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }

    void set(std::size_t i)
    {
        check_index(i);
        words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    }

    void reset(std::size_t i)
    {
        check_index(i);
        words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    }

    void set_all()
    {
        for (auto& w : words_) {
            w = ~Word{0};
        }
        trim();
    }

    void clear()
    {
        for (auto& w : words_) {
            w = 0;
        }
    }

    std::size_t count() const
    {
        std::size_t n = 0;
        for (auto w : words_) {
            n += static_cast<std::size_t>(std::popcount(w));
        }
        return n;
    }

    bool any() const
    {
        for (auto w : words_) {
            if (w != 0) {
                return true;
            }
        }
        return false;
    }

    bool none() const { return !any(); }

    bool intersects(const Bitmap& other) const
    {
        check_width(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if ((words_[k] & other.words_[k]) != 0) {
                return true;
            }
        }
        return false;
    }

    /// |this ∩ other|
    std::size_t intersection_count(const Bitmap& other) const
    {
        check_width(other);
        std::size_t n = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            n += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
        }
        return n;
    }

    bool is_subset_of(const Bitmap& other) const
    {
        check_width(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if ((words_[k] & ~other.words_[k]) != 0) {
                return false;
            }
        }
        return true;
    }

    Bitmap& operator|=(const Bitmap& other)
    {
        check_width(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] |= other.words_[k];
        }
        return *this;
    }

    Bitmap& operator&=(const Bitmap& other)
    {
        check_width(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] &= other.words_[k];
        }
        return *this;
    }

    /// this ← this \ other
    Bitmap& subtract(const Bitmap& other)
    {
        check_width(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] &= ~other.words_[k];
        }
        return *this;
    }

    friend Bitmap operator|(Bitmap lhs, const Bitmap& rhs) { return lhs |= rhs; }
    friend Bitmap operator&(Bitmap lhs, const Bitmap& rhs) { return lhs &= rhs; }

    friend bool operator==(const Bitmap& lhs, const Bitmap& rhs)
    {
        return lhs.width_ == rhs.width_ && lhs.words_ == rhs.words_;
    }

    /// Calls f(index) for every set bit in ascending order.
    template <typename F>
    void for_each_set(F&& f) const
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(k * kWordBits + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_indices() const
    {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    static Bitmap from_indices(std::size_t width, const std::vector<std::size_t>& indices)
    {
        Bitmap b(width);
        for (auto i : indices) {
            b.set(i);
        }
        return b;
    }

    void check_width(const Bitmap& other) const
    {
        if (other.width_ != width_) {
            throw std::invalid_argument("bitmap width mismatch: " + std::to_string(width_) + " vs "
                                        + std::to_string(other.width_));
        }
    }

private:
    void check_index(std::size_t i) const
    {
        if (i >= width_) {
            throw std::out_of_range("bit " + std::to_string(i) + " outside width " + std::to_string(width_));
        }
    }

    void trim()
    {
        if (auto tail = width_ % kWordBits; tail != 0 && !words_.empty()) {
            words_.back() &= (Word{1} << tail) - 1;
        }
    }

    std::size_t width_ = 0;
    std::vector<Word> words_;
};

using NodeBitmap = Bitmap;
using EdgeBitmap = Bitmap;
using FeatureBitmap = Bitmap;

}  // namespace randset
