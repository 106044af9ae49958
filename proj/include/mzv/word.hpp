#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mzv {

/// A monomial of Q<x,y>, stored as run-length blocks x^a y^b.
///
/// Canonical form: no (0,0) blocks; every interior x-run and y-run is
/// positive; only the leading x-run or the trailing y-run may be zero.
/// The empty word (no blocks) is the multiplicative identity.
class Word {
public:
    using Block = std::pair<uint32_t, uint32_t>;  // (x-run, y-run)

    Word() = default;

    // Normalizes an arbitrary block list into canonical form.
    static Word from_blocks(std::vector<Block> blocks);

    // Parses a letter string over {x, y}; "" is the empty word.
    static Word from_letters(const std::string& s);

    static Word single_x() { return from_letters("x"); }
    static Word single_y() { return from_letters("y"); }

    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    uint32_t weight() const;  // total letter count
    uint32_t depth() const;   // number of y letters

    // True iff empty, or starts with x and ends with y (a word of h^0).
    bool admissible() const;

    Word concat(const Word& other) const;

    // Reverses the letter order and swaps x <-> y (the word-level action
    // of the anti-involution tau).
    Word reversed_swapped() const;

    std::string letters() const;

    // Graded lexicographic order: weight first, then letters with x < y.
    int compare(const Word& other) const;
    bool operator<(const Word& o) const { return compare(o) < 0; }
    bool operator==(const Word& o) const { return blocks_ == o.blocks_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

private:
    std::vector<Block> blocks_;
};

}  // namespace mzv
