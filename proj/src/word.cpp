#include "mzv/word.hpp"

#include <stdexcept>

namespace mzv {

Word Word::from_blocks(std::vector<Block> blocks) {
    Word w;
    for (const Block& b : blocks) {
        if (b.first == 0 && b.second == 0) continue;
        if (w.blocks_.empty()) {
            w.blocks_.push_back(b);
            continue;
        }
        Block& last = w.blocks_.back();
        if (last.second == 0) {
            // previous block ended in x: x-runs join
            last.first += b.first;
            last.second = b.second;
        } else if (b.first == 0) {
            // this block starts with y: y-runs join
            last.second += b.second;
        } else {
            w.blocks_.push_back(b);
        }
    }
    return w;
}

Word Word::from_letters(const std::string& s) {
    std::vector<Block> blocks;
    uint32_t xr = 0, yr = 0;
    for (char c : s) {
        if (c == 'x') {
            if (yr > 0) {
                blocks.emplace_back(xr, yr);
                xr = yr = 0;
            }
            ++xr;
        } else if (c == 'y') {
            ++yr;
        } else {
            throw std::invalid_argument(std::string("bad letter '") + c + "' in word");
        }
    }
    if (xr > 0 || yr > 0) blocks.emplace_back(xr, yr);
    return from_blocks(std::move(blocks));
}

uint32_t Word::weight() const {
    uint32_t w = 0;
    for (const Block& b : blocks_) w += b.first + b.second;
    return w;
}

uint32_t Word::depth() const {
    uint32_t d = 0;
    for (const Block& b : blocks_) d += b.second;
    return d;
}

bool Word::admissible() const {
    if (blocks_.empty()) return true;
    return blocks_.front().first >= 1 && blocks_.back().second >= 1;
}

Word Word::concat(const Word& other) const {
    std::vector<Block> joined = blocks_;
    joined.insert(joined.end(), other.blocks_.begin(), other.blocks_.end());
    return from_blocks(std::move(joined));
}

Word Word::reversed_swapped() const {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it)
        out.emplace_back(it->second, it->first);
    return from_blocks(std::move(out));
}

std::string Word::letters() const {
    std::string s;
    s.reserve(weight());
    for (const Block& b : blocks_) {
        s.append(b.first, 'x');
        s.append(b.second, 'y');
    }
    return s;
}

int Word::compare(const Word& other) const {
    uint32_t wa = weight(), wb = other.weight();
    if (wa != wb) return wa < wb ? -1 : 1;
    // walk the two run-length streams letter-wise, x < y
    size_t ia = 0, ib = 0;
    uint32_t ra = 0, rb = 0;  // letters consumed inside current half-block
    bool ya = false, yb = false;  // currently in the y-run?
    auto cur = [](const std::vector<Block>& bl, size_t& i, uint32_t& r, bool& iny) -> int {
        while (i < bl.size()) {
            uint32_t run = iny ? bl[i].second : bl[i].first;
            if (r < run) return iny ? 1 : 0;  // 0 = x, 1 = y
            r = 0;
            if (!iny) {
                iny = true;
            } else {
                iny = false;
                ++i;
            }
        }
        return -1;  // exhausted
    };
    for (;;) {
        int ca = cur(blocks_, ia, ra, ya);
        int cb = cur(other.blocks_, ib, rb, yb);
        if (ca < 0 && cb < 0) return 0;
        if (ca != cb) return ca < cb ? -1 : 1;
        ++ra;
        ++rb;
    }
}

}  // namespace mzv
