#include "mzv/index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mzv {

int Index::weight() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

std::string Index::to_string() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s;
}

std::string Index::to_paren_string() const {
    return "(" + to_string() + ")";
}

Index Index::parse(const std::string& text) {
    Index k;
    if (text.empty()) throw std::invalid_argument("empty index literal");
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (piece.empty()) throw std::invalid_argument("bad index literal: " + text);
        for (char c : piece)
            if (c < '0' || c > '9') throw std::invalid_argument("bad index literal: " + text);
        k.parts.push_back(std::stoi(piece));
        if (k.parts.back() < 1) throw std::invalid_argument("index parts must be >= 1");
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos == text.size()) throw std::invalid_argument("bad index literal: " + text);
    }
    return k;
}

ABDecomp ABDecomp::from_index(const Index& k) {
    if (!k.admissible()) throw std::invalid_argument("ABDecomp requires an admissible index");
    ABDecomp d;
    size_t i = 0;
    while (i < k.parts.size()) {
        int a = k.parts[i] - 1;  // first part of a run is a_i + 1 >= 2
        size_t j = i + 1;
        int b = 1;
        while (j < k.parts.size() && k.parts[j] == 1) {
            ++b;
            ++j;
        }
        d.pairs.emplace_back(a, b);
        i = j;
    }
    return d;
}

Index ABDecomp::to_index() const {
    Index k;
    for (const auto& [a, b] : pairs) {
        k.parts.push_back(a + 1);
        for (int t = 1; t < b; ++t) k.parts.push_back(1);
    }
    return k;
}

int BiSeq::weight() const {
    int w = 0;
    for (const auto& [k, l] : groups) w += k + l;
    return w;
}

int BiSeq::lm_total() const {
    int L = 0;
    for (const auto& [k, l] : groups) L += l;
    return L;
}

bool BiSeq::normalized() const {
    if (groups.empty()) return false;
    for (const auto& [k, l] : groups)
        if (k < 0 || l < 0) return false;
    if (groups.front().first < 1 || groups.back().second < 1) return false;
    for (size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].first == 0) return false;
        if (groups[i].second == 0 && i + 1 != groups.size()) return false;
    }
    return groups.back().second >= 1;
}

BiSeq BiSeq::normalize() const {
    // a zero k merges neighboring l-runs; a zero interior l merges k-runs
    std::vector<std::pair<int, int>> out;
    for (auto [k, l] : groups) {
        if (k < 0 || l < 0) throw std::invalid_argument("negative entry in sequence " + to_string());
        if (k == 0 && l == 0) continue;
        if (out.empty()) {
            out.emplace_back(k, l);
            continue;
        }
        auto& last = out.back();
        if (last.second == 0) {
            last.first += k;
            last.second = l;
        } else if (k == 0) {
            last.second += l;
        } else {
            out.emplace_back(k, l);
        }
    }
    BiSeq r{out};
    if (out.empty() || out.front().first < 1 || out.back().second < 1)
        throw std::invalid_argument("ill-formed sequence (needs k_1 >= 1 and l_m >= 1): " + to_string());
    return r;
}

Word BiSeq::word() const {
    std::vector<Word::Block> blocks;
    blocks.reserve(groups.size());
    for (const auto& [k, l] : groups) blocks.emplace_back(k, l);
    return Word::from_blocks(std::move(blocks));
}

BiSeq BiSeq::from_word(const Word& w) {
    if (!w.admissible() || w.empty())
        throw std::invalid_argument("sequence requires a nonempty admissible word");
    BiSeq bs;
    for (const auto& [a, b] : w.blocks()) bs.groups.emplace_back(a, b);
    return bs;
}

BiSeq BiSeq::swap_reverse() const {
    BiSeq r;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it)
        r.groups.emplace_back(it->second, it->first);
    return r;
}

std::string BiSeq::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < groups.size(); ++i) {
        if (i) s += ";";
        s += std::to_string(groups[i].first) + "," + std::to_string(groups[i].second);
    }
    return s + "}";
}

BiSeq BiSeq::parse(const std::string& text) {
    BiSeq bs;
    if (text.empty()) throw std::invalid_argument("empty sequence literal");
    size_t pos = 0;
    std::vector<int> flat;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw std::invalid_argument("bad sequence literal: " + text);
        for (char c : cur)
            if (c < '0' || c > '9') throw std::invalid_argument("bad sequence literal: " + text);
        flat.push_back(std::stoi(cur));
        cur.clear();
    };
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == ',' || c == ';')
            flush();
        else
            cur += c;
    }
    flush();
    if (flat.size() % 2 != 0)
        throw std::invalid_argument("sequence literal needs an even number of entries: " + text);
    for (size_t i = 0; i < flat.size(); i += 2) bs.groups.emplace_back(flat[i], flat[i + 1]);
    return bs;
}

Index word_to_index(const Word& w) {
    if (w.empty() || !w.admissible())
        throw std::invalid_argument("word_to_index requires a nonempty admissible word");
    Index k;
    for (const auto& [a, b] : w.blocks()) {
        k.parts.push_back(static_cast<int>(a) + 1);
        for (uint32_t t = 1; t < b; ++t) k.parts.push_back(1);
    }
    return k;
}

Word index_to_word(const Index& k) {
    if (!k.admissible()) throw std::invalid_argument("index_to_word requires an admissible index");
    ABDecomp d = ABDecomp::from_index(k);
    std::vector<Word::Block> blocks;
    blocks.reserve(d.pairs.size());
    for (const auto& [a, b] : d.pairs) blocks.emplace_back(a, b);
    return Word::from_blocks(std::move(blocks));
}

Index dual_index(const Index& k) {
    ABDecomp d = ABDecomp::from_index(k);
    ABDecomp rev;
    for (auto it = d.pairs.rbegin(); it != d.pairs.rend(); ++it)
        rev.pairs.emplace_back(it->second, it->first);
    return rev.to_index();
}

namespace {

void compositions_rec(int remaining, int slots, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= remaining; ++first) {
        cur.push_back(first);
        compositions_rec(remaining - first, slots - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Index> ohno_compositions(const Index& k, int l) {
    if (!k.admissible()) throw std::invalid_argument("ohno_compositions requires an admissible index");
    if (l < 0) throw std::invalid_argument("shift must be >= 0");
    std::vector<std::vector<int>> eps;
    std::vector<int> cur;
    compositions_rec(l, k.depth(), cur, eps);
    std::vector<Index> out;
    out.reserve(eps.size());
    for (const auto& e : eps) {
        Index shifted = k;
        for (size_t i = 0; i < e.size(); ++i) shifted.parts[i] += e[i];
        out.push_back(std::move(shifted));
    }
    return out;
}

bool biseq_le(const BiSeq& s1, const BiSeq& s2) {
    if (s1.m() < s2.m()) return true;
    if (s1.m() > s2.m()) return false;
    for (int i = 0; i < s1.m(); ++i) {
        if (s2.groups[i].first < s1.groups[i].first) return false;
        if (s2.groups[i].second < s1.groups[i].second) return false;
    }
    return true;
}

namespace {

// compositions of w into parts >= 1, lexicographic
void pos_compositions(int w, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (w == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = 1; first <= w; ++first) {
        cur.push_back(first);
        pos_compositions(w - first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Index> enumerate_admissible(int max_weight) {
    if (max_weight < 2) throw std::invalid_argument("max_weight must be >= 2");
    std::vector<Index> out;
    for (int w = 2; w <= max_weight; ++w) {
        std::vector<Index> at_w;
        for (int first = 2; first <= w; ++first) {
            if (first == w) {
                at_w.push_back(Index{{first}});
                continue;
            }
            std::vector<std::vector<int>> rests;
            std::vector<int> cur;
            pos_compositions(w - first, cur, rests);
            for (const auto& rest : rests) {
                Index k{{first}};
                k.parts.insert(k.parts.end(), rest.begin(), rest.end());
                at_w.push_back(std::move(k));
            }
        }
        std::sort(at_w.begin(), at_w.end());
        out.insert(out.end(), at_w.begin(), at_w.end());
    }
    return out;
}

std::vector<BiSeq> enumerate_biseqs(int max_weight) {
    std::vector<BiSeq> out;
    for (int w = 2; w <= max_weight; ++w) {
        for (int m = 1; 2 * m <= w; ++m) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            pos_compositions(w, cur, comps);
            std::vector<BiSeq> at_m;
            for (const auto& c : comps) {
                if (static_cast<int>(c.size()) != 2 * m) continue;
                BiSeq bs;
                for (int i = 0; i < m; ++i) bs.groups.emplace_back(c[2 * i], c[2 * i + 1]);
                at_m.push_back(std::move(bs));
            }
            std::sort(at_m.begin(), at_m.end());
            out.insert(out.end(), at_m.begin(), at_m.end());
        }
    }
    return out;
}

std::vector<Word> enumerate_words(int w) {
    std::vector<Word> out;
    if (w < 0) return out;
    out.reserve(static_cast<size_t>(1) << w);
    for (uint64_t mask = 0; mask < (static_cast<uint64_t>(1) << w); ++mask) {
        std::string letters;
        letters.reserve(w);
        for (int i = 0; i < w; ++i) letters += (mask >> i) & 1 ? 'y' : 'x';
        out.push_back(Word::from_letters(letters));
    }
    return out;
}

}  // namespace mzv
