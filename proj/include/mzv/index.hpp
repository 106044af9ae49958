#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mzv/word.hpp"

namespace mzv {

/// An MZV index (k_1,...,k_m), all parts >= 1. Admissible iff k_1 >= 2.
struct Index {
    std::vector<int> parts;

    Index() = default;
    explicit Index(std::vector<int> p) : parts(std::move(p)) {}

    int weight() const;
    int depth() const { return static_cast<int>(parts.size()); }
    bool admissible() const { return !parts.empty() && parts.front() >= 2; }

    // Comma list without parentheses, e.g. "3,1".
    std::string to_string() const;
    // Parenthesized report form, e.g. "(3,1)".
    std::string to_paren_string() const;
    static Index parse(const std::string& text);

    bool operator==(const Index& o) const { return parts == o.parts; }
    bool operator<(const Index& o) const { return parts < o.parts; }
};

/// The (a_i, b_i) run decomposition of an admissible index:
/// k = (a_1+1, 1^{b_1-1}, ..., a_s+1, 1^{b_s-1}), all a_i, b_i >= 1.
struct ABDecomp {
    std::vector<std::pair<int, int>> pairs;

    static ABDecomp from_index(const Index& k);
    Index to_index() const;
};

/// The sequence {k_i, l_i}_{i=1..m} parameterizing the generating functions
/// and brackets. Normalized form: k_1 >= 1, l_m >= 1, no interior zeros.
struct BiSeq {
    std::vector<std::pair<int, int>> groups;  // (k_i, l_i)

    BiSeq() = default;
    explicit BiSeq(std::vector<std::pair<int, int>> g) : groups(std::move(g)) {}

    int m() const { return static_cast<int>(groups.size()); }
    int weight() const;
    int lm_total() const;  // L_m = sum of l_i (number of lambda factors)
    bool normalized() const;

    // Merges interior zeros per the bracket conventions; throws
    // std::invalid_argument if the result violates k_1 >= 1 or l_m >= 1
    // (an ill-formed sequence).
    BiSeq normalize() const;

    // x^{k_1} y^{l_1} ... x^{k_m} y^{l_m}; requires normalized.
    Word word() const;
    static BiSeq from_word(const Word& w);

    // {l_i, k_i}_{i=m..1}: the sequence whose f equals g of this one.
    BiSeq swap_reverse() const;

    // "{k1,l1;k2,l2}" report form.
    std::string to_string() const;
    // Parses "k1,l1;k2,l2".
    static BiSeq parse(const std::string& text);

    bool operator==(const BiSeq& o) const { return groups == o.groups; }
    bool operator<(const BiSeq& o) const { return groups < o.groups; }
};

// Word <-> index conversion through Hoffman's homomorphism:
// x^{k_1}y^{l_1}...x^{k_m}y^{l_m} <-> (k_1+1, 1^{l_1-1}, ..., k_m+1, 1^{l_m-1}).
Index word_to_index(const Word& w);
Word index_to_word(const Index& k);

// Dual index (b_s+1, 1^{a_s-1}, ..., b_1+1, 1^{a_1-1}); an involution, and
// index_to_word(dual_index(k)) == tau(index_to_word(k)).
Index dual_index(const Index& k);

// All (k_1+e_1,...,k_m+e_m) over compositions e of l into m nonnegative
// parts, in lexicographic order of e; size C(l+m-1, m-1).
std::vector<Index> ohno_compositions(const Index& k, int l);

// Partial order on normalized sequences: m1 < m2, or m1 == m2 with
// componentwise k_i <= k_i' and l_i <= l_i'.
bool biseq_le(const BiSeq& s1, const BiSeq& s2);

// All admissible indices of weight 2..max_weight, ordered by weight then
// lexicographically. Count at weight w is 2^{w-2}.
std::vector<Index> enumerate_admissible(int max_weight);

// All normalized BiSeq of weight 2..max_weight (every k_i, l_i >= 1),
// ordered by weight, then depth m, then lexicographically.
std::vector<BiSeq> enumerate_biseqs(int max_weight);

// All words of exact weight w in enumeration order (2^w of them).
std::vector<Word> enumerate_words(int w);

}  // namespace mzv
