#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "mzv/word.hpp"

namespace mzv {

/// A finite Q-linear combination of words: an element of the polynomial
/// algebra h = Q<x,y>. Coefficients are exact rationals; zero coefficients
/// are never stored, so equality is structural.
class HPoly {
public:
    using Terms = std::map<Word, mpq_class>;

    HPoly() = default;
    explicit HPoly(const Word& w) { terms_[w] = 1; }
    HPoly(const Word& w, const mpq_class& c) {
        if (c != 0) terms_[w] = c;
    }

    static HPoly one() { return HPoly(Word()); }
    static HPoly zero() { return HPoly(); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Word& w, const mpq_class& c);

    HPoly& operator+=(const HPoly& o);
    HPoly& operator-=(const HPoly& o);
    HPoly& operator*=(const mpq_class& c);  // scalar
    friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
    friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
    friend HPoly operator*(HPoly a, const mpq_class& c) { return a *= c; }
    friend HPoly operator*(const mpq_class& c, HPoly a) { return a *= c; }

    bool operator==(const HPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const HPoly& o) const { return !(*this == o); }

    // Noncommutative product of Q<x,y> (bilinear extension of word
    // concatenation).
    HPoly concat(const HPoly& o) const;

    // Maximal word weight among terms (0 for the zero polynomial).
    uint32_t max_weight() const;

    // Renders as "c1*word1 + c2*word2" with terms in descending graded-lex
    // order; the empty word prints as its bare coefficient.
    std::string to_string() const;

private:
    Terms terms_;
};

}  // namespace mzv
