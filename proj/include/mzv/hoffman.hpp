#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "mzv/hpoly.hpp"

namespace mzv {

/// The harmonic algebra (h, +, *): Hoffman's stuffle product, the
/// anti-involution tau, the derivations D_n, and the truncated automorphism
/// exp(sum_{n>=1} (lambda^n/n) D_n).
///
/// All operations are pure; the optional stuffle memo table behaves as a
/// write-once cache and never changes results.

/// Memo table for word-level stuffle products. Keys are ordered pairs
/// (lexicographically smaller word first), which uses commutativity of *;
/// tests that establish commutativity must therefore bypass the cache.
class StuffleCache {
public:
    bool lookup(const Word& a, const Word& b, HPoly& out) const;
    void store(const Word& a, const Word& b, const HPoly& value);
    size_t size() const;

private:
    mutable std::mutex mu_;
    std::map<std::pair<Word, Word>, HPoly> table_;
};

StuffleCache& global_stuffle_cache();

// Harmonic product by the recursion
//   (H.1)  1*w = w*1 = w
//   (H.2)  x^p*w = w*x^p = w x^p
//   (H.3)  x^p y w1 * x^q y w2 = x^p y (w1 * x^q y w2)
//          + x^{p+q+1} y (w1 * w2) + x^q y (x^p y w1 * w2)
// extended bilinearly. `cache == nullptr` disables memoization (used by the
// commutativity tests); the default uses the process-wide cache.
HPoly stuffle(const HPoly& a, const HPoly& b, StuffleCache* cache = &global_stuffle_cache());
HPoly stuffle_words(const Word& a, const Word& b, StuffleCache* cache = &global_stuffle_cache());

// Anti-involution: per word, reverse the letters and swap x <-> y.
HPoly tau(const HPoly& p);

// Derivation with D_n(x) = 0, D_n(y) = x^n y, extended by Leibniz. n >= 1.
HPoly derivation_dn(uint32_t n, const HPoly& p);

// True iff every term is the empty word or lies in x h y.
bool is_admissible(const HPoly& p);

/// Truncated power series in lambda with HPoly coefficients; all arithmetic
/// discards degrees above `order`.
class LambdaPoly {
public:
    explicit LambdaPoly(uint32_t order) : coeffs_(order + 1) {}

    uint32_t order() const { return static_cast<uint32_t>(coeffs_.size()) - 1; }
    const HPoly& coeff(uint32_t d) const { return coeffs_.at(d); }
    HPoly& coeff(uint32_t d) { return coeffs_.at(d); }
    const std::vector<HPoly>& coeffs() const { return coeffs_; }

    LambdaPoly& operator+=(const LambdaPoly& o);
    // Truncated product; both operands must share the same order.
    LambdaPoly concat(const LambdaPoly& o) const;

    bool operator==(const LambdaPoly& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<HPoly> coeffs_;
};

// exp(sum_{n>=1} (lambda^n/n) D_n)(p) truncated at lambda^L, summed as
// iterated derivations with exact rational coefficients.
LambdaPoly sigma_exp(const HPoly& p, uint32_t L);

// The same automorphism computed by substitution: x -> x,
// y -> sum_{j=0..L} x^j y lambda^j, multiplied out and truncated.
LambdaPoly sigma_subst(const HPoly& p, uint32_t L);

}  // namespace mzv
