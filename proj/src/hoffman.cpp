#include "mzv/hoffman.hpp"

#include <stdexcept>

namespace mzv {

bool StuffleCache::lookup(const Word& a, const Word& b, HPoly& out) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find({a, b});
    if (it == table_.end()) return false;
    out = it->second;
    return true;
}

void StuffleCache::store(const Word& a, const Word& b, const HPoly& value) {
    std::lock_guard<std::mutex> lock(mu_);
    table_.emplace(std::make_pair(a, b), value);
}

size_t StuffleCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return table_.size();
}

StuffleCache& global_stuffle_cache() {
    static StuffleCache cache;
    return cache;
}

namespace {

// w is pure x^p (p >= 0)?
bool is_pure_x(const Word& w, uint32_t& p) {
    if (w.empty()) {
        p = 0;
        return true;
    }
    const auto& bl = w.blocks();
    if (bl.size() == 1 && bl[0].second == 0) {
        p = bl[0].first;
        return true;
    }
    return false;
}

// Splits w = x^p y w_rest; requires depth(w) >= 1.
void split_head(const Word& w, uint32_t& p, Word& rest) {
    const auto& bl = w.blocks();
    p = bl[0].first;
    std::vector<Word::Block> tail;
    tail.reserve(bl.size());
    tail.emplace_back(0, bl[0].second - 1);
    tail.insert(tail.end(), bl.begin() + 1, bl.end());
    rest = Word::from_blocks(std::move(tail));
}

Word prepend_xy(uint32_t p, const Word& w) {
    std::vector<Word::Block> bl;
    bl.reserve(w.blocks().size() + 1);
    bl.emplace_back(p, 1);
    bl.insert(bl.end(), w.blocks().begin(), w.blocks().end());
    return Word::from_blocks(std::move(bl));
}

Word append_xrun(const Word& w, uint32_t p) {
    std::vector<Word::Block> bl = w.blocks();
    bl.emplace_back(p, 0);
    return Word::from_blocks(std::move(bl));
}

}  // namespace

HPoly stuffle_words(const Word& a, const Word& b, StuffleCache* cache) {
    uint32_t p = 0, q = 0;
    // (H.1)/(H.2): either factor a pure x-power
    if (is_pure_x(a, p)) return HPoly(p == 0 ? b : append_xrun(b, p));
    if (is_pure_x(b, q)) return HPoly(append_xrun(a, q));

    const bool a_le_b = !(b < a);
    const Word& lo = a_le_b ? a : b;
    const Word& hi = a_le_b ? b : a;
    HPoly result;
    if (cache != nullptr && cache->lookup(lo, hi, result)) return result;

    // (H.3)
    Word a_rest, b_rest;
    split_head(a, p, a_rest);
    split_head(b, q, b_rest);
    HPoly acc;
    const HPoly left = stuffle_words(a_rest, b, cache);
    for (const auto& [w, c] : left.terms()) acc.add_term(prepend_xy(p, w), c);
    const HPoly mid = stuffle_words(a_rest, b_rest, cache);
    for (const auto& [w, c] : mid.terms()) acc.add_term(prepend_xy(p + q + 1, w), c);
    const HPoly right = stuffle_words(a, b_rest, cache);
    for (const auto& [w, c] : right.terms()) acc.add_term(prepend_xy(q, w), c);

    if (cache != nullptr) cache->store(lo, hi, acc);
    return acc;
}

HPoly stuffle(const HPoly& a, const HPoly& b, StuffleCache* cache) {
    HPoly r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            HPoly prod = stuffle_words(wa, wb, cache);
            prod *= ca * cb;
            r += prod;
        }
    return r;
}

HPoly tau(const HPoly& p) {
    HPoly r;
    for (const auto& [w, c] : p.terms()) r.add_term(w.reversed_swapped(), c);
    return r;
}

namespace {

// All y-replacement images of one word: the y at each position becomes x^n y.
void dn_word(uint32_t n, const Word& w, const mpq_class& coeff, HPoly& out) {
    const auto& bl = w.blocks();
    for (size_t i = 0; i < bl.size(); ++i) {
        for (uint32_t j = 0; j < bl[i].second; ++j) {
            std::vector<Word::Block> nb;
            nb.reserve(bl.size() + 1);
            nb.insert(nb.end(), bl.begin(), bl.begin() + i);
            nb.emplace_back(bl[i].first, j);
            nb.emplace_back(n, bl[i].second - j);
            nb.insert(nb.end(), bl.begin() + i + 1, bl.end());
            out.add_term(Word::from_blocks(std::move(nb)), coeff);
        }
    }
}

}  // namespace

HPoly derivation_dn(uint32_t n, const HPoly& p) {
    if (n < 1) throw std::invalid_argument("derivation_dn: n must be >= 1");
    HPoly r;
    for (const auto& [w, c] : p.terms()) dn_word(n, w, c, r);
    return r;
}

bool is_admissible(const HPoly& p) {
    for (const auto& [w, c] : p.terms())
        if (!w.admissible()) return false;
    return true;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
    uint32_t n = std::min(order(), o.order());
    for (uint32_t d = 0; d <= n; ++d) coeffs_[d] += o.coeffs_[d];
    return *this;
}

LambdaPoly LambdaPoly::concat(const LambdaPoly& o) const {
    LambdaPoly r(order());
    for (uint32_t da = 0; da <= order(); ++da) {
        if (coeffs_[da].is_zero()) continue;
        for (uint32_t db = 0; da + db <= order() && db <= o.order(); ++db)
            r.coeffs_[da + db] += coeffs_[da].concat(o.coeffs_[db]);
    }
    return r;
}

LambdaPoly sigma_exp(const HPoly& p, uint32_t L) {
    // D(lambda) = sum_{n=1..L} (lambda^n/n) D_n raises lambda-degree by >= 1,
    // so exp = sum_{t<=L} D^t/t! terminates.
    auto apply_d = [L](const LambdaPoly& q) {
        LambdaPoly r(L);
        for (uint32_t d = 0; d <= L; ++d) {
            if (q.coeff(d).is_zero()) continue;
            for (uint32_t n = 1; d + n <= L; ++n) {
                HPoly img = derivation_dn(n, q.coeff(d));
                img *= mpq_class(1, n);
                r.coeff(d + n) += img;
            }
        }
        return r;
    };
    LambdaPoly acc(L);
    acc.coeff(0) = p;
    LambdaPoly total = acc;
    mpq_class factorial_inv(1);
    for (uint32_t t = 1; t <= L; ++t) {
        acc = apply_d(acc);
        factorial_inv /= t;
        LambdaPoly scaled(L);
        for (uint32_t d = 0; d <= L; ++d) {
            HPoly h = acc.coeff(d);
            h *= factorial_inv;
            scaled.coeff(d) = h;
        }
        total += scaled;
    }
    return total;
}

LambdaPoly sigma_subst(const HPoly& p, uint32_t L) {
    // y-image: sum_{j=0..L} x^j y lambda^j
    LambdaPoly y_image(L);
    for (uint32_t j = 0; j <= L; ++j)
        y_image.coeff(j) = HPoly(Word::from_blocks({{j, 1}}));

    LambdaPoly result(L);
    for (const auto& [w, c] : p.terms()) {
        LambdaPoly acc(L);
        acc.coeff(0) = HPoly::one();
        for (char letter : w.letters()) {
            if (letter == 'x') {
                LambdaPoly xs(L);
                xs.coeff(0) = HPoly(Word::single_x());
                acc = acc.concat(xs);
            } else {
                acc = acc.concat(y_image);
            }
        }
        for (uint32_t d = 0; d <= L; ++d) {
            HPoly h = acc.coeff(d);
            h *= c;
            result.coeff(d) += h;
        }
    }
    return result;
}

}  // namespace mzv
