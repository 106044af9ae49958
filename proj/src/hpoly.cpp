#include "mzv/hpoly.hpp"

#include "mzv/rational.hpp"

namespace mzv {

void HPoly::add_term(const Word& w, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

HPoly& HPoly::operator+=(const HPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

HPoly& HPoly::operator-=(const HPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

HPoly& HPoly::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

HPoly HPoly::concat(const HPoly& o) const {
    HPoly r;
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) r.add_term(wa.concat(wb), ca * cb);
    return r;
}

uint32_t HPoly::max_weight() const {
    uint32_t w = 0;
    for (const auto& [word, c] : terms_)
        if (word.weight() > w) w = word.weight();
    return w;
}

std::string HPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Word& w = it->first;
        mpq_class c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (w.empty()) {
            out += rational_to_string(c);
        } else if (c == 1) {
            out += w.letters();
        } else {
            out += rational_to_string(c) + "*" + w.letters();
        }
    }
    return out;
}

}  // namespace mzv
