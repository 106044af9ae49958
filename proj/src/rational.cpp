#include "mzv/rational.hpp"

#include <stdexcept>

namespace mzv {

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string t = text;
    // mpq_class accepts "p/q" directly but is lenient about whitespace;
    // validate the character set ourselves so CLI errors are crisp.
    bool seen_slash = false;
    for (size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        if (c == '-' && i == 0) continue;
        if (c == '-' && i > 0 && t[i - 1] == '/') continue;
        if (c == '/') {
            if (seen_slash) throw std::invalid_argument("bad rational: " + text);
            seen_slash = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational: " + text);
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    return q.get_str();
}

mpq_class rational_pow(const mpq_class& q, long e) {
    if (e == 0) return mpq_class(1);
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && q == 0) throw std::domain_error("0 raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), n);
    mpq_class r = invert ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return r;
}

bool is_positive_integer(const mpq_class& q) {
    return q > 0 && q.get_den() == 1;
}

long rational_floor(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f.get_si();
}

}  // namespace mzv
