#include "mzv/real.hpp"

#include <stdexcept>
#include <vector>

namespace mzv {

Real Real::from_ui(unsigned long u, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.v_, u, MPFR_RNDN);
    return r;
}

Real Real::from_si(long s, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, s, MPFR_RNDN);
    return r;
}

Real Real::from_double(double d, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

Real Real::from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
}

std::string Real::to_decimal(int digits) const {
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

Real Real::neg() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, rnd);
    return r;
}

Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, rnd);
    return r;
}

Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, rnd);
    return r;
}

Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, rnd);
    return r;
}

namespace {

// one ulp-scale bound for the rounding of x at its own precision
Real round_ulp(const Real& x) {
    Real u(x.prec());
    if (x.is_zero()) return u;
    mpfr_set_ui_2exp(u.raw(), 1, mpfr_get_exp(x.raw()) - x.prec() + 1, MPFR_RNDU);
    return u;
}

}  // namespace

NumValue NumValue::exact_zero(mpfr_prec_t prec) {
    return NumValue(prec);
}

NumValue NumValue::from_mpq(const mpq_class& q, mpfr_prec_t prec) {
    NumValue r(prec);
    r.value = Real::from_mpq(q, prec);
    r.err = round_ulp(r.value);
    return r;
}

NumValue NumValue::operator+(const NumValue& o) const {
    NumValue r(prec());
    r.value = add(value, o.value);
    r.err = add(err, o.err, MPFR_RNDU);
    r.err = add(r.err, round_ulp(r.value), MPFR_RNDU);
    return r;
}

NumValue NumValue::operator-(const NumValue& o) const {
    NumValue r(prec());
    r.value = sub(value, o.value);
    r.err = add(err, o.err, MPFR_RNDU);
    r.err = add(r.err, round_ulp(r.value), MPFR_RNDU);
    return r;
}

NumValue NumValue::operator*(const NumValue& o) const {
    NumValue r(prec());
    r.value = mul(value, o.value);
    // |a||eb| + |b||ea| + ea*eb + ulp
    Real t1 = mul(value.abs(), o.err, MPFR_RNDU);
    Real t2 = mul(o.value.abs(), err, MPFR_RNDU);
    Real t3 = mul(err, o.err, MPFR_RNDU);
    r.err = add(add(t1, t2, MPFR_RNDU), t3, MPFR_RNDU);
    r.err = add(r.err, round_ulp(r.value), MPFR_RNDU);
    return r;
}

NumValue NumValue::neg() const {
    NumValue r(prec());
    r.value = value.neg();
    r.err = err;
    return r;
}

NumValue NumValue::scale(const mpq_class& q) const {
    NumValue r(prec());
    Real f = Real::from_mpq(q, prec());
    r.value = mul(value, f);
    Real fu = Real::from_mpq(q, prec(), MPFR_RNDU).abs();
    r.err = mul(fu, err, MPFR_RNDU);
    r.err = add(r.err, round_ulp(r.value), MPFR_RNDU);
    return r;
}

Real NumValue::abs_diff(const NumValue& o) const {
    return sub(value, o.value, MPFR_RNDU).abs();
}

bool NumValue::agrees(const NumValue& o, double tol) const {
    Real lhs = abs_diff(o);
    Real rhs = add(err, o.err, MPFR_RNDU);
    rhs = add(rhs, Real::from_double(tol, prec()), MPFR_RNDU);
    return lhs <= rhs;
}

void EvalParams::validate() const {
    if (prec_bits < 64) throw std::invalid_argument("prec_bits must be >= 64");
    if (cutoff_N < 10) throw std::invalid_argument("cutoff_N must be >= 10");
}

Real log_power_tail(long N, int d, int e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_t lnn, t, u, term, acc, binom;
    mpfr_inits2(prec, lnn, t, u, term, acc, binom, (mpfr_ptr)nullptr);
    mpfr_set_ui(t, static_cast<unsigned long>(N), MPFR_RNDU);
    mpfr_log(lnn, t, MPFR_RNDU);
    mpfr_add_ui(lnn, lnn, 1, MPFR_RNDU);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    mpq_class cdj(1);  // C(d,j) * j!  ==  d!/(d-j)!
    for (int j = 0; j <= d; ++j) {
        if (j > 0) cdj *= (d - j + 1);
        mpfr_pow_ui(term, lnn, static_cast<unsigned long>(d - j), MPFR_RNDU);
        mpfr_set_q(binom, cdj.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(term, term, binom, MPFR_RNDU);
        // 1/(e-1)^{j+1} + 1/N, each piece rounded up
        mpfr_set_si(t, e - 1, MPFR_RNDD);
        mpfr_pow_ui(t, t, static_cast<unsigned long>(j + 1), MPFR_RNDD);
        mpfr_ui_div(t, 1, t, MPFR_RNDU);
        mpfr_set_ui(u, static_cast<unsigned long>(N), MPFR_RNDD);
        mpfr_ui_div(u, 1, u, MPFR_RNDU);
        mpfr_add(t, t, u, MPFR_RNDU);
        mpfr_mul(term, term, t, MPFR_RNDU);
        mpfr_add(acc, acc, term, MPFR_RNDU);
    }
    mpfr_set_ui(t, static_cast<unsigned long>(N), MPFR_RNDD);
    mpfr_pow_si(t, t, 1 - e, MPFR_RNDU);
    mpfr_mul(acc, acc, t, MPFR_RNDU);
    mpfr_set(r.raw(), acc, MPFR_RNDU);
    mpfr_clears(lnn, t, u, term, acc, binom, (mpfr_ptr)nullptr);
    return r;
}

NumValue machin_pi(mpfr_prec_t prec) {
    // atan(1/q) = sum_{j>=0} (-1)^j / ((2j+1) q^{2j+1}); the truncation error
    // of an alternating series with decreasing terms is at most the first
    // omitted term.
    auto atan_inv = [prec](unsigned long q) {
        mpfr_t term, qsq, acc, tmp;
        mpfr_inits2(prec + 32, term, qsq, acc, tmp, (mpfr_ptr)nullptr);
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        mpfr_set_ui(tmp, q, MPFR_RNDN);
        mpfr_ui_div(term, 1, tmp, MPFR_RNDN);  // 1/q
        mpfr_mul_ui(qsq, tmp, q, MPFR_RNDN);   // q^2
        Real tail(prec);
        unsigned long j = 0;
        for (;;) {
            mpfr_div_ui(tmp, term, 2 * j + 1, MPFR_RNDN);
            if (j % 2 == 0)
                mpfr_add(acc, acc, tmp, MPFR_RNDN);
            else
                mpfr_sub(acc, acc, tmp, MPFR_RNDN);
            mpfr_div(term, term, qsq, MPFR_RNDN);
            ++j;
            mpfr_div_ui(tmp, term, 2 * j + 1, MPFR_RNDN);
            if (mpfr_get_exp(tmp) < -static_cast<long>(prec) - 16) {
                // first omitted term bounds the series tail; double it to
                // absorb the loop's accumulated rounding
                mpfr_set(tail.raw(), tmp, MPFR_RNDU);
                mpfr_mul_2si(tail.raw(), tail.raw(), 2, MPFR_RNDU);
                break;
            }
        }
        Real val(prec);
        mpfr_set(val.raw(), acc, MPFR_RNDN);
        Real slack(prec);
        mpfr_set_ui_2exp(slack.raw(), 1, -static_cast<long>(prec) + 4, MPFR_RNDU);
        mpfr_clears(term, qsq, acc, tmp, (mpfr_ptr)nullptr);
        return NumValue(val, add(tail, slack, MPFR_RNDU));
    };
    NumValue a5 = atan_inv(5);
    NumValue a239 = atan_inv(239);
    NumValue pi = a5.scale(mpq_class(16)) - a239.scale(mpq_class(4));
    return pi;
}

}  // namespace mzv
