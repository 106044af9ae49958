#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace mzv {

/// RAII wrapper over mpfr_t with an explicit precision. Value semantics;
/// arithmetic helpers take an explicit rounding mode where it matters
/// (error bounds are always computed with upward rounding).
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_ui(unsigned long u, mpfr_prec_t prec);
    static Real from_si(long s, mpfr_prec_t prec);
    static Real from_double(double d, mpfr_prec_t prec);
    static Real from_mpq(const mpq_class& q, mpfr_prec_t prec,
                         mpfr_rnd_t rnd = MPFR_RNDN);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific-notation decimal string with the given significant digits;
    // deterministic for identical values.
    std::string to_decimal(int digits = 40) const;

    Real neg() const;
    Real abs() const;

    friend Real add(const Real& a, const Real& b, mpfr_rnd_t rnd);
    friend Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd);
    friend Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd);
    friend Real div(const Real& a, const Real& b, mpfr_rnd_t rnd);

    bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }
    bool operator>=(const Real& o) const { return mpfr_cmp(v_, o.v_) >= 0; }
    bool operator==(const Real& o) const { return mpfr_equal_p(v_, o.v_) != 0; }

private:
    mpfr_t v_;
};

Real add(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real div(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);

/// An arbitrary-precision value paired with a rigorous radius:
/// |value - true| <= err. Error arithmetic rounds upward, so propagated
/// radii remain valid bounds.
struct NumValue {
    Real value;
    Real err;

    explicit NumValue(mpfr_prec_t prec = 64) : value(prec), err(prec) {}
    NumValue(Real v, Real e) : value(std::move(v)), err(std::move(e)) {}

    static NumValue exact_zero(mpfr_prec_t prec);
    static NumValue from_mpq(const mpq_class& q, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return value.prec(); }

    NumValue operator+(const NumValue& o) const;
    NumValue operator-(const NumValue& o) const;
    NumValue operator*(const NumValue& o) const;
    NumValue neg() const;
    NumValue scale(const mpq_class& q) const;

    // |v1 - v2| computed with upward rounding.
    Real abs_diff(const NumValue& o) const;

    // Equal within tolerance t: |v1 - v2| <= t + err1 + err2.
    bool agrees(const NumValue& o, double tol) const;
};

/// Evaluation parameters; results are a deterministic function of
/// (input, EvalParams).
struct EvalParams {
    long prec_bits = 256;      // working precision, >= 64
    long cutoff_N = 100000;    // outer summation cutoff, >= 10
    enum class TailMode { bound_only, richardson };
    TailMode tail_mode = TailMode::bound_only;

    void validate() const;
    bool operator==(const EvalParams& o) const {
        return prec_bits == o.prec_bits && cutoff_N == o.cutoff_N && tail_mode == o.tail_mode;
    }
    bool operator<(const EvalParams& o) const {
        if (prec_bits != o.prec_bits) return prec_bits < o.prec_bits;
        if (cutoff_N != o.cutoff_N) return cutoff_N < o.cutoff_N;
        return tail_mode < o.tail_mode;
    }
};

// pi by Machin's formula 16*atan(1/5) - 4*atan(1/239), with the alternating
// series tails bounded rigorously. Independent of any zeta evaluation.
NumValue machin_pi(mpfr_prec_t prec);

// Rigorous upper bound on sum_{n>N} (1+ln n)^d n^{-e} for e >= 2: expand
// (1+ln n)^d around 1+ln N and integrate each power of ln(n/N), keeping a
// unimodal-maximum allowance per term:
//   sum <= sum_j C(d,j) (1+ln N)^{d-j} j! N^{1-e} (1/(e-1)^{j+1} + 1/N).
Real log_power_tail(long N, int d, int e, mpfr_prec_t prec);

}  // namespace mzv
