#include <doctest.h>

#include <cmath>

#include "mzv/hoffman.hpp"
#include "mzv/mzv_eval.hpp"

using namespace mzv;

namespace {

EvalParams quick() {
    EvalParams p;
    p.prec_bits = 128;
    p.cutoff_N = 20000;
    return p;
}

// independent oracle: plain partial sum of n^{-2} with the integral tail
// bound, no DP machinery
NumValue zeta2_direct(long N, mpfr_prec_t prec) {
    mpfr_t acc, t;
    mpfr_inits2(prec, acc, t, (mpfr_ptr)nullptr);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (long n = 1; n <= N; ++n) {
        mpfr_set_ui(t, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_sqr(t, t, MPFR_RNDN);
        mpfr_ui_div(t, 1, t, MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    Real v(prec), e(prec);
    mpfr_set(v.raw(), acc, MPFR_RNDN);
    mpfr_set_ui(e.raw(), 1, MPFR_RNDU);
    mpfr_div_ui(e.raw(), e.raw(), static_cast<unsigned long>(N), MPFR_RNDU);
    mpfr_clears(acc, t, (mpfr_ptr)nullptr);
    return NumValue(v, e);
}

// brute-force double-loop zeta(a,b) at a small cutoff (trend oracle)
double zeta2_brute(int a, int b, long N) {
    double acc = 0;
    for (long n1 = 2; n1 <= N; ++n1) {
        double inner = 0;
        for (long n2 = 1; n2 < n1; ++n2) inner += std::pow(static_cast<double>(n2), -b);
        acc += inner * std::pow(static_cast<double>(n1), -a);
    }
    return acc;
}

}  // namespace

TEST_CASE("machin pi agrees with the library constant") {
    NumValue pi = machin_pi(256);
    Real lib(256);
    mpfr_const_pi(lib.raw(), MPFR_RNDN);
    Real diff = sub(pi.value, lib, MPFR_RNDU).abs();
    Real bound = add(pi.err, Real::from_double(1e-70, 256), MPFR_RNDU);
    CHECK(diff <= bound);
}

TEST_CASE("numvalue error propagation stays an upper bound") {
    NumValue a = NumValue::from_mpq(mpq_class(1, 3), 128);
    NumValue b = NumValue::from_mpq(mpq_class(2, 7), 128);
    NumValue s = a + b;
    // |value - 13/21| <= err
    Real truth = Real::from_mpq(mpq_class(13, 21), 256);
    CHECK(sub(s.value, truth, MPFR_RNDU).abs() <= s.err);
    NumValue p = a * b;
    Real ptruth = Real::from_mpq(mpq_class(2, 21), 256);
    CHECK(sub(p.value, ptruth, MPFR_RNDU).abs() <= p.err);
    NumValue sc = a.scale(mpq_class(-5, 2));
    Real struth = Real::from_mpq(mpq_class(-5, 6), 256);
    CHECK(sub(sc.value, struth, MPFR_RNDU).abs() <= sc.err);
}

TEST_CASE("agrees() uses tol + both radii") {
    NumValue a(64), b(64);
    a.value = Real::from_double(1.0, 64);
    b.value = Real::from_double(1.5, 64);
    a.err = Real::from_double(0.2, 64);
    b.err = Real::from_double(0.2, 64);
    CHECK(a.agrees(b, 0.1));
    CHECK(!a.agrees(b, 0.05));
}

TEST_CASE("zeta(2) against the direct oracle and pi^2/6") {
    EvalParams p;
    p.prec_bits = 256;
    p.cutoff_N = 1000000;
    NumValue z2 = eval_mzv(Index{{2}}, p);
    NumValue oracle = zeta2_direct(1000000, 256);
    CHECK(z2.agrees(oracle, 1e-20));

    NumValue pi = machin_pi(256);
    NumValue pi2_6 = (pi * pi).scale(mpq_class(1, 6));
    CHECK(z2.agrees(pi2_6, 1e-12));
    // and the truncated value really sits below pi^2/6 by about 1/N
    Real gap = sub(pi2_6.value, z2.value);
    CHECK(gap.sign() > 0);
    CHECK(gap <= Real::from_double(1.1e-6, 256));
    CHECK(Real::from_double(0.9e-6, 256) <= gap);
}

TEST_CASE("duality instance zeta(3) = zeta(2,1)") {
    EvalParams p = quick();
    p.cutoff_N = 100000;
    NumValue a = eval_mzv(Index{{3}}, p);
    NumValue b = eval_mzv(Index{{2, 1}}, p);
    CHECK(a.agrees(b, 1e-9));
}

TEST_CASE("sum formula instance zeta(4) = zeta(3,1) + zeta(2,2)") {
    EvalParams p = quick();
    p.cutoff_N = 100000;
    NumValue lhs = eval_mzv(Index{{4}}, p);
    NumValue rhs = eval_mzv(Index{{3, 1}}, p) + eval_mzv(Index{{2, 2}}, p);
    CHECK(lhs.agrees(rhs, 1e-9));

    // brute-force double loops confirm the convergence trend at small N
    double direct = zeta2_brute(3, 1, 4000) + zeta2_brute(2, 2, 4000);
    CHECK(std::abs(direct - lhs.value.to_double()) < 1e-3);
}

TEST_CASE("eval_mzv rejects non-admissible indices") {
    CHECK_THROWS_AS(eval_mzv(Index{{1, 2}}, quick()), std::domain_error);
    CHECK_THROWS_AS(eval_mzv(Index{{}}, quick()), std::domain_error);
}

TEST_CASE("eval_zeta_tilde on single words, polynomials, and zero") {
    EvalParams p = quick();
    NumValue direct = eval_mzv(Index{{2}}, p);
    NumValue viaword = eval_zeta_tilde(HPoly(Word::from_letters("xy")), p);
    CHECK(viaword.value == direct.value);

    NumValue zero = eval_zeta_tilde(HPoly(), p);
    CHECK(zero.value.is_zero());
    CHECK(zero.err.is_zero());

    CHECK_THROWS_AS(eval_zeta_tilde(HPoly(Word::from_letters("yx")), p), std::domain_error);

    // homomorphism instance: zeta~(2 xyxy + xxxy) == zeta(2)^2
    HPoly prod = stuffle(HPoly(Word::from_letters("xy")), HPoly(Word::from_letters("xy")));
    NumValue lhs = eval_zeta_tilde(prod, p);
    NumValue rhs = direct * direct;
    CHECK(lhs.agrees(rhs, 1e-9));
}

TEST_CASE("eval_dn_image matches the derivation route, weight <= 5") {
    EvalParams p = quick();
    for (const Index& k : enumerate_admissible(5)) {
        for (uint32_t n = 1; n <= 2; ++n) {
            NumValue a = eval_dn_image(k, n, p);
            NumValue b = eval_zeta_tilde(derivation_dn(n, HPoly(index_to_word(k))), p);
            // the same summands in a different addition order
            CHECK(a.abs_diff(b) <= Real::from_double(1e-30, p.prec_bits));
        }
    }
    EvalParams p2 = quick();
    NumValue one_shift = eval_dn_image(Index{{2}}, 1, p2);
    NumValue z3 = eval_mzv(Index{{3}}, p2);
    CHECK(one_shift.value == z3.value);
}

TEST_CASE("determinism: identical params give bit-identical results") {
    EvalParams p = quick();
    NumValue a = eval_mzv(Index{{2, 1, 1}}, p);
    NumValue b = eval_mzv(Index{{2, 1, 1}}, p);
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
    CHECK(a.value.to_decimal() == b.value.to_decimal());
}

TEST_CASE("doubling the cutoff never increases err; value drifts within old err") {
    for (const Index& k : {Index{{2}}, Index{{2, 1, 1, 1}}, Index{{3, 1}}}) {
        EvalParams p = quick();
        p.cutoff_N = 100;
        NumValue prev = eval_mzv(k, p);
        for (int step = 0; step < 8; ++step) {
            p.cutoff_N *= 2;
            NumValue cur = eval_mzv(k, p);
            CHECK(cur.err <= prev.err);
            CHECK(cur.value.abs() >= prev.value.abs());  // positive terms
            CHECK(sub(cur.value, prev.value, MPFR_RNDU).abs() <= prev.err);
            prev = cur;
        }
    }
}

TEST_CASE("richardson mode never reports a smaller radius and stays consistent") {
    EvalParams p = quick();
    p.cutoff_N = 50000;
    NumValue plain = eval_mzv(Index{{2}}, p);
    EvalParams r = p;
    r.tail_mode = EvalParams::TailMode::richardson;
    NumValue rich = eval_mzv(Index{{2}}, r);
    CHECK(plain.err <= rich.err);
    CHECK(plain.agrees(rich, 0));
    // the extrapolated value lands closer to the limit
    NumValue pi = machin_pi(128);
    NumValue truth = (pi * pi).scale(mpq_class(1, 6));
    CHECK(rich.abs_diff(truth) < plain.abs_diff(truth));
}

TEST_CASE("adaptive escalation honors the cap and the target") {
    EvalParams p = quick();
    p.cutoff_N = 1000;
    AdaptivePolicy pol{1e-7, 100000};
    AdaptiveResult r = eval_mzv_adaptive(Index{{4}}, p, pol);
    CHECK(r.cutoff_used <= 100000);
    CHECK(r.value.err <= Real::from_double(1e-7, p.prec_bits));
    AdaptiveResult capped = eval_mzv_adaptive(Index{{2}}, p, pol);
    CHECK(capped.cutoff_used == 100000);  // target unreachable, stops at cap
}

TEST_CASE("params validation") {
    EvalParams p;
    p.prec_bits = 32;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.prec_bits = 128;
    p.cutoff_N = 5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
