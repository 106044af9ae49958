#include <doctest.h>

#include <cmath>

#include "mzv/genfun.hpp"

using namespace mzv;

namespace {

EvalParams quick() {
    EvalParams p;
    p.prec_bits = 128;
    p.cutoff_N = 20000;
    return p;
}

AdaptivePolicy small_policy() { return AdaptivePolicy{1e-9, 100000}; }

// plain double-precision evaluation of f({k1,l1};lam) for depth-one
// sequences with l <= 2, written independently of the slot machinery
double f_direct(int k1, int l1, double lam, long N) {
    if (l1 == 1) {
        double acc = 0;
        for (long n = 1; n <= N; ++n)
            acc += 1.0 / (std::pow(static_cast<double>(n), k1) * (n - lam));
        return acc;
    }
    // l1 == 2: sum_{n1>n2} n1^{-k1} (n1-lam)^{-1} (n2-lam)^{-1}
    double acc = 0, inner = 0;
    for (long n = 1; n <= N; ++n) {
        acc += inner / (std::pow(static_cast<double>(n), k1) * (n - lam));
        inner += 1.0 / (n - lam);
    }
    return acc;
}

}  // namespace

TEST_CASE("scalar partial-fraction seeds hold exactly in rational arithmetic") {
    // spade: lam/(n^k (n-lam)) - 1/(n^{k-1}(n-lam))
    //      = lam'/((n-1)^k (n-lam)) - 1/((n-1)^{k-1}(n-lam)) + (n-1)^{-k} - n^{-k}
    // heart is the k = 1 case collapsed onto one line.
    const mpq_class lambdas[] = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(-2, 5)};
    for (const mpq_class& lam : lambdas) {
        mpq_class lamp = lam - 1;
        for (long n = 2; n <= 50; ++n) {
            for (int k = 1; k <= 6; ++k) {
                mpq_class nq(n), n1q(n - 1);
                mpq_class nk = rational_pow(nq, k), n1k = rational_pow(n1q, k);
                mpq_class d = nq - lam;
                mpq_class lhs = lam / (nk * d) - 1 / (rational_pow(nq, k - 1) * d);
                mpq_class rhs = lamp / (n1k * d) - 1 / (rational_pow(n1q, k - 1) * d) +
                                1 / n1k - 1 / nk;
                CHECK(lhs == rhs);
            }
            // heart at n, lam = 1/2 evaluates to 1/6 when n = 2
            mpq_class d = mpq_class(n) - lam;
            mpq_class heart_lhs = lam / (mpq_class(n) * d);
            mpq_class heart_rhs = lamp / (mpq_class(n - 1) * d) +
                                  mpq_class(1, n - 1) - mpq_class(1, n);
            CHECK(heart_lhs == heart_rhs);
            if (n == 2 && lam == mpq_class(1, 2)) CHECK(heart_lhs == mpq_class(1, 6));
        }
    }
}

TEST_CASE("lemma 3.3 applicability matrix") {
    CHECK(lemma33_applicable(Lemma33Part::ia, BiSeq::parse("2,2"), 0));
    CHECK(!lemma33_applicable(Lemma33Part::ia, BiSeq::parse("2,1"), 0));  // m=1, l=1
    CHECK(lemma33_applicable(Lemma33Part::ia, BiSeq::parse("2,1;1,1"), 0));
    CHECK(lemma33_applicable(Lemma33Part::ib, BiSeq::parse("1,2"), 0));
    CHECK(!lemma33_applicable(Lemma33Part::ib, BiSeq::parse("2,2"), 0));
    CHECK(lemma33_applicable(Lemma33Part::ii, BiSeq::parse("1,1;1,2"), 2));
    CHECK(!lemma33_applicable(Lemma33Part::ii, BiSeq::parse("1,1;1,1"), 2));  // i=m, l_m=1
    CHECK(!lemma33_applicable(Lemma33Part::ii, BiSeq::parse("1,2"), 1));      // i must be >= 2
    CHECK(lemma33_applicable(Lemma33Part::iiic, BiSeq::parse("2,1"), 0));
    CHECK(!lemma33_applicable(Lemma33Part::iiic, BiSeq::parse("1,1"), 0));  // induction base
    CHECK(lemma33_applicable(Lemma33Part::iiid, BiSeq::parse("1,2"), 0));
    CHECK(!lemma33_applicable(Lemma33Part::iiid, BiSeq::parse("1,1"), 0));
}

TEST_CASE("lemma 3.3 numeric instances pass") {
    EvalParams p = quick();
    // (i)(b) on {1,2} at lambda = 1/3, spec instance
    CHECK(check_lemma33(Lemma33Part::ib, BiSeq::parse("1,2"), 0, mpq_class(1, 3), p, 1e-8,
                        small_policy())
              .pass);
    // (iii)(d) on {1,2} at lambda = 1/2:
    // [{(n-1)^k, l}; lam] = [{n^k, l}; lam'] - (1/lam')[{n^k, l-1}; lam']
    CHECK(check_lemma33(Lemma33Part::iiid, BiSeq::parse("1,2"), 0, mpq_class(1, 2), p, 1e-8,
                        small_policy())
              .pass);
    // (i)(a) needs k1 >= 2
    CHECK(check_lemma33(Lemma33Part::ia, BiSeq::parse("2,2"), 0, mpq_class(1, 3), p, 1e-8,
                        small_policy())
              .pass);
    CHECK(check_lemma33(Lemma33Part::ia, BiSeq::parse("3,1;1,1"), 0, mpq_class(1, 2), p, 1e-8,
                        small_policy())
              .pass);
    // (ii) at an interior and at the last group
    CHECK(check_lemma33(Lemma33Part::ii, BiSeq::parse("1,1;1,2"), 2, mpq_class(1, 3), p, 1e-8,
                        small_policy())
              .pass);
    CHECK(check_lemma33(Lemma33Part::ii, BiSeq::parse("2,1;2,2"), 2, mpq_class(1, 2), p, 1e-8,
                        small_policy())
              .pass);
    // (iii)(c) for m = 1 and m = 2
    CHECK(check_lemma33(Lemma33Part::iiic, BiSeq::parse("2,1"), 0, mpq_class(1, 3), p, 1e-8,
                        small_policy())
              .pass);
    CHECK(check_lemma33(Lemma33Part::iiic, BiSeq::parse("1,2;1,1"), 0, mpq_class(1, 2), p, 1e-8,
                        small_policy())
              .pass);
    // violated side conditions are rejected
    CHECK_THROWS_AS(check_lemma33(Lemma33Part::iiid, BiSeq::parse("2,1"), 0, mpq_class(1, 3), p,
                                  1e-8, small_policy()),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_lemma33(Lemma33Part::ia, BiSeq::parse("1,2"), 0, mpq_class(1, 3), p,
                                  1e-8, small_policy()),
                    std::invalid_argument);
}

TEST_CASE("lemma 3.3 (iii)(c) with m = 1 telescopes to an exact constant") {
    // lam [{n^k,1};lam] - [{n^{k-1},1};lam] is independent of lam (= -zeta(k))
    EvalParams p = quick();
    mpq_class lam(1, 3);
    NumValue lhs = eval_f(BiSeq::parse("2,1"), lam, p).scale(lam) -
                   eval_f(BiSeq::parse("1,1"), lam, p);
    NumValue z2 = eval_mzv(Index{{2}}, p);
    CHECK(lhs.agrees(z2.neg(), 1e-9));
}

TEST_CASE("theorem 3.1 case dispatch") {
    CHECK(*thm31_case_of(BiSeq::parse("2,2")) == Thm31Case::i);
    CHECK(*thm31_case_of(BiSeq::parse("1,2")) == Thm31Case::ii);
    CHECK(*thm31_case_of(BiSeq::parse("2,1")) == Thm31Case::iii);
    CHECK(*thm31_case_of(BiSeq::parse("1,1;1,1")) == Thm31Case::iv);
    // {1,1} is the induction base: no case applies at depth one
    CHECK(!thm31_case_of(BiSeq::parse("1,1")).has_value());
    CHECK_THROWS_AS(check_thm31(BiSeq::parse("1,1"), Thm31Case::iv, mpq_class(1, 3), quick(),
                                1e-8, small_policy()),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_thm31(BiSeq::parse("2,2"), Thm31Case::ii, mpq_class(1, 3), quick(),
                                1e-8, small_policy()),
                    std::invalid_argument);
}

TEST_CASE("theorem 3.1 numeric instances, all four cases, f and g") {
    EvalParams p = quick();
    const mpq_class third(1, 3);
    for (bool use_g : {false, true}) {
        CHECK(check_thm31(BiSeq::parse("2,2"), Thm31Case::i, third, p, 1e-8, small_policy(),
                          use_g)
                  .pass);
        CHECK(check_thm31(BiSeq::parse("1,2"), Thm31Case::ii, third, p, 1e-8, small_policy(),
                          use_g)
                  .pass);
        CHECK(check_thm31(BiSeq::parse("2,1"), Thm31Case::iii, third, p, 1e-8, small_policy(),
                          use_g)
                  .pass);
        CHECK(check_thm31(BiSeq::parse("1,1;1,1"), Thm31Case::iv, mpq_class(-1, 2), p, 1e-8,
                          small_policy(), use_g)
                  .pass);
        // depth two, mixed shifts inside the telescoping
        CHECK(check_thm31(BiSeq::parse("2,1;1,2"), Thm31Case::i, third, p, 1e-8,
                          small_policy(), use_g)
                  .pass);
        CHECK(check_thm31(BiSeq::parse("1,1;2,1"), Thm31Case::iv, third, p, 1e-8,
                          small_policy(), use_g)
                  .pass);
    }
}

TEST_CASE("theorem 3.1 case i at depth one against direct summation") {
    // bs = {2,2}, lambda = 1/3: LHS = -lam f({2,2}) + f({1,2}) + f({2,1}) at lam;
    // RHS = -lam' f({2,2}) + f({1,2}) + f({2,1}) - (1/lam') f({1,1}) at lam'.
    const double lam = 1.0 / 3.0, lamp = lam - 1.0;
    const long N = 400000;
    double lhs = -lam * f_direct(2, 2, lam, N) + f_direct(1, 2, lam, N) +
                 f_direct(2, 1, lam, N);
    double rhs = -lamp * f_direct(2, 2, lamp, N) + f_direct(1, 2, lamp, N) +
                 f_direct(2, 1, lamp, N) - (1.0 / lamp) * f_direct(1, 1, lamp, N);
    CHECK(std::abs(lhs - rhs) < 1e-4);

    // and the library reproduces the same two side values
    EvalParams p = quick();
    p.cutoff_N = 400000;
    RelationReport rep = check_thm31(BiSeq::parse("2,2"), Thm31Case::i, mpq_class(1, 3), p,
                                     1e-8, AdaptivePolicy{1e-9, 400000});
    CHECK(std::abs(rep.lhs.value.to_double() - lhs) < 1e-6);
    CHECK(std::abs(rep.rhs.value.to_double() - rhs) < 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("lambda guards for the relation checks") {
    EvalParams p = quick();
    CHECK_THROWS_AS(check_thm31(BiSeq::parse("2,2"), Thm31Case::i, mpq_class(1), p, 1e-8,
                                small_policy()),
                    std::invalid_argument);
    // lambda - 1 = 1 is just as bad (the rhs lives at lambda')
    CHECK_THROWS_AS(check_thm31(BiSeq::parse("2,2"), Thm31Case::i, mpq_class(2), p, 1e-8,
                                small_policy()),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_lemma33(Lemma33Part::ia, BiSeq::parse("2,2"), 0, mpq_class(2), p,
                                  1e-8, small_policy()),
                    std::invalid_argument);
}
