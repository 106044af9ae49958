// Acceptance suite: runs every top-level verification criterion at its
// stated tolerance and prints one pass/fail line per criterion.
//
// Exit code 0 iff all criteria pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mzv/hoffman.hpp"
#include "mzv/report.hpp"
#include "mzv/verify.hpp"

using namespace mzv;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int g_failures = 0;

void run_criterion(const std::string& name, const std::function<Outcome()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& ex) {
        out.pass = false;
        out.detail = std::string("exception: ") + ex.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("[%s] %-20s (%7.1fs)  %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

std::string family_stats(const std::vector<RelationReport>& reports, mpfr_prec_t prec) {
    size_t passed = 0;
    Real maxdiff(prec);
    for (const auto& r : reports) {
        if (r.pass) ++passed;
        if (maxdiff < r.abs_diff) maxdiff = r.abs_diff;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu/%zu checks, max|diff| %s", passed, reports.size(),
                  maxdiff.to_decimal(3).c_str());
    return buf;
}

Outcome from_reports(const std::vector<RelationReport>& reports, mpfr_prec_t prec) {
    Outcome out;
    out.detail = family_stats(reports, prec);
    for (const auto& r : reports)
        if (!r.pass) {
            out.pass = false;
            out.detail += "; first failure: " + report_to_line(r);
            break;
        }
    return out;
}

SweepConfig base_config(int max_weight, long max_cutoff) {
    SweepConfig cfg;
    cfg.max_weight = max_weight;
    cfg.tolerance = 1e-8;
    cfg.eval.prec_bits = 256;
    cfg.eval.cutoff_N = 100000;
    cfg.max_cutoff = max_cutoff;
    cfg.relations = {"fg"};  // overwritten per criterion
    return cfg;
}

// ---- criterion 1: exact algebra ----

Outcome algebra_exactness() {
    size_t comm = 0, assoc = 0, tau_checks = 0, leibniz = 0;

    // stuffle commutativity, exhaustive to total weight 7, cache bypassed
    for (int wa = 0; wa <= 7; ++wa)
        for (const Word& a : enumerate_words(wa))
            for (int wb = 0; wa + wb <= 7; ++wb)
                for (const Word& b : enumerate_words(wb)) {
                    if (b < a) continue;
                    if (!(stuffle_words(a, b, nullptr) == stuffle_words(b, a, nullptr)))
                        return {false,
                                "commutativity fails at " + a.letters() + " * " + b.letters()};
                    ++comm;
                }

    // associativity, exhaustive to total weight 7
    for (int wa = 1; wa <= 5; ++wa)
        for (const Word& a : enumerate_words(wa))
            for (int wb = 1; wa + wb <= 6; ++wb)
                for (const Word& b : enumerate_words(wb))
                    for (int wc = 1; wa + wb + wc <= 7; ++wc)
                        for (const Word& c : enumerate_words(wc)) {
                            HPoly ab_c = stuffle(stuffle(HPoly(a), HPoly(b)), HPoly(c));
                            HPoly a_bc = stuffle(HPoly(a), stuffle(HPoly(b), HPoly(c)));
                            if (!(ab_c == a_bc))
                                return {false, "associativity fails at " + a.letters() + "," +
                                                   b.letters() + "," + c.letters()};
                            ++assoc;
                        }

    // tau: involution and anti-automorphism for concat, to weight 8
    for (int w = 0; w <= 8; ++w)
        for (const Word& v : enumerate_words(w)) {
            if (!(tau(tau(HPoly(v))) == HPoly(v))) return {false, "tau involution fails"};
            ++tau_checks;
        }
    for (int wa = 0; wa <= 4; ++wa)
        for (const Word& a : enumerate_words(wa))
            for (int wb = 0; wa + wb <= 8; ++wb)
                for (const Word& b : enumerate_words(wb)) {
                    HPoly u{a}, v{b};
                    if (!(tau(u.concat(v)) == tau(v).concat(tau(u))))
                        return {false, "tau anti-automorphism fails"};
                    ++tau_checks;
                }

    // D_n Leibniz to weight 6, n <= 4
    for (uint32_t n = 1; n <= 4; ++n)
        for (int wa = 0; wa <= 3; ++wa)
            for (const Word& a : enumerate_words(wa))
                for (int wb = 0; wa + wb <= 6; ++wb)
                    for (const Word& b : enumerate_words(wb)) {
                        HPoly u{a}, v{b};
                        if (!(derivation_dn(n, u.concat(v)) ==
                              derivation_dn(n, u).concat(v) + u.concat(derivation_dn(n, v))))
                            return {false, "Leibniz fails"};
                        ++leibniz;
                    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "exact: %zu commutativity, %zu associativity, %zu tau, %zu Leibniz", comm,
                  assoc, tau_checks, leibniz);
    return {true, buf};
}

// ---- criterion 2: automorphism equivalence ----

Outcome automorphism_equivalence() {
    size_t count = 0;
    for (const Index& k : enumerate_admissible(5)) {
        HPoly p{index_to_word(k)};
        for (uint32_t L = 0; L <= 5; ++L) {
            if (!(sigma_exp(p, L) == sigma_subst(p, L)))
                return {false, "sigma mismatch at " + k.to_paren_string()};
            ++count;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "exact: %zu (word, order) pairs", count);
    return {true, buf};
}

// ---- criterion 9: Taylor series consistency ----

Outcome taylor_consistency() {
    EvalParams p;
    p.prec_bits = 256;
    p.cutoff_N = 100000;
    std::vector<RelationReport> reports;
    for (const BiSeq& bs : enumerate_biseqs(5))
        reports.push_back(taylor_vs_ohno(bs, 6, mpq_class(1, 4), p, 1e-6));
    Outcome out = from_reports(reports, p.prec_bits);
    if (!out.pass) return out;

    // observed residual strictly decreases over L = 2..8
    for (const BiSeq& bs : enumerate_biseqs(5)) {
        Real prev = taylor_vs_ohno(bs, 2, mpq_class(1, 4), p, 1e-6).abs_diff;
        for (int L = 3; L <= 8; ++L) {
            Real cur = taylor_vs_ohno(bs, L, mpq_class(1, 4), p, 1e-6).abs_diff;
            if (!(cur < prev)) return {false, "residual not monotone for " + bs.to_string()};
            prev = cur;
        }
    }
    out.detail += "; residual monotone over L=2..8";
    return out;
}

// ---- criterion 10: known constants ----

Outcome known_constants() {
    EvalParams p;
    p.prec_bits = 256;
    p.cutoff_N = 100000;
    AdaptivePolicy pol{2.5e-11, 10000000};

    NumValue pi = machin_pi(256);
    NumValue pi2_6 = (pi * pi).scale(mpq_class(1, 6));
    NumValue pi4_90 = (((pi * pi) * pi) * pi).scale(mpq_class(1, 90));

    AdaptiveResult z2 = eval_mzv_adaptive(Index{{2}}, p, pol);
    AdaptiveResult z4 = eval_mzv_adaptive(Index{{4}}, p, pol);
    bool ok2 = z2.value.agrees(pi2_6, 1e-10);
    bool ok4 = z4.value.agrees(pi4_90, 1e-10);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "zeta(2) vs pi^2/6 |diff| %s (N=%ld); zeta(4) vs pi^4/90 |diff| %s (N=%ld)",
                  z2.value.abs_diff(pi2_6).to_decimal(3).c_str(), z2.cutoff_used,
                  z4.value.abs_diff(pi4_90).to_decimal(3).c_str(), z4.cutoff_used);
    return {ok2 && ok4, buf};
}

// ---- criterion 8 extra: exact scalar seeds ----

bool scalar_seeds_exact() {
    const mpq_class lambdas[] = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(-2, 5)};
    for (const mpq_class& lam : lambdas) {
        mpq_class lamp = lam - 1;
        for (long n = 2; n <= 50; ++n) {
            mpq_class nq(n), n1q(n - 1), d = nq - lam;
            for (int k = 1; k <= 6; ++k) {
                mpq_class lhs = lam / (rational_pow(nq, k) * d) -
                                1 / (rational_pow(nq, k - 1) * d);
                mpq_class rhs = lamp / (rational_pow(n1q, k) * d) -
                                1 / (rational_pow(n1q, k - 1) * d) + 1 / rational_pow(n1q, k) -
                                1 / rational_pow(nq, k);
                if (lhs != rhs) return false;
            }
            if (lam / (nq * d) != lamp / (n1q * d) + mpq_class(1, n - 1) - mpq_class(1, n))
                return false;
        }
    }
    return true;
}

// ---- criterion 11: residue expansion ----

Outcome residue_expansion() {
    EvalParams p;
    p.prec_bits = 256;
    p.cutoff_N = 1000000;
    mpq_class lam(1, 3);
    std::vector<RelationReport> reports;
    for (const char* s : {"1,1", "2,1"})
        reports.push_back(residue_reconstruction(BiSeq::parse(s), lam, 100, p, 1e-3));
    Outcome out = from_reports(reports, p.prec_bits);
    if (!out.pass) return out;
    for (const char* s : {"1,1", "2,1"}) {
        Real d100 = residue_reconstruction(BiSeq::parse(s), lam, 100, p, 1e-3).abs_diff;
        Real d200 = residue_reconstruction(BiSeq::parse(s), lam, 200, p, 1e-3).abs_diff;
        if (!(d200 < d100))
            return {false,
                    std::string("error did not shrink when n_max doubled for {") + s + "}"};
    }
    out.detail += "; gap shrinks as n_max doubles";
    return out;
}

}  // namespace

int main() {
    std::printf("acceptance suite: harmonic algebra + MZV relation verification\n");

    run_criterion("algebra-exactness", algebra_exactness);
    run_criterion("automorphism-equiv", automorphism_equivalence);

    run_criterion("zeta-homomorphism", [] {
        SweepConfig cfg = base_config(6, 10000000);
        cfg.relations = {"homomorphism"};
        return from_reports(run_family("homomorphism", cfg), cfg.eval.prec_bits);
    });

    run_criterion("duality", [] {
        SweepConfig cfg = base_config(8, 10000000);
        cfg.relations = {"duality"};
        return from_reports(run_family("duality", cfg), cfg.eval.prec_bits);
    });

    run_criterion("ohno-relation", [] {
        SweepConfig cfg = base_config(7, 1000000);
        cfg.relations = {"ohno"};
        cfg.ohno_shift_max = 3;
        return from_reports(run_family("ohno", cfg), cfg.eval.prec_bits);
    });

    run_criterion("f-equals-g", [] {
        SweepConfig cfg = base_config(7, 1000000);
        cfg.relations = {"fg"};
        cfg.lambdas = {mpq_class(1, 3), mpq_class(-1, 2)};
        return from_reports(run_family("fg", cfg), cfg.eval.prec_bits);
    });

    run_criterion("thm31-cases", [] {
        SweepConfig cfg = base_config(6, 1000000);
        cfg.relations = {"thm31"};
        cfg.lambdas = {mpq_class(1, 3)};
        return from_reports(run_family("thm31", cfg), cfg.eval.prec_bits);
    });

    run_criterion("lemma33-parts", [] {
        if (!scalar_seeds_exact())
            return Outcome{false, "scalar partial-fraction seeds failed exact check"};
        SweepConfig cfg = base_config(6, 1000000);
        cfg.relations = {"lemma33"};
        cfg.lambdas = {mpq_class(1, 3), mpq_class(1, 2)};
        Outcome out = from_reports(run_family("lemma33", cfg), cfg.eval.prec_bits);
        out.detail += "; scalar seeds exact for n<=50, k<=6";
        return out;
    });

    run_criterion("taylor-series", taylor_consistency);
    run_criterion("known-constants", known_constants);
    run_criterion("residue-expansion", residue_expansion);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
