#include "mzv/genfun.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mzv {

BracketSpec BracketSpec::unshifted(const BiSeq& bs, const mpq_class& lambda) {
    return BracketSpec{bs, std::vector<int>(bs.groups.size(), 0), lambda};
}

int SlotForm::outer_exponent() const {
    int k = 0;
    for (const Power& pw : slots.front()) k += pw.exponent;
    return k;
}

std::string SlotForm::cache_key() const {
    std::ostringstream os;
    os << slots.size();
    for (const auto& slot : slots) {
        os << "|";
        for (const Power& pw : slot) os << "(" << pw.shift << "," << pw.exponent << ")";
    }
    os << "|l=" << rational_to_string(lambda);
    return os.str();
}

SlotForm compile_bracket(const BracketSpec& spec) {
    if (is_positive_integer(spec.lambda))
        throw std::invalid_argument("bracket: lambda must not be a positive integer");
    if (spec.shifts.size() != spec.groups.groups.size())
        throw std::invalid_argument("bracket: one shift per group required");
    for (int a : spec.shifts)
        if (a != 0 && a != 1) throw std::invalid_argument("bracket: shifts must be 0 or 1");

    long L = 0;
    for (const auto& [k, l] : spec.groups.groups) {
        if (k < 0 || l < 0) throw std::invalid_argument("bracket: negative entry");
        L += l;
    }
    if (L < 1) throw std::invalid_argument("bracket: sequence has no summation variables");

    SlotForm sf;
    sf.lambda = spec.lambda;
    sf.slots.assign(static_cast<size_t>(L), {});
    long pos = 0;
    for (size_t i = 0; i < spec.groups.groups.size(); ++i) {
        auto [k, l] = spec.groups.groups[i];
        if (k > 0) {
            if (pos >= L)
                throw std::invalid_argument("bracket: trailing base power without a variable");
            sf.slots[static_cast<size_t>(pos)].push_back({spec.shifts[i], k});
        }
        pos += l;
    }
    for (auto& slot : sf.slots) {
        std::sort(slot.begin(), slot.end());
        // join equal shifts
        std::vector<SlotForm::Power> merged;
        for (const auto& pw : slot) {
            if (!merged.empty() && merged.back().shift == pw.shift)
                merged.back().exponent += pw.exponent;
            else
                merged.push_back(pw);
        }
        slot = std::move(merged);
    }
    if (sf.outer_exponent() < 1)
        throw std::invalid_argument("bracket: divergent (outermost variable has no base power)");
    for (const auto& pw : sf.slots.back())
        if (pw.shift == 1)
            throw std::invalid_argument("bracket: innermost shifted factor hits n - 1 = 0");
    return sf;
}

namespace {

// max over n >= 1 of n / |n - lambda|  (1 when lambda <= 0); exact.
mpq_class c_lambda_bound(const mpq_class& lam) {
    if (lam <= 0) return mpq_class(1);
    long fl = rational_floor(lam);
    mpq_class best(1);
    for (long n : {1L, fl, fl + 1}) {
        if (n < 1) continue;
        mpq_class d = n - lam;
        if (d < 0) d = -d;
        if (d == 0) continue;  // lambda is not a positive integer anyway
        mpq_class cand = mpq_class(n) / d;
        if (cand > best) best = cand;
    }
    return best;
}

Real bracket_tail_formula(long N, long Lm, int kappa, const Real& cc, mpfr_prec_t prec) {
    // terms decay like (1+ln n)^{L-1} n^{-(kappa+1)} up to the constant cc
    return mul(cc, log_power_tail(N, static_cast<int>(Lm) - 1, kappa + 1, prec), MPFR_RNDU);
}

struct BracketKey {
    std::string form;
    long prec;
    long cutoff;
    int mode;
    bool operator<(const BracketKey& o) const {
        return std::tie(form, prec, cutoff, mode) < std::tie(o.form, o.prec, o.cutoff, o.mode);
    }
};

std::mutex g_bracket_mu;
std::map<BracketKey, NumValue>& bracket_table() {
    static std::map<BracketKey, NumValue> t;
    return t;
}

NumValue eval_slotform(const SlotForm& sf, const EvalParams& p) {
    p.validate();
    const mpfr_prec_t prec = p.prec_bits;
    const long N = p.cutoff_N;
    const long L = static_cast<long>(sf.slots.size());
    if (sf.lambda * 2 >= N)
        throw std::domain_error("bracket: cutoff too small (requires lambda < N/2)");
    const bool rich = p.tail_mode == EvalParams::TailMode::richardson;

    int kmax0 = 0, kmax1 = 0, shifted_total = 0;
    for (const auto& slot : sf.slots)
        for (const auto& pw : slot) {
            if (pw.shift == 0)
                kmax0 = std::max(kmax0, pw.exponent);
            else {
                kmax1 = std::max(kmax1, pw.exponent);
                shifted_total += pw.exponent;
            }
        }

    mpfr_t nn, dd, invl, fac, half, result;
    mpfr_inits2(prec, nn, dd, invl, fac, half, result, (mpfr_ptr)nullptr);
    mpfr_set_ui(result, 0, MPFR_RNDN);
    mpfr_set_ui(half, 0, MPFR_RNDN);
    std::vector<mpfr_t> pw0(kmax0 + 1), pw1(kmax1 + 1), acc(L > 1 ? L - 1 : 0);
    for (auto& x : pw0) mpfr_init2(x, prec);
    for (auto& x : pw1) mpfr_init2(x, prec);
    for (auto& a : acc) {
        mpfr_init2(a, prec);
        mpfr_set_ui(a, 0, MPFR_RNDN);
    }
    const long snapshot_at = rich ? N / 2 : -1;

    // factor of slot s evaluated at the current n; invl and the power tables
    // must be current. Returns a pointer to avoid copying when powerless.
    auto slot_factor = [&](size_t s) -> mpfr_srcptr {
        const auto& powers = sf.slots[s];
        if (powers.empty()) return invl;
        mpfr_set(fac, invl, MPFR_RNDN);
        for (const auto& pw : powers)
            mpfr_mul(fac, fac, pw.shift == 0 ? pw0[pw.exponent] : pw1[pw.exponent], MPFR_RNDN);
        return fac;
    };

    for (long n = 1; n <= N; ++n) {
        mpfr_set_ui(nn, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_sub_q(dd, nn, sf.lambda.get_mpq_t(), MPFR_RNDN);
        mpfr_ui_div(invl, 1, dd, MPFR_RNDN);
        if (kmax0 > 0) {
            mpfr_ui_div(pw0[1], 1, nn, MPFR_RNDN);
            for (int j = 2; j <= kmax0; ++j) mpfr_mul(pw0[j], pw0[j - 1], pw0[1], MPFR_RNDN);
        }
        if (kmax1 > 0 && n >= 2) {
            mpfr_set_ui(dd, static_cast<unsigned long>(n) - 1, MPFR_RNDN);
            mpfr_ui_div(pw1[1], 1, dd, MPFR_RNDN);
            for (int j = 2; j <= kmax1; ++j) mpfr_mul(pw1[j], pw1[j - 1], pw1[1], MPFR_RNDN);
        }

        if (L == 1) {
            mpfr_add(result, result, slot_factor(0), MPFR_RNDN);
        } else {
            if (!mpfr_zero_p(acc[0]))
                mpfr_fma(result, slot_factor(0), acc[0], result, MPFR_RNDN);
            for (long s = 1; s < L; ++s) {
                if (s < L - 1) {
                    if (!mpfr_zero_p(acc[s]))
                        mpfr_fma(acc[s - 1], slot_factor(static_cast<size_t>(s)), acc[s],
                                 acc[s - 1], MPFR_RNDN);
                } else {
                    mpfr_add(acc[s - 1], acc[s - 1], slot_factor(static_cast<size_t>(s)),
                             MPFR_RNDN);
                }
            }
        }
        if (n == snapshot_at) mpfr_set(half, result, MPFR_RNDN);
    }

    Real value(prec);
    mpfr_set(value.raw(), result, MPFR_RNDN);

    // tail bound: Cc (1+ln N)^{L-1} N^{-kappa} / kappa with
    // Cc = C_lambda^L 2^{total shifted exponent}; C_lambda = max n/|n-lambda|
    const int kappa = sf.outer_exponent();
    mpq_class clam_q = c_lambda_bound(sf.lambda);
    Real cc = Real::from_mpq(clam_q, prec, MPFR_RNDU);
    {
        mpfr_pow_ui(cc.raw(), cc.raw(), static_cast<unsigned long>(L), MPFR_RNDU);
        mpfr_mul_2si(cc.raw(), cc.raw(), shifted_total, MPFR_RNDU);
    }
    Real tail = bracket_tail_formula(N, L, kappa, cc, prec);
    if (sf.lambda < 1) {
        // positive terms: the bound at any smaller cutoff stays valid, so
        // minimizing over a halving grid keeps err monotone in N
        for (long g = N / 2; g >= 10; g /= 2) {
            Real cand = bracket_tail_formula(g, L, kappa, cc, prec);
            if (cand < tail) tail = cand;
        }
    }
    long emax = value.is_zero() ? 0 : mpfr_get_exp(value.raw());
    Real round_allow(prec);
    mpfr_set_ui_2exp(round_allow.raw(), 1, emax + 40 - prec, MPFR_RNDU);
    Real err = add(tail, round_allow, MPFR_RNDU);

    if (rich && snapshot_at >= 1) {
        Real hv(prec);
        mpfr_set(hv.raw(), half, MPFR_RNDN);
        Real delta = sub(value, hv);
        Real denom(prec);
        mpfr_set_ui(denom.raw(), 1, MPFR_RNDN);
        mpfr_mul_2si(denom.raw(), denom.raw(), kappa, MPFR_RNDN);
        mpfr_sub_ui(denom.raw(), denom.raw(), 1, MPFR_RNDN);
        if (denom.sign() > 0) {
            Real corr = div(delta, denom);
            value = add(value, corr);
            err = add(err, corr.abs(), MPFR_RNDU);
        }
    }

    for (auto& x : pw0) mpfr_clear(x);
    for (auto& x : pw1) mpfr_clear(x);
    for (auto& a : acc) mpfr_clear(a);
    mpfr_clears(nn, dd, invl, fac, half, result, (mpfr_ptr)nullptr);
    return NumValue(value, err);
}

}  // namespace

NumValue eval_bracket(const BracketSpec& spec, const EvalParams& p) {
    return eval_slotform(compile_bracket(spec), p);
}

NumValue eval_bracket_cached(const BracketSpec& spec, const EvalParams& p) {
    SlotForm sf = compile_bracket(spec);
    BracketKey key{sf.cache_key(), p.prec_bits, p.cutoff_N, static_cast<int>(p.tail_mode)};
    {
        std::lock_guard<std::mutex> lock(g_bracket_mu);
        auto it = bracket_table().find(key);
        if (it != bracket_table().end()) return it->second;
    }
    NumValue v = eval_slotform(sf, p);
    std::lock_guard<std::mutex> lock(g_bracket_mu);
    bracket_table().emplace(std::move(key), v);
    return v;
}

void clear_bracket_cache() {
    std::lock_guard<std::mutex> lock(g_bracket_mu);
    bracket_table().clear();
}

NumValue eval_f(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p) {
    return eval_bracket_cached(BracketSpec::unshifted(bs.normalize(), lambda), p);
}

NumValue eval_g(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p) {
    return eval_f(bs.normalize().swap_reverse(), lambda, p);
}

NumValue ohno_sum_value(const Index& k, int l, const EvalParams& p) {
    NumValue acc = NumValue::exact_zero(p.prec_bits);
    for (const Index& shifted : ohno_compositions(k, l))
        acc = acc + eval_mzv_cached(shifted, p);
    return acc;
}

RelationReport make_report(std::string relation,
                           std::vector<std::pair<std::string, std::string>> inputs,
                           std::optional<mpq_class> lambda, NumValue lhs, NumValue rhs,
                           double tol, const EvalParams& params, long cutoff_used) {
    RelationReport r;
    r.relation = std::move(relation);
    r.inputs = std::move(inputs);
    r.lambda = std::move(lambda);
    r.abs_diff = lhs.abs_diff(rhs);
    r.pass = lhs.agrees(rhs, tol);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.tolerance = tol;
    r.params = params;
    r.cutoff_used = cutoff_used;
    return r;
}

namespace {

// Evaluates both sides at a shared cutoff, escalating x10 until each side's
// radius is at most tol/4 or the cap is reached.
template <typename Sides>
RelationReport run_adaptive(std::string relation,
                            std::vector<std::pair<std::string, std::string>> inputs,
                            std::optional<mpq_class> lambda, const EvalParams& base,
                            double tol, const AdaptivePolicy& policy, Sides&& sides) {
    EvalParams q = base;
    Real target = Real::from_double(tol / 4, base.prec_bits);
    for (;;) {
        auto [lhs, rhs] = sides(q);
        if ((lhs.err <= target && rhs.err <= target) || q.cutoff_N >= policy.max_cutoff)
            return make_report(std::move(relation), std::move(inputs), std::move(lambda),
                               std::move(lhs), std::move(rhs), tol, base, q.cutoff_N);
        q.cutoff_N = std::min(q.cutoff_N * 10, policy.max_cutoff);
    }
}

}  // namespace

RelationReport check_ohno(const Index& k, int l, const EvalParams& p, double tol,
                          const AdaptivePolicy& policy) {
    if (!k.admissible()) throw std::invalid_argument("check_ohno: non-admissible index");
    Index dual = dual_index(k);
    return run_adaptive(
        "ohno", {{"k", k.to_paren_string()}, {"l", std::to_string(l)}, {"dual", dual.to_paren_string()}},
        std::nullopt, p, tol, policy, [&](const EvalParams& q) {
            return std::pair<NumValue, NumValue>{ohno_sum_value(k, l, q),
                                                 ohno_sum_value(dual, l, q)};
        });
}

RelationReport check_fg(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p,
                        double tol, const AdaptivePolicy& policy) {
    BiSeq nbs = bs.normalize();
    return run_adaptive("fg", {{"bs", nbs.to_string()}}, lambda, p, tol, policy,
                        [&](const EvalParams& q) {
                            return std::pair<NumValue, NumValue>{eval_f(nbs, lambda, q),
                                                                 eval_g(nbs, lambda, q)};
                        });
}

std::string thm31_case_name(Thm31Case c) {
    switch (c) {
        case Thm31Case::i: return "i";
        case Thm31Case::ii: return "ii";
        case Thm31Case::iii: return "iii";
        case Thm31Case::iv: return "iv";
    }
    return "?";
}

std::optional<Thm31Case> thm31_case_of(const BiSeq& bs) {
    const auto& g = bs.groups;
    if (g.empty()) return std::nullopt;
    bool k1_one = g.front().first == 1;
    bool lm_one = g.back().second == 1;
    if (!k1_one && !lm_one) return Thm31Case::i;
    if (k1_one && !lm_one) return Thm31Case::ii;
    if (!k1_one && lm_one) return Thm31Case::iii;
    if (bs.m() >= 2) return Thm31Case::iv;
    return std::nullopt;  // {1,1}: the induction base, no functional relation
}

namespace {

using Shift = std::pair<int, int>;  // (delta, epsilon)
const Shift kI[3] = {{0, 0}, {1, 0}, {0, 1}};

struct SeqTerm {
    mpq_class coeff;
    BiSeq seq;
};

// Enumerates I^r as an odometer (first coordinate slowest), deterministic.
template <typename Fn>
void for_each_I(int r, Fn&& fn) {
    std::vector<int> digit(static_cast<size_t>(std::max(r, 0)), 0);
    for (;;) {
        std::vector<Shift> tuple;
        tuple.reserve(digit.size());
        for (int d : digit) tuple.push_back(kI[d]);
        fn(tuple);
        int i = static_cast<int>(digit.size()) - 1;
        while (i >= 0 && digit[static_cast<size_t>(i)] == 2) digit[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++digit[static_cast<size_t>(i)];
    }
}

// LHS and RHS term lists of a Theorem 3.1 case; the rhs is understood at
// lambda' = lambda - 1.
std::pair<std::vector<SeqTerm>, std::vector<SeqTerm>> thm31_terms(const BiSeq& bs,
                                                                  Thm31Case c,
                                                                  const mpq_class& lambda) {
    const auto& g = bs.groups;
    const int m = bs.m();
    const mpq_class neg_l = -lambda;
    const mpq_class neg_lp = mpq_class(1) - lambda;  // -(lambda - 1)
    std::vector<SeqTerm> lhs, rhs;

    auto push = [&](std::vector<SeqTerm>& side, const mpq_class& base, int expo,
                    std::vector<std::pair<int, int>> groups) {
        side.push_back({rational_pow(base, expo), BiSeq{std::move(groups)}});
    };

    switch (c) {
        case Thm31Case::i: {
            for_each_I(m, [&](const std::vector<Shift>& t) {
                std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                int total = 0;
                for (int i = 0; i < m; ++i) {
                    gs[i].first -= t[i].first;
                    gs[i].second -= t[i].second;
                    total += t[i].first + t[i].second;
                }
                push(lhs, neg_l, m - total, std::move(gs));
            });
            for (int d1 = 0; d1 <= 1; ++d1)
                for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                    for (int em1 = 0; em1 <= 1; ++em1) {
                        // deltas' for groups 1..m; epsilons' indexed 2..m+1,
                        // paired as (k_i - delta'_i, l_i - eps'_{i+1})
                        std::vector<int> dps(m), eps(m);
                        dps[0] = d1;
                        for (int j = 2; j <= m; ++j) {
                            dps[j - 1] = t[j - 2].first;
                            eps[j - 2] = t[j - 2].second;  // eps'_j shifts l_{j-1}
                        }
                        eps[m - 1] = em1;
                        std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                        int total = 0;
                        for (int i = 0; i < m; ++i) {
                            gs[i].first -= dps[i];
                            gs[i].second -= eps[i];
                            total += dps[i] + eps[i];
                        }
                        push(rhs, neg_lp, m - total, std::move(gs));
                    }
                });
            break;
        }
        case Thm31Case::ii: {
            for (int e1 = 0; e1 <= 1; ++e1)
                for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                    std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                    int total = e1;
                    gs[0].second -= e1;
                    for (int i = 2; i <= m; ++i) {
                        gs[i - 1].first -= t[i - 2].first;
                        gs[i - 1].second -= t[i - 2].second;
                        total += t[i - 2].first + t[i - 2].second;
                    }
                    push(lhs, neg_l, m - total, std::move(gs));
                });
            for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                for (int em1 = 0; em1 <= 1; ++em1) {
                    std::vector<int> dps(m, 0), eps(m, 0);
                    for (int j = 2; j <= m; ++j) {
                        dps[j - 1] = t[j - 2].first;
                        eps[j - 2] = t[j - 2].second;
                    }
                    eps[m - 1] = em1;
                    std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                    int total = 0;
                    for (int i = 0; i < m; ++i) {
                        gs[i].first -= dps[i];   // dps[0] == 0: k_1 = 1 fixed
                        gs[i].second -= eps[i];
                        total += dps[i] + eps[i];
                    }
                    push(rhs, neg_lp, m - total, std::move(gs));
                }
            });
            break;
        }
        case Thm31Case::iii: {
            for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                for (int dm = 0; dm <= 1; ++dm) {
                    std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                    int total = dm;
                    for (int i = 0; i + 1 < m; ++i) {
                        gs[i].first -= t[i].first;
                        gs[i].second -= t[i].second;
                        total += t[i].first + t[i].second;
                    }
                    gs[m - 1].first -= dm;  // l_m = 1 fixed
                    push(lhs, neg_l, m - total, std::move(gs));
                }
            });
            for (int d1 = 0; d1 <= 1; ++d1)
                for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                    std::vector<int> dps(m, 0), eps(m, 0);
                    dps[0] = d1;
                    for (int j = 2; j <= m; ++j) {
                        dps[j - 1] = t[j - 2].first;
                        eps[j - 2] = t[j - 2].second;  // eps'_j shifts l_{j-1}
                    }
                    std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                    int total = 0;
                    for (int i = 0; i < m; ++i) total += dps[i] + eps[i];
                    for (int i = 0; i + 1 < m; ++i) {
                        gs[i].first -= dps[i];
                        gs[i].second -= eps[i];
                    }
                    gs[m - 1].first -= dps[m - 1];  // last l stays 1
                    push(rhs, neg_lp, m - total, std::move(gs));
                });
            break;
        }
        case Thm31Case::iv: {
            for (int e1 = 0; e1 <= 1; ++e1)
                for_each_I(m - 2, [&](const std::vector<Shift>& t) {
                    for (int dm = 0; dm <= 1; ++dm) {
                        std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                        int total = e1 + dm;
                        gs[0].second -= e1;
                        for (int i = 2; i <= m - 1; ++i) {
                            gs[i - 1].first -= t[i - 2].first;
                            gs[i - 1].second -= t[i - 2].second;
                            total += t[i - 2].first + t[i - 2].second;
                        }
                        gs[m - 1].first -= dm;
                        push(lhs, neg_l, m - total, std::move(gs));
                    }
                });
            for_each_I(m - 1, [&](const std::vector<Shift>& t) {
                std::vector<int> dps(m, 0), eps(m, 0);
                for (int j = 2; j <= m; ++j) {
                    dps[j - 1] = t[j - 2].first;
                    eps[j - 2] = t[j - 2].second;
                }
                std::vector<std::pair<int, int>> gs(g.begin(), g.end());
                int total = 0;
                for (int i = 0; i < m; ++i) total += dps[i] + eps[i];
                gs[0].second -= eps[0];  // l_1 - eps'_2
                for (int i = 2; i <= m - 1; ++i) {
                    gs[i - 1].first -= dps[i - 1];
                    gs[i - 1].second -= eps[i - 1];
                }
                gs[m - 1].first -= dps[m - 1];
                push(rhs, neg_lp, m - total, std::move(gs));
            });
            break;
        }
    }
    return {std::move(lhs), std::move(rhs)};
}

NumValue eval_seq_terms(const std::vector<SeqTerm>& terms, const mpq_class& lambda,
                        const EvalParams& p, bool use_g) {
    NumValue acc = NumValue::exact_zero(p.prec_bits);
    for (const SeqTerm& t : terms) {
        if (t.coeff == 0) continue;
        NumValue v = use_g ? eval_g(t.seq, lambda, p) : eval_f(t.seq, lambda, p);
        acc = acc + v.scale(t.coeff);
    }
    return acc;
}

}  // namespace

RelationReport check_thm31(const BiSeq& bs, Thm31Case c, const mpq_class& lambda,
                           const EvalParams& p, double tol, const AdaptivePolicy& policy,
                           bool use_g) {
    BiSeq nbs = bs.normalize();
    auto expected = thm31_case_of(nbs);
    if (!expected || *expected != c)
        throw std::invalid_argument("check_thm31: case " + thm31_case_name(c) +
                                    " does not apply to " + nbs.to_string());
    if (is_positive_integer(lambda) || is_positive_integer(lambda - 1))
        throw std::invalid_argument("check_thm31: lambda and lambda-1 must avoid positive integers");
    auto [lhs_terms, rhs_terms] = thm31_terms(nbs, c, lambda);
    const mpq_class lp = lambda - 1;
    std::string rel = std::string("thm31.") + thm31_case_name(c) + (use_g ? ".g" : ".f");
    return run_adaptive(rel, {{"bs", nbs.to_string()}}, lambda, p, tol, policy,
                        [&](const EvalParams& q) {
                            return std::pair<NumValue, NumValue>{
                                eval_seq_terms(lhs_terms, lambda, q, use_g),
                                eval_seq_terms(rhs_terms, lp, q, use_g)};
                        });
}

std::string lemma33_part_name(Lemma33Part part) {
    switch (part) {
        case Lemma33Part::ia: return "ia";
        case Lemma33Part::ib: return "ib";
        case Lemma33Part::ii: return "ii";
        case Lemma33Part::iiic: return "iiic";
        case Lemma33Part::iiid: return "iiid";
    }
    return "?";
}

bool lemma33_applicable(Lemma33Part part, const BiSeq& bs, int i_pos) {
    if (!bs.normalized()) return false;
    const auto& g = bs.groups;
    const int m = bs.m();
    const bool last_l_one = g.back().second == 1;
    switch (part) {
        case Lemma33Part::ia:
            return g.front().first >= 2 && !(m == 1 && last_l_one);
        case Lemma33Part::ib:
            return g.front().first == 1 && !(m == 1 && last_l_one);
        case Lemma33Part::ii:
            return i_pos >= 2 && i_pos <= m && (i_pos != m || !last_l_one);
        case Lemma33Part::iiic:
            return last_l_one && !(m == 1 && g.front().first == 1);
        case Lemma33Part::iiid:
            return g.back().second >= 2;
    }
    return false;
}

namespace {

struct BracketTerm {
    mpq_class coeff;
    BracketSpec spec;
};

NumValue eval_bracket_terms(const std::vector<BracketTerm>& terms, const EvalParams& p) {
    NumValue acc = NumValue::exact_zero(p.prec_bits);
    for (const BracketTerm& t : terms) {
        if (t.coeff == 0) continue;
        acc = acc + eval_bracket_cached(t.spec, p).scale(t.coeff);
    }
    return acc;
}

}  // namespace

RelationReport check_lemma33(Lemma33Part part, const BiSeq& bs, int i_pos,
                             const mpq_class& lambda, const EvalParams& p, double tol,
                             const AdaptivePolicy& policy) {
    BiSeq nbs = bs.normalize();
    if (!lemma33_applicable(part, nbs, i_pos))
        throw std::invalid_argument("check_lemma33: part " + lemma33_part_name(part) +
                                    " does not apply to " + nbs.to_string());
    if (is_positive_integer(lambda) || is_positive_integer(lambda - 1))
        throw std::invalid_argument("check_lemma33: lambda and lambda-1 must avoid positive integers");
    const mpq_class lp = lambda - 1;
    const int m = nbs.m();
    const auto& g = nbs.groups;

    auto groups_with = [&](int pos /*1-based*/, int dk, int dl) {
        std::vector<std::pair<int, int>> gs(g.begin(), g.end());
        gs[static_cast<size_t>(pos - 1)].first += dk;
        gs[static_cast<size_t>(pos - 1)].second += dl;
        return gs;
    };
    auto no_shift = [&](int n) { return std::vector<int>(static_cast<size_t>(n), 0); };
    auto shift_at = [&](int pos) {
        std::vector<int> s(static_cast<size_t>(m), 0);
        s[static_cast<size_t>(pos - 1)] = 1;
        return s;
    };

    std::vector<BracketTerm> lhs, rhs;
    switch (part) {
        case Lemma33Part::ia: {
            lhs.push_back({lambda, {nbs, no_shift(m), lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(1, -1, 0)}, no_shift(m), lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(1, 0, -1)}, no_shift(m), lambda}});
            rhs.push_back({lp, {nbs, shift_at(1), lambda}});
            rhs.push_back({-1, {BiSeq{groups_with(1, -1, 0)}, shift_at(1), lambda}});
            break;
        }
        case Lemma33Part::ib: {
            lhs.push_back({lambda, {nbs, no_shift(m), lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(1, 0, -1)}, no_shift(m), lambda}});
            rhs.push_back({lp, {nbs, shift_at(1), lambda}});
            break;
        }
        case Lemma33Part::ii: {
            lhs.push_back({lambda, {nbs, no_shift(m), lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(i_pos, -1, 0)}, no_shift(m), lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(i_pos, 0, -1)}, no_shift(m), lambda}});
            rhs.push_back({lp, {nbs, shift_at(i_pos), lambda}});
            rhs.push_back({-1, {BiSeq{groups_with(i_pos, -1, 0)}, shift_at(i_pos), lambda}});
            rhs.push_back(
                {-1,
                 {BiSeq{groups_with(i_pos - 1, 0, -1)}, shift_at(i_pos), lambda}});
            break;
        }
        case Lemma33Part::iiic: {
            std::vector<int> head_shift(static_cast<size_t>(m), 1);
            head_shift.back() = 0;
            lhs.push_back({lambda, {nbs, head_shift, lambda}});
            lhs.push_back({-1, {BiSeq{groups_with(m, -1, 0)}, head_shift, lambda}});
            rhs.push_back({lp, {nbs, no_shift(m), lp}});
            rhs.push_back({-1, {BiSeq{groups_with(m, -1, 0)}, no_shift(m), lp}});
            if (m >= 2)
                rhs.push_back({-1, {BiSeq{groups_with(m - 1, 0, -1)}, no_shift(m), lp}});
            break;
        }
        case Lemma33Part::iiid: {
            lhs.push_back({1, {nbs, std::vector<int>(static_cast<size_t>(m), 1), lambda}});
            rhs.push_back({1, {nbs, no_shift(m), lp}});
            rhs.push_back({-1 / lp, {BiSeq{groups_with(m, 0, -1)}, no_shift(m), lp}});
            break;
        }
    }

    std::string rel = "lemma33." + lemma33_part_name(part);
    std::vector<std::pair<std::string, std::string>> inputs{{"bs", nbs.to_string()}};
    if (part == Lemma33Part::ii) inputs.emplace_back("i", std::to_string(i_pos));
    return run_adaptive(rel, std::move(inputs), lambda, p, tol, policy,
                        [&](const EvalParams& q) {
                            return std::pair<NumValue, NumValue>{eval_bracket_terms(lhs, q),
                                                                 eval_bracket_terms(rhs, q)};
                        });
}

RelationReport taylor_vs_ohno(const BiSeq& bs, int L, const mpq_class& lambda_small,
                              const EvalParams& p, double tol) {
    BiSeq nbs = bs.normalize();
    mpq_class absl = lambda_small < 0 ? -lambda_small : lambda_small;
    if (!(absl * 2 <= 1)) throw std::invalid_argument("taylor_vs_ohno requires |lambda| <= 1/2");
    // One shared cutoff on both sides: the nested-series truncation then
    // cancels exactly and the residual is the truncated coefficient tail.
    NumValue lhs = eval_f(nbs, lambda_small, p);
    Index idx = word_to_index(nbs.word());
    NumValue rhs = NumValue::exact_zero(p.prec_bits);
    for (int l = 0; l <= L; ++l)
        rhs = rhs + ohno_sum_value(idx, l, p).scale(rational_pow(lambda_small, l));
    // coefficient tail bound M |lambda|^{L+1} / (1 - |lambda|)
    mpq_class half = lambda_small < 0 ? mpq_class(-1, 2) : mpq_class(1, 2);
    NumValue at_half = eval_f(nbs, half, p);
    Real m_bound = add(at_half.value.abs(), at_half.err, MPFR_RNDU);
    mpq_class geom = rational_pow(absl, L + 1) / (1 - absl);
    Real tail = mul(m_bound, Real::from_mpq(geom, p.prec_bits, MPFR_RNDU), MPFR_RNDU);
    rhs.err = add(rhs.err, tail, MPFR_RNDU);
    return make_report("taylor",
                       {{"bs", nbs.to_string()}, {"L", std::to_string(L)}},
                       lambda_small, std::move(lhs), std::move(rhs), tol, p, p.cutoff_N);
}

namespace {

// sum over chains hi >= t_{p_lo} > ... > t_{p_hi} >= lo of
// prod_q [ base powers of slot q at t ] * (t - n0)^{-1}; the range must not
// contain n0. Optionally snapshots the outer accumulation at t = snap_t.
Real chain_sum_range(const SlotForm& sf, int p_lo, int p_hi, long lo, long hi, long n0,
                     mpfr_prec_t prec, long snap_t, Real* snap_out) {
    Real total(prec);
    if (p_lo > p_hi || lo > hi) return total;
    int r = p_hi - p_lo + 1;
    int kmax = 0;
    for (int q = p_lo; q <= p_hi; ++q)
        for (const auto& pw : sf.slots[static_cast<size_t>(q)]) kmax = std::max(kmax, pw.exponent);

    std::vector<mpfr_t> acc(static_cast<size_t>(r));
    for (auto& a : acc) {
        mpfr_init2(a, prec);
        mpfr_set_ui(a, 0, MPFR_RNDN);
    }
    std::vector<mpfr_t> pw0(kmax + 1);
    for (auto& x : pw0) mpfr_init2(x, prec);
    mpfr_t nn, dmp, invd, fac;
    mpfr_inits2(prec, nn, dmp, invd, fac, (mpfr_ptr)nullptr);

    auto factor = [&](int q) -> mpfr_srcptr {
        const auto& powers = sf.slots[static_cast<size_t>(q)];
        if (powers.empty()) return invd;
        mpfr_set(fac, invd, MPFR_RNDN);
        for (const auto& pw : powers) mpfr_mul(fac, fac, pw0[pw.exponent], MPFR_RNDN);
        return fac;
    };

    for (long t = lo; t <= hi; ++t) {
        mpfr_set_ui(nn, static_cast<unsigned long>(t), MPFR_RNDN);
        mpfr_set_si(dmp, t - n0, MPFR_RNDN);
        mpfr_ui_div(invd, 1, dmp, MPFR_RNDN);
        if (kmax > 0) {
            mpfr_ui_div(pw0[1], 1, nn, MPFR_RNDN);
            for (int j = 2; j <= kmax; ++j) mpfr_mul(pw0[j], pw0[j - 1], pw0[1], MPFR_RNDN);
        }
        // ascending: acc[0] corresponds to position p_lo
        for (int s = 0; s < r; ++s) {
            if (s + 1 < r) {
                if (!mpfr_zero_p(acc[static_cast<size_t>(s) + 1]))
                    mpfr_fma(acc[static_cast<size_t>(s)], factor(p_lo + s),
                             acc[static_cast<size_t>(s) + 1], acc[static_cast<size_t>(s)],
                             MPFR_RNDN);
            } else {
                mpfr_add(acc[static_cast<size_t>(s)], acc[static_cast<size_t>(s)],
                         factor(p_lo + s), MPFR_RNDN);
            }
        }
        if (snap_out != nullptr && t == snap_t)
            mpfr_set(snap_out->raw(), acc[0], MPFR_RNDN);
    }
    mpfr_set(total.raw(), acc[0], MPFR_RNDN);
    for (auto& a : acc) mpfr_clear(a);
    for (auto& x : pw0) mpfr_clear(x);
    mpfr_clears(nn, dmp, invd, fac, (mpfr_ptr)nullptr);
    return total;
}

}  // namespace

std::vector<ResidueEstimate> residue_profile(const BiSeq& bs, long n_max, const EvalParams& p,
                                             long upper_T) {
    p.validate();
    BiSeq nbs = bs.normalize();
    SlotForm sf = compile_bracket(BracketSpec::unshifted(nbs, mpq_class(0)));
    const long L = static_cast<long>(sf.slots.size());
    const mpfr_prec_t prec = p.prec_bits;

    std::vector<ResidueEstimate> out;
    out.reserve(static_cast<size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        NumValue c(prec);
        for (long j = 0; j < L; ++j) {
            // exact base powers at the pole variable
            mpq_class pw(1);
            for (const auto& q : sf.slots[static_cast<size_t>(j)])
                pw /= rational_pow(mpq_class(n), q.exponent);
            Real lower = (j == L - 1)
                             ? Real::from_ui(1, prec)
                             : chain_sum_range(sf, static_cast<int>(j) + 1,
                                               static_cast<int>(L) - 1, 1, n - 1, n, prec, -1,
                                               nullptr);
            Real upper = Real::from_ui(1, prec);
            Real upper_acc_err(prec);
            if (j > 0) {
                Real half(prec);
                upper = chain_sum_range(sf, 0, static_cast<int>(j) - 1, n + 1, n + upper_T, n,
                                        prec, n + upper_T / 2, &half);
                // accuracy estimate: twice the last doubling increment
                upper_acc_err = mul(sub(upper, half, MPFR_RNDU).abs(),
                                    Real::from_ui(2, prec), MPFR_RNDU);
            }
            Real term = mul(mul(upper, lower), Real::from_mpq(pw, prec));
            Real term_err = mul(upper_acc_err, mul(lower.abs(), Real::from_mpq(pw, prec).abs(), MPFR_RNDU),
                                MPFR_RNDU);
            c.value = add(c.value, term);
            c.err = add(c.err, term_err, MPFR_RNDU);
        }
        // small allowance for the finite-sum rounding
        Real round_allow(prec);
        long emax = c.value.is_zero() ? 0 : mpfr_get_exp(c.value.raw());
        mpfr_set_ui_2exp(round_allow.raw(), 1, emax + 40 - prec, MPFR_RNDU);
        c.err = add(c.err, round_allow, MPFR_RNDU);
        ResidueEstimate e;
        e.n = n;
        e.c = std::move(c);
        out.push_back(std::move(e));
    }
    return out;
}

RelationReport residue_reconstruction(const BiSeq& bs, const mpq_class& lambda, long n_max,
                                      const EvalParams& p, double tol) {
    BiSeq nbs = bs.normalize();
    SlotForm sf = compile_bracket(BracketSpec::unshifted(nbs, lambda));
    const long L = static_cast<long>(sf.slots.size());
    std::vector<ResidueEstimate> prof = residue_profile(nbs, n_max, p);

    NumValue recon = NumValue::exact_zero(p.prec_bits);
    for (const ResidueEstimate& e : prof)
        recon = recon + e.c.scale(1 / (mpq_class(e.n) - lambda));

    if (L == 1) {
        // single variable: C_n = n^{-k} exactly, so the expansion tail is
        // sum_{n>n_max} n^{-k}/(n-lambda) <= C_lambda n_max^{-k}/k
        int k = sf.outer_exponent();
        Real clam = Real::from_mpq(c_lambda_bound(lambda), p.prec_bits, MPFR_RNDU);
        Real tail(p.prec_bits);
        mpfr_set_ui(tail.raw(), static_cast<unsigned long>(n_max), MPFR_RNDU);
        mpfr_pow_si(tail.raw(), tail.raw(), -k, MPFR_RNDU);
        mpfr_div_ui(tail.raw(), tail.raw(), static_cast<unsigned long>(k), MPFR_RNDU);
        tail = mul(tail, clam, MPFR_RNDU);
        recon.err = add(recon.err, tail, MPFR_RNDU);
    } else {
        // diagnostic estimate: twice the last octave of the expansion
        NumValue est = NumValue::exact_zero(p.prec_bits);
        for (const ResidueEstimate& e : prof) {
            if (e.n <= n_max / 2) continue;
            est = est + e.c.scale(1 / (mpq_class(e.n) - lambda));
        }
        Real bulk = add(est.value.abs(), est.err, MPFR_RNDU);
        recon.err = add(recon.err, mul(bulk, Real::from_ui(2, p.prec_bits), MPFR_RNDU), MPFR_RNDU);
    }

    NumValue fval = eval_f(nbs, lambda, p);
    return make_report("residue",
                       {{"bs", nbs.to_string()}, {"n_max", std::to_string(n_max)}}, lambda,
                       std::move(recon), std::move(fval), tol, p, p.cutoff_N);
}

NumValue residue_pole_limit(const BiSeq& bs, long n, const EvalParams& p) {
    BiSeq nbs = bs.normalize();
    auto r_at = [&](int d) {
        mpq_class eps(1);
        for (int i = 0; i < d; ++i) eps /= 10;
        mpq_class lam = mpq_class(n) - eps;
        NumValue f = eval_bracket(BracketSpec::unshifted(nbs, lam), p);
        return f.scale(eps);  // (n - lambda) f(lambda)
    };
    NumValue r3 = r_at(3), r4 = r_at(4);
    // Richardson on (n - lambda) f = C_n + B (n - lambda) + ...
    NumValue c = r4.scale(mpq_class(10, 9)) - r3.scale(mpq_class(1, 9));
    Real acc = mul(r4.abs_diff(r3), Real::from_ui(2, p.prec_bits), MPFR_RNDU);
    return NumValue(c.value, acc);
}

}  // namespace mzv
