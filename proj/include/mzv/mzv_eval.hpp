#pragma once

#include <map>
#include <mutex>

#include "mzv/hpoly.hpp"
#include "mzv/index.hpp"
#include "mzv/real.hpp"

namespace mzv {

/// Arbitrary-precision MZV evaluation by dynamic-programming truncated
/// nested sums. For k = (k_1,...,k_m) the recursion
///   P_m(n) = sum_{0<t<n} t^{-k_m},  P_j(n) = sum_{0<t<n} P_{j+1}(t) t^{-k_j}
/// yields zeta via sum_{n<=N} P_2(n) n^{-k_1}; cost O(m N), O(m) memory.
///
/// The reported err adds the truncation bound
///   err_tail(N) = (1+ln N)^{m-1} N^{1-k_1} / (k_1-1)
/// (minimized over the halving grid N' <= N, which keeps it monotone in N)
/// plus a fixed rounding allowance. Deterministic in (input, EvalParams).
NumValue eval_mzv(const Index& k, const EvalParams& p);

// Memoized front end; identical results, shared process-wide table.
NumValue eval_mzv_cached(const Index& k, const EvalParams& p);

// Linear extension of eval_mzv to admissible polynomials (numeric zeta~).
NumValue eval_zeta_tilde(const HPoly& poly, const EvalParams& p);

// sum_{i=1..m} zeta(k_1,...,k_i+n,...,k_m); matches
// eval_zeta_tilde(derivation_dn(n, index_to_word(k))).
NumValue eval_dn_image(const Index& k, uint32_t n, const EvalParams& p);

/// Cutoff escalation: re-evaluate with cutoff x10 while the rigorous err
/// exceeds target_err, up to max_cutoff.
struct AdaptivePolicy {
    double target_err = 2.5e-9;
    long max_cutoff = 10000000;
};

struct AdaptiveResult {
    NumValue value;
    long cutoff_used = 0;
};

AdaptiveResult eval_mzv_adaptive(const Index& k, const EvalParams& base,
                                 const AdaptivePolicy& policy);

// Clears the process-wide MZV memo table (test support).
void clear_mzv_cache();

}  // namespace mzv
