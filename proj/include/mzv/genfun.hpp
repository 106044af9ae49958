#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mzv/index.hpp"
#include "mzv/mzv_eval.hpp"
#include "mzv/rational.hpp"
#include "mzv/real.hpp"

namespace mzv {

/// The shifted nested series [{(n-a_i)^{k_i}, l_i}_{i=1..m}; lambda]:
/// sum over n_1 > ... > n_{L_m} > 0 of
///   prod_i (n_{L_{i-1}+1} - a_i)^{-k_i} * prod_{j in block i} (n_j - lambda)^{-1}.
/// Shifts a_i are 0 or 1; lambda is an exact rational, never a positive
/// integer. Zero k_i / l_i follow the merge conventions.
struct BracketSpec {
    BiSeq groups;
    std::vector<int> shifts;  // one per group, each 0 or 1
    mpq_class lambda;

    static BracketSpec unshifted(const BiSeq& bs, const mpq_class& lambda);
};

/// Evaluation form: one slot per (n - lambda) factor; slot p additionally
/// carries the base powers (n - a)^{-k} of every group whose block opens
/// there. This realizes the merge conventions structurally (a zero l_i lets
/// two groups share a slot, a zero k_i contributes no power).
struct SlotForm {
    struct Power {
        int shift;     // 0 or 1
        int exponent;  // >= 1
        bool operator<(const Power& o) const {
            return std::tie(shift, exponent) < std::tie(o.shift, o.exponent);
        }
    };
    std::vector<std::vector<Power>> slots;
    mpq_class lambda;

    int outer_exponent() const;  // total exponent on slot 0
    std::string cache_key() const;
};

// Validates and compiles; throws std::invalid_argument for a positive
// integer lambda, an ill-formed sequence, or an innermost shifted base
// (pole at n - 1 = 0).
SlotForm compile_bracket(const BracketSpec& spec);

NumValue eval_bracket(const BracketSpec& spec, const EvalParams& p);
NumValue eval_bracket_cached(const BracketSpec& spec, const EvalParams& p);

// f({k_i,l_i}; lambda): the bracket with all shifts zero. At lambda = 0 this
// is the MZV of the underlying word.
NumValue eval_f(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p);

// g({k_i,l_i}; lambda) = f({l_i,k_i}_{i=m..1}; lambda); same code path.
NumValue eval_g(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p);

// sum of zeta over ohno_compositions(k, l), errors summed.
NumValue ohno_sum_value(const Index& k, int l, const EvalParams& p);

/// One identity check: lhs/rhs with rigorous radii; pass iff
/// |lhs - rhs| <= tolerance + err_lhs + err_rhs.
struct RelationReport {
    std::string relation;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::optional<mpq_class> lambda;
    NumValue lhs;
    NumValue rhs;
    Real abs_diff;
    double tolerance = 0.0;
    bool pass = false;
    EvalParams params;
    long cutoff_used = 0;

    RelationReport() : lhs(64), rhs(64), abs_diff(64) {}
};

RelationReport make_report(std::string relation,
                           std::vector<std::pair<std::string, std::string>> inputs,
                           std::optional<mpq_class> lambda, NumValue lhs, NumValue rhs,
                           double tol, const EvalParams& params, long cutoff_used);

// Ohno's relation: sum of shifted MZVs over k equals the same over the dual
// index, for every shift total l >= 0.
RelationReport check_ohno(const Index& k, int l, const EvalParams& p, double tol,
                          const AdaptivePolicy& policy);

// Generating-function form f = g.
RelationReport check_fg(const BiSeq& bs, const mpq_class& lambda, const EvalParams& p,
                        double tol, const AdaptivePolicy& policy);

enum class Thm31Case { i, ii, iii, iv };
std::string thm31_case_name(Thm31Case c);

// The case whose side conditions match bs (by k_1 = 1 / l_m = 1), when the
// relation applies. Case iv needs m >= 2: the depth-one sequence {1,1} is
// the induction base of the paper's argument, not an instance of the
// functional relation.
std::optional<Thm31Case> thm31_case_of(const BiSeq& bs);

// One functional-relation case, for f (use_g = false) or g. Throws
// std::invalid_argument when the case does not match bs.
RelationReport check_thm31(const BiSeq& bs, Thm31Case c, const mpq_class& lambda,
                           const EvalParams& p, double tol, const AdaptivePolicy& policy,
                           bool use_g = false);

enum class Lemma33Part { ia, ib, ii, iiic, iiid };
std::string lemma33_part_name(Lemma33Part part);

// Side conditions of each displayed identity; i_pos (1-based group position)
// is meaningful only for part ii.
bool lemma33_applicable(Lemma33Part part, const BiSeq& bs, int i_pos);

RelationReport check_lemma33(Lemma33Part part, const BiSeq& bs, int i_pos,
                             const mpq_class& lambda, const EvalParams& p, double tol,
                             const AdaptivePolicy& policy);

// Compares f(bs; lambda) with the degree-<=L Taylor sum of Ohno values;
// both sides share one cutoff so the residual is exactly the truncated
// coefficient tail. The rhs err includes the tail bound
// M |lambda|^{L+1} / (1 - |lambda|), M = |f(bs; sign(lambda)/2)|.
RelationReport taylor_vs_ohno(const BiSeq& bs, int L, const mpq_class& lambda_small,
                              const EvalParams& p, double tol);

/// Estimated partial-fraction residue C_n of f at the pole n; err carries
/// the reported accuracy of the truncated constrained sums (exact zero when
/// the sequence has a single summation variable).
struct ResidueEstimate {
    long n = 0;
    NumValue c;
    ResidueEstimate() : c(64) {}
};

std::vector<ResidueEstimate> residue_profile(const BiSeq& bs, long n_max,
                                             const EvalParams& p, long upper_T = 4096);

// sum_{n<=n_max} C_n / (n - lambda) vs f(lambda). For single-variable
// sequences the expansion tail beyond n_max is bounded rigorously; deeper
// sequences carry a reported estimate.
RelationReport residue_reconstruction(const BiSeq& bs, const mpq_class& lambda,
                                      long n_max, const EvalParams& p, double tol);

// Residue by the numeric limit (n - lambda) f(lambda), lambda = n - 10^{-d},
// d = 2,3,4, Richardson on the last two. Diagnostic accuracy in err.
NumValue residue_pole_limit(const BiSeq& bs, long n, const EvalParams& p);

void clear_bracket_cache();

}  // namespace mzv
