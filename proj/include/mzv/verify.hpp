#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "mzv/genfun.hpp"

namespace mzv {

/// Batch-verification configuration (CLI `sweep` and the acceptance suite).
struct SweepConfig {
    int max_weight = 6;
    std::vector<mpq_class> lambdas;  // non-positive-integer rationals
    double tolerance = 1e-8;
    EvalParams eval;
    long max_cutoff = 10000000;
    std::vector<std::string> relations;  // subset of known families, in run order
    int ohno_shift_max = 3;
    int taylor_L = 6;
    long residue_n_max = 100;

    AdaptivePolicy policy() const { return AdaptivePolicy{tolerance / 4, max_cutoff}; }
    void validate() const;  // throws std::invalid_argument
};

// Known families in canonical run order.
const std::vector<std::string>& known_relations();

// Parses "key=value" lines ('#' comments, blank lines ignored).
SweepConfig parse_sweep_config(std::istream& in);

// Runs one family; deterministic instance order.
std::vector<RelationReport> run_family(const std::string& family, const SweepConfig& cfg);

struct FamilySummary {
    std::string family;
    size_t count = 0;
    size_t passed = 0;
    std::string max_abs_diff;  // decimal
    double seconds = 0.0;
};

std::string summary_table(const std::vector<FamilySummary>& rows);

// Direct duality / stuffle-homomorphism checks over zeta~ (the numeric side
// of tau and *).
RelationReport check_duality(const Word& w, const EvalParams& p, double tol,
                             const AdaptivePolicy& policy);
RelationReport check_homomorphism(const Word& w1, const Word& w2, const EvalParams& p,
                                  double tol, const AdaptivePolicy& policy);

// Admissible words of weight 2..max_weight, enumeration order of the indices.
std::vector<Word> admissible_words_up_to(int max_weight);

}  // namespace mzv
