#include "mzv/verify.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "mzv/hoffman.hpp"

namespace mzv {

const std::vector<std::string>& known_relations() {
    static const std::vector<std::string> k = {"ohno",    "fg",      "thm31",        "lemma33",
                                               "taylor",  "residue", "homomorphism", "duality"};
    return k;
}

void SweepConfig::validate() const {
    if (max_weight < 2) throw std::invalid_argument("max_weight must be >= 2");
    if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    if (relations.empty()) throw std::invalid_argument("no relations selected");
    eval.validate();
    for (const std::string& r : relations)
        if (std::find(known_relations().begin(), known_relations().end(), r) ==
            known_relations().end())
            throw std::invalid_argument("unknown relation family: " + r);
    for (const mpq_class& l : lambdas)
        if (is_positive_integer(l))
            throw std::invalid_argument("lambda must not be a positive integer: " +
                                        rational_to_string(l));
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    cfg.lambdas = {mpq_class(1, 3), mpq_class(-1, 2)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t z = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
        };
        key = strip(key);
        val = strip(val);
        try {
            if (key == "max_weight")
                cfg.max_weight = std::stoi(val);
            else if (key == "tolerance")
                cfg.tolerance = std::stod(val);
            else if (key == "prec_bits")
                cfg.eval.prec_bits = std::stol(val);
            else if (key == "cutoff_N")
                cfg.eval.cutoff_N = std::stol(val);
            else if (key == "max_cutoff")
                cfg.max_cutoff = std::stol(val);
            else if (key == "tail_mode")
                cfg.eval.tail_mode = val == "richardson" ? EvalParams::TailMode::richardson
                                                         : EvalParams::TailMode::bound_only;
            else if (key == "ohno_shift_max")
                cfg.ohno_shift_max = std::stoi(val);
            else if (key == "taylor_L")
                cfg.taylor_L = std::stoi(val);
            else if (key == "residue_n_max")
                cfg.residue_n_max = std::stol(val);
            else if (key == "lambdas") {
                cfg.lambdas.clear();
                for (const std::string& piece : split_list(val))
                    cfg.lambdas.push_back(parse_rational(piece));
            } else if (key == "relations") {
                cfg.relations = split_list(val);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& ex) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                        ex.what());
        }
    }
    return cfg;
}

std::vector<Word> admissible_words_up_to(int max_weight) {
    std::vector<Word> out;
    for (const Index& k : enumerate_admissible(max_weight)) out.push_back(index_to_word(k));
    return out;
}

RelationReport check_duality(const Word& w, const EvalParams& p, double tol,
                             const AdaptivePolicy& policy) {
    if (!w.admissible() || w.empty())
        throw std::invalid_argument("check_duality: word must be admissible and nonempty");
    Index k = word_to_index(w);
    Index kd = word_to_index(w.reversed_swapped());
    EvalParams q = p;
    Real target = Real::from_double(tol / 4, p.prec_bits);
    for (;;) {
        NumValue lhs = eval_mzv_cached(k, q);
        NumValue rhs = eval_mzv_cached(kd, q);
        if ((lhs.err <= target && rhs.err <= target) || q.cutoff_N >= policy.max_cutoff)
            return make_report("duality",
                               {{"word", w.letters()}, {"k", k.to_paren_string()},
                                {"dual", kd.to_paren_string()}},
                               std::nullopt, lhs, rhs, tol, p, q.cutoff_N);
        q.cutoff_N = std::min(q.cutoff_N * 10, policy.max_cutoff);
    }
}

RelationReport check_homomorphism(const Word& w1, const Word& w2, const EvalParams& p,
                                  double tol, const AdaptivePolicy& policy) {
    if (!w1.admissible() || !w2.admissible())
        throw std::invalid_argument("check_homomorphism: words must be admissible");
    HPoly prod = stuffle(HPoly(w1), HPoly(w2));
    EvalParams q = p;
    Real target = Real::from_double(tol / 4, p.prec_bits);
    for (;;) {
        NumValue lhs = eval_zeta_tilde(prod, q);
        NumValue rhs = eval_zeta_tilde(HPoly(w1), q) * eval_zeta_tilde(HPoly(w2), q);
        if ((lhs.err <= target && rhs.err <= target) || q.cutoff_N >= policy.max_cutoff)
            return make_report("homomorphism",
                               {{"w1", w1.letters()}, {"w2", w2.letters()}}, std::nullopt,
                               lhs, rhs, tol, p, q.cutoff_N);
        q.cutoff_N = std::min(q.cutoff_N * 10, policy.max_cutoff);
    }
}

namespace {

std::vector<RelationReport> run_ohno(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    for (const Index& k : enumerate_admissible(cfg.max_weight))
        for (int l = 0; l <= cfg.ohno_shift_max; ++l)
            out.push_back(check_ohno(k, l, cfg.eval, cfg.tolerance, cfg.policy()));
    return out;
}

std::vector<RelationReport> run_fg(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    for (const BiSeq& bs : enumerate_biseqs(cfg.max_weight))
        for (const mpq_class& lam : cfg.lambdas)
            out.push_back(check_fg(bs, lam, cfg.eval, cfg.tolerance, cfg.policy()));
    return out;
}

std::vector<RelationReport> run_thm31(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    for (const BiSeq& bs : enumerate_biseqs(cfg.max_weight)) {
        auto c = thm31_case_of(bs);
        if (!c) continue;
        for (const mpq_class& lam : cfg.lambdas) {
            if (is_positive_integer(lam) || is_positive_integer(lam - 1)) continue;
            out.push_back(check_thm31(bs, *c, lam, cfg.eval, cfg.tolerance, cfg.policy(), false));
            out.push_back(check_thm31(bs, *c, lam, cfg.eval, cfg.tolerance, cfg.policy(), true));
        }
    }
    return out;
}

std::vector<RelationReport> run_lemma33(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    const Lemma33Part simple_parts[] = {Lemma33Part::ia, Lemma33Part::ib, Lemma33Part::iiic,
                                        Lemma33Part::iiid};
    for (const BiSeq& bs : enumerate_biseqs(cfg.max_weight)) {
        for (const mpq_class& lam : cfg.lambdas) {
            if (is_positive_integer(lam) || is_positive_integer(lam - 1)) continue;
            for (Lemma33Part part : simple_parts)
                if (lemma33_applicable(part, bs, 0))
                    out.push_back(
                        check_lemma33(part, bs, 0, lam, cfg.eval, cfg.tolerance, cfg.policy()));
            for (int i = 2; i <= bs.m(); ++i)
                if (lemma33_applicable(Lemma33Part::ii, bs, i))
                    out.push_back(check_lemma33(Lemma33Part::ii, bs, i, lam, cfg.eval,
                                                cfg.tolerance, cfg.policy()));
        }
    }
    return out;
}

std::vector<RelationReport> run_taylor(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    for (const BiSeq& bs : enumerate_biseqs(cfg.max_weight))
        for (const mpq_class& lam : cfg.lambdas) {
            mpq_class a = lam < 0 ? -lam : lam;
            if (a * 2 > 1) continue;  // series domain |lambda| <= 1/2
            out.push_back(taylor_vs_ohno(bs, cfg.taylor_L, lam, cfg.eval, cfg.tolerance));
        }
    return out;
}

std::vector<RelationReport> run_residue(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    // reconstruction is a diagnostic of Lemma 2.5's expansion; keep the
    // sequences shallow (the constrained sums grow steep with depth)
    int w = std::min(cfg.max_weight, 3);
    for (const BiSeq& bs : enumerate_biseqs(w))
        for (const mpq_class& lam : cfg.lambdas) {
            if (lam >= 1) continue;
            out.push_back(
                residue_reconstruction(bs, lam, cfg.residue_n_max, cfg.eval, cfg.tolerance));
        }
    return out;
}

std::vector<RelationReport> run_homomorphism(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    std::vector<Word> words = admissible_words_up_to(cfg.max_weight - 2);
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i; j < words.size(); ++j) {
            if (static_cast<int>(words[i].weight() + words[j].weight()) > cfg.max_weight)
                continue;
            out.push_back(
                check_homomorphism(words[i], words[j], cfg.eval, cfg.tolerance, cfg.policy()));
        }
    return out;
}

std::vector<RelationReport> run_duality(const SweepConfig& cfg) {
    std::vector<RelationReport> out;
    for (const Word& w : admissible_words_up_to(cfg.max_weight))
        out.push_back(check_duality(w, cfg.eval, cfg.tolerance, cfg.policy()));
    return out;
}

}  // namespace

std::vector<RelationReport> run_family(const std::string& family, const SweepConfig& cfg) {
    if (family == "ohno") return run_ohno(cfg);
    if (family == "fg") return run_fg(cfg);
    if (family == "thm31") return run_thm31(cfg);
    if (family == "lemma33") return run_lemma33(cfg);
    if (family == "taylor") return run_taylor(cfg);
    if (family == "residue") return run_residue(cfg);
    if (family == "homomorphism") return run_homomorphism(cfg);
    if (family == "duality") return run_duality(cfg);
    throw std::invalid_argument("unknown relation family: " + family);
}

std::string summary_table(const std::vector<FamilySummary>& rows) {
    std::ostringstream os;
    os << "family        checks  passed  max|diff|     seconds\n";
    for (const auto& r : rows) {
        os << r.family;
        for (size_t i = r.family.size(); i < 14; ++i) os << ' ';
        std::string c = std::to_string(r.count), p = std::to_string(r.passed);
        os << c;
        for (size_t i = c.size(); i < 8; ++i) os << ' ';
        os << p;
        for (size_t i = p.size(); i < 8; ++i) os << ' ';
        os << r.max_abs_diff;
        for (size_t i = r.max_abs_diff.size(); i < 14; ++i) os << ' ';
        char buf[32];
        snprintf(buf, sizeof(buf), "%.1f", r.seconds);
        os << buf << "\n";
    }
    return os.str();
}

}  // namespace mzv
