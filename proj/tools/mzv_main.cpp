// Command-line front end: single evaluations, identity checks, and batch
// verification sweeps over Hoffman's harmonic algebra and the MZV
// generating-function relations.
//
// Exit codes: 0 all checks passed, 1 at least one check failed,
// 2 usage/parse error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "mzv/hoffman.hpp"
#include "mzv/report.hpp"
#include "mzv/verify.hpp"

using namespace mzv;

namespace {

struct CheckFlags {
    std::vector<std::string> lambdas;
    double tol = 1e-8;
    long prec = 256;
    long cutoff = 100000;
    long max_cutoff = 10000000;
    bool json = false;
    int max_weight = 0;  // 0: single instance
    std::string tail_mode = "bound-only";
};

std::vector<mpq_class> parse_lambdas(const std::vector<std::string>& raw,
                                     const std::vector<mpq_class>& fallback) {
    if (raw.empty()) return fallback;
    std::vector<mpq_class> out;
    for (const std::string& s : raw) out.push_back(parse_rational(s));
    return out;
}

EvalParams make_params(const CheckFlags& f) {
    EvalParams p;
    p.prec_bits = f.prec;
    p.cutoff_N = f.cutoff;
    p.tail_mode = f.tail_mode == "richardson" ? EvalParams::TailMode::richardson
                                              : EvalParams::TailMode::bound_only;
    p.validate();
    return p;
}

int emit_reports(const std::vector<RelationReport>& reports, bool json, std::ostream& out) {
    bool all_pass = true;
    for (const RelationReport& r : reports) {
        if (json)
            out << report_to_json(r).dump() << "\n";
        else
            out << report_to_line(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple zeta value workbench: harmonic algebra, Ohno's relation, "
                 "and generating-function identity checks"};
    app.require_subcommand(1);

    // ---- stuffle ----
    std::string w1_str, w2_str;
    bool stuffle_json = false;
    auto* cmd_stuffle = app.add_subcommand("stuffle", "harmonic product of two words");
    cmd_stuffle->add_option("w1", w1_str, "first word over {x,y} (empty allowed)");
    cmd_stuffle->add_option("w2", w2_str, "second word over {x,y} (empty allowed)");
    cmd_stuffle->add_flag("--json", stuffle_json, "emit JSON");

    // ---- dual ----
    std::string dual_index_str;
    auto* cmd_dual = app.add_subcommand("dual", "dual of an admissible index");
    cmd_dual->add_option("index", dual_index_str, "comma list, e.g. 3,1")->required();

    // ---- eval ----
    std::string eval_index, eval_word, eval_biseq, eval_lambda = "0";
    CheckFlags eval_flags;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate one zeta / f value");
    cmd_eval->add_option("--index", eval_index, "MZV index, e.g. 2,1");
    cmd_eval->add_option("--word", eval_word, "admissible word, e.g. xxy");
    cmd_eval->add_option("--biseq", eval_biseq, "sequence k1,l1;k2,l2 (evaluates f)");
    cmd_eval->add_option("--lambda", eval_lambda, "rational lambda for f (default 0)");
    cmd_eval->add_option("--prec", eval_flags.prec, "working precision in bits");
    cmd_eval->add_option("--cutoff", eval_flags.cutoff, "outer summation cutoff N");
    cmd_eval->add_option("--tail-mode", eval_flags.tail_mode, "bound-only|richardson");
    cmd_eval->add_flag("--json", eval_flags.json, "emit JSON");

    // ---- check ----
    std::string relation, chk_index, chk_biseq, chk_word, chk_w1, chk_w2, chk_case, chk_part;
    int chk_shift = 0, chk_ipos = 0, chk_taylor_L = 6;
    long chk_nmax = 100;
    CheckFlags chk;
    auto* cmd_check = app.add_subcommand("check", "run one identity check (or a family sweep "
                                                  "with --max-weight)");
    cmd_check->add_option("relation", relation,
                          "ohno|fg|thm31|lemma33|taylor|residue|homomorphism|duality")
        ->required();
    cmd_check->add_option("--index", chk_index, "index for ohno, e.g. 3");
    cmd_check->add_option("--shift", chk_shift, "weight shift l for ohno (default 0)");
    cmd_check->add_option("--biseq", chk_biseq, "sequence k1,l1;k2,l2");
    cmd_check->add_option("--word", chk_word, "admissible word (duality)");
    cmd_check->add_option("--w1", chk_w1, "first admissible word (homomorphism)");
    cmd_check->add_option("--w2", chk_w2, "second admissible word (homomorphism)");
    cmd_check->add_option("--case", chk_case, "thm31 case: i|ii|iii|iv (default: by shape)");
    cmd_check->add_option("--part", chk_part, "lemma33 part: ia|ib|ii|iiic|iiid (default: all)");
    cmd_check->add_option("--i", chk_ipos, "group position for lemma33 part ii");
    cmd_check->add_option("--taylor-L", chk_taylor_L, "Taylor truncation order");
    cmd_check->add_option("--n-max", chk_nmax, "residue expansion pole cutoff");
    cmd_check->add_option("--lambda", chk.lambdas, "rational lambda (repeatable)");
    cmd_check->add_option("--tol", chk.tol, "tolerance (default 1e-8)");
    cmd_check->add_option("--prec", chk.prec, "working precision in bits (default 256)");
    cmd_check->add_option("--cutoff", chk.cutoff, "starting cutoff N (default 100000)");
    cmd_check->add_option("--max-cutoff", chk.max_cutoff, "escalation cap (default 1e7)");
    cmd_check->add_option("--max-weight", chk.max_weight, "sweep the family up to this weight");
    cmd_check->add_option("--tail-mode", chk.tail_mode, "bound-only|richardson");
    cmd_check->add_flag("--json", chk.json, "one JSON object per check");

    // ---- sweep ----
    std::string sweep_config_path, sweep_out;
    auto* cmd_sweep = app.add_subcommand("sweep", "batch verification from a config file");
    cmd_sweep->add_option("config", sweep_config_path, "key=value config file")->required();
    cmd_sweep->add_option("--out", sweep_out, "write the JSON-lines report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (cmd_stuffle->parsed()) {
            HPoly prod = stuffle(HPoly(Word::from_letters(w1_str)),
                                 HPoly(Word::from_letters(w2_str)));
            if (stuffle_json) {
                nlohmann::ordered_json j;
                j["w1"] = w1_str;
                j["w2"] = w2_str;
                j["product"] = prod.to_string();
                std::cout << j.dump() << "\n";
            } else {
                std::cout << prod.to_string() << "\n";
            }
            return 0;
        }

        if (cmd_dual->parsed()) {
            Index k = Index::parse(dual_index_str);
            if (!k.admissible()) {
                std::cerr << "error: index " << k.to_paren_string() << " is not admissible\n";
                return 2;
            }
            std::cout << dual_index(k).to_string() << "\n";
            return 0;
        }

        if (cmd_eval->parsed()) {
            EvalParams p = make_params(eval_flags);
            NumValue v(p.prec_bits);
            std::string what;
            if (!eval_index.empty()) {
                Index k = Index::parse(eval_index);
                v = eval_mzv_cached(k, p);
                what = "zeta" + k.to_paren_string();
            } else if (!eval_word.empty()) {
                Word w = Word::from_letters(eval_word);
                v = eval_zeta_tilde(HPoly(w), p);
                what = "zeta~(" + eval_word + ")";
            } else if (!eval_biseq.empty()) {
                BiSeq bs = BiSeq::parse(eval_biseq);
                mpq_class lam = parse_rational(eval_lambda);
                v = eval_f(bs, lam, p);
                what = "f(" + bs.to_string() + "; " + rational_to_string(lam) + ")";
            } else {
                std::cerr << "error: eval needs --index, --word or --biseq\n";
                return 2;
            }
            if (eval_flags.json) {
                nlohmann::ordered_json j;
                j["expr"] = what;
                j["value"] = v.value.to_decimal();
                j["err"] = v.err.to_decimal(8);
                j["params"] = {{"prec_bits", p.prec_bits},
                               {"cutoff_N", p.cutoff_N},
                               {"tail_mode", tail_mode_name(p.tail_mode)}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << what << " = " << v.value.to_decimal() << "  (err <= "
                          << v.err.to_decimal(8) << ")\n";
            }
            return 0;
        }

        if (cmd_check->parsed()) {
            EvalParams p = make_params(chk);
            AdaptivePolicy policy{chk.tol / 4, chk.max_cutoff};
            std::vector<mpq_class> lambdas =
                parse_lambdas(chk.lambdas, {mpq_class(1, 3)});

            if (chk.max_weight > 0) {
                SweepConfig cfg;
                cfg.max_weight = chk.max_weight;
                cfg.lambdas = lambdas;
                cfg.tolerance = chk.tol;
                cfg.eval = p;
                cfg.max_cutoff = chk.max_cutoff;
                cfg.relations = {relation};
                cfg.taylor_L = chk_taylor_L;
                cfg.residue_n_max = chk_nmax;
                cfg.validate();
                return emit_reports(run_family(relation, cfg), chk.json, std::cout);
            }

            std::vector<RelationReport> reports;
            if (relation == "ohno") {
                if (chk_index.empty()) throw std::invalid_argument("ohno needs --index");
                reports.push_back(
                    check_ohno(Index::parse(chk_index), chk_shift, p, chk.tol, policy));
            } else if (relation == "fg") {
                if (chk_biseq.empty()) throw std::invalid_argument("fg needs --biseq");
                BiSeq bs = BiSeq::parse(chk_biseq);
                for (const mpq_class& lam : lambdas) {
                    if (is_positive_integer(lam))
                        throw std::invalid_argument("lambda is a positive integer: " +
                                                    rational_to_string(lam));
                    reports.push_back(check_fg(bs, lam, p, chk.tol, policy));
                }
            } else if (relation == "thm31") {
                if (chk_biseq.empty()) throw std::invalid_argument("thm31 needs --biseq");
                BiSeq bs = BiSeq::parse(chk_biseq).normalize();
                Thm31Case c;
                if (chk_case.empty()) {
                    auto cc = thm31_case_of(bs);
                    if (!cc)
                        throw std::invalid_argument(
                            "no functional-relation case applies to " + bs.to_string());
                    c = *cc;
                } else if (chk_case == "i") {
                    c = Thm31Case::i;
                } else if (chk_case == "ii") {
                    c = Thm31Case::ii;
                } else if (chk_case == "iii") {
                    c = Thm31Case::iii;
                } else if (chk_case == "iv") {
                    c = Thm31Case::iv;
                } else {
                    throw std::invalid_argument("bad thm31 case: " + chk_case);
                }
                for (const mpq_class& lam : lambdas) {
                    reports.push_back(check_thm31(bs, c, lam, p, chk.tol, policy, false));
                    reports.push_back(check_thm31(bs, c, lam, p, chk.tol, policy, true));
                }
            } else if (relation == "lemma33") {
                if (chk_biseq.empty()) throw std::invalid_argument("lemma33 needs --biseq");
                BiSeq bs = BiSeq::parse(chk_biseq).normalize();
                std::vector<std::pair<Lemma33Part, int>> instances;
                auto add_if = [&](Lemma33Part part, int ipos) {
                    if (lemma33_applicable(part, bs, ipos)) instances.emplace_back(part, ipos);
                };
                if (chk_part.empty()) {
                    add_if(Lemma33Part::ia, 0);
                    add_if(Lemma33Part::ib, 0);
                    for (int i = 2; i <= bs.m(); ++i) add_if(Lemma33Part::ii, i);
                    add_if(Lemma33Part::iiic, 0);
                    add_if(Lemma33Part::iiid, 0);
                    if (instances.empty())
                        throw std::invalid_argument("no lemma part applies to " + bs.to_string());
                } else {
                    Lemma33Part part;
                    if (chk_part == "ia") part = Lemma33Part::ia;
                    else if (chk_part == "ib") part = Lemma33Part::ib;
                    else if (chk_part == "ii") part = Lemma33Part::ii;
                    else if (chk_part == "iiic") part = Lemma33Part::iiic;
                    else if (chk_part == "iiid") part = Lemma33Part::iiid;
                    else throw std::invalid_argument("bad lemma33 part: " + chk_part);
                    instances.emplace_back(part, chk_ipos);
                }
                for (const mpq_class& lam : lambdas)
                    for (auto [part, ipos] : instances)
                        reports.push_back(
                            check_lemma33(part, bs, ipos, lam, p, chk.tol, policy));
            } else if (relation == "taylor") {
                if (chk_biseq.empty()) throw std::invalid_argument("taylor needs --biseq");
                BiSeq bs = BiSeq::parse(chk_biseq);
                for (const mpq_class& lam : lambdas)
                    reports.push_back(taylor_vs_ohno(bs, chk_taylor_L, lam, p, chk.tol));
            } else if (relation == "residue") {
                if (chk_biseq.empty()) throw std::invalid_argument("residue needs --biseq");
                BiSeq bs = BiSeq::parse(chk_biseq);
                for (const mpq_class& lam : lambdas)
                    reports.push_back(
                        residue_reconstruction(bs, lam, chk_nmax, p, chk.tol));
            } else if (relation == "duality") {
                if (chk_word.empty()) throw std::invalid_argument("duality needs --word");
                reports.push_back(
                    check_duality(Word::from_letters(chk_word), p, chk.tol, policy));
            } else if (relation == "homomorphism") {
                if (chk_w1.empty() || chk_w2.empty())
                    throw std::invalid_argument("homomorphism needs --w1 and --w2");
                reports.push_back(check_homomorphism(Word::from_letters(chk_w1),
                                                     Word::from_letters(chk_w2), p, chk.tol,
                                                     policy));
            } else {
                throw std::invalid_argument("unknown relation: " + relation);
            }
            return emit_reports(reports, chk.json, std::cout);
        }

        if (cmd_sweep->parsed()) {
            std::ifstream in(sweep_config_path);
            if (!in) {
                std::cerr << "error: cannot open config " << sweep_config_path << "\n";
                return 2;
            }
            SweepConfig cfg = parse_sweep_config(in);
            cfg.validate();

            std::ofstream out_file;
            std::ostream* json_out = &std::cout;
            if (!sweep_out.empty()) {
                out_file.open(sweep_out);
                if (!out_file) {
                    std::cerr << "error: cannot open output " << sweep_out << "\n";
                    return 2;
                }
                json_out = &out_file;
            }

            bool all_pass = true;
            std::vector<FamilySummary> rows;
            for (const std::string& fam : known_relations()) {
                if (std::find(cfg.relations.begin(), cfg.relations.end(), fam) ==
                    cfg.relations.end())
                    continue;
                auto t0 = std::chrono::steady_clock::now();
                std::vector<RelationReport> reports = run_family(fam, cfg);
                auto t1 = std::chrono::steady_clock::now();
                FamilySummary row;
                row.family = fam;
                row.count = reports.size();
                row.seconds = std::chrono::duration<double>(t1 - t0).count();
                Real maxdiff(cfg.eval.prec_bits);
                for (const RelationReport& r : reports) {
                    *json_out << report_to_json(r).dump() << "\n";
                    if (r.pass) ++row.passed;
                    if (maxdiff < r.abs_diff) maxdiff = r.abs_diff;
                    all_pass = all_pass && r.pass;
                }
                row.max_abs_diff = maxdiff.to_decimal(3);
                rows.push_back(std::move(row));
            }
            std::cerr << summary_table(rows);
            return all_pass ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
