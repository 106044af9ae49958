#include "mzv/report.hpp"

#include <sstream>

namespace mzv {

std::string tail_mode_name(EvalParams::TailMode m) {
    return m == EvalParams::TailMode::richardson ? "richardson" : "bound-only";
}

nlohmann::ordered_json report_to_json(const RelationReport& r) {
    nlohmann::ordered_json j;
    j["relation"] = r.relation;
    nlohmann::ordered_json in;
    for (const auto& [k, v] : r.inputs) in[k] = v;
    j["inputs"] = in;
    if (r.lambda) j["lambda"] = rational_to_string(*r.lambda);
    j["lhs"] = {{"value", r.lhs.value.to_decimal()}, {"err", r.lhs.err.to_decimal(8)}};
    j["rhs"] = {{"value", r.rhs.value.to_decimal()}, {"err", r.rhs.err.to_decimal(8)}};
    j["abs_diff"] = r.abs_diff.to_decimal(8);
    j["pass"] = r.pass;
    j["tolerance"] = r.tolerance;
    j["params"] = {{"prec_bits", r.params.prec_bits},
                   {"cutoff_N", r.params.cutoff_N},
                   {"tail_mode", tail_mode_name(r.params.tail_mode)},
                   {"cutoff_used", r.cutoff_used}};
    return j;
}

std::string report_to_line(const RelationReport& r) {
    std::ostringstream os;
    os << (r.pass ? "pass" : "FAIL") << "  " << r.relation << "  ";
    for (size_t i = 0; i < r.inputs.size(); ++i) {
        if (i) os << ", ";
        os << r.inputs[i].first << "=" << r.inputs[i].second;
    }
    if (r.lambda) os << ", lambda=" << rational_to_string(*r.lambda);
    os << "  |diff|=" << r.abs_diff.to_decimal(3)
       << "  errs=" << add(r.lhs.err, r.rhs.err, MPFR_RNDU).to_decimal(3)
       << "  N=" << r.cutoff_used;
    return os.str();
}

}  // namespace mzv
