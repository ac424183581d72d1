#include "ainfty/commands.hpp"

#include <sstream>

namespace ainfty {

namespace {

void render_dims(std::ostringstream& out, const std::string& label, const Json& dims)
{
    out << "  " << label << ":";
    for (auto it = dims.begin(); it != dims.end(); ++it)
        out << "  H[" << it.key() << "]=" << it.value().template get<int>();
    out << "\n";
}

void render_report_block(std::ostringstream& out, const Json& rep)
{
    out << "  model: " << rep["model"].get<std::string>()
        << "   max-weight: " << rep["max_weight"].get<int>() << "   certified degrees: ["
        << rep["certified"][0].get<int>() << ", " << rep["certified"][1].get<int>() << "]\n";
    render_dims(out, "ordinary  ", rep["ordinary"]);
    if (rep["involutive_defined"].get<bool>())
        render_dims(out, "involutive", rep["involutive"]);
    else
        out << "  involutive: not defined (" << rep["involutive_note"].get<std::string>()
            << ")\n";
}

} // namespace

std::string render_table(const Json& report)
{
    std::ostringstream out;
    const std::string cmd = report["command"].get<std::string>();
    out << "== " << cmd << " (field " << report["field"].get<std::string>() << ") ==\n";
    if (cmd == "validate") {
        for (const auto& c : report["checks"]) {
            out << "  [" << (c["passed"].get<bool>() ? "pass" : "FAIL") << "] "
                << c["check"].get<std::string>();
            if (c.contains("witness"))
                out << "   witness: " << c["witness"].get<std::string>();
            out << "\n";
        }
        out << (report["passed"].get<bool>() ? "all checks passed\n" : "CHECKS FAILED\n");
    } else if (cmd == "hh" || cmd == "cohh") {
        render_report_block(out, report["report"]);
        if (report.contains("oracle")) {
            render_dims(out, "oracle    ", report["oracle"]);
            out << "  oracle agreement: "
                << (report["oracle_agrees"].get<bool>() ? "yes" : "NO") << "\n";
        }
        if (report.contains("oracle_note"))
            out << "  oracle: " << report["oracle_note"].get<std::string>() << "\n";
    } else if (cmd == "diagnose-signs") {
        out << "  coderivation b^2 = 0: "
            << (report["coderivation_passed"].get<bool>() ? "pass" : "FAIL") << "\n";
        for (const auto& r : report["literal_residuals"]) {
            out << "  literal Stasheff, arity " << r["arity"].get<int>() << ", "
                << r["mode"].get<std::string>() << " mode: "
                << (r["vanishes"].get<bool>() ? "vanishes" : "nonzero residual");
            if (r.contains("witness"))
                out << " at " << r["witness"].get<std::string>();
            out << "\n";
        }
        out << "  discrepancy with the coderivation criterion: "
            << (report["discrepancy"].get<bool>() ? "yes" : "no") << "\n";
    } else if (cmd == "adjunction-check") {
        out << "  involutive Hom dimensions: lhs=" << report["lhs_dim"].get<int>()
            << " rhs=" << report["rhs_dim"].get<int>() << "\n";
        out << "  tau lands in the right side: "
            << (report["tau_maps_into_rhs"].get<bool>() ? "yes" : "NO") << "\n";
        out << "  inverse lands in the left side: "
            << (report["inverse_maps_into_lhs"].get<bool>() ? "yes" : "NO") << "\n";
        out << "  round trips are identities: "
            << (report["round_trip_identity"].get<bool>() ? "yes" : "NO") << "\n";
        out << "  tau preserves involutions: "
            << (report["star_preserved"].get<bool>() ? "yes" : "NO") << "\n";
        out << (report["passed"].get<bool>() ? "adjunction holds\n" : "ADJUNCTION FAILED\n");
    } else if (cmd == "compare-models") {
        out << " small model\n";
        render_report_block(out, report["small"]);
        out << " bar-resolution model\n";
        render_report_block(out, report["bar"]);
        out << "  models agree on shared certified degrees: "
            << (report["agree"].get<bool>() ? "yes" : "NO") << "\n";
    } else {
        out << report.dump(2) << "\n";
    }
    return out.str();
}

bool report_passed(const Json& report)
{
    const std::string cmd = report["command"].get<std::string>();
    if (cmd == "validate" || cmd == "adjunction-check")
        return report["passed"].get<bool>();
    if (cmd == "hh" || cmd == "cohh")
        return !report.contains("oracle_agrees") || report["oracle_agrees"].get<bool>();
    if (cmd == "diagnose-signs")
        return report["coderivation_passed"].get<bool>();
    if (cmd == "compare-models")
        return report["agree"].get<bool>();
    return false;
}

} // namespace ainfty
