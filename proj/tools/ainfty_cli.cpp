// Command-line surface: validate documents, compute Hochschild dimensions,
// diagnose sign conventions, and exercise the adjunction and model
// comparisons. Exit codes: 0 pass, 1 check failure, 2 input error.
#include <iostream>

#include <CLI11.hpp>

#include "ainfty/commands.hpp"

using namespace ainfty;

namespace {

struct CliOptions {
    std::string document;
    RunConfig cfg;
    std::string field_flag;
    std::string model_flag{"small"};
    std::string sign_flag{"koszul"};
    std::string star_flag{"literal"};
    std::string format_flag{"table"};
};

template <typename K>
int run_command(const std::string& command, const AlgebraDocument& doc, const CliOptions& opt)
{
    BuiltDocument<K> built = build_document<K>(doc, opt.cfg);
    Json report;
    if (command == "validate")
        report = validate_command(built, opt.cfg);
    else if (command == "hh")
        report = hh_command(built, opt.cfg);
    else if (command == "cohh")
        report = cohh_command(built, opt.cfg);
    else if (command == "diagnose-signs")
        report = diagnose_signs_command(built, opt.cfg);
    else if (command == "adjunction-check")
        report = adjunction_command(built, opt.cfg);
    else
        report = compare_models_command(built, opt.cfg);
    if (opt.cfg.machine)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << render_table(report);
    return report_passed(report) ? 0 : 1;
}

int dispatch(const std::string& command, CliOptions& opt)
{
    AlgebraDocument doc = parse_document_file(opt.document);

    if (!opt.field_flag.empty()) {
        FieldSpec flag;
        if (opt.field_flag == "q") {
            flag = FieldSpec::q();
        } else if (opt.field_flag.rfind("f:", 0) == 0) {
            flag = FieldSpec::fp(static_cast<std::uint32_t>(std::stoul(opt.field_flag.substr(2))));
        } else {
            throw Error("--field must be q or f:<prime>");
        }
        if (doc.field_declared && !(doc.field == flag))
            throw Error("--field " + flag.str() + " conflicts with the document field " +
                        doc.field.str());
        opt.cfg.field = flag;
    } else if (doc.field_declared) {
        opt.cfg.field = doc.field;
    }

    opt.cfg.model = opt.model_flag == "bar" ? ChainModel::bar_resolution : ChainModel::small;
    opt.cfg.sign_mode = opt.sign_flag == "plain" ? SignMode::plain : SignMode::koszul;
    opt.cfg.star_mode = opt.star_flag == "reversal" ? StarMode::reversal : StarMode::literal;
    opt.cfg.machine = opt.format_flag == "machine";
    opt.cfg.validate();

    if (opt.cfg.field.kind == FieldSpec::Kind::prime_field) {
        FpContext ctx(opt.cfg.field.characteristic);
        return run_command<Fp>(command, doc, opt);
    }
    return run_command<Rational>(command, doc, opt);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact involutive A-infinity engine"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string command;
    for (const std::string name :
         {"validate", "hh", "cohh", "diagnose-signs", "adjunction-check", "compare-models"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("document", opt.document, "structure document")->required();
        sub->add_option("--max-weight", opt.cfg.max_weight, "weight cap L")->capture_default_str();
        sub->add_option("--max-arity", opt.cfg.max_arity, "arity cap N")->capture_default_str();
        sub->add_option("--field", opt.field_flag, "q or f:<prime>");
        sub->add_option("--model", opt.model_flag, "bar or small")
            ->check(CLI::IsMember({"bar", "small"}))
            ->capture_default_str();
        sub->add_option("--sign-mode", opt.sign_flag, "koszul or plain")
            ->check(CLI::IsMember({"koszul", "plain"}))
            ->capture_default_str();
        sub->add_option("--star-mode", opt.star_flag, "literal or reversal")
            ->check(CLI::IsMember({"literal", "reversal"}))
            ->capture_default_str();
        sub->add_flag("--oracle", opt.cfg.oracle, "cross-check against the classical complex");
        sub->add_option("--format", opt.format_flag, "table or machine")
            ->check(CLI::IsMember({"table", "machine"}))
            ->capture_default_str();
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        return dispatch(command, opt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
