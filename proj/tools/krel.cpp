#include "krel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum Exit { kOk = 0, kConfigError = 2, kMathError = 3 };

}  // namespace

int main(int argc, char** argv) {
    using namespace krel::cli;
    CLI::App app{"krel: K-relations, regulator constants and root numbers for elliptic curves over Galois extensions"};
    app.require_subcommand(1);

    std::string config_path, group_name, format = "document", out_path, rep, theta, field;
    std::uint64_t seed = 0;
    std::vector<std::string> cases;
    std::vector<long> e_values;
    long k_max = 3, r_max = 60;
    bool tables = false;

    app.add_option("--config", config_path, "workbench config (JSON); relative paths also tried under $KREL_CONFIG_DIR");
    app.add_option("--group", group_name, "group name when no config is given: Cn, Dn, Sn, An, Q8, or Ce:Cm and Ce:-Cm with m a power of 2 (e.g. C3:-C4)");
    auto* seed_opt = app.add_option("--seed", seed, "seed for random pairings; overrides options.seed");
    app.add_option("--format", format, "document, table or csv")->check(CLI::IsMember({"document", "json", "table", "csv"}));
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--rep", rep, "representation: label, name (chi_7, eps), 'faithful' or degree:index");
    app.add_option("--theta", theta, "explicit relation, e.g. \"C2 - D3 - D7 + D21\"");
    app.add_option("--field", field, "squarefree D of Q(sqrt D)");
    app.add_option("--case", cases, "2C, 2D, 2M or all")->check(CLI::IsMember({"2C", "2D", "2M", "all"}));
    app.add_option("--e", e_values, "values of e among 2, 3, 4, 6");
    app.add_option("--k-max", k_max, "largest k (2-power exponent of the quotient), at most 3");
    app.add_flag("--tables", tables, "also run the differential-term checks and table cross-checks");
    app.add_option("--r-max", r_max, "largest cyclic order for the differential-term sample");

    std::string command;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        s->callback([&command, full] { command = full; });
        return s;
    };
    auto* group = app.add_subcommand("group", "group data")->fallthrough()->require_subcommand(1);
    leaf(group, "info", "group info", "classes, subgroup classes and characters");
    auto* relations = app.add_subcommand("relations", "Burnside ring relations")->fallthrough()->require_subcommand(1);
    leaf(relations, "find", "relations find", "norm relation of a representation");
    leaf(relations, "basis", "relations basis", "basis of Brauer or K-relations");
    leaf(&app, "regconst", "regconst", "regulator constants of every rational irreducible");
    leaf(&app, "roots", "roots", "global root numbers of orthogonal irreducibles");
    auto* nrt = app.add_subcommand("nrt", "norm relations test")->fallthrough()->require_subcommand(1);
    leaf(nrt, "run", "nrt run", "run the test on each target representation");
    auto* check = app.add_subcommand("check", "compatibility checks")->fallthrough()->require_subcommand(1);
    leaf(check, "theorem-main", "check theorem-main", "fudge factors versus regulator constants and root numbers");
    auto* verify = app.add_subcommand("verify", "brute-force verification")->fallthrough()->require_subcommand(1);
    leaf(verify, "appendix", "verify appendix", "local Tamagawa and differential-term sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        CommandRequest req;
        req.command = command;
        if (!config_path.empty()) req.config = load_config(config_path);
        if (seed_opt->count()) req.seed = seed;
        if (!rep.empty()) {
            RepSelector sel;
            if (auto colon = rep.find(':'); colon != std::string::npos && rep.find_first_not_of("0123456789:") == std::string::npos) {
                sel.degree = std::stol(rep.substr(0, colon));
                sel.index = std::stoul(rep.substr(colon + 1));
            } else {
                sel.text = rep;
            }
            req.rep = sel;
        }
        if (!theta.empty()) req.theta = theta;
        if (!field.empty()) req.field = krel::Integer(field);
        req.cases = cases;
        req.e_values = e_values;
        req.k_max = k_max;
        req.tables = tables;
        req.r_max = r_max;
        if (!req.config && !group_name.empty()) req.config = parse_config(Json{{"group", group_name}}.dump());
        const std::string bytes = emit(run_command(req), parse_format(format));
        if (out_path.empty()) {
            std::cout << bytes;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw krel::InputError("cannot write '" + out_path + "'");
            out << bytes;
        }
        return kOk;
    } catch (const krel::InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const krel::MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return kMathError;
    } catch (const std::exception& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return kMathError;
    }
}
