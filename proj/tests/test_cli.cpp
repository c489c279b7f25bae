#include "krel/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace krel;
using namespace krel::cli;

namespace {

const std::string kDir = KREL_CONFIG_DIR_DEFAULT;

std::vector<ConfigDiagnostic> diagnostics_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.diagnostics;
    }
    return {};
}

bool has_field(const std::vector<ConfigDiagnostic>& ds, const std::string& field) {
    return std::any_of(ds.begin(), ds.end(), [&](const ConfigDiagnostic& d) { return d.field == field; });
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

CommandRequest request(const std::string& command, const std::string& config_file) {
    CommandRequest r;
    r.command = command;
    r.config = load_config(kDir + "/" + config_file);
    return r;
}

}  // namespace

TEST(GroupSpec, Names) {
    EXPECT_EQ(parse_group_spec("C5").order(), 5u);
    EXPECT_EQ(parse_group_spec("D7").order(), 14u);
    EXPECT_EQ(parse_group_spec("S4").order(), 24u);
    EXPECT_EQ(parse_group_spec("A5").order(), 60u);
    EXPECT_EQ(parse_group_spec("Q8").order(), 8u);
    EXPECT_EQ(parse_group_spec("C3:-C4").order(), 12u);
    EXPECT_EQ(parse_group_spec("C6:C8").order(), 48u);
    EXPECT_THROW(parse_group_spec("C3:-C6"), InputError);
    EXPECT_THROW(parse_group_spec("PSL(2,7)"), InputError);
    EXPECT_THROW(parse_group_spec("S6", 100), InputError);
}

TEST(Config, BundledConfigsLoad) {
    for (const char* name : {"d21_example.json", "d21_good_at_ramified.json", "cyclic_c21.json", "odd_order_f21.json",
                             "q8_matrix_model.json"}) {
        WorkbenchConfig cfg = load_config(kDir + "/" + name);
        EXPECT_TRUE(cfg.model.group.valid()) << name;
        EXPECT_FALSE(cfg.targets.empty()) << name;
    }
}

TEST(Config, ExampleContents) {
    WorkbenchConfig cfg = load_config(kDir + "/d21_example.json");
    EXPECT_EQ(cfg.model.group.order(), 42u);
    ASSERT_EQ(cfg.model.places.size(), 2u);
    EXPECT_EQ(cfg.model.places[0].reduction.type, ReductionType::SplitMult);
    EXPECT_EQ(cfg.model.places[0].D.count(), 6u);
    EXPECT_EQ(cfg.model.places[1].kind, PlaceKind::Real);
    EXPECT_EQ(cfg.options.seed, 1u);
}

TEST(Config, DiagnosticsNameTheField) {
    auto ds = diagnostics_of(R"({"group": "D21", "bogus": 1,
        "places": [{"name": "x", "l": 5, "D": "D9", "I": "C3", "reduction": {"type": "split_mult"}},
                   {"name": "y", "l": 5, "D": "D3", "I": "C7"}]})");
    EXPECT_TRUE(has_field(ds, "bogus"));
    EXPECT_TRUE(has_field(ds, "places[0].D"));
    EXPECT_TRUE(has_field(ds, "places[1].I"));
    for (auto& d : ds) EXPECT_FALSE(d.str().empty());
}

TEST(Config, ReductionRulesReported) {
    auto ds = diagnostics_of(R"({"group": "D21",
        "places": [{"name": "x", "l": 5, "D": "D3", "I": "C3", "reduction": {"type": "add_pot_good", "delta": 1}}]})");
    EXPECT_FALSE(ds.empty());
    bool under_place = false;
    for (auto& d : ds) under_place |= d.field.rfind("places[0]", 0) == 0;
    EXPECT_TRUE(under_place);
}

TEST(Config, SyntaxErrorHasLine) {
    auto ds = diagnostics_of("{\"group\": \"D21\",\n \"places\": [\n  {\"name\": \"x\" \"l\": 5}]}");
    ASSERT_EQ(ds.size(), 1u);
    ASSERT_TRUE(ds[0].line);
    EXPECT_EQ(*ds[0].line, 3u);
}

TEST(Config, MissingGroup) {
    EXPECT_TRUE(has_field(diagnostics_of(R"({"places": []})"), "group"));
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Config, DirectoryResolution) {
    setenv("KREL_CONFIG_DIR", kDir.c_str(), 1);
    const std::string p = resolve_config_path("d21_example.json");
    EXPECT_TRUE(std::filesystem::exists(p)) << p;
    EXPECT_EQ(load_config("d21_example.json").model.group.order(), 42u);
    unsetenv("KREL_CONFIG_DIR");
    EXPECT_THROW(load_config("definitely_missing_config.json"), InputError);
}

TEST(RepSelection, Forms) {
    Group g = dihedral_group(21);
    const auto& t = character_table(g);
    std::size_t by_name = select_irreducible(g, {"chi_21", {}, {}});
    EXPECT_EQ(t.degree(by_name), 2);
    EXPECT_EQ(character_kernel(t.irr[by_name]).count(), 1u);
    EXPECT_EQ(select_irreducible(g, {"faithful", {}, {}}), by_name);
    EXPECT_EQ(t.degree(select_irreducible(g, {"", 2, 0})), 2);
    EXPECT_EQ(select_irreducible(g, {t.labels[3], {}, {}}), 3u);
    EXPECT_THROW(select_irreducible(g, {"nope", {}, {}}), InputError);
    EXPECT_THROW(select_irreducible(g, {"", 5, 0}), InputError);
}

TEST(Reports, DocumentRoundTrip) {
    for (const char* cmd : {"nrt run", "regconst", "check theorem-main", "roots", "relations find", "group info"}) {
        Report r = run_command(request(cmd, "d21_example.json"));
        const std::string bytes = emit(r, Format::Document);
        EXPECT_EQ(Json::parse(bytes), r.document) << cmd;
        EXPECT_EQ(r.document.at("command"), cmd);
        EXPECT_TRUE(r.document.contains("inputs_digest"));
        EXPECT_TRUE(r.document.contains("versions"));
        EXPECT_FALSE(r.tables.empty()) << cmd;
    }
}

TEST(Reports, Deterministic) {
    for (const char* cmd : {"nrt run", "regconst", "check theorem-main"}) {
        const std::string a = emit(run_command(request(cmd, "d21_example.json")), Format::Document);
        const std::string b = emit(run_command(request(cmd, "d21_example.json")), Format::Document);
        EXPECT_EQ(a, b) << cmd;
    }
    const std::string q1 = emit(run_command(request("regconst", "q8_matrix_model.json")), Format::Table);
    const std::string q2 = emit(run_command(request("regconst", "q8_matrix_model.json")), Format::Table);
    EXPECT_EQ(q1, q2);
}

TEST(Reports, DigestTracksInputs) {
    CommandRequest a = request("nrt run", "d21_example.json");
    CommandRequest b = a;
    EXPECT_EQ(inputs_digest(a), inputs_digest(b));
    b.seed = 5;
    EXPECT_NE(inputs_digest(a), inputs_digest(b));
    EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(Reports, NrtExampleTable) {
    Report r = run_command(request("nrt run", "d21_example.json"));
    const std::string table = emit(r, Format::Table);
    EXPECT_NE(table.find("u(χ_7) + u(χ_21) odd"), std::string::npos);
    const Json& res = r.document.at("results").at(0);
    EXPECT_EQ(res.at("prediction"), true);
}

TEST(Reports, CsvOneRowPerConfiguration) {
    CommandRequest r;
    r.command = "verify appendix";
    r.cases = {"2C"};
    r.e_values = {3};
    r.k_max = 2;
    Report rep = run_command(r);
    const std::string csv = emit(rep, Format::Csv);
    const std::size_t configs = tamagawa_configs(AppendixCase::C2, {3}, 2).size();
    EXPECT_EQ(lines(csv), configs + 1);
    EXPECT_EQ(rep.tables.front().rows.size(), configs);
    EXPECT_EQ(csv.find("FAIL"), std::string::npos);
}

TEST(Reports, RegconstMatrixModelEquivalence) {
    Report r = run_command(request("regconst", "q8_matrix_model.json"));
    const std::string doc = r.document.dump();
    EXPECT_NE(doc.find("equivalent"), std::string::npos);
    EXPECT_EQ(doc.find("\"equivalent\":false"), std::string::npos);
}

TEST(Reports, MissingInputsAreInputErrors) {
    CommandRequest r;
    r.command = "nrt run";
    EXPECT_THROW(run_command(r), InputError);
    r.command = "no such command";
    EXPECT_THROW(run_command(r), InputError);
}

TEST(Reports, WritesToFile) {
    const auto path = std::filesystem::temp_directory_path() / "krel_cli_test.json";
    {
        std::ofstream out(path);
        out << emit(run_command(request("group info", "d21_example.json")), Format::Document);
    }
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NO_THROW(Json::parse(ss.str()));
    std::filesystem::remove(path);
}
