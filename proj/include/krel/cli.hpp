#pragma once

#include "krel/harness.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krel::cli {

using Json = nlohmann::json;

struct ConfigDiagnostic {
    std::string field;  // dotted path into the config, e.g. places[0].reduction.type
    std::string rule;
    std::string message;
    std::optional<std::size_t> line;
    std::string str() const;
};

// Malformed or inconsistent configuration; carries every diagnostic found.
struct ConfigError : InputError {
    std::vector<ConfigDiagnostic> diagnostics;
    explicit ConfigError(std::vector<ConfigDiagnostic> d);
};

struct RepSelector {
    std::string text;               // name, label or "faithful"
    std::optional<long> degree;     // with index: the index-th irreducible of this degree
    std::optional<std::size_t> index;
};

struct MatrixModel {
    std::vector<RatMatrix> generator_images;  // one per group generator
};

struct Target {
    std::optional<RepSelector> rep;
    std::optional<std::string> theta;
    std::optional<Integer> field;
    std::optional<MatrixModel> matrix_model;
};

struct Options {
    std::uint64_t seed = 1;
    std::size_t order_bound = kDefaultOrderBound;
    unsigned long factor_bound = 1000000;
    std::map<ReductionType, int> lambda_defaults;
};

struct WorkbenchConfig {
    Json source;  // parsed document, kept for the inputs digest
    CurveLocalModel model;
    std::vector<Target> targets;
    Options options;
};

// Parses and validates; throws ConfigError.
WorkbenchConfig parse_config(const std::string& text);
WorkbenchConfig load_config(const std::string& path);
// PATH as given, else relative to the KREL_CONFIG_DIR directory.
std::string resolve_config_path(const std::string& path);

Group parse_group_spec(const std::string& name, std::size_t order_bound = kDefaultOrderBound);
std::size_t select_irreducible(const Group& g, const RepSelector& sel);

struct Table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    Json document;
    std::vector<Table> tables;  // the first table is the primary one
};

enum class Format { Document, Table, Csv };
Format parse_format(const std::string& s);
std::string emit(const Report& report, Format f);

struct CommandRequest {
    std::string command;  // "group info", "relations find", ...
    std::optional<WorkbenchConfig> config;
    std::optional<std::uint64_t> seed;
    std::optional<RepSelector> rep;
    std::optional<std::string> theta;
    std::optional<Integer> field;
    // verify appendix
    std::vector<std::string> cases;
    std::vector<long> e_values;
    long k_max = 3;
    bool tables = false;
    long r_max = 60;
};

Report run_command(const CommandRequest& req);

std::string inputs_digest(const CommandRequest& req);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace krel::cli
