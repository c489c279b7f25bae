#include "krel/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace krel::cli {

Format parse_format(const std::string& s) {
    if (s == "document" || s == "json") return Format::Document;
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    throw InputError("unknown format '" + s + "' (expected document, table or csv)");
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// display width counting UTF-8 code points
std::size_t width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

std::string render_table(const Table& t) {
    std::vector<std::size_t> w(t.headers.size(), 0);
    for (std::size_t j = 0; j < t.headers.size(); ++j) w[j] = width(t.headers[j]);
    for (auto& r : t.rows)
        for (std::size_t j = 0; j < r.size() && j < w.size(); ++j) w[j] = std::max(w[j], width(r[j]));
    std::ostringstream os;
    if (!t.title.empty()) os << t.title << "\n";
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            const std::string c = j < cells.size() ? cells[j] : "";
            os << (j ? "  " : "") << c;
            if (j + 1 < w.size()) os << std::string(w[j] - width(c), ' ');
        }
        os << "\n";
    };
    line(t.headers);
    std::size_t total = 0;
    for (auto x : w) total += x;
    os << std::string(total + 2 * (w.empty() ? 0 : w.size() - 1), '-') << "\n";
    for (auto& r : t.rows) line(r);
    return os.str();
}

}  // namespace

std::string emit(const Report& report, Format f) {
    switch (f) {
        case Format::Document: return report.document.dump(2) + "\n";
        case Format::Table: {
            std::string out;
            for (std::size_t i = 0; i < report.tables.size(); ++i) out += (i ? "\n" : "") + render_table(report.tables[i]);
            return out;
        }
        case Format::Csv: {
            if (report.tables.empty()) return "";
            const Table& t = report.tables.front();
            std::string out;
            auto row = [&](const std::vector<std::string>& cells) {
                for (std::size_t j = 0; j < cells.size(); ++j) out += (j ? "," : "") + csv_field(cells[j]);
                out += "\n";
            };
            row(t.headers);
            for (auto& r : t.rows) row(r);
            return out;
        }
    }
    return "";
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string inputs_digest(const CommandRequest& req) {
    Json j;
    j["command"] = req.command;
    j["config"] = req.config ? req.config->source : Json();
    j["seed"] = req.seed ? Json(*req.seed) : Json();
    j["rep"] = req.rep ? Json(req.rep->degree ? std::to_string(*req.rep->degree) + ":" +
                                                    std::to_string(req.rep->index.value_or(0))
                                              : req.rep->text)
                       : Json();
    j["theta"] = req.theta ? Json(*req.theta) : Json();
    j["field"] = req.field ? Json(req.field->get_str()) : Json();
    j["cases"] = req.cases;
    j["e"] = req.e_values;
    j["k_max"] = req.k_max;
    j["tables"] = req.tables;
    j["r_max"] = req.r_max;
    return "fnv1a64:" + fnv1a64_hex(j.dump());
}

}  // namespace krel::cli
