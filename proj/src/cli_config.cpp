#include "krel/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace krel::cli {

std::string ConfigDiagnostic::str() const {
    std::string s;
    if (line) s += "line " + std::to_string(*line) + ": ";
    if (!field.empty()) s += field + ": ";
    s += "[" + rule + "] " + message;
    return s;
}

namespace {

std::string join_diagnostics(const std::vector<ConfigDiagnostic>& d) {
    std::string s = "invalid config";
    for (auto& x : d) s += "\n  " + x.str();
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> d) : InputError(join_diagnostics(d)), diagnostics(std::move(d)) {}

Group parse_group_spec(const std::string& name, std::size_t order_bound) {
    std::smatch m;
    auto num = [&](int i) { return static_cast<std::size_t>(std::stoul(m[i].str())); };
    Group g;
    if (std::regex_match(name, m, std::regex(R"(C(\d+))"))) g = cyclic_group(num(1));
    else if (std::regex_match(name, m, std::regex(R"(D(\d+))"))) g = dihedral_group(num(1));
    else if (std::regex_match(name, m, std::regex(R"(S(\d+))"))) g = symmetric_group(num(1));
    else if (std::regex_match(name, m, std::regex(R"(A(\d+))"))) g = alternating_group(num(1));
    else if (name == "Q8") g = quaternion_group();
    else if (std::regex_match(name, m, std::regex(R"(C(\d+):(-?)C(\d+))"))) {
        std::size_t two = num(3), k = 0;
        while ((std::size_t(1) << k) < two) ++k;
        if ((std::size_t(1) << k) != two) throw InputError("metacyclic group needs a 2-power quotient: " + name);
        g = metacyclic_group(num(1), k, m[2].str().empty() ? 1 : -1);
    } else {
        throw InputError("unknown group name '" + name + "' (expected Cn, Dn, Sn, An, Q8, Ce:Cm or Ce:-Cm)");
    }
    if (g.order() > order_bound)
        throw InputError("group order " + std::to_string(g.order()) + " exceeds bound " + std::to_string(order_bound));
    return g;
}

std::size_t select_irreducible(const Group& g, const RepSelector& sel) {
    const auto& t = character_table(g);
    if (sel.degree) {
        auto a = t.find_degree_index(*sel.degree, sel.index.value_or(0));
        if (!a) throw InputError("no irreducible of degree " + std::to_string(*sel.degree) + " at that index");
        return *a;
    }
    if (sel.text == "faithful") {
        for (std::size_t a = 0; a < t.size(); ++a)
            if (character_kernel(t.irr[a]).count() == 1) return a;
        throw InputError("group has no faithful irreducible");
    }
    if (auto a = t.find_label(sel.text)) return *a;
    if (auto r = find_rational_irreducible(g, sel.text)) return rational_irreducibles(g)[*r].constituent;
    throw InputError("unknown representation '" + sel.text + "'");
}

namespace {

class Parser {
public:
    std::vector<ConfigDiagnostic> diags;

    void fail(const std::string& field, const std::string& rule, const std::string& msg) {
        diags.push_back({field, rule, msg, std::nullopt});
    }

    template <class T>
    std::optional<T> get(const Json& obj, const std::string& key, const std::string& path, bool required = false) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            if (required) fail(path + "." + key, "required", "missing field");
            return std::nullopt;
        }
        try {
            return it->template get<T>();
        } catch (const std::exception&) {
            fail(path + "." + key, "type", "unexpected type " + std::string(it->type_name()));
            return std::nullopt;
        }
    }

    std::optional<Integer> integer(const Json& obj, const std::string& key, const std::string& path, bool required) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            if (required) fail(path + "." + key, "required", "missing field");
            return std::nullopt;
        }
        try {
            if (it->is_number_integer()) return Integer(std::to_string(it->get<long long>()));
            if (it->is_string()) return Integer(it->get<std::string>());
        } catch (const std::exception&) {
        }
        fail(path + "." + key, "type", "expected an integer");
        return std::nullopt;
    }

    Group group(const Json& j, const Options& opt) {
        try {
            if (j.is_string()) return parse_group_spec(j.get<std::string>(), opt.order_bound);
            if (!j.is_object()) {
                fail("group", "type", "expected a name or an object");
                return {};
            }
            if (auto n = get<std::string>(j, "name", "group"); n && !j.contains("generators"))
                return parse_group_spec(*n, opt.order_bound);
            auto gens = get<std::vector<std::string>>(j, "generators", "group", true);
            auto deg = get<std::size_t>(j, "degree", "group");
            if (!gens) return {};
            std::size_t d = deg.value_or(0);
            if (!deg) {
                for (auto& s : *gens) d = std::max(d, parse_cycles(s, 0).size());
            }
            std::vector<Perm> perms;
            for (auto& s : *gens) perms.push_back(parse_cycles(s, d));
            return Group::from_generators(perms, get<std::string>(j, "name", "group").value_or(""), opt.order_bound);
        } catch (const InputError& e) {
            fail("group", "group", e.what());
            return {};
        }
    }

    std::optional<Elem> element(const Group& g, const std::string& text, const std::string& path) {
        try {
            auto e = g.find(parse_cycles(text, g.degree()));
            if (!e) fail(path, "element", "'" + text + "' is not in the group");
            return e;
        } catch (const InputError& e) {
            fail(path, "element", e.what());
            return std::nullopt;
        }
    }

    // A subgroup given by class label or by generators; with `inside`, a conjugate lying in it.
    std::optional<ElemSet> subgroup(const Group& g, const Json& j, const std::string& path,
                                    const std::optional<ElemSet>& inside = std::nullopt) {
        if (j.is_string()) {
            auto cls = g.find_subgroup_label(j.get<std::string>());
            if (!cls) {
                fail(path, "subgroup", "unknown subgroup label '" + j.get<std::string>() + "'");
                return std::nullopt;
            }
            const auto& sc = g.subgroup_classes()[*cls];
            if (!inside) return sc.rep;
            for (auto& c : sc.conjugates)
                if (c.subset_of(*inside) && normal_in(g, c, *inside)) return c;
            for (auto& c : sc.conjugates)
                if (c.subset_of(*inside)) return c;
            fail(path, "subgroup", "no conjugate of " + j.get<std::string>() + " lies in the decomposition group");
            return std::nullopt;
        }
        if (j.is_object() && j.contains("generators")) {
            auto gens = get<std::vector<std::string>>(j, "generators", path, true);
            if (!gens) return std::nullopt;
            std::vector<Elem> es;
            for (std::size_t i = 0; i < gens->size(); ++i) {
                auto e = element(g, (*gens)[i], path + ".generators[" + std::to_string(i) + "]");
                if (!e) return std::nullopt;
                es.push_back(*e);
            }
            return g.closure(es);
        }
        fail(path, "type", "expected a subgroup label or {\"generators\": [...]}");
        return std::nullopt;
    }

    static bool normal_in(const Group& g, const ElemSet& h, const ElemSet& d) {
        for (auto x : d.elements())
            if (!(g.conjugate(h, x) == h)) return false;
        return true;
    }

    SquareClassLocal square_class(const Json& red, const std::string& key, const std::string& path) {
        SquareClassLocal c;
        auto it = red.find(key);
        if (it == red.end()) return c;
        const std::string p = path + "." + key;
        if (!it->is_object()) {
            fail(p, "type", "expected {\"val_parity\": 0|1, \"unit_square\": bool}");
            return c;
        }
        auto v = get<int>(*it, "val_parity", p);
        auto u = get<bool>(*it, "unit_square", p);
        if (v) {
            if (*v != 0 && *v != 1) fail(p + ".val_parity", "range", "must be 0 or 1");
            c.val_parity = *v & 1;
        }
        if (u) c.unit_is_square = *u;
        return c;
    }

    std::optional<PlaceDescriptor> place(const Group& g, const Json& j, const std::string& path, const Options& opt) {
        if (!j.is_object()) {
            fail(path, "type", "expected an object");
            return std::nullopt;
        }
        PlaceDescriptor p;
        p.name = get<std::string>(j, "name", path, true).value_or("");
        const std::string kind = get<std::string>(j, "kind", path).value_or("finite");
        if (kind == "finite") p.kind = PlaceKind::Finite;
        else if (kind == "real") p.kind = PlaceKind::Real;
        else if (kind == "complex") p.kind = PlaceKind::Complex;
        else fail(path + ".kind", "enum", "expected finite, real or complex");
        const std::size_t before = diags.size();
        if (auto d = j.find("D"); d != j.end()) {
            if (auto s = subgroup(g, *d, path + ".D")) p.D = *s;
        } else if (p.kind == PlaceKind::Finite) {
            fail(path + ".D", "required", "missing field");
        } else {
            p.D = g.trivial();
        }
        if (p.kind != PlaceKind::Finite) {
            p.I = g.trivial();
            return diags.size() == before ? std::optional(p) : std::nullopt;
        }
        if (auto l = integer(j, "l", path, true)) p.l = l->get_si();
        p.q = integer(j, "q", path, false).value_or(Integer(p.l));
        if (diags.size() != before) return std::nullopt;
        if (auto i = j.find("I"); i != j.end()) {
            if (auto s = subgroup(g, *i, path + ".I", p.D)) p.I = *s;
        } else {
            p.I = g.trivial();
        }
        if (auto f = get<std::string>(j, "frobenius", path)) p.frobenius = element(g, *f, path + ".frobenius");
        const Json red = j.value("reduction", Json::object());
        const std::string rp = path + ".reduction";
        if (!red.is_object()) {
            fail(rp, "type", "expected an object");
            return std::nullopt;
        }
        try {
            p.reduction.type = parse_reduction_type(get<std::string>(red, "type", rp).value_or("good"));
        } catch (const InputError& e) {
            fail(rp + ".type", "enum", e.what());
        }
        p.reduction.n = get<long>(red, "n", rp).value_or(0);
        p.reduction.delta = get<long>(red, "delta", rp).value_or(0);
        p.reduction.delta_class = square_class(red, "delta_class", rp);
        p.reduction.b_class = square_class(red, "b_class", rp);
        p.reduction.minus_c6_class = square_class(red, "minus_c6_class", rp);
        p.reduction.minus6b_class = square_class(red, "minus6b_class", rp);
        if (auto lam = get<int>(red, "lambda", rp)) {
            if (*lam != 1 && *lam != -1) fail(rp + ".lambda", "range", "must be +1 or -1");
            p.reduction.lambda = *lam;
        } else if (auto it = opt.lambda_defaults.find(p.reduction.type); it != opt.lambda_defaults.end()) {
            p.reduction.lambda = it->second;
        }
        if (auto dp = red.find("d_prime"); dp != red.end())
            if (auto s = subgroup(g, *dp, rp + ".d_prime", p.D)) p.reduction.d_prime = *s;
        if (diags.size() != before) return std::nullopt;
        for (auto& d : validate_place(g, p)) fail(path + "." + d.field, d.rule, d.message);
        return diags.size() == before ? std::optional(p) : std::nullopt;
    }

    std::optional<RepSelector> rep(const Json& j, const std::string& path) {
        RepSelector s;
        if (j.is_string()) {
            s.text = j.get<std::string>();
            return s;
        }
        if (j.is_object()) {
            s.degree = get<long>(j, "degree", path, true);
            s.index = get<std::size_t>(j, "index", path).value_or(0);
            if (s.degree) return s;
            return std::nullopt;
        }
        fail(path, "type", "expected a name or {\"degree\": d, \"index\": i}");
        return std::nullopt;
    }

    std::optional<MatrixModel> matrix_model(const Group& g, const Json& j, const std::string& path) {
        auto gens = get<std::vector<std::vector<std::vector<std::string>>>>(j, "generators", path, true);
        if (!gens) return std::nullopt;
        if (gens->size() != g.generators().size()) {
            fail(path + ".generators", "count",
                 "expected " + std::to_string(g.generators().size()) + " matrices, one per group generator");
            return std::nullopt;
        }
        MatrixModel m;
        for (std::size_t k = 0; k < gens->size(); ++k) {
            const auto& rows = (*gens)[k];
            const std::size_t n = rows.size();
            RatMatrix a(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (rows[i].size() != n) {
                    fail(path + ".generators[" + std::to_string(k) + "]", "shape", "matrix must be square");
                    return std::nullopt;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    try {
                        a(i, c) = parse_rational(rows[i][c]);
                    } catch (const std::exception& e) {
                        fail(path + ".generators[" + std::to_string(k) + "]", "rational", e.what());
                        return std::nullopt;
                    }
                }
            }
            m.generator_images.push_back(std::move(a));
        }
        try {
            (void)MatrixRep::make(g, m.generator_images);
        } catch (const std::exception& e) {
            fail(path, "homomorphism", e.what());
            return std::nullopt;
        }
        return m;
    }
};

std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
    return line;
}

}  // namespace

WorkbenchConfig parse_config(const std::string& text) {
    WorkbenchConfig cfg;
    try {
        cfg.source = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError({{"", "syntax", e.what(), line_of(text, e.byte)}});
    }
    Parser ps;
    const Json& root = cfg.source;
    if (!root.is_object()) throw ConfigError({{"", "type", "top level must be an object", 1}});
    for (auto it = root.begin(); it != root.end(); ++it)
        if (it.key() != "group" && it.key() != "places" && it.key() != "targets" && it.key() != "options" &&
            it.key() != "label")
            ps.fail(it.key(), "unknown", "unknown top-level field");

    const Json opts = root.value("options", Json::object());
    cfg.options.seed = ps.get<std::uint64_t>(opts, "seed", "options").value_or(1);
    cfg.options.order_bound = ps.get<std::size_t>(opts, "order_bound", "options").value_or(kDefaultOrderBound);
    cfg.options.factor_bound = ps.get<unsigned long>(opts, "factor_bound", "options").value_or(1000000);
    if (auto ld = opts.find("lambda_defaults"); ld != opts.end()) {
        for (auto it = ld->begin(); it != ld->end(); ++it) {
            try {
                int v = it->get<int>();
                if (v != 1 && v != -1) throw InputError("must be +1 or -1");
                cfg.options.lambda_defaults[parse_reduction_type(it.key())] = v;
            } catch (const std::exception& e) {
                ps.fail("options.lambda_defaults." + it.key(), "lambda", e.what());
            }
        }
    }
    set_factor_bound(cfg.options.factor_bound);

    if (!root.contains("group")) ps.fail("group", "required", "missing field");
    else cfg.model.group = ps.group(root["group"], cfg.options);
    cfg.model.label = root.value("label", "");
    const Group& g = cfg.model.group;
    if (!g.valid()) throw ConfigError(ps.diags);

    const Json places = root.value("places", Json::array());
    if (!places.is_array()) ps.fail("places", "type", "expected a list");
    else
        for (std::size_t i = 0; i < places.size(); ++i)
            if (auto p = ps.place(g, places[i], "places[" + std::to_string(i) + "]", cfg.options))
                cfg.model.places.push_back(std::move(*p));

    const Json targets = root.value("targets", Json::array());
    if (!targets.is_array()) ps.fail("targets", "type", "expected a list");
    else
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const std::string path = "targets[" + std::to_string(i) + "]";
            const Json& tj = targets[i];
            if (!tj.is_object()) {
                ps.fail(path, "type", "expected an object");
                continue;
            }
            Target t;
            if (auto r = tj.find("rep"); r != tj.end()) {
                t.rep = ps.rep(*r, path + ".rep");
                if (t.rep) try {
                        (void)select_irreducible(g, *t.rep);
                    } catch (const InputError& e) {
                        ps.fail(path + ".rep", "representation", e.what());
                    }
            }
            t.theta = ps.get<std::string>(tj, "theta", path);
            if (t.theta) try {
                    (void)parse_burnside(g, *t.theta);
                } catch (const InputError& e) {
                    ps.fail(path + ".theta", "burnside", e.what());
                }
            t.field = ps.integer(tj, "field", path, false);
            if (t.field && (*t.field == 1 || !is_squarefree(*t.field)))
                ps.fail(path + ".field", "field", "must be a squarefree integer other than 1");
            if (auto mm = tj.find("matrix_model"); mm != tj.end())
                t.matrix_model = ps.matrix_model(g, *mm, path + ".matrix_model");
            cfg.targets.push_back(std::move(t));
        }
    if (!ps.diags.empty()) throw ConfigError(ps.diags);
    return cfg;
}

std::string resolve_config_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("KREL_CONFIG_DIR"); dir && fs::path(path).is_relative()) {
        fs::path p = fs::path(dir) / path;
        if (fs::exists(p)) return p.string();
    }
    throw ConfigError({{"", "file", "cannot open config '" + path + "'", std::nullopt}});
}

WorkbenchConfig load_config(const std::string& path) {
    std::ifstream in(resolve_config_path(path));
    if (!in) throw ConfigError({{"", "file", "cannot read config '" + path + "'", std::nullopt}});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace krel::cli
