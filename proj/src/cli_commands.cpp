#include "krel/cli.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace krel::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string str(const Rational& x) { return to_string(x); }
std::string str(const Integer& x) { return x.get_str(); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

const WorkbenchConfig& need_config(const CommandRequest& req) {
    if (!req.config) throw ConfigError({{"", "required", "command '" + req.command + "' needs --config", std::nullopt}});
    return *req.config;
}

Json terms_json(const BurnsideElt& theta) {
    Json a = Json::array();
    for (auto& [label, c] : theta.terms()) a.push_back({label, c});
    return a;
}

struct Job {
    std::optional<std::size_t> rep;  // irreducible index
    std::optional<BurnsideElt> theta;
    std::optional<Integer> field;
    const MatrixModel* matrix_model = nullptr;
};

// Targets from the command line override those in the config.
std::vector<Job> jobs(const CommandRequest& req, const Group& g) {
    std::vector<Job> out;
    auto make = [&](const std::optional<RepSelector>& rep, const std::optional<std::string>& theta,
                    const std::optional<Integer>& field, const MatrixModel* mm) {
        Job j;
        if (rep) j.rep = select_irreducible(g, *rep);
        if (theta) j.theta = parse_burnside(g, *theta);
        j.field = field;
        j.matrix_model = mm;
        out.push_back(std::move(j));
    };
    if (req.rep || req.theta || req.field) make(req.rep, req.theta, req.field, nullptr);
    else if (req.config)
        for (auto& t : req.config->targets) make(t.rep, t.theta, t.field, t.matrix_model ? &*t.matrix_model : nullptr);
    return out;
}

Group command_group(const CommandRequest& req) { return need_config(req).model.group; }

std::string rep_name(const Group& g, std::size_t a) {
    return character_table(g).labels[a] + " (" + rational_irreducible_name(g, rational_index_of(g, a)) + ")";
}

std::vector<Integer> rep_fields(const Group& g, std::size_t a) {
    return char_field_data(character_table(g).irr[a]).quadratic_subfields;
}

// ---------------------------------------------------------------- group info

Report group_info(const CommandRequest& req) {
    const Group g = command_group(req);
    const auto& t = character_table(g);
    Report rep;
    Json r;
    r["name"] = g.name();
    r["order"] = g.order();
    r["degree"] = g.degree();
    r["exponent"] = g.exponent();
    Json gens = Json::array();
    for (auto x : g.generators()) gens.push_back(format_cycles(g.element(x)));
    r["generators"] = gens;
    Json classes = Json::array();
    for (std::size_t c = 0; c < g.classes().size(); ++c) {
        const auto& cc = g.classes()[c];
        classes.push_back({{"index", c},
                           {"representative", format_cycles(g.element(cc.rep))},
                           {"size", cc.elements.size()},
                           {"order", cc.order}});
    }
    r["classes"] = classes;
    Table st{"subgroup classes", {"label", "order", "cyclic", "normal", "conjugates"}, {}};
    Json subs = Json::array();
    for (auto& s : g.subgroup_classes()) {
        subs.push_back({{"label", s.label},
                        {"order", s.order},
                        {"cyclic", s.is_cyclic},
                        {"normal", s.is_normal},
                        {"conjugates", s.conjugates.size()}});
        st.rows.push_back({s.label, std::to_string(s.order), yes_no(s.is_cyclic), yes_no(s.is_normal),
                           std::to_string(s.conjugates.size())});
    }
    r["subgroups"] = subs;
    Table ct{"characters", {"label", "name", "degree", "indicator", "quadratic subfields", "values"}, {}};
    Json chars = Json::array();
    for (std::size_t a = 0; a < t.size(); ++a) {
        Json vals = Json::array();
        std::string vs;
        for (std::size_t c = 0; c < g.classes().size(); ++c) {
            vals.push_back(t.irr[a][c].str());
            vs += (c ? ", " : "") + t.irr[a][c].str();
        }
        Json fields = Json::array();
        std::string fs;
        for (auto& d : rep_fields(g, a)) {
            fields.push_back(str(d));
            fs += (fs.empty() ? "" : " ") + str(d);
        }
        const std::size_t ri = rational_index_of(g, a);
        const int ind = fs_indicator(t.irr[a]);
        chars.push_back({{"label", t.labels[a]},
                         {"name", rational_irreducible_name(g, ri)},
                         {"rational_index", ri},
                         {"degree", t.degree(a)},
                         {"indicator", ind},
                         {"values", vals},
                         {"quadratic_subfields", fields}});
        ct.rows.push_back({t.labels[a], rational_irreducible_name(g, ri), std::to_string(t.degree(a)),
                           std::to_string(ind), fs.empty() ? "-" : fs, vs});
    }
    r["characters"] = chars;
    rep.document["results"] = r;
    rep.tables = {ct, st};
    return rep;
}

// ---------------------------------------------------------------- relations

Report relations_find(const CommandRequest& req) {
    const Group g = command_group(req);
    Report rep;
    Json out = Json::array();
    Table t{"norm relations", {"rep", "m", "relation"}, {}};
    for (auto& j : jobs(req, g)) {
        if (!j.rep) throw InputError("relations find needs a representation (--rep or targets[].rep)");
        auto nr = find_norm_relation(g, *j.rep);
        out.push_back({{"rep", character_table(g).labels[*j.rep]},
                       {"name", rational_irreducible_name(g, rational_index_of(g, *j.rep))},
                       {"m", nr.multiple},
                       {"theta", nr.theta.str()},
                       {"terms", terms_json(nr.theta)}});
        t.rows.push_back({rep_name(g, *j.rep), std::to_string(nr.multiple), nr.theta.str()});
    }
    rep.document["results"] = out;
    rep.tables = {t};
    return rep;
}

Report relations_basis(const CommandRequest& req) {
    const Group g = command_group(req);
    std::vector<std::optional<Integer>> fields;
    for (auto& j : jobs(req, g)) fields.push_back(j.field);
    if (fields.empty()) fields.push_back(std::nullopt);
    Report rep;
    Json out = Json::array();
    Table t{"relation lattices", {"field", "index", "relation"}, {}};
    for (auto& d : fields) {
        auto lat = d ? k_relation_basis(g, *d) : brauer_basis(g);
        Json basis = Json::array();
        for (std::size_t i = 0; i < lat.basis.size(); ++i) {
            basis.push_back({{"theta", lat.basis[i].str()}, {"terms", terms_json(lat.basis[i])}});
            t.rows.push_back({d ? str(*d) : "brauer", std::to_string(i), lat.basis[i].str()});
        }
        out.push_back({{"field", d ? Json(str(*d)) : Json()}, {"rank", lat.rank()}, {"basis", basis}});
    }
    rep.document["results"] = out;
    rep.tables = {t};
    return rep;
}

// ---------------------------------------------------------------- regulator constants

Report regconst(const CommandRequest& req) {
    const Group g = command_group(req);
    const std::uint64_t seed = req.seed.value_or(need_config(req).options.seed);
    Report rep;
    Json out = Json::array();
    Table t{"regulator constants", {"relation", "field", "tau", "value", "square class", "norm"}, {}};
    Table pt{"pairing independence", {"relation", "field", "seed a", "seed b", "value a", "value b", "equivalent"}, {}};
    for (auto& j : jobs(req, g)) {
        BurnsideElt theta = j.theta ? *j.theta : BurnsideElt();
        if (!j.theta) {
            if (!j.rep) throw InputError("regconst needs a relation or a representation");
            theta = find_norm_relation(g, *j.rep).theta;
        }
        Integer d;
        if (j.field) d = *j.field;
        else if (j.rep && !rep_fields(g, *j.rep).empty()) d = rep_fields(g, *j.rep).front();
        else throw InputError("regconst needs a quadratic field (--field or targets[].field)");
        if (!is_k_relation(theta, d))
            throw InputError("relation " + theta.str() + " is not a K-relation for Q(sqrt " + str(d) + ")");
        Json entry;
        entry["theta"] = theta.str();
        entry["field"] = str(d);
        Json values = Json::array();
        for (std::size_t i = 0; i < rational_irreducibles(g).size(); ++i) {
            const std::string name = rational_irreducible_name(g, i);
            try {
                auto v = reg_const_any(theta, i, d);
                values.push_back({{"tau", name},
                                  {"value", str(v.raw)},
                                  {"square_class", v.square_class.str()},
                                  {"is_norm", v.is_norm()}});
                t.rows.push_back({theta.str(), str(d), name, str(v.raw), v.square_class.str(), yes_no(v.is_norm())});
            } catch (const NeedsMatrixModel&) {
                values.push_back({{"tau", name}, {"needs_matrix_model", true}});
                t.rows.push_back({theta.str(), str(d), name, "-", "-", "needs matrix model"});
            }
        }
        entry["values"] = values;
        if (j.matrix_model) {
            auto m = MatrixRep::make(g, j.matrix_model->generator_images);
            auto a = reg_const_matrix(theta, m, seed, d);
            auto b = reg_const_matrix(theta, m, seed + 1, d);
            const bool eq = a.equivalent(b);
            entry["matrix_model"] = {{"dimension", m.dim},
                                     {"seeds", {seed, seed + 1}},
                                     {"values", {str(a.raw), str(b.raw)}},
                                     {"square_classes", {a.square_class.str(), b.square_class.str()}},
                                     {"equivalent", eq}};
            pt.rows.push_back({theta.str(), str(d), std::to_string(seed), std::to_string(seed + 1), str(a.raw),
                               str(b.raw), yes_no(eq)});
        }
        out.push_back(entry);
    }
    rep.document["results"] = out;
    rep.tables = {t};
    if (!pt.rows.empty()) rep.tables.push_back(pt);
    return rep;
}

// ---------------------------------------------------------------- root numbers

const CurveLocalModel& need_model(const CommandRequest& req) {
    const auto& cfg = need_config(req);
    if (cfg.model.places.empty())
        throw ConfigError({{"places", "required", "command '" + req.command + "' needs places", std::nullopt}});
    validate_model(cfg.model);
    return cfg.model;
}

Report roots(const CommandRequest& req) {
    const auto& model = need_model(req);
    const Group& g = model.group;
    const auto& t = character_table(g);
    Report rep;
    Json out = Json::array();
    Table tab{"root numbers", {"label", "name", "indicator", "u", "sign", "local u"}, {}};
    for (std::size_t a = 0; a < t.size(); ++a) {
        const int ind = fs_indicator(t.irr[a]);
        Json entry{{"label", t.labels[a]},
                   {"name", rational_irreducible_name(g, rational_index_of(g, a))},
                   {"indicator", ind}};
        if (ind != 1) {
            entry["orthogonal"] = false;
            tab.rows.push_back({t.labels[a], entry["name"], std::to_string(ind), "-", "-", "-"});
            out.push_back(entry);
            continue;
        }
        auto rs = global_root_sign(model, t.irr[a]);
        Json local = Json::object();
        std::string ls;
        for (auto& p : model.places) {
            const int u = local_u_contribution(g, p, t.irr[a]);
            local[p.name] = u;
            ls += (ls.empty() ? "" : " ") + p.name + ":" + std::to_string(u);
        }
        entry["orthogonal"] = true;
        entry["u"] = rs.u;
        entry["sign"] = rs.sign;
        entry["local_u"] = local;
        tab.rows.push_back({t.labels[a], entry["name"], std::to_string(ind), std::to_string(rs.u),
                            rs.sign > 0 ? "+1" : "-1", ls});
        out.push_back(entry);
    }
    rep.document["results"] = {{"characters", out},
                               {"split_places", model.split_count()},
                               {"archimedean_places", model.archimedean_count()}};
    rep.tables = {tab};
    return rep;
}

// ---------------------------------------------------------------- norm relations test

Report nrt(const CommandRequest& req) {
    const auto& model = need_model(req);
    const Group& g = model.group;
    Report rep;
    Json out = Json::array();
    Table t{"norm relations test", {"rep", "m", "relation", "product", "verdicts", "prediction", "constraints"}, {}};
    for (auto& j : jobs(req, g)) {
        if (!j.rep) continue;
        auto r = nrt_run(model, *j.rep);
        Json verdicts = Json::array();
        std::string vs;
        for (auto& v : r.verdicts) {
            verdicts.push_back({{"field", str(v.field)}, {"is_norm", v.is_norm}});
            vs += (vs.empty() ? "" : " ") + str(v.field) + ":" + (v.is_norm ? "norm" : "not a norm");
        }
        if (r.square_verdict) vs += (vs.empty() ? "" : " ") + std::string("square:") + yes_no(*r.square_verdict);
        Json cons = Json::array();
        std::string cs;
        for (auto& c : r.constraints) {
            cons.push_back({{"field", str(c.field)}, {"characters", c.characters}, {"parity", c.parity}, {"text", c.str()}});
            cs += (cs.empty() ? "" : "; ") + c.str();
        }
        out.push_back({{"rep", r.rho_label},
                       {"m", r.m},
                       {"theta", r.theta.str()},
                       {"product", str(r.product)},
                       {"verdicts", verdicts},
                       {"square_verdict", r.square_verdict ? Json(*r.square_verdict) : Json()},
                       {"prediction", r.prediction},
                       {"prediction_via", r.prediction_via},
                       {"constraints", cons},
                       {"warnings", r.warnings}});
        t.rows.push_back({r.rho_label, std::to_string(r.m), r.theta.str(), str(r.product), vs, yes_no(r.prediction),
                          cs.empty() ? "-" : cs});
    }
    if (out.empty()) throw InputError("nrt run needs at least one representation (--rep or targets[].rep)");
    rep.document["results"] = out;
    rep.tables = {t};
    return rep;
}

Report theorem_main(const CommandRequest& req) {
    const auto& model = need_model(req);
    const Group& g = model.group;
    Report rep;
    Json out = Json::array();
    Table t{"theorem check", {"relation", "field", "lhs", "rhs", "congruent"}, {}};
    for (auto& j : jobs(req, g)) {
        BurnsideElt theta;
        std::vector<Integer> fields;
        if (j.theta) theta = *j.theta;
        else if (j.rep) theta = find_norm_relation(g, *j.rep).theta;
        else throw InputError("check theorem-main needs a relation or a representation");
        if (j.field) fields = {*j.field};
        else if (j.rep) fields = rep_fields(g, *j.rep);
        if (fields.empty()) throw InputError("no quadratic field for relation " + theta.str());
        for (auto& d : fields) {
            auto r = theorem_main_check(model, theta, d);
            Json terms = Json::array();
            for (auto& term : r.terms) {
                Json tj{{"tau", term.label}, {"u", term.u}};
                if (term.value) tj["value"] = str(term.value->raw);
                terms.push_back(tj);
            }
            out.push_back({{"theta", theta.str()},
                           {"field", str(d)},
                           {"lhs", str(r.lhs)},
                           {"rhs", str(r.rhs)},
                           {"congruent", r.congruent},
                           {"terms", terms}});
            t.rows.push_back({theta.str(), str(d), str(r.lhs), str(r.rhs), yes_no(r.congruent)});
        }
    }
    rep.document["results"] = out;
    rep.tables = {t};
    return rep;
}

// ---------------------------------------------------------------- appendix verification

template <class In, class Fn>
auto parallel_map(const std::vector<In>& in, Fn fn) {
    using Out = decltype(fn(in.front()));
    std::vector<Out> out(in.size());
    std::atomic<std::size_t> next{0};
    const std::size_t n_threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < in.size(); i = next++) out[i] = fn(in[i]);
        });
    for (auto& th : pool) th.join();
    return out;
}

Report verify_appendix(const CommandRequest& req) {
    std::vector<AppendixCase> cases;
    if (req.cases.empty() || std::find(req.cases.begin(), req.cases.end(), "all") != req.cases.end())
        cases = {AppendixCase::C2, AppendixCase::D2, AppendixCase::M2};
    else
        for (auto& c : req.cases) cases.push_back(parse_appendix_case(c));
    std::vector<long> es = req.e_values.empty() ? std::vector<long>{2, 3, 4, 6} : req.e_values;
    for (long e : es)
        if (e != 2 && e != 3 && e != 4 && e != 6) throw InputError("--e values must be among 2, 3, 4, 6");
    if (req.k_max < 0 || req.k_max > 3) throw InputError("--k-max must be between 0 and 3");

    std::vector<TamagawaConfig> configs;
    for (auto c : cases)
        for (auto& cfg : tamagawa_configs(c, es, req.k_max)) configs.push_back(cfg);
    auto results = parallel_map(configs, [](const TamagawaConfig& c) { return appendix_tamagawa_check(c); });

    Report rep;
    Table t{"tamagawa matrix", {"case", "e", "k", "sign", "configuration", "pass", "diagnostic"}, {}};
    Json rows = Json::array();
    std::size_t failures = 0;
    for (auto& r : results) {
        failures += !r.pass;
        rows.push_back({{"case", to_string(r.config.which)},
                        {"configuration", r.config.str()},
                        {"pass", r.pass},
                        {"fields", r.fields.size()},
                        {"diagnostic", r.diagnostic}});
        t.rows.push_back({to_string(r.config.which), std::to_string(r.config.spec.e), std::to_string(r.config.spec.k),
                          std::to_string(r.config.spec.sign), r.config.str(), r.pass ? "pass" : "FAIL", r.diagnostic});
    }
    Json results_doc;
    results_doc["tamagawa"] = rows;
    Json summary{{"tamagawa_configurations", results.size()}, {"tamagawa_failures", failures}};
    rep.tables = {t};

    if (req.tables) {
        auto runs = differential_runs(es, 100);
        auto diffs = parallel_map(runs, [&](const DifferentialRun& r) {
            return appendix_differential_check(r.e_frak, r.delta, r.l, r.q, req.r_max);
        });
        Table dt{"differential term", {"e", "delta", "l", "q", "case", "n values", "norms", "tables", "printed mismatches"}, {}};
        Json drows = Json::array();
        std::size_t dfail = 0, printed = 0;
        for (auto& d : diffs) {
            bool norms = true, tables = true;
            for (auto& row : d.rows) {
                norms = norms && row.norms_ok;
                tables = tables && row.table_ok;
            }
            dfail += !d.pass;
            printed += d.printed_mismatches;
            drows.push_back({{"e", d.e_frak},
                             {"delta", d.delta},
                             {"l", d.l},
                             {"q", str(d.q)},
                             {"case", d.case_2d ? "2D" : "2C"},
                             {"rows", d.rows.size()},
                             {"norms_ok", norms},
                             {"tables_ok", tables},
                             {"printed_table_mismatches", d.printed_mismatches},
                             {"pass", d.pass}});
            dt.rows.push_back({std::to_string(d.e_frak), std::to_string(d.delta), std::to_string(d.l), str(d.q),
                               d.case_2d ? "2D" : "2C", std::to_string(d.rows.size()), norms ? "ok" : "FAIL",
                               tables ? "ok" : "FAIL", std::to_string(d.printed_mismatches)});
        }
        results_doc["differential"] = drows;
        results_doc["table_errata"] = table_errata();
        summary["differential_runs"] = diffs.size();
        summary["differential_failures"] = dfail;
        summary["printed_table_mismatches"] = printed;
        rep.tables.push_back(dt);
    }
    results_doc["summary"] = summary;
    rep.document["results"] = results_doc;
    return rep;
}

}  // namespace

Report run_command(const CommandRequest& req) {
    if (req.config) set_factor_bound(req.config->options.factor_bound);
    Report rep;
    if (req.command == "group info") rep = group_info(req);
    else if (req.command == "relations find") rep = relations_find(req);
    else if (req.command == "relations basis") rep = relations_basis(req);
    else if (req.command == "regconst") rep = regconst(req);
    else if (req.command == "roots") rep = roots(req);
    else if (req.command == "nrt run") rep = nrt(req);
    else if (req.command == "check theorem-main") rep = theorem_main(req);
    else if (req.command == "verify appendix") rep = verify_appendix(req);
    else throw InputError("unknown command '" + req.command + "'");
    rep.document["command"] = req.command;
    rep.document["inputs_digest"] = inputs_digest(req);
    if (req.config && !req.config->model.label.empty()) rep.document["label"] = req.config->model.label;
    rep.document["versions"] = {{"krel", kVersion}, {"gmp", gmp_version}, {"format", 1}};
    return rep;
}

}  // namespace krel::cli
