#include "rht/json_io.hpp"
#include "rht/corpus.hpp"

#include <fstream>
#include <sstream>

namespace rht {

using dsl::Document;

ojson json_vec(const Vec& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

ojson json_matrix(const Matrix& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r) rows.push_back(json_vec(m.row_vec(r)));
    return rows;
}

namespace {

ojson json_basis(const Subspace& s) {
    ojson b = ojson::array();
    for (const auto& row : s.basis_rows()) b.push_back(json_vec(row));
    return b;
}

const char* kind_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::Exact: return "Exact";
    case VerdictKind::LowerBound: return "LowerBound";
    default: return "Unknown";
    }
}

ojson json_build(const TrivialBuild& b) {
    ojson fiber_d = ojson::object();
    const auto& talg = b.ks.total->algebra();
    for (int idx : b.ks.fiber_gens)
        fiber_d[talg->gen(idx).name] = b.ks.total->d_gen(idx).str();
    ojson fv = ojson::object();
    const auto& salg = b.F.source()->algebra();
    for (int i = 0; i < salg->size(); ++i) fv[salg->gen(i).name] = b.F.value(i).str();
    ojson sv = ojson::object();
    for (int idx : b.ks.fiber_gens)
        if (!b.s.value(idx).is_zero()) sv[talg->gen(idx).name] = b.s.value(idx).str();
    return {{"fiber_d", fiber_d}, {"F", fv}, {"section", sv}};
}

} // namespace

ojson json_verdict(const Verdict& v) {
    ojson out = {{"kind", kind_name(v.kind)}};
    if (v.space) {
        out["dim"] = v.space->dim();
        out["basis"] = json_basis(*v.space);
    }
    return out;
}

ojson json_status(const SubgroupStatus& st) {
    ojson out;
    out["n"] = st.n;
    out["pi_rank"] = st.pi_rank;
    out["axes"] = st.axes;
    out["G"] = {{"dim", st.G.dim()}, {"basis", json_basis(st.G)}};
    out["gcal"] = json_verdict(st.gcal);
    out["tcal"] = json_verdict(st.tcal);
    out["scal"] = json_verdict(st.scal);
    ojson ev = ojson::array();
    for (const auto& e : st.evidence)
        ev.push_back({{"kind", e.kind}, {"tag", e.tag}, {"subject", e.subject}, {"detail", e.detail}});
    out["evidence"] = ev;
    ojson certs = ojson::array();
    for (const auto& c : st.certificates) {
        ojson j = json_build(c.build);
        j["subject"] = c.subject;
        j["axis"] = c.axis;
        certs.push_back(j);
    }
    out["certificates"] = certs;
    ojson obs = ojson::array();
    for (const auto& o : st.obstructions)
        obs.push_back({{"subject", o.subject},
                       {"axis", o.axis},
                       {"witness",
                        {{"gen", o.witness.gen},
                         {"param", o.witness.param},
                         {"class", o.witness.cls.str()},
                         {"degree", o.witness.degree},
                         {"text", o.witness.text}}}});
    out["obstructions"] = obs;
    return out;
}

ojson json_check(const DiagramCheck& c) {
    return {{"f_square", c.f_square}, {"a_square", c.a_square}, {"section", c.section},
            {"wiring", c.wiring},     {"ok", c.ok()}};
}

namespace {

// ---- argument handling ----

struct Cli {
    std::string command;
    std::map<std::string, std::vector<std::string>> opts;
    std::vector<std::string> positional;

    bool flag(const std::string& name) const { return opts.count(name) > 0; }
    std::optional<std::string> one(const std::string& name) const {
        auto it = opts.find(name);
        if (it == opts.end()) return std::nullopt;
        if (it->second.size() > 1) throw validation_error(name + " given more than once");
        return it->second.front();
    }
    std::string need(const std::string& name) const {
        auto v = one(name);
        if (!v) throw validation_error("missing required option " + name);
        return *v;
    }
    std::vector<std::string> all(const std::string& name) const {
        auto it = opts.find(name);
        return it == opts.end() ? std::vector<std::string>{} : it->second;
    }
};

const std::vector<std::string> value_opts = {
    "--builtin", "--map",    "--twist",  "--ks",         "--projection", "--certificate",
    "--name",    "--degree", "--degrees", "--cap",       "--sphere",     "--class",
    "--set",     "--max-params", "--existential"};
const std::vector<std::string> flag_opts = {"--section-unknowns", "--no-search"};

bool is_listed(const std::vector<std::string>& list, const std::string& s) {
    return std::find(list.begin(), list.end(), s) != list.end();
}

Cli parse_args(const std::vector<std::string>& args) {
    if (args.empty()) throw validation_error("no command given (try 'rht corpus')");
    Cli c;
    c.command = args[0];
    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) {
            c.positional.push_back(a);
            continue;
        }
        std::string name = a, value;
        bool has_value = false;
        if (auto eq = a.find('='); eq != std::string::npos) {
            name = a.substr(0, eq);
            value = a.substr(eq + 1);
            has_value = true;
        }
        if (is_listed(flag_opts, name)) {
            if (has_value) throw validation_error(name + " takes no value");
            c.opts[name];
            continue;
        }
        if (!is_listed(value_opts, name)) throw validation_error("unknown option " + name);
        if (!has_value) {
            if (i + 1 >= args.size()) throw validation_error(name + " needs a value");
            value = args[++i];
        }
        c.opts[name].push_back(value);
    }
    return c;
}

// ---- input documents ----

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot read document '" + path +
                                    "' (not a corpus key or a readable file)");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Document load_doc(const std::string& ref) {
    if (const auto* e = corpus::find(ref)) return dsl::parse_document(e->text);
    return dsl::parse_document(slurp(ref));
}

// one document per command, from --builtin, a named doc option, or a positional path
Document doc_of(const Cli& c, const std::vector<std::string>& doc_opts) {
    std::vector<std::string> refs = c.all("--builtin");
    for (const auto& o : doc_opts)
        for (const auto& r : c.all(o)) refs.push_back(r);
    for (const auto& p : c.positional) refs.push_back(p);
    if (refs.empty())
        throw validation_error("no input document (use --builtin KEY or a document path)");
    if (refs.size() > 1) throw validation_error("more than one input document given");
    return load_doc(refs[0]);
}

std::pair<int, int> parse_range(const std::string& s) {
    auto bad = [&] { return validation_error("bad degree range '" + s + "' (want N or A..B)"); };
    int a = 0, b = 0;
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            a = b = std::stoi(s);
        } else {
            a = std::stoi(s.substr(0, dots));
            b = std::stoi(s.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw bad();
    }
    if (a < 0 || b < a || b - a > 64) throw bad();
    return {a, b};
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw validation_error("bad " + what + " '" + s + "'");
    }
}

std::map<std::string, Rational> bindings_of(const Cli& c) {
    std::map<std::string, Rational> out;
    for (const auto& s : c.all("--set")) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw validation_error("bad --set '" + s + "' (want name=rational)");
        auto v = parse_rational(s.substr(eq + 1));
        if (!v) throw validation_error("bad --set value in '" + s + "'");
        out[s.substr(0, eq)] = *v;
    }
    return out;
}

// --class w4=1 --class w7=c ... over the given source model
Functional functional_of(const Cli& c, const CdgaPtr& source, std::optional<int> force_n) {
    auto pairs = c.all("--class");
    if (pairs.empty()) throw validation_error("missing --class <generator>=<scalar>");
    Functional a;
    a.n = force_n.value_or(0);
    const auto& alg = source->algebra();
    for (const auto& s : pairs) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw validation_error("bad --class '" + s + "' (want generator=scalar)");
        std::string name = s.substr(0, eq);
        int idx = -1;
        for (int i = 0; i < alg->size(); ++i)
            if (alg->gen(i).name == name) idx = i;
        if (idx < 0) throw validation_error("--class names no generator '" + name + "'");
        int deg = alg->gen(idx).degree;
        if (a.n == 0) a.n = deg;
        if (deg != a.n)
            throw validation_error("--class generator '" + name + "' has degree " +
                                   std::to_string(deg) + ", expected " + std::to_string(a.n));
        a.coeffs[name] = dsl::parse_scalar(s.substr(eq + 1));
    }
    return a;
}

MorphismPtr phi_of(const MapModel& m) {
    if (m.f) return std::make_shared<const Morphism>(*m.f);
    return m.ks->incl;
}

// the KS extension a document denotes: a twist block (parameters bound via
// --set), a plain ks block, or the extension a certificate rebuilds
KSExtension extension_of(const Document& doc, const std::map<std::string, Rational>& bindings) {
    auto tws = doc.twists();
    if (tws.size() > 1) throw validation_error("more than one twist block in the document");
    if (tws.size() == 1) return twist_to_extension(dsl::concrete_twist(*tws[0], bindings));
    auto kss = doc.extensions();
    if (kss.size() == 1) return kss[0]->ks;
    auto certs = doc.certificates();
    if (certs.size() == 1) return dsl::materialize(*certs[0], doc, bindings).ks;
    throw validation_error("the document has no twist, ks, or certificate block");
}

ojson eval_group_json(const char* command, const AlgebraPtr& alg, const EvalSubgroup& g, int n) {
    ojson axes = ojson::array();
    for (int i : g.gens) axes.push_back(alg->gen(i).name);
    return {{"command", command}, {"n", n},          {"pi_rank", g.pi_rank},
            {"axes", axes},       {"dim", g.span.dim()}, {"basis", json_basis(g.span)}};
}

// ---- commands ----

ojson cmd_corpus(const Cli&) {
    ojson list = ojson::array();
    for (const auto& e : corpus::entries()) list.push_back({{"key", e.key}, {"title", e.title}});
    return {{"command", "corpus"}, {"entries", list}};
}

ojson cmd_print(const Cli& c) {
    Document doc = doc_of(c, {});
    return {{"command", "print"}, {"document", dsl::print_document(doc)}};
}

ojson cmd_cohomology(const Cli& c) {
    Document doc = doc_of(c, {});
    CdgaPtr M = dsl::select_model(doc, c.one("--name").value_or(""));
    auto [a, b] = parse_range(c.need("--degree"));
    ojson dims = ojson::array();
    for (int k = a; k <= b; ++k) {
        auto H = cohomology(M, k);
        ojson reps = ojson::array();
        for (const auto& r : H.reps) reps.push_back(r.str());
        dims.push_back({{"n", k}, {"dim", H.dim}, {"basis", reps}});
    }
    return {{"command", "cohomology"}, {"degrees", {a, b}}, {"dims", dims}};
}

ojson cmd_gottlieb(const Cli& c) {
    Document doc = doc_of(c, {});
    CdgaPtr M = dsl::select_model(doc, c.one("--name").value_or(""));
    int n = parse_int(c.need("--degree"), "degree");
    auto g = gottlieb_group(M, n);
    return eval_group_json("gottlieb", M->algebra(), g, n);
}

ojson cmd_evsub(const Cli& c) {
    Document doc = doc_of(c, {"--map"});
    MapModel m = dsl::to_map_model(doc);
    int n = parse_int(c.need("--degree"), "degree");
    auto phi = phi_of(m);
    auto g = evaluation_subgroup(phi, n);
    return eval_group_json("evsub", phi->source()->algebra(), g, n);
}

ojson cmd_derhom(const Cli& c) {
    Document doc = doc_of(c, {});
    CdgaPtr X = dsl::select_model(doc, c.one("--name").value_or(""));
    int n = parse_int(c.need("--degree"), "degree");
    auto H = der_homology(std::make_shared<const Morphism>(Morphism::identity(X)), n);
    ojson reps = ojson::array();
    for (const auto& r : H.reps) reps.push_back(r.str());
    return {{"command", "derhom"}, {"n", n}, {"dim", H.dim}, {"classes", reps}};
}

ojson cmd_rho(const Cli& c) {
    Document doc = doc_of(c, {});
    CdgaPtr X = dsl::select_model(doc, c.one("--name").value_or(""));
    int n = parse_int(c.need("--sphere"), "sphere degree");
    int cap = parse_int(c.need("--cap"), "cap");
    RhoMap r = rho(X, n, cap);
    ojson classes = ojson::array();
    for (size_t j = 0; j < r.H.reps.size(); ++j) {
        Vec e(r.H.dim, Rational(0));
        e[j] = 1;
        ojson action = ojson::object();
        for (const auto& [k, m] : r.action[j])
            if (m.rows() > 0 && m.cols() > 0) action[std::to_string(k)] = json_matrix(m);
        classes.push_back({{"rep", r.H.reps[j].str()},
                           {"acts_zero", r.class_acts_zero(e)},
                           {"action", action}});
    }
    return {{"command", "rho"}, {"n", n},        {"cap", cap},
            {"dim", r.H.dim},   {"classes", classes}, {"is_zero", r.is_zero()}};
}

ojson cmd_tncz(const Cli& c) {
    Document doc = doc_of(c, {"--twist", "--ks"});
    KSExtension ks = extension_of(doc, bindings_of(c));
    int n = ks.base->algebra()->gen(0).degree;
    int cap = parse_int(c.need("--cap"), "cap");
    bool triv = is_rationally_trivial(ks);
    bool t = is_tncz(ks, cap);
    auto to_json = [](const std::vector<int>& v) { return ojson(v); };
    return {{"command", "tncz"},
            {"n", n},
            {"cap", cap},
            {"rationally_trivial", triv},
            {"tncz", t},
            {"fiber_dims", to_json(cohomology_dims(ks.fiber, cap))},
            {"total_dims", to_json(cohomology_dims(ks.total, cap))}};
}

ojson cmd_trivial(const Cli& c) {
    Document doc = doc_of(c, {"--ks", "--twist"});
    KSExtension ks = extension_of(doc, bindings_of(c));
    auto cc = classifying_class(ks);
    return {{"command", "trivial"},
            {"rationally_trivial", cc.zero},
            {"class",
             {{"zero", cc.zero},
              {"theta", cc.theta.str()},
              {"coords", json_vec(cc.coords)},
              {"h_dim", cc.H.dim}}}};
}

ojson cmd_section(const Cli& c) {
    Document doc = doc_of(c, {"--ks", "--twist"});
    KSExtension ks = extension_of(doc, bindings_of(c));
    auto r = find_section_over_sphere(ks);
    if (!r) return {{"command", "section"}, {"found", false}};
    ojson values = ojson::object();
    const auto& talg = ks.total->algebra();
    for (int idx : ks.fiber_gens)
        if (!r->value(idx).is_zero()) values[talg->gen(idx).name] = r->value(idx).str();
    return {{"command", "section"}, {"found", true}, {"values", values}};
}

ojson cmd_build(const Cli& c) {
    Document doc = doc_of(c, {"--projection", "--map"});
    const auto& fb = dsl::only_morphism(doc);
    Functional a = functional_of(c, fb.map->source(), std::nullopt);
    auto b = build_trivial_fibration(*fb.map, a);
    if (!b) return {{"command", "build"}, {"found", false}, {"n", a.n}};
    auto chk = verify_diagram(b->ks, b->s, b->F, *fb.map, a);
    ojson out = {{"command", "build"}, {"found", true}, {"n", a.n}, {"verify", json_check(chk)}};
    if (a.n >= 2 && is_minimal(b->ks.fiber))
        out["classifying_class_zero"] = classifying_class(b->ks).zero;
    out["document"] = dsl::print_document(dsl::certificate_document(*fb.map, *b, a));
    return out;
}

ojson cmd_lift(const Cli& c) {
    Document doc = doc_of(c, {"--map"});
    MapModel m = dsl::to_map_model(doc);
    if (!m.f) throw validation_error("lift needs a morphism presentation of the map");
    const Morphism& f = *m.f;
    auto bindings = bindings_of(c);

    std::optional<PSphereTwist> twist;
    if (auto tref = c.one("--twist")) {
        Document tdoc = load_doc(*tref);
        twist = dsl::retarget(dsl::only_twist(tdoc).twist, f.target());
    } else if (doc.twists().size() == 1) {
        twist = dsl::retarget(doc.twists()[0]->twist, f.target());
    } else if (doc.twists().size() > 1) {
        throw validation_error("more than one twist block; pick one with --twist");
    }

    Functional a = functional_of(c, f.source(), twist ? std::optional<int>(twist->n) : std::nullopt);
    if (!twist) {
        PDerivation zero;
        zero.phi = std::make_shared<const Morphism>(Morphism::identity(f.target()));
        zero.n = a.n - 1;
        zero.values.assign(f.target()->algebra()->size(), PPoly(f.target()->algebra()));
        twist = PSphereTwist{f.target(), a.n, std::move(zero)};
    }
    for (auto& v : twist->theta.values) v = substitute(v, bindings);

    LiftOptions opt;
    if (auto mp = c.one("--max-params")) opt.max_parameters = parse_int(*mp, "--max-params");
    opt.existential = c.all("--existential");
    opt.section_unknowns = c.flag("--section-unknowns");

    LiftOutcome res = solve_lift_degreewise(f, *twist, a, opt);
    ojson out = {{"command", "lift"}, {"n", a.n}};
    switch (res.kind) {
    case LiftOutcome::Kind::Found: out["kind"] = "Found"; break;
    case LiftOutcome::Kind::Obstructed: out["kind"] = "Obstructed"; break;
    default: out["kind"] = "Undetermined"; break;
    }
    if (res.kind == LiftOutcome::Kind::Found) {
        ojson fv = ojson::object();
        const auto& salg = f.source()->algebra();
        for (int i = 0; i < salg->size(); ++i) fv[salg->gen(i).name] = res.values[i].str();
        out["F"] = fv;
        ojson pinned = ojson::object();
        for (const auto& [k, v] : res.pinned) pinned[k] = v.str();
        out["pinned"] = pinned;
        ojson sect = ojson::object();
        for (const auto& [k, v] : res.section_values) sect[k] = v.str();
        out["section"] = sect;
    }
    if (res.witness) {
        out["witness"] = {{"gen", res.witness->gen},
                          {"param", res.witness->param},
                          {"class", res.witness->cls.str()},
                          {"degree", res.witness->degree},
                          {"text", res.witness->text}};
    }
    if (!res.reason.empty()) out["reason"] = res.reason;
    return out;
}

ojson cmd_verify(const Cli& c) {
    Document doc = doc_of(c, {"--certificate"});
    const auto& cb = dsl::only_certificate(doc);
    const auto* fb = doc.morphism(cb.map);
    if (!fb) throw validation_error("certificate names missing morphism '" + cb.map + "'");
    auto mat = dsl::materialize(cb, doc, bindings_of(c));
    auto chk = verify_diagram(mat.ks, mat.r, mat.F, *fb->map, mat.a);
    ojson out = {{"command", "verify"}, {"n", cb.n}, {"ok", chk.ok()}};
    out.update(json_check(chk));
    out["detail"] = chk.describe();
    return out;
}

ojson cmd_classify(const Cli& c) {
    Document doc = doc_of(c, {"--map"});
    MapModel m = dsl::to_map_model(doc);
    ClassifyOptions opt;
    std::optional<std::pair<int, int>> range;
    if (auto d = c.one("--degrees")) range = parse_range(*d);
    if (range)
        for (int k = range->first; k <= range->second; ++k) opt.degrees.push_back(k);
    if (auto mp = c.one("--max-params")) opt.max_parameters = parse_int(*mp, "--max-params");
    if (auto cap = c.one("--cap")) opt.cohomology_cap = parse_int(*cap, "cap");
    if (c.flag("--no-search")) opt.run_searches = false;
    auto statuses = classify(m, opt);
    ojson reports = ojson::array();
    for (const auto& st : statuses) reports.push_back(json_status(st));
    ojson out = {{"command", "classify"}};
    if (range) out["degrees"] = {range->first, range->second};
    out["reports"] = reports;
    return out;
}

ojson dispatch(const std::vector<std::string>& args) {
    Cli c = parse_args(args);
    if (c.command == "corpus") return cmd_corpus(c);
    if (c.command == "print") return cmd_print(c);
    if (c.command == "cohomology") return cmd_cohomology(c);
    if (c.command == "gottlieb") return cmd_gottlieb(c);
    if (c.command == "evsub") return cmd_evsub(c);
    if (c.command == "derhom") return cmd_derhom(c);
    if (c.command == "rho") return cmd_rho(c);
    if (c.command == "tncz") return cmd_tncz(c);
    if (c.command == "trivial") return cmd_trivial(c);
    if (c.command == "section") return cmd_section(c);
    if (c.command == "build") return cmd_build(c);
    if (c.command == "lift") return cmd_lift(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "classify") return cmd_classify(c);
    throw validation_error("unknown command '" + c.command + "'");
}

} // namespace

RunResult run_command(const std::vector<std::string>& args) {
    try {
        return {0, dispatch(args)};
    } catch (const validation_error& e) {
        return {2, ojson{{"error", e.what()}}};
    } catch (const std::exception& e) {
        return {3, ojson{{"error", e.what()}}};
    }
}

} // namespace rht
