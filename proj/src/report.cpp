#include "rht/report.hpp"

#include <algorithm>
#include <set>

namespace rht {

namespace {

MorphismPtr share(Morphism m) { return std::make_shared<Morphism>(std::move(m)); }

MorphismPtr identity_ptr(const CdgaPtr& X) { return share(Morphism::identity(X)); }

// same generator list (names, degrees, caps) and same differential
bool same_model(const CdgaPtr& a, const CdgaPtr& b) {
    if (a == b) return true;
    const auto& ga = a->algebra()->gens();
    const auto& gb = b->algebra()->gens();
    if (ga.size() != gb.size()) return false;
    for (size_t i = 0; i < ga.size(); ++i)
        if (ga[i].name != gb[i].name || ga[i].degree != gb[i].degree || ga[i].cap != gb[i].cap)
            return false;
    for (size_t i = 0; i < ga.size(); ++i)
        if (transport(a->d_gen((int)i), b->algebra()) != b->d_gen((int)i)) return false;
    return true;
}

Polynomial linear_part(const Polynomial& p) {
    Polynomial out(p.algebra());
    for (const auto& [m, c] : p.terms())
        if (m.word_length() == 1) out.add_term(m, c);
    return out;
}

std::vector<int> degree_gens(const AlgebraPtr& alg, int n) {
    std::vector<int> out;
    for (int i = 0; i < alg->size(); ++i)
        if (alg->gen(i).degree == n) out.push_back(i);
    return out;
}

Functional axis_functional(const std::string& gen, int n, LinExpr c) {
    Functional a;
    a.n = n;
    a.coeffs[gen] = std::move(c);
    return a;
}

struct Resolved {
    CdgaPtr Y;
    MorphismPtr phi;                  // for the evaluation subgroup
    std::optional<Morphism> lift_map; // M(Y) -> M(X) for membership searches
    CdgaPtr X;                        // minimal model of the source, when known
};

Resolved resolve(const MapModel& m) {
    if (!m.Y) throw validation_error("map model: M(Y) is missing");
    if (!is_minimal(m.Y)) throw validation_error("map model: M(Y) must be minimal");
    if (!m.ks && !m.f) throw validation_error("map model: no presentation of the map");
    if (m.ks && !same_model(m.ks->base, m.Y))
        throw validation_error("map model: the extension base disagrees with M(Y)");
    if (m.f && !same_model(m.f->source(), m.Y))
        throw validation_error("map model: the morphism source disagrees with M(Y)");

    Resolved r;
    r.Y = m.Y;
    r.phi = m.ks ? m.ks->incl : share(*m.f);
    if (m.f) {
        r.lift_map = *m.f;
        r.X = m.f->target();
    } else if (auto p = kq_induced_projection(*m.ks)) {
        r.lift_map = *p;
        r.X = p->target();
    } else if (is_minimal(m.ks->total)) {
        r.lift_map = *m.ks->incl;
        r.X = m.ks->total;
    }
    return r;
}

// membership of one generator axis in gcal/tcal/scal, over a fixed twist space
struct Probe {
    enum class R { In, OnlyZero, Undetermined } r = R::Undetermined;
    std::optional<LiftWitness> witness;
    std::optional<TrivialBuild> cert;
    Derivation theta; // concrete twist of the certificate
    std::map<std::string, LinExpr> section_values;
    std::string note;
    Probe(const MorphismPtr& id, int n) : theta(Derivation::zero(id, n)) {}
};

PDerivation twist_family(const MorphismPtr& id, int n, const std::vector<Derivation>& basis) {
    const auto& X = id->source();
    PDerivation fam;
    fam.phi = id;
    fam.n = n - 1;
    fam.values.assign(X->algebra()->size(), PPoly(X->algebra()));
    for (size_t k = 0; k < basis.size(); ++k) {
        LinExpr s = LinExpr::param("_s" + std::to_string(k));
        for (int i = 0; i < X->algebra()->size(); ++i)
            fam.values[i] += promote(basis[k].value(i)).scaled(s);
    }
    return fam;
}

Derivation pin_twist(const MorphismPtr& id, int n, const std::vector<Derivation>& basis,
                     const std::map<std::string, LinExpr>& pinned) {
    Derivation theta = Derivation::zero(id, n - 1);
    for (size_t k = 0; k < basis.size(); ++k) {
        auto it = pinned.find("_s" + std::to_string(k));
        if (it == pinned.end()) continue;
        if (!it->second.is_constant())
            throw inconsistency_error("membership twist coefficient stayed symbolic");
        theta = theta + basis[k].scaled(it->second.constant());
    }
    return theta;
}

TrivialBuild outcome_to_certificate(const Morphism& f, const Derivation& theta,
                                    const LiftOutcome& out, const Functional& a) {
    KSExtension ks = twist_to_extension({f.target(), a.n, theta});
    std::vector<Polynomial> values;
    for (const auto& v : out.values) values.push_back(transport(demote(v), ks.total->algebra()));
    Morphism F = Morphism::make(f.source(), ks.total, values);

    Polynomial xb = Polynomial::generator(ks.base->algebra(), 0);
    std::vector<Polynomial> rv;
    for (int i = 0; i < ks.total->algebra()->size(); ++i) {
        const auto& g = ks.total->algebra()->gen(i);
        if (i == 0) {
            rv.push_back(xb);
        } else if (g.degree == a.n && out.section_values.count(g.name)) {
            const LinExpr& t = out.section_values.at(g.name);
            if (!t.is_constant()) throw inconsistency_error("section coefficient stayed symbolic");
            rv.push_back(xb.scaled(t.constant()));
        } else {
            rv.push_back(Polynomial(ks.base->algebra()));
        }
    }
    Morphism r = Morphism::make(ks.total, ks.base, rv);

    DiagramCheck dc = verify_diagram(ks, r, F, f, a);
    if (!dc.ok())
        throw inconsistency_error("membership certificate failed re-verification: " + dc.describe());
    return {ks, F, r};
}

// solve over theta = sum s_k basis_k with a free section and a = c * axis;
// Found means the whole axis is a member, an obstruction at c pins it to zero
Probe probe_axis(const Morphism& f, const MorphismPtr& id, int n, const std::string& axis,
                 const std::vector<Derivation>& basis, int max_parameters) {
    Probe p(id, n - 1);
    LiftOptions opt;
    opt.max_parameters = max_parameters;
    opt.section_unknowns = true;
    for (size_t k = 0; k < basis.size(); ++k) opt.existential.push_back("_s" + std::to_string(k));

    PSphereTwist fam{f.target(), n, twist_family(id, n, basis)};
    LiftOutcome out = solve_lift_degreewise(f, fam, axis_functional(axis, n, LinExpr::param("c")), opt);

    if (out.kind == LiftOutcome::Kind::Undetermined) {
        p.r = Probe::R::Undetermined;
        p.note = out.reason;
        return p;
    }
    if (out.kind == LiftOutcome::Kind::Obstructed) {
        if (out.witness && out.witness->param == "c") {
            p.r = Probe::R::OnlyZero;
            p.witness = out.witness;
            return p;
        }
        throw inconsistency_error("membership probe obstructed away from the class coefficient: " +
                                  (out.witness ? out.witness->text : std::string("no witness")));
    }

    LiftOutcome conc = solve_lift_degreewise(f, fam, axis_functional(axis, n, LinExpr(1)), opt);
    if (conc.kind != LiftOutcome::Kind::Found)
        throw inconsistency_error("membership family solved symbolically but not at c = 1");
    p.r = Probe::R::In;
    p.theta = pin_twist(id, n, basis, conc.pinned);
    p.section_values = conc.section_values;
    p.cert = outcome_to_certificate(f, p.theta, conc, axis_functional(axis, n, LinExpr(1)));
    return p;
}

// kernel of the rho action: classes of H_{n-1}(Der X) acting as zero on
// H^*(X) up to the cap
Subspace rho_kernel(const RhoMap& r) {
    int dim = r.H.dim;
    if (dim == 0) return Subspace(0);
    std::set<std::pair<int, std::pair<int, int>>> slots;
    for (int j = 0; j < dim; ++j)
        for (const auto& [k, M] : r.action[j])
            for (int row = 0; row < M.rows(); ++row)
                for (const auto& [col, v] : M.row(row))
                    if (!(v == 0)) slots.insert({k, {row, col}});
    std::vector<Vec> rows;
    for (const auto& [k, rc] : slots) {
        Vec row(dim, 0);
        for (int j = 0; j < dim; ++j) {
            auto it = r.action[j].find(k);
            if (it != r.action[j].end()) row[j] = it->second.at(rc.first, rc.second);
        }
        rows.push_back(row);
    }
    return kernel_basis(Matrix::from_rows(dim, rows));
}

std::vector<Derivation> homology_combos(const DerHomology& H, const Subspace& coords) {
    std::vector<Derivation> out;
    for (const auto& row : coords.basis_rows()) {
        std::optional<Derivation> combo;
        for (int j = 0; j < H.dim; ++j) {
            Derivation part = H.reps[j].scaled(row[j]);
            combo = combo ? *combo + part : part;
        }
        if (combo && !combo->is_zero()) out.push_back(*combo);
    }
    return out;
}

std::vector<Derivation> cocycle_twists(const MorphismPtr& id, int n) {
    DerSpace from = der_space(id, n - 1);
    if (from.dim == 0) return {};
    DerSpace to = der_space(id, n - 2);
    Subspace cyc = kernel_basis(delta_matrix(from, to));
    std::vector<Derivation> out;
    for (const auto& row : cyc.basis_rows()) out.push_back(from.from_coords(row));
    return out;
}

struct SearchLevel {
    std::vector<Probe> probes; // one per axis
    bool ran = false;
    std::string family_note;
};

Subspace span_of_in_axes(const SearchLevel& lvl, int pr) {
    std::vector<Vec> rows;
    for (int i = 0; i < (int)lvl.probes.size(); ++i)
        if (lvl.probes[i].r == Probe::R::In) {
            Vec v(pr, 0);
            v[i] = 1;
            rows.push_back(v);
        }
    return Subspace::span(pr, rows);
}

// closed under addition and scaling, so deciding every axis with at most one
// excluded axis pins the subgroup exactly
Verdict combine_level(const SearchLevel& lvl, int pr, bool allow_exact) {
    Verdict v;
    Subspace in = span_of_in_axes(lvl, pr);
    int zeros = 0, undet = 0;
    for (const auto& p : lvl.probes) {
        if (p.r == Probe::R::OnlyZero) ++zeros;
        if (p.r == Probe::R::Undetermined) ++undet;
    }
    if (undet == 0 && allow_exact && zeros <= 1) {
        v.kind = VerdictKind::Exact;
        v.space = in;
    } else if (in.dim() > 0 || undet == 0) {
        v.kind = VerdictKind::LowerBound;
        v.space = in;
    } else {
        v.kind = VerdictKind::Unknown;
    }
    return v;
}

struct Lattice {
    int pr;
    Subspace G;
    std::optional<Subspace> exact[3]; // gcal, tcal, scal
    Subspace lower[3];
    bool eq_scal_G = false;  // Prop 3.1
    bool eq_gcal_scal = false; // Prop 3.2
    std::vector<std::string> notes;
    Lattice(int p, Subspace g) : pr(p), G(std::move(g)), lower{Subspace(p), Subspace(p), Subspace(p)} {}

    static const char* name(int i) { return i == 0 ? "gcal" : i == 1 ? "tcal" : "scal"; }

    void set_exact(int i, const Subspace& s, const std::string& why) {
        if (exact[i]) {
            if (!(*exact[i] == s))
                throw inconsistency_error(std::string(name(i)) + " pinned to two different spaces (" + why + ")");
            return;
        }
        exact[i] = s;
        notes.push_back(std::string(name(i)) + " pinned exactly: " + why);
    }

    void propagate() {
        for (int pass = 0; pass < 32; ++pass) {
            bool changed = false;
            auto grow = [&](int i, const Subspace& s) {
                Subspace u = lower[i].sum(s);
                if (!(u == lower[i])) {
                    lower[i] = u;
                    changed = true;
                }
            };
            grow(0, G);
            grow(1, lower[0]);
            grow(2, lower[1]);
            // scal is exempt: sectional verdicts stay lower bounds unless a
            // criterion pins them
            for (int i = 0; i < 2; ++i)
                if (!exact[i] && lower[i].dim() == pr) {
                    set_exact(i, lower[i], "the lower bound fills pi_n tensor Q");
                    changed = true;
                }
            if (eq_scal_G && !exact[2]) {
                set_exact(2, G, "scal_n = G_n");
                changed = true;
            }
            if (eq_gcal_scal) {
                if (exact[0] && !exact[2]) {
                    set_exact(2, *exact[0], "gcal_n = scal_n");
                    changed = true;
                }
                if (exact[2] && !exact[0]) {
                    set_exact(0, *exact[2], "gcal_n = scal_n");
                    changed = true;
                }
                Subspace merged = lower[0].sum(lower[2]);
                if (!(merged == lower[0])) { lower[0] = merged; changed = true; }
                if (!(merged == lower[2])) { lower[2] = merged; changed = true; }
            }
            for (int i = 0; i < 3; ++i)
                if (exact[i]) {
                    if (!exact[i]->contains(lower[i]))
                        throw inconsistency_error(std::string(name(i)) +
                                                  ": a certified lower bound escapes the exact value");
                    if (!(lower[i] == *exact[i])) { lower[i] = *exact[i]; changed = true; }
                }
            // an exact value squeezes everything between two equal neighbours
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (exact[i] && exact[j]) {
                        if (!exact[j]->contains(*exact[i]))
                            throw inconsistency_error(std::string(name(i)) + " is not inside " + name(j));
                        if (*exact[i] == *exact[j])
                            for (int k = i + 1; k < j; ++k)
                                if (!exact[k]) { set_exact(k, *exact[i], "squeezed by the chain"); changed = true; }
                    }
            // a lower bound meeting the next exact neighbour above is exact
            for (int i = 0; i < 3; ++i) {
                if (exact[i]) continue;
                for (int j = i + 1; j < 3; ++j)
                    if (exact[j]) {
                        if (!exact[j]->contains(lower[i]))
                            throw inconsistency_error(std::string(name(i)) +
                                                      ": lower bound exceeds the exact value of " + name(j));
                        if (lower[i] == *exact[j]) { set_exact(i, lower[i], "meets its upper neighbour"); changed = true; }
                        break;
                    }
            }
            for (int i = 0; i < 3; ++i)
                if (exact[i] && !exact[i]->contains(G))
                    throw inconsistency_error(std::string("G escapes the exact value of ") + name(i));
            if (!changed) return;
        }
        throw inconsistency_error("chain propagation failed to stabilize");
    }
};

void add_level_evidence(SubgroupStatus& st, const char* subject, const SearchLevel& lvl) {
    if (!lvl.ran) return;
    if (!lvl.family_note.empty())
        st.evidence.push_back({"note", "Lemma 3.3", subject, lvl.family_note});
    for (int i = 0; i < (int)lvl.probes.size(); ++i) {
        const Probe& p = lvl.probes[i];
        const std::string& axis = st.axes[i];
        if (p.r == Probe::R::In) {
            std::string d = "axis " + axis + ": realized over " +
                            (p.theta.is_zero() ? std::string("the product fibration")
                                               : "the twist " + p.theta.str()) +
                            " with a section";
            st.evidence.push_back({"certificate", "search", subject, d});
            if (p.cert) st.certificates.push_back({subject, axis, *p.cert});
        } else if (p.r == Probe::R::OnlyZero) {
            st.evidence.push_back({"obstruction", "search", subject,
                                   "axis " + axis + ": " + p.witness->text});
            st.obstructions.push_back({subject, axis, *p.witness});
        } else {
            st.evidence.push_back({"note", "search", subject, "axis " + axis + ": " + p.note});
        }
    }
}

} // namespace

int pi_rank(const CdgaPtr& M, int n) {
    if (!is_minimal(M)) throw validation_error("pi_rank needs a minimal model");
    return (int)degree_gens(M->algebra(), n).size();
}

bool is_generator_projection(const Morphism& p) {
    const auto& src = p.source()->algebra();
    const auto& tgt = p.target()->algebra();
    std::set<std::string> hit;
    for (int i = 0; i < src->size(); ++i) {
        const Polynomial& v = p.value(i);
        if (v.is_zero()) continue;
        if (v.terms().size() != 1) return false;
        const auto& [m, c] = *v.terms().begin();
        if (!(c == 1) || m.word_length() != 1) return false;
        int j = 0;
        while (m.e[j] == 0) ++j;
        if (tgt->gen(j).name != src->gen(i).name) return false;
        hit.insert(src->gen(i).name);
    }
    for (int j = 0; j < tgt->size(); ++j)
        if (!hit.count(tgt->gen(j).name)) return false;
    return true;
}

std::optional<Morphism> kq_induced_projection(const KSExtension& ks) {
    if (ks.fiber_gens.size() != 1) return std::nullopt;
    const Polynomial lin = linear_part(ks.total->d_gen(ks.fiber_gens[0]));
    if (lin.is_zero() || lin.terms().size() != 1) return std::nullopt;
    const auto& [m, c] = *lin.terms().begin();
    int w0 = 0;
    while (m.e[w0] == 0) ++w0;
    if (w0 >= ks.base_count) return std::nullopt;

    const auto& balg = ks.base->algebra();
    std::vector<Generator> kept;
    for (int i = 0; i < balg->size(); ++i)
        if (i != w0) kept.push_back(balg->gen(i));
    AlgebraPtr xalg = FreeCGA::make(kept);

    auto kill = [&](const Polynomial& p) {
        Polynomial out(balg);
        for (const auto& [mm, cc] : p.terms())
            if (mm.e[w0] == 0) out.add_term(mm, cc);
        return transport(out, xalg);
    };

    try {
        std::vector<Polynomial> dv;
        for (int i = 0; i < balg->size(); ++i)
            if (i != w0) dv.push_back(kill(ks.base->d_gen(i)));
        CdgaPtr X = make_cdga(xalg, dv);
        std::vector<Polynomial> pv;
        for (int i = 0; i < balg->size(); ++i)
            pv.push_back(i == w0 ? Polynomial(xalg)
                                 : Polynomial::generator(xalg, *xalg->find(balg->gen(i).name)));
        return Morphism::make(ks.base, X, pv);
    } catch (const validation_error&) {
        return std::nullopt; // the quotient does not close up in this strict form
    }
}

std::optional<CriterionHit> criterion_surjective(const MapModel& m, int n) {
    if (!m.ks) return std::nullopt;
    if (!m.Y || !is_minimal(m.Y)) throw validation_error("criterion needs a minimal M(Y)");
    for (int vi : m.ks->fiber_gens) {
        if (m.ks->total->algebra()->gen(vi).degree != n - 1) continue;
        if (!linear_part(m.ks->total->d_gen(vi)).is_zero()) return std::nullopt;
    }
    return CriterionHit{"Prop 1.4", "pi_" + std::to_string(n) +
                                        "(f) is onto: no degree-" + std::to_string(n - 1) +
                                        " fiber generator has a linear differential"};
}

std::optional<InjectiveHit> criterion_injective(const MapModel& m, int n) {
    if (n < 2) return std::nullopt; // no fibration calculus below the twist range
    if (!m.f || !is_generator_projection(*m.f)) return std::nullopt;
    InjectiveHit hit;
    for (int gi : degree_gens(m.f->source()->algebra(), n)) {
        auto b = build_trivial_fibration(
            *m.f, axis_functional(m.f->source()->algebra()->gen(gi).name, n, LinExpr(1)));
        if (!b) return std::nullopt;
        hit.certificates.push_back(*b);
    }
    hit.note = {"Thm 1.6", "pi_*(f) is injective (generator projection); every degree-" +
                               std::to_string(n) +
                               " generator class extends over a trivial fibration with section"};
    return hit;
}

std::optional<InjectiveHit> criterion_kq_fiber(const MapModel& m, int n) {
    if (!m.ks || m.ks->fiber_gens.size() != 1) return std::nullopt;
    int vi = m.ks->fiber_gens[0];
    int vdeg = m.ks->total->algebra()->gen(vi).degree;
    if (linear_part(m.ks->total->d_gen(vi)).is_zero()) {
        auto s = criterion_surjective(m, n);
        if (!s) return std::nullopt;
        return InjectiveHit{{"Cor 1.7", "K(Q," + std::to_string(vdeg) +
                                            ") fiber with decomposable differential; " + s->detail},
                            {}};
    }
    auto p = kq_induced_projection(*m.ks);
    if (!p) return std::nullopt;
    MapModel routed;
    routed.Y = m.ks->base;
    routed.f = *p;
    auto inj = criterion_injective(routed, n);
    if (!inj) return std::nullopt;
    inj->note = {"Cor 1.7", "K(Q," + std::to_string(vdeg) +
                                ") fiber with linear differential; certificates over the induced "
                                "projection onto the remaining generators"};
    return inj;
}

std::optional<CriterionHit> criterion_prop31(const CdgaPtr& X, int n) {
    for (int i = 0; i < X->algebra()->size(); ++i)
        if (X->algebra()->gen(i).degree >= n) return std::nullopt;
    return CriterionHit{"Prop 3.1", "X has no generators in degree >= " + std::to_string(n) +
                                        ", so scal_" + std::to_string(n) + " = G_" + std::to_string(n)};
}

std::optional<CriterionHit> criterion_prop32(const CdgaPtr& X, int n) {
    if (n < 2) return std::nullopt;
    try {
        if (der_homology(identity_ptr(X), n - 1).dim != 0) return std::nullopt;
    } catch (const validation_error&) {
        return std::nullopt;
    }
    return CriterionHit{"Prop 3.2", "H_" + std::to_string(n - 1) +
                                        "(Der X) = 0, so gcal_" + std::to_string(n) + " = scal_" +
                                        std::to_string(n)};
}

SubgroupStatus classify_degree(const MapModel& m, int n, const ClassifyOptions& options) {
    if (n < 1) throw validation_error("classification degrees start at 1");
    Resolved res = resolve(m);

    SubgroupStatus st;
    st.n = n;
    std::vector<int> axes = degree_gens(res.Y->algebra(), n);
    st.pi_rank = (int)axes.size();
    for (int gi : axes) st.axes.push_back(res.Y->algebra()->gen(gi).name);

    if (st.pi_rank == 0) {
        st.G = Subspace(0);
        Verdict v{VerdictKind::Exact, Subspace(0)};
        st.gcal = st.tcal = st.scal = v;
        st.evidence.push_back({"note", "Thm 2.1", "G",
                               "pi_" + std::to_string(n) + "(Y) tensor Q = 0; every subgroup is zero"});
        return st;
    }

    st.G = evaluation_subgroup(res.phi, n).span;
    st.evidence.push_back({"note", "Thm 2.1", "G",
                           "G_" + std::to_string(n) + " is the image of the delta-cocycle "
                           "restrictions; dim " + std::to_string(st.G.dim())});

    Lattice lat(st.pi_rank, st.G);
    std::vector<Vec> unit_rows;
    for (int i = 0; i < st.pi_rank; ++i) {
        Vec v(st.pi_rank, 0);
        v[i] = 1;
        unit_rows.push_back(v);
    }
    Subspace full = Subspace::span(st.pi_rank, unit_rows);

    std::vector<Certificate> criterion_certs;
    if (auto s = criterion_surjective(m, n)) {
        lat.set_exact(0, full, "criterion");
        st.evidence.push_back({"criterion", s->tag, "gcal", s->detail});
    } else if (auto kq = criterion_kq_fiber(m, n)) {
        lat.set_exact(0, full, "criterion");
        st.evidence.push_back({"criterion", kq->note.tag, "gcal", kq->note.detail});
        for (size_t i = 0; i < kq->certificates.size(); ++i)
            criterion_certs.push_back({"gcal", st.axes[i], kq->certificates[i]});
    } else if (auto inj = criterion_injective(m, n)) {
        lat.set_exact(0, full, "criterion");
        st.evidence.push_back({"criterion", inj->note.tag, "gcal", inj->note.detail});
        for (size_t i = 0; i < inj->certificates.size(); ++i)
            criterion_certs.push_back({"gcal", st.axes[i], inj->certificates[i]});
    }
    if (res.X) {
        if (auto p31 = criterion_prop31(res.X, n)) {
            lat.eq_scal_G = true;
            st.evidence.push_back({"criterion", p31->tag, "scal", p31->detail});
        }
        if (auto p32 = criterion_prop32(res.X, n)) {
            lat.eq_gcal_scal = true;
            st.evidence.push_back({"criterion", p32->tag, "gcal", p32->detail});
        }
    }
    lat.propagate();

    SearchLevel gl, tl, sl;
    bool need_g = !lat.exact[0];
    bool need_t = !lat.exact[1];
    // a sectional lower bound that already fills pi_n cannot be improved
    bool need_s = !lat.exact[2] && lat.lower[2].dim() < st.pi_rank;
    bool can_search = options.run_searches && res.lift_map && res.X && n >= 2;
    if (can_search && (need_g || need_t || need_s)) {
        const Morphism& f = *res.lift_map;
        MorphismPtr id = identity_ptr(res.X);
        int cap = options.cohomology_cap > 0
                      ? options.cohomology_cap
                      : 2 * res.X->algebra()->max_gen_degree() + n;

        bool projection = is_generator_projection(f);
        std::vector<Derivation> tncz_basis, all_basis;
        if (need_t) {
            DerHomology H = der_homology(id, n - 1);
            Subspace K = rho_kernel(rho(res.X, n, cap));
            tncz_basis = homology_combos(H, K);
            tl.family_note = "tncz twists confined to the rho-kernel of H_" +
                             std::to_string(n - 1) + "(Der X): dim " + std::to_string(K.dim()) +
                             " of " + std::to_string(H.dim);
        }
        if (need_s) all_basis = cocycle_twists(id, n);

        for (const std::string& axis : st.axes) {
            Probe g(id, n - 1), t(id, n - 1), s(id, n - 1);
            if (need_g) {
                std::optional<TrivialBuild> built;
                if (projection)
                    built = build_trivial_fibration(f, axis_functional(axis, n, LinExpr(1)));
                g = probe_axis(f, id, n, axis, {}, options.max_parameters);
                if (projection && (g.r == Probe::R::In) != built.has_value())
                    throw inconsistency_error("builder and product search disagree on axis " + axis);
                if (built) g.cert = *built; // prefer the builder output as the certificate
            }
            if (need_t) {
                if (g.r == Probe::R::In) {
                    t = g;
                    t.note = "a trivial fibration is tncz";
                } else if (tncz_basis.empty() && need_g && g.r != Probe::R::Undetermined) {
                    t = g; // empty rho-kernel: the search space is the product again
                } else {
                    t = probe_axis(f, id, n, axis, tncz_basis, options.max_parameters);
                    if (t.r == Probe::R::In && !t.theta.is_zero() &&
                        !is_tncz(twist_to_extension({res.X, n, t.theta}), cap))
                        throw inconsistency_error("rho-kernel twist failed the tncz check");
                }
            }
            if (need_s) {
                if (t.r == Probe::R::In) {
                    s = t;
                } else if (g.r == Probe::R::In) {
                    s = g;
                } else {
                    s = probe_axis(f, id, n, axis, all_basis, options.max_parameters);
                    if (s.r == Probe::R::In &&
                        !find_section_over_sphere(s.cert->ks))
                        throw inconsistency_error("sectional certificate lost its section");
                }
            }
            if (need_g) { gl.probes.push_back(std::move(g)); gl.ran = true; }
            if (need_t) { tl.probes.push_back(std::move(t)); tl.ran = true; }
            if (need_s) { sl.probes.push_back(std::move(s)); sl.ran = true; }
        }

        auto feed = [&](int i, const SearchLevel& lvl, bool allow_exact) {
            if (!lvl.ran) return;
            Verdict v = combine_level(lvl, st.pi_rank, allow_exact);
            if (v.kind == VerdictKind::Exact)
                lat.set_exact(i, *v.space, "axis search decided every generator axis");
            else if (v.kind == VerdictKind::LowerBound)
                lat.lower[i] = lat.lower[i].sum(*v.space);
        };
        feed(0, gl, true);
        feed(1, tl, true);
        feed(2, sl, false); // sectional searches stay lower bounds by policy
        lat.propagate();
    }

    auto verdict_of = [&](int i, bool searched) {
        Verdict v;
        if (lat.exact[i]) {
            v.kind = VerdictKind::Exact;
            v.space = *lat.exact[i];
        } else if (searched || lat.lower[i].dim() > 0) {
            v.kind = VerdictKind::LowerBound;
            v.space = lat.lower[i];
        }
        return v;
    };
    st.gcal = verdict_of(0, gl.ran);
    st.tcal = verdict_of(1, tl.ran);
    st.scal = verdict_of(2, sl.ran);

    for (auto& c : criterion_certs) st.certificates.push_back(std::move(c));
    add_level_evidence(st, "gcal", gl);
    add_level_evidence(st, "tcal", tl);
    add_level_evidence(st, "scal", sl);
    for (const auto& nline : lat.notes)
        st.evidence.push_back({"note", "chain", "chain", nline});
    return st;
}

std::vector<SubgroupStatus> classify(const MapModel& m, const ClassifyOptions& options) {
    std::vector<int> degrees = options.degrees;
    if (degrees.empty()) {
        std::set<int> ds;
        for (const auto& g : m.Y->algebra()->gens()) ds.insert(g.degree);
        degrees.assign(ds.begin(), ds.end());
    }
    std::vector<SubgroupStatus> out;
    for (int n : degrees) out.push_back(classify_degree(m, n, options));
    return out;
}

} // namespace rht
