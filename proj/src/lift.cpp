#include "rht/lift.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rht {

namespace {

MorphismPtr share(Morphism m) { return std::make_shared<const Morphism>(std::move(m)); }

PPoly ppromote_to(const Polynomial& p, const AlgebraPtr& to) {
    return promote(transport(p, to));
}

// one affine batch: unknowns with rational coefficients, remainder affine in
// the indeterminates; solved component by component over the same matrix
struct BatchSolve {
    bool ok = false;
    std::string fail_param; // "" = constant component
    std::map<std::string, LinExpr> assign;
    std::vector<std::string> fresh;
};

BatchSolve solve_batch(const std::vector<LinExpr>& eqs, const std::vector<std::string>& unknowns,
                       const std::vector<std::string>& indet, int& fresh_counter,
                       const std::set<std::string>& prunable) {
    if (unknowns.empty()) {
        BatchSolve out;
        std::set<std::string> known(indet.begin(), indet.end());
        for (const auto& eq : eqs)
            for (const auto& [name, c] : eq.terms())
                if (!known.count(name))
                    throw contract_error("unexpected parameter " + name + " in a lift equation");
        for (const auto& eq : eqs)
            if (!(eq.constant() == 0)) return out;
        for (const auto& p : known)
            for (const auto& eq : eqs)
                if (!(eq.coeff(p) == 0)) {
                    out.fail_param = p;
                    return out;
                }
        out.ok = true;
        return out;
    }
    if (eqs.empty()) {
        BatchSolve out;
        for (const auto& u : unknowns) {
            if (prunable.count(u)) {
                out.assign[u] = LinExpr(0);
                continue;
            }
            std::string name = "_k" + std::to_string(fresh_counter++);
            out.fresh.push_back(name);
            out.assign[u] = LinExpr::param(name);
        }
        out.ok = true;
        return out;
    }

    std::map<std::string, int> col;
    for (int i = 0; i < (int)unknowns.size(); ++i) col[unknowns[i]] = i;
    Matrix A((int)eqs.size(), (int)unknowns.size());
    Vec b0(eqs.size(), Rational(0));
    std::map<std::string, Vec> bp;
    for (const auto& p : indet) bp[p] = Vec(eqs.size(), Rational(0));
    for (int r = 0; r < (int)eqs.size(); ++r) {
        b0[r] = Rational(0) - eqs[r].constant();
        for (const auto& [name, c] : eqs[r].terms()) {
            auto it = col.find(name);
            if (it != col.end()) {
                A.set(r, it->second, c);
            } else {
                auto jt = bp.find(name);
                if (jt == bp.end())
                    throw contract_error("unexpected parameter " + name + " in a lift equation");
                jt->second[r] = Rational(0) - c;
            }
        }
    }

    BatchSolve out;
    auto s0 = solve_affine(A, b0);
    if (!s0) return out;
    std::map<std::string, Vec> part;
    for (const auto& [p, rhs] : bp) {
        auto sp = solve_affine(A, rhs);
        if (!sp) {
            out.fail_param = p;
            return out;
        }
        part[p] = sp->particular;
    }

    // kernel directions become fresh symbols, except those that only move
    // unknowns nothing later depends on
    std::vector<std::pair<std::string, Vec>> kept;
    for (const auto& k : s0->kernel.basis_rows()) {
        bool only_prunable = true;
        for (int i = 0; i < (int)unknowns.size() && only_prunable; ++i)
            if (!(k[i] == 0) && !prunable.count(unknowns[i])) only_prunable = false;
        if (only_prunable) continue;
        std::string name = "_k" + std::to_string(fresh_counter++);
        out.fresh.push_back(name);
        kept.emplace_back(name, k);
    }

    for (int i = 0; i < (int)unknowns.size(); ++i) {
        LinExpr v(s0->particular[i]);
        for (const auto& [p, pp] : part)
            if (!(pp[i] == 0)) v += LinExpr::param(p, pp[i]);
        for (const auto& [name, k] : kept)
            if (!(k[i] == 0)) v += LinExpr::param(name, k[i]);
        out.assign[unknowns[i]] = v;
    }
    out.ok = true;
    return out;
}

} // namespace

PTotal symbolic_twisted_total(const CdgaPtr& X, int n, const PDerivation& theta) {
    if (n < 1) throw validation_error("sphere dimension must be >= 1");
    const auto& xalg = X->algebra();
    if (xalg->find("x"))
        throw validation_error("the name x is reserved for the base sphere generator here; "
                               "rename the fiber generator x first");
    if (theta.n != n - 1)
        throw validation_error("a twist over S^" + std::to_string(n) +
                               " must have derivation degree " + std::to_string(n - 1));
    PDerivation dt = delta(theta);
    for (const auto& v : dt.values)
        if (!v.is_zero()) throw validation_error("the twist is not a delta-cocycle");

    std::vector<Generator> gens{{"x", n, 2}};
    for (int i = 0; i < xalg->size(); ++i) gens.push_back(xalg->gen(i));
    PTotal t;
    t.alg = FreeCGA::make(gens);
    t.X = X;
    t.n = n;
    PPoly xp = PPoly::generator(t.alg, 0);
    t.D.push_back(PPoly(t.alg));
    for (int i = 0; i < xalg->size(); ++i) {
        int sign = (n * xalg->gen(i).degree) % 2 == 0 ? 1 : -1;
        PPoly tw = (transport_t(theta.values[i], t.alg) * xp).scaled(LinExpr(sign));
        t.D.push_back(ppromote_to(X->d_gen(i), t.alg) - tw);
    }
    return t;
}

LiftOutcome solve_lift_degreewise(const Morphism& f, const PSphereTwist& twist,
                                  const Functional& a, const LiftOptions& options) {
    const CdgaPtr& Y = f.source();
    const CdgaPtr& X = f.target();
    if (twist.X != X) throw validation_error("the twist fiber must be the lift target model");
    if (a.n != twist.n)
        throw validation_error("functional degree and sphere dimension differ");
    if (!is_minimal(Y))
        throw validation_error("degreewise lifting needs a minimal source model");
    int n = twist.n;
    const auto& Walg = Y->algebra();
    for (const auto& [name, c] : a.coeffs) {
        auto gi = Walg->find(name);
        if (!gi || Walg->gen(*gi).degree != n)
            throw validation_error("the functional must sit on degree-" + std::to_string(n) +
                                   " source generators; " + name + " is not one");
    }

    PTotal tot = symbolic_twisted_total(X, n, twist.theta);
    LiftOutcome out;
    out.total = tot.alg;

    std::vector<std::string> declared = a.params();
    for (const auto& v : twist.theta.values) collect_params(v, declared);
    std::set<std::string> exist(options.existential.begin(), options.existential.end());
    std::vector<std::string> indet;
    std::set<std::string> live;
    for (const auto& p : declared) {
        if (exist.count(p))
            live.insert(p);
        else
            indet.push_back(p);
    }
    if ((int)indet.size() > options.max_parameters) {
        out.kind = LiftOutcome::Kind::Undetermined;
        out.reason = "the family needs " + std::to_string(indet.size()) +
                     " symbolic parameters; the cap is " + std::to_string(options.max_parameters);
        return out;
    }

    std::map<std::string, LinExpr> pinned_all;
    auto current = [&](const std::string& p) {
        auto it = pinned_all.find(p);
        return it == pinned_all.end() ? LinExpr::param(p) : it->second;
    };

    std::vector<PPoly> Fv(Walg->size(), PPoly(tot.alg));
    int fresh_counter = 0, ucounter = 0;
    PPoly xp = PPoly::generator(tot.alg, 0);
    Monomial xm = Monomial::one(tot.alg->size());
    xm.e[0] = 1;

    auto apply_assign = [&](const BatchSolve& bs) {
        for (auto& v : Fv) v = substitute(v, bs.assign);
        for (auto& d : tot.D) d = substitute(d, bs.assign);
        for (auto& [k, v] : pinned_all) v = v.substitute(bs.assign);
        for (const auto& [k, v] : bs.assign) pinned_all[k] = v;
        live.clear();
        live.insert(bs.fresh.begin(), bs.fresh.end());
    };

    // section unknowns: r(g) = t_g x on degree-n fiber generators, with the
    // chain rows of r sitting at the degree n-1 fiber generators
    std::map<std::string, std::string> section_param;
    if (options.section_unknowns) {
        std::vector<LinExpr> rows;
        for (int i = 0; i < X->algebra()->size(); ++i)
            if (X->algebra()->gen(i).degree == n) {
                std::string pn = "_t_" + X->algebra()->gen(i).name;
                section_param[X->algebra()->gen(i).name] = pn;
                live.insert(pn);
            }
        for (int i = 0; i < X->algebra()->size(); ++i) {
            if (X->algebra()->gen(i).degree != n - 1) continue;
            const PPoly& Dv = tot.D[i + 1];
            LinExpr eq = Dv.coeff(xm);
            for (const auto& [gname, pname] : section_param) {
                Monomial gm = Monomial::one(tot.alg->size());
                gm.e[*tot.alg->find(gname)] = 1;
                LinExpr c = Dv.coeff(gm);
                if (!c.is_constant())
                    throw inconsistency_error("twist leaked into a linear fiber term");
                if (!(c.constant() == 0)) eq += c.constant() * LinExpr::param(pname);
            }
            if (!eq.is_zero()) rows.push_back(eq);
        }
        if (!rows.empty()) {
            std::vector<std::string> unknowns(live.begin(), live.end());
            BatchSolve bs = solve_batch(rows, unknowns, indet, fresh_counter, {});
            if (!bs.ok) {
                out.kind = LiftOutcome::Kind::Obstructed;
                LiftWitness w;
                w.gen = "";
                w.param = bs.fail_param;
                w.cls = Polynomial(X->algebra());
                w.text = "no section is compatible with the twist family (" +
                         std::string(bs.fail_param.empty()
                                         ? "constant component"
                                         : "coefficient of " + bs.fail_param) +
                         " of the section chain rows is unsatisfiable)";
                out.witness = w;
                return out;
            }
            apply_assign(bs);
        }
    }

    // feeds[j]: F of generator j appears in some later chain equation
    std::vector<bool> feeds(Walg->size(), false);
    for (int i = 0; i < Walg->size(); ++i)
        for (const auto& [m, c] : Y->d_gen(i).terms())
            for (int j = 0; j < Walg->size(); ++j)
                if (m.e[j] > 0) feeds[j] = true;

    std::vector<int> order(Walg->size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return Walg->gen(i).degree < Walg->gen(j).degree;
    });

    for (int gi : order) {
        const auto& g = Walg->gen(gi);
        PPoly pf = ppromote_to(f.value(gi), tot.alg);
        PPoly Fw = pf;
        std::vector<std::string> new_unknowns;
        std::vector<LinExpr> extra;

        if (g.degree == n) {
            if (options.section_unknowns) {
                std::string pn = "_u" + std::to_string(ucounter++);
                new_unknowns.push_back(pn);
                Fw += xp.scaled(LinExpr::param(pn));
                // r(F(w)) = a(w) x: the pure-x coefficient plus the section's
                // take on the linear fiber part
                LinExpr eq = LinExpr::param(pn) - a.at(g.name);
                for (const auto& [gname, pname] : section_param) {
                    Monomial gm = Monomial::one(tot.alg->size());
                    gm.e[*tot.alg->find(gname)] = 1;
                    LinExpr c = pf.coeff(gm);
                    if (!(c.constant() == 0)) eq += c.constant() * current(pname);
                }
                extra.push_back(eq);
            } else {
                Fw += xp.scaled(a.at(g.name));
            }
        } else if (g.degree > n) {
            for (const auto& m : graded_basis(tot.alg, g.degree - n)) {
                if (m.e[0] != 0) continue;
                std::string pn = "_u" + std::to_string(ucounter++);
                new_unknowns.push_back(pn);
                PPoly term(tot.alg);
                term.add_term(m, LinExpr(1));
                Fw += (xp * term).scaled(LinExpr::param(pn));
            }
        }
        Fv[gi] = Fw;

        PPoly R = tot.d(Fw) - apply_values(Walg, tot.alg, Fv, promote(Y->d_gen(gi)));
        std::vector<LinExpr> eqs = extra;
        for (const auto& [m, c] : R.terms()) eqs.push_back(c);
        if (eqs.empty() && new_unknowns.empty()) continue;

        std::vector<std::string> unknowns(live.begin(), live.end());
        unknowns.insert(unknowns.end(), new_unknowns.begin(), new_unknowns.end());
        std::set<std::string> prunable;
        if (!feeds[gi]) prunable.insert(new_unknowns.begin(), new_unknowns.end());
        BatchSolve bs = solve_batch(eqs, unknowns, indet, fresh_counter, prunable);
        if (!bs.ok) {
            out.kind = LiftOutcome::Kind::Obstructed;
            LiftWitness w;
            w.gen = g.name;
            w.param = bs.fail_param;
            w.cls = Polynomial(X->algebra());
            // frame the defect as a cohomology class when the unknowns drop out
            std::map<std::string, LinExpr> zero;
            for (const auto& u : unknowns) zero[u] = LinExpr(0);
            PPoly R0 = substitute(R, zero);
            Polynomial Sq(tot.alg);
            for (const auto& [m, c] : R0.terms()) {
                Rational v = bs.fail_param.empty() ? c.constant() : c.coeff(bs.fail_param);
                if (!(v == 0)) Sq.add_term(m, v);
            }
            auto [fib_part, xs] = split_x(0, Sq);
            std::string comp = bs.fail_param.empty()
                                   ? "constant part"
                                   : "coefficient of " + bs.fail_param;
            if (fib_part.is_zero() && !xs.is_zero()) {
                Polynomial cls = transport(xs, X->algebra());
                if (is_cocycle(X, cls) && !is_coboundary(X, cls)) {
                    w.cls = cls;
                    w.degree = cls.degree().value_or(0);
                    w.text = "no lift: the chain equation at " + g.name + " (" + comp +
                             ") forces [" + cls.str() + "] = 0, but it is a nonzero class in H^" +
                             std::to_string(w.degree) + " of the fiber";
                    out.witness = w;
                    return out;
                }
            }
            w.text = "no lift: the chain equation at " + g.name + " (" + comp +
                     ") is unsatisfiable; defect modulo unknowns: " + Sq.str();
            out.witness = w;
            return out;
        }
        apply_assign(bs);
    }

    // leftover freedom is genuine freedom: pin it to zero
    if (!live.empty()) {
        std::map<std::string, LinExpr> zero;
        for (const auto& p : live) zero[p] = LinExpr(0);
        for (auto& v : Fv) v = substitute(v, zero);
        for (auto& [k, v] : pinned_all) v = v.substitute(zero);
        live.clear();
    }
    for (const auto& p : options.existential)
        if (!pinned_all.count(p)) pinned_all[p] = LinExpr(0);

    std::vector<std::string> leftover;
    for (const auto& v : Fv) collect_params(v, leftover);
    for (const auto& p : leftover)
        if (std::find(indet.begin(), indet.end(), p) == indet.end())
            throw inconsistency_error("lift family still references internal parameter " + p);

    out.kind = LiftOutcome::Kind::Found;
    out.values = std::move(Fv);
    for (const auto& p : options.existential) out.pinned[p] = pinned_all[p];
    for (const auto& [gname, pname] : section_param)
        out.section_values[gname] = pinned_all.count(pname) ? pinned_all[pname] : LinExpr(0);
    return out;
}

LiftOutcome solve_lift_degreewise(const Morphism& f, const SphereTwist& twist,
                                  const Functional& a, const LiftOptions& options) {
    return solve_lift_degreewise(f, PSphereTwist{twist.X, twist.n, promote(twist.theta)}, a,
                                 options);
}

std::optional<TrivialBuild> build_trivial_fibration(const Morphism& p, const Functional& a) {
    const CdgaPtr& Y = p.source();
    const CdgaPtr& X = p.target();
    const auto& Walg = Y->algebra();
    const auto& Valg = X->algebra();

    for (int i = 0; i < Walg->size(); ++i) {
        const auto& g = Walg->gen(i);
        auto vi = Valg->find(g.name);
        bool good = vi ? p.value(i) == Polynomial::generator(Valg, *vi) : p.value(i).is_zero();
        if (!good)
            throw validation_error(
                "build needs a generator projection: every source generator must map to the "
                "same-named target generator or to zero, but " + g.name + " maps to " +
                p.value(i).str() + "; presenting an injective map in this strict form is "
                "required input here, not something the tool derives");
    }
    for (int j = 0; j < Valg->size(); ++j)
        if (!Walg->find(Valg->gen(j).name))
            throw validation_error("build needs a generator projection: target generator " +
                                   Valg->gen(j).name + " has no source namesake");
    if (!is_minimal(Y))
        throw validation_error("the builder needs a minimal source model");
    int n = a.n;
    if (n < 1) throw validation_error("functional degree must be >= 1");
    for (const auto& [name, c] : a.coeffs) {
        if (!c.is_constant())
            throw validation_error("the builder needs rational coefficients; use the "
                                   "degreewise solver for parameter families");
        auto gi = Walg->find(name);
        if (!gi || Walg->gen(*gi).degree != n)
            throw validation_error("the functional must sit on degree-" + std::to_string(n) +
                                   " source generators; " + name + " is not one");
    }

    auto idV = share(Morphism::identity(X));
    int sgn_n = n % 2 == 0 ? 1 : -1;

    auto assemble = [&](const Derivation& theta,
                        const std::vector<Polynomial>& fvals_in_total_of) {
        KSExtension ks = twist_to_extension({X, n, theta});
        const auto& talg = ks.total->algebra();
        std::vector<Polynomial> fvals;
        for (const auto& v : fvals_in_total_of) fvals.push_back(transport(v, talg));
        Morphism F = Morphism::make(Y, ks.total, std::move(fvals));
        std::vector<Polynomial> svals{Polynomial::generator(ks.base->algebra(), 0)};
        for (size_t j = 1; j < (size_t)talg->size(); ++j)
            svals.push_back(Polynomial::zero(ks.base->algebra()));
        Morphism s = Morphism::make(ks.total, ks.base, std::move(svals));

        DiagramCheck chk = verify_diagram(ks, s, F, p, a);
        if (!chk.ok())
            throw inconsistency_error("builder output fails its gates: " + chk.describe());
        if (!is_rationally_trivial(ks))
            throw inconsistency_error("builder produced a nontrivial classifying class");
        if (!find_section_over_sphere(ks))
            throw inconsistency_error("builder output admits no section");
        return TrivialBuild{std::move(ks), std::move(F), std::move(s)};
    };

    // recipe: sigma-bar = (-1)^n a on the degree-n target generators, twisted
    // by its boundary; fails exactly when a touches a killed generator that
    // survives into a differential
    {
        std::vector<Polynomial> svals;
        for (int j = 0; j < Valg->size(); ++j) {
            const auto& g = Valg->gen(j);
            Rational c = g.degree == n ? a.at(g.name).constant() * sgn_n : Rational(0);
            svals.push_back(c == 0 ? Polynomial::zero(Valg) : Polynomial::unit(Valg, c));
        }
        Derivation sigma_bar(idV, n, std::move(svals));
        Derivation theta = delta(sigma_bar);
        PTotal tot = symbolic_twisted_total(X, n, promote(theta));

        std::vector<Polynomial> fvals;
        for (int i = 0; i < Walg->size(); ++i) {
            Polynomial v = transport(p.value(i), tot.alg);
            const auto& g = Walg->gen(i);
            if (g.degree == n) {
                Rational c = a.at(g.name).constant();
                if (!(c == 0)) v = v + Polynomial::generator(tot.alg, 0).scaled(c);
            }
            fvals.push_back(std::move(v));
        }
        bool chain_ok = true;
        std::vector<PPoly> pf;
        for (const auto& v : fvals) pf.push_back(promote(v));
        for (int i = 0; i < Walg->size() && chain_ok; ++i)
            if (!(tot.d(pf[i]) == apply_values(Walg, tot.alg, pf, promote(Y->d_gen(i)))))
                chain_ok = false;
        if (chain_ok) return assemble(theta, fvals);
    }

    // exact completion: search every boundary twist delta(sigma) jointly with
    // the correction terms of F
    DerSpace sp = der_space(idV, n);
    std::vector<PPoly> svals(Valg->size(), PPoly(Valg));
    std::vector<std::string> snames;
    for (int k = 0; k < sp.dim; ++k) {
        std::string pn = "_s" + std::to_string(k);
        snames.push_back(pn);
        Derivation b = sp.basis_elem(k);
        for (int j = 0; j < Valg->size(); ++j)
            svals[j] += promote(b.value(j)).scaled(LinExpr::param(pn));
    }
    PDerivation psigma{idV, n, std::move(svals)};
    LiftOptions opt;
    opt.existential = snames;
    LiftOutcome lo = solve_lift_degreewise(p, PSphereTwist{X, n, delta(psigma)}, a, opt);
    if (lo.kind != LiftOutcome::Kind::Found) return std::nullopt;

    std::vector<Polynomial> sigma_vals;
    for (int j = 0; j < Valg->size(); ++j) {
        PPoly v(Valg);
        for (int k = 0; k < sp.dim; ++k) {
            const LinExpr& pinv = lo.pinned.at(snames[k]);
            if (!pinv.is_constant())
                throw inconsistency_error("builder twist coefficient stayed symbolic");
            if (!(pinv.constant() == 0))
                v += promote(sp.basis_elem(k).value(j)).scaled(LinExpr(pinv.constant()));
        }
        sigma_vals.push_back(demote(v));
    }
    Derivation sigma(idV, n, std::move(sigma_vals));
    std::vector<Polynomial> fvals;
    for (const auto& v : lo.values) fvals.push_back(demote(v));
    return assemble(delta(sigma), fvals);
}

std::string DiagramCheck::describe() const {
    std::vector<std::string> bad;
    if (!wiring) bad.push_back("the maps do not connect the expected objects");
    if (!section) bad.push_back("r is not a section over the base");
    if (!f_square) bad.push_back("q o F differs from the fiber map");
    if (!a_square) bad.push_back("r o F differs from the class functional");
    if (bad.empty()) return "all squares commute";
    std::string s;
    for (size_t i = 0; i < bad.size(); ++i) s += (i ? "; " : "") + bad[i];
    return s;
}

DiagramCheck verify_diagram(const KSExtension& ks, const Morphism& r, const Morphism& F,
                            const Morphism& f, const Functional& a) {
    if (!is_sphere_base(ks.base))
        throw validation_error("verify needs an extension over a sphere base");
    int n = ks.base->algebra()->gen(0).degree;
    if (a.n != n)
        throw validation_error("functional degree differs from the sphere dimension");
    for (const auto& [name, c] : a.coeffs)
        if (!c.is_constant())
            throw validation_error("verify needs a rational functional; substitute "
                                   "parameters first");

    DiagramCheck c;
    const CdgaPtr& Y = f.source();
    c.wiring = F.source() == Y && F.target() == ks.total;
    c.section = r.source() == ks.total && r.target() == ks.base &&
                r.value(0) == Polynomial::generator(ks.base->algebra(), 0);

    if (c.wiring) {
        c.f_square = true;
        for (int i = 0; i < Y->algebra()->size() && c.f_square; ++i)
            if (!(ks.proj->apply(F.value(i)) == transport(f.value(i), ks.fiber->algebra())))
                c.f_square = false;
    }
    if (c.wiring && c.section) {
        c.a_square = true;
        Polynomial xb = Polynomial::generator(ks.base->algebra(), 0);
        for (int i = 0; i < Y->algebra()->size() && c.a_square; ++i) {
            const auto& g = Y->algebra()->gen(i);
            Polynomial want = g.degree == n ? xb.scaled(a.at(g.name).constant())
                                            : Polynomial::zero(ks.base->algebra());
            if (!(r.apply(F.value(i)) == want)) c.a_square = false;
        }
    }
    return c;
}

} // namespace rht
