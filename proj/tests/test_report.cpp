#include <doctest.h>

#include "rht/report.hpp"

using namespace rht;

namespace {

Polynomial gp(const AlgebraPtr& a, const std::string& name) {
    return Polynomial::generator(a, *a->find(name));
}

MorphismPtr share(Morphism m) { return std::make_shared<const Morphism>(std::move(m)); }

CdgaPtr s3() {
    auto alg = FreeCGA::make({{"w3", 3, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg)});
}

CdgaPtr s4() {
    auto alg = FreeCGA::make({{"w4", 4, 0}, {"w7", 7, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w4") * gp(alg, "w4")});
}

CdgaPtr s6() {
    auto alg = FreeCGA::make({{"w6", 6, 0}, {"w11", 11, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w6") * gp(alg, "w6")});
}

CdgaPtr s3s3() {
    auto alg = FreeCGA::make({{"u3", 3, 0}, {"v3", 3, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg)});
}

CdgaPtr cp3() {
    auto alg = FreeCGA::make({{"v2", 2, 0}, {"w7", 7, 0}});
    auto v2 = gp(alg, "v2");
    return CDGA::make(alg, {Polynomial::zero(alg), v2 * v2 * v2 * v2});
}

CdgaPtr cp2() {
    auto alg = FreeCGA::make({{"v2", 2, 0}, {"v5", 5, 0}});
    auto v2 = gp(alg, "v2");
    return CDGA::make(alg, {Polynomial::zero(alg), v2 * v2 * v2});
}

CdgaPtr ls2() {
    auto alg = FreeCGA::make({{"x", 2, 0}, {"y", 3, 0}, {"xb", 1, 0}, {"yb", 2, 0}});
    auto x = gp(alg, "x");
    return CDGA::make(alg, {Polynomial::zero(alg), x * x, Polynomial::zero(alg),
                            x.scaled(2) * gp(alg, "xb")});
}

CdgaPtr loops2() {
    auto alg = FreeCGA::make({{"xb", 1, 0}, {"yb", 2, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg)});
}

CdgaPtr proj_source() {
    auto alg = FreeCGA::make({{"w3", 3, 0}, {"w5", 5, 0}, {"w7", 7, 0}, {"w9", 9, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg),
                            gp(alg, "w3") * gp(alg, "w5"), gp(alg, "w3") * gp(alg, "w7")});
}

CdgaPtr proj_target() {
    auto alg = FreeCGA::make({{"w3", 3, 0}, {"w7", 7, 0}, {"w9", 9, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg),
                            gp(alg, "w3") * gp(alg, "w7")});
}

Morphism kill_w5() {
    auto Y = proj_source();
    auto X = proj_target();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X,
                          {gp(xa, "w3"), Polynomial::zero(xa), gp(xa, "w7"), gp(xa, "w9")});
}

// 3-cell attachment over S^2 x S^2: Dv3 = w1 w2
KSExtension two_sphere_ks() {
    auto balg = FreeCGA::make({{"w1", 2, 0}, {"w2", 2, 0}, {"w3", 3, 0}, {"w4", 3, 0}});
    auto base = CDGA::make(balg, {Polynomial::zero(balg), Polynomial::zero(balg),
                                  gp(balg, "w1") * gp(balg, "w1"), gp(balg, "w2") * gp(balg, "w2")});
    auto talg = FreeCGA::make({{"w1", 2, 0}, {"w2", 2, 0}, {"w3", 3, 0}, {"w4", 3, 0}, {"v3", 3, 0}});
    return make_ks(base, talg, {gp(talg, "w1") * gp(talg, "w2")});
}

// Hopf: S^3 fiber over S^4, Dv3 = w4
KSExtension hopf_ks() {
    auto base = s4();
    auto talg = FreeCGA::make({{"w4", 4, 0}, {"w7", 7, 0}, {"v3", 3, 0}});
    return make_ks(base, talg, {gp(talg, "w4")});
}

// S^2 fiber over S^4 with CP^3 total: Dv3 = v2^2 - w4
KSExtension cp3_over_s4_ks() {
    auto base = s4();
    auto talg = FreeCGA::make({{"w4", 4, 0}, {"w7", 7, 0}, {"v2", 2, 0}, {"v3", 3, 0}});
    return make_ks(base, talg,
                   {Polynomial::zero(talg), gp(talg, "v2") * gp(talg, "v2") - gp(talg, "w4")});
}

Morphism cp3_collapse() {
    auto Y = s4();
    auto X = cp3();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "w7")});
}

Morphism cp2_collapse() {
    auto Y = s4();
    auto X = cp2();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "v2") * gp(xa, "v5")});
}

Morphism s3s3_collapse() {
    auto Y = s6();
    auto X = s3s3();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X, {gp(xa, "u3") * gp(xa, "v3"), Polynomial::zero(xa)});
}

Morphism loop_incl() {
    auto Y = ls2();
    auto X = loops2();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X, {Polynomial::zero(xa), Polynomial::zero(xa),
                                 gp(xa, "xb"), gp(xa, "yb")});
}

// S^7 x S^4 -> S^4 x S^4, Hopf on the first factor
CdgaPtr s4s4() {
    auto alg = FreeCGA::make({{"w4", 4, 0}, {"w7", 7, 0}, {"w4p", 4, 0}, {"w7p", 7, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w4") * gp(alg, "w4"),
                            Polynomial::zero(alg), gp(alg, "w4p") * gp(alg, "w4p")});
}

CdgaPtr s7s4() {
    auto alg = FreeCGA::make({{"u7", 7, 0}, {"w4p", 4, 0}, {"w7p", 7, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg),
                            gp(alg, "w4p") * gp(alg, "w4p")});
}

Morphism hopf_times_id() {
    auto Y = s4s4();
    auto X = s7s4();
    const auto& xa = X->algebra();
    return Morphism::make(Y, X, {Polynomial::zero(xa), gp(xa, "u7"),
                                 gp(xa, "w4p"), gp(xa, "w7p")});
}

int evidence_count(const SubgroupStatus& st, const std::string& tag) {
    int k = 0;
    for (const auto& e : st.evidence)
        if (e.tag == tag) ++k;
    return k;
}

Vec unit(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("pi_rank counts generators of the degree") {
    CHECK(pi_rank(s4(), 4) == 1);
    CHECK(pi_rank(s4(), 5) == 0);
    CHECK(pi_rank(ls2(), 2) == 2);
    auto alg = FreeCGA::make({{"b1", 1, 0}, {"a2", 2, 0}});
    auto notmin = CDGA::make(alg, {gp(alg, "a2"), Polynomial::zero(alg)});
    CHECK_THROWS_AS(pi_rank(notmin, 2), validation_error);
}

TEST_CASE("generator projections are recognized by name and unit coefficient") {
    CHECK(is_generator_projection(kill_w5()));
    CHECK(is_generator_projection(Morphism::identity(s4())));
    CHECK_FALSE(is_generator_projection(cp3_collapse()));  // w4 -> v2^2
    CHECK_FALSE(is_generator_projection(hopf_times_id())); // w7 -> u7 renames
    CHECK_FALSE(is_generator_projection(s3s3_collapse())); // v3 never hit
}

TEST_CASE("a linear K(Q,m) fiber induces the quotient projection") {
    auto p = kq_induced_projection(hopf_ks());
    REQUIRE(p.has_value());
    const auto& xa = p->target()->algebra();
    CHECK(xa->size() == 1);
    CHECK(xa->gen(0).name == "w7");
    CHECK(p->target()->d_gen(0).is_zero()); // w4^2 dies with w4
    CHECK(p->value(0).is_zero());
    CHECK(p->value(1) == gp(xa, "w7"));

    CHECK_FALSE(kq_induced_projection(two_sphere_ks()).has_value()); // Dv decomposable
    CHECK_FALSE(kq_induced_projection(cp3_over_s4_ks()).has_value()); // two fiber gens
}

TEST_CASE("surjectivity criterion fires iff no linear fiber differential in the degree") {
    MapModel m{two_sphere_ks().base, two_sphere_ks(), std::nullopt};
    auto hit2 = criterion_surjective(m, 2);
    REQUIRE(hit2.has_value());
    CHECK(hit2->tag == "Prop 1.4");
    CHECK(criterion_surjective(m, 3).has_value());

    MapModel h{hopf_ks().base, hopf_ks(), std::nullopt};
    CHECK_FALSE(criterion_surjective(h, 4).has_value()); // Dv3 = w4 is linear
    CHECK(criterion_surjective(h, 7).has_value());       // no degree-6 fiber gen
}

TEST_CASE("injectivity criterion demands a builder certificate on every axis") {
    MapModel m{proj_source(), std::nullopt, kill_w5()};
    auto n3 = criterion_injective(m, 3);
    REQUIRE(n3.has_value());
    CHECK(n3->note.tag == "Thm 1.6");
    CHECK(n3->certificates.size() == 1);
    CHECK(verify_diagram(n3->certificates[0].ks, n3->certificates[0].s, n3->certificates[0].F,
                         *m.f, Functional{3, {{"w3", LinExpr(1)}}})
              .ok());
    CHECK_FALSE(criterion_injective(m, 5).has_value()); // the w5 class cannot extend

    MapModel c{s4(), std::nullopt, cp3_collapse()};
    CHECK_FALSE(criterion_injective(c, 4).has_value()); // not a projection
}

TEST_CASE("K(Q,m) fiber criterion covers both differential shapes") {
    MapModel h{hopf_ks().base, hopf_ks(), std::nullopt};
    auto n4 = criterion_kq_fiber(h, 4);
    REQUIRE(n4.has_value());
    CHECK(n4->note.tag == "Cor 1.7");
    CHECK(n4->certificates.size() == 1);

    MapModel m{two_sphere_ks().base, two_sphere_ks(), std::nullopt};
    auto n2 = criterion_kq_fiber(m, 2);
    REQUIRE(n2.has_value()); // decomposable Dv routes through surjectivity
    CHECK(n2->certificates.empty());
}

TEST_CASE("degree-window and derivation-homology criteria") {
    CHECK(criterion_prop31(s3s3(), 6).has_value());
    CHECK_FALSE(criterion_prop31(s3s3(), 3).has_value());
    CHECK(criterion_prop32(s3s3(), 6).has_value()); // Der_5 vanishes outright
    CHECK_FALSE(criterion_prop31(proj_target(), 5).has_value());
    CHECK_FALSE(criterion_prop32(proj_target(), 5).has_value()); // H_4(Der) = Q(w7,w3)
    CHECK_FALSE(criterion_prop32(cp3(), 4).has_value());         // H_3(Der) = Q(w7,v2^2)
}

TEST_CASE("classify rejects broken inputs") {
    MapModel none{s4(), std::nullopt, std::nullopt};
    CHECK_THROWS_AS(classify_degree(none, 4), validation_error);
    MapModel mismatch{s6(), hopf_ks(), std::nullopt};
    CHECK_THROWS_AS(classify_degree(mismatch, 4), validation_error);
    MapModel ok{proj_source(), std::nullopt, kill_w5()};
    CHECK_THROWS_AS(classify_degree(ok, 0), validation_error);
}

TEST_CASE("attachment over S^2 x S^2: onto criterion wins while G_2 dies") {
    auto ks = two_sphere_ks();
    MapModel m{ks.base, ks, std::nullopt};

    auto st = classify_degree(m, 2);
    CHECK(st.pi_rank == 2);
    CHECK(st.axes == std::vector<std::string>{"w1", "w2"});
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 2);
    CHECK(evidence_count(st, "Prop 1.4") == 1);
    CHECK(st.tcal.kind == VerdictKind::Exact);
    CHECK(st.tcal.dim() == 2);
    CHECK(st.scal.kind == VerdictKind::LowerBound);
    CHECK(st.scal.dim() == 2);
    CHECK(st.certificates.empty()); // no search was needed

    auto st3 = classify_degree(m, 3);
    CHECK(st3.G.dim() == 2); // (w3,1) and (w4,1) are cocycles
    CHECK(st3.gcal.dim() == 2);
}

TEST_CASE("sphere identities: full relaxed groups either parity") {
    MapModel odd{s3(), std::nullopt, Morphism::identity(s3())};
    auto st = classify_degree(odd, 3);
    CHECK(st.G.dim() == 1); // odd spheres have full Gottlieb group
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 1);
    CHECK(st.tcal.dim() == 1);

    MapModel even{s4(), std::nullopt, Morphism::identity(s4())};
    auto st4 = classify_degree(even, 4);
    CHECK(st4.G.dim() == 0); // classical: G_4(S^4) = 0
    CHECK(st4.gcal.kind == VerdictKind::Exact);
    CHECK(st4.gcal.dim() == 1);
    CHECK(evidence_count(st4, "Thm 1.6") == 1);
    REQUIRE(st4.certificates.size() >= 1);
    CHECK(st4.certificates[0].subject == "gcal");
    CHECK(st4.certificates[0].axis == "w4");

    auto st7 = classify_degree(even, 7);
    CHECK(st7.G.dim() == 1);
    CHECK(st7.gcal.dim() == 1);
}

TEST_CASE("Hopf fibration: everything is full in degree 4") {
    auto ks = hopf_ks();
    MapModel m{ks.base, ks, std::nullopt};
    auto st = classify_degree(m, 4);
    CHECK(st.pi_rank == 1);
    CHECK(st.G.dim() == 1); // (w4,1)+2(w7,v3) is a cocycle
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 1);
    CHECK(evidence_count(st, "Cor 1.7") == 1);
    CHECK(st.tcal.dim() == 1);
    CHECK(st.scal.dim() == 1);

    auto st7 = classify_degree(m, 7);
    CHECK(st7.G.dim() == 1);
}

TEST_CASE("Hopf times identity: G misses an axis the relaxed group recovers") {
    MapModel m{s4s4(), std::nullopt, hopf_times_id()};
    auto st = classify_degree(m, 4);
    CHECK(st.pi_rank == 2);
    CHECK(st.axes == std::vector<std::string>{"w4", "w4p"});
    CHECK(st.G.dim() == 1);
    CHECK(st.G.contains(unit(2, 0)));       // the Hopf-collapsed axis survives
    CHECK_FALSE(st.G.contains(unit(2, 1))); // the identity factor does not
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 2);
    CHECK(st.tcal.kind == VerdictKind::Exact);
    CHECK(st.tcal.dim() == 2);
    int search_certs = 0;
    for (const auto& c : st.certificates)
        if (c.subject == "gcal") ++search_certs;
    CHECK(search_certs == 2);

    auto st7 = classify_degree(m, 7);
    CHECK(st7.G.dim() == 2);
}

TEST_CASE("two-stage projection: full except the killed degree") {
    MapModel m{proj_source(), std::nullopt, kill_w5()};

    for (int n : {3, 7, 9}) {
        auto st = classify_degree(m, n);
        CHECK(st.gcal.kind == VerdictKind::Exact);
        CHECK(st.gcal.dim() == 1);
        CHECK(evidence_count(st, "Thm 1.6") == 1);
        CHECK(st.tcal.dim() == 1);
    }
    auto g = classify(m, {});
    REQUIRE(g.size() == 4);
    CHECK(g[0].G.dim() == 0);
    CHECK(g[1].G.dim() == 0);
    CHECK(g[2].G.dim() == 0);
    CHECK(g[3].G.dim() == 1);

    auto st5 = classify_degree(m, 5);
    CHECK(st5.G.dim() == 0);
    CHECK(st5.gcal.kind == VerdictKind::Exact);
    CHECK(st5.gcal.dim() == 0); // the w5 class extends over no product
    CHECK(st5.tcal.kind == VerdictKind::Exact);
    CHECK(st5.tcal.dim() == 0); // the rho-kernel is empty
    CHECK(st5.scal.kind == VerdictKind::LowerBound);
    CHECK(st5.scal.dim() == 1); // a genuine twist realizes the class
    REQUIRE(!st5.obstructions.empty());
    CHECK(st5.obstructions[0].witness.param == "c");
    bool scal_cert = false;
    for (const auto& c : st5.certificates)
        if (c.subject == "scal" && c.axis == "w5") {
            scal_cert = true;
            CHECK_FALSE(is_rationally_trivial(c.build.ks)); // needs the twist
        }
    CHECK(scal_cert);
}

TEST_CASE("collapse to S^6: the degree window zeroes the whole chain") {
    MapModel m{s6(), std::nullopt, s3s3_collapse()};
    auto st = classify_degree(m, 6);
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 0);
    CHECK(st.tcal.dim() == 0);
    CHECK(st.scal.kind == VerdictKind::Exact);
    CHECK(st.scal.dim() == 0);
    CHECK(evidence_count(st, "Prop 3.1") == 1);
    CHECK(evidence_count(st, "Prop 3.2") == 1);
    CHECK(st.certificates.empty());
    CHECK(st.obstructions.empty());

    auto all = classify(m);
    REQUIRE(all.size() == 2);
    CHECK(all[1].n == 11);
    CHECK(all[1].G.dim() == 1);
    CHECK(all[1].scal.dim() == 1);
}

TEST_CASE("CP^3 over S^4: tncz twist succeeds where the product fails") {
    MapModel m{s4(), cp3_over_s4_ks(), cp3_collapse()};
    auto st = classify_degree(m, 4);
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 0);
    CHECK(st.tcal.kind == VerdictKind::Exact);
    CHECK(st.tcal.dim() == 1);
    CHECK(st.scal.kind == VerdictKind::LowerBound);
    CHECK(st.scal.dim() == 1);

    REQUIRE(!st.obstructions.empty());
    CHECK(st.obstructions[0].subject == "gcal");
    CHECK(st.obstructions[0].witness.param == "c");

    bool tcal_cert = false;
    for (const auto& c : st.certificates)
        if (c.subject == "tcal") {
            tcal_cert = true;
            CHECK(is_tncz(c.build.ks, 20));
            CHECK_FALSE(is_rationally_trivial(c.build.ks));
        }
    CHECK(tcal_cert);
    CHECK(evidence_count(st, "Lemma 3.3") == 1);
}

TEST_CASE("the two presentations of the CP^3 collapse agree on G") {
    MapModel both{s4(), cp3_over_s4_ks(), cp3_collapse()};
    MapModel ks_only{s4(), cp3_over_s4_ks(), std::nullopt};
    MapModel f_only{s4(), std::nullopt, cp3_collapse()};
    auto a = classify_degree(both, 4);
    auto b = classify_degree(f_only, 4);
    CHECK(a.G == b.G);
    auto c = classify_degree(ks_only, 4, {{}, 2, 0, false});
    CHECK(a.G == c.G);
}

TEST_CASE("CP^2 over S^4: same split as CP^3") {
    MapModel m{s4(), std::nullopt, cp2_collapse()};
    auto st = classify_degree(m, 4);
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.tcal.dim() == 1);
    CHECK(st.tcal.kind == VerdictKind::Exact);
    CHECK(st.scal.dim() == 1);

    auto st7 = classify_degree(m, 7);
    CHECK(st7.G.dim() == 1);
    CHECK(st7.gcal.dim() == 1);
}

TEST_CASE("free loops on S^2: the section class is sectional but not tncz") {
    MapModel m{ls2(), std::nullopt, loop_incl()};
    auto st = classify_degree(m, 2);
    CHECK(st.pi_rank == 2);
    CHECK(st.axes == std::vector<std::string>{"x", "yb"});

    CHECK(st.G.dim() == 1);
    CHECK(st.G.contains(unit(2, 1))); // the loop class
    CHECK_FALSE(st.G.contains(unit(2, 0)));

    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 1);
    CHECK(st.tcal.kind == VerdictKind::Exact);
    CHECK(st.tcal.dim() == 1); // the base class stays excluded
    CHECK(st.scal.kind == VerdictKind::LowerBound);
    CHECK(st.scal.dim() == 2); // a twisted build recovers the free loop fibration

    bool x_cert = false;
    for (const auto& c : st.certificates)
        if (c.subject == "scal" && c.axis == "x") {
            x_cert = true;
            CHECK_FALSE(is_rationally_trivial(c.build.ks));
            CHECK(find_section_over_sphere(c.build.ks).has_value());
        }
    CHECK(x_cert);

    int x_obstructions = 0;
    for (const auto& o : st.obstructions)
        if (o.axis == "x") ++x_obstructions;
    CHECK(x_obstructions >= 2); // gcal and tcal both exclude the base axis

    auto st3 = classify_degree(m, 3);
    CHECK(st3.G.dim() == 1);
    CHECK(st3.gcal.dim() == 1);

    auto st1 = classify_degree(m, 1);
    CHECK(st1.G.dim() == 1);
    CHECK(st1.gcal.kind == VerdictKind::Exact);
    CHECK(st1.tcal.kind == VerdictKind::Exact); // squeezed above a full G
    CHECK(st1.scal.kind == VerdictKind::LowerBound);
}

TEST_CASE("searches can be disabled") {
    MapModel m{s4(), std::nullopt, cp3_collapse()};
    ClassifyOptions opt;
    opt.run_searches = false;
    auto st = classify_degree(m, 4, opt);
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Unknown);
    CHECK(st.tcal.kind == VerdictKind::Unknown);
    CHECK(st.scal.kind == VerdictKind::Unknown);
    CHECK(st.certificates.empty());
}

TEST_CASE("degree with no homotopy reports exact zeroes") {
    MapModel m{s4(), std::nullopt, Morphism::identity(s4())};
    auto st = classify_degree(m, 5);
    CHECK(st.pi_rank == 0);
    CHECK(st.G.dim() == 0);
    CHECK(st.gcal.kind == VerdictKind::Exact);
    CHECK(st.gcal.dim() == 0);
    CHECK(st.scal.dim() == 0);
}
