#include <doctest.h>

#include "rht/lift.hpp"

using namespace rht;

namespace {

Polynomial gp(const AlgebraPtr& a, const std::string& name) {
    return Polynomial::generator(a, *a->find(name));
}

MorphismPtr share(Morphism m) { return std::make_shared<const Morphism>(std::move(m)); }

Monomial mono(const AlgebraPtr& a, const std::vector<std::pair<std::string, int>>& pows) {
    Monomial m = Monomial::one(a->size());
    for (const auto& [name, e] : pows) m.e[*a->find(name)] = e;
    return m;
}

CdgaPtr s4() {
    auto alg = FreeCGA::make({{"w4", 4, 0}, {"w7", 7, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w4") * gp(alg, "w4")});
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

CdgaPtr s6() {
    auto alg = FreeCGA::make({{"w6", 6, 0}, {"w11", 11, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w6") * gp(alg, "w6")});
}

CdgaPtr s3s3() {
    auto alg = FreeCGA::make({{"u3", 3, 0}, {"v3", 3, 0}});
    return CDGA::make(alg, {Polynomial::zero(alg), Polynomial::zero(alg)});
}

// free loop space of S^2: dy = x^2, d(yb) = 2 x xb
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

// two-stage source and its w5-killing quotient
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

PDerivation ptwist(const CdgaPtr& X, int deg, const std::string& gen, const PPoly& value) {
    std::vector<PPoly> vals(X->algebra()->size(), PPoly(X->algebra()));
    vals[*X->algebra()->find(gen)] = value;
    return PDerivation{share(Morphism::identity(X)), deg, std::move(vals)};
}

} // namespace

TEST_CASE("symbolic twisted total carries the parameter into D") {
    auto X = cp3();
    const auto& xa = X->algebra();
    PPoly v22 = promote(gp(xa, "v2") * gp(xa, "v2"));
    auto tot = symbolic_twisted_total(X, 4, ptwist(X, 3, "w7", v22.scaled(LinExpr::param("c", -2))));

    REQUIRE(tot.alg->size() == 3);
    CHECK(tot.alg->gen(0).name == "x");
    CHECK(tot.alg->gen(0).cap == 2);
    const PPoly& Dw7 = tot.D[*tot.alg->find("w7")];
    CHECK(Dw7.coeff(mono(tot.alg, {{"v2", 4}})) == LinExpr(1));
    CHECK(Dw7.coeff(mono(tot.alg, {{"v2", 2}, {"x", 1}})) == LinExpr::param("c", 2));
    CHECK(tot.d(PPoly::generator(tot.alg, 0)).is_zero());
    // D' squares to zero on generators even with the parameter around
    for (const auto& dv : tot.D) CHECK(tot.d(dv).is_zero());

    CHECK_THROWS_WITH_AS(symbolic_twisted_total(X, 4, ptwist(X, 2, "w7", v22)),
                         doctest::Contains("degree 3"), validation_error);
    auto bad_alg = FreeCGA::make({{"x", 2, 0}});
    auto Xbad = CDGA::make(bad_alg, {Polynomial::zero(bad_alg)});
    CHECK_THROWS_WITH_AS(
        symbolic_twisted_total(Xbad, 3, PDerivation{share(Morphism::identity(Xbad)), 2,
                                                    {PPoly(Xbad->algebra())}}),
        doctest::Contains("rename"), validation_error);
}

TEST_CASE("non-cocycle twists are rejected symbolically") {
    auto alg = FreeCGA::make({{"w2", 2, 0}, {"w3", 3, 0}});
    auto X = CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w2") * gp(alg, "w2")});
    auto bad = ptwist(X, 2, "w2", PPoly::unit(X->algebra(), LinExpr::param("c")));
    CHECK_THROWS_WITH_AS(symbolic_twisted_total(X, 3, bad), doctest::Contains("delta-cocycle"),
                         validation_error);
}

TEST_CASE("the sphere-to-projective lift pins the classical correction") {
    auto Y = s4();
    auto X = cp3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "w7")});
    PPoly v22 = promote(gp(xa, "v2") * gp(xa, "v2"));
    PSphereTwist tw{X, 4, ptwist(X, 3, "w7", v22.scaled(LinExpr::param("c", -2)))};
    Functional a{4, {{"w4", LinExpr::param("c")}}};

    LiftOutcome out = solve_lift_degreewise(f, tw, a, {});
    REQUIRE(out.kind == LiftOutcome::Kind::Found);
    const PPoly& Fw4 = out.values[0];
    CHECK(Fw4.coeff(mono(out.total, {{"v2", 2}})) == LinExpr(1));
    CHECK(Fw4.coeff(mono(out.total, {{"x", 1}})) == LinExpr::param("c"));
    CHECK(demote(out.values[1]) == transport(gp(xa, "w7"), out.total));
    CHECK(out.pinned.empty());
    CHECK(out.section_values.empty());

    // concrete twist at c = 1 through the plain overload
    Derivation th(share(Morphism::identity(X)), 3,
                  {Polynomial::zero(xa), (gp(xa, "v2") * gp(xa, "v2")).scaled(-2)});
    LiftOutcome one = solve_lift_degreewise(f, SphereTwist{X, 4, th}, Functional{4, {{"w4", LinExpr(1)}}}, {});
    REQUIRE(one.kind == LiftOutcome::Kind::Found);
    CHECK(demote(one.values[0]) ==
          transport(gp(xa, "v2") * gp(xa, "v2"), one.total) + Polynomial::generator(one.total, 0));
}

TEST_CASE("the cell-collapse lift works in the two-stage fiber") {
    auto Y = s4();
    auto X = cp2();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "v2") * gp(xa, "v5")});
    PSphereTwist tw{X, 4, ptwist(X, 3, "v5", promote(gp(xa, "v2")).scaled(LinExpr::param("c", -2)))};
    Functional a{4, {{"w4", LinExpr::param("c")}}};

    LiftOutcome out = solve_lift_degreewise(f, tw, a, {});
    REQUIRE(out.kind == LiftOutcome::Kind::Found);
    CHECK(out.values[0].coeff(mono(out.total, {{"x", 1}})) == LinExpr::param("c"));
    CHECK(demote(out.values[1]) == transport(gp(xa, "v2") * gp(xa, "v5"), out.total));
    auto tot = symbolic_twisted_total(X, 4, tw.theta);
    CHECK(tot.D[*tot.alg->find("v5")].coeff(mono(tot.alg, {{"v2", 1}, {"x", 1}})) ==
          LinExpr::param("c", 2));
}

TEST_CASE("the wedge collapse is obstructed by a fiber class") {
    auto Y = s6();
    auto X = s3s3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "u3") * gp(xa, "v3"), Polynomial::zero(xa)});
    PDerivation zero{share(Morphism::identity(X)), 5,
                     {PPoly(xa), PPoly(xa)}};

    SUBCASE("symbolic class") {
        LiftOutcome out =
            solve_lift_degreewise(f, PSphereTwist{X, 6, zero}, Functional{6, {{"w6", LinExpr::param("c")}}}, {});
        REQUIRE(out.kind == LiftOutcome::Kind::Obstructed);
        REQUIRE(out.witness.has_value());
        CHECK(out.witness->gen == "w11");
        CHECK(out.witness->param == "c");
        CHECK(out.witness->degree == 6);
        CHECK(out.witness->cls == (gp(xa, "u3") * gp(xa, "v3")).scaled(-2));
        CHECK(is_cocycle(X, out.witness->cls));
        CHECK_FALSE(is_coboundary(X, out.witness->cls));
        CHECK(out.witness->text.find("H^6") != std::string::npos);
    }
    SUBCASE("concrete class") {
        LiftOutcome out = solve_lift_degreewise(f, PSphereTwist{X, 6, zero},
                                                Functional{6, {{"w6", LinExpr(1)}}}, {});
        REQUIRE(out.kind == LiftOutcome::Kind::Obstructed);
        CHECK(out.witness->param == "");
        CHECK(out.witness->cls == (gp(xa, "u3") * gp(xa, "v3")).scaled(-2));
    }
    SUBCASE("zero class lifts") {
        LiftOutcome out =
            solve_lift_degreewise(f, PSphereTwist{X, 6, zero}, Functional{6, {}}, {});
        REQUIRE(out.kind == LiftOutcome::Kind::Found);
        CHECK(demote(out.values[0]) == transport(gp(xa, "u3") * gp(xa, "v3"), out.total));
        CHECK(demote(out.values[1]).is_zero());
    }
    SUBCASE("the square class really is alive in the product total") {
        auto talg = FreeCGA::make({{"x", 6, 2}, {"u3", 3, 0}, {"v3", 3, 0}});
        auto E = CDGA::make(talg, {Polynomial::zero(talg), Polynomial::zero(talg),
                                   Polynomial::zero(talg)});
        Polynomial w6_image = gp(talg, "x") + gp(talg, "u3") * gp(talg, "v3");
        Polynomial sq = w6_image * w6_image;
        CHECK(sq == (gp(talg, "x") * gp(talg, "u3") * gp(talg, "v3")).scaled(2));
        CHECK(is_cocycle(E, sq));
        CHECK_FALSE(is_coboundary(E, sq));
        CHECK(cohomology_dims(E, 12).back() == 1);
    }
}

TEST_CASE("identity data lifts along the inclusion") {
    auto X = s3s3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::identity(X);
    PDerivation zero{share(Morphism::identity(X)), 5, {PPoly(xa), PPoly(xa)}};
    LiftOutcome out =
        solve_lift_degreewise(f, PSphereTwist{X, 6, zero}, Functional{6, {}}, {});
    REQUIRE(out.kind == LiftOutcome::Kind::Found);
    CHECK(demote(out.values[0]) == transport(gp(xa, "u3"), out.total));
    CHECK(demote(out.values[1]) == transport(gp(xa, "v3"), out.total));
}

TEST_CASE("parameter budget splits undetermined from obstructed") {
    auto Y = s4();
    auto X = cp3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "w7")});
    PPoly v22 = promote(gp(xa, "v2") * gp(xa, "v2"));
    PSphereTwist tw{
        X, 4, ptwist(X, 3, "w7", v22.scaled(LinExpr::param("c1") + LinExpr::param("c3")))};
    Functional a{4, {{"w4", LinExpr::param("c2")}}};

    LiftOutcome capped = solve_lift_degreewise(f, tw, a, {});
    REQUIRE(capped.kind == LiftOutcome::Kind::Undetermined);
    CHECK(capped.reason.find("3") != std::string::npos);

    LiftOptions wide;
    wide.max_parameters = 3;
    LiftOutcome out = solve_lift_degreewise(f, tw, a, wide);
    REQUIRE(out.kind == LiftOutcome::Kind::Obstructed);
    CHECK(out.witness->param == "c1");
}

TEST_CASE("the loop fibration family pins its twist from the class") {
    auto Y = ls2();
    auto X = loops2();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {Polynomial::zero(xa), Polynomial::zero(xa),
                                       gp(xa, "xb"), gp(xa, "yb")});
    PSphereTwist tw{X, 2, ptwist(X, 1, "yb", promote(gp(xa, "xb")).scaled(LinExpr::param("c", -1)))};
    Functional a{2, {{"x", LinExpr(1)}}};

    SUBCASE("with section unknowns") {
        LiftOptions opt;
        opt.existential = {"c"};
        opt.section_unknowns = true;
        LiftOutcome out = solve_lift_degreewise(f, tw, a, opt);
        REQUIRE(out.kind == LiftOutcome::Kind::Found);
        CHECK(out.pinned.at("c") == LinExpr(2));
        CHECK(out.section_values.at("yb") == LinExpr(0));
        CHECK(demote(out.values[0]) == Polynomial::generator(out.total, 0));
        CHECK(demote(out.values[3]) == transport(gp(xa, "yb"), out.total));
    }
    SUBCASE("with the zero section") {
        LiftOptions opt;
        opt.existential = {"c"};
        LiftOutcome out = solve_lift_degreewise(f, tw, a, opt);
        REQUIRE(out.kind == LiftOutcome::Kind::Found);
        CHECK(out.pinned.at("c") == LinExpr(2));
    }
    SUBCASE("the product fibration obstructs the base class") {
        PDerivation zero{share(Morphism::identity(X)), 1, {PPoly(xa), PPoly(xa)}};
        LiftOutcome out =
            solve_lift_degreewise(f, PSphereTwist{X, 2, zero}, a, {});
        REQUIRE(out.kind == LiftOutcome::Kind::Obstructed);
        CHECK(out.witness->gen == "yb");
        CHECK(out.witness->degree == 1);
        CHECK(out.witness->cls == gp(xa, "xb").scaled(-2));
    }
    SUBCASE("the fiber class lifts over the product") {
        PDerivation zero{share(Morphism::identity(X)), 1, {PPoly(xa), PPoly(xa)}};
        LiftOutcome out = solve_lift_degreewise(f, PSphereTwist{X, 2, zero},
                                                Functional{2, {{"yb", LinExpr(1)}}}, {});
        REQUIRE(out.kind == LiftOutcome::Kind::Found);
        CHECK(demote(out.values[3]) ==
              transport(gp(xa, "yb"), out.total) + Polynomial::generator(out.total, 0));
    }
}

TEST_CASE("the trivial builder reproduces both sphere identities") {
    SUBCASE("even") {
        auto alg = FreeCGA::make({{"w2", 2, 0}, {"w3", 3, 0}});
        auto Y = CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w2") * gp(alg, "w2")});
        Functional a{2, {{"w2", LinExpr(Rational(3, 2))}}};
        auto b = build_trivial_fibration(Morphism::identity(Y), a);
        REQUIRE(b.has_value());
        const auto& talg = b->ks.total->algebra();
        Polynomial Dw3 = b->ks.total->d_gen(*talg->find("w3"));
        CHECK(Dw3.coeff(mono(talg, {{"w2", 2}})) == Rational(1));
        CHECK(Dw3.coeff(mono(talg, {{"w2", 1}, {"x", 1}})) == Rational(3));
        CHECK(b->F.value(0) ==
              transport(gp(alg, "w2"), talg) + Polynomial::generator(talg, 0).scaled(Rational(3, 2)));
        CHECK(b->s.value(0) == Polynomial::generator(b->ks.base->algebra(), 0));
        CHECK(verify_diagram(b->ks, b->s, b->F, Morphism::identity(Y), a).ok());
        CHECK(classifying_class(b->ks).zero);
        CHECK(find_section_over_sphere(b->ks).has_value());
    }
    SUBCASE("odd") {
        auto alg = FreeCGA::make({{"w3", 3, 0}});
        auto Y = CDGA::make(alg, {Polynomial::zero(alg)});
        Functional a{3, {{"w3", LinExpr(-2)}}};
        auto b = build_trivial_fibration(Morphism::identity(Y), a);
        REQUIRE(b.has_value());
        const auto& talg = b->ks.total->algebra();
        for (int i = 0; i < talg->size(); ++i) CHECK(b->ks.total->d_gen(i).is_zero());
        CHECK(b->F.value(0) ==
              transport(gp(alg, "w3"), talg) - Polynomial::generator(talg, 0).scaled(2));
    }
}

TEST_CASE("the builder completes the projection family where it can") {
    Morphism p = kill_w5();
    const auto& Y = p.source();
    const auto& yalg = Y->algebra();

    SUBCASE("degree 3") {
        auto b = build_trivial_fibration(p, Functional{3, {{"w3", LinExpr(1)}}});
        REQUIRE(b.has_value());
        const auto& talg = b->ks.total->algebra();
        Polynomial Dw9 = b->ks.total->d_gen(*talg->find("w9"));
        CHECK(Dw9.coeff(mono(talg, {{"w3", 1}, {"w7", 1}})) == Rational(1));
        CHECK(Dw9.coeff(mono(talg, {{"w7", 1}, {"x", 1}})) == Rational(1));
        CHECK(b->F.value(*yalg->find("w3")) ==
              transport(gp(p.target()->algebra(), "w3"), talg) + Polynomial::generator(talg, 0));
        CHECK(b->F.value(*yalg->find("w5")).is_zero());
    }
    SUBCASE("degree 7") {
        auto b = build_trivial_fibration(p, Functional{7, {{"w7", LinExpr(1)}}});
        REQUIRE(b.has_value());
        const auto& talg = b->ks.total->algebra();
        Polynomial Dw9 = b->ks.total->d_gen(*talg->find("w9"));
        CHECK(Dw9.coeff(mono(talg, {{"w3", 1}, {"x", 1}})) == Rational(-1));
    }
    SUBCASE("degree 9") {
        auto b = build_trivial_fibration(p, Functional{9, {{"w9", LinExpr(1)}}});
        REQUIRE(b.has_value());
        const auto& talg = b->ks.total->algebra();
        CHECK(b->ks.total->d_gen(*talg->find("w9")) ==
              transport(gp(p.target()->algebra(), "w3") * gp(p.target()->algebra(), "w7"), talg));
    }
    SUBCASE("degree 5 has no trivial completion") {
        CHECK_FALSE(build_trivial_fibration(p, Functional{5, {{"w5", LinExpr(1)}}}).has_value());
        CHECK_FALSE(
            build_trivial_fibration(p, Functional{5, {{"w5", LinExpr(Rational(-7, 3))}}}).has_value());
    }
}

TEST_CASE("the builder rejects what is not a generator projection") {
    auto Y = s4();
    auto X = cp3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "w7")});
    CHECK_THROWS_WITH_AS(build_trivial_fibration(f, Functional{4, {{"w4", LinExpr(1)}}}),
                         doctest::Contains("generator projection"), validation_error);

    auto alg3 = FreeCGA::make({{"w3", 3, 0}});
    auto Z = CDGA::make(alg3, {Polynomial::zero(alg3)});
    auto alg3b = FreeCGA::make({{"z3", 3, 0}});
    auto Zb = CDGA::make(alg3b, {Polynomial::zero(alg3b)});
    Morphism g = Morphism::make(Z, Zb, {gp(alg3b, "z3")});
    CHECK_THROWS_WITH_AS(build_trivial_fibration(g, Functional{3, {{"w3", LinExpr(1)}}}),
                         doctest::Contains("generator projection"), validation_error);
}

TEST_CASE("verify reports each broken square") {
    auto alg = FreeCGA::make({{"w2", 2, 0}, {"w3", 3, 0}});
    auto Y = CDGA::make(alg, {Polynomial::zero(alg), gp(alg, "w2") * gp(alg, "w2")});
    Functional a{2, {{"w2", LinExpr(1)}}};
    auto b = build_trivial_fibration(Morphism::identity(Y), a);
    REQUIRE(b.has_value());

    DiagramCheck good = verify_diagram(b->ks, b->s, b->F, Morphism::identity(Y), a);
    CHECK(good.ok());
    CHECK(good.describe() == "all squares commute");

    Morphism wrong_f = Morphism::make(Y, Y, {Polynomial::zero(alg), Polynomial::zero(alg)});
    DiagramCheck c1 = verify_diagram(b->ks, b->s, b->F, wrong_f, a);
    CHECK_FALSE(c1.f_square);
    CHECK(c1.describe().find("fiber map") != std::string::npos);

    DiagramCheck c2 = verify_diagram(b->ks, b->s, b->F, Morphism::identity(Y),
                                     Functional{2, {{"w2", LinExpr(99)}}});
    CHECK_FALSE(c2.a_square);
    CHECK(c2.describe().find("class functional") != std::string::npos);

    auto balg = b->ks.base->algebra();
    Morphism collapse = Morphism::make(b->ks.total, b->ks.base,
                                       {Polynomial::zero(balg), Polynomial::zero(balg),
                                        Polynomial::zero(balg)});
    DiagramCheck c3 = verify_diagram(b->ks, collapse, b->F, Morphism::identity(Y), a);
    CHECK_FALSE(c3.section);
    CHECK(c3.describe().find("section") != std::string::npos);

    CHECK_THROWS_WITH_AS(verify_diagram(b->ks, b->s, b->F, Morphism::identity(Y),
                                        Functional{2, {{"w2", LinExpr::param("c")}}}),
                         doctest::Contains("rational functional"), validation_error);
}

TEST_CASE("lift input validation") {
    auto Y = s4();
    auto X = cp3();
    const auto& xa = X->algebra();
    Morphism f = Morphism::make(Y, X, {gp(xa, "v2") * gp(xa, "v2"), gp(xa, "w7")});
    PDerivation zero{share(Morphism::identity(X)), 3, {PPoly(xa), PPoly(xa)}};

    CHECK_THROWS_AS(solve_lift_degreewise(f, PSphereTwist{X, 4, zero}, Functional{3, {}}, {}),
                    validation_error);
    auto other = s3s3();
    PDerivation zzz{share(Morphism::identity(other)), 3,
                    {PPoly(other->algebra()), PPoly(other->algebra())}};
    CHECK_THROWS_AS(solve_lift_degreewise(f, PSphereTwist{other, 4, zzz}, Functional{4, {}}, {}),
                    validation_error);
    CHECK_THROWS_WITH_AS(
        solve_lift_degreewise(f, PSphereTwist{X, 4, zero}, Functional{4, {{"w7", LinExpr(1)}}}, {}),
        doctest::Contains("degree-4"), validation_error);

    auto nm_alg = FreeCGA::make({{"u1", 1, 0}, {"w2", 2, 0}});
    auto NM = CDGA::make(nm_alg, {gp(nm_alg, "w2"), Polynomial::zero(nm_alg)});
    Morphism g = Morphism::make(NM, X, {Polynomial::zero(xa), Polynomial::zero(xa)});
    CHECK_THROWS_WITH_AS(solve_lift_degreewise(g, PSphereTwist{X, 4, zero}, Functional{4, {}}, {}),
                         doctest::Contains("minimal"), validation_error);
}
