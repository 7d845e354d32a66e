#include <doctest.h>

#include "rht/corpus.hpp"
#include "rht/json_io.hpp"

using namespace rht;

namespace {

// every key of `expected` must appear in `actual` with the same value;
// arrays must match in length and element-wise
bool subset(const ojson& expected, const ojson& actual) {
    if (expected.is_object()) {
        if (!actual.is_object()) return false;
        for (const auto& [k, v] : expected.items())
            if (!actual.contains(k) || !subset(v, actual.at(k))) return false;
        return true;
    }
    if (expected.is_array()) {
        if (!actual.is_array() || expected.size() != actual.size()) return false;
        for (size_t i = 0; i < expected.size(); ++i)
            if (!subset(expected[i], actual[i])) return false;
        return true;
    }
    return expected == actual;
}

} // namespace

TEST_CASE("corpus keys are unique and findable") {
    const auto& all = corpus::entries();
    CHECK(all.size() == 13);
    for (const auto& e : all) CHECK(corpus::find(e.key) == &e);
    CHECK(corpus::find("no-such-key") == nullptr);
}

TEST_CASE("every corpus document parses and round-trips") {
    for (const auto& e : corpus::entries()) {
        CAPTURE(e.key);
        auto doc = dsl::parse_document(e.text);
        CHECK(!doc.blocks.empty());
        std::string printed = dsl::print_document(doc);
        CHECK(dsl::print_document(dsl::parse_document(printed)) == printed);
    }
}

TEST_CASE("every corpus check produces its expected fragment") {
    for (const auto& e : corpus::entries()) {
        CAPTURE(e.key);
        auto res = run_command(e.check_args);
        CAPTURE(res.out.dump());
        CHECK(res.code == 0);
        CHECK(subset(ojson::parse(e.expected), res.out));
    }
}

TEST_CASE("corpus documents match hand-built models") {
    // same map as ex2.5, assembled without the parser
    auto yalg = FreeCGA::make({{"w3", 3, 0}, {"w5", 5, 0}, {"w7", 7, 0}, {"w9", 9, 0}});
    auto gp = [](const AlgebraPtr& a, const char* n) {
        for (int i = 0; i < a->size(); ++i)
            if (a->gen(i).name == n) return Polynomial::generator(a, i);
        throw contract_error("no generator");
    };
    auto Y = CDGA::make(yalg, {Polynomial::zero(yalg), Polynomial::zero(yalg),
                               gp(yalg, "w3") * gp(yalg, "w5"), gp(yalg, "w3") * gp(yalg, "w7")});
    auto xalg = FreeCGA::make({{"w3", 3, 0}, {"w7", 7, 0}, {"w9", 9, 0}});
    auto X = CDGA::make(xalg, {Polynomial::zero(xalg), Polynomial::zero(xalg),
                               gp(xalg, "w3") * gp(xalg, "w7")});
    auto f = Morphism::make(Y, X, {gp(xalg, "w3"), Polynomial::zero(xalg), gp(xalg, "w7"),
                                   gp(xalg, "w9")});

    auto doc = dsl::parse_document(corpus::find("ex2.5")->text);
    MapModel from_dsl = dsl::to_map_model(doc);
    MapModel by_hand{Y, std::nullopt, f};

    for (int n : {3, 5, 7, 9}) {
        CAPTURE(n);
        auto a = classify_degree(from_dsl, n);
        auto b = classify_degree(by_hand, n);
        CHECK(json_status(a) == json_status(b));
    }
}
