#include "rht/corpus.hpp"

namespace rht::corpus {

namespace {

std::vector<CorpusEntry> build() {
    std::vector<CorpusEntry> out;

    out.push_back({
        "ex2.2",
        "bundle over S^2 x S^2 with fiber S^3, Dv3 = w1*w2",
        R"(algebra Y {
  gen w1 : 2;
  gen w2 : 2;
  gen w3 : 3;
  gen w4 : 3;
  d w3 = w1^2;
  d w4 = w2^2;
}

ks E over Y fiber (v3 : 3) {
  D v3 = w1*w2;
}
)",
        {"evsub", "--builtin", "ex2.2", "--degree", "2"},
        R"({"n": 2, "pi_rank": 2, "dim": 0})",
    });

    out.push_back({
        "ex2.3-odd",
        "identity of an odd sphere, S^3",
        R"(algebra Y {
  gen w3 : 3;
}

morphism f : Y -> Y {
  w3 = w3;
}
)",
        {"build", "--builtin", "ex2.3-odd", "--class", "w3=1"},
        R"({"found": true, "classifying_class_zero": true})",
    });

    out.push_back({
        "ex2.3-even",
        "identity of an even sphere, S^2",
        R"(algebra Y {
  gen w2 : 2;
  gen w3 : 3;
  d w3 = w2^2;
}

morphism f : Y -> Y {
  w2 = w2;
  w3 = w3;
}
)",
        {"build", "--builtin", "ex2.3-even", "--class", "w2=1"},
        R"({"found": true, "classifying_class_zero": true})",
    });

    out.push_back({
        "ex2.4",
        "Hopf bundle S^7 -> S^4 as a KS extension",
        R"(algebra Y {
  gen w4 : 4;
  gen w7 : 7;
  d w7 = w4^2;
}

ks E over Y fiber (v3 : 3) {
  D v3 = w4;
}
)",
        {"evsub", "--builtin", "ex2.4", "--degree", "4"},
        R"({"n": 4, "pi_rank": 1, "dim": 1})",
    });

    out.push_back({
        "ex2.4-product",
        "Hopf map times the identity of S^4",
        R"(algebra Y {
  gen w4 : 4;
  gen w7 : 7;
  gen w4p : 4;
  gen w7p : 7;
  d w7 = w4^2;
  d w7p = w4p^2;
}

algebra X {
  gen u7 : 7;
  gen w4p : 4;
  gen w7p : 7;
  d w7p = w4p^2;
}

morphism f : Y -> X {
  w7 = u7;
  w4p = w4p;
  w7p = w7p;
}
)",
        {"classify", "--builtin", "ex2.4-product", "--degrees", "4..4"},
        R"({"reports": [{"n": 4, "G": {"dim": 1}, "gcal": {"kind": "Exact", "dim": 2}}]})",
    });

    out.push_back({
        "ex2.5",
        "projection killing the degree-5 generator of a four-stage model",
        R"(algebra Y {
  gen w3 : 3;
  gen w5 : 5;
  gen w7 : 7;
  gen w9 : 9;
  d w7 = w3*w5;
  d w9 = w3*w7;
}

algebra X {
  gen w3 : 3;
  gen w7 : 7;
  gen w9 : 9;
  d w9 = w3*w7;
}

morphism f : Y -> X {
  w3 = w3;
  w5 = 0;
  w7 = w7;
  w9 = w9;
}
)",
        {"evsub", "--builtin", "ex2.5", "--degree", "3"},
        R"({"n": 3, "pi_rank": 1, "dim": 0})",
    });

    out.push_back({
        "ex2.6",
        "collapse of S^3 x S^3 onto S^6",
        R"(algebra Y {
  gen w6 : 6;
  gen w11 : 11;
  d w11 = w6^2;
}

algebra X {
  gen u3 : 3;
  gen v3 : 3;
}

morphism f : Y -> X {
  w6 = u3*v3;
  w11 = 0;
}
)",
        {"lift", "--builtin", "ex2.6", "--class", "w6=c"},
        R"({"kind": "Obstructed", "witness": {"param": "c", "degree": 6}})",
    });

    out.push_back({
        "ex2.6-total",
        "trivial product S^6 x S^3 x S^3 (formal model)",
        R"(algebra E {
  gen x : 6;
  gen u3 : 3;
  gen v3 : 3;
  trunc x 2;
}
)",
        {"cohomology", "--builtin", "ex2.6-total", "--degree", "12..12"},
        R"({"dims": [{"n": 12, "dim": 1}]})",
    });

    out.push_back({
        "ex3.4",
        "collapse S^4 -> CP^3 model with a one-parameter twist over S^4",
        R"(algebra Y {
  gen w4 : 4;
  gen w7 : 7;
  d w7 = w4^2;
}

algebra X {
  gen v2 : 2;
  gen w7 : 7;
  d w7 = v2^4;
}

morphism f : Y -> X {
  w4 = v2^2;
  w7 = w7;
}

twist over sphere 4 on X {
  theta w7 = -2*c*v2^2;
}
)",
        {"lift", "--builtin", "ex3.4", "--class", "w4=c"},
        R"({"kind": "Found", "F": {"w4": "v2^2 + c*x", "w7": "w7"}})",
    });

    out.push_back({
        "ex3.5",
        "collapse S^4 -> CP^2 model with a one-parameter twist over S^4",
        R"(algebra Y {
  gen w4 : 4;
  gen w7 : 7;
  d w7 = w4^2;
}

algebra X {
  gen v2 : 2;
  gen v5 : 5;
  d v5 = v2^3;
}

morphism f : Y -> X {
  w4 = v2^2;
  w7 = v2*v5;
}

twist over sphere 4 on X {
  theta v5 = -2*c*v2;
}
)",
        {"lift", "--builtin", "ex3.5", "--class", "w4=c"},
        R"({"kind": "Found", "F": {"w4": "v2^2 + c*x", "w7": "v2*v5"}})",
    });

    out.push_back({
        "ex3.6",
        "fiber inclusion of the loop fiber into a non-tncz S^2 bundle model",
        R"(algebra Y {
  gen x : 2;
  gen y : 3;
  gen xb : 1;
  gen yb : 2;
  d y = x^2;
  d yb = 2*x*xb;
}

algebra X {
  gen xb : 1;
  gen yb : 2;
}

morphism f : Y -> X {
  x = 0;
  y = 0;
  xb = xb;
  yb = yb;
}
)",
        {"classify", "--builtin", "ex3.6", "--degrees", "2..2"},
        R"({"reports": [{"n": 2, "pi_rank": 2, "G": {"dim": 1}}]})",
    });

    out.push_back({
        "ex3.6-c1",
        "twisted loop-space bundle over S^2 (nonzero classifying class)",
        R"(algebra X {
  gen xb : 1;
  gen yb : 2;
}

twist over sphere 2 on X {
  theta yb = -2*xb;
}
)",
        {"tncz", "--builtin", "ex3.6-c1", "--cap", "2"},
        R"({"tncz": false, "rationally_trivial": false, "total_dims": [1, 1, 1]})",
    });

    out.push_back({
        "ex3.6-c0",
        "untwisted loop-space bundle over S^2 (zero classifying class)",
        R"(algebra X {
  gen xb : 1;
  gen yb : 2;
}

twist over sphere 2 on X {
}
)",
        {"tncz", "--builtin", "ex3.6-c0", "--cap", "2"},
        R"({"tncz": true, "rationally_trivial": true, "total_dims": [1, 1, 2]})",
    });

    return out;
}

} // namespace

const std::vector<CorpusEntry>& entries() {
    static const std::vector<CorpusEntry> all = build();
    return all;
}

const CorpusEntry* find(const std::string& key) {
    for (const auto& e : entries())
        if (e.key == key) return &e;
    return nullptr;
}

} // namespace rht::corpus
