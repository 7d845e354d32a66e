#pragma once

#include "rht/report.hpp"

#include <variant>

namespace rht::dsl {

// thrown for every lexical, syntactic, or resolution failure; the message
// always starts with "line L, col C:"
struct ParseError : validation_error {
    int line = 0, col = 0;
    ParseError(int line_, int col_, const std::string& msg)
        : validation_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                           ": " + msg),
          line(line_), col(col_) {}
};

struct AlgebraBlock {
    std::string name;
    CdgaPtr model;
};

struct MorphismBlock {
    std::string name;
    std::string source, target; // algebra block names
    MorphismPtr map;
};

struct KsBlock {
    std::string name;
    std::string base; // algebra block name
    KSExtension ks;
};

struct TwistBlock {
    std::string name; // empty when anonymous
    std::string on;   // algebra block name
    PSphereTwist twist;
};

// a trivialization certificate: twist + lift + section + realized class,
// relative to a named morphism; verified by materialize + verify_diagram
struct CertificateBlock {
    std::string name; // empty when anonymous
    std::string map;  // morphism block name
    int n = 0;
    PDerivation theta;                      // degree n-1 over the target model
    AlgebraPtr source_alg;                  // generators of the morphism's source
    AlgebraPtr total_alg;                   // x : n (trunc 2), then the target generators
    std::vector<PPoly> F;                   // one value per source generator, in total_alg
    std::map<std::string, LinExpr> section; // degree-n fiber generator -> coefficient of x
    Functional cls;
};

using Block = std::variant<AlgebraBlock, MorphismBlock, KsBlock, TwistBlock, CertificateBlock>;

struct Document {
    std::vector<Block> blocks;

    const AlgebraBlock* algebra(const std::string& name) const;
    const MorphismBlock* morphism(const std::string& name) const;
    std::vector<const AlgebraBlock*> algebras() const;
    std::vector<const MorphismBlock*> morphisms() const;
    std::vector<const KsBlock*> extensions() const;
    std::vector<const TwistBlock*> twists() const;
    std::vector<const CertificateBlock*> certificates() const;
};

Document parse_document(const std::string& text);

// canonical form; print then parse reproduces the document contents
std::string print_document(const Document& doc);

// scalar expression: rational constants and single-letter parameters
LinExpr parse_scalar(const std::string& text);

// unique-block selectors; validation_error when missing or ambiguous
const MorphismBlock& only_morphism(const Document& doc);
const KsBlock& only_ks(const Document& doc);
const TwistBlock& only_twist(const Document& doc);
const CertificateBlock& only_certificate(const Document& doc);

// model lookup for single-model commands: an explicit algebra or ks block name
// (a ks resolves to its total), else the unique algebra, else the target of
// the unique morphism
CdgaPtr select_model(const Document& doc, const std::string& name = "");

// the map a document presents: its morphism if present (plus any ks block),
// else its ks block alone
MapModel to_map_model(const Document& doc);

// substitute parameters and build the concrete twist
SphereTwist concrete_twist(const TwistBlock& t, const std::map<std::string, Rational>& bindings);

// rebuild a twist generator-by-name over another copy of the same model
PSphereTwist retarget(const PSphereTwist& t, const CdgaPtr& X);

struct MaterializedCertificate {
    KSExtension ks;
    Morphism F; // source model -> total
    Morphism r; // total -> base
    Functional a;
};

// substitute parameters, rebuild the extension from the twist, and validate
// every map; verify_diagram(ks, r, F, f, a) finishes the check
MaterializedCertificate materialize(const CertificateBlock& c, const Document& doc,
                                    const std::map<std::string, Rational>& bindings = {});

// self-contained document (algebras + morphism + certificate) for a computed
// trivialization of f realizing the class a
Document certificate_document(const Morphism& f, const TrivialBuild& build, const Functional& a);

} // namespace rht::dsl
