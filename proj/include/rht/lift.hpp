#pragma once

#include "rht/fibration.hpp"

namespace rht {

// rational class to realize: coefficients on the degree-n source generators,
// possibly with named parameters (kept as indeterminates by the solver)
struct Functional {
    int n = 0;
    std::map<std::string, LinExpr> coeffs;

    LinExpr at(const std::string& name) const {
        auto it = coeffs.find(name);
        return it == coeffs.end() ? LinExpr(0) : it->second;
    }
    std::vector<std::string> params() const {
        std::vector<std::string> out;
        for (const auto& [name, c] : coeffs) c.collect_params(out);
        return out;
    }
};

// twist with parameter-valued coefficients (membership searches)
struct PSphereTwist {
    CdgaPtr X;
    int n = 0;
    PDerivation theta;
};

// Lambda x tensor X with D'(v) = d_X(v) - (-1)^{n|v|} theta(v) x, theta symbolic
struct PTotal {
    AlgebraPtr alg; // x first, then the X generators
    CdgaPtr X;
    int n = 0;
    std::vector<PPoly> D;

    PPoly d(const PPoly& p) const { return leibniz_d(alg, D, p); }
};

PTotal symbolic_twisted_total(const CdgaPtr& X, int n, const PDerivation& theta);

struct LiftOptions {
    // cap on indeterminate (user-declared) parameters; internal unknowns are
    // eliminated exactly and do not count
    int max_parameters = 2;
    // declared parameters the solver may pin (search coefficients); everything
    // else declared is an indeterminate the answer must cover uniformly
    std::vector<std::string> existential;
    // route the a-constraint through an unknown section r(v) = t_v x instead of
    // the zero section, and require r to be a chain map
    bool section_unknowns = false;
};

struct LiftWitness {
    std::string gen;   // source generator whose chain equation is unsatisfiable
    std::string param; // "" for the constant component, else the indeterminate
    Polynomial cls;    // obstructing class in the fiber model (zero if unframed)
    int degree = 0;    // its cohomological degree
    std::string text;
};

struct LiftOutcome {
    enum class Kind { Found, Obstructed, Undetermined };
    Kind kind = Kind::Undetermined;
    AlgebraPtr total;          // x-first twisted total algebra
    std::vector<PPoly> values; // Found: F on each source generator, indeterminates only
    // solved values for existential parameters and for section coefficients
    std::map<std::string, LinExpr> pinned;
    std::map<std::string, LinExpr> section_values; // by degree-n fiber generator name
    std::optional<LiftWitness> witness;
    std::string reason; // Undetermined
};

// strict lift F: source -> (Lambda x tensor X, D') with q o F = M(f), the pure-x
// coefficient realizing a, and D' F = F d, processed generator by generator in
// increasing degree with affine families propagated exactly
LiftOutcome solve_lift_degreewise(const Morphism& f, const PSphereTwist& twist,
                                  const Functional& a, const LiftOptions& options = {});
LiftOutcome solve_lift_degreewise(const Morphism& f, const SphereTwist& twist,
                                  const Functional& a, const LiftOptions& options = {});

struct TrivialBuild {
    KSExtension ks;
    Morphism F; // source model -> total
    Morphism s; // total -> base, the zero section
};

// builder for a generator projection p (each source generator to the same-named
// target generator or to zero) and a constant functional a: the boundary-twist
// recipe first, then an exact affine completion; nullopt when no strict
// trivialization exists
std::optional<TrivialBuild> build_trivial_fibration(const Morphism& p, const Functional& a);

struct DiagramCheck {
    bool f_square = false; // q o F = M(f)
    bool a_square = false; // r o F = M(a)
    bool section = false;  // r: total -> base with r(x) = x
    bool wiring = false;   // the maps connect the right objects
    bool ok() const { return f_square && a_square && section && wiring; }
    std::string describe() const;
};

DiagramCheck verify_diagram(const KSExtension& ks, const Morphism& r, const Morphism& F,
                            const Morphism& f, const Functional& a);

} // namespace rht
