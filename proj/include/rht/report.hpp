#pragma once

#include "rht/lift.hpp"

namespace rht {

// model of a map f: X -> Y; at least one presentation must be present
struct MapModel {
    CdgaPtr Y;                     // minimal model of the target
    std::optional<KSExtension> ks; // base must agree with Y
    std::optional<Morphism> f;     // M(f): M(Y) -> M(X), source must agree with Y
};

// count of degree-n generators; rejects non-minimal models
int pi_rank(const CdgaPtr& M, int n);

bool is_generator_projection(const Morphism& p);

// quotient projection M(Y) -> M(Y without w0) when the single fiber generator
// has differential w0 + decomposables and the quotient closes up
std::optional<Morphism> kq_induced_projection(const KSExtension& ks);

struct CriterionHit {
    std::string tag; // evidence vocabulary: "Prop 1.4", "Cor 1.7", ...
    std::string detail;
};

struct InjectiveHit {
    CriterionHit note;
    std::vector<TrivialBuild> certificates; // one per degree-n generator axis
};

// pi_n(f) surjective: no fiber generator of degree n-1 carries a linear
// differential; fires -> gcal_n is all of pi_n(Y) tensor Q
std::optional<CriterionHit> criterion_surjective(const MapModel& m, int n);

// pi_*(f) injective, presented as a generator projection; fires only when
// every degree-n generator class gets a trivialization certificate
std::optional<InjectiveHit> criterion_injective(const MapModel& m, int n);

// single fiber generator: decomposable differential routes to the surjective
// criterion, a linear one to the injective criterion over the induced projection
std::optional<InjectiveHit> criterion_kq_fiber(const MapModel& m, int n);

// no generators of X in degree >= n: scal_n collapses to G_n
std::optional<CriterionHit> criterion_prop31(const CdgaPtr& X, int n);

// H_{n-1}(Der X) = 0: gcal_n = scal_n
std::optional<CriterionHit> criterion_prop32(const CdgaPtr& X, int n);

enum class VerdictKind { Exact, LowerBound, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<Subspace> space;
    int dim() const { return space ? space->dim() : -1; }
};

struct Evidence {
    std::string kind;    // criterion | certificate | obstruction | note
    std::string tag;     // "Prop 1.4", "Thm 1.6", "Cor 1.7", "Prop 3.1", "Prop 3.2",
                         // "Lemma 3.3", "Thm 2.1", "search", "chain"
    std::string subject; // G | gcal | tcal | scal
    std::string detail;
};

struct Certificate {
    std::string subject; // gcal | tcal | scal
    std::string axis;    // degree-n generator name
    TrivialBuild build;  // passes verify_diagram by construction
};

struct AxisObstruction {
    std::string subject;
    std::string axis;
    LiftWitness witness;
};

struct SubgroupStatus {
    int n = 0;
    int pi_rank = 0;
    std::vector<std::string> axes; // degree-n generators of M(Y), declaration order
    Subspace G;                    // exact, in axis-dual coordinates
    Verdict gcal, tcal, scal;
    std::vector<Evidence> evidence;
    std::vector<Certificate> certificates;
    std::vector<AxisObstruction> obstructions;
    SubgroupStatus() : G(0) {}
};

struct ClassifyOptions {
    std::vector<int> degrees; // empty: generator degrees of M(Y)
    int max_parameters = 2;
    int cohomology_cap = 0;   // 0: 2 * top fiber generator degree + n
    bool run_searches = true;
};

SubgroupStatus classify_degree(const MapModel& m, int n, const ClassifyOptions& options = {});
std::vector<SubgroupStatus> classify(const MapModel& m, const ClassifyOptions& options = {});

} // namespace rht
