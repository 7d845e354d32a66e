#pragma once

#include "rht/derivation.hpp"

namespace rht {

// Lambda x / x^2 with |x| = n and zero differential; the generator is named "x"
CdgaPtr sphere_base(int n);
bool is_sphere_base(const CdgaPtr& A);

// index of the same-named generator in `to`; degree and cap must match
int transport_gen(const AlgebraPtr& to, const Generator& g);

// rebuild p generator-by-name inside another algebra; reordering picks up the
// Koszul sign through normalize_word
template <class C>
PolynomialT<C> transport_t(const PolynomialT<C>& p, const AlgebraPtr& to) {
    const auto& from = p.algebra();
    std::vector<int> map(from->size(), -1);
    PolynomialT<C> out(to);
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> word;
        for (int i = 0; i < from->size(); ++i) {
            if (m.e[i] == 0) continue;
            if (map[i] < 0) map[i] = transport_gen(to, from->gen(i));
            word.insert(word.end(), m.e[i], map[i]);
        }
        auto nw = normalize_word(*to, word);
        if (nw.zero) continue;
        out.add_term(nw.mono, c * C(Rational(nw.sign)));
    }
    return out;
}

inline Polynomial transport(const Polynomial& p, const AlgebraPtr& to) {
    return transport_t(p, to);
}

// p = x_free + x * stripped; the coefficient of x*m transfers sign-free because
// x is declared first, so x*m is already in normal form
template <class C>
std::pair<PolynomialT<C>, PolynomialT<C>> split_x(int x_index, const PolynomialT<C>& p) {
    const auto& alg = p.algebra();
    PolynomialT<C> x_free(alg), stripped(alg);
    for (const auto& [m, c] : p.terms()) {
        if (m.e[x_index] == 0) {
            x_free.add_term(m, c);
        } else {
            Monomial s = m;
            s.e[x_index] = 0;
            stripped.add_term(s, c);
        }
    }
    return {std::move(x_free), std::move(stripped)};
}

struct KSExtension {
    CdgaPtr base;
    CdgaPtr total;  // base generators first, in base order, then fiber generators
    CdgaPtr fiber;  // fiber model: total with base positives killed
    int base_count = 0;
    std::vector<int> fiber_gens; // indices in the total algebra
    MorphismPtr incl;            // base -> total
    MorphismPtr proj;            // total -> fiber
};

// total_alg must start with the base generators; fiber_d gives D on the fiber
// generators (polynomials in total_alg), validated for the KS nilpotence order
// D(v_i) in Lambda(base, v_1..v_{i-1}) and for D^2 = 0
KSExtension make_ks(const CdgaPtr& base, const AlgebraPtr& total_alg,
                    std::vector<Polynomial> fiber_d);

// every D-value decomposable
bool is_decomposable_extension(const KSExtension& ks);

// fibration over a sphere presented as a degree n-1 twist on the fiber model X:
//   D'(v) = d_X(v) - (theta.x)(v),   (theta.x)(z) = (-1)^{n|z|} theta(z) x
struct SphereTwist {
    CdgaPtr X;
    int n = 0;
    Derivation theta; // in Der_{n-1}(X, X; id)
};

// pre: delta(theta) = 0; X free of a generator named "x"
KSExtension twist_to_extension(const SphereTwist& t);

struct ClassifyingClass {
    Derivation theta; // extracted twist, a delta-cocycle in Der_{n-1}(X)
    DerHomology H;    // H_{n-1}(Der X)
    Vec coords;       // coordinates of [theta] in H.reps
    bool zero = true;
};

// pre: sphere base, minimal fiber; theta(v) = -u_v where D(v) = d_X(v) + x u_v
ClassifyingClass classifying_class(const KSExtension& ks);
bool is_rationally_trivial(const KSExtension& ks);

// rho: H_{n-1}(Der X) -> Der_{n-1} H^*(X;Q), restricted to source degrees <= cap;
// rho([sigma])([w]) = [sigma(w)]
struct RhoMap {
    int n = 0, cap = 0;
    DerHomology H;                             // classes of Der_{n-1}(X)
    std::vector<CohomologyResult> HX;          // H^k(X) for k = 0..cap
    std::vector<std::map<int, Matrix>> action; // action[j][k]: H^k -> H^{k-n+1}
    bool class_acts_zero(const Vec& coords) const;
    bool is_zero() const;
};

RhoMap rho(const CdgaPtr& X, int n, int cap);

// true iff rho vanishes on the classifying class for all source degrees <= cap;
// cross-checked against the Kunneth dimension count dim H^k(E) =
// dim H^k(X) + dim H^{k-n}(X) for k <= cap; disagreement raises
// inconsistency_error (a bug, not a user error)
bool is_tncz(const KSExtension& ks, int cap);

// section r: total -> base with r(x) = x; r(v) = t_v x on degree-n fiber
// generators is the only freedom, and the chain condition is affine in t
std::optional<Morphism> find_section_over_sphere(const KSExtension& ks);

} // namespace rht
