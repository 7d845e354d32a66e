#pragma once

#include "rht/cdga.hpp"

namespace rht {

using MorphismPtr = std::shared_ptr<const Morphism>;

// Extension of generator values as a degree-n phi-derivation:
//   theta(ab) = theta(a) phi(b) + (-1)^{n|a|} phi(a) theta(b),
// which on a normalized monomial B_1...B_k gives
//   theta(B_1...B_k) = sum_j (-1)^{n deg(B_1..B_{j-1})} phi(prefix) theta(B_j) phi(suffix)
// with theta(g^e) = e phi(g)^{e-1} theta(g) inside the j-th factor.
template <class C>
PolynomialT<C> derivation_apply(const Morphism& phi, int n,
                                const std::vector<PolynomialT<C>>& values,
                                const PolynomialT<C>& p) {
    const auto& src = phi.source()->algebra();
    const auto& tgt = phi.target()->algebra();
    PolynomialT<C> out(tgt);
    for (const auto& [m, c] : p.terms()) {
        int prefix_deg = 0;
        for (int j = 0; j < src->size(); ++j) {
            const int e = m.e[j];
            if (e == 0) continue;
            const int dj = src->gen(j).degree;
            if (!values[j].is_zero()) {
                PolynomialT<C> term = PolynomialT<C>::unit(tgt);
                for (int i = 0; i < j && !term.is_zero(); ++i)
                    for (int rep = 0; rep < m.e[i]; ++rep)
                        term = term * promote_like<C>(phi.value(i));
                for (int rep = 0; rep < e - 1; ++rep)
                    term = term * promote_like<C>(phi.value(j));
                term = term * values[j];
                for (int i = j + 1; i < src->size() && !term.is_zero(); ++i)
                    for (int rep = 0; rep < m.e[i]; ++rep)
                        term = term * promote_like<C>(phi.value(i));
                Rational s = e;
                if ((n % 2 != 0) && (prefix_deg % 2 != 0)) s = -s;
                out += term.scaled(C(s)).scaled(c);
            }
            prefix_deg += e * dj;
        }
    }
    return out;
}

// A phi-derivation of degree n >= 0 with exact rational values.
class Derivation {
public:
    Derivation(MorphismPtr phi, int n, std::vector<Polynomial> values);
    static Derivation zero(MorphismPtr phi, int n);
    // the symbol (g, h): sends generator g to h, all others to zero
    static Derivation symbol(MorphismPtr phi, int n, int gen_index, Polynomial h);

    const MorphismPtr& phi() const { return phi_; }
    int degree() const { return n_; }
    const Polynomial& value(int i) const { return values_[i]; }
    const std::vector<Polynomial>& values() const { return values_; }
    bool is_zero() const;

    Polynomial apply(const Polynomial& p) const;

    Derivation operator+(const Derivation& o) const;
    Derivation operator-() const;
    Derivation operator-(const Derivation& o) const { return *this + (-o); }
    Derivation scaled(const Rational& c) const;
    bool operator==(const Derivation& o) const;

    // symbol notation, e.g. "(w4, 1) + (w7, 2*v3)"
    std::string str() const;

private:
    MorphismPtr phi_;
    int n_ = 0;
    std::vector<Polynomial> values_;
};

// delta(theta) = d_B o theta - (-1)^{|theta|} theta o d_A; degree drops by one
Derivation delta(const Derivation& theta);

// derivation with affine-parameter values (twist/section searches)
struct PDerivation {
    MorphismPtr phi;
    int n = 0;
    std::vector<PPoly> values;

    PPoly apply(const PPoly& p) const;
};

PDerivation delta(const PDerivation& theta);
PDerivation promote(const Derivation& theta);

// The finite coordinate space Der_n(A,B;phi): for each source generator g with
// |g| >= n, one block of coordinates indexed by the monomial basis of B^{|g|-n}.
struct DerSpace {
    MorphismPtr phi;
    int n = 0;
    std::vector<int> gens;          // source generators with a nonempty block
    std::vector<GradedBasis> bases; // target basis per listed generator
    std::vector<int> offsets;       // block offsets; dim = offsets.back()
    int dim = 0;

    Derivation from_coords(const Vec& v) const;
    Vec coords(const Derivation& theta) const;
    Derivation basis_elem(int k) const;
    std::string symbol_str(int k) const; // "(g, mono)"
};

// pre: n >= 0; source free of truncated even generators
DerSpace der_space(MorphismPtr phi, int n);

// spec op: ordered basis of Der_n; pre n >= 1
std::vector<Derivation> der_basis(const MorphismPtr& phi, int n);

// matrix of delta: Der_n -> Der_{n-1} in der_space coordinates
Matrix delta_matrix(const DerSpace& from, const DerSpace& to);

struct DerHomology {
    int dim = 0;
    std::vector<Derivation> reps; // delta-cocycles
};

// homology of Der_{n+1} -> Der_n -> Der_{n-1}; pre n >= 1
DerHomology der_homology(const MorphismPtr& phi, int n);

struct EvalSubgroup {
    int pi_rank = 0;        // count of degree-n source generators
    std::vector<int> gens;  // their indices
    Subspace span;          // subspace of Q^{pi_rank} in generator-dual coordinates
    EvalSubgroup() : span(0) {}
};

// restrictions of delta-cocycles of Der_n to the degree-n generator duals;
// pre: n >= 1 and the source is a minimal Sullivan model
EvalSubgroup evaluation_subgroup(const MorphismPtr& phi, int n);
EvalSubgroup gottlieb_group(const CdgaPtr& A, int n);

} // namespace rht
