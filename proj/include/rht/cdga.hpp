#pragma once

#include "rht/graded.hpp"
#include "rht/linalg.hpp"

#include <memory>

namespace rht {

class CDGA;
using CdgaPtr = std::shared_ptr<const CDGA>;

// Leibniz extension of a differential given by generator values.
// d(m) for a monomial m = g_{j1}^{e1}...g_{jk}^{ek} (declaration order) is
//   sum_j (-1)^{deg(prefix_j)} e_j * prefix_j * g_j^{e_j-1} * d(g_j) * suffix_j.
// Every product goes through the polynomial multiply, so cap kills happen
// before coefficient products (keeps affine coefficients affine).
template <class C>
PolynomialT<C> leibniz_d(const AlgebraPtr& alg, const std::vector<PolynomialT<C>>& d_gens,
                         const PolynomialT<C>& p) {
    PolynomialT<C> out(alg);
    for (const auto& [m, c] : p.terms()) {
        int prefix_deg = 0;
        for (int j = 0; j < alg->size(); ++j) {
            const int e = m.e[j];
            if (e == 0) continue;
            const int dj = alg->gen(j).degree;
            if (!d_gens[j].is_zero()) {
                PolynomialT<C> term = PolynomialT<C>::unit(alg);
                for (int i = 0; i < j; ++i)
                    if (m.e[i])
                        term = term * PolynomialT<C>::generator(alg, i).pow(m.e[i]);
                term = term * PolynomialT<C>::generator(alg, j).pow(e - 1);
                term = term * d_gens[j];
                for (int i = j + 1; i < alg->size(); ++i)
                    if (m.e[i])
                        term = term * PolynomialT<C>::generator(alg, i).pow(m.e[i]);
                Rational s = (prefix_deg % 2 == 0) ? e : -e;
                out += term.scaled(C(s)).scaled(c);
            }
            prefix_deg += e * dj;
        }
    }
    return out;
}

// Multiplicative extension of generator values (a would-be algebra map).
// values[i] lives in tgt; p lives in src.
template <class C>
PolynomialT<C> apply_values(const AlgebraPtr& src, const AlgebraPtr& tgt,
                            const std::vector<PolynomialT<C>>& values, const PolynomialT<C>& p) {
    PolynomialT<C> out(tgt);
    for (const auto& [m, c] : p.terms()) {
        PolynomialT<C> term = PolynomialT<C>::unit(tgt);
        for (int j = 0; j < src->size() && !term.is_zero(); ++j)
            for (int rep = 0; rep < m.e[j]; ++rep) term = term * values[j];
        out += term.scaled(c);
    }
    return out;
}

class CDGA {
public:
    // validated construction: degree +1 homogeneous values, d^2 = 0 on every
    // generator, and g*d(g) = 0 for capped even generators (so d descends to
    // the square-zero quotient)
    static CdgaPtr make(AlgebraPtr alg, std::vector<Polynomial> d_values);

    const AlgebraPtr& algebra() const { return alg_; }
    const Polynomial& d_gen(int i) const { return d_[i]; }
    const std::vector<Polynomial>& d_gens() const { return d_; }
    bool d_is_zero() const;

    Polynomial d(const Polynomial& p) const { return leibniz_d(alg_, d_, p); }
    PPoly d(const PPoly& p) const;

    CDGA() = default;

private:
    AlgebraPtr alg_;
    std::vector<Polynomial> d_;
    std::vector<PPoly> pd_; // promoted d-values
};

CdgaPtr make_cdga(AlgebraPtr alg, std::vector<Polynomial> d_values);

// matrix of d from degree k to degree k+1 in the graded_basis coordinates
Matrix d_matrix(const CdgaPtr& A, int k);

struct CohomologyResult {
    int dim = 0;
    std::vector<Polynomial> reps;
};

CohomologyResult cohomology(const CdgaPtr& A, int k);
std::vector<int> cohomology_dims(const CdgaPtr& A, int k_max); // dims for k = 0..k_max

bool is_cocycle(const CdgaPtr& A, const Polynomial& p);
bool is_coboundary(const CdgaPtr& A, const Polynomial& p); // pre: homogeneous cocycle

// coordinates of cocycle z in the basis reps of H^k
// pre: z a cocycle, reps cocycles spanning H^k; z must lie in span(reps) + boundaries
Vec class_coordinates(const CdgaPtr& A, const std::vector<Polynomial>& reps, const Polynomial& z);

// coefficient of the unit monomial (the augmentation to Q)
Rational augmentation(const Polynomial& p);

// every d(g) decomposable
bool is_minimal(const CdgaPtr& A);

class Morphism {
public:
    // validated: degree preserving, chain condition phi(d g) = d phi(g),
    // phi(g)^2 = 0 for capped even source generators
    static Morphism make(CdgaPtr source, CdgaPtr target, std::vector<Polynomial> values);
    static Morphism identity(CdgaPtr A);

    const CdgaPtr& source() const { return src_; }
    const CdgaPtr& target() const { return tgt_; }
    const Polynomial& value(int i) const { return values_[i]; }
    const std::vector<Polynomial>& values() const { return values_; }

    Polynomial apply(const Polynomial& p) const;
    PPoly apply(const PPoly& p) const;

private:
    Morphism() = default;
    CdgaPtr src_, tgt_;
    std::vector<Polynomial> values_;
    std::vector<PPoly> pvalues_;
};

// outer after inner; revalidated
Morphism compose(const Morphism& outer, const Morphism& inner);

struct LinearPartDegree {
    int degree = 0;
    std::vector<int> source_gens, target_gens; // generator indices of that degree
    Matrix m;                                  // |target_gens| x |source_gens|
    bool injective = false, surjective = false;
};

// induced map on indecomposables, one entry per degree 1..max gen degree;
// meaningful when source and target are minimal
std::vector<LinearPartDegree> linear_part(const Morphism& f);

} // namespace rht
