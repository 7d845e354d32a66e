#pragma once

#include "rht/linalg.hpp"
#include "rht/param.hpp"
#include "rht/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

// cap: 0 = free even generator, 2 = square-zero (models Q[x]/(x^2)).
// Odd generators square to zero by parity regardless of cap.
struct Generator {
    std::string name;
    int degree = 0;
    int cap = 0;
};

class FreeCGA;
using AlgebraPtr = std::shared_ptr<const FreeCGA>;

class FreeCGA {
public:
    static AlgebraPtr make(std::vector<Generator> gens);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(i); }
    const std::vector<Generator>& gens() const { return gens_; }
    std::optional<int> find(const std::string& name) const;
    bool odd(int i) const { return gens_.at(i).degree % 2 != 0; }
    // true when g^2 = 0 (odd parity or explicit cap)
    bool nilpotent_square(int i) const { return odd(i) || gens_.at(i).cap == 2; }
    bool has_capped_even() const;
    int max_gen_degree() const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
};

// dense exponent vector over the algebra's declaration order
struct Monomial {
    std::vector<int> e;

    static Monomial one(int ngens) { return Monomial{std::vector<int>(ngens, 0)}; }
    bool is_one() const;
    int word_length() const;
    int degree(const FreeCGA& alg) const;
    bool operator<(const Monomial& o) const { return e < o.e; }
    bool operator==(const Monomial& o) const { return e == o.e; }
    std::string str(const FreeCGA& alg) const;
};

struct NormalizedWord {
    bool zero = false;
    int sign = 1;
    Monomial mono;
};

// sort a word of generator indices into canonical order, accumulating the
// Koszul sign; zero when an odd generator repeats or a cap is exceeded
NormalizedWord normalize_word(const FreeCGA& alg, const std::vector<int>& word);

// canonical-monomial product: nullopt when parity/caps kill it
std::optional<std::pair<int, Monomial>> mono_mul(const FreeCGA& alg, const Monomial& a,
                                                 const Monomial& b);

// all degree-k monomials, ascending lexicographic in declaration order
std::vector<Monomial> graded_basis(const AlgebraPtr& alg, int k);

struct GradedBasis {
    std::vector<Monomial> monos;
    std::map<Monomial, int> index;
};
GradedBasis graded_basis_indexed(const AlgebraPtr& alg, int k);

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const LinExpr& c) { return c.is_zero(); }

template <class C> class PolynomialT {
public:
    PolynomialT() = default;
    explicit PolynomialT(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static PolynomialT zero(AlgebraPtr alg) { return PolynomialT(std::move(alg)); }
    static PolynomialT unit(AlgebraPtr alg, C c = C(1)) {
        PolynomialT p(alg);
        p.add_term(Monomial::one(alg->size()), std::move(c));
        return p;
    }
    static PolynomialT generator(AlgebraPtr alg, int i) {
        PolynomialT p(alg);
        Monomial m = Monomial::one(alg->size());
        m.e.at(i) = 1;
        p.add_term(std::move(m), C(1));
        return p;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Monomial, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, C c) {
        if (coeff_is_zero(c)) return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second = it->second + c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    // exact degree when homogeneous; nullopt for 0 or mixed degrees
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            int k = m.degree(*alg_);
            if (d && *d != k) return std::nullopt;
            d = k;
        }
        return d;
    }
    bool is_homogeneous() const { return terms_.empty() || degree().has_value(); }

    PolynomialT operator-() const {
        PolynomialT p(alg_);
        for (const auto& [m, c] : terms_) p.terms_[m] = C(0) - c;
        return p;
    }
    PolynomialT operator+(const PolynomialT& o) const {
        check_same(o);
        PolynomialT p = *this;
        for (const auto& [m, c] : o.terms_) p.add_term(m, c);
        return p;
    }
    PolynomialT operator-(const PolynomialT& o) const { return *this + (-o); }
    PolynomialT operator*(const PolynomialT& o) const {
        check_same(o);
        PolynomialT p(alg_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                // normalize the monomial first: a vanishing product must not
                // force a coefficient multiplication (affine-parameter guard)
                auto prod = mono_mul(*alg_, m1, m2);
                if (!prod) continue;
                C c = c1 * c2;
                if (prod->first < 0) c = C(0) - c;
                p.add_term(prod->second, std::move(c));
            }
        return p;
    }
    PolynomialT& operator+=(const PolynomialT& o) { return *this = *this + o; }
    PolynomialT& operator-=(const PolynomialT& o) { return *this = *this - o; }

    PolynomialT scaled(const C& c) const {
        PolynomialT p(alg_);
        for (const auto& [m, x] : terms_) p.add_term(m, x * c);
        return p;
    }

    PolynomialT pow(int k) const {
        if (k < 0) throw contract_error("negative power");
        PolynomialT p = unit(alg_);
        for (int i = 0; i < k; ++i) p = p * *this;
        return p;
    }

    bool operator==(const PolynomialT& o) const {
        return alg_ == o.alg_ && terms_ == o.terms_;
    }
    bool operator!=(const PolynomialT& o) const { return !(*this == o); }

    std::string str() const;

private:
    AlgebraPtr alg_;
    std::map<Monomial, C> terms_;
    void check_same(const PolynomialT& o) const {
        if (alg_ != o.alg_) throw contract_error("polynomial ambient algebra mismatch");
    }
};

using Polynomial = PolynomialT<Rational>;
using PPoly = PolynomialT<LinExpr>;

PPoly promote(const Polynomial& p);

// coefficient-generic view of a rational polynomial
template <class C> PolynomialT<C> promote_like(const Polynomial& p);
template <> inline PolynomialT<Rational> promote_like<Rational>(const Polynomial& p) { return p; }
template <> inline PolynomialT<LinExpr> promote_like<LinExpr>(const Polynomial& p) {
    return promote(p);
}
// requires every coefficient constant
Polynomial demote(const PPoly& p);
PPoly substitute(const PPoly& p, const std::map<std::string, Rational>& values);
PPoly substitute(const PPoly& p, const std::map<std::string, LinExpr>& values);
void collect_params(const PPoly& p, std::vector<std::string>& out);

struct SplitResult {
    Polynomial linear;
    Polynomial decomposable;
};
// pre: p homogeneous; p = linear + decomposable with linear in the generator span
SplitResult linear_decomposable_split(const Polynomial& p);

// coordinates of a homogeneous polynomial over a degree basis
Vec poly_to_vec(const Polynomial& p, const GradedBasis& basis);
Polynomial vec_to_poly(const AlgebraPtr& alg, const Vec& v, const GradedBasis& basis);

std::string coeff_to_string(const Rational& c);
std::string coeff_to_string(const LinExpr& c);

} // namespace rht
