#include "rht/graded.hpp"

#include <algorithm>

namespace rht {

AlgebraPtr FreeCGA::make(std::vector<Generator> gens) {
    auto alg = std::make_shared<FreeCGA>();
    for (size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        if (g.name.empty()) throw validation_error("generator with empty name");
        if (g.degree < 1)
            throw validation_error("generator " + g.name + " must have degree >= 1");
        if (g.cap != 0 && g.cap != 2)
            throw validation_error("generator " + g.name + " has unsupported cap " +
                                   std::to_string(g.cap) + " (only none or 2)");
        if (!alg->index_.emplace(g.name, static_cast<int>(i)).second)
            throw validation_error("duplicate generator name " + g.name);
    }
    alg->gens_ = std::move(gens);
    return alg;
}

std::optional<int> FreeCGA::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool FreeCGA::has_capped_even() const {
    for (int i = 0; i < size(); ++i)
        if (!odd(i) && gens_[i].cap == 2) return true;
    return false;
}

int FreeCGA::max_gen_degree() const {
    int d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree);
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int Monomial::word_length() const {
    int n = 0;
    for (int x : e) n += x;
    return n;
}

int Monomial::degree(const FreeCGA& alg) const {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += e[i] * alg.gen(static_cast<int>(i)).degree;
    return d;
}

std::string Monomial::str(const FreeCGA& alg) const {
    if (is_one()) return "1";
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += alg.gen(static_cast<int>(i)).name;
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

NormalizedWord normalize_word(const FreeCGA& alg, const std::vector<int>& word) {
    for (int g : word)
        if (g < 0 || g >= alg.size()) throw contract_error("normalize_word: foreign generator");
    // Koszul sign: one -1 per inversion of two odd-degree letters
    long inversions = 0;
    for (size_t p = 0; p < word.size(); ++p) {
        if (!alg.odd(word[p])) continue;
        for (size_t q = p + 1; q < word.size(); ++q)
            if (alg.odd(word[q]) && word[p] > word[q]) ++inversions;
    }
    NormalizedWord out;
    out.mono = Monomial::one(alg.size());
    for (int g : word) {
        if (++out.mono.e[g] > 1 && alg.nilpotent_square(g)) {
            out.zero = true;
            return out;
        }
    }
    out.sign = (inversions % 2 == 0) ? 1 : -1;
    return out;
}

std::optional<std::pair<int, Monomial>> mono_mul(const FreeCGA& alg, const Monomial& a,
                                                 const Monomial& b) {
    const int n = alg.size();
    if (static_cast<int>(a.e.size()) != n || static_cast<int>(b.e.size()) != n)
        throw contract_error("mono_mul: exponent vector size mismatch");
    Monomial m = Monomial::one(n);
    for (int i = 0; i < n; ++i) {
        m.e[i] = a.e[i] + b.e[i];
        if (m.e[i] > 1 && alg.nilpotent_square(i)) return std::nullopt;
    }
    // moving each odd letter of b past the later odd letters of a
    long inv = 0;
    for (int i = 0; i < n; ++i) {
        if (!alg.odd(i) || a.e[i] == 0) continue;
        for (int j = 0; j < i; ++j)
            if (alg.odd(j) && b.e[j] != 0) inv += static_cast<long>(a.e[i]) * b.e[j];
    }
    return std::make_pair(inv % 2 == 0 ? 1 : -1, std::move(m));
}

namespace {
void enumerate(const FreeCGA& alg, int i, int remaining, Monomial& cur,
               std::vector<Monomial>& out) {
    if (i == alg.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const int d = alg.gen(i).degree;
    const int emax = alg.nilpotent_square(i) ? 1 : remaining / d;
    for (int e = 0; e <= emax && e * d <= remaining; ++e) {
        cur.e[i] = e;
        enumerate(alg, i + 1, remaining - e * d, cur, out);
    }
    cur.e[i] = 0;
}
} // namespace

std::vector<Monomial> graded_basis(const AlgebraPtr& alg, int k) {
    if (k < 0) return {};
    std::vector<Monomial> out;
    Monomial cur = Monomial::one(alg->size());
    enumerate(*alg, 0, k, cur, out);
    return out;
}

GradedBasis graded_basis_indexed(const AlgebraPtr& alg, int k) {
    GradedBasis b;
    b.monos = graded_basis(alg, k);
    for (size_t i = 0; i < b.monos.size(); ++i) b.index[b.monos[i]] = static_cast<int>(i);
    return b;
}

std::string coeff_to_string(const Rational& c) { return to_string(c); }

std::string coeff_to_string(const LinExpr& c) {
    if (c.is_constant()) return to_string(c.constant());
    std::string s = c.str();
    size_t weight = c.terms().size() + (c.constant() != 0 ? 1 : 0);
    if (weight > 1) return "(" + s + ")";
    return s;
}

template <class C> std::string PolynomialT<C>::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = coeff_to_string(c);
        std::string t;
        if (m.is_one())
            t = cs;
        else if (cs == "1")
            t = m.str(*alg_);
        else if (cs == "-1")
            t = "-" + m.str(*alg_);
        else
            t = cs + "*" + m.str(*alg_);
        if (first) {
            out = t;
            first = false;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

template std::string PolynomialT<Rational>::str() const;
template std::string PolynomialT<LinExpr>::str() const;

PPoly promote(const Polynomial& p) {
    PPoly q(p.algebra());
    for (const auto& [m, c] : p.terms()) q.add_term(m, LinExpr(c));
    return q;
}

Polynomial demote(const PPoly& p) {
    Polynomial q(p.algebra());
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_constant())
            throw validation_error("polynomial still contains parameters: " + p.str());
        q.add_term(m, c.constant());
    }
    return q;
}

PPoly substitute(const PPoly& p, const std::map<std::string, Rational>& values) {
    PPoly q(p.algebra());
    for (const auto& [m, c] : p.terms()) q.add_term(m, c.substitute(values));
    return q;
}

PPoly substitute(const PPoly& p, const std::map<std::string, LinExpr>& values) {
    PPoly q(p.algebra());
    for (const auto& [m, c] : p.terms()) q.add_term(m, c.substitute(values));
    return q;
}

void collect_params(const PPoly& p, std::vector<std::string>& out) {
    for (const auto& [m, c] : p.terms()) c.collect_params(out);
}

SplitResult linear_decomposable_split(const Polynomial& p) {
    if (!p.is_homogeneous())
        throw contract_error("linear_decomposable_split: non-homogeneous input");
    SplitResult out{Polynomial(p.algebra()), Polynomial(p.algebra())};
    for (const auto& [m, c] : p.terms()) {
        if (m.word_length() == 1)
            out.linear.add_term(m, c);
        else
            out.decomposable.add_term(m, c);
    }
    return out;
}

Vec poly_to_vec(const Polynomial& p, const GradedBasis& basis) {
    Vec v(basis.monos.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) {
        auto it = basis.index.find(m);
        if (it == basis.index.end())
            throw contract_error("poly_to_vec: monomial outside basis (degree mismatch?)");
        v[it->second] = c;
    }
    return v;
}

Polynomial vec_to_poly(const AlgebraPtr& alg, const Vec& v, const GradedBasis& basis) {
    if (v.size() != basis.monos.size()) throw contract_error("vec_to_poly: size mismatch");
    Polynomial p(alg);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p.add_term(basis.monos[i], v[i]);
    return p;
}

} // namespace rht
