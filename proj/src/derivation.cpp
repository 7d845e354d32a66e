#include "rht/derivation.hpp"

#include <algorithm>

namespace rht {

namespace {

void check_value_degrees(const Morphism& phi, int n, const std::vector<Polynomial>& values) {
    const auto& src = phi.source()->algebra();
    if (static_cast<int>(values.size()) != src->size())
        throw contract_error("derivation: one value per source generator required");
    for (int i = 0; i < src->size(); ++i) {
        const auto& v = values[i];
        if (v.algebra() != phi.target()->algebra())
            throw contract_error("derivation: value of " + src->gen(i).name +
                                 " in a foreign algebra");
        if (v.is_zero()) continue;
        auto deg = v.degree();
        if (!deg || *deg != src->gen(i).degree - n)
            throw contract_error("derivation: value of " + src->gen(i).name +
                                 " must be homogeneous of degree " +
                                 std::to_string(src->gen(i).degree - n));
    }
}

void check_free_source(const AlgebraPtr& src) {
    for (int i = 0; i < src->size(); ++i)
        if (!src->odd(i) && src->gen(i).cap == 2)
            throw validation_error(
                "derivations need a free source, but " + src->gen(i).name +
                " is truncated; present the source as a free minimal model instead "
                "(for a truncated even class w of degree k use Lambda(w, w') with "
                "|w'| = 2k-1 and dw' = w^2)");
}

} // namespace

Derivation::Derivation(MorphismPtr phi, int n, std::vector<Polynomial> values)
    : phi_(std::move(phi)), n_(n), values_(std::move(values)) {
    if (n_ < 0) throw contract_error("derivation: negative degree");
    check_value_degrees(*phi_, n_, values_);
}

Derivation Derivation::zero(MorphismPtr phi, int n) {
    const auto& tgt = phi->target()->algebra();
    std::vector<Polynomial> values(phi->source()->algebra()->size(), Polynomial::zero(tgt));
    return Derivation(std::move(phi), n, std::move(values));
}

Derivation Derivation::symbol(MorphismPtr phi, int n, int gen_index, Polynomial h) {
    Derivation out = zero(std::move(phi), n);
    out.values_[gen_index] = std::move(h);
    check_value_degrees(*out.phi_, n, out.values_);
    return out;
}

bool Derivation::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

Polynomial Derivation::apply(const Polynomial& p) const {
    if (p.algebra() != phi_->source()->algebra())
        throw contract_error("Derivation::apply: polynomial from a foreign algebra");
    return derivation_apply(*phi_, n_, values_, p);
}

Derivation Derivation::operator+(const Derivation& o) const {
    if (phi_ != o.phi_ || n_ != o.n_)
        throw contract_error("derivation sum: mismatched context");
    std::vector<Polynomial> values;
    for (size_t i = 0; i < values_.size(); ++i) values.push_back(values_[i] + o.values_[i]);
    return Derivation(phi_, n_, std::move(values));
}

Derivation Derivation::operator-() const { return scaled(-1); }

Derivation Derivation::scaled(const Rational& c) const {
    std::vector<Polynomial> values;
    for (const auto& v : values_) values.push_back(v.scaled(c));
    return Derivation(phi_, n_, std::move(values));
}

bool Derivation::operator==(const Derivation& o) const {
    return phi_ == o.phi_ && n_ == o.n_ && values_ == o.values_;
}

std::string Derivation::str() const {
    if (is_zero()) return "0";
    const auto& src = phi_->source()->algebra();
    std::string out;
    for (int i = 0; i < src->size(); ++i) {
        if (values_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + src->gen(i).name + ", " + values_[i].str() + ")";
    }
    return out;
}

Derivation delta(const Derivation& theta) {
    const auto& phi = theta.phi();
    const auto& A = phi->source();
    const auto& B = phi->target();
    const int sign = theta.degree() % 2 == 0 ? 1 : -1;
    std::vector<Polynomial> values;
    for (int i = 0; i < A->algebra()->size(); ++i)
        values.push_back(B->d(theta.value(i)) - theta.apply(A->d_gen(i)).scaled(sign));
    return Derivation(phi, theta.degree() - 1, std::move(values));
}

PPoly PDerivation::apply(const PPoly& p) const {
    if (p.algebra() != phi->source()->algebra())
        throw contract_error("PDerivation::apply: polynomial from a foreign algebra");
    return derivation_apply(*phi, n, values, p);
}

PDerivation delta(const PDerivation& theta) {
    const auto& A = theta.phi->source();
    const auto& B = theta.phi->target();
    const Rational sign = theta.n % 2 == 0 ? 1 : -1;
    PDerivation out{theta.phi, theta.n - 1, {}};
    for (int i = 0; i < A->algebra()->size(); ++i)
        out.values.push_back(B->d(theta.values[i]) -
                             theta.apply(promote(A->d_gen(i))).scaled(LinExpr(sign)));
    return out;
}

PDerivation promote(const Derivation& theta) {
    PDerivation out{theta.phi(), theta.degree(), {}};
    for (const auto& v : theta.values()) out.values.push_back(promote(v));
    return out;
}

DerSpace der_space(MorphismPtr phi, int n) {
    if (n < 0) throw contract_error("der_space: negative degree");
    const auto& src = phi->source()->algebra();
    const auto& tgt = phi->target()->algebra();
    check_free_source(src);
    DerSpace out;
    out.phi = std::move(phi);
    out.n = n;
    int offset = 0;
    for (int i = 0; i < src->size(); ++i) {
        const int k = src->gen(i).degree - n;
        if (k < 0) continue;
        auto basis = graded_basis_indexed(tgt, k);
        if (basis.monos.empty()) continue;
        out.gens.push_back(i);
        out.offsets.push_back(offset);
        offset += static_cast<int>(basis.monos.size());
        out.bases.push_back(std::move(basis));
    }
    out.dim = offset;
    return out;
}

Derivation DerSpace::from_coords(const Vec& v) const {
    if (static_cast<int>(v.size()) != dim) throw contract_error("der coords: size mismatch");
    const auto& tgt = phi->target()->algebra();
    std::vector<Polynomial> values(phi->source()->algebra()->size(), Polynomial::zero(tgt));
    for (size_t b = 0; b < gens.size(); ++b) {
        Vec block(v.begin() + offsets[b],
                  v.begin() + offsets[b] + static_cast<int>(bases[b].monos.size()));
        values[gens[b]] = vec_to_poly(tgt, block, bases[b]);
    }
    return Derivation(phi, n, std::move(values));
}

Vec DerSpace::coords(const Derivation& theta) const {
    if (theta.phi() != phi || theta.degree() != n)
        throw contract_error("der coords: derivation from another space");
    Vec out(dim, Rational(0));
    for (size_t b = 0; b < gens.size(); ++b) {
        Vec block = poly_to_vec(theta.value(gens[b]), bases[b]);
        for (size_t i = 0; i < block.size(); ++i) out[offsets[b] + i] = block[i];
    }
    // generators outside the listed blocks must carry zero values
    for (int i = 0; i < phi->source()->algebra()->size(); ++i)
        if (std::find(gens.begin(), gens.end(), i) == gens.end() &&
            !theta.value(i).is_zero())
            throw contract_error("der coords: nonzero value outside the coordinate blocks");
    return out;
}

Derivation DerSpace::basis_elem(int k) const {
    Vec v(dim, Rational(0));
    v[k] = 1;
    return from_coords(v);
}

std::string DerSpace::symbol_str(int k) const {
    for (size_t b = 0; b < gens.size(); ++b) {
        int local = k - offsets[b];
        if (local >= 0 && local < static_cast<int>(bases[b].monos.size())) {
            const auto& src = phi->source()->algebra();
            const auto& tgt = phi->target()->algebra();
            return "(" + src->gen(gens[b]).name + ", " + bases[b].monos[local].str(*tgt) + ")";
        }
    }
    throw contract_error("der symbol: index out of range");
}

std::vector<Derivation> der_basis(const MorphismPtr& phi, int n) {
    if (n < 1) throw contract_error("der_basis: degree must be >= 1");
    auto space = der_space(phi, n);
    std::vector<Derivation> out;
    for (int k = 0; k < space.dim; ++k) out.push_back(space.basis_elem(k));
    return out;
}

Matrix delta_matrix(const DerSpace& from, const DerSpace& to) {
    if (from.phi != to.phi || to.n != from.n - 1)
        throw contract_error("delta_matrix: spaces do not align");
    Matrix m(to.dim, from.dim);
    for (int j = 0; j < from.dim; ++j) {
        Vec col = to.coords(delta(from.basis_elem(j)));
        for (size_t i = 0; i < col.size(); ++i)
            if (col[i] != 0) m.set(static_cast<int>(i), j, col[i]);
    }
    return m;
}

DerHomology der_homology(const MorphismPtr& phi, int n) {
    if (n < 1) throw contract_error("der_homology: degree must be >= 1");
    auto at = der_space(phi, n);
    auto below = der_space(phi, n - 1);
    auto above = der_space(phi, n + 1);
    Subspace cycles = kernel_basis(delta_matrix(at, below));
    std::vector<Vec> bvecs;
    for (int j = 0; j < above.dim; ++j) bvecs.push_back(at.coords(delta(above.basis_elem(j))));
    Subspace boundaries = Subspace::span(at.dim, bvecs);
    auto q = subquotient_basis(cycles, boundaries);
    DerHomology out;
    out.dim = q.dim;
    for (const auto& v : q.reps) out.reps.push_back(at.from_coords(v));
    return out;
}

EvalSubgroup evaluation_subgroup(const MorphismPtr& phi, int n) {
    if (n < 1) throw contract_error("evaluation_subgroup: degree must be >= 1");
    if (!is_minimal(phi->source()))
        throw validation_error("evaluation subgroup needs a minimal source model "
                               "(differential with decomposable values)");
    const auto& src = phi->source()->algebra();
    EvalSubgroup out;
    for (int i = 0; i < src->size(); ++i)
        if (src->gen(i).degree == n) out.gens.push_back(i);
    out.pi_rank = static_cast<int>(out.gens.size());

    auto at = der_space(phi, n);
    auto below = der_space(phi, n - 1);
    Subspace cocycles = kernel_basis(delta_matrix(at, below));
    std::vector<Vec> images;
    for (const auto& z : cocycles.basis_rows()) {
        Derivation theta = at.from_coords(z);
        Vec img;
        for (int g : out.gens) img.push_back(augmentation(theta.value(g)));
        images.push_back(std::move(img));
    }
    out.span = Subspace::span(out.pi_rank, images);
    return out;
}

EvalSubgroup gottlieb_group(const CdgaPtr& A, int n) {
    auto id = std::make_shared<const Morphism>(Morphism::identity(A));
    return evaluation_subgroup(id, n);
}

} // namespace rht
