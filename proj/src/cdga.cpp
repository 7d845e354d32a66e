#include "rht/cdga.hpp"

#include <algorithm>

namespace rht {

CdgaPtr CDGA::make(AlgebraPtr alg, std::vector<Polynomial> d_values) {
    if (static_cast<int>(d_values.size()) != alg->size())
        throw contract_error("make_cdga: one differential value per generator required");
    for (int i = 0; i < alg->size(); ++i) {
        const auto& g = alg->gen(i);
        const auto& dv = d_values[i];
        if (dv.algebra() != alg)
            throw contract_error("make_cdga: d(" + g.name + ") lives in a foreign algebra");
        if (dv.is_zero()) continue;
        auto deg = dv.degree();
        if (!deg || *deg != g.degree + 1)
            throw validation_error("d(" + g.name + ") must be homogeneous of degree " +
                                   std::to_string(g.degree + 1) + ", got " + dv.str());
    }
    auto A = std::make_shared<CDGA>();
    A->alg_ = alg;
    A->d_ = std::move(d_values);
    for (const auto& v : A->d_) A->pd_.push_back(promote(v));
    for (int i = 0; i < alg->size(); ++i) {
        Polynomial dd = A->d(A->d_[i]);
        if (!dd.is_zero())
            throw validation_error("d^2 != 0 at generator " + alg->gen(i).name +
                                   ": residual " + dd.str());
        // capped even g: d must kill g^2 = 0, i.e. g*d(g) = 0 (odd parity is automatic)
        if (!alg->odd(i) && alg->gen(i).cap == 2) {
            Polynomial gd = Polynomial::generator(alg, i) * A->d_[i];
            if (!gd.is_zero())
                throw validation_error("d incompatible with cap at generator " +
                                       alg->gen(i).name + ": g*d(g) = " + gd.str());
        }
    }
    return A;
}

CdgaPtr make_cdga(AlgebraPtr alg, std::vector<Polynomial> d_values) {
    return CDGA::make(std::move(alg), std::move(d_values));
}

bool CDGA::d_is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PPoly CDGA::d(const PPoly& p) const { return leibniz_d(alg_, pd_, p); }

Matrix d_matrix(const CdgaPtr& A, int k) {
    auto from = graded_basis_indexed(A->algebra(), k);
    auto to = graded_basis_indexed(A->algebra(), k + 1);
    Matrix m(static_cast<int>(to.monos.size()), static_cast<int>(from.monos.size()));
    for (size_t j = 0; j < from.monos.size(); ++j) {
        Polynomial mono(A->algebra());
        mono.add_term(from.monos[j], 1);
        Vec col = poly_to_vec(A->d(mono), to);
        for (size_t i = 0; i < col.size(); ++i)
            if (col[i] != 0) m.set(static_cast<int>(i), static_cast<int>(j), col[i]);
    }
    return m;
}

CohomologyResult cohomology(const CdgaPtr& A, int k) {
    if (k < 0) throw contract_error("cohomology: negative degree");
    auto basis = graded_basis_indexed(A->algebra(), k);
    const int dim_k = static_cast<int>(basis.monos.size());
    Subspace cycles = kernel_basis(d_matrix(A, k));

    std::vector<Vec> bvecs;
    if (k >= 1) {
        auto below = graded_basis(A->algebra(), k - 1);
        for (const auto& m : below) {
            Polynomial mono(A->algebra());
            mono.add_term(m, 1);
            Polynomial dm = A->d(mono);
            if (!dm.is_zero()) bvecs.push_back(poly_to_vec(dm, basis));
        }
    }
    Subspace boundaries = Subspace::span(dim_k, bvecs);

    auto q = subquotient_basis(cycles, boundaries);
    CohomologyResult out;
    out.dim = q.dim;
    for (const auto& v : q.reps) out.reps.push_back(vec_to_poly(A->algebra(), v, basis));
    return out;
}

std::vector<int> cohomology_dims(const CdgaPtr& A, int k_max) {
    std::vector<int> dims;
    for (int k = 0; k <= k_max; ++k) dims.push_back(cohomology(A, k).dim);
    return dims;
}

bool is_cocycle(const CdgaPtr& A, const Polynomial& p) { return A->d(p).is_zero(); }

bool is_coboundary(const CdgaPtr& A, const Polynomial& p) {
    if (p.is_zero()) return true;
    if (!p.is_homogeneous()) throw contract_error("is_coboundary: non-homogeneous input");
    const int k = *p.degree();
    if (k == 0) return false;
    auto basis = graded_basis_indexed(A->algebra(), k);
    return static_cast<bool>(solve_affine(d_matrix(A, k - 1), poly_to_vec(p, basis)));
}

Vec class_coordinates(const CdgaPtr& A, const std::vector<Polynomial>& reps, const Polynomial& z) {
    if (!is_cocycle(A, z)) throw contract_error("class_coordinates: input is not a cocycle");
    if (z.is_zero()) return Vec(reps.size(), Rational(0));
    const int k = *z.degree();
    auto basis = graded_basis_indexed(A->algebra(), k);
    // columns: reps, then d-images of the degree below; solve reps*a + d(...) = z
    Matrix db = d_matrix(A, k - 1);
    const int nreps = static_cast<int>(reps.size());
    Matrix sys(static_cast<int>(basis.monos.size()), nreps + db.cols());
    for (int j = 0; j < nreps; ++j) {
        Vec col = poly_to_vec(reps[j], basis);
        for (size_t i = 0; i < col.size(); ++i)
            if (col[i] != 0) sys.set(static_cast<int>(i), j, col[i]);
    }
    for (int r = 0; r < db.rows(); ++r)
        for (const auto& [c, v] : db.row(r)) sys.set(r, nreps + c, v);
    auto sol = solve_affine(sys, poly_to_vec(z, basis));
    if (!sol)
        throw contract_error("class_coordinates: cocycle not spanned by the given classes");
    return Vec(sol->particular.begin(), sol->particular.begin() + nreps);
}

Rational augmentation(const Polynomial& p) {
    return p.coeff(Monomial::one(p.algebra()->size()));
}

bool is_minimal(const CdgaPtr& A) {
    for (int i = 0; i < A->algebra()->size(); ++i) {
        const auto& dv = A->d_gen(i);
        if (dv.is_zero()) continue;
        if (!linear_decomposable_split(dv).linear.is_zero()) return false;
    }
    return true;
}

Morphism Morphism::make(CdgaPtr source, CdgaPtr target, std::vector<Polynomial> values) {
    const auto& src = source->algebra();
    if (static_cast<int>(values.size()) != src->size())
        throw contract_error("make_morphism: one value per source generator required");
    std::string violations;
    for (int i = 0; i < src->size(); ++i) {
        const auto& g = src->gen(i);
        const auto& v = values[i];
        if (v.algebra() != target->algebra())
            throw contract_error("make_morphism: value of " + g.name + " in a foreign algebra");
        if (!v.is_zero()) {
            auto deg = v.degree();
            if (!deg || *deg != g.degree) {
                violations += (violations.empty() ? "" : "; ") + g.name +
                              ": value not homogeneous of degree " + std::to_string(g.degree);
                continue;
            }
        }
        if (!src->odd(i) && g.cap == 2) {
            Polynomial sq = v * v;
            if (!sq.is_zero())
                violations += (violations.empty() ? "" : "; ") + g.name +
                              ": image of capped generator has nonzero square " + sq.str();
        }
    }
    if (!violations.empty()) throw validation_error("make_morphism: " + violations);

    Morphism f;
    f.src_ = std::move(source);
    f.tgt_ = std::move(target);
    f.values_ = std::move(values);
    for (const auto& v : f.values_) f.pvalues_.push_back(promote(v));
    for (int i = 0; i < src->size(); ++i) {
        Polynomial lhs = f.apply(f.src_->d_gen(i));
        Polynomial rhs = f.tgt_->d(f.values_[i]);
        if (!(lhs == rhs))
            violations += (violations.empty() ? "" : "; ") + src->gen(i).name +
                          ": phi(d g) = " + lhs.str() + " but d(phi g) = " + rhs.str();
    }
    if (!violations.empty())
        throw validation_error("make_morphism: chain condition fails at " + violations);
    return f;
}

Morphism Morphism::identity(CdgaPtr A) {
    std::vector<Polynomial> values;
    for (int i = 0; i < A->algebra()->size(); ++i)
        values.push_back(Polynomial::generator(A->algebra(), i));
    return make(A, A, std::move(values));
}

Polynomial Morphism::apply(const Polynomial& p) const {
    if (p.algebra() != src_->algebra())
        throw contract_error("Morphism::apply: polynomial from a foreign algebra");
    return apply_values(src_->algebra(), tgt_->algebra(), values_, p);
}

PPoly Morphism::apply(const PPoly& p) const {
    if (p.algebra() != src_->algebra())
        throw contract_error("Morphism::apply: polynomial from a foreign algebra");
    return apply_values(src_->algebra(), tgt_->algebra(), pvalues_, p);
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    if (inner.target() != outer.source())
        throw contract_error("compose: morphisms do not align");
    std::vector<Polynomial> values;
    for (const auto& v : inner.values()) values.push_back(outer.apply(v));
    return Morphism::make(inner.source(), outer.target(), std::move(values));
}

std::vector<LinearPartDegree> linear_part(const Morphism& f) {
    const auto& src = f.source()->algebra();
    const auto& tgt = f.target()->algebra();
    int max_deg = std::max(src->max_gen_degree(), tgt->max_gen_degree());
    std::vector<LinearPartDegree> out;
    for (int k = 1; k <= max_deg; ++k) {
        LinearPartDegree L;
        L.degree = k;
        for (int i = 0; i < src->size(); ++i)
            if (src->gen(i).degree == k) L.source_gens.push_back(i);
        for (int i = 0; i < tgt->size(); ++i)
            if (tgt->gen(i).degree == k) L.target_gens.push_back(i);
        if (L.source_gens.empty() && L.target_gens.empty()) continue;
        L.m = Matrix(static_cast<int>(L.target_gens.size()),
                     static_cast<int>(L.source_gens.size()));
        for (size_t j = 0; j < L.source_gens.size(); ++j) {
            const auto& v = f.value(L.source_gens[j]);
            if (v.is_zero()) continue;
            Polynomial lin = linear_decomposable_split(v).linear;
            for (size_t i = 0; i < L.target_gens.size(); ++i) {
                Monomial m = Monomial::one(tgt->size());
                m.e[L.target_gens[i]] = 1;
                Rational c = lin.coeff(m);
                if (c != 0) L.m.set(static_cast<int>(i), static_cast<int>(j), c);
            }
        }
        int rank = rref(L.m).rank;
        L.injective = rank == static_cast<int>(L.source_gens.size());
        L.surjective = rank == static_cast<int>(L.target_gens.size());
        out.push_back(std::move(L));
    }
    return out;
}

} // namespace rht
