#include "rht/linalg.hpp"

#include <algorithm>

namespace rht {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw contract_error("negative matrix dimension");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(int cols, const std::vector<Vec>& rows) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != cols)
            throw contract_error("row length mismatch");
        for (int c = 0; c < cols; ++c)
            if (rows[r][c] != 0) m.data_[r][c] = rows[r][c];
    }
    return m;
}

Rational Matrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw contract_error("matrix index out of range");
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
}

void Matrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw contract_error("matrix index out of range");
    if (v == 0)
        data_[r].erase(c);
    else
        data_[r][c] = v;
}

void Matrix::add_at(int r, int c, const Rational& v) { set(r, c, at(r, c) + v); }

const std::map<int, Rational>& Matrix::row(int r) const {
    if (r < 0 || r >= rows_) throw contract_error("matrix row out of range");
    return data_[r];
}

Vec Matrix::row_vec(int r) const {
    Vec v(cols_, Rational(0));
    for (const auto& [c, x] : row(r)) v[c] = x;
    return v;
}

Vec Matrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw contract_error("apply: size mismatch");
    Vec y(rows_, Rational(0));
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
    for (const auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

namespace {

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

// --- shared elimination skeleton over two row representations ---

struct SparseRows {
    std::vector<std::map<int, Rational>> r;
    int cols;
    Rational get(int i, int c) const {
        auto it = r[i].find(c);
        return it == r[i].end() ? Rational(0) : it->second;
    }
    void put(int i, int c, const Rational& v) {
        if (v == 0)
            r[i].erase(c);
        else
            r[i][c] = v;
    }
    bool row_empty(int i) const { return r[i].empty(); }
    // row_i := (p * row_i - f * row_k) / q   (exact by Bareiss)
    void combine(int i, int k, const Rational& p, const Rational& f, const Rational& q) {
        std::map<int, Rational> out;
        auto ai = r[i].begin();
        auto ak = r[k].begin();
        while (ai != r[i].end() || ak != r[k].end()) {
            int c;
            Rational v;
            if (ak == r[k].end() || (ai != r[i].end() && ai->first < ak->first)) {
                c = ai->first;
                v = p * ai->second;
                ++ai;
            } else if (ai == r[i].end() || ak->first < ai->first) {
                c = ak->first;
                v = -f * ak->second;
                ++ak;
            } else {
                c = ai->first;
                v = p * ai->second - f * ak->second;
                ++ai;
                ++ak;
            }
            if (v != 0) out[c] = v / q;
        }
        r[i] = std::move(out);
    }
    void scale(int i, const Rational& s) {
        for (auto& [c, v] : r[i]) v *= s;
    }
    // row_i -= f * row_k
    void axpy(int i, int k, const Rational& f) {
        if (f == 0) return;
        for (const auto& [c, v] : r[k]) put(i, c, get(i, c) - f * v);
    }
    void swap_rows(int i, int k) { std::swap(r[i], r[k]); }
};

struct DenseRows {
    std::vector<Vec> r;
    int cols;
    Rational get(int i, int c) const { return r[i][c]; }
    void put(int i, int c, const Rational& v) { r[i][c] = v; }
    bool row_empty(int i) const {
        for (const auto& v : r[i])
            if (v != 0) return false;
        return true;
    }
    void combine(int i, int k, const Rational& p, const Rational& f, const Rational& q) {
        for (int c = 0; c < cols; ++c) {
            Rational v = p * r[i][c] - f * r[k][c];
            r[i][c] = (v == 0) ? v : v / q;
        }
    }
    void scale(int i, const Rational& s) {
        for (auto& v : r[i]) v *= s;
    }
    void axpy(int i, int k, const Rational& f) {
        if (f == 0) return;
        for (int c = 0; c < cols; ++c) r[i][c] -= f * r[k][c];
    }
    void swap_rows(int i, int k) { std::swap(r[i], r[k]); }
};

// clear denominators so the Bareiss divisions stay exact
template <class Rows> void clear_denominators(Rows& rows, int nrows) {
    for (int i = 0; i < nrows; ++i) {
        Int l = 1;
        for (int c = 0; c < rows.cols; ++c) {
            Rational v = rows.get(i, c);
            if (v != 0) l = lcm_int(l, denominator(v));
        }
        if (l != 1) rows.scale(i, Rational(l));
    }
}

template <class Rows>
void rref_engine(Rows& rows, int nrows, std::vector<int>& pivots) {
    clear_denominators(rows, nrows);
    int r = 0;
    Rational prev(1);
    for (int c = 0; c < rows.cols && r < nrows; ++c) {
        int sel = -1;
        for (int i = r; i < nrows; ++i)
            if (rows.get(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        rows.swap_rows(r, sel);
        Rational p = rows.get(r, c);
        // full one-step Bareiss: every lower row transforms, keeping entries
        // equal to minors so the division by prev is exact on integer input
        for (int i = r + 1; i < nrows; ++i) rows.combine(i, r, p, rows.get(i, c), prev);
        prev = p;
        pivots.push_back(c);
        ++r;
    }
    // rational normalization: pivots to 1, eliminate above
    for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
        int c = pivots[i];
        Rational p = rows.get(i, c);
        if (p != 1) rows.scale(i, Rational(1) / p);
        for (int k = 0; k < i; ++k) rows.axpy(k, i, rows.get(k, c));
    }
}

} // namespace

RrefResult rref(const Matrix& m) {
    RrefResult out;
    std::vector<int> pivots;
    Matrix reduced(m.rows(), m.cols());
    if (m.cols() < Matrix::DENSE_COLUMN_LIMIT) {
        DenseRows rows{{}, m.cols()};
        rows.r.reserve(m.rows());
        for (int i = 0; i < m.rows(); ++i) rows.r.push_back(m.row_vec(i));
        rref_engine(rows, m.rows(), pivots);
        for (int i = 0; i < m.rows(); ++i)
            for (int c = 0; c < m.cols(); ++c)
                if (rows.r[i][c] != 0) reduced.set(i, c, rows.r[i][c]);
    } else {
        SparseRows rows{{}, m.cols()};
        rows.r.reserve(m.rows());
        for (int i = 0; i < m.rows(); ++i) rows.r.push_back(m.row(i));
        rref_engine(rows, m.rows(), pivots);
        for (int i = 0; i < m.rows(); ++i)
            for (const auto& [c, v] : rows.r[i]) reduced.set(i, c, v);
    }
    out.rank = static_cast<int>(pivots.size());
    out.pivots = std::move(pivots);
    out.reduced = std::move(reduced);
    return out;
}

Subspace::Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {
    if (ambient < 0) throw contract_error("negative ambient dimension");
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
    auto rr = rref(Matrix::from_rows(ambient, vectors));
    Subspace s(ambient);
    Matrix b(rr.rank, ambient);
    for (int i = 0; i < rr.rank; ++i)
        for (const auto& [c, v] : rr.reduced.row(i)) b.set(i, c, v);
    s.basis_ = std::move(b);
    s.pivots_ = std::move(rr.pivots);
    return s;
}

std::vector<Vec> Subspace::basis_rows() const {
    std::vector<Vec> out;
    out.reserve(dim());
    for (int i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
}

Vec Subspace::reduce(Vec v) const {
    if (static_cast<int>(v.size()) != ambient_) throw contract_error("reduce: size mismatch");
    for (int i = 0; i < dim(); ++i) {
        Rational f = v[pivots_[i]];
        if (f == 0) continue;
        for (const auto& [c, x] : basis_.row(i)) v[c] -= f * x;
    }
    return v;
}

bool Subspace::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw contract_error("contains: ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row_vec(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw contract_error("sum: ambient mismatch");
    auto rows = basis_rows();
    auto more = other.basis_rows();
    rows.insert(rows.end(), more.begin(), more.end());
    return span(ambient_, rows);
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace kernel_basis(const Matrix& m) {
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> gens;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols(), Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced.at(static_cast<int>(i), f);
        gens.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), gens);
}

std::optional<AffineSolution> solve_affine(const Matrix& A, const Vec& b) {
    if (static_cast<int>(b.size()) != A.rows())
        throw contract_error("solve_affine: rhs size mismatch");
    Matrix aug(A.rows(), A.cols() + 1);
    for (int r = 0; r < A.rows(); ++r) {
        for (const auto& [c, v] : A.row(r)) aug.set(r, c, v);
        if (b[r] != 0) aug.set(r, A.cols(), b[r]);
    }
    auto rr = rref(aug);
    for (int c : rr.pivots)
        if (c == A.cols()) return std::nullopt;
    Vec x(A.cols(), Rational(0));
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        x[rr.pivots[i]] = rr.reduced.at(static_cast<int>(i), A.cols());
    return AffineSolution{std::move(x), kernel_basis(A)};
}

SubquotientResult subquotient_basis(const Subspace& cycles, const Subspace& boundaries) {
    if (cycles.ambient() != boundaries.ambient())
        throw contract_error("subquotient: ambient mismatch");
    if (!cycles.contains(boundaries))
        throw contract_error("subquotient: boundaries not contained in cycles (broken complex)");
    SubquotientResult out;
    Subspace cur = boundaries;
    for (const auto& v : cycles.basis_rows()) {
        if (cur.contains(v)) continue;
        out.reps.push_back(v);
        cur = cur.sum(Subspace::span(cycles.ambient(), {v}));
    }
    out.dim = cycles.dim() - boundaries.dim();
    if (static_cast<int>(out.reps.size()) != out.dim)
        throw inconsistency_error("subquotient: representative count mismatch");
    return out;
}

} // namespace rht
