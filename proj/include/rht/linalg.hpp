#pragma once

#include "rht/rational.hpp"
#include <map>
#include <optional>
#include <vector>

namespace rht {

using Vec = std::vector<Rational>;

// Sparse rational matrix. Elimination switches to a dense working copy
// below DENSE_COLUMN_LIMIT columns; results are identical either way.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols);
    static Matrix identity(int n);
    static Matrix from_rows(int cols, const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational at(int r, int c) const;
    void set(int r, int c, const Rational& v);
    void add_at(int r, int c, const Rational& v);
    const std::map<int, Rational>& row(int r) const;
    Vec row_vec(int r) const;
    Vec apply(const Vec& x) const; // A * x
    bool operator==(const Matrix& o) const;
    bool is_zero() const;

    static constexpr int DENSE_COLUMN_LIMIT = 64;

private:
    int rows_, cols_;
    std::vector<std::map<int, Rational>> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivots;
    int rank = 0;
};

// unique reduced row echelon form; fraction-free (Bareiss) forward pass on
// denominator-cleared rows, rational normalization at the end
RrefResult rref(const Matrix& m);

// row space held in RREF: the canonical representative, so equality is
// matrix equality
class Subspace {
public:
    explicit Subspace(int ambient);
    static Subspace span(int ambient, const std::vector<Vec>& vectors);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    std::vector<Vec> basis_rows() const;
    Vec reduce(Vec v) const; // v minus its projection along pivot coordinates
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    bool operator==(const Subspace& o) const;

private:
    int ambient_;
    Matrix basis_;             // dim x ambient, RREF
    std::vector<int> pivots_;
};

Subspace kernel_basis(const Matrix& m);

struct AffineSolution {
    Vec particular;
    Subspace kernel;
};

// none iff b is not in the column space
std::optional<AffineSolution> solve_affine(const Matrix& A, const Vec& b);

struct SubquotientResult {
    int dim = 0;
    std::vector<Vec> reps; // cycle vectors projecting to a basis of cycles/boundaries
};

// pre: boundaries contained in cycles (checked; failure = broken complex upstream)
SubquotientResult subquotient_basis(const Subspace& cycles, const Subspace& boundaries);

} // namespace rht
