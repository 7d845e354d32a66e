#pragma once

#include "rht/rational.hpp"
#include <map>
#include <string>
#include <vector>

namespace rht {

// Affine expression in named parameters: c0 + sum ci * pi.
// Products of two non-constant expressions are rejected: every computation
// in the solvers stays affine by construction, and a violation means the
// input left the supported regime.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(Rational c) : c0_(std::move(c)) {}
    LinExpr(int c) : c0_(c) {}
    static LinExpr param(const std::string& name, const Rational& coeff = 1);

    bool is_constant() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && c0_ == 0; }
    const Rational& constant() const { return c0_; }
    const std::map<std::string, Rational>& terms() const { return terms_; }
    Rational coeff(const std::string& name) const;

    LinExpr operator-() const;
    LinExpr operator+(const LinExpr& o) const;
    LinExpr operator-(const LinExpr& o) const;
    LinExpr operator*(const LinExpr& o) const; // throws unless one side constant
    LinExpr& operator+=(const LinExpr& o) { return *this = *this + o; }
    LinExpr& operator-=(const LinExpr& o) { return *this = *this - o; }
    bool operator==(const LinExpr& o) const { return c0_ == o.c0_ && terms_ == o.terms_; }
    bool operator!=(const LinExpr& o) const { return !(*this == o); }
    bool operator<(const LinExpr& o) const; // arbitrary total order for map keys

    // substitute some or all parameters
    LinExpr substitute(const std::map<std::string, Rational>& values) const;
    LinExpr substitute(const std::map<std::string, LinExpr>& values) const;
    void collect_params(std::vector<std::string>& out) const;
    std::string str() const;

private:
    Rational c0_ = 0;
    std::map<std::string, Rational> terms_;
    void prune();
};

inline LinExpr operator*(const Rational& r, const LinExpr& e) { return LinExpr(r) * e; }

} // namespace rht
