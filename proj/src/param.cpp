#include "rht/param.hpp"

#include <algorithm>

namespace rht {

LinExpr LinExpr::param(const std::string& name, const Rational& coeff) {
    LinExpr e;
    if (coeff != 0) e.terms_[name] = coeff;
    return e;
}

Rational LinExpr::coeff(const std::string& name) const {
    auto it = terms_.find(name);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LinExpr::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

LinExpr LinExpr::operator-() const {
    LinExpr e;
    e.c0_ = -c0_;
    for (const auto& [p, c] : terms_) e.terms_[p] = -c;
    return e;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
    LinExpr e = *this;
    e.c0_ += o.c0_;
    for (const auto& [p, c] : o.terms_) e.terms_[p] += c;
    e.prune();
    return e;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + (-o); }

LinExpr LinExpr::operator*(const LinExpr& o) const {
    if (!is_constant() && !o.is_constant())
        throw validation_error("nonlinear parameter product: " + str() + " * " + o.str());
    const LinExpr& scalar = is_constant() ? *this : o;
    const LinExpr& expr = is_constant() ? o : *this;
    LinExpr e;
    e.c0_ = scalar.c0_ * expr.c0_;
    for (const auto& [p, c] : expr.terms_) {
        Rational v = scalar.c0_ * c;
        if (v != 0) e.terms_[p] = v;
    }
    return e;
}

bool LinExpr::operator<(const LinExpr& o) const {
    if (c0_ != o.c0_) return c0_ < o.c0_;
    return terms_ < o.terms_;
}

LinExpr LinExpr::substitute(const std::map<std::string, Rational>& values) const {
    LinExpr e;
    e.c0_ = c0_;
    for (const auto& [p, c] : terms_) {
        auto it = values.find(p);
        if (it == values.end())
            e.terms_[p] = c;
        else
            e.c0_ += c * it->second;
    }
    return e;
}

LinExpr LinExpr::substitute(const std::map<std::string, LinExpr>& values) const {
    LinExpr e(c0_);
    for (const auto& [p, c] : terms_) {
        auto it = values.find(p);
        if (it == values.end())
            e += param(p, c);
        else
            e += c * it->second;
    }
    return e;
}

void LinExpr::collect_params(std::vector<std::string>& out) const {
    for (const auto& [p, c] : terms_)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

std::string LinExpr::str() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    if (c0_ != 0 || terms_.empty()) {
        s = to_string(c0_);
        first = false;
    }
    for (const auto& [p, c] : terms_) {
        if (first) {
            if (c == 1)
                s += p;
            else if (c == -1)
                s += "-" + p;
            else
                s += to_string(c) + "*" + p;
            first = false;
            continue;
        }
        Rational a = c < 0 ? Rational(-c) : c;
        s += (c < 0 ? " - " : " + ");
        if (a == 1)
            s += p;
        else
            s += to_string(a) + "*" + p;
    }
    return s;
}

} // namespace rht
