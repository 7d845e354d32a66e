#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace rht {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// contract breaches inside the library (caller bugs): not user-input errors
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// rejected user input: bad degrees, d^2 != 0, parse failures, ...
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// two independent computations of the same value disagree: a bug, surfaced loudly
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// "p", "-p", "p/q"; no whitespace
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) return std::nullopt;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace rht
