#include "lamina/rational.hpp"

#include <ostream>

namespace lamina {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::domain_error("Rational::parse: empty string");
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::domain_error("Rational::parse: bad literal '" + s + "'");
    if (v.get_den() == 0) throw std::domain_error("Rational::parse: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rational(v);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational sumGeometricTail(const GeometricTail& tail) {
    if (tail.ratio.abs() >= Rational(1))
        throw std::domain_error("sumGeometricTail: |ratio| must be < 1, got " + tail.ratio.str());
    return tail.firstTerm / (Rational(1) - tail.ratio);
}

}  // namespace lamina
