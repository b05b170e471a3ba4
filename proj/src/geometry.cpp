#include "gathering/geometry.hpp"

#include <stdexcept>

namespace gathering {

namespace {

const Rational& one() {
    static const Rational k(1);
    return k;
}

const Rational& half() {
    static const Rational k = make_rational(1, 2);
    return k;
}

}  // namespace

void Angle::normalize() {
    v_ -= rational_floor(v_);
}

Angle cw(const Angle& a, const Angle& b) {
    return b - a;
}

Angle angular_distance(const Angle& a, const Angle& b) {
    Angle d = cw(a, b);
    if (d.turns() > half()) d = cw(b, a);
    return d;
}

Angle antipodal(const Angle& a) {
    return Angle(a.turns() + half());
}

bool in_theta_neighborhood(const Angle& observer, const Angle& p, const Angle& theta) {
    if (theta.is_zero() || theta.turns() > half())
        throw std::invalid_argument("theta must be in (0, 1/2]");
    return angular_distance(observer, p) < theta;
}

OpenArc::OpenArc(const Angle& c, const Angle& hw) : center(c), half_width(hw) {
    if (hw.is_zero() || hw.turns() > half())
        throw std::invalid_argument("arc half-width must be in (0, 1/2]");
}

OpenArc OpenArc::semicircle(const Angle& c) {
    return OpenArc(c, Angle::from(1, 4));
}

bool OpenArc::contains(const Angle& p) const {
    return angular_distance(center, p) < half_width;
}

Visibility Visibility::limited(const Angle& theta) {
    if (theta.is_zero() || theta.turns() > half())
        throw std::invalid_argument("theta must be in (0, 1/2]");
    return Visibility(false, theta);
}

Visibility Visibility::full() {
    return Visibility(true, Angle());
}

Visibility Visibility::parse(std::string_view text) {
    const Rational q = parse_rational(text);
    if (q == one()) return full();
    return limited(Angle(q));
}

const Angle& Visibility::theta() const {
    if (full_) throw std::logic_error("full visibility has no theta");
    return theta_;
}

bool Visibility::sees(const Angle& observer, const Angle& p) const {
    if (full_) return true;
    return angular_distance(observer, p) < theta_;
}

bool Visibility::reachable(const Angle& offset) const {
    if (offset.is_zero() || full_) return true;
    return angular_distance(Angle(), offset) < theta_;
}

std::string Visibility::str() const {
    return full_ ? "1/1" : theta_.str();
}

}  // namespace gathering
