#pragma once

#include "gathering/rational.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace gathering {

// A point on the unit circle, stored as the fraction of a full clockwise turn
// from the reference direction. Always normalized into [0, 1): +, -, and
// scaling wrap around exactly. pi radians is Angle 1/2, pi/2 is 1/4.
class Angle {
public:
    Angle() : v_(0) {}
    explicit Angle(const Rational& turns) : v_(turns) { normalize(); }

    static Angle from(long num, long den) { return Angle(make_rational(num, den)); }
    static Angle parse(std::string_view text) { return Angle(parse_rational(text)); }

    const Rational& turns() const { return v_; }
    std::string str() const { return rational_str(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.v_ + b.v_); }
    friend Angle operator-(const Angle& a, const Angle& b) { return Angle(a.v_ - b.v_); }
    friend Angle operator*(const Angle& a, const Rational& k) { return Angle(a.v_ * k); }

    friend bool operator==(const Angle& a, const Angle& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) { return compare(a.v_, b.v_); }

private:
    void normalize();
    Rational v_;
};

// Clockwise arc length from a to b, in [0, 1). cw(a, a) = 0, and for a != b
// the two directions sum to a full turn: cw(a, b) + cw(b, a) = 1.
Angle cw(const Angle& a, const Angle& b);

// min(cw(a, b), cw(b, a)), in [0, 1/2].
Angle angular_distance(const Angle& a, const Angle& b);

// The diametrically opposite point; an involution.
Angle antipodal(const Angle& a);

// Strict containment: angular_distance(observer, p) < theta.
// Requires 0 < theta <= 1/2.
bool in_theta_neighborhood(const Angle& observer, const Angle& p, const Angle& theta);

// Open arc of width 2*half_width centered at `center`; membership is strict,
// so the two boundary points are excluded. half_width in (0, 1/2].
struct OpenArc {
    OpenArc(const Angle& center, const Angle& half_width);
    static OpenArc semicircle(const Angle& center);  // half_width = 1/4

    bool contains(const Angle& p) const;

    Angle center;
    Angle half_width;
};

// Visibility range of a robot: either a strict theta-neighborhood with
// theta in (0, 1/2], or the whole circle (antipodal point included). The
// full-circle sentinel serializes as "1/1".
class Visibility {
public:
    static Visibility limited(const Angle& theta);
    static Visibility full();
    static Visibility parse(std::string_view text);

    bool is_full() const { return full_; }
    const Angle& theta() const;  // throws if full
    bool sees(const Angle& observer, const Angle& p) const;
    // Whether a move by `offset` (clockwise, from the observer) lands inside
    // the observer's own visibility arc. Zero offsets always pass.
    bool reachable(const Angle& offset) const;
    std::string str() const;

    friend bool operator==(const Visibility&, const Visibility&) = default;

private:
    Visibility(bool full, Angle theta) : full_(full), theta_(theta) {}
    bool full_;
    Angle theta_;
};

}  // namespace gathering
