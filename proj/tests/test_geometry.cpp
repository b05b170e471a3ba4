#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gathering/geometry.hpp"
#include "gathering/rng.hpp"

#include <stdexcept>

using namespace gathering;

namespace {

Angle rand_angle(Rng& rng) {
    const long den = 1 + static_cast<long>(rng.below(1000));
    const long num = static_cast<long>(rng.below(2001)) - 1000;
    return Angle(make_rational(num, den));
}

}  // namespace

TEST_CASE("rationals parse and format exactly") {
    CHECK(rational_str(parse_rational("3/10")) == "3/10");
    CHECK(rational_str(parse_rational("-2/4")) == "-1/2");
    CHECK(rational_str(parse_rational("7")) == "7/1");
    CHECK(rational_str(Rational(0)) == "0/1");
    CHECK(make_rational(2, -4) == make_rational(-1, 2));
    CHECK(rational_floor(make_rational(7, 2)) == 3);
    CHECK(rational_floor(make_rational(-1, 4)) == -1);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("angles normalize into [0, 1)") {
    CHECK(Angle(make_rational(5, 4)) == Angle::from(1, 4));
    CHECK(Angle(make_rational(-1, 4)) == Angle::from(3, 4));
    CHECK(Angle(make_rational(7, 2)) == Angle::from(1, 2));
    CHECK(Angle(Rational(1)) == Angle());
    CHECK(Angle(Rational(-3)) == Angle());
    CHECK(Angle::parse("-1/4").str() == "3/4");
    CHECK(Angle().str() == "0/1");
    CHECK(Angle::from(1, 2).str() == "1/2");
}

TEST_CASE("clockwise arcs") {
    CHECK(cw(Angle(), Angle::from(1, 4)) == Angle::from(1, 4));
    CHECK(cw(Angle::from(1, 4), Angle()) == Angle::from(3, 4));
    CHECK(cw(Angle::from(9, 10), Angle::from(1, 10)) == Angle::from(1, 5));
    CHECK(cw(Angle::from(1, 10), Angle::from(1, 10)).is_zero());

    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const Angle a = rand_angle(rng);
        const Angle b = rand_angle(rng);
        const Angle r = rand_angle(rng);
        CHECK(cw(a, a).is_zero());
        if (!(a == b)) CHECK(cw(a, b).turns() + cw(b, a).turns() == 1);
        CHECK(a + cw(a, b) == b);
        CHECK(cw(a + r, b + r) == cw(a, b));
        CHECK(a + b - b == a);
    }
}

TEST_CASE("angular distance and antipodes") {
    CHECK(angular_distance(Angle(), Angle::from(3, 4)) == Angle::from(1, 4));
    CHECK(angular_distance(Angle(), Angle::from(1, 2)) == Angle::from(1, 2));
    CHECK(angular_distance(Angle::from(1, 10), Angle::from(2, 5)) == Angle::from(3, 10));
    CHECK(antipodal(Angle()) == Angle::from(1, 2));
    CHECK(antipodal(Angle::from(3, 4)) == Angle::from(1, 4));

    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const Angle a = rand_angle(rng);
        const Angle b = rand_angle(rng);
        CHECK(angular_distance(a, b) == angular_distance(b, a));
        CHECK(angular_distance(a, b).turns() <= make_rational(1, 2));
        CHECK(antipodal(antipodal(a)) == a);
        CHECK(angular_distance(a, antipodal(a)) == Angle::from(1, 2));
    }
}

TEST_CASE("theta neighborhoods are strict") {
    const Angle quarter = Angle::from(1, 4);
    CHECK(!in_theta_neighborhood(Angle(), quarter, quarter));
    CHECK(in_theta_neighborhood(Angle(), Angle::from(1, 5), quarter));
    CHECK(in_theta_neighborhood(Angle(), Angle::from(99, 100), Angle::from(1, 2)));
    CHECK(!in_theta_neighborhood(Angle(), Angle::from(1, 2), Angle::from(1, 2)));
    CHECK(in_theta_neighborhood(Angle::from(1, 3), Angle::from(1, 3), quarter));
    CHECK_THROWS_AS(in_theta_neighborhood(Angle(), Angle(), Angle::from(3, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(in_theta_neighborhood(Angle(), Angle(), Angle()), std::invalid_argument);
}

TEST_CASE("open arcs exclude their boundary") {
    const OpenArc D = OpenArc::semicircle(Angle::from(1, 4));
    CHECK(D.contains(Angle::from(1, 4)));
    CHECK(D.contains(Angle::from(1, 100)));
    CHECK(!D.contains(Angle()));
    CHECK(!D.contains(Angle::from(1, 2)));
    CHECK(!D.contains(Angle::from(3, 4)));
    CHECK_THROWS_AS(OpenArc(Angle(), Angle()), std::invalid_argument);
    CHECK_THROWS_AS(OpenArc(Angle(), Angle::from(2, 3)), std::invalid_argument);

    Rng rng(13);
    const Angle eighth = Angle::from(1, 8);
    for (int t = 0; t < 200; ++t) {
        const Angle c = rand_angle(rng);
        const Angle p = rand_angle(rng);
        const OpenArc arc(c, eighth);
        CHECK(arc.contains(p) == (angular_distance(c, p) < eighth));
    }
}

TEST_CASE("visibility ranges") {
    const Visibility half = Visibility::limited(Angle::from(1, 2));
    CHECK(half.sees(Angle(), Angle::from(1, 10)));
    CHECK(half.sees(Angle(), Angle::from(9, 10)));
    CHECK(!half.sees(Angle(), Angle::from(1, 2)));

    const Visibility full = Visibility::full();
    CHECK(full.is_full());
    CHECK(full.sees(Angle(), Angle::from(1, 2)));
    CHECK(Visibility::parse("1/1") == full);
    CHECK(Visibility::parse("1/4") == Visibility::limited(Angle::from(1, 4)));
    CHECK(Visibility::parse("1/4").str() == "1/4");
    CHECK(full.str() == "1/1");
    CHECK_THROWS_AS(Visibility::limited(Angle()), std::invalid_argument);
    CHECK_THROWS_AS(Visibility::limited(Angle::from(3, 4)), std::invalid_argument);
    CHECK_THROWS_AS(full.theta(), std::logic_error);

    const Visibility quarter = Visibility::limited(Angle::from(1, 4));
    CHECK(quarter.reachable(Angle()));
    CHECK(quarter.reachable(Angle::from(1, 5)));
    CHECK(quarter.reachable(Angle::from(9, 10)));  // counterclockwise by 1/10
    CHECK(!quarter.reachable(Angle::from(1, 4)));
    CHECK(!quarter.reachable(Angle::from(1, 2)));
    CHECK(full.reachable(Angle::from(1, 2)));
}

TEST_CASE("exactness survives long chains") {
    Angle a;
    const Angle third = Angle::from(1, 3);
    for (int i = 0; i < 3000; ++i) a = a + third;
    CHECK(a == Angle());

    Rational q(1);
    for (long d = 2; d <= 60; ++d) q *= make_rational(d - 1, d);
    CHECK(q == make_rational(1, 60));
}
