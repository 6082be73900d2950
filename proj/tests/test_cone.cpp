#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fpgame/cone.hpp>

using namespace fpgame;

TEST_CASE("aperture calibration hits the moment ratio", "[cone]") {
    for (int dim : {2, 3})
        for (double p : {2.0, 3.0, 5.0, 10.0}) {
            const ConeSpec spec = calibrate_cone(dim, p);
            REQUIRE(std::abs(cap_moment_ratio(dim, spec.aperture) - (p - 1.0)) <= 1e-10);
            REQUIRE(spec.aperture > 0.0);
            REQUIRE(spec.aperture < pi / 2.0 + 1e-12);
        }
}

TEST_CASE("p = 2 gives the half space", "[cone]") {
    REQUIRE(std::abs(aperture_for_exponent(2, 2.0) - pi / 2.0) <= 1e-12);
    REQUIRE(std::abs(aperture_for_exponent(3, 2.0) - pi / 2.0) <= 1e-12);
}

TEST_CASE("apertures match independently computed values", "[cone]") {
    // mpmath bisection on the closed-form moment ratio, 50 digits
    struct Row {
        int dim;
        double p, alpha;
    };
    const Row rows[] = {
        {2, 3.0, 1.139431330038002},  {2, 5.0, 0.8300174066317516},
        {2, 10.0, 0.5655512928260033}, {3, 3.0, 1.1960618940861681},
        {3, 5.0, 0.9045568943023814},  {3, 10.0, 0.6341385007018861},
    };
    for (const auto& r : rows)
        REQUIRE(std::abs(aperture_for_exponent(r.dim, r.p) - r.alpha) <= 1e-9);
}

TEST_CASE("aperture shrinks as p grows", "[cone]") {
    for (int dim : {2, 3}) {
        double prev = aperture_for_exponent(dim, 2.0);
        for (double p : {3.0, 5.0, 10.0, 20.0}) {
            const double a = aperture_for_exponent(dim, p);
            REQUIRE(a < prev);
            prev = a;
        }
    }
}

TEST_CASE("cap measure closed forms", "[cone]") {
    for (double a : {0.3, 0.9, 1.4}) {
        REQUIRE(cap_measure(2, a) == Catch::Approx(2.0 * a).epsilon(1e-12));
        REQUIRE(cap_measure(3, a) == Catch::Approx(2.0 * pi * (1.0 - std::cos(a))).epsilon(1e-12));
    }
}

TEST_CASE("cap average orthogonal second moment equals 1/(N+p-2)", "[cone]") {
    for (int dim : {2, 3})
        for (double p : {2.0, 3.0, 5.0, 10.0}) {
            const ConeSpec spec = calibrate_cone(dim, p);
            const double avg = cap_second_moment(spec) / spec.cap_measure;
            REQUIRE(avg == Catch::Approx(1.0 / (dim + p - 2.0)).epsilon(1e-8));
        }
}

TEST_CASE("cap mean axis closed forms agree with quadrature", "[cone]") {
    const ConeSpec s2 = calibrate_cone(2, 3.0);
    REQUIRE(cap_mean_axis(s2) ==
            Catch::Approx(std::sin(s2.aperture) / s2.aperture).epsilon(1e-12));
    const ConeSpec s3 = calibrate_cone(3, 3.0);
    REQUIRE(cap_mean_axis(s3) ==
            Catch::Approx(0.5 * (1.0 + std::cos(s3.aperture))).epsilon(1e-12));
}

TEST_CASE("cone membership", "[cone]") {
    const ConeSpec spec = calibrate_cone(2, 5.0);  // aperture ~ 0.83
    const Vec<2> axis{0.0, 1.0};
    REQUIRE(in_cone<2>(Vec<2>{0.0, 2.0}, axis, spec, 1.0, 4.0));
    REQUIRE_FALSE(in_cone<2>(Vec<2>{0.0, 0.5}, axis, spec, 1.0, 4.0));  // below a
    REQUIRE_FALSE(in_cone<2>(Vec<2>{0.0, 5.0}, axis, spec, 1.0, 4.0));  // past b
    REQUIRE_FALSE(in_cone<2>(Vec<2>{2.0, 0.1}, axis, spec, 1.0, 4.0));  // wide angle
    const double a = spec.aperture;
    REQUIRE(in_cone<2>(2.0 * Vec<2>{std::sin(0.9 * a), std::cos(0.9 * a)}, axis, spec, 1.0, 4.0));
    REQUIRE_FALSE(
        in_cone<2>(2.0 * Vec<2>{std::sin(1.1 * a), std::cos(1.1 * a)}, axis, spec, 1.0, 4.0));
}

TEST_CASE("rotation carries e1 to the target axis", "[cone]") {
    const Vec<3> y = unit_vec<3>(0);
    const Vec<3> t = normalized(Vec<3>{0.3, -1.2, 0.4});
    const auto rot = rotation_between(y, t);
    const Vec<3> im = rot.apply(y);
    REQUIRE(norm(im - t) <= 1e-12);
    // isometry on a generic vector
    const Vec<3> v{0.7, 0.2, -0.5};
    REQUIRE(norm(rot.apply(v)) == Catch::Approx(norm(v)).epsilon(1e-12));

    const Vec<2> u2 = normalized(Vec<2>{-1.0, 0.7});
    const auto r2 = rotation_between(unit_vec<2>(0), u2);
    REQUIRE(norm(r2.apply(unit_vec<2>(0)) - u2) <= 1e-12);
}
