#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fpgame/measure.hpp>
#include <fpgame/rng.hpp>

using namespace fpgame;

TEST_CASE("normalizing constant", "[measure]") {
    // mpmath: 4^s s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s))
    REQUIRE(make_kernel(2, 0.75).norm_const ==
            Catch::Approx(0.17116712969055234).epsilon(1e-12));
    const double s = 0.75;
    const double c3 = std::pow(4.0, s) * s * std::tgamma(1.5 + s) /
                      (std::pow(pi, 1.5) * std::tgamma(1.0 - s));
    REQUIRE(make_kernel(3, s).norm_const == Catch::Approx(c3).epsilon(1e-12));
    // s = 1/2 sits outside the admissible ray
    REQUIRE_THROWS_AS(make_kernel(3, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(make_kernel(2, 1.0), std::domain_error);
}

TEST_CASE("truncated cone mass", "[measure]") {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    const double s = ker.order;
    // closed form C |A| (a^{-2s} - b^{-2s}) / (2s)
    REQUIRE(truncated_cone_mass(spec, ker, 2.0) ==
            Catch::Approx(ker.norm_const * spec.cap_measure * std::pow(2.0, -2.0 * s) /
                          (2.0 * s)));
    // additivity over [a,b) + [b,inf)
    const double whole = truncated_cone_mass(spec, ker, 1.0);
    const double head = truncated_cone_mass(spec, ker, 1.0, 4.0);
    const double tail = truncated_cone_mass(spec, ker, 4.0);
    REQUIRE(whole == Catch::Approx(head + tail).epsilon(1e-14));
    REQUIRE_THROWS_AS(truncated_cone_mass(spec, ker, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(truncated_cone_mass(spec, ker, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("far rule reproduces the mass and radial moments", "[measure]") {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    const double s = ker.order;
    const auto q = cone_quadrature<2>(spec, ker, 1.0,
                                      std::numeric_limits<double>::infinity());
    for (double w : q.weights) REQUIRE(w > 0.0);
    for (const auto& z : q.nodes) REQUIRE(in_cone<2>(z, unit_vec<2>(0), spec, 1.0 - 1e-12));
    REQUIRE(q.total_weight() ==
            Catch::Approx(truncated_cone_mass(spec, ker, 1.0)).epsilon(1e-12));
    // int |z|^{-1} dmu = C |A| / (1 + 2s); the flattening substitution is only
    // exact for radially constant integrands, so the unbounded tail panel
    // leaves a small residual here
    const double m1 = q.integrate([](const Vec<2>& z) { return 1.0 / norm(z); });
    REQUIRE(m1 ==
            Catch::Approx(ker.norm_const * spec.cap_measure / (1.0 + 2.0 * s)).epsilon(1e-4));
    // purely angular integrands ride on the exact radial mass: the calibrated
    // cone has transverse second moment 1/(N+p-2), so the axial one is 2/3
    const double axial =
        q.integrate([](const Vec<2>& z) { return z[0] * z[0] / dot(z, z); });
    REQUIRE(axial ==
            Catch::Approx(q.total_weight() * (2.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("near rule integrates quadratics on the truncated tip", "[measure]") {
    for (int dim : {2, 3}) {
        const double p = 3.0, s = 0.75, eps = 0.25;
        const ConeSpec spec = calibrate_cone(dim, p);
        const auto ker = make_kernel(dim, s);
        const double expect = ker.norm_const * spec.cap_measure *
                              std::pow(eps, 2.0 - 2.0 * s) /
                              ((dim + p - 2.0) * (2.0 - 2.0 * s));
        double got = 0.0;
        if (dim == 2) {
            const auto q = cone_quadrature<2>(spec, ker, 0.0, eps);
            got = q.integrate([](const Vec<2>& z) { return z[1] * z[1]; });
        } else {
            const auto q = cone_quadrature<3>(spec, ker, 0.0, eps);
            got = q.integrate([](const Vec<3>& z) { return z[1] * z[1]; });
        }
        REQUIRE(got == Catch::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("dyadic panels agree with the single far rule", "[measure]") {
    const ConeSpec spec = calibrate_cone(2, 5.0);
    const auto ker = make_kernel(2, 0.6);
    const auto breaks = dyadic_breaks(0.25, 8.0);
    REQUIRE(breaks.front() == Catch::Approx(0.25));
    REQUIRE(breaks.back() >= 8.0);
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        REQUIRE(breaks[i] > breaks[i - 1]);
        REQUIRE(breaks[i] <= 2.0 * breaks[i - 1] + 1e-12);
    }
    const auto qp = cone_quadrature_panels<2>(spec, ker, breaks, 16, 24);
    REQUIRE(qp.total_weight() ==
            Catch::Approx(truncated_cone_mass(spec, ker, 0.25)).epsilon(1e-10));
}

TEST_CASE("sampled increments respect the law", "[measure][sampling]") {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    const double s = ker.order;
    const std::size_t n = 200000;
    Rng rng(91);

    std::size_t past2 = 0, past4 = 0;
    double sum_o2 = 0.0, sumsq_o2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<2> z = sample_increment<2>(rng, spec, ker);
        const double r = norm(z);
        REQUIRE(r >= 1.0 - 1e-12);
        REQUIRE(in_cone<2>(z, unit_vec<2>(0), spec, 1.0 - 1e-9));
        if (r > 2.0) ++past2;
        if (r > 4.0) ++past4;
        const double o = z[1] / r;
        sum_o2 += o * o;
        sumsq_o2 += o * o * o * o;
    }
    // radial tail P(|z| > R) = R^{-2s}
    for (auto [R, cnt] : {std::pair{2.0, past2}, std::pair{4.0, past4}}) {
        const double th = std::pow(R, -2.0 * s);
        const double sig = std::sqrt(th * (1.0 - th) / double(n));
        REQUIRE(std::abs(double(cnt) / double(n) - th) <= 4.0 * sig);
    }
    // angular second moment E[(z/|z|)_2^2] = 1/(N+p-2)
    const double mean = sum_o2 / double(n);
    const double var = sumsq_o2 / double(n) - mean * mean;
    const double sig = std::sqrt(var / double(n));
    REQUIRE(std::abs(mean - 1.0 / 3.0) <= 4.0 * sig);
}

TEST_CASE("rotated quadrature preserves weights and carries the axis", "[measure]") {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    const auto q = cone_quadrature<2>(spec, ker, 1.0, 8.0);
    const Vec<2> axis = normalized(Vec<2>{1.0, 1.0});
    const auto qr = rotated(q, rotation_between<2>(unit_vec<2>(0), axis));
    REQUIRE(qr.total_weight() == Catch::Approx(q.total_weight()).epsilon(1e-15));
    const double ax = q.integrate([](const Vec<2>& z) { return z[0]; });
    const double axr = qr.integrate([axis](const Vec<2>& z) { return dot(z, axis); });
    REQUIRE(axr == Catch::Approx(ax).epsilon(1e-12));
    for (const auto& z : qr.nodes) REQUIRE(in_cone<2>(z, axis, spec, 1.0 - 1e-12, 8.0 + 1e-12));
}
