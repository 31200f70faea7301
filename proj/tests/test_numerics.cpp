#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <random>

#include "radex/numerics.hpp"

using namespace radex;

namespace {

// I_1(x) from an exact rational partial sum of sum (x/2)^{2m+1} / (m! (m+1)!), x = p/q.
Real bessel_i1_rational_oracle(long p, long q, int terms, const PrecisionContext& ctx) {
    mpq_class half_x(p, 2 * q);
    mpq_class x2 = half_x * half_x;
    mpq_class term = half_x;  // m = 0
    mpq_class sum = 0;
    for (int m = 0; m < terms; ++m) {
        sum += term;
        term *= x2;
        term /= mpq_class((m + 1) * (m + 2));
    }
    sum.canonicalize();
    Real out(ctx);
    mpfr_set_q(out.get(), sum.get_mpq_t(), MPFR_RNDN);
    return out;
}

// (1/2 pi i) contour integral of e^{2 pi n w + 2 pi y/(k^2 w)} around |w| = r, by the
// trapezoid rule (spectrally accurate for periodic integrands).
double kernel_contour(long k, long n, double y, int points) {
    const double pi = std::acos(-1.0);
    const double r = std::sqrt(y / (static_cast<double>(n) * k * k));
    std::complex<double> acc = 0;
    for (int j = 0; j < points; ++j) {
        const double th = 2 * pi * j / points;
        const std::complex<double> w = std::polar(r, th);
        acc += std::exp(2 * pi * static_cast<double>(n) * w + 2 * pi * y / (static_cast<double>(k * k) * w)) * w;
    }
    return (acc / static_cast<double>(points)).real();
}

}  // namespace

TEST_CASE("precision context") {
    CHECK(make_context(64).bits() == 64);
    CHECK(make_context(256).bits() == 256);
    CHECK_THROWS_AS(make_context(63), std::invalid_argument);
    const auto ctx = make_context(128);
    CHECK(ctx.scaled(2).bits() == 256);
    CHECK(std::abs(ctx.pi().to_double() - std::acos(-1.0)) < 1e-15);
}

TEST_CASE("Real parsing and rounding") {
    const auto ctx = make_context(128);
    CHECK_THROWS_AS(Real("12x", ctx), std::invalid_argument);
    CHECK_THROWS_AS(Real("", ctx), std::invalid_argument);
    CHECK(round_to_integer_string(Real("6069450.0014", ctx)) == "6069450");
    CHECK(round_to_integer_string(Real("-2.6", ctx)) == "-3");
    CHECK(round_to_integer_string(Real("2.5", ctx)) == "3");
    const auto big = make_context(256);
    CHECK(round_to_integer_string(Real("123456789012345678901234567890.2", big)) == "123456789012345678901234567890");
}

TEST_CASE("I_1 edge values and rational-series oracle") {
    const auto ctx = make_context(128);
    CHECK(bessel_i(BesselOrder::one, Real(0L, ctx), ctx).is_zero());
    const auto hi = ctx.scaled(3);
    for (long p : {1L, 2L, 7L, 25L}) {
        const Real x = Real(p, ctx) / 3L;
        const Real got = bessel_i(BesselOrder::one, x, ctx);
        const Real want = bessel_i1_rational_oracle(p, 3, 200, hi);
        CHECK(abs(got - want) / want < ldexp_one(-120, ctx));
    }
    // Near-overflow-of-double argument, checked against the double-precision library value.
    const Real x(700L, ctx);
    CHECK(std::abs(bessel_i(BesselOrder::one, x, ctx).to_double() / std::cyl_bessel_i(1.0, 700.0) - 1) < 1e-12);
}

TEST_CASE("I_{3/2} closed form agrees with the series") {
    const auto ctx = make_context(192);
    for (const char* s : {"0.3", "1", "4.5", "30", "200"}) {
        const Real x(s, ctx);
        const Real a = bessel_i(BesselOrder::three_halves, x, ctx);
        const Real b = bessel_i_series(BesselOrder::three_halves, x, ctx);
        CHECK(abs(a - b) / b < ldexp_one(-170, ctx));
    }
    // sqrt(2/(pi x)) (cosh x - sinh x / x) evaluated test-side at x = 1.
    const Real one(1L, ctx);
    const Real want = sqrt(Real(2L, ctx) / ctx.pi()) * (cosh(one) - sinh(one));
    CHECK(abs(bessel_i(BesselOrder::three_halves, one, ctx) - want) < ldexp_one(-180, ctx));
    CHECK_THROWS(bessel_order(Rational(1, 2)));
}

TEST_CASE("precision doubling leaves Bessel values unchanged") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.01, 80.0);
    const auto lo = make_context(128), hi = make_context(256);
    for (int i = 0; i < 40; ++i) {
        const double x = u(rng);
        for (BesselOrder o : {BesselOrder::one, BesselOrder::three_halves}) {
            const Real a = bessel_i(o, Real(x, lo), lo);
            const Real b = bessel_i(o, Real(x, hi), hi);
            CHECK(abs(a - b) / b < ldexp_one(-118, hi));
        }
    }
}

TEST_CASE("complex cosh") {
    const auto ctx = make_context(128);
    const Complex zero(Real(0L, ctx), Real(0L, ctx));
    const Complex c0 = complex_cosh(zero, ctx);
    CHECK(c0.re == Real(1L, ctx));
    CHECK(c0.im.is_zero());
    const Complex ipi2(Real(0L, ctx), ctx.pi() / 2L);
    CHECK(abs(complex_cosh(ipi2, ctx)) < ldexp_one(-120, ctx));
    // cosh(z + i pi) = -cosh(z)
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 100; ++i) {
        const Complex z(Real(u(rng), ctx), Real(u(rng), ctx));
        const Complex w(z.re, z.im + ctx.pi());
        const Complex a = complex_cosh(z, ctx);
        CHECK(abs(a + complex_cosh(w, ctx)) <= abs(a) * ldexp_one(-115, ctx) + ldexp_one(-120, ctx));
    }
}

TEST_CASE("kernel L matches a contour-integral oracle") {
    const auto ctx = make_context(128);
    CHECK_THROWS(kernel_L(1, 1, Real(0L, ctx), ctx));
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> kd(1, 12), nd(1, 60);
    std::uniform_real_distribution<double> yd(0.01, 0.5);
    for (int i = 0; i < 20; ++i) {
        const long k = kd(rng), n = nd(rng);
        const double y = yd(rng);
        const double got = kernel_L(k, n, Real(y, ctx), ctx).to_double();
        const double want = kernel_contour(k, n, y, 4096);
        CHECK(std::abs(got - want) <= 1e-10 * std::abs(want));
    }
}

TEST_CASE("unit roots") {
    const auto ctx = make_context(96);
    const Complex i = unit_root(Rational(1, 4), ctx);
    CHECK(i.re.is_zero());
    CHECK(i.im == Real(1L, ctx));
    const Complex w = unit_root(Rational(1, 3), ctx);
    CHECK(std::abs(w.re.to_double() + 0.5) < 1e-25);
    CHECK(std::abs(w.im.to_double() - std::sqrt(3.0) / 2) < 1e-15);
}
