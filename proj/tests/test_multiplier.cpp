#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <random>

#include "radex/multiplier.hpp"

using namespace radex;

namespace {

// ((x)) sawtooth of a rational.
Rational sawtooth(const Rational& x) {
    if (x.is_integer()) return Rational(0);
    return x - x.floor() - Rational(1, 2);
}

// Dedekind sum s(h,k) = sum_{r=1}^{k-1} (r/k) ((h r / k)).
Rational dedekind_sum(std::int64_t h, std::int64_t k) {
    Rational s(0);
    for (std::int64_t r = 1; r < k; ++r) s = s + Rational(r, k) * sawtooth(Rational(h * r, k));
    return s;
}

std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

// 1 / prod (1 - q^n), |q| < 1.
Complex euler_P(const Complex& q, const PrecisionContext& ctx) {
    const Real stop = ldexp_one(-(ctx.bits() + 20), ctx);
    Complex prod(Real(1L, ctx), Real(ctx));
    Complex qn = q;
    const Complex one(Real(1L, ctx), Real(ctx));
    while (abs(qn) > stop) {
        prod *= one - qn;
        qn *= q;
    }
    return one / prod;
}

}  // namespace

TEST_CASE("Kronecker symbol") {
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(3, 7) == -1);
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-1, -1) == -1);
    for (std::int64_t p : {3, 5, 7, 11, 13, 101}) {
        for (std::int64_t a = -30; a <= 30; ++a) {
            const std::int64_t e = mod_pow(a, (p - 1) / 2, p);
            const int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == euler);
        }
    }
}

TEST_CASE("modular inverse") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(-1, 5) == 4);
    CHECK(mod_inverse(5, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(mod_inverse(1, 0), std::invalid_argument);
}

TEST_CASE("cusp pairs") {
    for (std::int64_t d : {1, 3, 8, 24}) {
        for (std::int64_t k = 1; k <= 40; ++k) {
            if (std::gcd(d, k) != 1) continue;
            for (std::int64_t h = 0; h < k || h == 0; ++h) {
                if (std::gcd(h, k) != 1) continue;
                const CuspPair c = make_cusp_pair(h, k, d);
                // exhaustive search for the least admissible representative
                std::int64_t want = -1;
                for (std::int64_t x = 0; x < d * k; ++x) {
                    if (x % d == 0 && ((h * x + 1) % k + k) % k == 0) {
                        want = x;
                        break;
                    }
                }
                CHECK(c.hprime == want);
                if (k == 1) break;
            }
        }
    }
    CHECK_THROWS_AS(make_cusp_pair(2, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_cusp_pair(1, 6, 3), std::invalid_argument);
}

TEST_CASE("omega equals exp(pi i s(h,k))") {
    CHECK(omega(0, 1) == RootOfUnity());
    for (std::int64_t k = 1; k <= 60; ++k) {
        for (std::int64_t h = 0; h < k || (k == 1 && h == 0); ++h) {
            if (std::gcd(h, k) != 1) continue;
            const RootOfUnity w = omega(h, k);
            CHECK(w == RootOfUnity(dedekind_sum(h, k) / Rational(2)));
            CHECK((24 * k) % w.rho().den() == 0);
            const std::int64_t hp = make_cusp_pair(h, k, 1).hprime;
            CHECK(omega_with_hprime(h, k, hp + 7 * k) == w);
            if (k == 1) break;
        }
    }
    CHECK_THROWS_AS(omega(2, 4), std::invalid_argument);
}

TEST_CASE("omega satisfies the transformation law of the partition generating function") {
    const auto ctx = make_context(160);
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::int64_t> kd(1, 20);
    const Complex zs[] = {Complex(Real(1L, ctx), Real(ctx)), Complex(Real("0.5", ctx), Real(1L, ctx) / 3L)};
    const Complex i(Real(ctx), Real(1L, ctx));
    int checked = 0;
    while (checked < 30) {
        const std::int64_t k = kd(rng);
        const std::int64_t h = std::uniform_int_distribution<std::int64_t>(0, k - 1)(rng);
        if (std::gcd(h, k) != 1) continue;
        const std::int64_t hp = make_cusp_pair(h, k, 1).hprime;
        for (const Complex& z : zs) {
            const Real two_pi_k = ctx.pi() * 2L / k;
            const Complex q = exp((Complex(Real(h, ctx), Real(ctx)) + i * z) * i * two_pi_k);
            const Complex inv_z = Complex(Real(1L, ctx), Real(ctx)) / z;
            const Complex q1 = exp((Complex(Real(hp, ctx), Real(ctx)) + i * inv_z) * i * two_pi_k);
            const Complex lhs = euler_P(q, ctx);
            const Complex rhs = omega(h, k).embed(ctx) * sqrt(z) *
                                exp((inv_z - z) * (ctx.pi() / (12L * k))) * euler_P(q1, ctx);
            CHECK(abs(lhs - rhs) / abs(lhs) < ldexp_one(-120, ctx));
        }
        ++checked;
    }
}

TEST_CASE("multiplier ratios: corrected closed forms are exact") {
    std::size_t bad_printed[4] = {0, 0, 0, 0};
    for (std::int64_t k = 1; k <= 60; ++k) {
        const RatioCase c = ratio_case_of(k);
        for (std::int64_t h = 0; h < k || (k == 1 && h == 0); ++h) {
            if (std::gcd(h, k) != 1) continue;
            const CuspPair pair = make_cusp_pair(h, k, ratio_divisor(c));
            const RootOfUnity direct = ratio_from_omega(c, pair);
            CHECK(direct == ratio_closed_form(c, pair));
            bad_printed[static_cast<int>(c)] += direct != ratio_closed_form(c, pair, ClosedForm::printed);
            // Shifting h' by 2dk keeps every ratio.
            CuspPair shifted = pair;
            shifted.hprime += 2 * pair.d * k;
            CHECK(ratio_from_omega(c, shifted) == direct);
            if (k == 1) break;
        }
    }
    CHECK(bad_printed[static_cast<int>(RatioCase::div6)] == 0);
    CHECK(bad_printed[static_cast<int>(RatioCase::gcd2)] == 0);
    CHECK(bad_printed[static_cast<int>(RatioCase::gcd3)] > 0);
    CHECK(bad_printed[static_cast<int>(RatioCase::gcd1)] > 0);
}

TEST_CASE("multiplier ratio examples and errors") {
    const CuspPair one = make_cusp_pair(0, 1, 24);
    CHECK(ratio_from_omega(RatioCase::gcd1, one) == RootOfUnity());
    CHECK(ratio_closed_form(RatioCase::gcd1, one, ClosedForm::printed) == RootOfUnity(Rational(1, 2)));
    CHECK(ratio_closed_form(RatioCase::div6, make_cusp_pair(1, 6, 1)).rho() == Rational(1, 6));
    CHECK(ratio_case_of(12) == RatioCase::div6);
    CHECK(ratio_case_of(4) == RatioCase::gcd2);
    CHECK(ratio_case_of(9) == RatioCase::gcd3);
    CHECK(ratio_case_of(25) == RatioCase::gcd1);
    CHECK_THROWS_AS(ratio_closed_form(RatioCase::gcd2, make_cusp_pair(1, 5, 3)), std::invalid_argument);
    CHECK_THROWS_AS(ratio_from_omega(RatioCase::gcd1, make_cusp_pair(1, 5, 1)), std::invalid_argument);
}
