#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "radex/qseries.hpp"

using namespace radex;

namespace {

// p(n) from Euler's pentagonal recurrence; shares nothing with the series code.
std::vector<mpz_class> pentagonal_oracle(std::size_t N) {
    std::vector<mpz_class> p(N + 1);
    p[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        mpz_class s = 0;
        for (long j = 1;; ++j) {
            const long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
            if (g1 > static_cast<long>(n)) break;
            const int sign = (j % 2) ? 1 : -1;
            s += sign * p[n - static_cast<std::size_t>(g1)];
            if (g2 <= static_cast<long>(n)) s += sign * p[n - static_cast<std::size_t>(g2)];
        }
        p[n] = s;
    }
    return p;
}

// Truncated int64 power series helpers (test-side, independent of IntegerSeries).
using Poly = std::vector<std::int64_t>;

Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Poly inv(const Poly& a) {
    Poly c(a.size(), 0);
    c[0] = 1;  // a[0] == 1
    for (std::size_t n = 1; n < a.size(); ++n) {
        std::int64_t s = 0;
        for (std::size_t j = 1; j <= n; ++j) s += a[j] * c[n - j];
        c[n] = -s;
    }
    return c;
}

Poly binom(std::size_t N, std::size_t e, std::int64_t c) {  // 1 + c q^e
    Poly p(N + 1, 0);
    p[0] = 1;
    if (e <= N) p[e] += c;
    return p;
}

// f(q) = 1 + sum q^{n^2} / (-q;q)_n^2, summed literally.
Poly f_oracle(std::size_t N) {
    Poly total(N + 1, 0);
    total[0] = 1;
    for (std::size_t n = 1; n * n <= N; ++n) {
        Poly den = binom(N, 0, 0);
        for (std::size_t j = 1; j <= n; ++j) den = mul(den, mul(binom(N, j, 1), binom(N, j, 1)));
        Poly term = inv(den);
        Poly shifted(N + 1, 0);
        for (std::size_t i = 0; i + n * n <= N; ++i) shifted[i + n * n] = term[i];
        for (std::size_t i = 0; i <= N; ++i) total[i] += shifted[i];
    }
    return total;
}

// Partitions of n, brute force: lists every partition and tests the parts.
long p2_bruteforce(int n) {
    long count = 0;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            std::vector<int> u = parts;
            u.erase(std::unique(u.begin(), u.end()), u.end());
            bool ok = true;
            for (std::size_t i = 1; i < u.size(); ++i) ok = ok && (u[i - 1] - u[i] != 1);
            count += ok;
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            parts.push_back(p);
            rec(rest - p, p);
            parts.pop_back();
        }
    };
    rec(n, n);
    return count;
}

}  // namespace

TEST_CASE("Pochhammer products") {
    const IntegerSeries e = pochhammer_inf(1, 1, 1, 20);  // Euler's (q;q)
    const long want[] = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i <= 20; ++i) CHECK(e[i] == want[i]);
    const IntegerSeries d = pochhammer_inf(1, 1, -1, 10);  // (-q;q): partitions into distinct parts
    const long dist[] = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10};
    for (std::size_t i = 0; i <= 10; ++i) CHECK(d[i] == dist[i]);
    CHECK_THROWS_AS(pochhammer_inf(0, 1, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(pochhammer_inf(1, 0, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(pochhammer_inf(1, 1, 2, 5), std::invalid_argument);
}

TEST_CASE("series arithmetic") {
    IntegerSeries a = IntegerSeries::one(12);
    a.mul_binomial(3, -2);
    a.mul_binomial(1, 5);
    IntegerSeries b = a;
    b.div_binomial(1, 5);
    b.div_binomial(3, -2);
    CHECK(b == IntegerSeries::one(12));
    CHECK(a * a.inverse() == IntegerSeries::one(12));
    IntegerSeries two = IntegerSeries::one(4) * 2;
    CHECK_THROWS_AS(two.inverse(), std::domain_error);
    CHECK(IntegerSeries::monomial(4, 7).coeffs() == IntegerSeries(4).coeffs());
}

TEST_CASE("partition counts match the pentagonal recurrence") {
    const auto p = partition_counts(2000);
    const auto q = pentagonal_oracle(2000);
    CHECK(p == q);
    CHECK(p[5] == 7);
    CHECK(p[10] == 42);
    CHECK(p[100] == mpz_class("190569292"));
}

TEST_CASE("mock theta coefficients") {
    const IntegerSeries f = f_series(30);
    const Poly fo = f_oracle(30);
    for (std::size_t i = 0; i <= 30; ++i) CHECK(f[i] == fo[i]);
    CHECK(f[0] == 1);
    CHECK(f[1] == 1);
    CHECK(f[2] == -2);
    CHECK(f[3] == 3);
    CHECK(chi_series(10)[0] == 1);
    const IntegerSeries w = omega_mock_series(10);
    CHECK(w[0] == 1);
    CHECK(w[1] == 2);  // 1/(1-q)^2 = 1 + 2q + ...
}

TEST_CASE("xi coefficients") {
    const IntegerSeries x = xi_series(10);
    CHECK(x[0] == 1);
    CHECK(x[1] == 0);
    CHECK(x[2] == 1);
    CHECK(x[3] == 1);
    // Brute force: (-q^3;q^3)/(q^2;q^2) built from int64 binomials.
    const std::size_t N = 40;
    Poly num = binom(N, 0, 0), den = binom(N, 0, 0);
    for (std::size_t j = 1; 3 * j <= N; ++j) num = mul(num, binom(N, 3 * j, 1));
    for (std::size_t j = 1; 2 * j <= N; ++j) den = mul(den, binom(N, 2 * j, -1));
    const Poly want = mul(num, inv(den));
    const IntegerSeries got = xi_series(N);
    for (std::size_t i = 0; i <= N; ++i) CHECK(got[i] == want[i]);
}

TEST_CASE("p2 oracles agree") {
    const auto s = p2_counts(200);
    const long small[] = {1, 1, 2, 2, 4, 4, 8, 8, 13, 15, 22};  // p2(6): 6, 5+1, 4+2, 4+1+1, 3+3, 3+1+1+1, 2+2+2, 1+...+1
    for (std::size_t i = 0; i <= 10; ++i) CHECK(s[i] == small[i]);
    CHECK(s[100] == 6069450);
    for (long n = 0; n <= 200; ++n) CHECK(s[static_cast<std::size_t>(n)] == p2_enumerate(n));
    for (int n = 0; n <= 28; ++n) CHECK(s[static_cast<std::size_t>(n)] == p2_bruteforce(n));
    CHECK_THROWS_AS(p2_enumerate(201), std::invalid_argument);
    CHECK_THROWS_AS(p2_enumerate(-1), std::invalid_argument);
    CHECK(p2_enumerate(250, 300) == p2_counts(250)[250]);
}

TEST_CASE("splitting into g1 and g2") {
    const ScaledSeries g1 = g1_series(20), g2 = g2_series(20);
    CHECK(g1.prefactor == mpq_class(1, 4));
    CHECK(g2.prefactor == mpq_class(3, 4));
    CHECK(g1.coefficient(0) + g2.coefficient(0) == 1);
    const auto p2 = p2_counts(20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(g1.coefficient(n) + g2.coefficient(n) == mpq_class(p2[n]));
    CHECK(decomposition_check(0));
    CHECK(decomposition_check(50));
    CHECK(decomposition_check(500));
}
