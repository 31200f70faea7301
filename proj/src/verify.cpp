#include "radex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "radex/formula.hpp"
#include "radex/integrals.hpp"
#include "radex/kloosterman.hpp"
#include "radex/multiplier.hpp"
#include "radex/qseries.hpp"

namespace radex {

namespace {

constexpr std::size_t kMaxFailureLines = 20;

void fail(SuiteResult& r, const std::string& line) {
    r.passed = false;
    if (r.failures.size() < kMaxFailureLines) r.failures.push_back(line);
}

}  // namespace

SuiteResult verify_multipliers(std::int64_t k_max) {
    SuiteResult r{"multipliers", true, {}, {}, {}};
    std::size_t checked = 0;
    std::size_t printed_bad[4] = {0, 0, 0, 0};
    std::size_t per_class[4] = {0, 0, 0, 0};
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const RatioCase c = ratio_case_of(k);
        const auto ci = static_cast<std::size_t>(c);
        for (std::int64_t h = 0; h < std::max<std::int64_t>(k, 1); ++h) {
            if (std::gcd(h, k) != 1) continue;
            const CuspPair pair = make_cusp_pair(h, k, ratio_divisor(c));
            const RootOfUnity direct = ratio_from_omega(c, pair);
            ++checked;
            ++per_class[ci];
            if (direct != ratio_closed_form(c, pair, ClosedForm::corrected)) {
                fail(r, "k=" + std::to_string(k) + " h=" + std::to_string(h) + " " + to_string(c) + ": omega " +
                            direct.to_string() + " vs closed " +
                            ratio_closed_form(c, pair, ClosedForm::corrected).to_string());
            }
            if (direct != ratio_closed_form(c, pair, ClosedForm::printed)) ++printed_bad[ci];
        }
    }
    for (RatioCase c : {RatioCase::div6, RatioCase::gcd2, RatioCase::gcd3, RatioCase::gcd1}) {
        const auto ci = static_cast<std::size_t>(c);
        r.notes.push_back("printed form " + to_string(c) + ": " + std::to_string(printed_bad[ci]) + " of " +
                          std::to_string(per_class[ci]) + " cases differ from the omega ratio");
    }
    const CuspPair one = make_cusp_pair(0, 1, 24);
    r.notes.push_back("k=1: omega ratio " + ratio_from_omega(RatioCase::gcd1, one).to_string() + ", printed closed form " +
                      ratio_closed_form(RatioCase::gcd1, one, ClosedForm::printed).to_string());
    r.summary = std::to_string(checked) + " (h,k) pairs, k <= " + std::to_string(k_max);
    return r;
}

SuiteResult verify_kloosterman(std::int64_t k_max, std::int64_t nm_max) {
    SuiteResult r{"kloosterman", true, {}, {}, {}};
    std::size_t checked = 0;
    std::size_t printed_bad[8] = {};
    std::size_t per_family[8] = {};
    for (int family : {1, 3, 7}) {
        for (std::int64_t k = 1; k <= k_max; ++k) {
            if (ratio_case_of(k) != family_case(family)) continue;
            for (std::int64_t n = 0; n <= nm_max; ++n) {
                for (std::int64_t m = 0; m <= nm_max; ++m) {
                    const std::string where = "family " + std::to_string(family) + " k=" + std::to_string(k) +
                                              " n=" + std::to_string(n) + " m=" + std::to_string(m);
                    const Reduction red = reduce_to_classical(family, k, n, m);
                    ++checked;
                    if (!red.integral) {
                        fail(r, where + ": " + red.note);
                        continue;
                    }
                    const KloostermanValue lhs = family_K(family, k, std::nullopt, n, m);
                    const KloostermanValue base = classical_K(k, red.n_prime, red.m_prime);
                    if (!lhs.same_terms(base.scaled(red.prefactor))) fail(r, where + ": reduction mismatch");
                    ++per_family[family - 1];
                    if (!lhs.same_terms(base.scaled(red.printed_prefactor))) ++printed_bad[family - 1];
                }
            }
        }
    }
    for (int family : {1, 3, 7}) {
        r.notes.push_back("family " + std::to_string(family) + " with the printed sign: " +
                          std::to_string(printed_bad[family - 1]) + " of " + std::to_string(per_family[family - 1]) +
                          " cases differ");
    }
    // Triangle bound and periodicity of the classical sum.
    auto ctx = make_context(64);
    for (std::int64_t k = 1; k <= k_max; ++k) {
        std::int64_t phi = 0;
        for (std::int64_t h = 0; h < std::max<std::int64_t>(k, 1); ++h) phi += std::gcd(h, k) == 1;
        for (std::int64_t n = 0; n <= nm_max; ++n) {
            const KloostermanValue v = classical_K(k, n, 1);
            if (abs(v.embed(ctx)).to_double() > static_cast<double>(phi) + 1e-9) {
                fail(r, "|K_" + std::to_string(k) + "(" + std::to_string(n) + ",1)| exceeds phi(k)");
            }
            if (!v.same_terms(classical_K(k, n + k, 1 + k))) {
                fail(r, "K_" + std::to_string(k) + " is not periodic at n=" + std::to_string(n));
            }
        }
    }
    r.summary = std::to_string(checked) + " reductions, k <= " + std::to_string(k_max) + ", 0 <= n, m <= " +
                std::to_string(nm_max);
    return r;
}

SuiteResult verify_mordell(std::int64_t k_max, int bits, MordellFit* fit_out) {
    SuiteResult r{"mordell", true, {}, {}, {}};
    const auto ctx = make_context(bits);
    const Real tol = ldexp_one(-(bits / 2), ctx);
    const Rational bs[] = {Rational(1, 18), Rational(5, 36), Rational(1, 6)};
    const Rational b_neg(-1, 12);
    MordellFit fit;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const std::int64_t n0 = std::max<std::int64_t>(k, 4);
        for (std::int64_t dn = 0; dn <= 4; ++dn) {
            const std::int64_t N = n0 + dn;
            const double phi_max = 1.0 / static_cast<double>(k * (k + N));
            for (int step = -2; step <= 2; ++step) {
                const bool coarse = dn % 2 == 0 && step % 2 == 0;
                const Real re = Real(k, ctx) / (N * N);
                const Real im = Real(-phi_max * step / 2.0, ctx) * k;
                const Complex z(re, im);
                const Complex inv_z = Complex(Real(1L, ctx), Real(ctx)) / z;
                for (std::int64_t nu = 1; nu <= k; ++nu) {
                    const double gap = cosh_gap(k, nu, ctx).to_double();
                    const QuadratureResult I = mordell_I(k, nu, z, ctx, tol);
                    ++fit.points;
                    for (const Rational& b : bs) {
                        const Complex pre = z * exp(inv_z * (ctx.pi() * Real(b, ctx) / k));
                        const Complex J = pre * I.value;
                        const double d = abs(J - J_star(b, k, nu, z, ctx, tol)).to_double() * gap;
                        if (!std::isfinite(d)) fail(r, "non-finite J - J* at k=" + std::to_string(k));
                        fit.c_fine = std::max(fit.c_fine, d);
                        if (coarse) fit.c_coarse = std::max(fit.c_coarse, d);
                    }
                    const Complex Jn = z * exp(inv_z * (ctx.pi() * Real(b_neg, ctx) / k)) * I.value;
                    const double dn_val = abs(Jn).to_double() * gap;
                    fit.c_neg_fine = std::max(fit.c_neg_fine, dn_val);
                    if (coarse) fit.c_neg_coarse = std::max(fit.c_neg_coarse, dn_val);
                }
            }
        }
    }
    auto stable = [](double coarse, double fine) { return coarse > 0 && fine / coarse >= 0.8 && fine / coarse <= 1.2; };
    if (!stable(fit.c_coarse, fit.c_fine)) {
        fail(r, "b > 0: fitted constant moved from " + std::to_string(fit.c_coarse) + " to " + std::to_string(fit.c_fine));
    }
    if (!stable(fit.c_neg_coarse, fit.c_neg_fine)) {
        fail(r, "b = -1/12: fitted constant moved from " + std::to_string(fit.c_neg_coarse) + " to " +
                    std::to_string(fit.c_neg_fine));
    }
    std::ostringstream s;
    s << fit.points << " (k, nu, z) points, k <= " << k_max << "; C(b>0) " << fit.c_coarse << " -> " << fit.c_fine
      << ", C(b=-1/12) " << fit.c_neg_coarse << " -> " << fit.c_neg_fine;
    r.summary = s.str();
    if (fit_out) *fit_out = fit;
    return r;
}

SuiteResult verify_decomposition(std::int64_t to) {
    SuiteResult r{"decomposition", true, {}, {}, {}};
    if (!decomposition_check(static_cast<std::size_t>(to))) fail(r, "G_2 != g_1 + g_2 below q^" + std::to_string(to));
    r.summary = "coefficients through q^" + std::to_string(to);
    return r;
}

SuiteResult verify_logconcavity(std::int64_t to) {
    SuiteResult r{"logconcavity", true, {}, {}, {}};
    const auto bad = logconcavity_scan(1, to);
    std::vector<std::int64_t> odd_small;
    for (std::int64_t n : bad) {
        if (n % 2 == 0) {
            fail(r, "even n=" + std::to_string(n));
        } else if (n >= 482) {
            fail(r, "n=" + std::to_string(n));
        } else {
            odd_small.push_back(n);
        }
    }
    std::string odd;
    for (std::int64_t n : odd_small) odd += (odd.empty() ? "" : ",") + std::to_string(n);
    r.notes.push_back("odd violations below 482: " + std::to_string(odd_small.size()) +
                      (odd_small.empty() ? "" : " (largest " + std::to_string(odd_small.back()) + ")"));
    r.summary = "n <= " + std::to_string(to) + ", " + std::to_string(bad.size()) + " violations in total";
    return r;
}

}  // namespace radex
