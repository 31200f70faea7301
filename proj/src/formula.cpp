#include "radex/formula.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "radex/kloosterman.hpp"
#include "radex/qseries.hpp"

namespace radex {

std::string to_string(TermClass c) {
    switch (c) {
        case TermClass::gcd2: return "gcd2";
        case TermClass::gcd3: return "gcd3";
        case TermClass::gcd1_modular: return "gcd1_modular";
        case TermClass::gcd1_mock: return "gcd1_mock";
    }
    return "?";
}

int default_bits(std::int64_t n) {
    return static_cast<int>(std::ceil(3.1 * std::sqrt(static_cast<double>(n)))) + 96;
}

int default_bits_p(std::int64_t n) {
    return static_cast<int>(std::ceil(3.8 * std::sqrt(static_cast<double>(n)))) + 64;
}

std::int64_t default_k_max(std::int64_t n) {
    return std::max<std::int64_t>(60, static_cast<std::int64_t>(std::ceil(4.0 * std::pow(static_cast<double>(n), 0.625))));
}

std::vector<TermClass> classes_for(std::int64_t k) {
    switch (std::gcd(k, std::int64_t{6})) {
        case 2: return {TermClass::gcd2};
        case 3: return {TermClass::gcd3};
        case 1: return {TermClass::gcd1_modular, TermClass::gcd1_mock};
        default: return {};
    }
}

namespace {

struct MockClass {
    int family;
    Rational b;
    Rational prefactor_over_pi;  ///< the constant c in c * pi / sqrt(6n)
};

MockClass mock_class(TermClass c) {
    switch (c) {
        case TermClass::gcd2: return {4, Rational(5, 36), Rational(5, 36)};
        case TermClass::gcd3: return {6, Rational(1, 6), Rational(1, 6)};
        case TermClass::gcd1_mock: return {8, Rational(1, 18), Rational(1, 18)};
        default: throw std::logic_error("not a mock class");
    }
}

}  // namespace

Complex theorem_term(TermClass c, std::int64_t k, std::int64_t n, const PrecisionContext& ctx, const Real& tol,
                     const FormulaConfig& cfg) {
    if (n < 1) throw std::invalid_argument("theorem_term: n must be positive");
    const auto cls = classes_for(k);
    if (std::find(cls.begin(), cls.end(), c) == cls.end()) {
        throw std::invalid_argument("theorem_term: k=" + std::to_string(k) + " is not in class " + to_string(c));
    }
    const Real k2(k * k, ctx);
    if (c == TermClass::gcd1_modular) {
        Complex K = script_K(k, n).embed(ctx);
        if (k == 1 && cfg.k1_sign < 0) K = -K;
        const Real sn = sqrt(Real(n, ctx));
        const Real arg = ctx.pi() * 2L * sn / (3L * k);
        const Real scale = ctx.pi() / (sn * 6L) / k2 * bessel_i(BesselOrder::one, arg, ctx);
        return K * scale;
    }
    const MockClass mc = mock_class(c);
    FamilyOptions fo;
    fo.k8_phase = cfg.k8_phase;
    std::vector<Complex> w = family_K_all_nu(mc.family, k, n, ctx, fo);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if ((i + 1) % 2 == 1) w[i] = -w[i];  // (-1)^nu, nu = i + 1
    }
    const Real pref = ctx.pi() * Real(mc.prefactor_over_pi, ctx) / sqrt(Real(6 * n, ctx)) / k2;
    const QuadratureResult q = weighted_script_I(mc.b, k, n, w, ctx, tol / pref, cfg.scheme);
    return q.value * pref;
}

namespace {

/// Runs job(i) for i in [0, count) on up to `threads` workers; rethrows the first failure.
template <typename Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(count, threads > 0 ? static_cast<std::size_t>(threads) : hw);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

void certify(ConvergenceCertificate& cert, const Complex& total, const FormulaConfig& cfg,
             const PrecisionContext& ctx) {
    cert.final_value = total.re;
    cert.im_residue = abs(total.im);
    cert.rounded = round_to_integer_string(total.re);
    const Real rounded(cert.rounded, ctx);
    cert.residual = abs(total.re - rounded);
    const std::size_t L = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.window, 1)), cert.partial_sums.size());
    Real lo = cert.partial_sums.back(), hi = cert.partial_sums.back();
    for (std::size_t i = cert.partial_sums.size() - L; i < cert.partial_sums.size(); ++i) {
        if (cert.partial_sums[i] < lo) lo = cert.partial_sums[i];
        if (cert.partial_sums[i] > hi) hi = cert.partial_sums[i];
    }
    cert.window_spread = hi - lo;
    cert.stabilized = L == static_cast<std::size_t>(cfg.window) && cert.window_spread.to_double() <= cfg.window_spread &&
                      cert.residual.to_double() < cfg.integer_budget;
}

}  // namespace

ConvergenceCertificate p2_exact(std::int64_t n, std::int64_t k_max, const PrecisionContext& ctx,
                                const FormulaConfig& cfg) {
    if (n < 1) throw std::invalid_argument("p2_exact: n must be positive");
    if (k_max < 1) throw std::invalid_argument("p2_exact: k_max must be positive");
    ConvergenceCertificate cert;
    cert.n = n;
    cert.k_used = k_max;
    cert.bits = ctx.bits();
    cert.config = cfg;
    cert.quadrature_budget = Real(cfg.quadrature_budget, ctx);

    struct Job {
        TermClass cls;
        std::int64_t k;
    };
    std::vector<Job> jobs;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        for (TermClass c : classes_for(k)) jobs.push_back({c, k});
    }
    // Spend the budget as eps / (k_max k) per k, split over the classes at k.
    std::vector<Complex> values(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        const auto& j = jobs[i];
        const Real tol = Real(cfg.quadrature_budget, ctx) / (k_max * j.k * static_cast<std::int64_t>(classes_for(j.k).size()));
        values[i] = theorem_term(j.cls, j.k, n, ctx, tol, cfg);
    });

    Complex total(ctx);
    std::size_t idx = 0;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        while (idx < jobs.size() && jobs[idx].k == k) {
            total += values[idx];
            cert.terms.push_back({jobs[idx].cls, k, values[idx]});
            ++idx;
        }
        cert.partial_sums.push_back(total.re);
    }
    certify(cert, total, cfg, ctx);
    return cert;
}

ConvergenceCertificate rademacher_p(std::int64_t n, std::int64_t k_max, const PrecisionContext& ctx,
                                    const FormulaConfig& cfg) {
    if (n < 1) throw std::invalid_argument("rademacher_p: n must be positive");
    if (k_max < 1) throw std::invalid_argument("rademacher_p: k_max must be positive");
    ConvergenceCertificate cert;
    cert.n = n;
    cert.k_used = k_max;
    cert.bits = ctx.bits();
    cert.config = cfg;
    cert.quadrature_budget = Real(ctx);
    const Real root = sqrt(Real(24 * n - 1, ctx));
    const Real pref = ctx.pi() * 2L / pow(Real(24 * n - 1, ctx), Rational(3, 4));
    std::vector<Complex> values(static_cast<std::size_t>(k_max));
    parallel_for(values.size(), cfg.threads, [&](std::size_t i) {
        const std::int64_t k = static_cast<std::int64_t>(i) + 1;
        const Complex A = rademacher_A(k, n).embed(ctx);
        const Real arg = ctx.pi() * root / (6L * k);
        values[i] = A * (pref * bessel_i(BesselOrder::three_halves, arg, ctx) / k);
    });
    Complex total(ctx);
    for (std::size_t i = 0; i < values.size(); ++i) {
        total += values[i];
        cert.partial_sums.push_back(total.re);
    }
    certify(cert, total, cfg, ctx);
    return cert;
}

Real leading_term(std::int64_t n, const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("leading_term: n must be positive");
    const Real sn = sqrt(Real(n, ctx));
    return ctx.pi() / (sn * 6L) * bessel_i(BesselOrder::one, ctx.pi() * 2L * sn / 3L, ctx);
}

std::vector<std::int64_t> logconcavity_scan(std::int64_t n_lo, std::int64_t n_hi) {
    if (n_lo < 1 || n_hi < n_lo || n_hi > 2000) {
        throw std::invalid_argument("logconcavity_scan: need 1 <= n_lo <= n_hi <= 2000");
    }
    const auto p2 = p2_counts(static_cast<std::size_t>(n_hi + 1));
    std::vector<std::int64_t> bad;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (p2[i] * p2[i] < p2[i + 1] * p2[i - 1]) bad.push_back(n);
    }
    return bad;
}

}  // namespace radex
