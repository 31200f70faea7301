#include "radex/integrals.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace radex {

namespace {

Real with_prec(Real x, const PrecisionContext& ctx) {
    mpfr_prec_round(x.get(), std::max<mpfr_prec_t>(x.precision(), ctx.bits()), MPFR_RNDN);
    return x;
}

GaussRule compute_rule(int m, const PrecisionContext& ctx) {
    const PrecisionContext work = make_context(ctx.bits() + 16);
    const Real eps = ldexp_one(-(ctx.bits() + 8), work);
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        Real x(std::cos(pi * (i + 0.75) / (m + 0.5)), work);
        Real dp(work);
        for (int iter = 0; iter < 64; ++iter) {
            // Legendre recurrence for P_m(x) and P_{m-1}(x).
            Real p0(1L, work), p1(x);
            for (int j = 2; j <= m; ++j) {
                Real p2 = (x * p1 * static_cast<long>(2 * j - 1) - p0 * static_cast<long>(j - 1)) / static_cast<long>(j);
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = (x * p1 - p0) * static_cast<long>(m) / (x * x - Real(1L, work));
            const Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < eps) {
                if (iter > 0) break;
            }
        }
        // Refresh the derivative at the converged root.
        Real p0(1L, work), p1(x);
        for (int j = 2; j <= m; ++j) {
            Real p2 = (x * p1 * static_cast<long>(2 * j - 1) - p0 * static_cast<long>(j - 1)) / static_cast<long>(j);
            p0 = std::move(p1);
            p1 = std::move(p2);
        }
        dp = (x * p1 - p0) * static_cast<long>(m) / (x * x - Real(1L, work));
        Real w = Real(2L, work) / ((Real(1L, work) - x * x) * dp * dp);
        mpfr_prec_round(x.get(), ctx.bits(), MPFR_RNDN);
        mpfr_prec_round(w.get(), ctx.bits(), MPFR_RNDN);
        rule.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(m - 1 - i)] = w;
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
    }
    if (m % 2 == 1) rule.nodes[static_cast<std::size_t>(m / 2)] = Real(ctx);
    return rule;
}

Complex apply_rule(const Integrand& f, const GaussRule& rule, const Real& a, const Real& b, long& evals) {
    const Real half = (b - a) / 2L;
    const Real mid = (a + b) / 2L;
    Complex sum;
    bool first = true;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Complex v = f(mid + half * rule.nodes[i]);
        v *= rule.weights[i];
        if (first) {
            sum = std::move(v);
            first = false;
        } else {
            sum += v;
        }
    }
    evals += static_cast<long>(rule.nodes.size());
    sum *= half;
    return sum;
}

void check_cap(long evals, const QuadOptions& opts) {
    if (evals > opts.max_evaluations) {
        throw QuadratureError("quadrature: evaluation cap of " + std::to_string(opts.max_evaluations) +
                              " reached before tolerance");
    }
}

}  // namespace

const GaussRule& gauss_legendre_rule(int m, const PrecisionContext& ctx) {
    if (m < 1) throw std::invalid_argument("gauss_legendre_rule: order must be positive");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<GaussRule>> cache;
    const auto key = std::make_pair(m, ctx.bits());
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto rule = std::make_unique<GaussRule>(compute_rule(m, ctx));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    return *it->second;
}

QuadratureResult adaptive_quadrature(const Integrand& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                                     const Real& tol, const QuadOptions& opts) {
    if (!(tol.sign() > 0)) throw std::invalid_argument("quadrature: tol must be positive");
    QuadratureResult res{Complex(ctx), Real(ctx), 0};
    const Real rel_floor = ldexp_one(-(ctx.bits() - 10), ctx);
    const Real aa = with_prec(a, ctx), bb = with_prec(b, ctx);
    const Real width = bb - aa;

    struct Panel {
        Real lo, hi, tol;
    };
    std::vector<Panel> stack;
    const int panels = std::max(1, opts.initial_panels);
    for (int i = panels - 1; i >= 0; --i) {
        Real lo = aa + width * static_cast<long>(i) / static_cast<long>(panels);
        Real hi = i + 1 == panels ? bb : aa + width * static_cast<long>(i + 1) / static_cast<long>(panels);
        stack.push_back({std::move(lo), std::move(hi), tol / static_cast<long>(panels)});
    }
    while (!stack.empty()) {
        Panel p = std::move(stack.back());
        stack.pop_back();
        int m = opts.min_order;
        Complex q1 = apply_rule(f, gauss_legendre_rule(m, ctx), p.lo, p.hi, res.evaluations);
        bool done = false;
        while (!done) {
            check_cap(res.evaluations, opts);
            Complex q2 = apply_rule(f, gauss_legendre_rule(2 * m, ctx), p.lo, p.hi, res.evaluations);
            const Real diff = abs(q2 - q1);
            if (diff <= p.tol || diff <= abs(q2) * rel_floor) {
                res.value += q2;
                res.error_estimate += diff;
                done = true;
            } else if (2 * m < opts.max_order) {
                q1 = std::move(q2);
                m *= 2;
            } else {
                Real mid = (p.lo + p.hi) / 2L;
                Real half_tol = p.tol / 2L;
                stack.push_back({mid, p.hi, half_tol});
                stack.push_back({std::move(p.lo), std::move(mid), std::move(half_tol)});
                done = true;
            }
        }
    }
    return res;
}

QuadratureResult tanh_sinh(const Integrand& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           const Real& tol, const QuadOptions& opts) {
    if (!(tol.sign() > 0)) throw std::invalid_argument("quadrature: tol must be positive");
    const Real aa = with_prec(a, ctx), bb = with_prec(b, ctx);
    const Real half = (bb - aa) / 2L;
    const Real mid = (aa + bb) / 2L;
    const Real half_pi = ctx.pi() / 2L;
    // Beyond t_max the weights are below 2^{-bits-10}.
    const double t_max = std::asinh((ctx.bits() + 10) * std::log(2.0) / (std::acos(-1.0) / 2.0)) + 0.5;
    const Real rel_floor = ldexp_one(-(ctx.bits() - 12), ctx);

    QuadratureResult res{Complex(ctx), Real(ctx), 0};
    // Contribution of the node t (and -t unless t = 0), times the weight but not the step.
    auto node_pair = [&](const Real& t, bool both) {
        Real sh, ch;
        sinh_cosh(t, sh, ch);
        const Real u = half_pi * sh;
        Real su, cu;
        sinh_cosh(u, su, cu);
        const Real x = su / cu;                       // tanh(u)
        const Real w = half_pi * ch / (cu * cu) * half;  // includes the interval Jacobian
        Complex s = f(mid + half * x);
        ++res.evaluations;
        if (both) {
            s += f(mid - half * x);
            ++res.evaluations;
        }
        s *= w;
        return s;
    };

    Real h(1L, ctx);
    const long n0 = static_cast<long>(std::ceil(t_max));
    Complex sum = node_pair(Real(ctx), false);
    for (long i = 1; i <= n0; ++i) sum += node_pair(Real(i, ctx), true);
    Complex prev = sum;  // level estimate = h * sum
    for (int level = 1; level <= 20; ++level) {
        h /= 2L;
        const long count = static_cast<long>(std::ceil(t_max / h.to_double()));
        for (long i = 1; i <= count; i += 2) sum += node_pair(h * i, true);
        check_cap(res.evaluations, opts);
        Complex est = sum * h;
        const Real diff = abs(est - prev);
        if (level >= 3 && (diff <= tol || diff <= abs(est) * rel_floor)) {
            res.value = std::move(est);
            res.error_estimate = diff;
            return res;
        }
        prev = std::move(est);
    }
    throw QuadratureError("tanh_sinh: level cap reached before tolerance");
}

// ---------------------------------------------------------------------------

Real script_I_numerator(const Rational& b, std::int64_t k, std::int64_t n, const Real& x, const PrecisionContext& ctx) {
    const Real one(1L, ctx);
    if (abs(x) >= one) return Real(ctx);
    const Real u = (one - x) * (one + x);
    const Real arg = ctx.pi() * 2L / static_cast<long>(k) * sqrt(Real(b * Rational(2 * n), ctx) * u);
    return sqrt(u) * bessel_i(BesselOrder::one, arg, ctx);
}

namespace {

QuadratureResult integrate(const Integrand& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           const Real& tol, Scheme scheme, const QuadOptions& opts = {}) {
    return scheme == Scheme::gauss_legendre ? adaptive_quadrature(f, a, b, ctx, tol, opts)
                                            : tanh_sinh(f, a, b, ctx, tol, opts);
}

Real beta_of(std::int64_t k, std::int64_t nu, const PrecisionContext& ctx) {
    return ctx.pi() * Real(Rational(6 * nu - 1, 6 * k), ctx);
}

void require_positive_b(const Rational& b) {
    if (!(b > Rational(0))) throw std::invalid_argument("script I requires b > 0, got " + b.to_string());
}

}  // namespace

QuadratureResult weighted_script_I(const Rational& b, std::int64_t k, std::int64_t n, const std::vector<Complex>& w,
                                   const PrecisionContext& ctx, const Real& tol, Scheme scheme) {
    require_positive_b(b);
    if (k < 1 || n < 1) throw std::invalid_argument("script I requires k, n >= 1");
    if (w.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("weighted_script_I: need k weights");
    std::vector<Real> cb, sb;
    for (std::int64_t nu = 1; nu <= k; ++nu) {
        Real s, c;
        sin_cos(beta_of(k, nu, ctx), s, c);
        cb.push_back(std::move(c));
        sb.push_back(std::move(s));
    }
    const Real alpha = ctx.pi() / static_cast<long>(k) * sqrt(Real(b / Rational(3), ctx));
    Integrand f = [&](const Real& x) {
        const Real num = script_I_numerator(b, k, n, x, ctx);
        Complex acc(ctx);
        if (num.is_zero()) return acc;
        Real sh, ch;
        sinh_cosh(alpha * x, sh, ch);
        // 1/cosh(i beta - alpha x) = (ch cos b + i sh sin b) / (ch^2 cos^2 b + sh^2 sin^2 b)
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Real dr = ch * cb[i];
            const Real di = sh * sb[i];
            const Real den = dr * dr + di * di;
            acc.re += (w[i].re * dr - w[i].im * di) / den;
            acc.im += (w[i].re * di + w[i].im * dr) / den;
        }
        acc *= num;
        return acc;
    };
    return integrate(f, Real(-1L, ctx), Real(1L, ctx), ctx, tol, scheme);
}

QuadratureResult script_I(const IntegralSpec& spec, const PrecisionContext& ctx, const Real& tol, Scheme scheme) {
    require_positive_b(spec.b);
    if (spec.k < 1 || spec.n < 1) throw std::invalid_argument("script I requires k, n >= 1");
    Real s, c;
    sin_cos(beta_of(spec.k, spec.nu, ctx), s, c);
    const Real alpha = ctx.pi() / static_cast<long>(spec.k) * sqrt(Real(spec.b / Rational(3), ctx));
    Integrand f = [&](const Real& x) {
        const Real num = script_I_numerator(spec.b, spec.k, spec.n, x, ctx);
        if (num.is_zero()) return Complex(ctx);
        Real sh, ch;
        sinh_cosh(alpha * x, sh, ch);
        const Real dr = ch * c;
        const Real di = sh * s;
        const Real scale = num / (dr * dr + di * di);
        return Complex(dr * scale, di * scale);
    };
    return integrate(f, Real(-1L, ctx), Real(1L, ctx), ctx, tol, scheme);
}

Real mordell_cutoff(std::int64_t k, const Complex& z, const PrecisionContext& ctx) {
    if (!(z.re.sign() > 0)) throw std::domain_error("mordell_I: Re(z) must be positive");
    return sqrt(ctx.ln2() * static_cast<long>(k * (ctx.bits() + 16)) / (ctx.pi() * 3L * z.re));
}

QuadratureResult mordell_I(std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
                           const Real& tol, Scheme scheme) {
    if (k < 1) throw std::invalid_argument("mordell_I: k must be positive");
    const Real X = mordell_cutoff(k, z, ctx);
    const Real beta = beta_of(k, nu, ctx);
    const Complex gauss = z * Real(ctx.pi() * -3L / static_cast<long>(k));  // -3 pi z / k
    const Complex lin = z * Real(ctx.pi() / static_cast<long>(k));          // pi z / k
    Integrand f = [&](const Real& x) {
        const Complex num = exp(gauss * (x * x));
        const Complex arg(-(lin.re * x), beta - lin.im * x);
        return num / complex_cosh(arg, ctx);
    };
    QuadOptions opts;
    opts.initial_panels = 16;
    return integrate(f, -X, X, ctx, tol, scheme, opts);
}

Complex J_full(const Rational& b, std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
               const Real& tol) {
    const Complex c = Complex(Real(ctx.pi() * Real(b, ctx) / static_cast<long>(k)), Real(ctx)) / z;
    const Complex factor = z * exp(c);
    const Real scale = abs(factor);
    const QuadratureResult r = mordell_I(k, nu, z, ctx, tol / scale);
    return factor * r.value;
}

Complex J_star(const Rational& b, std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
               const Real& tol) {
    if (b < Rational(0)) throw std::invalid_argument("J_star requires b >= 0");
    if (b == Rational(0)) return Complex(ctx);
    const Real root = sqrt(Real(b / Rational(3), ctx));
    const Complex c = Complex(Real(ctx.pi() * Real(b, ctx) / static_cast<long>(k)), Real(ctx)) / z;
    Real s, co;
    sin_cos(beta_of(k, nu, ctx), s, co);
    const Real alpha = ctx.pi() / static_cast<long>(k) * root;
    const Real one(1L, ctx);
    Integrand f = [&](const Real& x) {
        const Complex num = exp(c * ((one - x) * (one + x)));
        Real sh, ch;
        sinh_cosh(alpha * x, sh, ch);
        const Real dr = ch * co;
        const Real di = sh * s;
        const Real den = dr * dr + di * di;
        return num * Complex(dr / den, di / den);
    };
    const QuadratureResult r = adaptive_quadrature(f, -one, one, ctx, tol / root);
    return r.value * root;
}

Real cosh_gap(std::int64_t k, std::int64_t nu, const PrecisionContext& ctx) {
    return abs(ctx.pi() / 2L - beta_of(k, nu, ctx));
}

}  // namespace radex
