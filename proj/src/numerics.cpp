#include "radex/numerics.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radex {

struct PrecisionContext::Constants {
    Real pi;
    Real ln2;
};

PrecisionContext::PrecisionContext(int bits) : bits_(bits) {
    auto c = std::make_shared<Constants>();
    c->pi = Real(*this);
    c->ln2 = Real(*this);
    mpfr_const_pi(c->pi.get(), MPFR_RNDN);
    mpfr_const_log2(c->ln2.get(), MPFR_RNDN);
    constants_ = std::move(c);
}

const Real& PrecisionContext::pi() const { return constants_->pi; }
const Real& PrecisionContext::ln2() const { return constants_->ln2; }

PrecisionContext PrecisionContext::scaled(int factor) const { return make_context(bits_ * factor); }

PrecisionContext make_context(int bits) {
    if (bits < PrecisionContext::kMinBits) {
        throw std::invalid_argument("precision must be at least 64 bits, got " + std::to_string(bits));
    }
    return PrecisionContext(bits);
}

// ---------------------------------------------------------------------------
// Real

Real::Real() {
    mpfr_init2(v_, PrecisionContext::kMinBits);
    mpfr_set_zero(v_, 1);
}

Real::Real(const PrecisionContext& ctx) {
    mpfr_init2(v_, ctx.bits());
    mpfr_set_zero(v_, 1);
}

Real::Real(long v, const PrecisionContext& ctx) {
    mpfr_init2(v_, ctx.bits());
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& r, const PrecisionContext& ctx) {
    mpfr_init2(v_, ctx.bits());
    mpfr_set_si(v_, r.num(), MPFR_RNDN);
    mpfr_div_si(v_, v_, r.den(), MPFR_RNDN);
}

Real::Real(double v, const PrecisionContext& ctx) {
    mpfr_init2(v_, ctx.bits());
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const std::string& decimal, const PrecisionContext& ctx) {
    mpfr_init2(v_, ctx.bits());
    char* end = nullptr;
    mpfr_strtofr(v_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (decimal.empty() || end == decimal.c_str() || *end != '\0') {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: '" + decimal + "'");
    }
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::promote(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
    promote(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    promote(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    promote(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    promote(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(long o) {
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
}
Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

long Real::exponent2() const {
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const {
    char* buf = nullptr;
    if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 1;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::to_fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

#define RADEX_UNARY(name, fn)                \
    Real name(Real x) {                      \
        fn(x.get(), x.get(), MPFR_RNDN);     \
        return x;                            \
    }
RADEX_UNARY(abs, mpfr_abs)
RADEX_UNARY(sqrt, mpfr_sqrt)
RADEX_UNARY(exp, mpfr_exp)
RADEX_UNARY(log, mpfr_log)
RADEX_UNARY(cosh, mpfr_cosh)
RADEX_UNARY(sinh, mpfr_sinh)
RADEX_UNARY(cos, mpfr_cos)
RADEX_UNARY(sin, mpfr_sin)
#undef RADEX_UNARY

void sinh_cosh(const Real& x, Real& sh, Real& ch) {
    mpfr_set_prec(sh.get(), x.precision());
    mpfr_set_prec(ch.get(), x.precision());
    mpfr_sinh_cosh(sh.get(), ch.get(), x.get(), MPFR_RNDN);
}

void sin_cos(const Real& x, Real& s, Real& c) {
    mpfr_set_prec(s.get(), x.precision());
    mpfr_set_prec(c.get(), x.precision());
    mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
}

Real pow(const Real& x, const Rational& e) {
    if (x.sign() <= 0) throw std::domain_error("pow: base must be positive");
    Real r(x);
    Real ex(x);
    mpfr_set_si(ex.get(), e.num(), MPFR_RNDN);
    mpfr_div_si(ex.get(), ex.get(), e.den(), MPFR_RNDN);
    mpfr_pow(r.get(), x.get(), ex.get(), MPFR_RNDN);
    return r;
}

Real ldexp_one(long e, const PrecisionContext& ctx) {
    Real r(1L, ctx);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

std::string round_to_integer_string(const Real& x) {
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, x.get(), MPFR_RNDNA);
    char* s = mpz_get_str(nullptr, 10, z);
    std::string out(s);
    void (*freefunc)(void*, size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    mpz_clear(z);
    return out;
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    const Real d = norm(o);
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
    Real r(z.re);
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Complex exp(const Complex& z) {
    const Real m = exp(z.re);
    Real s, c;
    sin_cos(z.im, s, c);
    return {m * c, m * s};
}

Complex sqrt(const Complex& z) {
    if (z.re.is_zero() && z.im.is_zero()) return z;
    const Real r = abs(z);
    if (z.re.sign() >= 0) {
        Real t = sqrt((r + z.re) / 2L);
        Real i = z.im / (t * 2L);
        return {t, i};
    }
    Real t = sqrt((r - z.re) / 2L);
    Real re = abs(z.im) / (t * 2L);
    if (z.im.sign() < 0) t = -t;
    return {re, t};
}

Complex unit_root(const Rational& rho, const PrecisionContext& ctx) {
    const Rational r = rho.mod1();
    if (r == Rational(0)) return {Real(1L, ctx), Real(ctx)};
    if (r == Rational(1, 2)) return {Real(-1L, ctx), Real(ctx)};
    if (r == Rational(1, 4)) return {Real(ctx), Real(1L, ctx)};
    if (r == Rational(3, 4)) return {Real(ctx), Real(-1L, ctx)};
    Real angle = ctx.pi() * (2 * r.num());
    angle /= r.den();
    Real s, c;
    sin_cos(angle, s, c);
    return {c, s};
}

Complex complex_cosh(const Complex& z, const PrecisionContext& ctx) {
    Real a(z.re), b(z.im);
    mpfr_prec_round(a.get(), std::max<mpfr_prec_t>(a.precision(), ctx.bits()), MPFR_RNDN);
    mpfr_prec_round(b.get(), std::max<mpfr_prec_t>(b.precision(), ctx.bits()), MPFR_RNDN);
    Real sh, ch, s, c;
    sinh_cosh(a, sh, ch);
    sin_cos(b, s, c);
    return {ch * c, sh * s};
}

// ---------------------------------------------------------------------------
// Bessel

BesselOrder bessel_order(const Rational& ell) {
    if (ell == Rational(1)) return BesselOrder::one;
    if (ell == Rational(3, 2)) return BesselOrder::three_halves;
    throw std::invalid_argument("unsupported Bessel order " + ell.to_string() + " (only 1 and 3/2)");
}

Real bessel_i_series(BesselOrder ell, const Real& x, const PrecisionContext& ctx) {
    if (x.sign() < 0) throw std::domain_error("bessel_i: negative argument");
    if (x.is_zero()) return Real(ctx);
    // Positive terms throughout, so only rounding accumulation needs guard bits.
    const PrecisionContext work = make_context(ctx.bits() + 32);
    Real half(x);
    mpfr_prec_round(half.get(), work.bits(), MPFR_RNDN);
    half /= 2L;
    const Real q = half * half;

    // term_0 = (x/2)^ell / Gamma(ell + 1); ratios use doubled orders to stay integral:
    // term_{m+1} = term_m * q / ((m + 1) (m + 1 + ell)) = term_m * 4q / ((2m + 2)(2m + 2 + 2 ell)).
    const long two_ell = ell == BesselOrder::one ? 2 : 3;
    Real term(work);
    if (ell == BesselOrder::one) {
        term = half;
    } else {
        // (x/2)^{3/2} / Gamma(5/2), Gamma(5/2) = 3 sqrt(pi) / 4.
        term = half * sqrt(half) * 4L / (sqrt(Real(work.pi())) * 3L);
    }
    Real sum(term);
    const Real tiny = ldexp_one(-(ctx.bits() + 8), work);
    for (long m = 0;; ++m) {
        const long d1 = 2 * m + 2;
        const long d2 = 2 * m + 2 + two_ell;
        term *= q;
        term *= 4L;
        term /= d1;
        term /= d2;
        sum += term;
        // Past the peak the ratio is below 1/2, so the tail is at most one more term.
        const bool decaying = q.to_double() * 4.0 < 0.5 * static_cast<double>(d1 + 2) * static_cast<double>(d2 + 2);
        if (decaying && term < sum * tiny) break;
    }
    mpfr_prec_round(sum.get(), ctx.bits(), MPFR_RNDN);
    return sum;
}

Real bessel_i(BesselOrder ell, const Real& x, const PrecisionContext& ctx) {
    if (x.sign() < 0) throw std::domain_error("bessel_i: negative argument");
    if (ell == BesselOrder::one || x.to_double() <= 0.25) return bessel_i_series(ell, x, ctx);
    // I_{3/2}(x) = sqrt(2 / (pi x)) (cosh x - sinh x / x); cancellation costs < 2 log2(1/x) + 4 bits.
    const PrecisionContext work = make_context(ctx.bits() + 24);
    Real xx(x);
    mpfr_prec_round(xx.get(), work.bits(), MPFR_RNDN);
    Real sh, ch;
    sinh_cosh(xx, sh, ch);
    Real r = sqrt(Real(2L, work) / (work.pi() * xx)) * (ch - sh / xx);
    mpfr_prec_round(r.get(), ctx.bits(), MPFR_RNDN);
    return r;
}

Real bessel_i(const Rational& ell, const Real& x, const PrecisionContext& ctx) {
    return bessel_i(bessel_order(ell), x, ctx);
}

Real kernel_L(long k, long n, const Real& y, const PrecisionContext& ctx) {
    if (k < 1 || n < 1) throw std::invalid_argument("kernel_L: k and n must be positive");
    if (y.sign() <= 0) throw std::domain_error("kernel_L: y must be positive");
    Real yy(y);
    mpfr_prec_round(yy.get(), std::max<mpfr_prec_t>(yy.precision(), ctx.bits()), MPFR_RNDN);
    const Real root_ny = sqrt(yy * n);
    const Real arg = ctx.pi() * 4L * root_ny / k;
    return sqrt(yy / n) * bessel_i(BesselOrder::one, arg, ctx) / k;
}

}  // namespace radex
