#pragma once

// Arbitrary-precision real/complex arithmetic (MPFR-backed) and the special
// functions the exact formulas consume: I_1, I_{3/2}, complex cosh, and the
// Bessel kernel L_k(n, y).

#include <mpfr.h>

#include <memory>
#include <string>
#include <utility>

#include "radex/rational.hpp"

namespace radex {

class Real;

/// Working-precision policy. Cheap to copy; the cached constants are shared
/// read-only between copies and threads.
class PrecisionContext {
public:
    static constexpr int kMinBits = 64;

    [[nodiscard]] int bits() const { return bits_; }
    [[nodiscard]] const Real& pi() const;
    [[nodiscard]] const Real& ln2() const;

    /// Same policy at `factor` times the precision (used by self-oracles).
    [[nodiscard]] PrecisionContext scaled(int factor) const;

private:
    friend PrecisionContext make_context(int bits);
    struct Constants;
    explicit PrecisionContext(int bits);

    int bits_;
    std::shared_ptr<const Constants> constants_;
};

/// Throws std::invalid_argument for bits < 64.
PrecisionContext make_context(int bits);

/// Binary floating value with its own precision. Arithmetic between two
/// values rounds to the larger of the two precisions.
class Real {
public:
    Real();
    explicit Real(const PrecisionContext& ctx);
    Real(long v, const PrecisionContext& ctx);
    Real(int v, const PrecisionContext& ctx) : Real(static_cast<long>(v), ctx) {}
    Real(const Rational& r, const PrecisionContext& ctx);
    Real(double v, const PrecisionContext& ctx);
    /// Parses a decimal string; throws std::invalid_argument on garbage.
    Real(const std::string& decimal, const PrecisionContext& ctx);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }
    [[nodiscard]] mpfr_ptr get() { return v_; }

    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal with `digits` significant digits (0 = enough to round-trip).
    [[nodiscard]] std::string to_string(int digits = 0) const;
    /// Fixed-point decimal with `decimals` digits after the point.
    [[nodiscard]] std::string to_fixed(int decimals) const;
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    /// Binary exponent e with 0.5 <= |x| / 2^e < 1 (zero maps to a very negative value).
    [[nodiscard]] long exponent2() const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long o);
    Real& operator/=(long o);
    Real operator-() const;

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator/(Real a, long b) { return a /= b; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    void promote(const Real& o);
    mpfr_t v_;
};

Real abs(Real x);
Real sqrt(Real x);
Real exp(Real x);
Real log(Real x);
Real cosh(Real x);
Real sinh(Real x);
Real cos(Real x);
Real sin(Real x);
/// Fills (sinh x, cosh x) in one call.
void sinh_cosh(const Real& x, Real& sh, Real& ch);
/// Fills (sin x, cos x) in one call.
void sin_cos(const Real& x, Real& s, Real& c);
/// x^(p/q) for x > 0.
Real pow(const Real& x, const Rational& e);
/// 2^e at the context's precision.
Real ldexp_one(long e, const PrecisionContext& ctx);
/// Nearest integer as a decimal string (ties away from zero).
std::string round_to_integer_string(const Real& x);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    explicit Complex(const PrecisionContext& ctx) : re(ctx), im(ctx) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Real& o) {
        re *= o;
        im *= o;
        return *this;
    }
    Complex& operator/=(const Complex& o);
    Complex operator-() const { return {-re, -im}; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Complex exp(const Complex& z);
Complex sqrt(const Complex& z);  // principal branch
/// e^{2 pi i rho}, exact for rho in {0, 1/4, 1/2, 3/4}.
Complex unit_root(const Rational& rho, const PrecisionContext& ctx);

/// cosh(a + ib) = cosh a cos b + i sinh a sin b.
Complex complex_cosh(const Complex& z, const PrecisionContext& ctx);

/// Orders supported by bessel_i: 1 and 3/2.
enum class BesselOrder { one, three_halves };
/// Maps a rational order to BesselOrder; throws for anything but 1 and 3/2.
BesselOrder bessel_order(const Rational& ell);

/// Modified Bessel function I_ell(x), x >= 0. The power series is summed until
/// the next term drops below 2^{-bits-8} of the running sum; I_{3/2} switches
/// to its closed form for x > 1/4.
Real bessel_i(BesselOrder ell, const Real& x, const PrecisionContext& ctx);
Real bessel_i(const Rational& ell, const Real& x, const PrecisionContext& ctx);
/// Series-only evaluation (both orders); exposed so the closed form can be
/// cross-checked against it.
Real bessel_i_series(BesselOrder ell, const Real& x, const PrecisionContext& ctx);

/// L_k(n, y) = (1/k) sqrt(y/n) I_1(4 pi sqrt(n y) / k). Throws for y <= 0.
Real kernel_L(long k, long n, const Real& y, const PrecisionContext& ctx);

}  // namespace radex
