#pragma once

// Quadrature (adaptive Gauss-Legendre and tanh-sinh) and the integrals built
// on it: script I_{b,k,nu}(n), the Mordell integral I_{k,nu}(z), and J, J*.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "radex/numerics.hpp"
#include "radex/rational.hpp"

namespace radex {

using Integrand = std::function<Complex(const Real& x)>;

struct QuadratureResult {
    Complex value;
    Real error_estimate;  ///< |difference| between the last two refinement levels (summed over panels)
    long evaluations = 0;
};

/// Thrown when a quadrature cannot meet its tolerance within the evaluation cap.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadOptions {
    long max_evaluations = 1L << 20;
    int min_order = 16;         ///< first Gauss-Legendre order per panel
    int max_order = 256;        ///< order beyond which a panel is bisected instead
    int initial_panels = 1;     ///< equal panels before any adaptivity
};

/// Gauss-Legendre with order doubling, then bisection of panels whose two
/// levels still differ by more than their share of tol. A panel is also
/// accepted once the difference is below the working precision of its value.
QuadratureResult adaptive_quadrature(const Integrand& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                                     const Real& tol, const QuadOptions& opts = {});

/// Double-exponential (tanh-sinh) rule with step halving until two levels agree to tol.
QuadratureResult tanh_sinh(const Integrand& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           const Real& tol, const QuadOptions& opts = {});

enum class Scheme { gauss_legendre, tanh_sinh };

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1] at ctx's
/// precision (cached; safe to call from several threads).
struct GaussRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};
const GaussRule& gauss_legendre_rule(int m, const PrecisionContext& ctx);

struct IntegralSpec {
    Rational b;
    std::int64_t k = 1;
    std::int64_t nu = 1;
    std::int64_t n = 1;
};

/// Numerator of script I: sqrt(1 - x^2) I_1((2 pi/k) sqrt(2 b n (1 - x^2))); zero outside (-1, 1).
Real script_I_numerator(const Rational& b, std::int64_t k, std::int64_t n, const Real& x, const PrecisionContext& ctx);

/// script I_{b,k,nu}(n) = int_{-1}^{1} sqrt(1-x^2) I_1(...) / cosh((pi i/k)(nu - 1/6) - (pi/k) sqrt(b/3) x) dx.
/// Requires b > 0 and k >= 1 (nu is not restricted, so nu + k can be probed).
QuadratureResult script_I(const IntegralSpec& spec, const PrecisionContext& ctx, const Real& tol,
                          Scheme scheme = Scheme::gauss_legendre);

/// sum_{nu=1}^{k} w[nu-1] * script I_{b,k,nu}(n) as a single integral (one
/// numerator and one cosh/sinh per node). Used by the p_2 formula.
QuadratureResult weighted_script_I(const Rational& b, std::int64_t k, std::int64_t n, const std::vector<Complex>& w,
                                   const PrecisionContext& ctx, const Real& tol, Scheme scheme = Scheme::gauss_legendre);

/// I_{k,nu}(z) = int_R e^{-3 pi z x^2/k} / cosh((pi i/k)(nu - 1/6) - pi z x/k) dx, truncated at
/// |x| = X where e^{-3 pi Re(z) X^2/k} = 2^{-bits-16}. Throws std::domain_error for Re z <= 0.
QuadratureResult mordell_I(std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
                           const Real& tol, Scheme scheme = Scheme::gauss_legendre);

/// Truncation point X used by mordell_I.
Real mordell_cutoff(std::int64_t k, const Complex& z, const PrecisionContext& ctx);

/// J_{b,k,nu}(z) = z e^{pi b/(k z)} I_{k,nu}(z).
Complex J_full(const Rational& b, std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
               const Real& tol);
/// J*_{b,k,nu}(z) = sqrt(b/3) int_{-1}^{1} e^{(pi b/(k z))(1 - x^2)} / cosh((pi i/k)(nu - 1/6) - (pi/k) sqrt(b/3) x) dx.
/// b = 0 gives 0; b < 0 throws std::invalid_argument.
Complex J_star(const Rational& b, std::int64_t k, std::int64_t nu, const Complex& z, const PrecisionContext& ctx,
               const Real& tol);

/// |pi/2 - (pi/k)(nu - 1/6)|, the distance that controls the cosh denominator.
Real cosh_gap(std::int64_t k, std::int64_t nu, const PrecisionContext& ctx);

}  // namespace radex
