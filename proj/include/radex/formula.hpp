#pragma once

// The exact formula for p_2(n) (four k-sums), Rademacher's series for p(n),
// truncation certificates, the leading term and the log-concavity scan.

#include <cstdint>
#include <string>
#include <vector>

#include "radex/integrals.hpp"
#include "radex/numerics.hpp"

namespace radex {

enum class TermClass { gcd2, gcd3, gcd1_modular, gcd1_mock };
std::string to_string(TermClass c);

struct FormulaConfig {
    int k1_sign = 1;                 ///< sign applied to script K_1 (+1: the omega-ratio value)
    int k8_phase = 1;                ///< s in the family-8 phase (-3 nu^2 + s nu)
    double quadrature_budget = 0.01; ///< total absolute quadrature error allowed over all terms
    Scheme scheme = Scheme::gauss_legendre;
    int threads = 0;                 ///< 0: hardware concurrency
    int window = 8;                  ///< stabilization window (partial sums)
    double window_spread = 0.05;     ///< max spread inside the window
    double integer_budget = 0.25;    ///< max |final - rounded|
};

/// Default precision ceil(3.1 sqrt(n)) + 96 bits.
int default_bits(std::int64_t n);
/// Precision for Rademacher's p(n): ceil(3.8 sqrt(n)) + 64 bits.
int default_bits_p(std::int64_t n);
/// Default truncation max(60, ceil(4 n^{5/8})).
std::int64_t default_k_max(std::int64_t n);

/// The k-th summand of one of the four sums, including the global prefactor.
/// Throws std::invalid_argument if k is not in the class.
Complex theorem_term(TermClass c, std::int64_t k, std::int64_t n, const PrecisionContext& ctx, const Real& tol,
                     const FormulaConfig& cfg = {});

/// Classes present at a given k, in the fixed summation order.
std::vector<TermClass> classes_for(std::int64_t k);

struct TermRecord {
    TermClass cls;
    std::int64_t k;
    Complex value;
};

struct ConvergenceCertificate {
    std::int64_t n = 0;
    std::vector<Real> partial_sums;  ///< real parts, index i = cutoff k = i + 1
    Real final_value;
    std::string rounded;             ///< nearest integer, full decimal
    bool stabilized = false;
    std::int64_t k_used = 0;
    Real quadrature_budget;
    Real im_residue;                 ///< |Im| of the total before it is discarded
    Real residual;                   ///< |final_value - rounded|
    Real window_spread;              ///< spread of the last `window` partial sums
    int bits = 0;
    FormulaConfig config;
    std::vector<TermRecord> terms;   ///< per (class, k), ascending k
};

/// Sums theorem_term over k <= k_max. Terms may be evaluated in parallel; the
/// reduction is always in ascending k with the fixed class order. A k_max
/// shorter than the stabilization window is allowed but never certified.
ConvergenceCertificate p2_exact(std::int64_t n, std::int64_t k_max, const PrecisionContext& ctx,
                                const FormulaConfig& cfg = {});

/// p(n) = 2 pi (24n-1)^{-3/4} sum_k A_k(n)/k I_{3/2}(pi sqrt(24n-1)/(6k)).
ConvergenceCertificate rademacher_p(std::int64_t n, std::int64_t k_max, const PrecisionContext& ctx,
                                    const FormulaConfig& cfg = {});

/// (pi/(6 sqrt n)) I_1(2 pi sqrt(n)/3): the k = 1 modular term.
Real leading_term(std::int64_t n, const PrecisionContext& ctx);

/// All n in [n_lo, n_hi] with p_2(n)^2 < p_2(n+1) p_2(n-1). Requires 1 <= n_lo <= n_hi <= 2000.
std::vector<std::int64_t> logconcavity_scan(std::int64_t n_lo, std::int64_t n_hi);

}  // namespace radex
