#pragma once

// Exact truncated power series over Z and the coefficient oracles built on
// them: p(n), p_2(n), the mock theta functions f, chi, omega, and the two
// pieces g_1, g_2 of the splitting G_2 = g_1 + g_2.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace radex {

/// Power series c_0 + c_1 q + ... + c_N q^N with exact integer coefficients.
class IntegerSeries {
public:
    IntegerSeries() = default;
    /// Zero series truncated at q^trunc.
    explicit IntegerSeries(std::size_t trunc);
    /// The constant 1 truncated at q^trunc.
    static IntegerSeries one(std::size_t trunc);
    /// The monomial coeff * q^exponent (zero if exponent > trunc).
    static IntegerSeries monomial(std::size_t trunc, std::size_t exponent, long coeff = 1);

    [[nodiscard]] std::size_t trunc() const { return coeffs_.size() - 1; }
    [[nodiscard]] const mpz_class& operator[](std::size_t n) const { return coeffs_.at(n); }
    [[nodiscard]] mpz_class& operator[](std::size_t n) { return coeffs_.at(n); }
    [[nodiscard]] const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    IntegerSeries& operator+=(const IntegerSeries& o);
    IntegerSeries& operator-=(const IntegerSeries& o);
    IntegerSeries& operator*=(const IntegerSeries& o);
    IntegerSeries& operator*=(long s);
    friend IntegerSeries operator+(IntegerSeries a, const IntegerSeries& b) { return a += b; }
    friend IntegerSeries operator-(IntegerSeries a, const IntegerSeries& b) { return a -= b; }
    friend IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b);
    friend IntegerSeries operator*(IntegerSeries a, long s) { return a *= s; }
    friend bool operator==(const IntegerSeries& a, const IntegerSeries& b) = default;

    /// In place multiplication by (1 + c q^e); O(N).
    void mul_binomial(std::size_t e, long c);
    /// In place division by (1 + c q^e); exact since the factor has constant term 1.
    void div_binomial(std::size_t e, long c);

    /// Multiplicative inverse. Requires c_0 = +-1; throws std::domain_error otherwise.
    [[nodiscard]] IntegerSeries inverse() const;
    /// Truncates (or zero-extends) to q^trunc.
    [[nodiscard]] IntegerSeries truncated(std::size_t trunc) const;

private:
    std::vector<mpz_class> coeffs_{1};
};

/// (sign q^a_shift; q^step)_infinity truncated at q^trunc, where sign = +1 gives
/// prod (1 - q^{a+j step}) and sign = -1 gives prod (1 + q^{a+j step}).
/// Throws std::invalid_argument for a_shift = 0, step = 0 or |sign| != 1.
IntegerSeries pochhammer_inf(std::size_t a_shift, std::size_t step, int sign, std::size_t trunc);

/// p(0..N), coefficients of 1/(q;q)_infinity.
std::vector<mpz_class> partition_counts(std::size_t n_max);

IntegerSeries chi_series(std::size_t trunc);          ///< sum (-q;q)_n q^{n^2} / (-q^3;q^3)_n
IntegerSeries f_series(std::size_t trunc);            ///< 1 + sum q^{n^2} / (-q;q)_n^2; coefficients alpha(n)
IntegerSeries omega_mock_series(std::size_t trunc);   ///< sum q^{2n(n+1)} / (q;q^2)_{n+1}^2
IntegerSeries xi_series(std::size_t trunc);           ///< (-q^3;q^3)_inf / (q^2;q^2)_inf; coefficients r(n)

/// G_2(q) = (-q^3;q^3)_inf / (q^2;q^2)_inf * chi(q); coefficients p_2(n).
IntegerSeries g2_generating_series(std::size_t trunc);
std::vector<mpz_class> p2_counts(std::size_t n_max);

/// A series carried as prefactor * body with an integral body.
struct ScaledSeries {
    mpq_class prefactor;
    IntegerSeries body;
    [[nodiscard]] mpq_class coefficient(std::size_t n) const { return prefactor * mpq_class(body[n]); }
};

/// g_1 = (1/4) * (q^6;q^6) f(q) / ((q^2;q^2)(q^3;q^3)); body coefficients are 4 a(n).
ScaledSeries g1_series(std::size_t trunc);
/// g_2 = (3/4) * (q^3;q^3)^3 / ((q;q)(q^2;q^2)(q^6;q^6)).
ScaledSeries g2_series(std::size_t trunc);

/// True iff G_2 = g_1 + g_2 coefficientwise through q^trunc (checked as 4 G_2 = 4 g_1 + 4 g_2 over Z).
bool decomposition_check(std::size_t trunc);

/// Default cap for the combinatorial counter below.
inline constexpr long kEnumerateCap = 200;

/// Counts partitions of n whose set of parts contains no two consecutive
/// integers, by direct recursion over the largest admissible part (never
/// touches a generating function). Throws std::invalid_argument for n < 0 or n > cap.
mpz_class p2_enumerate(long n, long cap = kEnumerateCap);

}  // namespace radex
