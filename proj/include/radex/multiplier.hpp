#pragma once

// The eta multiplier omega_{h,k} and the four multiplier ratios used by the
// Kloosterman families, all as exact roots of unity e^{2 pi i rho}.

#include <cstdint>
#include <string>

#include "radex/numerics.hpp"
#include "radex/rational.hpp"

namespace radex {

/// e^{2 pi i rho}, rho kept in [0, 1) in lowest terms.
class RootOfUnity {
public:
    RootOfUnity() = default;
    explicit RootOfUnity(const Rational& rho) : rho_(rho.mod1()) {}

    [[nodiscard]] const Rational& rho() const { return rho_; }
    [[nodiscard]] RootOfUnity inverse() const { return RootOfUnity(-rho_); }
    [[nodiscard]] Complex embed(const PrecisionContext& ctx) const { return unit_root(rho_, ctx); }

    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) { return RootOfUnity(a.rho_ + b.rho_); }
    friend RootOfUnity operator/(const RootOfUnity& a, const RootOfUnity& b) { return RootOfUnity(a.rho_ - b.rho_); }
    RootOfUnity& operator*=(const RootOfUnity& o) { return *this = *this * o; }
    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) = default;
    friend auto operator<=>(const RootOfUnity& a, const RootOfUnity& b) { return a.rho_ <=> b.rho_; }

    [[nodiscard]] std::string to_string() const { return "e(" + rho_.to_string() + ")"; }

private:
    Rational rho_;
};

/// Kronecker symbol (a/b), full extension to all integers b.
int kronecker(std::int64_t a, std::int64_t b);

/// a^{-1} mod m in [0, m). Throws std::invalid_argument if gcd(a, m) != 1 or m < 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

struct CuspPair {
    std::int64_t h = 0;
    std::int64_t k = 1;
    std::int64_t hprime = 0;
    std::int64_t d = 1;  ///< required divisor of hprime
};

/// Canonical h' in [0, d k) with h h' = -1 (mod k) and d | h'.
/// Throws std::invalid_argument if gcd(h, k) != 1 or gcd(d, k) != 1.
CuspPair make_cusp_pair(std::int64_t h, std::int64_t k, std::int64_t d);

/// omega_{h,k}. h is reduced mod k first; h = 0 is only valid for k = 1.
/// Throws std::invalid_argument if gcd(h, k) != 1.
RootOfUnity omega(std::int64_t h, std::int64_t k);
/// Same, evaluated with a caller-chosen h' (any h' with h h' = -1 mod k).
/// Used to check that the value does not depend on the representative.
RootOfUnity omega_with_hprime(std::int64_t h, std::int64_t k, std::int64_t hprime);

/// The four gcd(k, 6) classes and their ratios
///   div6: w(h,k) w(h,k/2) w(h,k/3) / w(h,k/6)
///   gcd2: w(h,k) w(h,k/2) w(3h,k) / w(3h,k/2)
///   gcd3: w(h,k) w(2h,k) w(h,k/3) / w(2h,k/3)
///   gcd1: w(h,k) w(2h,k) w(3h,k) / w(6h,k)
enum class RatioCase { div6, gcd2, gcd3, gcd1 };

/// Class of k by gcd(k, 6).
RatioCase ratio_case_of(std::int64_t k);
/// Divisibility condition on h' attached to each class: 1, 3, 8, 24.
std::int64_t ratio_divisor(RatioCase c);
std::string to_string(RatioCase c);

/// Which closed form to use. `printed` reproduces the formulas exactly as they
/// are usually quoted; `corrected` fixes the two that disagree with the
/// omega-ratio (gcd3: sign of the h term and k^2+3; gcd1: sign (-1)^{(k-1)/2}).
enum class ClosedForm { corrected, printed };

/// Closed-form evaluation of the multiplier ratio. Throws std::invalid_argument
/// if the pair's k is not in the class or its divisor does not match.
RootOfUnity ratio_closed_form(RatioCase c, const CuspPair& pair, ClosedForm form = ClosedForm::corrected);

/// The ratio computed directly from omega. Same preconditions.
RootOfUnity ratio_from_omega(RatioCase c, const CuspPair& pair);

}  // namespace radex
