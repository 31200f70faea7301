#pragma once

// Exact Kloosterman-type sums: classical K_k(n,m), Rademacher's A_k(n), the
// script K_k(n) of the modular term, and the eight multiplier-twisted families.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radex/multiplier.hpp"
#include "radex/numerics.hpp"

namespace radex {

/// A finite sum of roots of unity, one per h coprime to k, in ascending h.
struct KloostermanValue {
    std::vector<RootOfUnity> terms;

    /// Sum of the embedded terms, accumulated in stored order.
    [[nodiscard]] Complex embed(const PrecisionContext& ctx) const;
    /// Multiset equality of the terms (implies equality of the values).
    [[nodiscard]] bool same_terms(const KloostermanValue& o) const;
    /// Term-wise product with a single root of unity.
    [[nodiscard]] KloostermanValue scaled(const RootOfUnity& u) const;
};

/// K_k(n,m) = sum_{h mod k}^* e^{-(2 pi i/k)(n h - m h')}, h h' = -1 (mod k).
KloostermanValue classical_K(std::int64_t k, std::int64_t n, std::int64_t m);
/// A_k(n) = sum_{h mod k}^* omega_{h,k} e^{-2 pi i n h/k}.
KloostermanValue rademacher_A(std::int64_t k, std::int64_t n);
/// script K_k(n) = sum omega_{h,k} omega_{2h,k} omega_{6h,k} / omega_{3h,k}^3 e^{-2 pi i n h/k}; gcd(k,6)=1.
KloostermanValue script_K(std::int64_t k, std::int64_t n);

struct FamilyOptions {
    /// Sign s of the linear term in the family-8 phase e^{(pi i/k)(-3 nu^2 + s nu) h'}.
    int k8_phase = 1;
    /// Adds hprime_shift * (d k) to every canonical h' (representative-independence checks).
    std::int64_t hprime_shift = 0;
};

/// Class of k required by a family (1..8).
RatioCase family_case(int family);
/// Divisor c in the m h'/c phase: 1, 1, 3, 3, 2, 2, 6, 6.
std::int64_t family_m_divisor(int family);
inline bool family_has_nu(int family) { return family % 2 == 0; }

/// K^[family]_k(nu; n, m). nu must be given exactly for the even families.
/// Throws std::invalid_argument on a family/k mismatch or a missing/extra nu.
KloostermanValue family_K(int family, std::int64_t k, std::optional<std::int64_t> nu, std::int64_t n, std::int64_t m,
                          const FamilyOptions& opts = {});

/// Embedded K^[family]_k(nu; n, 0) for every nu = 1..k (even families only),
/// using one embedding per h and a table of 2k-th roots of unity. Entry i is nu = i + 1.
std::vector<Complex> family_K_all_nu(int family, std::int64_t k, std::int64_t n, const PrecisionContext& ctx,
                                     const FamilyOptions& opts = {});

/// family_K(family, ...) = prefactor * classical_K(k, n', m') when integral.
struct Reduction {
    std::int64_t n_prime = 0;
    std::int64_t m_prime = 0;
    RootOfUnity prefactor;          ///< sign that makes the identity hold
    RootOfUnity printed_prefactor;  ///< sign as usually quoted (1 for families 1 and 3, (-1)^{(k+1)/2} for 7)
    bool integral = true;           ///< false if a shift came out non-integral (n', m' are then meaningless)
    std::string note;
};

/// Families 1, 3 and 7 only; throws std::invalid_argument otherwise.
Reduction reduce_to_classical(int family, std::int64_t k, std::int64_t n, std::int64_t m);

struct BoundRow {
    int family = 0;
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::int64_t nu = 0;  ///< 0 for odd families
    double abs_value = 0;
    double ratio = 0;  ///< |K| / (n^{1/3} k^{2/3 + eps})
};

struct BoundReport {
    std::vector<BoundRow> rows;
    double max_ratio = 0;
};

/// Ratios |K^[family]_k(nu; n, 0)| / (n^{1/3} k^{2/3+eps}) over the family's
/// k <= k_max, 1 <= n <= n_max, all nu in [1, k].
BoundReport bound_report(int family, std::int64_t k_max, std::int64_t n_max, double epsilon,
                         const FamilyOptions& opts = {});

}  // namespace radex
