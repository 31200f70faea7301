#pragma once

// Verification suites shared by the CLI `verify` command and the acceptance
// binary. Each suite returns a verdict, a short summary and a failure list.

#include <cstdint>
#include <string>
#include <vector>

namespace radex {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string summary;
    std::vector<std::string> failures;  ///< one line per failed case (capped)
    std::vector<std::string> notes;     ///< informational lines (sign conventions, counts)
};

/// omega-ratio == closed form (corrected forms) for every valid (h, k), k <= k_max.
/// Notes report how many cases the printed forms get wrong and the k = 1 values.
SuiteResult verify_multipliers(std::int64_t k_max);

/// Reduction identities for families 1, 3, 7 (k <= k_max, 0 <= n, m <= nm_max), the
/// triangle bound and n, m periodicity of classical_K.
SuiteResult verify_kloosterman(std::int64_t k_max, std::int64_t nm_max);

struct MordellFit {
    double c_coarse = 0;  ///< max |J - J*| * gap over the coarse grid (b > 0)
    double c_fine = 0;    ///< same over the refined grid
    double c_neg_coarse = 0;  ///< max |J| * gap for b = -1/12
    double c_neg_fine = 0;
    std::size_t points = 0;
};

/// Shape check |J - J*| <= C / gap on k <= k_max, nu in [1, k], z = k(1/N^2 - i Phi) with
/// N = max(k, 4) + {0..4} and Phi in {0, +-Phi_max/2, +-Phi_max}, Phi_max = 1/(k(k+N)).
/// The coarse grid keeps N offsets {0, 2, 4} and Phi in {0, +-Phi_max}.
/// Passes iff both fitted constants are finite and c_fine / c_coarse is in [0.8, 1.2].
SuiteResult verify_mordell(std::int64_t k_max, int bits, MordellFit* fit = nullptr);

/// G_2 = g_1 + g_2 through q^to.
SuiteResult verify_decomposition(std::int64_t to);

/// No log-concavity violations at even n in [2, to] or at any n in [482, to].
SuiteResult verify_logconcavity(std::int64_t to);

}  // namespace radex
