#include "radex/qseries.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace radex {

IntegerSeries::IntegerSeries(std::size_t trunc) : coeffs_(trunc + 1) {}

IntegerSeries IntegerSeries::one(std::size_t trunc) {
    IntegerSeries s(trunc);
    s.coeffs_[0] = 1;
    return s;
}

IntegerSeries IntegerSeries::monomial(std::size_t trunc, std::size_t exponent, long coeff) {
    IntegerSeries s(trunc);
    if (exponent <= trunc) s.coeffs_[exponent] = coeff;
    return s;
}

IntegerSeries& IntegerSeries::operator+=(const IntegerSeries& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

IntegerSeries& IntegerSeries::operator-=(const IntegerSeries& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b) {
    const std::size_t n = std::min(a.trunc(), b.trunc());
    IntegerSeries c(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (sgn(b.coeffs_[j]) == 0) continue;
            mpz_addmul(c.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    return c;
}

IntegerSeries& IntegerSeries::operator*=(const IntegerSeries& o) { return *this = *this * o; }

IntegerSeries& IntegerSeries::operator*=(long s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

void IntegerSeries::mul_binomial(std::size_t e, long c) {
    if (e == 0) throw std::invalid_argument("mul_binomial: exponent must be positive");
    for (std::size_t i = trunc(); i >= e; --i) {
        mpz_class t = coeffs_[i - e];
        coeffs_[i] += t * c;
        if (i == e) break;
    }
}

void IntegerSeries::div_binomial(std::size_t e, long c) {
    if (e == 0) throw std::invalid_argument("div_binomial: exponent must be positive");
    // (1 + c q^e) * out = in  =>  out_i = in_i - c out_{i-e}
    for (std::size_t i = e; i <= trunc(); ++i) coeffs_[i] -= coeffs_[i - e] * c;
}

IntegerSeries IntegerSeries::inverse() const {
    const mpz_class& c0 = coeffs_[0];
    if (c0 != 1 && c0 != -1) throw std::domain_error("series inverse needs constant term +-1");
    IntegerSeries r(trunc());
    r.coeffs_[0] = c0;  // 1/(+-1) = +-1
    std::vector<std::size_t> support;
    for (std::size_t j = 1; j <= trunc(); ++j) {
        if (sgn(coeffs_[j]) != 0) support.push_back(j);
    }
    for (std::size_t n = 1; n <= trunc(); ++n) {
        mpz_class acc = 0;
        for (std::size_t j : support) {
            if (j > n) break;
            mpz_addmul(acc.get_mpz_t(), coeffs_[j].get_mpz_t(), r.coeffs_[n - j].get_mpz_t());
        }
        r.coeffs_[n] = c0 == 1 ? mpz_class(-acc) : acc;
    }
    return r;
}

IntegerSeries IntegerSeries::truncated(std::size_t trunc) const {
    IntegerSeries r(trunc);
    for (std::size_t i = 0; i <= std::min(trunc, this->trunc()); ++i) r.coeffs_[i] = coeffs_[i];
    return r;
}

IntegerSeries pochhammer_inf(std::size_t a_shift, std::size_t step, int sign, std::size_t trunc) {
    if (a_shift == 0) throw std::invalid_argument("pochhammer_inf: a_shift must be >= 1");
    if (step == 0) throw std::invalid_argument("pochhammer_inf: step must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer_inf: sign must be +1 or -1");
    IntegerSeries s = IntegerSeries::one(trunc);
    for (std::size_t e = a_shift; e <= trunc; e += step) s.mul_binomial(e, -sign);
    return s;
}

std::vector<mpz_class> partition_counts(std::size_t n_max) {
    return pochhammer_inf(1, 1, 1, n_max).inverse().coeffs();
}

namespace {

/// Multiplies s by the finite product prod_{j=0}^{count-1} (1 + c q^{first + j step})
/// (or divides by it when divide is set).
void apply_finite_pochhammer(IntegerSeries& s, std::size_t first, std::size_t step, std::size_t count, long c,
                             bool divide) {
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t e = first + j * step;
        if (e > s.trunc()) break;
        if (divide) {
            s.div_binomial(e, c);
        } else {
            s.mul_binomial(e, c);
        }
    }
}

}  // namespace

IntegerSeries chi_series(std::size_t trunc) {
    IntegerSeries total(trunc);
    for (std::size_t n = 0; n * n <= trunc; ++n) {
        IntegerSeries term = IntegerSeries::monomial(trunc, n * n);
        apply_finite_pochhammer(term, 1, 1, n, 1, false);  // (-q;q)_n
        apply_finite_pochhammer(term, 3, 3, n, 1, true);   // / (-q^3;q^3)_n
        total += term;
    }
    return total;
}

IntegerSeries f_series(std::size_t trunc) {
    IntegerSeries total = IntegerSeries::one(trunc);
    for (std::size_t n = 1; n * n <= trunc; ++n) {
        IntegerSeries term = IntegerSeries::monomial(trunc, n * n);
        apply_finite_pochhammer(term, 1, 1, n, 1, true);
        apply_finite_pochhammer(term, 1, 1, n, 1, true);
        total += term;
    }
    return total;
}

IntegerSeries omega_mock_series(std::size_t trunc) {
    IntegerSeries total(trunc);
    for (std::size_t n = 0; 2 * n * (n + 1) <= trunc; ++n) {
        IntegerSeries term = IntegerSeries::monomial(trunc, 2 * n * (n + 1));
        apply_finite_pochhammer(term, 1, 2, n + 1, -1, true);  // / (q;q^2)_{n+1}
        apply_finite_pochhammer(term, 1, 2, n + 1, -1, true);
        total += term;
    }
    return total;
}

IntegerSeries xi_series(std::size_t trunc) {
    return pochhammer_inf(3, 3, -1, trunc) * pochhammer_inf(2, 2, 1, trunc).inverse();
}

IntegerSeries g2_generating_series(std::size_t trunc) { return xi_series(trunc) * chi_series(trunc); }

std::vector<mpz_class> p2_counts(std::size_t n_max) { return g2_generating_series(n_max).coeffs(); }

ScaledSeries g1_series(std::size_t trunc) {
    IntegerSeries body = pochhammer_inf(6, 6, 1, trunc) * f_series(trunc);
    body *= pochhammer_inf(2, 2, 1, trunc).inverse();
    body *= pochhammer_inf(3, 3, 1, trunc).inverse();
    return {mpq_class(1, 4), std::move(body)};
}

ScaledSeries g2_series(std::size_t trunc) {
    const IntegerSeries q3 = pochhammer_inf(3, 3, 1, trunc);
    IntegerSeries body = q3 * q3 * q3;
    body *= pochhammer_inf(1, 1, 1, trunc).inverse();
    body *= pochhammer_inf(2, 2, 1, trunc).inverse();
    body *= pochhammer_inf(6, 6, 1, trunc).inverse();
    return {mpq_class(3, 4), std::move(body)};
}

bool decomposition_check(std::size_t trunc) {
    const IntegerSeries lhs = g2_generating_series(trunc) * 4;
    const IntegerSeries rhs = g1_series(trunc).body + g2_series(trunc).body * 3;
    return lhs == rhs;
}

mpz_class p2_enumerate(long n, long cap) {
    if (n < 0) throw std::invalid_argument("p2_enumerate: n must be non-negative");
    if (n > cap) {
        throw std::invalid_argument("p2_enumerate: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    // count(rem, p, blocked): partitions of rem into parts <= p with no two
    // consecutive parts; blocked means part p is forbidden because p + 1 was used.
    std::map<std::tuple<long, long, bool>, mpz_class> memo;
    auto count = [&memo](auto&& self, long rem, long p, bool blocked) -> mpz_class {
        if (rem == 0) return 1;
        if (p == 0) return 0;
        const auto key = std::make_tuple(rem, p, blocked);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        mpz_class total = self(self, rem, p - 1, false);
        if (!blocked) {
            for (long used = p; used <= rem; used += p) total += self(self, rem - used, p - 1, true);
        }
        memo.emplace(key, total);
        return total;
    };
    return count(count, n, n, false);
}

}  // namespace radex
