#include "radex/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace radex {

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t hprime_of(std::int64_t h, std::int64_t k) {
    return k == 1 ? 0 : pos_mod(-mod_inverse(h, k), k);
}

template <typename F>
void for_each_unit(std::int64_t k, F&& f) {
    if (k < 1) throw std::invalid_argument("Kloosterman sum: k must be positive");
    for (std::int64_t h = 0; h < k; ++h) {
        if (std::gcd(h, k) == 1) f(h);
    }
}

void check_family(int family, std::int64_t k) {
    if (family < 1 || family > 8) throw std::invalid_argument("family must be in 1..8");
    if (ratio_case_of(k) != family_case(family)) {
        throw std::invalid_argument("family " + std::to_string(family) + " requires gcd(k,6) class " +
                                    to_string(family_case(family)) + ", got k=" + std::to_string(k));
    }
}

/// The h'-dependent phase of an odd family, as a rational rho.
Rational odd_family_phase(int family, std::int64_t k, std::int64_t hp) {
    if (family == 1 || family == 3) return Rational((2 - 3 * k) * hp, 8);  // e^{(pi i/2)(1 - 3k/2) h'}
    return Rational(3 * hp, 8 * k);                                      // e^{3 pi i h'/(4k)}
}

/// Numerator of the nu-phase e^{(pi i/k)(-3 nu^2 + s nu) h'} over 2k, before multiplying by h'.
std::int64_t nu_coefficient(int family, std::int64_t nu, const FamilyOptions& opts) {
    const std::int64_t s = family == 8 ? opts.k8_phase : 1;
    return -3 * nu * nu + s * nu;
}

}  // namespace

Complex KloostermanValue::embed(const PrecisionContext& ctx) const {
    Complex total(ctx);
    for (const auto& t : terms) total += t.embed(ctx);
    return total;
}

bool KloostermanValue::same_terms(const KloostermanValue& o) const {
    if (terms.size() != o.terms.size()) return false;
    auto a = terms, b = o.terms;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

KloostermanValue KloostermanValue::scaled(const RootOfUnity& u) const {
    KloostermanValue r;
    r.terms.reserve(terms.size());
    for (const auto& t : terms) r.terms.push_back(t * u);
    return r;
}

KloostermanValue classical_K(std::int64_t k, std::int64_t n, std::int64_t m) {
    KloostermanValue v;
    for_each_unit(k, [&](std::int64_t h) {
        const std::int64_t hp = hprime_of(h, k);
        v.terms.emplace_back(Rational(pos_mod(-n * h + m * hp, k), k));
    });
    return v;
}

KloostermanValue rademacher_A(std::int64_t k, std::int64_t n) {
    KloostermanValue v;
    for_each_unit(k, [&](std::int64_t h) {
        v.terms.push_back(omega(h, k) * RootOfUnity(Rational(pos_mod(-n * h, k), k)));
    });
    return v;
}

KloostermanValue script_K(std::int64_t k, std::int64_t n) {
    if (std::gcd(k, std::int64_t{6}) != 1) throw std::invalid_argument("script_K requires gcd(k,6) = 1");
    KloostermanValue v;
    for_each_unit(k, [&](std::int64_t h) {
        const RootOfUnity w3 = omega(3 * h, k);
        const RootOfUnity r = omega(h, k) * omega(2 * h, k) * omega(6 * h, k) / (w3 * w3 * w3);
        v.terms.push_back(r * RootOfUnity(Rational(pos_mod(-n * h, k), k)));
    });
    return v;
}

RatioCase family_case(int family) {
    switch (family) {
        case 1: case 2: return RatioCase::div6;
        case 3: case 4: return RatioCase::gcd2;
        case 5: case 6: return RatioCase::gcd3;
        case 7: case 8: return RatioCase::gcd1;
        default: throw std::invalid_argument("family must be in 1..8");
    }
}

std::int64_t family_m_divisor(int family) {
    static constexpr std::int64_t c[] = {1, 1, 3, 3, 2, 2, 6, 6};
    if (family < 1 || family > 8) throw std::invalid_argument("family must be in 1..8");
    return c[family - 1];
}

KloostermanValue family_K(int family, std::int64_t k, std::optional<std::int64_t> nu, std::int64_t n, std::int64_t m,
                          const FamilyOptions& opts) {
    check_family(family, k);
    if (family_has_nu(family) != nu.has_value()) {
        throw std::invalid_argument("family " + std::to_string(family) +
                                    (nu ? " takes no nu" : " requires nu"));
    }
    const RatioCase c = family_case(family);
    const std::int64_t d = ratio_divisor(c);
    const std::int64_t cm = family_m_divisor(family);
    KloostermanValue v;
    for_each_unit(k, [&](std::int64_t h) {
        CuspPair pair = make_cusp_pair(h, k, d);
        pair.hprime += opts.hprime_shift * d * k;
        const std::int64_t hp = pair.hprime;
        RootOfUnity t = ratio_from_omega(c, pair);
        if (nu) {
            t *= RootOfUnity(Rational(nu_coefficient(family, *nu, opts) * hp, 2 * k));
        } else {
            t *= RootOfUnity(odd_family_phase(family, k, hp));
        }
        // h'/cm is an integer because d | h'.
        t *= RootOfUnity(Rational(-n * h + m * (hp / cm), k));
        v.terms.push_back(t);
    });
    return v;
}

std::vector<Complex> family_K_all_nu(int family, std::int64_t k, std::int64_t n, const PrecisionContext& ctx,
                                     const FamilyOptions& opts) {
    check_family(family, k);
    if (!family_has_nu(family)) throw std::invalid_argument("family_K_all_nu: odd families have no nu");
    const RatioCase c = family_case(family);
    const std::int64_t d = ratio_divisor(c);

    std::vector<Complex> zeta;  // zeta[j] = e^{2 pi i j/(2k)}
    zeta.reserve(static_cast<std::size_t>(2 * k));
    for (std::int64_t j = 0; j < 2 * k; ++j) zeta.push_back(unit_root(Rational(j, 2 * k), ctx));

    std::vector<std::int64_t> hps;
    std::vector<Complex> base;
    for_each_unit(k, [&](std::int64_t h) {
        CuspPair pair = make_cusp_pair(h, k, d);
        pair.hprime += opts.hprime_shift * d * k;
        const RootOfUnity r = ratio_from_omega(c, pair) * RootOfUnity(Rational(pos_mod(-n * h, k), k));
        hps.push_back(pos_mod(pair.hprime, 2 * k));
        base.push_back(r.embed(ctx));
    });

    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(k));
    for (std::int64_t nu = 1; nu <= k; ++nu) {
        const std::int64_t a = pos_mod(nu_coefficient(family, nu, opts), 2 * k);
        Complex total(ctx);
        for (std::size_t i = 0; i < hps.size(); ++i) {
            total += base[i] * zeta[static_cast<std::size_t>((a * hps[i]) % (2 * k))];
        }
        out.push_back(std::move(total));
    }
    return out;
}

Reduction reduce_to_classical(int family, std::int64_t k, std::int64_t n, std::int64_t m) {
    check_family(family, k);
    Reduction r;
    auto set = [&r](const Rational& np, const Rational& mp) {
        r.integral = np.is_integer() && mp.is_integer();
        if (r.integral) {
            r.n_prime = np.num();
            r.m_prime = mp.num();
        } else {
            r.note = "non-integral shift: n'=" + np.to_string() + ", m'=" + mp.to_string();
        }
    };
    const Rational three_k_half = Rational(3 * k, 2);
    switch (family) {
        case 1:
            // The multiplier ratio carries a leading -1 that survives the reduction.
            r.prefactor = RootOfUnity(Rational(1, 2));
            r.printed_prefactor = RootOfUnity();
            set(Rational(n) - Rational((5 * k + 18) * k, 72), Rational(m) + Rational(k, 4) * (Rational(1) - three_k_half));
            break;
        case 3: {
            r.prefactor = RootOfUnity();
            r.printed_prefactor = RootOfUnity();
            const Rational inner = Rational(n) - Rational(k * (k + 2), 8);
            const Rational np = inner.is_integer() ? Rational(pos_mod(mod_inverse(3, k) * inner.num(), k)) : inner;
            set(np, Rational(m) - Rational(k * k + 2, 6) + Rational(3 * k, 4) * (Rational(1) - three_k_half));
            break;
        }
        case 7:
            r.prefactor = RootOfUnity(Rational(k - 1, 4));
            r.printed_prefactor = RootOfUnity(Rational(k + 1, 4));
            set(Rational(pos_mod(mod_inverse(24, k) * n, k)), (Rational(5 * k * k, 12) + Rational(11, 6) + Rational(m)) * 4);
            break;
        default:
            throw std::invalid_argument("reduce_to_classical: only families 1, 3 and 7 reduce");
    }
    return r;
}

BoundReport bound_report(int family, std::int64_t k_max, std::int64_t n_max, double epsilon,
                         const FamilyOptions& opts) {
    if (!(epsilon > 0)) throw std::invalid_argument("bound_report: epsilon must be positive");
    if (family < 1 || family > 8) throw std::invalid_argument("family must be in 1..8");
    BoundReport rep;
    const double two_pi = 2.0 * std::acos(-1.0);
    auto abs_of = [two_pi](const KloostermanValue& v) {
        double re = 0, im = 0;
        for (const auto& t : v.terms) {
            const double a = two_pi * t.rho().to_double();
            re += std::cos(a);
            im += std::sin(a);
        }
        return std::hypot(re, im);
    };
    for (std::int64_t k = 1; k <= k_max; ++k) {
        if (ratio_case_of(k) != family_case(family)) continue;
        const double kf = std::pow(static_cast<double>(k), 2.0 / 3.0 + epsilon);
        for (std::int64_t n = 1; n <= n_max; ++n) {
            const double denom = std::cbrt(static_cast<double>(n)) * kf;
            auto emit = [&](std::int64_t nu, const KloostermanValue& v) {
                const double a = abs_of(v);
                rep.rows.push_back({family, k, n, nu, a, a / denom});
                rep.max_ratio = std::max(rep.max_ratio, a / denom);
            };
            if (family_has_nu(family)) {
                for (std::int64_t nu = 1; nu <= k; ++nu) emit(nu, family_K(family, k, nu, n, 0, opts));
            } else {
                emit(0, family_K(family, k, std::nullopt, n, 0, opts));
            }
        }
    }
    return rep;
}

}  // namespace radex
