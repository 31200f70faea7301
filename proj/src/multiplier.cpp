#include "radex/multiplier.hpp"

#include <numeric>
#include <stdexcept>

namespace radex {

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

void require_coprime(std::int64_t h, std::int64_t k, const char* what) {
    if (k < 1) throw std::invalid_argument(std::string(what) + ": k must be positive");
    if (std::gcd(pos_mod(h, k), k) != 1) {
        throw std::invalid_argument(std::string(what) + ": gcd(" + std::to_string(h) + ", " + std::to_string(k) +
                                    ") != 1");
    }
}

}  // namespace

int kronecker(std::int64_t a, std::int64_t b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && b % 2 == 0) return 0;
    int r = 1;
    if (b < 0) {
        b = -b;
        if (a < 0) r = -r;
    }
    while (b % 2 == 0) {
        b /= 2;
        const std::int64_t a8 = pos_mod(a, 8);
        if (a8 == 3 || a8 == 5) r = -r;
    }
    // Jacobi symbol (a/b), b odd and positive.
    a = pos_mod(a, b);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t b8 = b % 8;
            if (b8 == 3 || b8 == 5) r = -r;
        }
        std::swap(a, b);
        if (a % 4 == 3 && b % 4 == 3) r = -r;
        a %= b;
    }
    return b == 1 ? r : 0;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    std::int64_t old_r = pos_mod(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) {
        throw std::invalid_argument("mod_inverse: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
    }
    return pos_mod(old_s, m);
}

CuspPair make_cusp_pair(std::int64_t h, std::int64_t k, std::int64_t d) {
    require_coprime(h, k, "make_cusp_pair");
    if (d < 1 || std::gcd(d, k) != 1) {
        throw std::invalid_argument("make_cusp_pair: gcd(d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                                    ") != 1");
    }
    const std::int64_t base = pos_mod(-mod_inverse(h, k), k);  // h * base = -1 mod k
    // h' = base + j k with d | h', i.e. j = -base * k^{-1} mod d.
    const std::int64_t j = pos_mod(-base * mod_inverse(k, d), d);
    return {h, k, base + j * k, d};
}

RootOfUnity omega_with_hprime(std::int64_t h, std::int64_t k, std::int64_t hprime) {
    require_coprime(h, k, "omega");
    if (k == 1) return RootOfUnity();
    h = pos_mod(h, k);
    if (pos_mod(h * hprime + 1, k) != 0) throw std::invalid_argument("omega: h h' != -1 mod k");
    const Rational t = Rational(k * k - 1, 12 * k) * Rational(2 * h - hprime + h * h * hprime);
    int sign = 0;
    Rational e;
    if (k % 2 == 1) {
        sign = kronecker(-h, k);
        e = Rational(k - 1, 4) + t;
    } else {
        sign = kronecker(-k, h);
        e = Rational(2 - h * k - h, 4) + t;
    }
    Rational rho = -e * Rational(1, 2);
    if (sign == -1) rho += Rational(1, 2);
    return RootOfUnity(rho);
}

RootOfUnity omega(std::int64_t h, std::int64_t k) {
    require_coprime(h, k, "omega");
    if (k == 1) return RootOfUnity();
    h = pos_mod(h, k);
    return omega_with_hprime(h, k, pos_mod(-mod_inverse(h, k), k));
}

RatioCase ratio_case_of(std::int64_t k) {
    switch (std::gcd(k, std::int64_t{6})) {
        case 6: return RatioCase::div6;
        case 2: return RatioCase::gcd2;
        case 3: return RatioCase::gcd3;
        default: return RatioCase::gcd1;
    }
}

std::int64_t ratio_divisor(RatioCase c) {
    switch (c) {
        case RatioCase::div6: return 1;
        case RatioCase::gcd2: return 3;
        case RatioCase::gcd3: return 8;
        case RatioCase::gcd1: return 24;
    }
    return 1;
}

std::string to_string(RatioCase c) {
    switch (c) {
        case RatioCase::div6: return "div6";
        case RatioCase::gcd2: return "gcd2";
        case RatioCase::gcd3: return "gcd3";
        case RatioCase::gcd1: return "gcd1";
    }
    return "?";
}

namespace {

void check_pair(RatioCase c, const CuspPair& p) {
    if (ratio_case_of(p.k) != c) {
        throw std::invalid_argument("multiplier ratio: k=" + std::to_string(p.k) + " is not in class " + to_string(c));
    }
    if (p.d != ratio_divisor(c) || pos_mod(p.hprime, p.d) != 0) {
        throw std::invalid_argument("multiplier ratio: pair divisor does not match class " + to_string(c));
    }
    if (pos_mod(p.h * p.hprime + 1, p.k) != 0) throw std::invalid_argument("multiplier ratio: h h' != -1 mod k");
}

}  // namespace

RootOfUnity ratio_closed_form(RatioCase c, const CuspPair& pair, ClosedForm form) {
    check_pair(c, pair);
    const std::int64_t h = pair.h, k = pair.k, hp = pair.hprime;
    switch (c) {
        case RatioCase::div6:
            return RootOfUnity(Rational(1, 2) + Rational((5 * k + 18) * h, 72));
        case RatioCase::gcd2:
            return RootOfUnity(Rational(k * (k + 2) * h, 8 * k) - Rational((k * k + 2) * hp, 18 * k));
        case RatioCase::gcd3:
            if (form == ClosedForm::printed) {
                return RootOfUnity(Rational(k + 1, 4) + Rational(2 * k * h, 9) - Rational((k * k - 3) * hp, 24 * k));
            }
            return RootOfUnity(Rational(k + 1, 4) - Rational(2 * k * h, 9) - Rational((k * k + 3) * hp, 24 * k));
        case RatioCase::gcd1: {
            const Rational sign = form == ClosedForm::printed ? Rational(k + 1, 4) : Rational(k - 1, 4);
            return RootOfUnity(sign + Rational(5 * (k * k - 1) * hp, 72 * k));
        }
    }
    throw std::logic_error("unreachable");
}

RootOfUnity ratio_from_omega(RatioCase c, const CuspPair& pair) {
    check_pair(c, pair);
    const std::int64_t h = pair.h, k = pair.k;
    switch (c) {
        case RatioCase::div6:
            return omega(h, k) * omega(h, k / 2) * omega(h, k / 3) / omega(h, k / 6);
        case RatioCase::gcd2:
            return omega(h, k) * omega(h, k / 2) * omega(3 * h, k) / omega(3 * h, k / 2);
        case RatioCase::gcd3:
            return omega(h, k) * omega(2 * h, k) * omega(h, k / 3) / omega(2 * h, k / 3);
        case RatioCase::gcd1:
            return omega(h, k) * omega(2 * h, k) * omega(3 * h, k) / omega(6 * h, k);
    }
    throw std::logic_error("unreachable");
}

}  // namespace radex
