#include "wormhole/numtheory.hpp"

#include <numeric>
#include <string>

#include "wormhole/error.hpp"

namespace wormhole::numtheory {

Int gcd(Int a, Int b) noexcept { return std::gcd(a, b); }

Int lcm(Int a, Int b) noexcept { return std::lcm(a, b); }

bool is_prime(Int n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_totative(Int alpha, Int n) noexcept { return gcd(alpha, n) == 1; }

Int pow_mod(Int base, Int exp, Int m) noexcept {
    Int result = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

Int multiplicative_order(Int alpha, Int m) {
    if (m < 2 || gcd(alpha, m) != 1) {
        throw Error(ErrorCode::InvalidTotative,
                    std::to_string(alpha) + " is not a unit modulo " + std::to_string(m));
    }
    Int a = alpha % m;
    if (a < 0) a += m;
    Int x = a;
    Int t = 1;
    while (x != 1 % m) {
        x = x * a % m;
        ++t;
    }
    return t;
}

std::vector<Int> prime_divisors(Int n) {
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

Int totient(Int n) {
    Int result = n;
    for (Int r : prime_divisors(n)) result = result / r * (r - 1);
    return result;
}

FactorPair factor_by_trial_division(Int n) {
    auto reject = [n](const char* why) {
        return Error(ErrorCode::NotAValidSemiprime, std::to_string(n) + ": " + why);
    };
    if (n < 6) throw reject("must be at least 6");
    if (n >= kMaxModulus) throw reject("exceeds desk-scale limit 2^31");
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const Int q = n / d;
        if (q == d) throw reject("square of a prime");
        if (!is_prime(q)) throw reject("more than two prime factors");
        return FactorPair{d, q, n};
    }
    throw reject("prime");
}

std::vector<Int> first_totatives(Int n, std::size_t count) {
    std::vector<Int> out;
    for (Int a = 1; a < n && out.size() < count; ++a) {
        if (is_totative(a, n)) out.push_back(a);
    }
    return out;
}

}  // namespace wormhole::numtheory
