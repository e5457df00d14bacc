#pragma once

#include <cstdint>
#include <vector>

// Modular arithmetic primitives. Desk scale keeps N below 2^31, so every
// product of two residues fits in 64 bits.
namespace wormhole::numtheory {

using Int = std::int64_t;

inline constexpr Int kMaxModulus = Int{1} << 31;

struct FactorPair {
    Int p = 0;  // smaller prime
    Int q = 0;  // larger prime
    Int n = 0;

    friend bool operator==(const FactorPair&, const FactorPair&) = default;
};

Int gcd(Int a, Int b) noexcept;
Int lcm(Int a, Int b) noexcept;

bool is_prime(Int n) noexcept;

/// True iff gcd(alpha, n) == 1.
bool is_totative(Int alpha, Int n) noexcept;

/// (base^exp) mod m.
Int pow_mod(Int base, Int exp, Int m) noexcept;

/// Smallest t >= 1 with alpha^t == 1 (mod m). Throws invalid-totative when
/// gcd(alpha, m) != 1.
Int multiplicative_order(Int alpha, Int m);

/// Distinct prime divisors of n, ascending.
std::vector<Int> prime_divisors(Int n);

/// Euler's totient.
Int totient(Int n);

/// Ground truth for coloring and validation. Throws not-a-valid-semiprime
/// unless n = p*q with distinct primes p < q.
FactorPair factor_by_trial_division(Int n);

/// The first `count` totatives of n, starting at 1.
std::vector<Int> first_totatives(Int n, std::size_t count);

}  // namespace wormhole::numtheory
