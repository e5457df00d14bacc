#include <doctest.h>

#include <random>

#include "wormhole/error.hpp"
#include "wormhole/numtheory.hpp"

using namespace wormhole;
using namespace wormhole::numtheory;

namespace {

// Oracle: repeated multiplication, no shortcuts.
Int order_by_iteration(Int a, Int m) {
    Int x = a % m;
    Int t = 1;
    while (x != 1) {
        x = x * a % m;
        ++t;
    }
    return t;
}

// Size of the orbit {x * a^t mod n}.
Int orbit_size(Int x, Int a, Int n) {
    Int y = x * a % n;
    Int t = 1;
    while (y != x) {
        y = y * a % n;
        ++t;
    }
    return t;
}

}  // namespace

TEST_CASE("gcd") {
    CHECK(gcd(6, 15) == 3);
    CHECK(gcd(1, 703) == 1);
    CHECK(gcd(14, 35) == 7);
}

TEST_CASE("totatives") {
    CHECK(is_totative(2, 15));
    CHECK_FALSE(is_totative(3, 15));
    CHECK(is_totative(3, 55));
    CHECK(first_totatives(15, 4) == std::vector<Int>{1, 2, 4, 7});
}

TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order(2, 5) == 4);
    CHECK(multiplicative_order(2, 3) == 2);
    CHECK(multiplicative_order(1, 17) == 1);
    CHECK(multiplicative_order(3, 37) == 18);

    SUBCASE("non-unit is rejected") {
        try {
            multiplicative_order(6, 15);
            FAIL("expected invalid-totative");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidTotative);
        }
    }
}

TEST_CASE("order divides the group order and is minimal") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Int m = 2 + static_cast<Int>(rng() % 3000);
        Int a = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(m - 1));
        if (gcd(a, m) != 1) continue;
        const Int ord = multiplicative_order(a, m);
        CHECK(ord == order_by_iteration(a, m));
        CHECK(totient(m) % ord == 0);
        CHECK(pow_mod(a, ord, m) == 1 % m);
        for (Int r : prime_divisors(ord)) CHECK(pow_mod(a, ord / r, m) != 1);
    }
}

TEST_CASE("orbit of p has the order of alpha modulo q") {
    const Int semiprimes[] = {15, 35, 55, 77, 91, 703, 949, 591};
    for (Int n : semiprimes) {
        const FactorPair f = factor_by_trial_division(n);
        for (Int a = 2; a < n - 1; ++a) {
            if (!is_totative(a, n)) continue;
            CHECK(orbit_size(f.p, a, n) == multiplicative_order(a, f.q));
            CHECK(orbit_size(f.q, a, n) == multiplicative_order(a, f.p));
        }
    }
}

TEST_CASE("factor by trial division") {
    CHECK(factor_by_trial_division(15) == FactorPair{3, 5, 15});
    CHECK(factor_by_trial_division(703) == FactorPair{19, 37, 703});
    CHECK(factor_by_trial_division(35) == FactorPair{5, 7, 35});

    for (Int bad : {9, 13, 8, 30, 49, 125, 4}) {
        CAPTURE(bad);
        try {
            factor_by_trial_division(bad);
            FAIL("expected not-a-valid-semiprime");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotAValidSemiprime);
        }
    }
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(37));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(703));
    CHECK(is_prime(2147483629));
}
