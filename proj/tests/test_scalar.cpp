#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exalg/scalar.hpp"

using namespace exalg;

TEST_CASE("rational normalization") {
    RingSpec q = RingSpec::rationals();
    Scalar a(q, 4, -6);
    CHECK(a.num() == -2);
    CHECK(a.den() == 3);
    Scalar z(q, 0, 7);
    CHECK(z.is_zero());
    CHECK(z.den() == 1);
    CHECK((Scalar(q, 1, 2) + Scalar(q, 1, 3)) == Scalar(q, 5, 6));
    CHECK((Scalar(q, 1, 2) * Scalar(q, 2, 5)) == Scalar(q, 1, 5));
}

TEST_CASE("prime field and witt reduction") {
    RingSpec f5 = RingSpec::prime_field(5);
    CHECK(Scalar(f5, -1).num() == 4);
    CHECK((Scalar(f5, 3) * Scalar(f5, 4)).num() == 2);
    CHECK(Scalar(f5, 2).inverse().num() == 3);

    RingSpec w = RingSpec::trunc_witt(3, 4);
    CHECK(w.modulus() == 81);
    CHECK(Scalar(w, 82).num() == 1);
    CHECK_FALSE(Scalar(w, 3).is_unit());
    CHECK(Scalar(w, 2).is_unit());
    CHECK((Scalar(w, 2) * Scalar(w, 2).inverse()).num() == 1);
}

TEST_CASE("cross-variant arithmetic is rejected") {
    Scalar a(RingSpec::integers(), 1);
    Scalar b(RingSpec::prime_field(3), 1);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("teichmuller fixed points") {
    // omega(1) = 1, omega(0) = 0 for any p, N
    CHECK(teichmuller(1, 7, 5) == 1);
    CHECK(teichmuller(0, 7, 5) == 0);

    // p=5, a=2, N=2: 7^2 = 49 = -1 mod 25, 7^4 = 1 mod 25, and 7 = 2 mod 5
    CHECK(teichmuller(2, 5, 2) == 7);

    // defining property: t^p = t mod p^N and t = a mod p
    for (Int p : {Int(3), Int(5), Int(7)}) {
        for (int n = 1; n <= 6; ++n) {
            Int mod = RingSpec::trunc_witt(p, n).modulus();
            for (Int a = 0; a < p; ++a) {
                Int t = teichmuller(a, p, n);
                CHECK(pow_mod(t, p, mod) == t);
                CHECK(t % p == a);
            }
        }
    }
}

TEST_CASE("teichmuller digit expansion round-trips") {
    // Every element of W_N(F_p) has a unique expansion sum omega(c_i) p^i.
    for (Int p : {Int(3), Int(5)}) {
        int n = 8;
        Int mod = RingSpec::trunc_witt(p, n).modulus();
        std::mt19937_64 rng(42);
        for (int trial = 0; trial < 50; ++trial) {
            Int x = Int(rng()) % mod;
            auto digits = teichmuller_digits(x, p, n);
            REQUIRE(digits.size() == 8);
            for (const auto& c : digits) CHECK(c < p);
            CHECK(witt_from_digits(digits, p, n) == x);
        }
    }
}
