#include "doctest.h"
#include "homvb/field.hpp"

#include <random>

using namespace homvb;

TEST_CASE("rational arithmetic is exact and canonical") {
    Field Q = Field::rationals();
    CHECK(Scalar::rational(1, 3) + Scalar::rational(1, 6) == Scalar::rational(1, 2));
    CHECK(Scalar::rational(2, 4) == Scalar::rational(1, 2));
    CHECK(Scalar::rational(2, 4).str() == "1/2");
    CHECK(Scalar::rational(-3, -6).str() == "1/2");
    CHECK(Scalar::rational(3, -6).str() == "-1/2");
    CHECK(Scalar::from_long(7, Q).str() == "7");
    CHECK((Scalar::rational(2, 3) * Scalar::rational(3, 2)).is_one());
    CHECK((Scalar::rational(5, 1) - Scalar::from_long(5, Q)).is_zero());
    CHECK(Scalar::rational(1, 7).inverse() == Scalar::from_long(7, Q));
}

TEST_CASE("prime field arithmetic") {
    Field F7 = Field::prime(7);
    CHECK((Scalar::residue(3, 7) * Scalar::residue(5, 7)).is_one());
    CHECK(Scalar::residue(-1, 7) == Scalar::residue(6, 7));
    CHECK(Scalar::residue(10, 7).str() == "3 mod 7");
    CHECK(Scalar::residue(3, 7).inverse() == Scalar::residue(5, 7));
    CHECK((Scalar::residue(4, 7) / Scalar::residue(2, 7)) == Scalar::residue(2, 7));
    CHECK(Scalar::from_long(9, F7) == Scalar::residue(2, 7));
    CHECK(F7.describe() == "F_7");
    CHECK_THROWS_AS(Field::prime(6), FieldError);
    CHECK_THROWS_AS(Field::prime(1), FieldError);
}

TEST_CASE("division by zero and field mixing rejected") {
    Field Q = Field::rationals();
    CHECK_THROWS_AS(Scalar::one(Q) / Scalar::zero(Q), FieldError);
    CHECK_THROWS_AS(Scalar::zero(Q).inverse(), FieldError);
    CHECK_THROWS_AS(Scalar::residue(0, 5).inverse(), FieldError);
    CHECK_THROWS_AS(Scalar::rational(1, 0), FieldError);
    CHECK_THROWS_AS(Scalar::rational(1, 2) + Scalar::residue(1, 5), FieldError);
    CHECK_THROWS_AS(Scalar::residue(1, 5) * Scalar::residue(1, 7), FieldError);
}

TEST_CASE("parse accepts integers and fractions") {
    Field Q = Field::rationals();
    Field F5 = Field::prime(5);
    CHECK(Scalar::parse("3/4", Q) == Scalar::rational(3, 4));
    CHECK(Scalar::parse("-6/8", Q) == Scalar::rational(-3, 4));
    CHECK(Scalar::parse("12", Q) == Scalar::from_long(12, Q));
    CHECK(Scalar::parse("7", F5) == Scalar::residue(2, 5));
    CHECK(Scalar::parse("1/2", F5) == Scalar::residue(3, 5));  // 2*3 = 6 = 1 mod 5
    CHECK_THROWS_AS(Scalar::parse("x", Q), FieldError);
    CHECK_THROWS_AS(Scalar::parse("1/0", Q), FieldError);
}

namespace {

Scalar sample(std::mt19937_64& rng, const Field& f) {
    long n = static_cast<long>(rng() % 21) - 10;
    if (f.is_prime_field()) return Scalar::from_long(n, f);
    long d = static_cast<long>(rng() % 9) + 1;
    return Scalar::rational(n, d);
}

}  // namespace

TEST_CASE("field axioms hold on sampled triples") {
    for (Field f : {Field::rationals(), Field::prime(101)}) {
        std::mt19937_64 rng(20240817);
        for (int trial = 0; trial < 200; ++trial) {
            Scalar a = sample(rng, f), b = sample(rng, f), c = sample(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + (-a)).is_zero());
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(a * Scalar::one(f) == a);
            CHECK((a * Scalar::zero(f)).is_zero());
        }
    }
}
