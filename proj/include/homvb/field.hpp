#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace homvb {

class FieldError : public std::runtime_error {
public:
    explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Coefficient field: the rationals (modulus 0) or a prime field F_p.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(long p);

    long modulus() const { return modulus_; }
    bool is_prime_field() const { return modulus_ != 0; }

    bool operator==(const Field& other) const { return modulus_ == other.modulus_; }
    bool operator!=(const Field& other) const { return modulus_ != other.modulus_; }

    /// "Q" or "F_p".
    std::string describe() const;

private:
    explicit Field(long p) : modulus_(p) {}
    long modulus_;
};

/// Exact field element. Either an arbitrary-precision rational in lowest
/// terms (denominator > 0) or a residue mod p in [0, p). Immutable value
/// type; arithmetic between elements of different fields throws FieldError,
/// as does division by zero.
class Scalar {
public:
    Scalar() : value_(0), modulus_(0) {}

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_long(long n, const Field& f);
    /// Rational num/den, reduced to canonical form. den must be nonzero.
    static Scalar rational(long num, long den);
    static Scalar rational(const mpq_class& q);
    /// Residue r mod p (r may be any integer; reduced into [0, p)).
    static Scalar residue(long r, long p);
    static Scalar residue(const mpz_class& r, long p);
    /// Parses "num", "num/den" (rational field) or the same reduced mod p.
    static Scalar parse(const std::string& text, const Field& f);

    Field field() const { return modulus_ == 0 ? Field::rationals() : Field::prime(modulus_); }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator*(const Scalar& other) const;
    Scalar operator/(const Scalar& other) const;
    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
    Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
    Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
    Scalar& operator/=(const Scalar& other) { return *this = *this / other; }

    bool operator==(const Scalar& other) const;
    bool operator!=(const Scalar& other) const { return !(*this == other); }

    /// Canonical string: "num", "num/den", or "r mod p".
    std::string str() const;
    /// Like str() but without the " mod p" suffix for prime fields.
    std::string str_plain() const;

    const mpq_class& raw() const { return value_; }

private:
    Scalar(mpq_class v, long m) : value_(std::move(v)), modulus_(m) {}
    void check_same_field(const Scalar& other, const char* op) const;

    mpq_class value_;  // for F_p this is the integer residue in [0, p)
    long modulus_;     // 0 for the rationals
};

}  // namespace homvb
