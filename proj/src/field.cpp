#include "homvb/field.hpp"

namespace homvb {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

mpz_class reduce_mod(const mpz_class& r, long p) {
    mpz_class m;
    mpz_mod(m.get_mpz_t(), r.get_mpz_t(), mpz_class(p).get_mpz_t());
    return m;
}

}  // namespace

Field Field::prime(long p) {
    thread_local long last_verified = 0;
    if (p != last_verified) {
        if (!is_prime(p)) {
            throw FieldError("not a prime modulus: " + std::to_string(p));
        }
        last_verified = p;
    }
    return Field(p);
}

std::string Field::describe() const {
    return modulus_ == 0 ? "Q" : "F_" + std::to_string(modulus_);
}

Scalar Scalar::zero(const Field& f) { return Scalar(mpq_class(0), f.modulus()); }

Scalar Scalar::one(const Field& f) { return Scalar(mpq_class(1), f.modulus()); }

Scalar Scalar::from_long(long n, const Field& f) {
    if (!f.is_prime_field()) return Scalar(mpq_class(n), 0);
    return residue(n, f.modulus());
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw FieldError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q), 0);
}

Scalar Scalar::rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return Scalar(std::move(c), 0);
}

Scalar Scalar::residue(long r, long p) { return residue(mpz_class(r), p); }

Scalar Scalar::residue(const mpz_class& r, long p) {
    Field f = Field::prime(p);  // validates p
    return Scalar(mpq_class(reduce_mod(r, p)), f.modulus());
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
    auto slash = text.find('/');
    mpz_class num, den(1);
    try {
        if (slash == std::string::npos) {
            num = mpz_class(text);
        } else {
            num = mpz_class(text.substr(0, slash));
            den = mpz_class(text.substr(slash + 1));
        }
    } catch (const std::invalid_argument&) {
        throw FieldError("not a number: '" + text + "'");
    }
    if (den == 0) throw FieldError("zero denominator in '" + text + "'");
    if (!f.is_prime_field()) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(std::move(q), 0);
    }
    Scalar n = residue(num, f.modulus());
    Scalar d = residue(den, f.modulus());
    return n / d;
}

void Scalar::check_same_field(const Scalar& other, const char* op) const {
    if (modulus_ != other.modulus_) {
        throw FieldError(std::string("field mismatch in ") + op + ": " +
                         field().describe() + " vs " + other.field().describe());
    }
}

Scalar Scalar::operator+(const Scalar& other) const {
    check_same_field(other, "add");
    if (modulus_ == 0) return Scalar(mpq_class(value_ + other.value_), 0);
    return Scalar(mpq_class(reduce_mod(value_.get_num() + other.value_.get_num(), modulus_)), modulus_);
}

Scalar Scalar::operator-(const Scalar& other) const {
    check_same_field(other, "sub");
    if (modulus_ == 0) return Scalar(mpq_class(value_ - other.value_), 0);
    return Scalar(mpq_class(reduce_mod(value_.get_num() - other.value_.get_num(), modulus_)), modulus_);
}

Scalar Scalar::operator*(const Scalar& other) const {
    check_same_field(other, "mul");
    if (modulus_ == 0) return Scalar(mpq_class(value_ * other.value_), 0);
    return Scalar(mpq_class(reduce_mod(value_.get_num() * other.value_.get_num(), modulus_)), modulus_);
}

Scalar Scalar::operator/(const Scalar& other) const {
    check_same_field(other, "div");
    return *this * other.inverse();
}

Scalar Scalar::operator-() const {
    if (modulus_ == 0) return Scalar(mpq_class(-value_), 0);
    return Scalar(mpq_class(reduce_mod(-value_.get_num(), modulus_)), modulus_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    if (modulus_ == 0) return Scalar(mpq_class(1 / value_), 0);
    mpz_class inv;
    int ok = mpz_invert(inv.get_mpz_t(), value_.get_num().get_mpz_t(),
                        mpz_class(modulus_).get_mpz_t());
    if (!ok) throw FieldError("non-invertible residue");  // unreachable for prime p
    return Scalar(mpq_class(inv), modulus_);
}

bool Scalar::operator==(const Scalar& other) const {
    return modulus_ == other.modulus_ && value_ == other.value_;
}

std::string Scalar::str() const {
    if (modulus_ == 0) return value_.get_str();
    return value_.get_num().get_str() + " mod " + std::to_string(modulus_);
}

std::string Scalar::str_plain() const {
    if (modulus_ == 0) return value_.get_str();
    return value_.get_num().get_str();
}

}  // namespace homvb
