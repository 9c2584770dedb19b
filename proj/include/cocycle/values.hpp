#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "cocycle/error.hpp"

namespace cocycle {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Exact rational, or a double for the approximate real group. Mixed arithmetic
// degrades to double.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) {}
    Scalar(double x) : value_(x) {}
    Scalar(int x) : value_(Rational(x)) {}

    bool is_exact() const { return std::holds_alternative<Rational>(value_); }
    const Rational& exact() const;
    double to_double() const;
    std::string to_string() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

private:
    std::variant<Rational, double> value_;
};

Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

enum class GroupKind { integer, rational, dyadic, mod_m, rational_vector, approx_real };

// Identifies a value group. `param` is the modulus for mod_m and the
// dimension for rational_vector, zero otherwise.
struct GroupTag {
    GroupKind kind = GroupKind::integer;
    std::int64_t param = 0;

    static GroupTag integer() { return {GroupKind::integer, 0}; }
    static GroupTag rational() { return {GroupKind::rational, 0}; }
    static GroupTag dyadic() { return {GroupKind::dyadic, 0}; }
    static GroupTag mod(std::int64_t m);
    static GroupTag vector(std::int64_t dim);
    static GroupTag approx_real() { return {GroupKind::approx_real, 0}; }

    // "int", "rat", "dy", "mod:4", "vec:2", "real"
    static GroupTag parse(const std::string& name);
    std::string name() const;

    bool is_exact() const { return kind != GroupKind::approx_real; }
    friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

// An element of one of the supported abelian groups. Rationals and dyadics
// are kept in lowest terms, residues in [0, m).
class GroupValue {
public:
    GroupValue() : value_(Integer(0)) {}

    static GroupValue integer(Integer n);
    static GroupValue rational(Rational q);
    // num / 2^exponent
    static GroupValue dyadic(Integer num, unsigned long exponent = 0);
    static GroupValue dyadic(const Rational& q);
    static GroupValue mod(std::int64_t residue, std::int64_t modulus);
    static GroupValue vector(std::vector<Rational> coords);
    static GroupValue real(double x);
    static GroupValue zero(const GroupTag& tag);

    GroupTag tag() const;
    bool is_zero() const;

    const Integer& as_integer() const;
    const Rational& as_rational_variant() const;
    const Integer& dyadic_numerator() const;
    unsigned long dyadic_exponent() const;
    std::int64_t residue() const;
    std::int64_t modulus() const;
    const std::vector<Rational>& coords() const;
    double as_real() const;

    // Exact rational value of an integer, rational or dyadic element
    // (doubles convert exactly as well).
    Rational to_rational() const;

    std::string to_string() const;

    friend GroupValue operator+(const GroupValue& a, const GroupValue& b);
    friend GroupValue operator-(const GroupValue& a, const GroupValue& b);
    friend GroupValue operator-(const GroupValue& a);
    friend bool operator==(const GroupValue& a, const GroupValue& b);

    GroupValue& operator+=(const GroupValue& b) { return *this = *this + b; }
    GroupValue& operator-=(const GroupValue& b) { return *this = *this - b; }

private:
    struct Dyadic {
        Integer num;
        unsigned long exponent = 0;
        friend bool operator==(const Dyadic&, const Dyadic&) = default;
    };
    struct Residue {
        std::int64_t r = 0;
        std::int64_t m = 1;
        friend bool operator==(const Residue&, const Residue&) = default;
    };
    using Payload = std::variant<Integer, Rational, Dyadic, Residue, std::vector<Rational>, double>;

    explicit GroupValue(Payload p) : value_(std::move(p)) {}

    Payload value_;
};

GroupValue add(const GroupValue& a, const GroupValue& b);
GroupValue negate(const GroupValue& a);
// k-fold sum, k may be negative
GroupValue multiply(const GroupValue& a, std::int64_t k);
GroupValue multiply(const GroupValue& a, const Integer& k);

// Translation-invariant metric. Integer/rational/dyadic: |a - b|;
// mod m: circular distance min(r, m - r) of a - b; vectors: sum of absolute
// coordinate differences; reals: |a - b| as a double.
Scalar metric(const GroupValue& a, const GroupValue& b);
Scalar norm(const GroupValue& a);

// Maps a value into a larger group it embeds in (integer -> dyadic ->
// rational; identity when the tags already agree).
GroupValue embed(const GroupValue& v, const GroupTag& target);

bool is_dyadic_rational(const Rational& q);

// eps_n = eps0 * 2^-n
class NeighborhoodChain {
public:
    explicit NeighborhoodChain(Rational eps0);

    const Rational& base_radius() const { return eps0_; }
    Rational radius(unsigned n) const;
    // 2 * eps_{n+1} <= eps_n
    bool nested(unsigned n) const;
    // sum of eps_1 .. eps_count
    Rational total_radius(unsigned count) const;

private:
    Rational eps0_;
};

// Nearest element of H (the dyadic rationals) with denominator 2^q, q the
// least nonnegative integer with 2^-q <= eps_n. Ties round toward zero;
// values that are already dyadic are returned as they are.
GroupValue round_to_dense(const GroupValue& v, unsigned n, const NeighborhoodChain& chain);

} // namespace cocycle
