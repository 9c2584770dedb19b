#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cocycle/values.hpp"

namespace cocycle {

// Digit bases p_1, ..., p_k of the product space prod {0, ..., p_i - 1}.
class BaseVector {
public:
    BaseVector() = default;
    explicit BaseVector(std::vector<int> bases);
    static BaseVector binary(std::size_t depth);
    static BaseVector parse(const std::string& csv);

    std::size_t depth() const { return bases_.size(); }
    // 1-based coordinate
    int base(std::size_t i) const { return bases_.at(i - 1); }
    const std::vector<int>& values() const { return bases_; }
    bool is_binary() const;
    // prod_{i <= m} p_i
    std::size_t cardinality(std::size_t m) const;
    BaseVector truncated(std::size_t m) const;
    // Agreement on the coordinates both vectors define.
    bool compatible(const BaseVector& other) const;

    friend bool operator==(const BaseVector&, const BaseVector&) = default;

private:
    std::vector<int> bases_;
};

// Finite digit word x_1 ... x_k; x_1 is the least significant coordinate.
class Prefix {
public:
    Prefix() = default;
    explicit Prefix(std::vector<int> digits) : digits_(std::move(digits)) {}
    // "0 1 1", "011" or "0,1,1"
    static Prefix parse(const std::string& text);

    std::size_t depth() const { return digits_.size(); }
    // 1-based; digits beyond the word read as 0
    int digit(std::size_t i) const { return i <= digits_.size() ? digits_[i - 1] : 0; }
    const std::vector<int>& digits() const { return digits_; }
    std::string to_string() const;

    friend bool operator==(const Prefix&, const Prefix&) = default;

private:
    std::vector<int> digits_;
};

// The depth-m cylinder quotient, indexed x_1-fastest:
// index(x) = sum_i x_i * prod_{j<i} p_j.
class PrefixSpace {
public:
    PrefixSpace() = default;
    PrefixSpace(BaseVector bases, std::size_t depth);
    explicit PrefixSpace(BaseVector bases) : PrefixSpace(bases, bases.depth()) {}

    const BaseVector& bases() const { return bases_; }
    std::size_t depth() const { return depth_; }
    std::size_t size() const { return size_; }

    std::size_t index(const Prefix& x) const;
    Prefix prefix(std::size_t idx) const;
    // 1-based coordinate of a depth-m index
    int digit(std::size_t idx, std::size_t i) const;
    std::size_t with_digit(std::size_t idx, std::size_t i, int d) const;
    std::size_t stride(std::size_t i) const { return strides_.at(i - 1); }

    friend bool operator==(const PrefixSpace& a, const PrefixSpace& b) {
        return a.depth_ == b.depth_ && a.bases_.truncated(a.depth_) == b.bases_.truncated(b.depth_);
    }

private:
    BaseVector bases_;
    std::size_t depth_ = 0;
    std::size_t size_ = 1;
    std::vector<std::size_t> strides_;
};

// A G-valued function of the first m coordinates, tabulated over depth-m
// prefixes.
class CylinderFunction {
public:
    CylinderFunction() = default;
    CylinderFunction(BaseVector bases, std::size_t depth, GroupTag group, std::vector<GroupValue> table);

    static CylinderFunction constant(BaseVector bases, std::size_t depth, const GroupValue& v);
    static CylinderFunction tabulate(BaseVector bases, std::size_t depth, GroupTag group,
                                     const std::function<GroupValue(std::size_t)>& at_index);

    const BaseVector& bases() const { return bases_; }
    std::size_t depth() const { return depth_; }
    const GroupTag& group() const { return group_; }
    const std::vector<GroupValue>& table() const { return table_; }
    PrefixSpace space() const { return PrefixSpace(bases_, depth_); }

    GroupValue eval(const Prefix& x) const;
    // idx is an index of any depth >= depth() over the same bases
    const GroupValue& at(std::size_t idx) const { return table_[idx % table_.size()]; }

    CylinderFunction lift(std::size_t depth) const;
    CylinderFunction lift(const PrefixSpace& space) const;

    friend bool operator==(const CylinderFunction&, const CylinderFunction&) = default;

private:
    BaseVector bases_;
    std::size_t depth_ = 0;
    GroupTag group_;
    std::vector<GroupValue> table_;
};

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& g);
CylinderFunction operator-(const CylinderFunction& f, const CylinderFunction& g);
CylinderFunction operator-(const CylinderFunction& f);

// Smallest space on which both functions are defined.
PrefixSpace common_space(const CylinderFunction& f, const CylinderFunction& g);

struct Bernoulli {
    // Row i is the distribution of x_{i+1}; the last row repeats for deeper
    // coordinates.
    std::vector<std::vector<Rational>> weights;
};

struct Markov {
    std::vector<Rational> initial;
    std::vector<std::vector<Rational>> transition;
};

// Point mass at the prefix followed by an all-zeros tail.
struct Dirac {
    Prefix point;
};

class MeasureSpec;

struct Mixture {
    std::vector<Rational> weights;
    std::vector<MeasureSpec> parts;
};

class MeasureSpec {
public:
    using Variant = std::variant<Bernoulli, Markov, Dirac, Mixture>;

    MeasureSpec() : MeasureSpec(uniform()) {}
    MeasureSpec(Variant v);

    // Bernoulli(1/p_i) on every coordinate
    static MeasureSpec uniform();
    static MeasureSpec bernoulli(std::vector<std::vector<Rational>> weights);
    static MeasureSpec markov(std::vector<Rational> initial, std::vector<std::vector<Rational>> transition);
    static MeasureSpec dirac(Prefix point);
    static MeasureSpec mixture(std::vector<Rational> weights, std::vector<MeasureSpec> parts);

    const Variant& variant() const { return value_; }

    Rational cylinder_mass(const PrefixSpace& space, std::size_t idx) const;
    std::vector<Rational> masses(const PrefixSpace& space) const;

private:
    void validate() const;
    Variant value_;
};

Rational measure_of_cylinder_set(const MeasureSpec& mu, const PrefixSpace& space, std::span<const std::size_t> set);

// Per-cylinder masses of a measure at a fixed depth.
class MassTable {
public:
    MassTable(const MeasureSpec& mu, PrefixSpace space);
    MassTable(PrefixSpace space, std::vector<Rational> masses);

    const PrefixSpace& space() const { return space_; }
    const std::vector<Rational>& masses() const { return masses_; }
    const Rational& operator[](std::size_t idx) const { return masses_[idx]; }

private:
    PrefixSpace space_;
    std::vector<Rational> masses_;
};

// Bijection of a depth-m prefix space (a finite-quotient automorphism).
class PrefixMap {
public:
    PrefixMap() = default;
    PrefixMap(PrefixSpace space, std::vector<std::size_t> image);
    static PrefixMap identity(PrefixSpace space);

    const PrefixSpace& space() const { return space_; }
    std::size_t operator()(std::size_t idx) const { return image_[idx]; }
    Prefix operator()(const Prefix& x) const { return space_.prefix(image_[space_.index(x)]); }
    const std::vector<std::size_t>& image() const { return image_; }

    PrefixMap inverse() const;
    // (a * b)(x) = a(b(x))
    friend PrefixMap operator*(const PrefixMap& a, const PrefixMap& b);
    friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

private:
    PrefixSpace space_;
    std::vector<std::size_t> image_;
};

// mu o S, the measure A -> mu(S A), as a mass table.
MassTable pushforward_inverse(const MassTable& mu, const PrefixMap& s);

Scalar exceedance_measure(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu,
                          const Scalar& eps);
Scalar exceedance_measure(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu,
                          const Scalar& eps);

// mu_i({x : |f - g| > eps}) < delta for every listed measure
bool tau1_membership(const CylinderFunction& f, const CylinderFunction& g, std::span<const MeasureSpec> mus,
                     const Scalar& eps, const Scalar& delta);
bool tau2_membership(const CylinderFunction& f, const CylinderFunction& g, std::span<const MeasureSpec> mus,
                     const Scalar& eps);

// integral of min(|f - g|, 1)
Scalar tau3_functional(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu);
Scalar tau3_functional(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu);
// integral of |f - g| / (1 + |f - g|)
Scalar tau4_functional(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu);
Scalar tau4_functional(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu);

enum class DisagreementSet {
    forward,     // {x : Sx != Tx}
    with_inverse // {x : Sx != Tx} u {x : S^-1 x != T^-1 x}
};

Rational aut_distance(const PrefixMap& s, const PrefixMap& t, const MeasureSpec& mu,
                      DisagreementSet set = DisagreementSet::forward);

} // namespace cocycle
