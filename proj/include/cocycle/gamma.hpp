#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cocycle/dynamics.hpp"

namespace cocycle {

// Generators f_1 .. f_N on {0,1}^m, m >= N. Table n is indexed by the digits
// x_{n+1} .. x_m only (x_{n+1} fastest), so f_n is invariant under
// delta_1 .. delta_n by construction. f_n = 0 for N < n <= m.
class GeneratorFamily {
public:
    GeneratorFamily(std::size_t depth, GroupTag group, std::vector<std::vector<GroupValue>> tables);

    // Full depth-m functions; throws InvarianceViolation if some f_n depends
    // on x_1 .. x_n.
    static GeneratorFamily from_functions(std::span<const CylinderFunction> functions, std::size_t depth);
    static GeneratorFamily zero(std::size_t count, std::size_t depth, GroupTag group);

    std::size_t count() const { return tables_.size(); }
    std::size_t depth() const { return depth_; }
    const GroupTag& group() const { return group_; }
    const std::vector<std::vector<GroupValue>>& tables() const { return tables_; }

    // f_n at a depth-m index
    GroupValue value(std::size_t n, std::size_t idx) const;
    CylinderFunction function(std::size_t n) const;

    friend bool operator==(const GeneratorFamily&, const GeneratorFamily&) = default;

private:
    std::size_t depth_ = 0;
    GroupTag group_;
    std::vector<std::vector<GroupValue>> tables_;
};

class InvarianceViolation : public DomainError {
public:
    InvarianceViolation(std::size_t n, std::size_t idx, std::size_t k, const std::string& what)
        : DomainError(what), generator(n), index(idx), flipped(k) {}
    std::size_t generator;
    std::size_t index;
    std::size_t flipped;
};

// Element of Gamma = <delta_1, delta_2, ...> written as a product of
// generators; letters act right to left.
class GammaWord {
public:
    GammaWord() = default;
    explicit GammaWord(std::vector<std::size_t> letters) : letters_(std::move(letters)) {}
    // subset of {1..N} given as a bitmask, bit n-1 for delta_n
    static GammaWord from_mask(unsigned long mask);

    const std::vector<std::size_t>& letters() const { return letters_; }
    // indices occurring an odd number of times, ascending
    GammaWord reduced() const;
    std::size_t apply(const PrefixSpace& space, std::size_t idx) const;

private:
    std::vector<std::size_t> letters_;
};

// The Gamma-cocycle generated by f_1 .. f_N through
//   c(delta_n, x) = sum_{i<n} x_i f_i(delta_n x) + (-1)^{x_n} f_n(x) - sum_{i<n} x_i f_i(x).
// Built from a GeneratorFamily it is a cocycle; `unchecked` accepts
// arbitrary functions so that identity failures can be exhibited.
class GammaCocycle {
public:
    explicit GammaCocycle(const GeneratorFamily& family);
    static GammaCocycle unchecked(std::span<const CylinderFunction> functions, std::size_t depth);

    std::size_t count() const { return f_.size(); }
    std::size_t depth() const { return space_.depth(); }
    const PrefixSpace& space() const { return space_; }
    const GroupTag& group() const { return group_; }
    // f_n at a depth-m index (zero for n > N)
    GroupValue f(std::size_t n, std::size_t idx) const;

    GroupValue eval_generator(std::size_t n, std::size_t idx) const;
    GroupValue eval_generator(std::size_t n, const Prefix& x) const;
    // a(g1 g2, x) = a(g1, g2 x) + a(g2, x), letters as given
    GroupValue eval_word(const GammaWord& w, std::size_t idx) const;

    GammaCocycle lift(std::size_t depth) const;

private:
    GammaCocycle(PrefixSpace space, GroupTag group, std::vector<std::vector<GroupValue>> f);

    PrefixSpace space_;
    GroupTag group_;
    std::vector<std::vector<GroupValue>> f_;
};

struct IdentityFailure {
    enum class Kind { commutation, involution } kind;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t index = 0;
    GroupValue lhs;
    GroupValue rhs;
};

struct IdentityCheck {
    bool ok = true;
    std::optional<IdentityFailure> failure;
};

// c(delta_n delta_k, x) = c(delta_k delta_n, x) and c(delta_n^2, x) = 0 for
// all n, k <= N and every depth-m prefix.
IdentityCheck verify_identities(const GammaCocycle& c, std::size_t depth);

class InconsistentOracle : public DomainError {
public:
    InconsistentOracle(std::size_t n, std::size_t idx, GroupValue expected, GroupValue got, const std::string& what)
        : DomainError(what), generator(n), index(idx), expected(std::move(expected)), got(std::move(got)) {}
    std::size_t generator;
    std::size_t index;
    GroupValue expected;
    GroupValue got;
};

using GeneratorOracle = std::function<GroupValue(std::size_t n, std::size_t idx)>;

// f_n read off c(delta_n, .) on {x_1 = ... = x_n = 0}, extended by
// invariance; the oracle is then checked against the recovered family at
// every generator and prefix.
GeneratorFamily recover_generators(const GeneratorOracle& oracle, std::size_t count, std::size_t depth,
                                   GroupTag group);

// psi_n(x) = -x_n f_n(x) - ... - x_1 f_1(x)
GroupValue psi(const GammaCocycle& c, std::size_t n, std::size_t idx);
GroupValue psi(const GeneratorFamily& family, std::size_t n, std::size_t idx);

struct TransferReport {
    GeneratorFamily rounded;      // dyadic-valued
    CylinderFunction transfer;    // g = -psi_N + psi_bar_N, rational-valued
    std::vector<Rational> radii;  // eps_1 .. eps_N
    Rational bound;               // sum of radii
};

// Rounds every f_n into the dyadics within eps_n and builds the transfer
// function g with alpha(gamma, x) = g(gamma x) + beta(gamma, x) - g(x).
TransferReport h_approximate(const GeneratorFamily& family, const NeighborhoodChain& chain);

struct CohomologyFailure {
    GammaWord word;
    std::size_t index = 0;
    GroupValue lhs;
    GroupValue rhs;
};

// alpha(gamma, x) - beta(gamma, x) = g(gamma x) - g(x) for every gamma in
// `words` and every prefix; values are compared in the rationals.
std::optional<CohomologyFailure> check_cohomologous(const GammaCocycle& alpha, const GammaCocycle& beta,
                                                    const CylinderFunction& transfer,
                                                    std::span<const GammaWord> words);

// All 2^count subsets of {1..count}.
std::vector<GammaWord> all_words(std::size_t count);

} // namespace cocycle
