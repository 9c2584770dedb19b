#pragma once

#include <optional>
#include <vector>

#include "cocycle/gamma.hpp"
#include "cocycle/zcocycle.hpp"

namespace cocycle {

// phi does not carry the acting system onto a system of the required type.
class ConjugationMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

// A cocycle moved along a prefix permutation phi: the action becomes
// phi T phi^-1 and a'(S^j, y) = a(T^j, phi^-1 y).
struct TransportedZCocycle {
    PrefixMap phi;
    CyclicCocycle cocycle;
};

TransportedZCocycle transport(const ZCocycle& a, const PrefixMap& phi);

// c -> c o phi^-1
CoboundaryCertificate transport_certificate(const CoboundaryCertificate& cert, const PrefixMap& phi);

// Same as transport, but requires phi T phi^-1 = T so that the result is
// again a cocycle of the odometer itself.
ZCocycle transport_onto_model(const ZCocycle& a, const PrefixMap& phi);

// A Gamma-cocycle moved along phi: delta'_n = phi delta_n phi^-1 and
// c'(delta'_n, y) = c(delta_n, phi^-1 y).
class TransportedGammaCocycle {
public:
    TransportedGammaCocycle(const GammaCocycle& c, PrefixMap phi);

    const PrefixMap& phi() const { return phi_; }
    std::size_t count() const { return count_; }
    const PrefixMap& action(std::size_t n) const { return actions_.at(n - 1); }

    GroupValue eval_generator(std::size_t n, std::size_t idx) const;
    // letters act right to left
    GroupValue eval_word(const GammaWord& w, std::size_t idx) const;

private:
    PrefixMap phi_;
    PrefixMap phi_inv_;
    std::size_t count_;
    GroupTag group_;
    std::vector<PrefixMap> actions_;
    std::vector<std::vector<GroupValue>> values_;
};

TransportedGammaCocycle transport(const GammaCocycle& c, const PrefixMap& phi);

// Commutation and involution identities of the conjugated generators.
IdentityCheck verify_identities(const TransportedGammaCocycle& c);

} // namespace cocycle
