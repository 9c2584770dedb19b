#include "cocycle/transport.hpp"

namespace cocycle {

namespace {

void check_space(const PrefixMap& phi, const PrefixSpace& space) {
    if (!(phi.space() == space))
        throw DomainError("phi acts on a different prefix space");
}

} // namespace

TransportedZCocycle transport(const ZCocycle& a, const PrefixMap& phi) {
    check_space(phi, a.model().space());
    PrefixMap inv = phi.inverse();
    PrefixMap s = phi * a.model().as_map() * inv;
    const auto& f = a.cyclic().generator();
    std::vector<GroupValue> g(f.size());
    for (std::size_t y = 0; y < g.size(); ++y)
        g[y] = f[inv(y)];
    return TransportedZCocycle{phi, CyclicCocycle(s, a.group(), std::move(g))};
}

CoboundaryCertificate transport_certificate(const CoboundaryCertificate& cert, const PrefixMap& phi) {
    PrefixSpace space = cert.transfer.space();
    check_space(phi, space);
    PrefixMap inv = phi.inverse();
    std::vector<GroupValue> c(space.size());
    for (std::size_t y = 0; y < c.size(); ++y)
        c[y] = cert.transfer.at(inv(y));
    return CoboundaryCertificate{CylinderFunction(space.bases(), space.depth(), cert.transfer.group(), std::move(c)),
                                 cert.spread};
}

ZCocycle transport_onto_model(const ZCocycle& a, const PrefixMap& phi) {
    check_space(phi, a.model().space());
    PrefixMap t = a.model().as_map();
    if (!(phi * t == t * phi))
        throw ConjugationMismatch("phi T phi^-1 is not the odometer");
    auto moved = transport(a, phi);
    const PrefixSpace& s = a.model().space();
    return ZCocycle(a.model(), CylinderFunction(s.bases(), s.depth(), a.group(), moved.cocycle.generator()));
}

TransportedGammaCocycle::TransportedGammaCocycle(const GammaCocycle& c, PrefixMap phi)
    : phi_(std::move(phi)), count_(c.count()), group_(c.group()) {
    check_space(phi_, c.space());
    phi_inv_ = phi_.inverse();
    for (std::size_t n = 1; n <= count_; ++n) {
        actions_.push_back(phi_ * delta_map(c.space(), n) * phi_inv_);
        std::vector<GroupValue> v(c.space().size());
        for (std::size_t y = 0; y < v.size(); ++y)
            v[y] = c.eval_generator(n, phi_inv_(y));
        values_.push_back(std::move(v));
    }
}

GroupValue TransportedGammaCocycle::eval_generator(std::size_t n, std::size_t idx) const {
    if (n < 1 || n > count_)
        throw DomainError("generator index " + std::to_string(n) + " out of range");
    return values_[n - 1][idx];
}

GroupValue TransportedGammaCocycle::eval_word(const GammaWord& w, std::size_t idx) const {
    GroupValue sum = GroupValue::zero(group_);
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        sum += eval_generator(*it, idx);
        idx = action(*it)(idx);
    }
    return sum;
}

TransportedGammaCocycle transport(const GammaCocycle& c, const PrefixMap& phi) { return TransportedGammaCocycle(c, phi); }

IdentityCheck verify_identities(const TransportedGammaCocycle& c) {
    const std::size_t size = c.phi().space().size();
    for (std::size_t idx = 0; idx < size; ++idx)
        for (std::size_t n = 1; n <= c.count(); ++n) {
            GroupValue twice = c.eval_word(GammaWord({n, n}), idx);
            if (!twice.is_zero())
                return {false, IdentityFailure{IdentityFailure::Kind::involution, n, n, idx, twice,
                                               GroupValue::zero(twice.tag())}};
            for (std::size_t k = n + 1; k <= c.count(); ++k) {
                GroupValue lhs = c.eval_word(GammaWord({n, k}), idx);
                GroupValue rhs = c.eval_word(GammaWord({k, n}), idx);
                if (!(lhs == rhs))
                    return {false, IdentityFailure{IdentityFailure::Kind::commutation, n, k, idx, lhs, rhs}};
            }
        }
    return {};
}

} // namespace cocycle
