#include "cocycle/gamma.hpp"

#include <algorithm>
#include <map>

namespace cocycle {

namespace {

PrefixSpace binary_space(std::size_t depth) { return PrefixSpace(BaseVector::binary(depth), depth); }

int bit(std::size_t idx, std::size_t i) { return static_cast<int>((idx >> (i - 1)) & 1U); }

std::size_t flip(std::size_t idx, std::size_t i) { return idx ^ (std::size_t{1} << (i - 1)); }

} // namespace

// ---------------------------------------------------------------- GeneratorFamily

GeneratorFamily::GeneratorFamily(std::size_t depth, GroupTag group, std::vector<std::vector<GroupValue>> tables)
    : depth_(depth), group_(group), tables_(std::move(tables)) {
    if (tables_.size() > depth_)
        throw DomainError("family of " + std::to_string(tables_.size()) + " generators needs depth >= " +
                          std::to_string(tables_.size()));
    binary_space(depth_);
    for (std::size_t n = 1; n <= tables_.size(); ++n) {
        const auto& t = tables_[n - 1];
        if (t.size() != (std::size_t{1} << (depth_ - n)))
            throw DomainError("table " + std::to_string(n) + " must have 2^(depth - " + std::to_string(n) + ") entries");
        for (const auto& v : t)
            if (!(v.tag() == group_))
                throw GroupMismatch("generator value of group " + v.tag().name() + " in a " + group_.name() +
                                    " family");
    }
}

GeneratorFamily GeneratorFamily::from_functions(std::span<const CylinderFunction> functions, std::size_t depth) {
    if (functions.empty())
        throw DomainError("from_functions needs at least one function");
    GroupTag group = functions.front().group();
    PrefixSpace space = binary_space(depth);
    std::vector<std::vector<GroupValue>> tables;
    for (std::size_t n = 1; n <= functions.size(); ++n) {
        const CylinderFunction& f = functions[n - 1];
        if (!f.bases().is_binary())
            throw DomainError("generators live on {0,1}^m");
        if (!(f.group() == group))
            throw GroupMismatch("generators in different groups");
        CylinderFunction full = f.lift(space);
        for (std::size_t idx = 0; idx < space.size(); ++idx)
            for (std::size_t k = 1; k <= n && k <= depth; ++k)
                if (!(full.at(idx) == full.at(flip(idx, k))))
                    throw InvarianceViolation(n, idx, k,
                                              "f_" + std::to_string(n) + " is not invariant under delta_" +
                                                  std::to_string(k) + " at " + space.prefix(idx).to_string());
        if (n > depth)
            throw DomainError("more generators than the depth");
        std::vector<GroupValue> t(std::size_t{1} << (depth - n));
        for (std::size_t r = 0; r < t.size(); ++r)
            t[r] = full.at(r << n);
        tables.push_back(std::move(t));
    }
    return GeneratorFamily(depth, group, std::move(tables));
}

GeneratorFamily GeneratorFamily::zero(std::size_t count, std::size_t depth, GroupTag group) {
    std::vector<std::vector<GroupValue>> tables;
    for (std::size_t n = 1; n <= count; ++n)
        tables.emplace_back(std::size_t{1} << (depth - std::min(n, depth)), GroupValue::zero(group));
    return GeneratorFamily(depth, group, std::move(tables));
}

GroupValue GeneratorFamily::value(std::size_t n, std::size_t idx) const {
    if (n < 1 || n > depth_)
        throw DomainError("generator index " + std::to_string(n) + " out of range");
    if (n > tables_.size())
        return GroupValue::zero(group_);
    return tables_[n - 1][idx >> n];
}

CylinderFunction GeneratorFamily::function(std::size_t n) const {
    return CylinderFunction::tabulate(BaseVector::binary(depth_), depth_, group_,
                                      [&](std::size_t i) { return value(n, i); });
}

// ---------------------------------------------------------------- GammaWord

GammaWord GammaWord::from_mask(unsigned long mask) {
    std::vector<std::size_t> letters;
    for (std::size_t n = 1; mask != 0; ++n, mask >>= 1)
        if (mask & 1UL)
            letters.push_back(n);
    return GammaWord(std::move(letters));
}

GammaWord GammaWord::reduced() const {
    std::map<std::size_t, int> parity;
    for (std::size_t n : letters_)
        parity[n] ^= 1;
    std::vector<std::size_t> out;
    for (auto [n, p] : parity)
        if (p)
            out.push_back(n);
    return GammaWord(std::move(out));
}

std::size_t GammaWord::apply(const PrefixSpace& space, std::size_t idx) const {
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        idx = delta_apply(space, *it, idx);
    return idx;
}

// ---------------------------------------------------------------- GammaCocycle

GammaCocycle::GammaCocycle(PrefixSpace space, GroupTag group, std::vector<std::vector<GroupValue>> f)
    : space_(std::move(space)), group_(group), f_(std::move(f)) {}

GammaCocycle::GammaCocycle(const GeneratorFamily& family)
    : space_(binary_space(family.depth())), group_(family.group()) {
    for (std::size_t n = 1; n <= family.count(); ++n)
        f_.push_back(family.function(n).table());
}

GammaCocycle GammaCocycle::unchecked(std::span<const CylinderFunction> functions, std::size_t depth) {
    if (functions.empty())
        throw DomainError("unchecked cocycle needs at least one function");
    if (functions.size() > depth)
        throw DomainError("more generators than the depth");
    PrefixSpace space = binary_space(depth);
    std::vector<std::vector<GroupValue>> f;
    for (const auto& fn : functions) {
        if (!(fn.group() == functions.front().group()))
            throw GroupMismatch("generators in different groups");
        f.push_back(fn.lift(space).table());
    }
    return GammaCocycle(space, functions.front().group(), std::move(f));
}

GroupValue GammaCocycle::f(std::size_t n, std::size_t idx) const {
    if (n < 1 || n > depth())
        throw DomainError("generator index " + std::to_string(n) + " out of range 1.." + std::to_string(depth()));
    if (n > f_.size())
        return GroupValue::zero(group_);
    return f_[n - 1][idx];
}

GroupValue GammaCocycle::eval_generator(std::size_t n, std::size_t idx) const {
    if (n < 1 || n > depth())
        throw DomainError("generator index " + std::to_string(n) + " out of range 1.." + std::to_string(depth()));
    std::size_t moved = flip(idx, n);
    GroupValue sum = bit(idx, n) == 0 ? f(n, idx) : -f(n, idx);
    for (std::size_t i = 1; i < n && i <= f_.size(); ++i)
        if (bit(idx, i))
            sum += f(i, moved) - f(i, idx);
    return sum;
}

GroupValue GammaCocycle::eval_generator(std::size_t n, const Prefix& x) const {
    return eval_generator(n, space_.index(x));
}

GroupValue GammaCocycle::eval_word(const GammaWord& w, std::size_t idx) const {
    GroupValue sum = GroupValue::zero(group_);
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        sum += eval_generator(*it, idx);
        idx = flip(idx, *it);
    }
    return sum;
}

GammaCocycle GammaCocycle::lift(std::size_t depth) const {
    if (depth < this->depth())
        throw DomainError("cannot lift to a smaller depth");
    PrefixSpace space = binary_space(depth);
    std::vector<std::vector<GroupValue>> f;
    for (const auto& t : f_) {
        std::vector<GroupValue> big(space.size());
        for (std::size_t i = 0; i < big.size(); ++i)
            big[i] = t[i % t.size()];
        f.push_back(std::move(big));
    }
    return GammaCocycle(space, group_, std::move(f));
}

IdentityCheck verify_identities(const GammaCocycle& c0, std::size_t depth) {
    if (depth < c0.depth())
        throw DomainError("verification depth below the cocycle depth");
    GammaCocycle c = depth == c0.depth() ? c0 : c0.lift(depth);
    const std::size_t count = c.count();
    for (std::size_t idx = 0; idx < c.space().size(); ++idx) {
        for (std::size_t n = 1; n <= count; ++n) {
            GroupValue twice = c.eval_generator(n, flip(idx, n)) + c.eval_generator(n, idx);
            if (!twice.is_zero())
                return {false, IdentityFailure{IdentityFailure::Kind::involution, n, n, idx, twice,
                                               GroupValue::zero(c.group())}};
            for (std::size_t k = n + 1; k <= count; ++k) {
                GroupValue lhs = c.eval_generator(n, flip(idx, k)) + c.eval_generator(k, idx);
                GroupValue rhs = c.eval_generator(k, flip(idx, n)) + c.eval_generator(n, idx);
                if (!(lhs == rhs))
                    return {false, IdentityFailure{IdentityFailure::Kind::commutation, n, k, idx, lhs, rhs}};
            }
        }
    }
    return {};
}

GeneratorFamily recover_generators(const GeneratorOracle& oracle, std::size_t count, std::size_t depth,
                                   GroupTag group) {
    if (count > depth)
        throw DomainError("more generators than the depth");
    std::vector<std::vector<GroupValue>> tables;
    for (std::size_t n = 1; n <= count; ++n) {
        std::vector<GroupValue> t(std::size_t{1} << (depth - n));
        for (std::size_t r = 0; r < t.size(); ++r) {
            t[r] = oracle(n, r << n);
            if (!(t[r].tag() == group))
                throw GroupMismatch("oracle returned a value of group " + t[r].tag().name());
        }
        tables.push_back(std::move(t));
    }
    GeneratorFamily family(depth, group, std::move(tables));
    GammaCocycle c(family);
    for (std::size_t n = 1; n <= count; ++n)
        for (std::size_t idx = 0; idx < c.space().size(); ++idx) {
            GroupValue expected = c.eval_generator(n, idx);
            GroupValue got = oracle(n, idx);
            if (!(expected == got))
                throw InconsistentOracle(n, idx, expected, got,
                                         "oracle disagrees with the invariant extension at generator " +
                                             std::to_string(n) + ", prefix " + c.space().prefix(idx).to_string());
        }
    return family;
}

GroupValue psi(const GammaCocycle& c, std::size_t n, std::size_t idx) {
    GroupValue s = GroupValue::zero(c.group());
    for (std::size_t i = 1; i <= n; ++i)
        if (bit(idx, i))
            s -= c.f(i, idx);
    return s;
}

GroupValue psi(const GeneratorFamily& family, std::size_t n, std::size_t idx) {
    GroupValue s = GroupValue::zero(family.group());
    for (std::size_t i = 1; i <= n; ++i)
        if (bit(idx, i))
            s -= family.value(i, idx);
    return s;
}

TransferReport h_approximate(const GeneratorFamily& family, const NeighborhoodChain& chain) {
    GroupKind kind = family.group().kind;
    if (kind != GroupKind::rational && kind != GroupKind::integer && kind != GroupKind::dyadic)
        throw UnsupportedGroup("h_approximate needs rational values, got " + family.group().name());
    const std::size_t count = family.count();
    const std::size_t depth = family.depth();

    std::vector<std::vector<GroupValue>> rounded;
    std::vector<Rational> radii;
    for (std::size_t n = 1; n <= count; ++n) {
        std::vector<GroupValue> t;
        for (const auto& v : family.tables()[n - 1])
            t.push_back(round_to_dense(v, static_cast<unsigned>(n), chain));
        rounded.push_back(std::move(t));
        radii.push_back(chain.radius(static_cast<unsigned>(n)));
    }
    GeneratorFamily bar(depth, GroupTag::dyadic(), std::move(rounded));

    const GroupTag rat = GroupTag::rational();
    CylinderFunction g = CylinderFunction::tabulate(BaseVector::binary(depth), depth, rat, [&](std::size_t idx) {
        // -psi_N(x) + psi_bar_N(x)
        return -embed(psi(family, count, idx), rat) + embed(psi(bar, count, idx), rat);
    });
    Rational bound = chain.total_radius(static_cast<unsigned>(count));
    return TransferReport{std::move(bar), std::move(g), std::move(radii), std::move(bound)};
}

std::optional<CohomologyFailure> check_cohomologous(const GammaCocycle& alpha, const GammaCocycle& beta,
                                                    const CylinderFunction& transfer,
                                                    std::span<const GammaWord> words) {
    if (alpha.depth() != beta.depth() || transfer.depth() > alpha.depth())
        throw DomainError("cocycles and transfer live at different depths");
    const GroupTag rat = GroupTag::rational();
    const PrefixSpace& space = alpha.space();
    for (const auto& w : words) {
        for (std::size_t idx = 0; idx < space.size(); ++idx) {
            GroupValue lhs = embed(alpha.eval_word(w, idx), rat) - embed(beta.eval_word(w, idx), rat);
            GroupValue rhs = embed(transfer.at(w.apply(space, idx)), rat) - embed(transfer.at(idx), rat);
            if (!(lhs == rhs))
                return CohomologyFailure{w, idx, lhs, rhs};
        }
    }
    return std::nullopt;
}

std::vector<GammaWord> all_words(std::size_t count) {
    std::vector<GammaWord> out;
    for (unsigned long mask = 0; mask < (1UL << count); ++mask)
        out.push_back(GammaWord::from_mask(mask));
    return out;
}

} // namespace cocycle
