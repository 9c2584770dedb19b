#include "cocycle/space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace cocycle {

namespace {

constexpr std::size_t max_space_size = std::size_t{1} << 40;

void check_distribution(const std::vector<Rational>& row, const char* what) {
    Rational s = 0;
    for (const auto& w : row) {
        if (w < 0)
            throw DomainError(std::string(what) + ": negative weight");
        s += w;
    }
    if (s != 1)
        throw DomainError(std::string(what) + ": weights sum to " + s.get_str() + ", expected 1");
}

} // namespace

// ---------------------------------------------------------------- BaseVector

BaseVector::BaseVector(std::vector<int> bases) : bases_(std::move(bases)) {
    for (int p : bases_)
        if (p < 2)
            throw DomainError("every base must be >= 2");
    cardinality(bases_.size());
}

BaseVector BaseVector::binary(std::size_t depth) { return BaseVector(std::vector<int>(depth, 2)); }

BaseVector BaseVector::parse(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("bad base vector '" + csv + "'");
        }
    }
    return BaseVector(std::move(out));
}

bool BaseVector::is_binary() const {
    return std::all_of(bases_.begin(), bases_.end(), [](int p) { return p == 2; });
}

std::size_t BaseVector::cardinality(std::size_t m) const {
    if (m > bases_.size())
        throw DomainError("depth " + std::to_string(m) + " exceeds base vector length " +
                          std::to_string(bases_.size()));
    std::size_t n = 1;
    for (std::size_t i = 0; i < m; ++i) {
        n *= static_cast<std::size_t>(bases_[i]);
        if (n > max_space_size)
            throw DomainError("prefix space too large");
    }
    return n;
}

BaseVector BaseVector::truncated(std::size_t m) const {
    if (m > bases_.size())
        throw DomainError("cannot truncate to a larger depth");
    return BaseVector(std::vector<int>(bases_.begin(), bases_.begin() + static_cast<std::ptrdiff_t>(m)));
}

bool BaseVector::compatible(const BaseVector& other) const {
    std::size_t n = std::min(depth(), other.depth());
    return std::equal(bases_.begin(), bases_.begin() + static_cast<std::ptrdiff_t>(n), other.bases_.begin());
}

// ---------------------------------------------------------------- Prefix

Prefix Prefix::parse(const std::string& text) {
    std::vector<int> digits;
    bool separated = text.find_first_of(" ,") != std::string::npos;
    if (separated) {
        std::string cleaned = text;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::stringstream ss(cleaned);
        int d;
        while (ss >> d)
            digits.push_back(d);
        if (!ss.eof())
            throw ParseError("bad prefix '" + text + "'");
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw ParseError("bad prefix '" + text + "'");
            digits.push_back(c - '0');
        }
    }
    return Prefix(std::move(digits));
}

std::string Prefix::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(digits_[i]);
    }
    return s;
}

// ---------------------------------------------------------------- PrefixSpace

PrefixSpace::PrefixSpace(BaseVector bases, std::size_t depth) : bases_(std::move(bases)), depth_(depth) {
    size_ = bases_.cardinality(depth_);
    strides_.resize(depth_);
    std::size_t s = 1;
    for (std::size_t i = 0; i < depth_; ++i) {
        strides_[i] = s;
        s *= static_cast<std::size_t>(bases_.base(i + 1));
    }
}

std::size_t PrefixSpace::index(const Prefix& x) const {
    if (x.depth() < depth_)
        throw DomainError("prefix depth " + std::to_string(x.depth()) + " below required depth " +
                          std::to_string(depth_));
    std::size_t idx = 0;
    for (std::size_t i = 1; i <= depth_; ++i) {
        int d = x.digit(i);
        if (d < 0 || d >= bases_.base(i))
            throw DomainError("digit " + std::to_string(d) + " out of range at coordinate " + std::to_string(i));
        idx += static_cast<std::size_t>(d) * strides_[i - 1];
    }
    return idx;
}

Prefix PrefixSpace::prefix(std::size_t idx) const {
    if (idx >= size_)
        throw DomainError("index out of range");
    std::vector<int> digits(depth_);
    for (std::size_t i = 0; i < depth_; ++i) {
        auto p = static_cast<std::size_t>(bases_.base(i + 1));
        digits[i] = static_cast<int>(idx % p);
        idx /= p;
    }
    return Prefix(std::move(digits));
}

int PrefixSpace::digit(std::size_t idx, std::size_t i) const {
    return static_cast<int>((idx / strides_.at(i - 1)) % static_cast<std::size_t>(bases_.base(i)));
}

std::size_t PrefixSpace::with_digit(std::size_t idx, std::size_t i, int d) const {
    int old = digit(idx, i);
    return idx - static_cast<std::size_t>(old) * strides_[i - 1] + static_cast<std::size_t>(d) * strides_[i - 1];
}

// ---------------------------------------------------------------- CylinderFunction

CylinderFunction::CylinderFunction(BaseVector bases, std::size_t depth, GroupTag group, std::vector<GroupValue> table)
    : bases_(std::move(bases)), depth_(depth), group_(group), table_(std::move(table)) {
    if (table_.size() != bases_.cardinality(depth_))
        throw DomainError("table length " + std::to_string(table_.size()) + " does not match depth " +
                          std::to_string(depth_));
    for (const auto& v : table_)
        if (!(v.tag() == group_))
            throw GroupMismatch("table entry of group " + v.tag().name() + " in a " + group_.name() + " function");
}

CylinderFunction CylinderFunction::constant(BaseVector bases, std::size_t depth, const GroupValue& v) {
    std::size_t n = bases.cardinality(depth);
    return CylinderFunction(std::move(bases), depth, v.tag(), std::vector<GroupValue>(n, v));
}

CylinderFunction CylinderFunction::tabulate(BaseVector bases, std::size_t depth, GroupTag group,
                                            const std::function<GroupValue(std::size_t)>& at_index) {
    std::size_t n = bases.cardinality(depth);
    std::vector<GroupValue> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        t.push_back(at_index(i));
    return CylinderFunction(std::move(bases), depth, group, std::move(t));
}

GroupValue CylinderFunction::eval(const Prefix& x) const {
    if (x.depth() < depth_)
        throw DomainError("prefix depth " + std::to_string(x.depth()) + " below function depth " +
                          std::to_string(depth_));
    return table_[space().index(x)];
}

CylinderFunction CylinderFunction::lift(std::size_t depth) const {
    if (depth < depth_)
        throw DomainError("cannot lift to a smaller depth");
    std::size_t n = bases_.cardinality(depth);
    std::vector<GroupValue> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        t.push_back(at(i));
    return CylinderFunction(bases_, depth, group_, std::move(t));
}

CylinderFunction CylinderFunction::lift(const PrefixSpace& space) const {
    if (!bases_.compatible(space.bases()))
        throw DomainError("incompatible base vectors");
    if (space.depth() < depth_)
        throw DomainError("cannot lift to a smaller depth");
    return CylinderFunction::tabulate(space.bases(), space.depth(), group_,
                                      [&](std::size_t i) { return at(i); });
}

PrefixSpace common_space(const CylinderFunction& f, const CylinderFunction& g) {
    if (!f.bases().compatible(g.bases()))
        throw DomainError("incompatible base vectors");
    const CylinderFunction& deeper = f.depth() >= g.depth() ? f : g;
    return PrefixSpace(deeper.bases(), deeper.depth());
}

namespace {

CylinderFunction combine(const CylinderFunction& f, const CylinderFunction& g,
                         GroupValue (*op)(const GroupValue&, const GroupValue&)) {
    if (!(f.group() == g.group()))
        throw GroupMismatch("group mismatch: " + f.group().name() + " vs " + g.group().name());
    PrefixSpace s = common_space(f, g);
    return CylinderFunction::tabulate(s.bases(), s.depth(), f.group(),
                                      [&](std::size_t i) { return op(f.at(i), g.at(i)); });
}

GroupValue sub(const GroupValue& a, const GroupValue& b) { return a - b; }

} // namespace

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& g) { return combine(f, g, add); }
CylinderFunction operator-(const CylinderFunction& f, const CylinderFunction& g) { return combine(f, g, sub); }

CylinderFunction operator-(const CylinderFunction& f) {
    return CylinderFunction::tabulate(f.bases(), f.depth(), f.group(), [&](std::size_t i) { return -f.at(i); });
}

// ---------------------------------------------------------------- MeasureSpec

MeasureSpec::MeasureSpec(Variant v) : value_(std::move(v)) { validate(); }

MeasureSpec MeasureSpec::uniform() { return MeasureSpec(Bernoulli{}); }

MeasureSpec MeasureSpec::bernoulli(std::vector<std::vector<Rational>> weights) {
    return MeasureSpec(Bernoulli{std::move(weights)});
}

MeasureSpec MeasureSpec::markov(std::vector<Rational> initial, std::vector<std::vector<Rational>> transition) {
    return MeasureSpec(Markov{std::move(initial), std::move(transition)});
}

MeasureSpec MeasureSpec::dirac(Prefix point) { return MeasureSpec(Dirac{std::move(point)}); }

MeasureSpec MeasureSpec::mixture(std::vector<Rational> weights, std::vector<MeasureSpec> parts) {
    return MeasureSpec(Mixture{std::move(weights), std::move(parts)});
}

void MeasureSpec::validate() const {
    if (auto b = std::get_if<Bernoulli>(&value_)) {
        for (const auto& row : b->weights)
            check_distribution(row, "bernoulli");
    } else if (auto m = std::get_if<Markov>(&value_)) {
        check_distribution(m->initial, "markov initial");
        if (m->transition.size() != m->initial.size())
            throw DomainError("markov: transition matrix must be square of the alphabet size");
        for (const auto& row : m->transition) {
            if (row.size() != m->initial.size())
                throw DomainError("markov: transition matrix must be square of the alphabet size");
            check_distribution(row, "markov transition row");
        }
    } else if (auto d = std::get_if<Dirac>(&value_)) {
        for (int x : d->point.digits())
            if (x < 0)
                throw DomainError("dirac: negative digit");
    } else {
        const auto& mix = std::get<Mixture>(value_);
        if (mix.weights.size() != mix.parts.size() || mix.parts.empty())
            throw DomainError("mixture: one weight per component required");
        check_distribution(mix.weights, "mixture");
    }
}

Rational MeasureSpec::cylinder_mass(const PrefixSpace& space, std::size_t idx) const {
    const std::size_t m = space.depth();
    if (auto b = std::get_if<Bernoulli>(&value_)) {
        Rational mass = 1;
        for (std::size_t i = 1; i <= m; ++i) {
            int d = space.digit(idx, i);
            if (b->weights.empty()) {
                mass /= space.bases().base(i);
                continue;
            }
            const auto& row = b->weights[std::min(i - 1, b->weights.size() - 1)];
            if (row.size() != static_cast<std::size_t>(space.bases().base(i)))
                throw DomainError("bernoulli: weight row length does not match base at coordinate " +
                                  std::to_string(i));
            mass *= row[static_cast<std::size_t>(d)];
        }
        return mass;
    }
    if (auto mk = std::get_if<Markov>(&value_)) {
        for (std::size_t i = 1; i <= m; ++i)
            if (static_cast<std::size_t>(space.bases().base(i)) != mk->initial.size())
                throw DomainError("markov: every base must equal the alphabet size");
        if (m == 0)
            return 1;
        Rational mass = mk->initial[static_cast<std::size_t>(space.digit(idx, 1))];
        for (std::size_t i = 2; i <= m; ++i)
            mass *= mk->transition[static_cast<std::size_t>(space.digit(idx, i - 1))]
                                  [static_cast<std::size_t>(space.digit(idx, i))];
        return mass;
    }
    if (auto d = std::get_if<Dirac>(&value_)) {
        for (std::size_t i = 1; i <= m; ++i)
            if (space.digit(idx, i) != d->point.digit(i))
                return 0;
        return 1;
    }
    const auto& mix = std::get<Mixture>(value_);
    Rational mass = 0;
    for (std::size_t c = 0; c < mix.parts.size(); ++c)
        mass += mix.weights[c] * mix.parts[c].cylinder_mass(space, idx);
    return mass;
}

std::vector<Rational> MeasureSpec::masses(const PrefixSpace& space) const {
    std::vector<Rational> out(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        out[i] = cylinder_mass(space, i);
    return out;
}

Rational measure_of_cylinder_set(const MeasureSpec& mu, const PrefixSpace& space, std::span<const std::size_t> set) {
    std::vector<std::size_t> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Rational total = 0;
    for (std::size_t idx : sorted) {
        if (idx >= space.size())
            throw DomainError("cylinder index out of range");
        total += mu.cylinder_mass(space, idx);
    }
    return total;
}

MassTable::MassTable(const MeasureSpec& mu, PrefixSpace space) : space_(std::move(space)), masses_(mu.masses(space_)) {}

MassTable::MassTable(PrefixSpace space, std::vector<Rational> masses)
    : space_(std::move(space)), masses_(std::move(masses)) {
    if (masses_.size() != space_.size())
        throw DomainError("mass table length mismatch");
}

// ---------------------------------------------------------------- PrefixMap

PrefixMap::PrefixMap(PrefixSpace space, std::vector<std::size_t> image)
    : space_(std::move(space)), image_(std::move(image)) {
    if (image_.size() != space_.size())
        throw DomainError("map length does not match the prefix space");
    std::vector<char> hit(image_.size(), 0);
    for (std::size_t y : image_) {
        if (y >= image_.size() || hit[y])
            throw DomainError("map is not a bijection of the prefix space");
        hit[y] = 1;
    }
}

PrefixMap PrefixMap::identity(PrefixSpace space) {
    std::vector<std::size_t> img(space.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = i;
    return PrefixMap(std::move(space), std::move(img));
}

PrefixMap PrefixMap::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        inv[image_[i]] = i;
    return PrefixMap(space_, std::move(inv));
}

PrefixMap operator*(const PrefixMap& a, const PrefixMap& b) {
    if (!(a.space_ == b.space_))
        throw DomainError("maps act on different prefix spaces");
    std::vector<std::size_t> img(b.image_.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = a.image_[b.image_[i]];
    return PrefixMap(a.space_, std::move(img));
}

MassTable pushforward_inverse(const MassTable& mu, const PrefixMap& s) {
    if (!(mu.space() == s.space()))
        throw DomainError("measure and map live on different prefix spaces");
    std::vector<Rational> out(mu.masses().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mu[s(i)];
    return MassTable(mu.space(), std::move(out));
}

// ---------------------------------------------------------------- functionals

namespace {

void check_groups(const CylinderFunction& f, const CylinderFunction& g) {
    if (!(f.group() == g.group()))
        throw GroupMismatch("group mismatch: " + f.group().name() + " vs " + g.group().name());
}

void check_table(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu) {
    check_groups(f, g);
    PrefixSpace need = common_space(f, g);
    if (mu.space().depth() < need.depth() || !need.bases().compatible(mu.space().bases()))
        throw DomainError("mass table is coarser than the functions");
}

template <typename Integrand>
Scalar integrate(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu, Integrand integrand) {
    check_table(f, g, mu);
    Scalar total(0);
    for (std::size_t i = 0; i < mu.space().size(); ++i) {
        if (mu[i] == 0)
            continue;
        total = total + Scalar(mu[i]) * integrand(metric(f.at(i), g.at(i)));
    }
    return total;
}

} // namespace

Scalar exceedance_measure(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu,
                          const Scalar& eps) {
    return integrate(f, g, mu, [&](const Scalar& t) { return t > eps ? Scalar(1) : Scalar(0); });
}

Scalar exceedance_measure(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu,
                          const Scalar& eps) {
    check_groups(f, g);
    return exceedance_measure(f, g, MassTable(mu, common_space(f, g)), eps);
}

bool tau1_membership(const CylinderFunction& f, const CylinderFunction& g, std::span<const MeasureSpec> mus,
                     const Scalar& eps, const Scalar& delta) {
    if (!(Scalar(0) < eps) || !(Scalar(0) < delta))
        throw DomainError("eps and delta must be positive");
    check_groups(f, g);
    for (const auto& mu : mus)
        if (!(exceedance_measure(f, g, mu, eps) < delta))
            return false;
    return true;
}

bool tau2_membership(const CylinderFunction& f, const CylinderFunction& g, std::span<const MeasureSpec> mus,
                     const Scalar& eps) {
    return tau1_membership(f, g, mus, eps, eps);
}

Scalar tau3_functional(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu) {
    return integrate(f, g, mu, [](const Scalar& t) { return min(t, Scalar(1)); });
}

Scalar tau3_functional(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu) {
    check_groups(f, g);
    return tau3_functional(f, g, MassTable(mu, common_space(f, g)));
}

Scalar tau4_functional(const CylinderFunction& f, const CylinderFunction& g, const MassTable& mu) {
    return integrate(f, g, mu, [](const Scalar& t) { return t / (Scalar(1) + t); });
}

Scalar tau4_functional(const CylinderFunction& f, const CylinderFunction& g, const MeasureSpec& mu) {
    check_groups(f, g);
    return tau4_functional(f, g, MassTable(mu, common_space(f, g)));
}

Rational aut_distance(const PrefixMap& s, const PrefixMap& t, const MeasureSpec& mu, DisagreementSet set) {
    if (!(s.space() == t.space()))
        throw DomainError("automorphisms act on different prefix spaces");
    const PrefixSpace& space = s.space();
    std::vector<char> in(space.size(), 0);
    for (std::size_t i = 0; i < space.size(); ++i)
        if (s(i) != t(i))
            in[i] = 1;
    if (set == DisagreementSet::with_inverse) {
        PrefixMap si = s.inverse(), ti = t.inverse();
        for (std::size_t i = 0; i < space.size(); ++i)
            if (si(i) != ti(i))
                in[i] = 1;
    }
    Rational total = 0;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (in[i])
            total += mu.cylinder_mass(space, i);
    return total;
}

} // namespace cocycle
