#include "cocycle/dynamics.hpp"

#include <algorithm>
#include <map>

namespace cocycle {

OdometerModel::OdometerModel(BaseVector bases) : space_(std::move(bases)) {
    if (space_.depth() == 0)
        throw DomainError("odometer depth must be >= 1");
}

Prefix OdometerModel::step(const Prefix& x) const {
    if (x.depth() != depth())
        throw DomainError("prefix depth " + std::to_string(x.depth()) + " does not match model depth " +
                          std::to_string(depth()));
    std::vector<int> d = x.digits();
    for (std::size_t i = 0; i < d.size(); ++i) {
        int p = bases().base(i + 1);
        if (d[i] < 0 || d[i] >= p)
            throw DomainError("digit out of range");
        if (d[i] != p - 1) {
            ++d[i];
            return Prefix(std::move(d));
        }
        d[i] = 0;
    }
    return Prefix(std::move(d));
}

std::size_t OdometerModel::shift(std::size_t idx, std::int64_t k) const {
    auto n = static_cast<std::int64_t>(size());
    std::int64_t r = (static_cast<std::int64_t>(idx) + k % n) % n;
    if (r < 0)
        r += n;
    return static_cast<std::size_t>(r);
}

PrefixMap OdometerModel::as_map() const { return power(1); }

PrefixMap OdometerModel::power(std::int64_t k) const {
    std::vector<std::size_t> img(size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = shift(i, k);
    return PrefixMap(space_, std::move(img));
}

// ---------------------------------------------------------------- delta

Prefix delta_apply(std::size_t n, const Prefix& x) {
    if (n < 1 || n > x.depth())
        throw DomainError("delta index " + std::to_string(n) + " out of range for depth " + std::to_string(x.depth()));
    std::vector<int> d = x.digits();
    if (d[n - 1] != 0 && d[n - 1] != 1)
        throw DomainError("delta acts on binary digits only");
    d[n - 1] ^= 1;
    return Prefix(std::move(d));
}

std::size_t delta_apply(const PrefixSpace& space, std::size_t n, std::size_t idx) {
    if (n < 1 || n > space.depth())
        throw DomainError("delta index " + std::to_string(n) + " out of range for depth " +
                          std::to_string(space.depth()));
    if (space.bases().base(n) != 2)
        throw DomainError("delta acts on binary coordinates only");
    return idx ^ space.stride(n);
}

PrefixMap delta_map(const PrefixSpace& space, std::size_t n) {
    std::vector<std::size_t> img(space.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = delta_apply(space, n, i);
    return PrefixMap(space, std::move(img));
}

// ---------------------------------------------------------------- full group

FullGroupElement::FullGroupElement(OdometerModel model, std::vector<std::int64_t> jumps)
    : model_(std::move(model)), jumps_(std::move(jumps)) {
    if (jumps_.size() != model_.size())
        throw DomainError("jump table length does not match the model");
    image_.resize(jumps_.size());
    std::vector<char> hit(jumps_.size(), 0);
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        image_[i] = model_.shift(i, jumps_[i]);
        if (hit[image_[i]])
            throw DomainError("jump function does not define a bijection");
        hit[image_[i]] = 1;
    }
}

namespace {

std::vector<std::int64_t> jumps_from(const OdometerModel& model, const CylinderFunction& jump) {
    if (!(jump.group() == GroupTag::integer()))
        throw GroupMismatch("jump function must be integer-valued");
    CylinderFunction lifted = jump.lift(model.space());
    std::vector<std::int64_t> out(model.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Integer& v = lifted.at(i).as_integer();
        if (!v.fits_slong_p())
            throw DomainError("jump out of range");
        out[i] = v.get_si();
    }
    return out;
}

} // namespace

FullGroupElement::FullGroupElement(OdometerModel model, const CylinderFunction& jump)
    : FullGroupElement(model, jumps_from(model, jump)) {}

FullGroupElement FullGroupElement::identity(const OdometerModel& model) {
    return FullGroupElement(model, std::vector<std::int64_t>(model.size(), 0));
}

FullGroupElement FullGroupElement::power_of_odometer(const OdometerModel& model, std::int64_t k) {
    return FullGroupElement(model, std::vector<std::int64_t>(model.size(), k));
}

FullGroupElement FullGroupElement::compose(const FullGroupElement& other) const {
    if (!(model_ == other.model_))
        throw DomainError("full-group elements over different models");
    std::vector<std::int64_t> j(jumps_.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        j[i] = jumps_[other.image_[i]] + other.jumps_[i];
    return FullGroupElement(model_, std::move(j));
}

FullGroupElement FullGroupElement::inverse() const {
    std::vector<std::int64_t> j(jumps_.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        j[image_[i]] = -jumps_[i];
    return FullGroupElement(model_, std::move(j));
}

FullGroupElement FullGroupElement::power(std::int64_t n) const {
    FullGroupElement base = n < 0 ? inverse() : *this;
    FullGroupElement out = identity(model_);
    for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i)
        out = base.compose(out);
    return out;
}

PrefixMap FullGroupElement::as_map() const { return PrefixMap(model_.space(), image_); }

CylinderFunction FullGroupElement::jump_function() const {
    return CylinderFunction::tabulate(model_.bases(), model_.depth(), GroupTag::integer(),
                                      [&](std::size_t i) { return GroupValue::integer(Integer(static_cast<long>(jumps_[i]))); });
}

std::int64_t FullGroupElement::cycle_jump(std::size_t idx) const {
    std::int64_t total = 0;
    std::size_t y = idx;
    do {
        total += jumps_[y];
        y = image_[y];
    } while (y != idx);
    return total;
}

// ---------------------------------------------------------------- towers

TowerDecomposition::TowerDecomposition(const OdometerModel& model, std::span<const std::size_t> marker) {
    const std::size_t n = model.size();
    in_marker_.assign(n, 0);
    for (std::size_t a : marker) {
        if (a >= n)
            throw DomainError("marker index out of range");
        in_marker_[a] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (in_marker_[i])
            marker_.push_back(i);
    if (marker_.empty())
        throw DomainError("marker set is empty");

    level_.assign(n, 0);
    height_.assign(n, 0);
    base_.assign(n, 0);
    std::map<std::size_t, std::vector<std::size_t>> by_height;
    for (std::size_t a : marker_) {
        std::size_t h = 1;
        std::size_t y = model.step(a);
        while (!in_marker_[y]) {
            y = model.step(y);
            ++h;
        }
        by_height[h].push_back(a);
        y = a;
        for (std::size_t t = 0; t < h; ++t) {
            level_[y] = t;
            height_[y] = h;
            base_[y] = a;
            y = model.step(y);
        }
    }
    for (auto& [h, bases] : by_height)
        towers_.push_back(Tower{h, std::move(bases)});
}

bool TowerDecomposition::verify(const OdometerModel& model) const {
    std::vector<int> covered(model.size(), 0);
    for (const auto& tower : towers_) {
        for (std::size_t b : tower.base) {
            if (!in_marker_[b])
                return false;
            std::size_t y = b;
            for (std::size_t t = 0; t < tower.height; ++t) {
                if (t > 0 && in_marker_[y])
                    return false;
                ++covered[y];
                y = model.step(y);
            }
            if (!in_marker_[y])
                return false;
        }
    }
    return std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
}

TowerDecomposition towers_from_marker(const OdometerModel& model, std::span<const std::size_t> marker) {
    return TowerDecomposition(model, marker);
}

// ---------------------------------------------------------------- markers

MarkerSequence::MarkerSequence(OdometerModel model) : model_(std::move(model)) {}

void MarkerSequence::check(std::size_t n) const {
    if (n < 1 || n > count())
        throw DomainError("marker index " + std::to_string(n) + " out of range 1.." + std::to_string(count()));
}

bool MarkerSequence::in_marker(std::size_t n, std::size_t idx) const {
    check(n);
    return idx % model_.space().stride(n + 1) == 0;
}

bool MarkerSequence::in_top(std::size_t n, std::size_t idx) const {
    check(n);
    std::size_t block = model_.space().stride(n + 1);
    return idx % block == block - 1;
}

bool MarkerSequence::in_stable(std::size_t n, std::size_t idx) const {
    check(n);
    return stabilization_index(idx) <= n;
}

std::vector<std::size_t> MarkerSequence::marker(std::size_t n) const {
    check(n);
    std::vector<std::size_t> out;
    std::size_t block = model_.space().stride(n + 1);
    for (std::size_t i = 0; i < model_.size(); i += block)
        out.push_back(i);
    return out;
}

std::size_t MarkerSequence::stabilization_index(std::size_t idx) const {
    const PrefixSpace& s = model_.space();
    std::size_t run = 0;
    while (run < s.depth() && s.digit(idx, run + 1) == s.bases().base(run + 1) - 1)
        ++run;
    return std::min(run + 1, s.depth());
}

// ---------------------------------------------------------------- periodic approximations

FullGroupElement periodic_approx(const OdometerModel& model, const TowerDecomposition& towers) {
    std::vector<std::int64_t> j(model.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        j[i] = towers.is_top(i) ? -static_cast<std::int64_t>(towers.height_at(i) - 1) : 1;
    return FullGroupElement(model, std::move(j));
}

FullGroupElement periodic_approx(const MarkerSequence& markers, std::size_t n) {
    auto a = markers.marker(n);
    return periodic_approx(markers.model(), TowerDecomposition(markers.model(), a));
}

std::size_t stabilization_index(std::span<const FullGroupElement> approx, std::size_t idx) {
    std::size_t k = approx.size() + 1;
    std::size_t n = k;
    for (std::size_t i = approx.size(); i >= 1; --i) {
        const FullGroupElement& p = approx[i - 1];
        if (p(idx) != p.model().step(idx))
            break;
        n = i;
    }
    return n;
}

} // namespace cocycle
