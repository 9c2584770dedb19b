#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cocycle/space.hpp"

namespace cocycle {

// Add-one-with-carry on the depth-k quotient. On indices it is i -> i + 1
// mod N, so the quotient is a single N-cycle; the all-max word wraps to
// all-zeros.
class OdometerModel {
public:
    OdometerModel() = default;
    explicit OdometerModel(BaseVector bases);

    const PrefixSpace& space() const { return space_; }
    const BaseVector& bases() const { return space_.bases(); }
    std::size_t depth() const { return space_.depth(); }
    std::size_t size() const { return space_.size(); }

    Prefix step(const Prefix& x) const;
    std::size_t step(std::size_t idx) const { return idx + 1 == size() ? 0 : idx + 1; }
    // T^k
    std::size_t shift(std::size_t idx, std::int64_t k) const;

    PrefixMap as_map() const;
    PrefixMap power(std::int64_t k) const;

    friend bool operator==(const OdometerModel&, const OdometerModel&) = default;

private:
    PrefixSpace space_;
};

// Flip of coordinate n on {0,1}^k.
Prefix delta_apply(std::size_t n, const Prefix& x);
std::size_t delta_apply(const PrefixSpace& space, std::size_t n, std::size_t idx);
PrefixMap delta_map(const PrefixSpace& space, std::size_t n);

// x -> T^{j(x)} x with an integer jump function j; bijectivity is checked on
// construction.
class FullGroupElement {
public:
    FullGroupElement(OdometerModel model, std::vector<std::int64_t> jumps);
    // jump function given as an integer-valued cylinder function of depth <= k
    FullGroupElement(OdometerModel model, const CylinderFunction& jump);

    static FullGroupElement identity(const OdometerModel& model);
    static FullGroupElement power_of_odometer(const OdometerModel& model, std::int64_t k);

    const OdometerModel& model() const { return model_; }
    std::int64_t jump(std::size_t idx) const { return jumps_[idx]; }
    const std::vector<std::int64_t>& jumps() const { return jumps_; }
    std::size_t operator()(std::size_t idx) const { return image_[idx]; }

    // (*this)(other(x)); jumps add as j(other x) + j_other(x)
    FullGroupElement compose(const FullGroupElement& other) const;
    FullGroupElement inverse() const;
    FullGroupElement power(std::int64_t n) const;

    PrefixMap as_map() const;
    CylinderFunction jump_function() const;
    // Sum of jumps over the orbit of idx; zero iff the element is periodic
    // on that orbit in the infinite model.
    std::int64_t cycle_jump(std::size_t idx) const;

    friend bool operator==(const FullGroupElement& a, const FullGroupElement& b) {
        return a.model_ == b.model_ && a.jumps_ == b.jumps_;
    }

private:
    OdometerModel model_;
    std::vector<std::int64_t> jumps_;
    std::vector<std::size_t> image_;
};

// Kakutani towers over a marker set: one tower per return time.
struct Tower {
    std::size_t height = 0;
    std::vector<std::size_t> base;
};

class TowerDecomposition {
public:
    TowerDecomposition(const OdometerModel& model, std::span<const std::size_t> marker);

    const std::vector<Tower>& towers() const { return towers_; }
    const std::vector<std::size_t>& marker() const { return marker_; }
    bool in_marker(std::size_t idx) const { return in_marker_[idx] != 0; }
    std::size_t level(std::size_t idx) const { return level_[idx]; }
    std::size_t height_at(std::size_t idx) const { return height_[idx]; }
    std::size_t base_of(std::size_t idx) const { return base_[idx]; }
    bool is_top(std::size_t idx) const { return level_[idx] + 1 == height_[idx]; }

    // Levels T^i C_k are pairwise disjoint and cover the space; T^k C_k lies
    // in the marker.
    bool verify(const OdometerModel& model) const;

private:
    std::vector<Tower> towers_;
    std::vector<std::size_t> marker_;
    std::vector<char> in_marker_;
    std::vector<std::size_t> level_;
    std::vector<std::size_t> height_;
    std::vector<std::size_t> base_;
};

TowerDecomposition towers_from_marker(const OdometerModel& model, std::span<const std::size_t> marker);

// A_n = {x_1 = ... = x_n = 0}, D_n = {x_1 = ... = x_n = p_i - 1} (tops of
// the towers over A_n), K_n = {x : n(x) <= n}, for n = 1 .. k-1.
class MarkerSequence {
public:
    explicit MarkerSequence(OdometerModel model);

    const OdometerModel& model() const { return model_; }
    std::size_t count() const { return model_.depth() == 0 ? 0 : model_.depth() - 1; }

    std::vector<std::size_t> marker(std::size_t n) const;
    bool in_marker(std::size_t n, std::size_t idx) const;
    bool in_top(std::size_t n, std::size_t idx) const;
    bool in_stable(std::size_t n, std::size_t idx) const;
    // 1 + length of the leading run of maximal digits, capped at k
    std::size_t stabilization_index(std::size_t idx) const;

private:
    void check(std::size_t n) const;
    OdometerModel model_;
};

// T off the tower tops, T^{-(h-1)} on the top of a height-h tower.
FullGroupElement periodic_approx(const OdometerModel& model, const TowerDecomposition& towers);
FullGroupElement periodic_approx(const MarkerSequence& markers, std::size_t n);

// Least n such that P_i x = T x for all n <= i <= k-1, where P_i = approx[i-1].
std::size_t stabilization_index(std::span<const FullGroupElement> approx, std::size_t idx);

} // namespace cocycle
