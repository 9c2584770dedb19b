#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cocycle/dynamics.hpp"

namespace cocycle {

struct CoboundaryCertificate {
    // c with c(Tx) - c(x) = f(x), anchored at c(0...0) = 0
    CylinderFunction transfer;
    // diameter of the transfer's range, a bound for every window sum
    Scalar spread;
};

struct CoboundaryResult {
    GroupValue cycle_sum;
    std::optional<CoboundaryCertificate> certificate;

    bool is_coboundary() const { return certificate.has_value(); }
};

// A Z-cocycle of a single-cycle permutation of a finite prefix space,
// determined by its generator f = a(1, .). The odometer quotient is the
// main instance; conjugated cycles arise from transport.
class CyclicCocycle {
public:
    CyclicCocycle(PrefixMap action, GroupTag group, std::vector<GroupValue> generator);

    const PrefixMap& action() const { return action_; }
    const GroupTag& group() const { return group_; }
    const std::vector<GroupValue>& generator() const { return generator_; }
    std::size_t size() const { return generator_.size(); }

    GroupValue evaluate(std::int64_t j, std::size_t idx) const;
    // Sum over the window of length len starting at idx.
    GroupValue window_sum(std::size_t start_position, std::uint64_t len) const;
    const GroupValue& cycle_sum() const { return partial_.back(); }

    // orbit position of idx, counted from the all-zeros prefix
    std::size_t position(std::size_t idx) const { return position_[idx]; }
    std::size_t point_at(std::size_t position) const { return orbit_[position]; }

    CoboundaryResult solve() const;
    // c(Sx) - c(x) = f(x) on every point, S the action
    bool verify_transfer(const std::vector<GroupValue>& transfer) const;

private:
    GroupValue window(std::size_t pos, std::size_t r) const;

    PrefixMap action_;
    GroupTag group_;
    std::vector<GroupValue> generator_;
    std::vector<std::size_t> orbit_;
    std::vector<std::size_t> position_;
    std::vector<GroupValue> partial_;
};

class ZCocycle {
public:
    // generator depth must not exceed the model depth
    ZCocycle(OdometerModel model, CylinderFunction generator);

    const OdometerModel& model() const { return model_; }
    const CylinderFunction& generator() const { return generator_; }
    const GroupTag& group() const { return generator_.group(); }
    const CyclicCocycle& cyclic() const { return cyclic_; }

    GroupValue evaluate(std::int64_t j, std::size_t idx) const { return cyclic_.evaluate(j, idx); }
    GroupValue evaluate(std::int64_t j, const Prefix& x) const;
    const GroupValue& cycle_sum() const { return cyclic_.cycle_sum(); }

    // x -> a(j, x)
    CylinderFunction power_function(std::int64_t j) const;

private:
    OdometerModel model_;
    CylinderFunction generator_;
    CyclicCocycle cyclic_;
};

// Diameter of a finite set of group values.
Scalar spread(std::span<const GroupValue> values);

// x -> a(j_R(x), x)
CylinderFunction extend_to_full_group(const ZCocycle& a, const FullGroupElement& r);

CoboundaryResult coboundary_solve(const ZCocycle& a);
bool verify_certificate(const ZCocycle& a, const CoboundaryCertificate& cert);

// Transfer g of a cocycle of a periodic element P, given by its values
// a(P, .): g = 0 on the base of every P-cycle and a(P^n, x) = g(P^n x) - g(x).
// Bases default to the least index on each cycle. Throws DomainError when a
// P-cycle carries a nonzero total jump (P is not periodic in the infinite
// model), when the values sum to a nonzero element over some cycle, or when
// the bases do not meet every cycle exactly once.
CylinderFunction periodic_coboundary(const FullGroupElement& p, const CylinderFunction& values,
                                     std::span<const std::size_t> bases = {});

struct DensityStep {
    std::size_t n = 0;
    FullGroupElement approx;   // P_n
    CylinderFunction f_n;      // a(P_n, .)
    CylinderFunction g_n;      // f_n(x) = g_n(P_n x) - g_n(x)
    CylinderFunction big_f_n;  // g_n(Tx) - g_n(x), a coboundary agreeing with f off D_n
};

DensityStep density_sequence(const ZCocycle& a, const MarkerSequence& markers, std::size_t n);

struct GHWitness {
    std::size_t point = 0;  // x
    std::uint64_t j = 0;    // window k = -j .. j
    GroupValue sum;
    Scalar magnitude;
};

struct GHReport {
    bool coboundary = false;
    GroupValue cycle_sum;
    std::uint64_t horizon = 0;
    // sup over x and j <= horizon of |sum_{k=-j}^{j} h(T^k x)|
    Scalar empirical_sup;
    std::optional<CoboundaryCertificate> certificate;
    // largest window sum inside the horizon, for non-coboundaries
    std::optional<GHWitness> witness;
    // |cycle sum| / N
    Scalar growth_slope;
};

// horizon 0 selects the default 4N
GHReport gh_check(const OdometerModel& model, const CylinderFunction& h, std::uint64_t horizon = 0);

// A window sum with magnitude above `bound`, located through the linear
// growth q|C| - R of window sums. Empty for coboundaries and for finite
// groups, where window sums stay bounded.
std::optional<GHWitness> find_gh_witness(const OdometerModel& model, const CylinderFunction& h, const Scalar& bound);

// sum_{k=-j}^{j} h(T^k x) by walking the orbit
GroupValue two_sided_sum(const OdometerModel& model, const CylinderFunction& h, std::size_t idx, std::uint64_t j);

struct SkewOrbit {
    // G-coordinates of pi(x, g), pi^2(x, g), ...
    std::vector<GroupValue> values;
    Scalar radius;
};

// pi(x, g) = (Tx, g + h(x))
SkewOrbit skew_orbit(const OdometerModel& model, const CylinderFunction& h, std::size_t start,
                     const GroupValue& g0, std::size_t steps);

struct ConvergenceRow {
    std::size_t i = 0;
    std::vector<Scalar> tau3; // one per measure
};

// Rows (i, tau3(a(f_i)(j, .), a(f)(j, .), mu)) for i = 1 .. generators.size().
std::vector<ConvergenceRow> cocycle_metric_convergence(const OdometerModel& model,
                                                       std::span<const CylinderFunction> generators,
                                                       const CylinderFunction& target, std::int64_t j,
                                                       std::span<const MeasureSpec> measures);

} // namespace cocycle
