#include "cocycle/zcocycle.hpp"

#include <algorithm>

namespace cocycle {

namespace {

bool ordered(const GroupTag& g) {
    return g.kind == GroupKind::integer || g.kind == GroupKind::rational || g.kind == GroupKind::dyadic ||
           g.kind == GroupKind::approx_real;
}

// metric is a homogeneous norm, |k v| = |k| |v|
bool normed(const GroupTag& g) { return g.kind != GroupKind::mod_m; }

} // namespace

// ---------------------------------------------------------------- CyclicCocycle

CyclicCocycle::CyclicCocycle(PrefixMap action, GroupTag group, std::vector<GroupValue> generator)
    : action_(std::move(action)), group_(group), generator_(std::move(generator)) {
    const std::size_t n = action_.space().size();
    if (generator_.size() != n)
        throw DomainError("generator length does not match the prefix space");
    for (const auto& v : generator_)
        if (!(v.tag() == group_))
            throw GroupMismatch("generator value of group " + v.tag().name() + " in a " + group_.name() + " cocycle");
    orbit_.reserve(n);
    position_.assign(n, 0);
    std::size_t y = 0;
    do {
        position_[y] = orbit_.size();
        orbit_.push_back(y);
        y = action_(y);
    } while (y != 0 && orbit_.size() <= n);
    if (orbit_.size() != n)
        throw DomainError("action is not a single cycle");
    partial_.reserve(n + 1);
    partial_.push_back(GroupValue::zero(group_));
    for (std::size_t t = 0; t < n; ++t)
        partial_.push_back(partial_.back() + generator_[orbit_[t]]);
}

GroupValue CyclicCocycle::window(std::size_t pos, std::size_t r) const {
    const std::size_t n = size();
    if (pos + r <= n)
        return partial_[pos + r] - partial_[pos];
    return (cycle_sum() - partial_[pos]) + partial_[pos + r - n];
}

GroupValue CyclicCocycle::window_sum(std::size_t start_position, std::uint64_t len) const {
    const std::uint64_t n = size();
    std::uint64_t q = len / n;
    auto r = static_cast<std::size_t>(len % n);
    GroupValue w = window(start_position % size(), r);
    if (q == 0)
        return w;
    return multiply(cycle_sum(), Integer(static_cast<unsigned long>(q))) + w;
}

GroupValue CyclicCocycle::evaluate(std::int64_t j, std::size_t idx) const {
    std::size_t pos = position_.at(idx);
    if (j >= 0)
        return window_sum(pos, static_cast<std::uint64_t>(j));
    auto len = static_cast<std::uint64_t>(-(j + 1)) + 1;
    auto n = static_cast<std::uint64_t>(size());
    auto start = static_cast<std::size_t>((pos + n - len % n) % n);
    return -window_sum(start, len);
}

CoboundaryResult CyclicCocycle::solve() const {
    CoboundaryResult out{cycle_sum(), std::nullopt};
    if (!cycle_sum().is_zero())
        return out;
    std::vector<GroupValue> c(size());
    for (std::size_t t = 0; t < size(); ++t)
        c[orbit_[t]] = partial_[t];
    Scalar m = spread(c);
    const PrefixSpace& s = action_.space();
    out.certificate = CoboundaryCertificate{CylinderFunction(s.bases(), s.depth(), group_, std::move(c)), m};
    return out;
}

bool CyclicCocycle::verify_transfer(const std::vector<GroupValue>& transfer) const {
    if (transfer.size() != size())
        return false;
    for (std::size_t x = 0; x < size(); ++x)
        if (!(transfer[action_(x)] - transfer[x] == generator_[x]))
            return false;
    return true;
}

// ---------------------------------------------------------------- ZCocycle

namespace {

std::vector<GroupValue> lifted_table(const OdometerModel& model, const CylinderFunction& f) {
    if (f.depth() > model.depth())
        throw DomainError("generator depth " + std::to_string(f.depth()) + " exceeds model depth " +
                          std::to_string(model.depth()));
    return f.lift(model.space()).table();
}

} // namespace

ZCocycle::ZCocycle(OdometerModel model, CylinderFunction generator)
    : model_(std::move(model)),
      generator_(std::move(generator)),
      cyclic_(model_.as_map(), generator_.group(), lifted_table(model_, generator_)) {}

GroupValue ZCocycle::evaluate(std::int64_t j, const Prefix& x) const {
    return cyclic_.evaluate(j, model_.space().index(x));
}

CylinderFunction ZCocycle::power_function(std::int64_t j) const {
    return CylinderFunction::tabulate(model_.bases(), model_.depth(), group(),
                                      [&](std::size_t i) { return evaluate(j, i); });
}

Scalar spread(std::span<const GroupValue> values) {
    if (values.empty())
        return Scalar(0);
    GroupTag g = values.front().tag();
    if (ordered(g)) {
        if (g.kind == GroupKind::approx_real) {
            auto [lo, hi] = std::minmax_element(values.begin(), values.end(),
                                                [](const GroupValue& a, const GroupValue& b) { return a.as_real() < b.as_real(); });
            return Scalar(hi->as_real() - lo->as_real());
        }
        Rational lo = values.front().to_rational(), hi = lo;
        for (const auto& v : values) {
            Rational q = v.to_rational();
            if (q < lo)
                lo = q;
            if (q > hi)
                hi = q;
        }
        return Scalar(Rational(hi - lo));
    }
    Scalar best(0);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t k = i + 1; k < values.size(); ++k)
            best = max(best, metric(values[i], values[k]));
    return best;
}

CylinderFunction extend_to_full_group(const ZCocycle& a, const FullGroupElement& r) {
    if (!(a.model() == r.model()))
        throw DomainError("cocycle and full-group element over different models");
    return CylinderFunction::tabulate(a.model().bases(), a.model().depth(), a.group(),
                                      [&](std::size_t i) { return a.evaluate(r.jump(i), i); });
}

CoboundaryResult coboundary_solve(const ZCocycle& a) { return a.cyclic().solve(); }

bool verify_certificate(const ZCocycle& a, const CoboundaryCertificate& cert) {
    if (!(cert.transfer.group() == a.group()) || cert.transfer.depth() > a.model().depth())
        return false;
    return a.cyclic().verify_transfer(cert.transfer.lift(a.model().space()).table());
}

// ---------------------------------------------------------------- periodic

CylinderFunction periodic_coboundary(const FullGroupElement& p, const CylinderFunction& values,
                                     std::span<const std::size_t> bases) {
    const OdometerModel& model = p.model();
    const std::size_t n = model.size();
    if (values.depth() > model.depth())
        throw DomainError("cocycle values deeper than the model");
    std::vector<GroupValue> phi = values.lift(model.space()).table();

    std::vector<char> is_base(n, 0);
    for (std::size_t b : bases) {
        if (b >= n)
            throw DomainError("base index out of range");
        is_base[b] = 1;
    }

    std::vector<GroupValue> g(n, GroupValue::zero(values.group()));
    std::vector<char> seen(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        if (p.cycle_jump(start) != 0)
            throw DomainError("element is not periodic: orbit of " + model.space().prefix(start).to_string() +
                              " has nonzero total jump");
        std::size_t base = start; // least index on the cycle, reached first
        if (!bases.empty()) {
            std::size_t found = 0;
            std::size_t y = start;
            do {
                if (is_base[y]) {
                    base = y;
                    ++found;
                }
                y = p(y);
            } while (y != start);
            if (found != 1)
                throw DomainError("bases must meet every cycle exactly once");
        }
        GroupValue acc = GroupValue::zero(values.group());
        std::size_t y = base;
        do {
            seen[y] = 1;
            g[y] = acc;
            acc += phi[y];
            y = p(y);
        } while (y != base);
        if (!acc.is_zero())
            throw DomainError("values are not a cocycle of a periodic element: cycle sum " + acc.to_string());
    }
    return CylinderFunction(model.bases(), model.depth(), values.group(), std::move(g));
}

DensityStep density_sequence(const ZCocycle& a, const MarkerSequence& markers, std::size_t n) {
    if (!(markers.model() == a.model()))
        throw DomainError("markers and cocycle over different models");
    FullGroupElement pn = periodic_approx(markers, n);
    CylinderFunction fn = extend_to_full_group(a, pn);
    CylinderFunction gn = periodic_coboundary(pn, fn);
    const OdometerModel& model = a.model();
    CylinderFunction big = CylinderFunction::tabulate(model.bases(), model.depth(), a.group(), [&](std::size_t i) {
        return gn.at(model.step(i)) - gn.at(i);
    });
    return DensityStep{n, std::move(pn), std::move(fn), std::move(gn), std::move(big)};
}

// ---------------------------------------------------------------- Gottschalk-Hedlund

GHReport gh_check(const OdometerModel& model, const CylinderFunction& h, std::uint64_t horizon) {
    ZCocycle a(model, h);
    const CyclicCocycle& cyc = a.cyclic();
    const std::uint64_t n = model.size();
    GHReport report;
    report.cycle_sum = cyc.cycle_sum();
    report.horizon = horizon == 0 ? 4 * n : horizon;
    report.growth_slope = norm(report.cycle_sum) / Scalar(Rational(static_cast<unsigned long>(n)));

    CoboundaryResult solved = cyc.solve();
    report.coboundary = solved.is_coboundary();
    report.certificate = solved.certificate;

    // With a zero cycle sum the window sum depends on 2j+1 mod N only.
    std::uint64_t jmax = report.coboundary ? std::min<std::uint64_t>(report.horizon, n - 1) : report.horizon;
    GHWitness best{0, 0, GroupValue::zero(a.group()), Scalar(-1)};
    for (std::uint64_t j = 0; j <= jmax; ++j) {
        for (std::size_t s = 0; s < n; ++s) {
            GroupValue v = cyc.window_sum(s, 2 * j + 1);
            Scalar m = norm(v);
            if (best.magnitude < m) {
                std::size_t x = cyc.point_at(static_cast<std::size_t>((s + j) % n));
                best = GHWitness{x, j, std::move(v), m};
            }
        }
    }
    report.empirical_sup = best.magnitude;
    if (!report.coboundary)
        report.witness = best;
    return report;
}

std::optional<GHWitness> find_gh_witness(const OdometerModel& model, const CylinderFunction& h, const Scalar& bound) {
    ZCocycle a(model, h);
    const CyclicCocycle& cyc = a.cyclic();
    if (cyc.cycle_sum().is_zero() || !normed(a.group()))
        return std::nullopt;
    const std::size_t n = model.size();
    Scalar r_max(0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < n; ++r)
            r_max = max(r_max, norm(cyc.window_sum(s, r)));
    Scalar c = norm(cyc.cycle_sum());
    Scalar ratio = (max(bound, Scalar(0)) + r_max) / c;
    std::uint64_t q = static_cast<std::uint64_t>(ratio.to_double()) + 1;
    while (Scalar(Rational(static_cast<unsigned long>(q))) * c <= bound + r_max)
        ++q;
    std::uint64_t len = q * n;
    if (len % 2 == 0)
        ++len;
    std::uint64_t j = (len - 1) / 2;
    GHWitness best{0, j, GroupValue::zero(a.group()), Scalar(-1)};
    for (std::size_t s = 0; s < n; ++s) {
        GroupValue v = cyc.window_sum(s, len);
        Scalar m = norm(v);
        if (best.magnitude < m)
            best = GHWitness{cyc.point_at(static_cast<std::size_t>((s + j) % n)), j, std::move(v), m};
    }
    if (!(bound < best.magnitude))
        throw Error("internal: growth bound did not produce a witness");
    return best;
}

GroupValue two_sided_sum(const OdometerModel& model, const CylinderFunction& h, std::size_t idx, std::uint64_t j) {
    std::size_t y = model.shift(idx, -static_cast<std::int64_t>(j % model.size()));
    GroupValue s = GroupValue::zero(h.group());
    for (std::uint64_t k = 0; k < 2 * j + 1; ++k) {
        s += h.at(y);
        y = model.step(y);
    }
    return s;
}

SkewOrbit skew_orbit(const OdometerModel& model, const CylinderFunction& h, std::size_t start, const GroupValue& g0,
                     std::size_t steps) {
    if (!(g0.tag() == h.group()))
        throw GroupMismatch("start value and h live in different groups");
    if (h.depth() > model.depth())
        throw DomainError("h deeper than the model");
    SkewOrbit out{{}, Scalar(0)};
    out.values.reserve(steps);
    GroupValue g = g0;
    std::size_t x = start;
    for (std::size_t t = 0; t < steps; ++t) {
        g += h.at(x);
        x = model.step(x);
        out.radius = max(out.radius, metric(g, g0));
        out.values.push_back(g);
    }
    return out;
}

std::vector<ConvergenceRow> cocycle_metric_convergence(const OdometerModel& model,
                                                       std::span<const CylinderFunction> generators,
                                                       const CylinderFunction& target, std::int64_t j,
                                                       std::span<const MeasureSpec> measures) {
    CylinderFunction aj = ZCocycle(model, target).power_function(j);
    std::vector<MassTable> tables;
    for (const auto& mu : measures)
        tables.emplace_back(mu, model.space());
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!(generators[i].group() == target.group()))
            throw GroupMismatch("generator and target in different groups");
        CylinderFunction ai = ZCocycle(model, generators[i]).power_function(j);
        ConvergenceRow row{i + 1, {}};
        for (const auto& t : tables)
            row.tau3.push_back(tau3_functional(ai, aj, t));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cocycle
