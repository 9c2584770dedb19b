#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cocycle/report.hpp"

namespace cocycle {

// Unknown suite, subcommand or malformed option.
class UsageError : public Error {
public:
    using Error::Error;
};

using Rng = std::mt19937_64;

// Random elements for seeded experiments: integers in [-3, 3], rationals
// p/q with |p| <= 6 and q <= 4, dyadics p/2^k with |p| <= 8 and k <= 3,
// residues uniform in [0, m), vectors coordinatewise rational, reals in [-3, 3].
GroupValue random_value(Rng& rng, const GroupTag& group);
CylinderFunction random_function(Rng& rng, const BaseVector& bases, std::size_t depth, const GroupTag& group);
// f(x) = c(Tx) - c(x) for a random c, so the cycle sum vanishes
CylinderFunction random_coboundary(Rng& rng, const OdometerModel& model, const GroupTag& group);
GeneratorFamily random_family(Rng& rng, std::size_t count, std::size_t depth, const GroupTag& group);
// p/q with 1 <= p <= q <= max_den
Rational random_unit_fraction(Rng& rng, int max_den);
// Bernoulli weights with entries proportional to integers in [1, 5]
MeasureSpec random_bernoulli(Rng& rng, const BaseVector& bases, std::size_t depth);

// A single value in `group`: "1/3", "-2", "0.25"; "3" for mod:m; "1/2;0"
// for vectors.
GroupValue parse_group_value(const std::string& text, const GroupTag& group);

// A generator given as inline JSON, a path to a JSON file, or a list of
// values separated by commas whose length is the size of some depth <= depth
// prefix space.
CylinderFunction parse_generator(const std::string& text, const BaseVector& bases, std::size_t depth,
                                 const GroupTag& group);
// "zero", inline JSON or a path to a JSON file
GeneratorFamily parse_family(const std::string& text, std::size_t count, std::size_t depth, const GroupTag& group);

struct ExperimentConfig {
    BaseVector bases = BaseVector::binary(6);
    std::size_t depth = 6;
    GroupTag group = GroupTag::rational();
    std::vector<MeasureSpec> measures{MeasureSpec::uniform()};
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;  // 0: 4N
    Rational eps0{1, 4};
    Rational eps{1, 2};
    std::vector<Rational> eps_grid;
    std::vector<Rational> delta_grid;
    std::size_t n_max = 0;        // 0: depth - 1
    std::size_t samples = 0;      // 0: suite default
    std::size_t family_size = 0;  // 0: min(4, depth)
    std::optional<std::string> generator;
    std::optional<std::string> family;
    std::string out;
    std::string format = "csv";

    // Sets depth and bases together: missing bases are binary, a short base
    // vector repeats its last entry.
    void set_model(std::optional<BaseVector> bases, std::optional<std::size_t> depth);
    OdometerModel model() const;
    std::size_t generator_count() const;
};

// Fields: "bases", "depth", "group", "measures", "seed", "horizon", "eps0",
// "eps", "eps_grid", "delta_grid", "n_max", "samples", "N", "generator",
// "family", "out", "format". Absent fields keep the values of `base`.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});

// Suites: density, topology, odometer, happrox, gh. Throws UsageError for
// any other name. The report's checks decide the exit code.
Report run_suite(const ExperimentConfig& config, const std::string& suite);

const std::vector<std::string>& suite_names();

} // namespace cocycle
