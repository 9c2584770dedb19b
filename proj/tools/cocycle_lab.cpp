// cocycle-lab: command-line driver for the cocycle library.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cocycle/experiment.hpp"
#include "cocycle/transport.hpp"

using namespace cocycle;

namespace {

struct Flags {
    std::optional<std::size_t> depth;
    std::optional<std::string> bases;
    std::optional<std::string> group;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> eps0;
    std::optional<std::string> eps;
    std::optional<std::uint64_t> horizon;
    std::optional<std::string> measures;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> config;
    std::optional<std::string> generator;
    std::optional<std::string> family;
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> count;
    std::int64_t j = 1;
    std::optional<std::string> x;
    std::string suite;
};

ExperimentConfig resolve(const Flags& f) {
    ExperimentConfig c;
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in)
            throw ParseError("cannot read config " + *f.config);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid config: ") + e.what());
        }
        c = config_from_json(j);
    }
    std::optional<BaseVector> bases;
    if (f.bases)
        bases = BaseVector::parse(*f.bases);
    c.set_model(bases, f.depth);
    if (f.group)
        c.group = GroupTag::parse(*f.group);
    if (f.seed)
        c.seed = *f.seed;
    if (f.eps0)
        c.eps0 = parse_rational(*f.eps0);
    if (f.eps)
        c.eps = parse_rational(*f.eps);
    if (c.eps0 <= 0 || c.eps <= 0)
        throw DomainError("eps0 and eps must be positive");
    if (f.horizon)
        c.horizon = *f.horizon;
    if (f.measures) {
        try {
            c.measures = measures_from_json(Json::parse(*f.measures));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid --measures: ") + e.what());
        }
    }
    if (f.out)
        c.out = *f.out;
    if (f.format)
        c.format = *f.format;
    if (f.generator)
        c.generator = *f.generator;
    if (f.family)
        c.family = *f.family;
    if (f.n_max)
        c.n_max = *f.n_max;
    if (f.samples)
        c.samples = *f.samples;
    if (f.count)
        c.family_size = *f.count;
    parse_format(c.format);
    return c;
}

CylinderFunction generator_of(const ExperimentConfig& c) {
    if (c.generator)
        return parse_generator(*c.generator, c.bases, c.depth, c.group);
    Rng rng(c.seed);
    return random_function(rng, c.bases, c.depth, c.group);
}

GeneratorFamily family_of(const ExperimentConfig& c) {
    if (c.family)
        return parse_family(*c.family, c.generator_count(), c.depth, c.group);
    Rng rng(c.seed);
    return random_family(rng, c.generator_count(), c.depth, c.group);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw Error("cannot write " + path);
}

void write_json(const ExperimentConfig& c, const Json& j) { write_text(c.out, j.dump(2) + "\n"); }

int cocycle_eval(const ExperimentConfig& c, const Flags& f) {
    ZCocycle a(c.model(), generator_of(c));
    if (f.x) {
        write_text(c.out, a.evaluate(f.j, Prefix::parse(*f.x)).to_string() + "\n");
        return 0;
    }
    std::string text = "x,a\n";
    for (std::size_t i = 0; i < a.model().size(); ++i)
        text += a.model().space().prefix(i).to_string() + "," + a.evaluate(f.j, i).to_string() + "\n";
    write_text(c.out, text);
    return 0;
}

int cocycle_solve(const ExperimentConfig& c) {
    ZCocycle a(c.model(), generator_of(c));
    CoboundaryResult res = coboundary_solve(a);
    if (res.certificate)
        write_json(c, to_json(*res.certificate));
    else
        write_json(c, {{"coboundary", false}, {"cycle_sum", to_json(res.cycle_sum)}});
    return 0;
}

int cocycle_density(const ExperimentConfig& c) {
    OdometerModel model = c.model();
    ZCocycle a(model, generator_of(c));
    MarkerSequence markers(model);
    std::size_t n_max = c.n_max == 0 ? markers.count() : std::min(c.n_max, markers.count());
    MassTable mu(c.measures.at(0), model.space());
    CylinderFunction f = a.generator().lift(model.space());
    Report r;
    r.id = "density";
    r.seed = c.seed;
    r.columns = {"n", "tau1", "tau3", "tau4"};
    for (std::size_t n = 1; n <= n_max; ++n) {
        DensityStep step = density_sequence(a, markers, n);
        r.add_row({Scalar(static_cast<int>(n)), exceedance_measure(step.big_f_n, f, mu, Scalar(c.eps)),
                   tau3_functional(step.big_f_n, f, mu), tau4_functional(step.big_f_n, f, mu)});
        r.check("F_" + std::to_string(n) + " is a coboundary",
                coboundary_solve(ZCocycle(model, step.big_f_n)).is_coboundary());
    }
    emit(r, parse_format(c.format), c.out);
    return r.passed() ? 0 : 1;
}

int cocycle_gh(const ExperimentConfig& c) {
    OdometerModel model = c.model();
    GHReport gh = gh_check(model, generator_of(c), c.horizon);
    Json j{{"coboundary", gh.coboundary},
           {"cycle_sum", to_json(gh.cycle_sum)},
           {"horizon", gh.horizon},
           {"empirical_sup", scalar_to_json(gh.empirical_sup)},
           {"growth_slope", scalar_to_json(gh.growth_slope)}};
    if (gh.certificate)
        j["certificate"] = to_json(*gh.certificate);
    if (gh.witness)
        j["witness"] = {{"x", model.space().prefix(gh.witness->point).to_string()},
                        {"j", gh.witness->j},
                        {"sum", to_json(gh.witness->sum)},
                        {"magnitude", scalar_to_json(gh.witness->magnitude)}};
    write_json(c, j);
    return 0;
}

int gamma_verify(const ExperimentConfig& c) {
    GeneratorFamily fam = family_of(c);
    GammaCocycle cc(fam);
    IdentityCheck check = verify_identities(cc, std::max(fam.depth(), c.depth));
    if (check.ok) {
        write_text(c.out, "ok: identities hold for N = " + std::to_string(fam.count()) + " at depth " +
                              std::to_string(std::max(fam.depth(), c.depth)) + "\n");
        return 0;
    }
    const IdentityFailure& e = *check.failure;
    std::cerr << (e.kind == IdentityFailure::Kind::involution ? "involution" : "commutation") << " fails for "
              << e.n << "," << e.k << " at index " << e.index << ": " << e.lhs.to_string()
              << " != " << e.rhs.to_string() << "\n";
    return 1;
}

int gamma_roundtrip(const ExperimentConfig& c) {
    GeneratorFamily fam = family_of(c);
    GammaCocycle cc(fam);
    GeneratorFamily back = recover_generators(
        [&](std::size_t n, std::size_t idx) { return cc.eval_generator(n, idx); }, fam.count(), fam.depth(),
        fam.group());
    if (back == fam) {
        write_json(c, to_json(back));
        return 0;
    }
    std::cerr << "round-trip changed the family\n";
    return 1;
}

int gamma_happrox(const ExperimentConfig& c) {
    GeneratorFamily fam = family_of(c);
    TransferReport tr = h_approximate(fam, NeighborhoodChain(c.eps0));
    GammaCocycle alpha(fam), beta(tr.rounded);
    auto bad = check_cohomologous(alpha, beta, tr.transfer, all_words(fam.count()));
    Scalar gmax(0);
    for (const auto& v : tr.transfer.table())
        gmax = max(gmax, norm(v));
    Json radii = Json::array();
    for (const auto& q : tr.radii)
        radii.push_back(rational_to_json(q));
    write_json(c, {{"rounded", to_json(tr.rounded)},
                   {"transfer", to_json(tr.transfer)},
                   {"radii", radii},
                   {"bound", rational_to_json(tr.bound)},
                   {"max_abs_g", scalar_to_json(gmax)},
                   {"cohomologous", !bad.has_value()}});
    return !bad && gmax <= Scalar(c.eps0) ? 0 : 1;
}

int run(const ExperimentConfig& c, const std::string& suite) {
    Report r = run_suite(c, suite);
    emit(r, parse_format(c.format), c.out);
    for (const auto& chk : r.checks)
        if (!chk.passed)
            std::cerr << "FAIL " << chk.name << (chk.detail.empty() ? "" : ": " + chk.detail) << "\n";
    return r.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic experiments with cocycles of odometers"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;

    app.add_option("--depth", f.depth, "model depth k");
    app.add_option("--bases", f.bases, "digit bases, e.g. \"2,3,2\"");
    app.add_option("--group", f.group, "value group: int, rat, dy, mod:m, vec:d, real");
    app.add_option("--seed", f.seed, "seed for every random choice");
    app.add_option("--eps0", f.eps0, "base radius of the neighborhood chain");
    app.add_option("--eps", f.eps, "threshold for exceedance columns");
    app.add_option("--horizon", f.horizon, "window horizon J (default 4N)");
    app.add_option("--measures", f.measures, "JSON measure or array of measures");
    app.add_option("--out", f.out, "output path (default stdout)");
    app.add_option("--format", f.format, "csv or json");
    app.add_option("--config", f.config, "JSON config file; flags override it");
    app.add_option("--generator", f.generator, "values \"1,-1\", inline JSON or a JSON file");
    app.add_option("--family", f.family, "\"zero\", inline JSON or a JSON file");
    app.add_option("--samples", f.samples, "sample count for randomized suites");
    app.add_option("--N", f.count, "number of generators for random families");

    auto* cocycle = app.add_subcommand("cocycle", "Z-cocycles of the odometer");
    cocycle->require_subcommand(1);
    cocycle->fallthrough();
    auto* eval = cocycle->add_subcommand("eval", "a(j, x)");
    eval->fallthrough();
    eval->add_option("--j", f.j, "power of T");
    eval->add_option("--x", f.x, "prefix, e.g. \"0 1 1\"");
    auto* solve = cocycle->add_subcommand("solve", "coboundary certificate");
    solve->fallthrough();
    auto* density = cocycle->add_subcommand("density", "coboundaries F_n approaching the generator");
    density->fallthrough();
    density->add_option("--n-max", f.n_max, "largest n");
    auto* gh = cocycle->add_subcommand("gh", "window sums and the coboundary decision");
    gh->fallthrough();

    auto* gamma = app.add_subcommand("gamma", "cocycles of the group generated by the delta_n");
    gamma->require_subcommand(1);
    gamma->fallthrough();
    auto* verify = gamma->add_subcommand("verify", "commutation and involution identities");
    verify->fallthrough();
    auto* roundtrip = gamma->add_subcommand("roundtrip", "recover the generators from the cocycle");
    roundtrip->fallthrough();
    auto* happrox = gamma->add_subcommand("happrox", "dyadic-valued cohomologous cocycle");
    happrox->fallthrough();

    auto* runner = app.add_subcommand("run", "run an experiment suite");
    runner->fallthrough();
    runner->add_option("suite", f.suite, "density, topology, odometer, happrox or gh")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig c = resolve(f);
        if (*eval)
            return cocycle_eval(c, f);
        if (*solve)
            return cocycle_solve(c);
        if (*density)
            return cocycle_density(c);
        if (*gh)
            return cocycle_gh(c);
        if (*verify)
            return gamma_verify(c);
        if (*roundtrip)
            return gamma_roundtrip(c);
        if (*happrox)
            return gamma_happrox(c);
        if (*runner)
            return run(c, f.suite);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
