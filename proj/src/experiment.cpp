#include "cocycle/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cocycle/transport.hpp"

namespace cocycle {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(Rng& rng) {
    Rational q(uniform(rng, -6, 6), uniform(rng, 1, 4));
    q.canonicalize();
    return q;
}

Json read_json_text(const std::string& text) {
    std::string body = text;
    if (!text.empty() && text.front() != '{' && text.front() != '[' && text.front() != '"') {
        std::ifstream f(text);
        if (!f)
            throw ParseError("cannot read " + text);
        std::stringstream ss;
        ss << f.rdbuf();
        body = ss.str();
    }
    try {
        return Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string fmt(const Rational& q) { return to_string(q); }

Scalar flag(bool b) { return Scalar(b ? 1 : 0); }

} // namespace

GroupValue random_value(Rng& rng, const GroupTag& group) {
    switch (group.kind) {
    case GroupKind::integer:
        return GroupValue::integer(Integer(uniform(rng, -3, 3)));
    case GroupKind::rational:
        return GroupValue::rational(random_rational(rng));
    case GroupKind::dyadic: {
        long p = uniform(rng, -8, 8);
        return GroupValue::dyadic(Integer(p), static_cast<unsigned long>(uniform(rng, 0, 3)));
    }
    case GroupKind::mod_m:
        return GroupValue::mod(uniform(rng, 0, group.param - 1), group.param);
    case GroupKind::rational_vector: {
        std::vector<Rational> v;
        for (std::int64_t i = 0; i < group.param; ++i)
            v.push_back(random_rational(rng));
        return GroupValue::vector(std::move(v));
    }
    case GroupKind::approx_real:
        return GroupValue::real(std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
    }
    throw UnsupportedGroup("unknown group");
}

CylinderFunction random_function(Rng& rng, const BaseVector& bases, std::size_t depth, const GroupTag& group) {
    return CylinderFunction::tabulate(bases, depth, group, [&](std::size_t) { return random_value(rng, group); });
}

CylinderFunction random_coboundary(Rng& rng, const OdometerModel& model, const GroupTag& group) {
    CylinderFunction c = random_function(rng, model.bases(), model.depth(), group);
    return CylinderFunction::tabulate(model.bases(), model.depth(), group,
                                      [&](std::size_t i) { return c.at(model.step(i)) - c.at(i); });
}

GeneratorFamily random_family(Rng& rng, std::size_t count, std::size_t depth, const GroupTag& group) {
    if (count > depth)
        throw DomainError("more generators than the depth");
    std::vector<std::vector<GroupValue>> tables;
    for (std::size_t n = 1; n <= count; ++n) {
        std::vector<GroupValue> t(std::size_t{1} << (depth - n));
        for (auto& v : t)
            v = random_value(rng, group);
        tables.push_back(std::move(t));
    }
    return GeneratorFamily(depth, group, std::move(tables));
}

Rational random_unit_fraction(Rng& rng, int max_den) {
    long q = uniform(rng, 1, max_den);
    Rational r(uniform(rng, 1, q), q);
    r.canonicalize();
    return r;
}

MeasureSpec random_bernoulli(Rng& rng, const BaseVector& bases, std::size_t depth) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i <= depth; ++i) {
        std::vector<long> w(static_cast<std::size_t>(bases.base(i)));
        long total = 0;
        for (auto& x : w)
            total += x = uniform(rng, 1, 5);
        std::vector<Rational> row;
        for (long x : w) {
            Rational q(x, total);
            q.canonicalize();
            row.push_back(q);
        }
        rows.push_back(std::move(row));
    }
    return MeasureSpec::bernoulli(std::move(rows));
}

GroupValue parse_group_value(const std::string& text, const GroupTag& group) {
    switch (group.kind) {
    case GroupKind::integer: {
        Rational q = parse_rational(text);
        if (q.get_den() != 1)
            throw ParseError("\"" + text + "\" is not an integer");
        return GroupValue::integer(q.get_num());
    }
    case GroupKind::rational:
        return GroupValue::rational(parse_rational(text));
    case GroupKind::dyadic: {
        Rational q = parse_rational(text);
        if (!is_dyadic_rational(q))
            throw ParseError("\"" + text + "\" is not a dyadic rational");
        return GroupValue::dyadic(q);
    }
    case GroupKind::mod_m: {
        Rational q = parse_rational(text);
        if (q.get_den() != 1)
            throw ParseError("\"" + text + "\" is not an integer");
        Integer r = q.get_num() % group.param;
        if (r < 0)
            r += group.param;
        return GroupValue::mod(r.get_si(), group.param);
    }
    case GroupKind::rational_vector: {
        std::vector<Rational> v;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ';'))
            v.push_back(parse_rational(part));
        if (static_cast<std::int64_t>(v.size()) != group.param)
            throw ParseError("vector \"" + text + "\" does not have dimension " + std::to_string(group.param));
        return GroupValue::vector(std::move(v));
    }
    case GroupKind::approx_real:
        try {
            std::size_t used = 0;
            double x = std::stod(text, &used);
            if (used != text.size())
                throw ParseError("bad real \"" + text + "\"");
            return GroupValue::real(x);
        } catch (const std::logic_error&) {
            throw ParseError("bad real \"" + text + "\"");
        }
    }
    throw UnsupportedGroup("unknown group");
}

CylinderFunction parse_generator(const std::string& text, const BaseVector& bases, std::size_t depth,
                                 const GroupTag& group) {
    bool json_like = !text.empty() && (text.front() == '{' || std::filesystem::is_regular_file(text));
    if (json_like) {
        CylinderFunction f = cylinder_function_from_json(read_json_text(text));
        if (!f.bases().compatible(bases))
            throw DomainError("generator bases do not match the model");
        return f;
    }
    std::vector<GroupValue> table;
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::stringstream ss(cleaned);
    std::string item;
    while (ss >> item)
        table.push_back(parse_group_value(item, group));
    for (std::size_t m = 0; m <= depth; ++m)
        if (bases.cardinality(m) == table.size())
            return CylinderFunction(bases.truncated(std::max<std::size_t>(m, 1)), m, group, std::move(table));
    throw ParseError("generator has " + std::to_string(table.size()) +
                     " values, which is not the size of any prefix space up to depth " + std::to_string(depth));
}

GeneratorFamily parse_family(const std::string& text, std::size_t count, std::size_t depth, const GroupTag& group) {
    if (text == "zero")
        return GeneratorFamily::zero(count, depth, group);
    GeneratorFamily f = family_from_json(read_json_text(text));
    return f;
}

void ExperimentConfig::set_model(std::optional<BaseVector> b, std::optional<std::size_t> d) {
    if (d && *d == 0)
        throw DomainError("depth must be >= 1");
    if (b) {
        std::size_t k = d ? *d : b->depth();
        std::vector<int> v = b->values();
        if (v.empty())
            throw DomainError("empty base vector");
        while (v.size() < k)
            v.push_back(v.back());
        v.resize(k);
        bases = BaseVector(std::move(v));
        depth = k;
    } else if (d) {
        std::vector<int> v = bases.values();
        if (bases.is_binary() || v.empty()) {
            bases = BaseVector::binary(*d);
        } else {
            while (v.size() < *d)
                v.push_back(v.back());
            v.resize(*d);
            bases = BaseVector(std::move(v));
        }
        depth = *d;
    }
}

OdometerModel ExperimentConfig::model() const { return OdometerModel(bases.truncated(depth)); }

std::size_t ExperimentConfig::generator_count() const {
    return family_size == 0 ? std::min<std::size_t>(4, depth) : family_size;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
    if (!j.is_object())
        throw ParseError("config must be a JSON object");
    try {
        std::optional<BaseVector> b;
        std::optional<std::size_t> d;
        if (j.contains("bases"))
            b = j["bases"].is_string() ? BaseVector::parse(j["bases"].get<std::string>())
                                       : BaseVector(j["bases"].get<std::vector<int>>());
        if (j.contains("depth"))
            d = j["depth"].get<std::size_t>();
        c.set_model(b, d);
        if (j.contains("group"))
            c.group = GroupTag::parse(j["group"].get<std::string>());
        if (j.contains("measures"))
            c.measures = measures_from_json(j["measures"]);
        if (j.contains("seed"))
            c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("horizon"))
            c.horizon = j["horizon"].get<std::uint64_t>();
        if (j.contains("eps0"))
            c.eps0 = rational_from_json(j["eps0"]);
        if (j.contains("eps"))
            c.eps = rational_from_json(j["eps"]);
        if (j.contains("eps_grid")) {
            c.eps_grid.clear();
            for (const auto& e : j["eps_grid"])
                c.eps_grid.push_back(rational_from_json(e));
        }
        if (j.contains("delta_grid")) {
            c.delta_grid.clear();
            for (const auto& e : j["delta_grid"])
                c.delta_grid.push_back(rational_from_json(e));
        }
        if (j.contains("n_max"))
            c.n_max = j["n_max"].get<std::size_t>();
        if (j.contains("samples"))
            c.samples = j["samples"].get<std::size_t>();
        if (j.contains("N"))
            c.family_size = j["N"].get<std::size_t>();
        if (j.contains("generator"))
            c.generator = j["generator"].is_string() ? j["generator"].get<std::string>() : j["generator"].dump();
        if (j.contains("family"))
            c.family = j["family"].is_string() ? j["family"].get<std::string>() : j["family"].dump();
        if (j.contains("out"))
            c.out = j["out"].get<std::string>();
        if (j.contains("format"))
            c.format = j["format"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad config: ") + e.what());
    }
    if (c.eps0 <= 0 || c.eps <= 0)
        throw DomainError("eps0 and eps must be positive");
    return c;
}

// ---------------------------------------------------------------- suites

namespace {

CylinderFunction config_generator(const ExperimentConfig& c, Rng& rng) {
    if (c.generator)
        return parse_generator(*c.generator, c.bases, c.depth, c.group);
    return random_function(rng, c.bases, c.depth, c.group);
}

Report density_suite(const ExperimentConfig& c, Rng& rng) {
    OdometerModel model = c.model();
    if (model.depth() < 2)
        throw DomainError("density suite needs depth >= 2");
    ZCocycle a(model, config_generator(c, rng));
    MarkerSequence markers(model);
    std::size_t n_max = c.n_max == 0 ? markers.count() : std::min(c.n_max, markers.count());

    Report r;
    r.columns.push_back("n");
    for (std::size_t i = 0; i < c.measures.size(); ++i)
        r.columns.push_back(c.measures.size() == 1 ? "tau3" : "tau3_" + std::to_string(i + 1));
    std::vector<MassTable> tables;
    for (const auto& mu : c.measures)
        tables.emplace_back(mu, model.space());
    CylinderFunction f = a.generator().lift(model.space());

    for (std::size_t n = 1; n <= n_max; ++n) {
        DensityStep step = density_sequence(a, markers, n);
        std::vector<Scalar> row{Scalar(static_cast<int>(n))};
        bool cob = coboundary_solve(ZCocycle(model, step.big_f_n)).is_coboundary();
        bool agrees = true;
        for (std::size_t i = 0; i < model.size(); ++i)
            if (!markers.in_top(n, i) && !(step.big_f_n.at(i) == f.at(i)))
                agrees = false;
        r.check("F_" + std::to_string(n) + " is a coboundary", cob);
        r.check("F_" + std::to_string(n) + " = f off D_" + std::to_string(n), agrees);
        for (const auto& t : tables) {
            Scalar tau = tau3_functional(step.big_f_n, f, t);
            Rational top = 0;
            for (std::size_t i = 0; i < model.size(); ++i)
                if (markers.in_top(n, i))
                    top += t[i];
            r.check("tau3(F_" + std::to_string(n) + ", f) <= mu(D_" + std::to_string(n) + ")", tau <= Scalar(top),
                    tau.to_string() + " <= " + fmt(top));
            row.push_back(tau);
        }
        r.add_row(std::move(row));
    }
    return r;
}

Report topology_suite(const ExperimentConfig& c, Rng& rng) {
    std::size_t samples = c.samples == 0 ? 500 : c.samples;
    std::size_t depth = std::min<std::size_t>(c.depth, 6);
    BaseVector bases = c.bases.truncated(depth);
    const GroupTag rat = GroupTag::rational();
    Report r;
    r.columns = {"i", "eps", "delta", "tau3", "tau4", "exceedance"};
    std::string fail3, fail4;
    for (std::size_t i = 0; i < samples; ++i) {
        std::size_t m = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(depth)));
        CylinderFunction f = random_function(rng, bases, m, rat);
        CylinderFunction g = random_function(rng, bases, m, rat);
        MeasureSpec mu = random_bernoulli(rng, bases, m);
        Rational eps = c.eps_grid.empty() ? random_unit_fraction(rng, 8)
                                          : c.eps_grid[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(c.eps_grid.size()) - 1))];
        Rational delta = c.delta_grid.empty()
                             ? random_unit_fraction(rng, 8)
                             : c.delta_grid[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(c.delta_grid.size()) - 1))];
        MassTable t(mu, PrefixSpace(bases, m));
        Scalar tau3 = tau3_functional(f, g, t);
        Scalar tau4 = tau4_functional(f, g, t);
        Scalar ex = exceedance_measure(f, g, t, Scalar(eps));
        if (tau3 < Scalar(eps * delta) && !(ex < Scalar(delta)) && fail3.empty())
            fail3 = "sample " + std::to_string(i);
        if (tau4 < Scalar(eps * delta / (1 + eps)) && !(ex < Scalar(delta)) && fail4.empty())
            fail4 = "sample " + std::to_string(i);
        r.add_row({Scalar(static_cast<int>(i)), Scalar(eps), Scalar(delta), tau3, tau4, ex});
    }
    r.check("tau3 < eps*delta implies mu(|f-g| > eps) < delta", fail3.empty(), fail3);
    r.check("tau4 < eps*delta/(1+eps) implies mu(|f-g| > eps) < delta", fail4.empty(), fail4);
    return r;
}

std::vector<GeneratorFamily> config_families(const ExperimentConfig& c, Rng& rng, std::size_t default_samples,
                                             const GroupTag& group) {
    std::size_t count = c.generator_count();
    if (c.family)
        return {parse_family(*c.family, count, c.depth, group)};
    std::vector<GeneratorFamily> out;
    std::size_t samples = c.samples == 0 ? default_samples : c.samples;
    for (std::size_t i = 0; i < samples; ++i)
        out.push_back(random_family(rng, count, c.depth, group));
    return out;
}

Report odometer_suite(const ExperimentConfig& c, Rng& rng) {
    Report r;
    r.columns = {"i", "N", "identities", "roundtrip"};
    std::string fail_id, fail_rt;
    auto families = config_families(c, rng, 20, c.group);
    for (std::size_t i = 0; i < families.size(); ++i) {
        const GeneratorFamily& fam = families[i];
        GammaCocycle cc(fam);
        IdentityCheck id = verify_identities(cc, fam.depth());
        GeneratorFamily back = recover_generators(
            [&](std::size_t n, std::size_t idx) { return cc.eval_generator(n, idx); }, fam.count(), fam.depth(),
            fam.group());
        bool rt = back == fam;
        if (!id.ok && fail_id.empty())
            fail_id = "family " + std::to_string(i) + ", generators " + std::to_string(id.failure->n) + "," +
                      std::to_string(id.failure->k) + " at " + cc.space().prefix(id.failure->index).to_string();
        if (!rt && fail_rt.empty())
            fail_rt = "family " + std::to_string(i);
        r.add_row({Scalar(static_cast<int>(i)), Scalar(static_cast<int>(fam.count())), flag(id.ok), flag(rt)});
    }
    r.check("commutation and involution identities", fail_id.empty(), fail_id);
    r.check("recover(eval(F)) = F", fail_rt.empty(), fail_rt);
    return r;
}

Report happrox_suite(const ExperimentConfig& c, Rng& rng) {
    Report r;
    r.columns = {"i", "max_abs_g", "bound"};
    NeighborhoodChain chain(c.eps0);
    GroupTag group = c.group.kind == GroupKind::integer || c.group.kind == GroupKind::dyadic ? c.group
                                                                                            : GroupTag::rational();
    auto families = config_families(c, rng, 10, group);
    std::string fail_dy, fail_eq, fail_bound;
    for (std::size_t i = 0; i < families.size(); ++i) {
        const GeneratorFamily& fam = families[i];
        TransferReport tr = h_approximate(fam, chain);
        GammaCocycle alpha(fam);
        GammaCocycle beta(tr.rounded);
        auto words = all_words(fam.count());
        for (const auto& w : words)
            for (std::size_t x = 0; x < beta.space().size(); ++x)
                if (!(beta.eval_word(w, x).tag() == GroupTag::dyadic()) && fail_dy.empty())
                    fail_dy = "family " + std::to_string(i);
        if (auto bad = check_cohomologous(alpha, beta, tr.transfer, words); bad && fail_eq.empty())
            fail_eq = "family " + std::to_string(i) + " at " + alpha.space().prefix(bad->index).to_string();
        Scalar gmax(0);
        for (const auto& v : tr.transfer.table())
            gmax = max(gmax, norm(v));
        if (!(gmax <= Scalar(c.eps0)) && fail_bound.empty())
            fail_bound = "family " + std::to_string(i) + ": " + gmax.to_string();
        r.add_row({Scalar(static_cast<int>(i)), gmax, Scalar(tr.bound)});
    }
    r.check("beta is dyadic-valued", fail_dy.empty(), fail_dy);
    r.check("alpha - beta = g(gamma x) - g(x)", fail_eq.empty(), fail_eq);
    r.check("max |g| <= eps0 = " + fmt(c.eps0), fail_bound.empty(), fail_bound);
    return r;
}

Report gh_suite(const ExperimentConfig& c, Rng& rng) {
    OdometerModel model = c.model();
    CylinderFunction h = config_generator(c, rng);
    GHReport gh = gh_check(model, h, c.horizon);
    ZCocycle a(model, h);
    const CyclicCocycle& cyc = a.cyclic();
    const std::size_t n = model.size();

    Report r;
    r.columns = {"j", "sup"};
    Scalar sup(0);
    for (std::uint64_t j = 0; j <= gh.horizon; ++j) {
        Scalar row_sup(0);
        for (std::size_t s = 0; s < n; ++s)
            row_sup = max(row_sup, norm(cyc.window_sum(s, 2 * j + 1)));
        sup = max(sup, row_sup);
        r.add_row({Scalar(Rational(static_cast<unsigned long>(j))), row_sup});
    }
    r.check("decision " + std::string(gh.coboundary ? "coboundary" : "not coboundary"),
            gh.coboundary == gh.cycle_sum.is_zero(), "cycle sum " + gh.cycle_sum.to_string());
    r.check("growth slope " + gh.growth_slope.to_string(), true);
    if (gh.coboundary) {
        r.check("window sums <= M = " + gh.certificate->spread.to_string(), sup <= gh.certificate->spread,
                "sup " + sup.to_string());
    } else if (auto w = find_gh_witness(model, h, Scalar(2) * sup)) {
        bool ok = two_sided_sum(model, h, w->point, w->j) == w->sum && Scalar(2) * sup < w->magnitude;
        r.check("witness beyond twice the horizon sup", ok,
                "j = " + std::to_string(w->j) + ", |sum| = " + w->magnitude.to_string());
    } else {
        r.check("witness", true, "finite group: window sums stay bounded");
    }
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"density", "topology", "odometer", "happrox", "gh"};
    return names;
}

Report run_suite(const ExperimentConfig& config, const std::string& suite) {
    Rng rng(config.seed);
    Report r;
    if (suite == "density")
        r = density_suite(config, rng);
    else if (suite == "topology")
        r = topology_suite(config, rng);
    else if (suite == "odometer")
        r = odometer_suite(config, rng);
    else if (suite == "happrox")
        r = happrox_suite(config, rng);
    else if (suite == "gh")
        r = gh_suite(config, rng);
    else
        throw UsageError("unknown suite \"" + suite + "\"");
    r.id = suite;
    r.seed = config.seed;
    return r;
}

} // namespace cocycle
