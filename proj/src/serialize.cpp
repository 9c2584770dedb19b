#include "cocycle/serialize.hpp"

namespace cocycle {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

BaseVector bases_from_json(const Json& j) { return BaseVector(get<std::vector<int>>(j, "bases")); }

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array())
        throw ParseError("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& e : j)
        out.push_back(rational_from_json(e));
    return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(rational_to_json(q));
    return out;
}

} // namespace

Json integer_to_json(const Integer& n) {
    if (n.fits_slong_p())
        return static_cast<std::int64_t>(n.get_si());
    return n.get_str();
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer n;
        if (n.set_str(j.get<std::string>(), 10) != 0)
            throw ParseError("bad integer \"" + j.get<std::string>() + "\"");
        return n;
    }
    throw ParseError("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_float())
        return parse_rational(j.dump());
    throw ParseError("expected a rational, got " + j.dump());
}

Json to_json(const GroupValue& v) {
    switch (v.tag().kind) {
    case GroupKind::integer:
        return {{"t", "int"}, {"n", integer_to_json(v.as_integer())}};
    case GroupKind::rational: {
        const Rational& q = v.as_rational_variant();
        return {{"t", "rat"}, {"n", integer_to_json(q.get_num())}, {"d", integer_to_json(q.get_den())}};
    }
    case GroupKind::dyadic:
        return {{"t", "dy"}, {"n", integer_to_json(v.dyadic_numerator())}, {"k", v.dyadic_exponent()}};
    case GroupKind::mod_m:
        return {{"t", "mod"}, {"r", v.residue()}, {"m", v.modulus()}};
    case GroupKind::rational_vector:
        return {{"t", "vec"}, {"v", rationals_to_json(v.coords())}};
    case GroupKind::approx_real:
        return {{"t", "real"}, {"x", v.as_real()}};
    }
    throw UnsupportedGroup("unknown group");
}

GroupValue group_value_from_json(const Json& j) {
    std::string t = get<std::string>(j, "t");
    if (t == "int")
        return GroupValue::integer(integer_from_json(field(j, "n")));
    if (t == "rat") {
        Integer d = integer_from_json(field(j, "d"));
        if (d == 0)
            throw ParseError("zero denominator");
        Rational q(integer_from_json(field(j, "n")), d);
        q.canonicalize();
        return GroupValue::rational(q);
    }
    if (t == "dy")
        return GroupValue::dyadic(integer_from_json(field(j, "n")), get<unsigned long>(j, "k"));
    if (t == "mod")
        return GroupValue::mod(get<std::int64_t>(j, "r"), get<std::int64_t>(j, "m"));
    if (t == "vec")
        return GroupValue::vector(rationals_from_json(field(j, "v")));
    if (t == "real")
        return GroupValue::real(get<double>(j, "x"));
    throw ParseError("unknown value tag \"" + t + "\"");
}

Json to_json(const CylinderFunction& f) {
    Json table = Json::array();
    for (const auto& v : f.table())
        table.push_back(to_json(v));
    return {{"bases", f.bases().values()}, {"depth", f.depth()}, {"group", f.group().name()}, {"table", table}};
}

CylinderFunction cylinder_function_from_json(const Json& j) {
    std::vector<GroupValue> table;
    for (const auto& e : field(j, "table"))
        table.push_back(group_value_from_json(e));
    return CylinderFunction(bases_from_json(j), get<std::size_t>(j, "depth"),
                            GroupTag::parse(get<std::string>(j, "group")), std::move(table));
}

Json to_json(const MeasureSpec& mu) {
    return std::visit(
        [](const auto& m) -> Json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Bernoulli>) {
                Json rows = Json::array();
                for (const auto& r : m.weights)
                    rows.push_back(rationals_to_json(r));
                return {{"type", "bernoulli"}, {"weights", rows}};
            } else if constexpr (std::is_same_v<T, Markov>) {
                Json rows = Json::array();
                for (const auto& r : m.transition)
                    rows.push_back(rationals_to_json(r));
                return {{"type", "markov"}, {"initial", rationals_to_json(m.initial)}, {"transition", rows}};
            } else if constexpr (std::is_same_v<T, Dirac>) {
                return {{"type", "dirac"}, {"point", m.point.digits()}};
            } else {
                Json parts = Json::array();
                for (const auto& p : m.parts)
                    parts.push_back(to_json(p));
                return {{"type", "mixture"}, {"weights", rationals_to_json(m.weights)}, {"parts", parts}};
            }
        },
        mu.variant());
}

MeasureSpec measure_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "uniform")
            return MeasureSpec::uniform();
        throw ParseError("unknown measure \"" + j.get<std::string>() + "\"");
    }
    std::string type = get<std::string>(j, "type");
    if (type == "uniform")
        return MeasureSpec::uniform();
    if (type == "bernoulli") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : field(j, "weights"))
            rows.push_back(rationals_from_json(r));
        return MeasureSpec::bernoulli(std::move(rows));
    }
    if (type == "markov") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : field(j, "transition"))
            rows.push_back(rationals_from_json(r));
        return MeasureSpec::markov(rationals_from_json(field(j, "initial")), std::move(rows));
    }
    if (type == "dirac")
        return MeasureSpec::dirac(Prefix(get<std::vector<int>>(j, "point")));
    if (type == "mixture") {
        std::vector<MeasureSpec> parts;
        for (const auto& p : field(j, "parts"))
            parts.push_back(measure_from_json(p));
        return MeasureSpec::mixture(rationals_from_json(field(j, "weights")), std::move(parts));
    }
    throw ParseError("unknown measure type \"" + type + "\"");
}

std::vector<MeasureSpec> measures_from_json(const Json& j) {
    std::vector<MeasureSpec> out;
    if (j.is_array())
        for (const auto& e : j)
            out.push_back(measure_from_json(e));
    else
        out.push_back(measure_from_json(j));
    return out;
}

Json to_json(const GeneratorFamily& family) {
    Json tables = Json::array();
    for (const auto& t : family.tables()) {
        Json row = Json::array();
        for (const auto& v : t)
            row.push_back(to_json(v));
        tables.push_back(row);
    }
    return {{"N", family.count()}, {"depth", family.depth()}, {"group", family.group().name()}, {"tables", tables}};
}

GeneratorFamily family_from_json(const Json& j) {
    auto count = get<std::size_t>(j, "N");
    std::vector<std::vector<GroupValue>> tables;
    for (const auto& row : field(j, "tables")) {
        std::vector<GroupValue> t;
        for (const auto& e : row)
            t.push_back(group_value_from_json(e));
        tables.push_back(std::move(t));
    }
    if (tables.size() != count)
        throw ParseError("N does not match the number of tables");
    return GeneratorFamily(get<std::size_t>(j, "depth"), GroupTag::parse(get<std::string>(j, "group")),
                           std::move(tables));
}

Json to_json(const FullGroupElement& r) {
    return {{"bases", r.model().bases().values()}, {"depth", r.model().depth()}, {"jumps", r.jumps()}};
}

FullGroupElement full_group_element_from_json(const Json& j) {
    BaseVector b = bases_from_json(j);
    auto depth = get<std::size_t>(j, "depth");
    return FullGroupElement(OdometerModel(b.truncated(depth)), get<std::vector<std::int64_t>>(j, "jumps"));
}

Json to_json(const TowerDecomposition& towers) {
    Json out = Json::array();
    for (const auto& t : towers.towers())
        out.push_back({{"height", t.height}, {"base", t.base}});
    return {{"towers", out}};
}

Json scalar_to_json(const Scalar& s) {
    if (s.is_exact())
        return rational_to_json(s.exact());
    return s.to_double();
}

Scalar scalar_from_json(const Json& j) {
    if (j.is_number_float())
        return Scalar(j.get<double>());
    return Scalar(rational_from_json(j));
}

Json to_json(const CoboundaryCertificate& cert) {
    return {{"transfer", to_json(cert.transfer)}, {"M", scalar_to_json(cert.spread)}};
}

CoboundaryCertificate certificate_from_json(const Json& j) {
    return CoboundaryCertificate{cylinder_function_from_json(field(j, "transfer")), scalar_from_json(field(j, "M"))};
}

} // namespace cocycle
