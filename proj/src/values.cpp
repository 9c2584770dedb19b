#include "cocycle/values.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cocycle {

namespace {

bool power_of_two(const Integer& n) {
    return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

unsigned long log2_exact(const Integer& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
}

Integer pow2(unsigned long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

std::int64_t normalize_residue(const Integer& r, std::int64_t m) {
    Integer mm(static_cast<long>(m));
    Integer x = r % mm;
    if (x < 0)
        x += mm;
    return x.get_si();
}

[[noreturn]] void mismatch(const GroupValue& a, const GroupValue& b) {
    throw GroupMismatch("group mismatch: " + a.tag().name() + " vs " + b.tag().name());
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw ParseError("empty rational");
    try {
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
                throw ParseError("bad rational '" + text + "'");
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t decimals = s.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+")
                throw ParseError("bad rational '" + text + "'");
            if (digits[0] == '+')
                digits.erase(0, 1);
            Integer ten_k;
            mpz_ui_pow_ui(ten_k.get_mpz_t(), 10, decimals);
            Rational q(Integer(digits, 10), ten_k);
            q.canonicalize();
            return q;
        }
        if (s[0] == '+')
            s.erase(0, 1);
        Rational q(s, 10);
        if (q.get_den() == 0)
            throw ParseError("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + text + "'");
    }
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

// ---------------------------------------------------------------- Scalar

const Rational& Scalar::exact() const {
    if (auto q = std::get_if<Rational>(&value_))
        return *q;
    throw UnsupportedGroup("scalar is approximate");
}

double Scalar::to_double() const {
    if (auto q = std::get_if<Rational>(&value_))
        return q->get_d();
    return std::get<double>(value_);
}

std::string Scalar::to_string() const {
    if (auto q = std::get_if<Rational>(&value_))
        return q->get_str();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
    return buf;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact())
        return Scalar(Rational(a.exact() + b.exact()));
    return Scalar(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact())
        return Scalar(Rational(a.exact() - b.exact()));
    return Scalar(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact())
        return Scalar(Rational(a.exact() * b.exact()));
    return Scalar(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        if (b.exact() == 0)
            throw DomainError("division by zero");
        return Scalar(Rational(a.exact() / b.exact()));
    }
    return Scalar(a.to_double() / b.to_double());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact())
        return a.exact() == b.exact();
    return a.to_double() == b.to_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact())
        return a.exact() < b.exact();
    return a.to_double() < b.to_double();
}

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

// ---------------------------------------------------------------- GroupTag

GroupTag GroupTag::mod(std::int64_t m) {
    if (m < 1)
        throw DomainError("modulus must be >= 1");
    return {GroupKind::mod_m, m};
}

GroupTag GroupTag::vector(std::int64_t dim) {
    if (dim < 1)
        throw DomainError("vector dimension must be >= 1");
    return {GroupKind::rational_vector, dim};
}

GroupTag GroupTag::parse(const std::string& name) {
    if (name == "int")
        return integer();
    if (name == "rat")
        return rational();
    if (name == "dy")
        return dyadic();
    if (name == "real")
        return approx_real();
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        std::string head = name.substr(0, colon);
        std::int64_t p = 0;
        try {
            p = std::stoll(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("bad group '" + name + "'");
        }
        if (head == "mod")
            return mod(p);
        if (head == "vec")
            return vector(p);
    }
    throw ParseError("unknown group '" + name + "'");
}

std::string GroupTag::name() const {
    switch (kind) {
    case GroupKind::integer: return "int";
    case GroupKind::rational: return "rat";
    case GroupKind::dyadic: return "dy";
    case GroupKind::mod_m: return "mod:" + std::to_string(param);
    case GroupKind::rational_vector: return "vec:" + std::to_string(param);
    case GroupKind::approx_real: return "real";
    }
    return "?";
}

// ---------------------------------------------------------------- GroupValue

GroupValue GroupValue::integer(Integer n) { return GroupValue(Payload(std::move(n))); }

GroupValue GroupValue::rational(Rational q) {
    q.canonicalize();
    return GroupValue(Payload(std::move(q)));
}

GroupValue GroupValue::dyadic(Integer num, unsigned long exponent) {
    if (num == 0)
        exponent = 0;
    while (exponent > 0 && mpz_even_p(num.get_mpz_t())) {
        num /= 2;
        --exponent;
    }
    return GroupValue(Payload(Dyadic{std::move(num), exponent}));
}

GroupValue GroupValue::dyadic(const Rational& q) {
    if (!power_of_two(q.get_den()))
        throw DomainError("not a dyadic rational: " + q.get_str());
    return dyadic(q.get_num(), log2_exact(q.get_den()));
}

GroupValue GroupValue::mod(std::int64_t residue, std::int64_t modulus) {
    if (modulus < 1)
        throw DomainError("modulus must be >= 1");
    return GroupValue(Payload(Residue{normalize_residue(Integer(static_cast<long>(residue)), modulus), modulus}));
}

GroupValue GroupValue::vector(std::vector<Rational> coords) {
    if (coords.empty())
        throw DomainError("vector dimension must be >= 1");
    for (auto& c : coords)
        c.canonicalize();
    return GroupValue(Payload(std::move(coords)));
}

GroupValue GroupValue::real(double x) { return GroupValue(Payload(x)); }

GroupValue GroupValue::zero(const GroupTag& tag) {
    switch (tag.kind) {
    case GroupKind::integer: return integer(0);
    case GroupKind::rational: return rational(0);
    case GroupKind::dyadic: return dyadic(Integer(0));
    case GroupKind::mod_m: return mod(0, tag.param);
    case GroupKind::rational_vector:
        return vector(std::vector<Rational>(static_cast<std::size_t>(tag.param), Rational(0)));
    case GroupKind::approx_real: return real(0.0);
    }
    throw UnsupportedGroup("unknown group");
}

GroupTag GroupValue::tag() const {
    switch (value_.index()) {
    case 0: return GroupTag::integer();
    case 1: return GroupTag::rational();
    case 2: return GroupTag::dyadic();
    case 3: return GroupTag::mod(std::get<Residue>(value_).m);
    case 4: return GroupTag::vector(static_cast<std::int64_t>(std::get<std::vector<Rational>>(value_).size()));
    default: return GroupTag::approx_real();
    }
}

bool GroupValue::is_zero() const { return *this == zero(tag()); }

const Integer& GroupValue::as_integer() const {
    if (auto p = std::get_if<Integer>(&value_))
        return *p;
    throw GroupMismatch("not an integer value");
}

const Rational& GroupValue::as_rational_variant() const {
    if (auto p = std::get_if<Rational>(&value_))
        return *p;
    throw GroupMismatch("not a rational value");
}

const Integer& GroupValue::dyadic_numerator() const {
    if (auto p = std::get_if<Dyadic>(&value_))
        return p->num;
    throw GroupMismatch("not a dyadic value");
}

unsigned long GroupValue::dyadic_exponent() const {
    if (auto p = std::get_if<Dyadic>(&value_))
        return p->exponent;
    throw GroupMismatch("not a dyadic value");
}

std::int64_t GroupValue::residue() const {
    if (auto p = std::get_if<Residue>(&value_))
        return p->r;
    throw GroupMismatch("not a residue");
}

std::int64_t GroupValue::modulus() const {
    if (auto p = std::get_if<Residue>(&value_))
        return p->m;
    throw GroupMismatch("not a residue");
}

const std::vector<Rational>& GroupValue::coords() const {
    if (auto p = std::get_if<std::vector<Rational>>(&value_))
        return *p;
    throw GroupMismatch("not a vector value");
}

double GroupValue::as_real() const {
    if (auto p = std::get_if<double>(&value_))
        return *p;
    throw GroupMismatch("not a real value");
}

Rational GroupValue::to_rational() const {
    switch (value_.index()) {
    case 0: return Rational(std::get<Integer>(value_));
    case 1: return std::get<Rational>(value_);
    case 2: {
        const auto& d = std::get<Dyadic>(value_);
        Rational q(d.num, pow2(d.exponent));
        q.canonicalize();
        return q;
    }
    case 5: {
        double x = std::get<double>(value_);
        if (!std::isfinite(x))
            throw DomainError("non-finite real");
        return Rational(x);
    }
    default: throw UnsupportedGroup("no rational value for group " + tag().name());
    }
}

std::string GroupValue::to_string() const {
    switch (value_.index()) {
    case 0: return std::get<Integer>(value_).get_str();
    case 1: return std::get<Rational>(value_).get_str();
    case 2: return to_rational().get_str();
    case 3: {
        const auto& r = std::get<Residue>(value_);
        return std::to_string(r.r) + " (mod " + std::to_string(r.m) + ")";
    }
    case 4: {
        std::string s = "(";
        const auto& v = std::get<std::vector<Rational>>(value_);
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i].get_str();
        return s + ")";
    }
    default: return Scalar(std::get<double>(value_)).to_string();
    }
}

GroupValue operator+(const GroupValue& a, const GroupValue& b) {
    if (a.value_.index() != b.value_.index())
        mismatch(a, b);
    switch (a.value_.index()) {
    case 0: return GroupValue::integer(std::get<Integer>(a.value_) + std::get<Integer>(b.value_));
    case 1: return GroupValue::rational(std::get<Rational>(a.value_) + std::get<Rational>(b.value_));
    case 2: {
        const auto& x = std::get<GroupValue::Dyadic>(a.value_);
        const auto& y = std::get<GroupValue::Dyadic>(b.value_);
        unsigned long k = std::max(x.exponent, y.exponent);
        Integer n = x.num * pow2(k - x.exponent) + y.num * pow2(k - y.exponent);
        return GroupValue::dyadic(std::move(n), k);
    }
    case 3: {
        const auto& x = std::get<GroupValue::Residue>(a.value_);
        const auto& y = std::get<GroupValue::Residue>(b.value_);
        if (x.m != y.m)
            mismatch(a, b);
        return GroupValue::mod((x.r + y.r) % x.m, x.m);
    }
    case 4: {
        const auto& x = std::get<std::vector<Rational>>(a.value_);
        const auto& y = std::get<std::vector<Rational>>(b.value_);
        if (x.size() != y.size())
            mismatch(a, b);
        std::vector<Rational> s(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            s[i] = x[i] + y[i];
        return GroupValue::vector(std::move(s));
    }
    default: return GroupValue::real(std::get<double>(a.value_) + std::get<double>(b.value_));
    }
}

GroupValue operator-(const GroupValue& a) {
    switch (a.value_.index()) {
    case 0: return GroupValue::integer(-std::get<Integer>(a.value_));
    case 1: return GroupValue::rational(-std::get<Rational>(a.value_));
    case 2: {
        const auto& x = std::get<GroupValue::Dyadic>(a.value_);
        return GroupValue::dyadic(-x.num, x.exponent);
    }
    case 3: {
        const auto& x = std::get<GroupValue::Residue>(a.value_);
        return GroupValue::mod((x.m - x.r) % x.m, x.m);
    }
    case 4: {
        auto v = std::get<std::vector<Rational>>(a.value_);
        for (auto& c : v)
            c = -c;
        return GroupValue::vector(std::move(v));
    }
    default: return GroupValue::real(-std::get<double>(a.value_));
    }
}

GroupValue operator-(const GroupValue& a, const GroupValue& b) { return a + (-b); }

bool operator==(const GroupValue& a, const GroupValue& b) {
    if (a.value_.index() != b.value_.index())
        return false;
    switch (a.value_.index()) {
    case 2: {
        const auto& x = std::get<GroupValue::Dyadic>(a.value_);
        const auto& y = std::get<GroupValue::Dyadic>(b.value_);
        return x.exponent == y.exponent && x.num == y.num;
    }
    case 3: {
        const auto& x = std::get<GroupValue::Residue>(a.value_);
        const auto& y = std::get<GroupValue::Residue>(b.value_);
        return x.m == y.m && x.r == y.r;
    }
    default: return a.value_ == b.value_;
    }
}

GroupValue add(const GroupValue& a, const GroupValue& b) { return a + b; }
GroupValue negate(const GroupValue& a) { return -a; }

GroupValue multiply(const GroupValue& a, std::int64_t k) {
    return multiply(a, Integer(static_cast<long>(k)));
}

GroupValue multiply(const GroupValue& a, const Integer& k) {
    switch (a.tag().kind) {
    case GroupKind::integer: return GroupValue::integer(a.as_integer() * k);
    case GroupKind::rational: return GroupValue::rational(a.as_rational_variant() * Rational(k));
    case GroupKind::dyadic: return GroupValue::dyadic(a.dyadic_numerator() * k, a.dyadic_exponent());
    case GroupKind::mod_m: {
        Integer r = Integer(static_cast<long>(a.residue())) * k;
        return GroupValue::mod(normalize_residue(r, a.modulus()), a.modulus());
    }
    case GroupKind::rational_vector: {
        auto v = a.coords();
        for (auto& c : v)
            c *= Rational(k);
        return GroupValue::vector(std::move(v));
    }
    case GroupKind::approx_real: return GroupValue::real(a.as_real() * k.get_d());
    }
    throw UnsupportedGroup("unknown group");
}

Scalar metric(const GroupValue& a, const GroupValue& b) {
    if (!(a.tag() == b.tag()))
        throw GroupMismatch("group mismatch: " + a.tag().name() + " vs " + b.tag().name());
    GroupValue d = a - b;
    switch (d.tag().kind) {
    case GroupKind::integer: return Scalar(Rational(abs(d.as_integer())));
    case GroupKind::rational: return Scalar(Rational(abs(d.as_rational_variant())));
    case GroupKind::dyadic: return Scalar(Rational(abs(d.to_rational())));
    case GroupKind::mod_m: {
        std::int64_t r = d.residue();
        return Scalar(Rational(static_cast<long>(std::min(r, d.modulus() - r))));
    }
    case GroupKind::rational_vector: {
        Rational s = 0;
        for (const auto& c : d.coords())
            s += abs(c);
        return Scalar(s);
    }
    case GroupKind::approx_real: return Scalar(std::fabs(d.as_real()));
    }
    throw UnsupportedGroup("unknown group");
}

Scalar norm(const GroupValue& a) { return metric(a, GroupValue::zero(a.tag())); }

GroupValue embed(const GroupValue& v, const GroupTag& target) {
    GroupTag from = v.tag();
    if (from == target)
        return v;
    if (target.kind == GroupKind::rational &&
        (from.kind == GroupKind::integer || from.kind == GroupKind::dyadic))
        return GroupValue::rational(v.to_rational());
    if (target.kind == GroupKind::dyadic && from.kind == GroupKind::integer)
        return GroupValue::dyadic(v.as_integer(), 0);
    if (target.kind == GroupKind::approx_real &&
        (from.kind == GroupKind::integer || from.kind == GroupKind::rational || from.kind == GroupKind::dyadic))
        return GroupValue::real(v.to_rational().get_d());
    throw GroupMismatch("cannot embed " + from.name() + " into " + target.name());
}

bool is_dyadic_rational(const Rational& q) {
    return power_of_two(q.get_den());
}

// ---------------------------------------------------------------- chain

NeighborhoodChain::NeighborhoodChain(Rational eps0) : eps0_(std::move(eps0)) {
    eps0_.canonicalize();
    if (eps0_ <= 0)
        throw DomainError("base radius must be positive");
}

Rational NeighborhoodChain::radius(unsigned n) const {
    Rational r(eps0_.get_num(), eps0_.get_den() * pow2(n));
    r.canonicalize();
    return r;
}

bool NeighborhoodChain::nested(unsigned n) const {
    return 2 * radius(n + 1) <= radius(n);
}

Rational NeighborhoodChain::total_radius(unsigned count) const {
    Rational s = 0;
    for (unsigned n = 1; n <= count; ++n)
        s += radius(n);
    return s;
}

GroupValue round_to_dense(const GroupValue& v, unsigned n, const NeighborhoodChain& chain) {
    GroupKind kind = v.tag().kind;
    if (kind != GroupKind::rational && kind != GroupKind::approx_real && kind != GroupKind::integer &&
        kind != GroupKind::dyadic)
        throw UnsupportedGroup("round_to_dense: unsupported group " + v.tag().name());
    Rational q = v.to_rational();
    if (is_dyadic_rational(q))
        return GroupValue::dyadic(q);

    Rational eps = chain.radius(n);
    unsigned long k = 0;
    while (Rational(1, pow2(k)) > eps)
        ++k;
    Rational scaled = q * Rational(pow2(k));
    Integer lo;
    mpz_fdiv_q(lo.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational frac = scaled - Rational(lo);
    Rational half(1, 2);
    Integer num = lo;
    if (frac > half || (frac == half && scaled < 0))
        num = lo + 1;
    return GroupValue::dyadic(num, k);
}

} // namespace cocycle
