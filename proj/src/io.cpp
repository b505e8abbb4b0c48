#include "trife/io.hpp"

#include <cmath>
#include <cstdio>

namespace trife
{

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            if (key != "re" && key != "im") {
                throw ConfigError("unexpected key '" + key + "' in complex number");
            }
            if (!value.is_number()) {
                throw ConfigError("complex components must be numbers");
            }
        }
        return {j.value("re", 0.0), j.value("im", 0.0)};
    }
    throw ConfigError("expected a complex number, got " + j.dump());
}

namespace
{

Complex get_c(const Json &j, const char *key, Complex fallback)
{
    return j.contains(key) ? complex_from_json(j.at(key)) : fallback;
}

std::array<Complex, 3> get_c3(const Json &j, const char *key, std::array<Complex, 3> fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &a = j.at(key);
    if (!a.is_array() || a.size() != 3) {
        throw ConfigError(std::string("'") + key + "' must be an array of three complex numbers");
    }
    return {complex_from_json(a[0]), complex_from_json(a[1]), complex_from_json(a[2])};
}

Json c3_json(const std::array<Complex, 3> &a) { return Json::array({to_json(a[0]), to_json(a[1]), to_json(a[2])}); }

template <class T>
T get_num(const Json &j, const char *key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a number");
    }
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) {
            throw ConfigError(std::string("'") + key + "' must be an integer");
        }
    }
    return v.get<T>();
}

void require_object(const Json &j, const char *what)
{
    if (!j.is_object()) {
        throw ConfigError(std::string(what) + " must be a JSON object");
    }
}

struct NamedFn {
    ScalarFn f, d1, d2;
};

NamedFn catalog_function(const std::string &name)
{
    if (name == "sin") {
        return {[](Complex x) { return std::sin(x); }, [](Complex x) { return std::cos(x); },
                [](Complex x) { return -std::sin(x); }};
    }
    if (name == "exp") {
        return {[](Complex x) { return std::exp(x); }, [](Complex x) { return std::exp(x); },
                [](Complex x) { return std::exp(x); }};
    }
    if (name == "cosh") {
        return {[](Complex x) { return std::cosh(x); }, [](Complex x) { return std::sinh(x); },
                [](Complex x) { return std::cosh(x); }};
    }
    if (name == "cube") {
        return {[](Complex x) { return x * x * x; }, [](Complex x) { return 3.0 * x * x; },
                [](Complex x) { return 6.0 * x; }};
    }
    throw ConfigError("unknown function '" + name + "' (expected sin, exp, cosh or cube)");
}

} // namespace

Json to_json(const WeierstrassParams &w) { return Json{{"g2", to_json(w.g2)}, {"g3", to_json(w.g3)}}; }

WeierstrassParams weier_from_json(const Json &j)
{
    require_object(j, "weier");
    return {get_c(j, "g2", {}), get_c(j, "g3", {})};
}

Json to_json(const SampleSpec &s)
{
    return Json{{"seed", s.seed},
                {"count", s.count},
                {"domain",
                 {{"re_min", s.domain.re_min},
                  {"re_max", s.domain.re_max},
                  {"im_min", s.domain.im_min},
                  {"im_max", s.domain.im_max}}},
                {"pole_exclusion_radius", s.pole_exclusion_radius}};
}

SampleSpec sample_spec_from_json(const Json &j, SampleSpec base)
{
    require_object(j, "sample");
    base.seed = get_num<std::uint64_t>(j, "seed", base.seed);
    base.count = get_num<int>(j, "count", base.count);
    if (j.contains("domain")) {
        const Json &d = j.at("domain");
        require_object(d, "domain");
        base.domain.re_min = get_num<double>(d, "re_min", base.domain.re_min);
        base.domain.re_max = get_num<double>(d, "re_max", base.domain.re_max);
        base.domain.im_min = get_num<double>(d, "im_min", base.domain.im_min);
        base.domain.im_max = get_num<double>(d, "im_max", base.domain.im_max);
    }
    base.pole_exclusion_radius = get_num<double>(j, "pole_exclusion_radius", base.pole_exclusion_radius);
    return base;
}

Json to_json(const ResidualReport &r)
{
    return Json{{"name", r.name},
                {"samples", r.samples},
                {"max_abs", r.max_abs},
                {"mean_abs", r.mean_abs},
                {"worst_point", Json::array({to_json(r.worst_point.first), to_json(r.worst_point.second)})},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"skipped", r.skipped},
                {"note", r.note}};
}

Json to_json(const MixingScan &m)
{
    Json cells = Json::array();
    for (const auto &c : m.cells) {
        cells.push_back(Json{{"s1", c.s1},
                             {"t1", c.t1},
                             {"det_max", c.det_max},
                             {"expected_zero", c.expected_zero},
                             {"ok", c.ok}});
    }
    return Json{{"zero_tol", m.zero_tol}, {"nonzero_floor", m.nonzero_floor}, {"pass", m.pass}, {"cells", cells}};
}

Json to_json(const LimitLadder &l)
{
    return Json{{"name", l.name},
                {"eps", l.eps},
                {"deviation", l.deviation},
                {"slope", l.slope},
                {"min_slope", l.min_slope},
                {"pass", l.pass}};
}

Json to_json(const SpectrumReport &s)
{
    const double max_drift = std::max({s.drift[0], s.drift[1], s.drift[2]});
    Json initial = Json::array();
    Json final_ = Json::array();
    for (int k = 0; k < 3; ++k) {
        initial.push_back(s.traces[k].empty() ? 0.0 : s.traces[k].front());
        final_.push_back(s.traces[k].empty() ? 0.0 : s.traces[k].back());
    }
    return Json{{"steps", s.times.size()},
                {"trace_initial", initial},
                {"trace_final", final_},
                {"drift", Json::array({s.drift[0], s.drift[1], s.drift[2]})},
                {"max_drift", max_drift},
                {"lax_residual", s.lax_residual},
                {"energy_drift", s.energy_drift},
                {"momentum_drift", s.momentum_drift}};
}

// ---------------------------------------------------------------------------

SolutionTriple FamilySpec::build() const
{
    switch (family) {
    case Family::elliptic:
        return make_elliptic_solution(elliptic);
    case Family::entire:
        return make_entire_solution(entire, literal);
    case Family::polynomial:
        return make_polynomial_solution(polynomial, literal);
    case Family::degenerate1:
    case Family::degenerate2:
    case Family::degenerate3:
        return make_degenerate_solution(degenerate);
    case Family::identical:
        return make_identical_solution(id_alpha, id_beta, id_weier).as_triple();
    }
    throw ConfigError("unknown family");
}

std::optional<WeierstrassParams> FamilySpec::weier() const
{
    if (family == Family::elliptic) {
        return elliptic.weier;
    }
    if (family == Family::identical) {
        return id_weier;
    }
    return std::nullopt;
}

FamilySpec family_from_json(const Json &j)
{
    require_object(j, "family");
    if (!j.contains("type") || !j.at("type").is_string()) {
        throw ConfigError("family needs a string 'type'");
    }
    FamilySpec f;
    try {
        f.family = family_from_name(j.at("type").get<std::string>());
    } catch (const Error &e) {
        throw ConfigError(e.what());
    }
    if (j.contains("literal")) {
        if (!j.at("literal").is_boolean()) {
            throw ConfigError("'literal' must be a boolean");
        }
        f.literal = j.at("literal").get<bool>();
    }
    switch (f.family) {
    case Family::elliptic: {
        auto &p = f.elliptic;
        p.alpha = get_c(j, "alpha", p.alpha);
        p.beta = get_c(j, "beta", p.beta);
        p.gamma = get_c3(j, "gamma", p.gamma);
        p.a1 = get_c(j, "a1", p.a1);
        p.a2 = get_c(j, "a2", p.a2);
        if (j.contains("weier")) {
            p.weier = weier_from_json(j.at("weier"));
        }
        break;
    }
    case Family::entire: {
        auto &p = f.entire;
        p.alpha = get_c3(j, "alpha", p.alpha);
        p.lambda = get_c(j, "lambda", p.lambda);
        p.beta = get_c(j, "beta", p.beta);
        p.gamma = get_c3(j, "gamma", p.gamma);
        break;
    }
    case Family::polynomial: {
        auto &p = f.polynomial;
        p.alpha = get_c(j, "alpha", p.alpha);
        p.beta = get_c3(j, "beta", p.beta);
        p.gamma = get_c3(j, "gamma", p.gamma);
        break;
    }
    case Family::degenerate1:
    case Family::degenerate2:
    case Family::degenerate3: {
        auto &p = f.degenerate;
        p.case_id = f.family == Family::degenerate1 ? 1 : f.family == Family::degenerate2 ? 2 : 3;
        p.f0 = get_c(j, "f0", {});
        p.f1 = get_c(j, "f1", {});
        p.g0 = get_c(j, "g0", {});
        p.g1 = get_c(j, "g1", {});
        p.h0 = get_c(j, "h0", {});
        p.h1 = get_c(j, "h1", {});
        p.b = get_c(j, "b", {});
        p.big0_f = get_c(j, "F0", {});
        p.big0_g = get_c(j, "G0", {});
        p.big0_h = get_c(j, "H0", {});
        p.a = get_c(j, "a", {});
        p.c = get_c(j, "c", {});
        p.c1 = get_c(j, "c1", {});
        p.c2 = get_c(j, "c2", {});
        p.lambda = get_c(j, "lambda", Complex{1.0});
        if (p.case_id == 2) {
            p.f_name = j.value("f", std::string("sin"));
            const NamedFn fn = catalog_function(p.f_name);
            p.f_fn = fn.f;
            p.f_d1 = fn.d1;
            p.f_d2 = fn.d2;
        }
        break;
    }
    case Family::identical:
        f.id_alpha = get_c(j, "alpha", f.id_alpha);
        f.id_beta = get_c(j, "beta", f.id_beta);
        if (j.contains("weier")) {
            f.id_weier = weier_from_json(j.at("weier"));
        }
        break;
    }
    return f;
}

Json to_json(const FamilySpec &f)
{
    Json j{{"type", std::string(family_name(f.family))}};
    switch (f.family) {
    case Family::elliptic:
        j["alpha"] = to_json(f.elliptic.alpha);
        j["beta"] = to_json(f.elliptic.beta);
        j["gamma"] = c3_json(f.elliptic.gamma);
        j["a1"] = to_json(f.elliptic.a1);
        j["a2"] = to_json(f.elliptic.a2);
        j["weier"] = to_json(f.elliptic.weier);
        break;
    case Family::entire:
        j["alpha"] = c3_json(f.entire.alpha);
        j["lambda"] = to_json(f.entire.lambda);
        j["beta"] = to_json(f.entire.beta);
        j["gamma"] = c3_json(f.entire.gamma);
        j["literal"] = f.literal;
        break;
    case Family::polynomial:
        j["alpha"] = to_json(f.polynomial.alpha);
        j["beta"] = c3_json(f.polynomial.beta);
        j["gamma"] = c3_json(f.polynomial.gamma);
        j["literal"] = f.literal;
        break;
    case Family::degenerate1:
    case Family::degenerate2:
    case Family::degenerate3: {
        const auto &p = f.degenerate;
        for (auto [k, v] : {std::pair{"f0", p.f0}, {"f1", p.f1}, {"g0", p.g0}, {"g1", p.g1}, {"h0", p.h0},
                            {"h1", p.h1}, {"b", p.b}, {"F0", p.big0_f}, {"G0", p.big0_g}, {"H0", p.big0_h},
                            {"a", p.a}, {"c", p.c}, {"c1", p.c1}, {"c2", p.c2}, {"lambda", p.lambda}}) {
            j[k] = to_json(v);
        }
        if (p.case_id == 2) {
            j["f"] = p.f_name;
        }
        break;
    }
    case Family::identical:
        j["alpha"] = to_json(f.id_alpha);
        j["beta"] = to_json(f.id_beta);
        j["weier"] = to_json(f.id_weier);
        break;
    }
    return j;
}

ChainSpec chain_from_json(const Json &j)
{
    require_object(j, "chain");
    ChainSpec c;
    c.constants.c0 = get_c(j, "c0", {});
    c.constants.c1 = get_c(j, "c1", {});
    c.constants.c2 = get_c(j, "c2", {});
    c.constants.c3 = get_c(j, "c3", {});
    c.constants.b3 = get_c(j, "b3", {});
    c.alpha1 = get_c(j, "alpha1", c.alpha1);
    c.s1 = get_c(j, "s1", c.s1);
    c.t1 = get_c(j, "t1", c.t1);
    return c;
}

Json to_json(const ChainSpec &c)
{
    return Json{{"c0", to_json(c.constants.c0)}, {"c1", to_json(c.constants.c1)}, {"c2", to_json(c.constants.c2)},
                {"c3", to_json(c.constants.c3)}, {"b3", to_json(c.constants.b3)}, {"alpha1", to_json(c.alpha1)},
                {"s1", to_json(c.s1)},           {"t1", to_json(c.t1)}};
}

PairEntrySet LaxSpec::build() const
{
    if (preset == "rational") {
        return rational_preset(gamma);
    }
    if (preset == "hyperbolic") {
        return hyperbolic_preset(gamma);
    }
    if (preset == "elliptic") {
        return elliptic_preset(gamma, nu, weier, lambda);
    }
    if (preset == "random") {
        return random_preset(seed);
    }
    throw ConfigError("unknown lax preset '" + preset + "'");
}

LaxSpec lax_from_json(const Json &j)
{
    require_object(j, "lax");
    LaxSpec l;
    if (j.contains("preset")) {
        if (!j.at("preset").is_string()) {
            throw ConfigError("'preset' must be a string");
        }
        l.preset = j.at("preset").get<std::string>();
        if (l.preset != "rational" && l.preset != "hyperbolic" && l.preset != "elliptic" && l.preset != "random") {
            throw ConfigError("unknown lax preset '" + l.preset + "'");
        }
    }
    l.gamma = get_c(j, "gamma", l.gamma);
    l.nu = get_c(j, "nu", l.nu);
    if (j.contains("weier")) {
        l.weier = weier_from_json(j.at("weier"));
    }
    l.lambda = get_c3(j, "lambda", l.lambda);
    l.seed = get_num<std::uint64_t>(j, "seed", l.seed);
    auto real3 = [&](const char *key, std::array<double, 3> &out) {
        if (!j.contains(key)) {
            return;
        }
        const Json &a = j.at(key);
        if (!a.is_array() || a.size() != 3) {
            throw ConfigError(std::string("'") + key + "' must be an array of three numbers");
        }
        for (int i = 0; i < 3; ++i) {
            if (!a[i].is_number()) {
                throw ConfigError(std::string("'") + key + "' must be an array of three numbers");
            }
            out[i] = a[i].get<double>();
        }
    };
    real3("q", l.state.q);
    real3("p", l.state.p);
    l.dt = get_num<double>(j, "dt", l.dt);
    l.T = get_num<double>(j, "T", l.T);
    l.exclusion = get_num<double>(j, "exclusion", l.exclusion);
    if (!(l.dt > 0.0) || !(l.T > 0.0) || !(l.exclusion > 0.0)) {
        throw ConfigError("dt, T and exclusion must be positive");
    }
    return l;
}

Json to_json(const LaxSpec &l)
{
    return Json{{"preset", l.preset},
                {"gamma", to_json(l.gamma)},
                {"nu", to_json(l.nu)},
                {"weier", to_json(l.weier)},
                {"lambda", c3_json(l.lambda)},
                {"seed", l.seed},
                {"q", l.state.q},
                {"p", l.state.p},
                {"dt", l.dt},
                {"T", l.T},
                {"exclusion", l.exclusion}};
}

} // namespace trife
