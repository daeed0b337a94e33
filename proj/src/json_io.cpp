#include "fgl/json_io.hpp"

namespace fgl {

json descriptor_to_json(const DescPtr& d) {
    json j;
    switch (d->kind) {
        case RingDescriptor::Kind::Integers: j["kind"] = "integers"; break;
        case RingDescriptor::Kind::Rationals: j["kind"] = "rationals"; break;
        case RingDescriptor::Kind::Mod:
            j["kind"] = "mod";
            j["m"] = static_cast<long>(d->modulus.get_si());
            break;
        case RingDescriptor::Kind::PrimeField:
            j["kind"] = "prime_field";
            j["p"] = static_cast<long>(d->modulus.get_si());
            break;
        case RingDescriptor::Kind::FiniteField:
            j["kind"] = "finite_field";
            j["p"] = static_cast<long>(d->modulus.get_si());
            j["degree"] = d->degree;
            j["min_poly"] = d->min_poly;
            break;
        case RingDescriptor::Kind::Poly:
            j["kind"] = "poly";
            j["base"] = descriptor_to_json(d->base);
            j["vars"] = d->vars;
            break;
        case RingDescriptor::Kind::Quotient:
            j["kind"] = "quotient";
            j["base"] = descriptor_to_json(d->base);
            j["ideal"] = d->exprs;
            break;
        case RingDescriptor::Kind::Localize:
            j["kind"] = "localize";
            j["base"] = descriptor_to_json(d->base);
            j["invert"] = d->exprs;
            break;
    }
    return j;
}

DescPtr descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw math_error("ring descriptor JSON needs a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "integers") return RingDescriptor::integers();
    if (kind == "rationals") return RingDescriptor::rationals();
    if (kind == "mod") return RingDescriptor::mod(mpz_class(j.at("m").get<long>()));
    if (kind == "prime_field")
        return RingDescriptor::prime_field(mpz_class(j.at("p").get<long>()));
    if (kind == "finite_field")
        return RingDescriptor::finite_field(mpz_class(j.at("p").get<long>()),
                                            j.at("degree").get<int>(),
                                            j.at("min_poly").get<std::vector<long>>());
    if (kind == "poly")
        return RingDescriptor::poly(descriptor_from_json(j.at("base")),
                                    j.at("vars").get<std::vector<std::string>>());
    if (kind == "quotient")
        return RingDescriptor::quotient(descriptor_from_json(j.at("base")),
                                        j.at("ideal").get<std::vector<std::string>>());
    if (kind == "localize")
        return RingDescriptor::localize(descriptor_from_json(j.at("base")),
                                        j.at("invert").get<std::vector<std::string>>());
    throw math_error("unknown ring descriptor kind '" + kind + "'");
}

json series_to_json(const TruncatedSeries& s) {
    json terms = json::array();
    for (const auto& t : s.terms()) {
        json e = json::array();
        for (std::size_t i = 0; i < s.vars().size(); ++i)
            e.push_back(s.packing().exponent(t.key, static_cast<int>(i)));
        terms.push_back({{"exp", e}, {"coeff", s.ring()->to_string(t.c)}});
    }
    return json{{"vars", s.vars()}, {"bound", s.bound()}, {"terms", terms}};
}

TruncatedSeries series_from_json(const json& j, const RingPtr& ring,
                                 const std::vector<std::string>& default_vars,
                                 int default_bound) {
    std::vector<std::string> vars;
    int bound;
    const json* term_list;
    if (j.is_array()) {
        if (default_vars.empty() || default_bound < 0)
            throw math_error("bare series term list needs a surrounding vars/bound context");
        vars = default_vars;
        bound = default_bound;
        term_list = &j;
    } else {
        vars = j.at("vars").get<std::vector<std::string>>();
        bound = j.at("bound").get<int>();
        term_list = &j.at("terms");
    }
    TruncatedSeries s = TruncatedSeries::zero(ring, vars, bound);
    std::vector<TruncatedSeries::Term> terms;
    for (const auto& t : *term_list) {
        auto exps = t.at("exp").get<std::vector<std::uint32_t>>();
        if (exps.size() != vars.size()) throw math_error("series term exponent length mismatch");
        RingElement c = ring->parse(t.at("coeff").get<std::string>());
        terms.push_back({s.packing().pack(exps), c.payload()});
    }
    return TruncatedSeries::from_terms(ring, vars, bound, std::move(terms));
}

json curve_to_json(const WeierstrassCurve& C) {
    return json{{"ring", descriptor_to_json(C.ring->descriptor())}, {"a1", C.a1.to_string()},
                {"a2", C.a2.to_string()},                           {"a3", C.a3.to_string()},
                {"a4", C.a4.to_string()},                           {"a6", C.a6.to_string()}};
}

WeierstrassCurve curve_from_json(const json& j) {
    RingPtr R = Ring::make(descriptor_from_json(j.at("ring")));
    return WeierstrassCurve::parse(R, j.at("a1").get<std::string>(), j.at("a2").get<std::string>(),
                                   j.at("a3").get<std::string>(), j.at("a4").get<std::string>(),
                                   j.at("a6").get<std::string>());
}

json law_to_json(const LawFile& f) {
    json spec;
    if (f.curve) {
        spec["kind"] = "elliptic";
        spec["curve"] = json{{"a1", f.curve->a1.to_string()}, {"a2", f.curve->a2.to_string()},
                             {"a3", f.curve->a3.to_string()}, {"a4", f.curve->a4.to_string()},
                             {"a6", f.curve->a6.to_string()}};
        return json{{"ring", descriptor_to_json(f.ring)}, {"bound", f.bound}, {"spec", spec}};
    }
    switch (f.spec.kind) {
        case LawSpec::Kind::Additive: spec["kind"] = "additive"; break;
        case LawSpec::Kind::Multiplicative:
            spec["kind"] = "multiplicative";
            spec["b"] = f.spec.unit_expr;
            break;
        case LawSpec::Kind::FromLog:
            spec["kind"] = "from_log";
            spec["series"] = series_to_json(*f.spec.series);
            break;
        case LawSpec::Kind::Honda:
            spec["kind"] = "honda";
            spec["p"] = static_cast<long>(f.spec.p.get_si());
            spec["n"] = f.spec.n;
            break;
        case LawSpec::Kind::PTypical:
            spec["kind"] = "ptypical";
            spec["p"] = static_cast<long>(f.spec.p.get_si());
            spec["v"] = f.spec.v_exprs;
            break;
        case LawSpec::Kind::Explicit:
            spec["kind"] = "explicit";
            spec["series"] = series_to_json(*f.spec.series);
            break;
    }
    return json{{"ring", descriptor_to_json(f.ring)}, {"bound", f.bound}, {"spec", spec}};
}

LawFile law_from_json(const json& j) {
    LawFile f{descriptor_from_json(j.at("ring")), j.at("bound").get<int>(), LawSpec::additive(),
              std::nullopt};
    const json& spec = j.at("spec");
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "additive") {
        f.spec = LawSpec::additive();
    } else if (kind == "multiplicative") {
        f.spec = LawSpec::multiplicative(spec.value("b", std::string("1")));
    } else if (kind == "from_log") {
        RingPtr R = Ring::make(f.ring);
        f.spec = LawSpec::from_log(series_from_json(spec.at("series"), R, {"x"}, f.bound));
    } else if (kind == "honda") {
        f.spec = LawSpec::honda(mpz_class(spec.at("p").get<long>()), spec.at("n").get<int>());
    } else if (kind == "ptypical") {
        f.spec = LawSpec::p_typical(mpz_class(spec.at("p").get<long>()),
                                    spec.at("v").get<std::vector<std::string>>());
    } else if (kind == "explicit") {
        RingPtr R = Ring::make(f.ring);
        f.spec = LawSpec::explicit_series(
            series_from_json(spec.at("series"), R, {"x", "y"}, f.bound));
    } else if (kind == "elliptic") {
        RingPtr R = Ring::make(f.ring);
        const json& c = spec.at("curve");
        f.curve = WeierstrassCurve::parse(R, c.at("a1").get<std::string>(),
                                          c.at("a2").get<std::string>(),
                                          c.at("a3").get<std::string>(),
                                          c.at("a4").get<std::string>(),
                                          c.at("a6").get<std::string>());
    } else {
        throw math_error("unknown law spec kind '" + kind + "'");
    }
    return f;
}

FormalGroupLaw build_law_from_json(const json& j, int bound_override, const LawOptions& opts) {
    LawFile f = law_from_json(j);
    int bound = bound_override > 0 ? bound_override : f.bound;
    if (f.curve) return formal_group(*f.curve, bound, opts);
    return FormalGroupLaw::build(f.spec, Ring::make(f.ring), bound, opts);
}

json height_report_to_json(const HeightReport& r) {
    json verdict;
    switch (r.verdict.kind) {
        case HeightVerdict::Kind::Exact:
            verdict = {{"kind", "exact"}, {"n", r.verdict.n}};
            if (r.verdict.unit_witness) verdict["unit"] = r.verdict.unit_witness->to_string();
            break;
        case HeightVerdict::Kind::AtLeast:
            verdict = {{"kind", "at_least"}, {"n", r.verdict.n}};
            break;
        case HeightVerdict::Kind::InfiniteToBound:
            verdict = {{"kind", "infinite_to_bound"}};
            break;
    }
    json useq = json::array();
    for (const auto& e : r.u_sequence) {
        json entry{{"n", e.n}, {"value", e.value.value.to_string()}};
        if (e.value.twist != 0) entry["twist"] = e.value.twist;
        if (e.n >= 1) entry["ring"] = e.ring->label();
        useq.push_back(entry);
    }
    return json{{"p", static_cast<long>(r.p.get_si())},
                {"bound", r.bound},
                {"verdict", verdict},
                {"u_seq", useq}};
}

json landweber_report_to_json(const LandweberReport& r) {
    json primes = json::array();
    for (const auto& pr : r.primes) {
        json steps = json::array();
        for (const auto& s : pr.steps) {
            json step{{"n", s.n}, {"u", s.u.to_string()}};
            if (s.unit)
                step["unit"] = true;
            else
                step["regular"] = s.regular;
            if (s.n >= 1) step["ring"] = s.ring->label();
            steps.push_back(step);
        }
        json entry{{"prime", static_cast<long>(pr.prime.get_si())}, {"steps", steps}};
        switch (pr.outcome) {
            case LandweberPrimeReport::Outcome::Exact: entry["outcome"] = "exact"; break;
            case LandweberPrimeReport::Outcome::Fails:
                entry["outcome"] = "fails";
                entry["fail_n"] = pr.fail_n;
                entry["witness"] = pr.witness->to_string();
                break;
            case LandweberPrimeReport::Outcome::Inconclusive:
                entry["outcome"] = "inconclusive";
                entry["reason"] = pr.reason;
                break;
        }
        primes.push_back(entry);
    }
    return json{{"primes", primes}};
}

json invariants_to_json(const CurveInvariants& inv) {
    return json{{"b2", inv.b2.to_string()},     {"b4", inv.b4.to_string()},
                {"b6", inv.b6.to_string()},     {"b8", inv.b8.to_string()},
                {"c4", inv.c4.to_string()},     {"c6", inv.c6.to_string()},
                {"delta", inv.delta.to_string()},
                {"j", {{"num", inv.j_num.to_string()}, {"den", inv.j_den.to_string()}}}};
}

json iso_result_to_json(const IsoSearchResult& r) {
    switch (r.kind) {
        case IsoSearchResult::Kind::Found: {
            json j{{"found", true},
                   {"extension_degree", r.extension_degree},
                   {"field", descriptor_to_json(r.field->descriptor())},
                   {"phi", series_to_json(r.iso->series())},
                   {"differential", r.iso->differential().to_string()}};
            return j;
        }
        case IsoSearchResult::Kind::NeedsExtension:
            return json{{"found", false}, {"kind", "needs_extension"}, {"reason", r.reason}};
        case IsoSearchResult::Kind::NoneToBound:
            return json{{"found", false}, {"kind", "none_to_bound"}, {"reason", r.reason}};
    }
    throw internal_error("bad iso result");
}

}  // namespace fgl
