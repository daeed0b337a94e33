// fgl: exact computations with one-dimensional formal group laws.
//
// Exit codes: 0 success, 1 mathematical negative (axiom failure, non-exact
// Landweber outcome, no isomorphism), 2 unsupported ring class, 3 bad input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fgl/json_io.hpp"

using namespace fgl;

namespace {

struct Options {
    std::string law, law2, curve, ring_arg, out;
    std::string format = "json";
    std::string v_values;
    std::string u = "1", r = "0", s = "0", t = "0";
    long n = 2;
    long prime = 0;
    std::string primes;
    int bound = 0;  // 0 = auto
    int n_max = 3;
    int max_ext_degree = 4;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw math_error("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

RingPtr resolve_ring(const std::string& arg) {
    if (arg.empty() || arg == "integers") return Ring::integers();
    if (arg == "rationals") return Ring::rationals();
    if (arg.rfind("fp:", 0) == 0) return Ring::prime_field(mpz_class(arg.substr(3)));
    if (arg.rfind("mod:", 0) == 0) return Ring::integers_mod(mpz_class(arg.substr(4)));
    if (file_exists(arg)) return Ring::make(descriptor_from_json(read_json_file(arg)));
    return Ring::make(descriptor_from_json(json::parse(arg)));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

struct ResolvedLaw {
    FormalGroupLaw law;
    std::string name;
};

ResolvedLaw resolve_law(const std::string& arg, const Options& opt, int default_bound,
                        const LawOptions& lopts = {}) {
    if (arg.empty()) throw math_error("missing --law");
    int bound = opt.bound > 0 ? opt.bound : default_bound;
    if (arg.rfind("builtin:", 0) == 0) {
        auto parts = split(arg, ':');
        const std::string& name = parts[1];
        if (name == "additive" || name == "multiplicative") {
            RingPtr R = resolve_ring(opt.ring_arg);
            LawSpec spec =
                name == "additive" ? LawSpec::additive() : LawSpec::multiplicative();
            return {FormalGroupLaw::build(spec, R, bound, lopts), name};
        }
        if (name == "honda") {
            if (parts.size() < 4) throw math_error("builtin:honda:<p>:<n>");
            mpz_class p(parts[2]);
            int n = std::stoi(parts[3]);
            RingPtr R = opt.ring_arg.empty() ? Ring::prime_field(p) : resolve_ring(opt.ring_arg);
            if (opt.bound == 0) {
                mpz_class pn;
                mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), n);
                bound = static_cast<int>(pn.get_si() + p.get_si() - 1);
            }
            return {FormalGroupLaw::build(LawSpec::honda(p, n), R, bound, lopts), name};
        }
        if (name == "ptypical") {
            if (parts.size() < 3) throw math_error("builtin:ptypical:<p> with --v-values");
            mpz_class p(parts[2]);
            if (opt.ring_arg.empty()) throw math_error("builtin:ptypical needs --ring");
            RingPtr R = resolve_ring(opt.ring_arg);
            std::vector<std::string> v =
                opt.v_values.empty() ? std::vector<std::string>{} : split(opt.v_values, ',');
            return {FormalGroupLaw::build(LawSpec::p_typical(p, v), R, bound, lopts), name};
        }
        throw math_error("unknown builtin law '" + name + "'");
    }
    json j = read_json_file(arg);
    return {build_law_from_json(j, opt.bound, lopts), "file:" + arg};
}

WeierstrassCurve resolve_curve(const std::string& arg) {
    if (arg.empty()) throw math_error("missing --curve");
    if (file_exists(arg)) return curve_from_json(read_json_file(arg));
    return curve_from_json(json::parse(arg));
}

void emit(const Options& opt, const json& j, const std::string& text) {
    std::string payload = opt.format == "json" ? j.dump(2) + "\n" : text;
    if (opt.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw math_error("cannot write '" + opt.out + "'");
        out << payload;
    }
}

std::string verdict_text(const HeightVerdict& v) {
    switch (v.kind) {
        case HeightVerdict::Kind::Exact: return "exact height " + std::to_string(v.n);
        case HeightVerdict::Kind::AtLeast: return "height at least " + std::to_string(v.n);
        case HeightVerdict::Kind::InfiniteToBound: return "infinite to the truncation bound";
    }
    return "?";
}

std::vector<mpz_class> resolve_primes(const Options& opt) {
    std::vector<mpz_class> primes;
    if (!opt.primes.empty())
        for (const auto& s : split(opt.primes, ',')) primes.emplace_back(s);
    else if (opt.prime > 0)
        primes.emplace_back(opt.prime);
    if (primes.empty()) throw math_error("missing --prime or --primes");
    return primes;
}

int auto_bound_for_heights(const std::vector<mpz_class>& primes, int n_max) {
    mpz_class best = 0;
    for (const auto& p : primes) {
        mpz_class pn;
        mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), n_max);
        mpz_class cand = pn + p - 1;
        if (cand > best) best = cand;
    }
    if (best > 4096) throw unsupported_error("auto bound too large; pass --bound explicitly");
    return static_cast<int>(best.get_si());
}

// --- subcommand bodies ------------------------------------------------------

int run_law_check(const Options& opt) {
    try {
        ResolvedLaw rl = resolve_law(opt.law, opt, 24);
        json j{{"valid", true},
               {"bound", rl.law.bound()},
               {"ring", rl.law.ring()->label()}};
        emit(opt, j, "valid formal group law over " + rl.law.ring()->label() + " to bound " +
                         std::to_string(rl.law.bound()) + "\n");
        return 0;
    } catch (const axiom_error& e) {
        json j{{"valid", false}, {"error", e.what()}};
        emit(opt, j, std::string("invalid: ") + e.what() + "\n");
        return 1;
    }
}

int run_law_series(const Options& opt, const std::string& which) {
    ResolvedLaw rl = resolve_law(opt.law, opt, 24);
    TruncatedSeries s = rl.law.series();
    json j;
    std::string text;
    if (which == "nseries") {
        TruncatedSeries ns = rl.law.n_series(opt.n);
        j = json{{"n", opt.n}, {"series", series_to_json(ns)}};
        text = "[" + std::to_string(opt.n) + "](x) with " + std::to_string(ns.terms().size()) +
               " terms\n";
    } else if (which == "pseries") {
        if (opt.prime <= 0) throw math_error("missing --prime");
        TruncatedSeries ps = rl.law.p_series(opt.prime);
        j = json{{"p", opt.prime}, {"series", series_to_json(ps)}};
        text = "[" + std::to_string(opt.prime) + "](x) with " +
               std::to_string(ps.terms().size()) + " terms\n";
    } else {
        TruncatedSeries inv = rl.law.formal_inverse();
        j = json{{"series", series_to_json(inv)}};
        text = "formal inverse with " + std::to_string(inv.terms().size()) + " terms\n";
    }
    emit(opt, j, text);
    return 0;
}

int run_height(const Options& opt) {
    auto primes = resolve_primes(opt);
    if (primes.size() != 1) throw math_error("height takes a single --prime");
    ResolvedLaw rl = resolve_law(opt.law, opt, auto_bound_for_heights(primes, opt.n_max));
    HeightReport rep = height(rl.law, primes[0]);
    emit(opt, height_report_to_json(rep),
         "height of " + rl.name + " at p=" + primes[0].get_str() + ": " +
             verdict_text(rep.verdict) + "\n");
    return 0;
}

int run_useq(const Options& opt) {
    auto primes = resolve_primes(opt);
    if (primes.size() != 1) throw math_error("useq takes a single --prime");
    ResolvedLaw rl = resolve_law(opt.law, opt, auto_bound_for_heights(primes, opt.n_max));
    HeightReport rep = u_sequence(rl.law, primes[0], opt.n_max);
    std::string text = "u-sequence of " + rl.name + " at p=" + primes[0].get_str() + ":\n";
    for (const auto& e : rep.u_sequence)
        text += "  u_" + std::to_string(e.n) + " = " + e.value.value.to_string() + " in " +
                e.ring->label() + "\n";
    text += "verdict: " + verdict_text(rep.verdict) + "\n";
    emit(opt, height_report_to_json(rep), text);
    return 0;
}

int run_landweber(const Options& opt) {
    auto primes = resolve_primes(opt);
    ResolvedLaw rl = resolve_law(opt.law, opt, auto_bound_for_heights(primes, opt.n_max));
    LandweberReport rep = landweber_check(rl.law, primes, opt.n_max);
    std::string text;
    for (const auto& pr : rep.primes) {
        text += "p=" + pr.prime.get_str() + ": ";
        switch (pr.outcome) {
            case LandweberPrimeReport::Outcome::Exact: text += "exact"; break;
            case LandweberPrimeReport::Outcome::Fails:
                text += "fails at u_" + std::to_string(pr.fail_n) + " (witness " +
                        pr.witness->to_string() + ")";
                break;
            case LandweberPrimeReport::Outcome::Inconclusive:
                text += "inconclusive: " + pr.reason;
                break;
        }
        text += "\n";
    }
    emit(opt, landweber_report_to_json(rep), text);
    return rep.any_fails() ? 1 : 0;
}

int run_iso(const Options& opt) {
    LawOptions lopts;
    ResolvedLaw rl1 = resolve_law(opt.law, opt, 24, lopts);
    Options o2 = opt;
    o2.law = opt.law2;
    ResolvedLaw rl2 = resolve_law(o2.law, o2, 24, lopts);
    IsoSearchResult res = find_isomorphism(rl1.law, rl2.law, opt.max_ext_degree);
    std::string text;
    switch (res.kind) {
        case IsoSearchResult::Kind::Found:
            text = "isomorphism found over " + res.field->label() + " (extension degree " +
                   std::to_string(res.extension_degree) + ")\n";
            break;
        case IsoSearchResult::Kind::NeedsExtension:
            text = "not found: " + res.reason + "\n";
            break;
        case IsoSearchResult::Kind::NoneToBound:
            text = "no isomorphism: " + res.reason + "\n";
            break;
    }
    emit(opt, iso_result_to_json(res), text);
    return res.kind == IsoSearchResult::Kind::Found ? 0 : 1;
}

int run_ell_invariants(const Options& opt) {
    WeierstrassCurve C = resolve_curve(opt.curve);
    CurveInvariants inv = invariants(C);
    json j = invariants_to_json(inv);
    std::string notes;
    try {
        j["smooth"] = is_smooth(C);
    } catch (const unsupported_error& e) {
        notes += std::string("smoothness: ") + e.what() + "\n";
    }
    try {
        j["generalized_elliptic"] = is_generalized_elliptic(C);
    } catch (const unsupported_error& e) {
        notes += std::string("generalized-elliptic: ") + e.what() + "\n";
    }
    std::string text = "c4 = " + inv.c4.to_string() + "\nc6 = " + inv.c6.to_string() +
                       "\ndelta = " + inv.delta.to_string() + "\n" + notes;
    emit(opt, j, text);
    return 0;
}

int run_ell_formal_group(const Options& opt) {
    WeierstrassCurve C = resolve_curve(opt.curve);
    int bound = opt.bound > 0 ? opt.bound : 8;
    FormalGroupLaw F = formal_group(C, bound);
    json j{{"bound", bound}, {"series", series_to_json(F.series())}};
    emit(opt, j,
         "formal group to bound " + std::to_string(bound) + " with " +
             std::to_string(F.series().terms().size()) + " terms\n");
    return 0;
}

int run_ell_supersingular(const Options& opt) {
    WeierstrassCurve C = resolve_curve(opt.curve);
    auto primes = resolve_primes(opt);
    if (primes.size() != 1) throw math_error("supersingular takes a single --prime");
    SupersingularVerdict v = supersingular(C, primes[0]);
    std::string name = v == SupersingularVerdict::Ordinary       ? "ordinary"
                       : v == SupersingularVerdict::Supersingular ? "supersingular"
                                                                  : "not_smooth_at_p";
    json j{{"p", static_cast<long>(primes[0].get_si())}, {"verdict", name}};
    emit(opt, j, name + "\n");
    return 0;
}

int run_ell_transform(const Options& opt) {
    WeierstrassCurve C = resolve_curve(opt.curve);
    const RingPtr& R = C.ring;
    WeierstrassCurve D =
        transform(C, R->parse(opt.u), R->parse(opt.r), R->parse(opt.s), R->parse(opt.t));
    json j = curve_to_json(D);
    std::string text = "a1 = " + D.a1.to_string() + "\na2 = " + D.a2.to_string() +
                       "\na3 = " + D.a3.to_string() + "\na4 = " + D.a4.to_string() +
                       "\na6 = " + D.a6.to_string() + "\n";
    emit(opt, j, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact formal group law computations"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
        c->add_option("--out", opt.out);
        c->add_option("--bound", opt.bound);
    };
    auto add_law_opts = [&](CLI::App* c) {
        c->add_option("--law", opt.law);
        c->add_option("--ring", opt.ring_arg);
        c->add_option("--v-values", opt.v_values);
    };

    CLI::App* law = app.add_subcommand("law", "formal group law operations");
    law->require_subcommand(1);
    CLI::App* law_check = law->add_subcommand("check", "validate the law axioms");
    CLI::App* law_nseries = law->add_subcommand("nseries", "the n-series [n](x)");
    law_nseries->add_option("--n", opt.n);
    CLI::App* law_pseries = law->add_subcommand("pseries", "the p-series [p](x)");
    law_pseries->add_option("--prime", opt.prime);
    CLI::App* law_inverse = law->add_subcommand("inverse", "the formal inverse");
    for (CLI::App* c : {law_check, law_nseries, law_pseries, law_inverse}) {
        add_common(c);
        add_law_opts(c);
    }

    CLI::App* height_cmd = app.add_subcommand("height", "leading p-power height analysis");
    CLI::App* useq = app.add_subcommand("useq", "the recursive u_n sequence");
    CLI::App* landweber = app.add_subcommand("landweber", "Landweber exactness per prime");
    for (CLI::App* c : {height_cmd, useq, landweber}) {
        add_common(c);
        add_law_opts(c);
        c->add_option("--prime", opt.prime);
        c->add_option("--primes", opt.primes);
        c->add_option("--n-max", opt.n_max);
    }

    CLI::App* iso = app.add_subcommand("iso", "truncated isomorphism search");
    add_common(iso);
    add_law_opts(iso);
    iso->add_option("--law2", opt.law2);
    iso->add_option("--max-ext-degree", opt.max_ext_degree);

    CLI::App* ell = app.add_subcommand("elliptic", "Weierstrass curve operations");
    ell->require_subcommand(1);
    CLI::App* ell_inv = ell->add_subcommand("invariants", "b/c invariants, delta, j");
    CLI::App* ell_fg = ell->add_subcommand("formal-group", "expansion at the marked point");
    CLI::App* ell_ss = ell->add_subcommand("supersingular", "height verdict mod p");
    ell_ss->add_option("--prime", opt.prime);
    CLI::App* ell_tr = ell->add_subcommand("transform", "coordinate change (u,r,s,t)");
    ell_tr->add_option("--u", opt.u);
    ell_tr->add_option("--r", opt.r);
    ell_tr->add_option("--s", opt.s);
    ell_tr->add_option("--t", opt.t);
    for (CLI::App* c : {ell_inv, ell_fg, ell_ss, ell_tr}) {
        add_common(c);
        c->add_option("--curve", opt.curve);
    }

    CLI11_PARSE(app, argc, argv);

    auto fail = [&](const std::string& msg, int code) {
        if (opt.format == "json")
            std::cerr << json{{"error", msg}}.dump() << "\n";
        else
            std::cerr << "error: " << msg << "\n";
        return code;
    };

    try {
        if (law_check->parsed()) return run_law_check(opt);
        if (law_nseries->parsed()) return run_law_series(opt, "nseries");
        if (law_pseries->parsed()) return run_law_series(opt, "pseries");
        if (law_inverse->parsed()) return run_law_series(opt, "inverse");
        if (height_cmd->parsed()) return run_height(opt);
        if (useq->parsed()) return run_useq(opt);
        if (landweber->parsed()) return run_landweber(opt);
        if (iso->parsed()) return run_iso(opt);
        if (ell_inv->parsed()) return run_ell_invariants(opt);
        if (ell_fg->parsed()) return run_ell_formal_group(opt);
        if (ell_ss->parsed()) return run_ell_supersingular(opt);
        if (ell_tr->parsed()) return run_ell_transform(opt);
        return fail("no subcommand", 3);
    } catch (const unsupported_error& e) {
        return fail(e.what(), 2);
    } catch (const axiom_error& e) {
        return fail(e.what(), 1);
    } catch (const parse_error& e) {
        return fail(e.what(), 3);
    } catch (const math_error& e) {
        return fail(e.what(), 3);
    } catch (const json::exception& e) {
        return fail(std::string("bad JSON: ") + e.what(), 3);
    } catch (const std::exception& e) {
        return fail(std::string("internal error: ") + e.what(), 3);
    }
}
