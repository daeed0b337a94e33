#include "fgl/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fgl/expr.hpp"

namespace fgl {

// ---------------------------------------------------------------------------
// descriptors
// ---------------------------------------------------------------------------

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;  // '_' reserved
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

DescPtr leaf(RingDescriptor::Kind k) {
    auto d = std::make_shared<RingDescriptor>();
    d->kind = k;
    return d;
}

}  // namespace

DescPtr RingDescriptor::integers() { return leaf(Kind::Integers); }
DescPtr RingDescriptor::rationals() { return leaf(Kind::Rationals); }

DescPtr RingDescriptor::mod(const mpz_class& m) {
    if (m < 2) throw math_error("modulus must be >= 2");
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::Mod;
    d->modulus = m;
    return d;
}

DescPtr RingDescriptor::prime_field(const mpz_class& p) {
    if (p >= (mpz_class(1) << 31)) throw unsupported_error("prime must be < 2^31");
    if (!mpz_is_prime(p)) throw math_error("p = " + p.get_str() + " is not prime");
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::PrimeField;
    d->modulus = p;
    return d;
}

DescPtr RingDescriptor::finite_field(const mpz_class& p, int degree, std::vector<long> min_poly) {
    if (p >= (mpz_class(1) << 31)) throw unsupported_error("prime must be < 2^31");
    if (!mpz_is_prime(p)) throw math_error("p = " + p.get_str() + " is not prime");
    if (degree < 1 || degree > 8) throw unsupported_error("extension degree must be in 1..8");
    if (static_cast<int>(min_poly.size()) != degree + 1)
        throw math_error("min_poly must list degree+1 coefficients (ascending)");
    std::vector<mpz_class> coeffs;
    for (long c : min_poly) {
        mpz_class r = mpz_class(c) % p;
        if (r < 0) r += p;
        coeffs.push_back(r);
    }
    if (coeffs.back() != 1) throw math_error("min_poly must be monic");
    if (!poly_irreducible_mod_p(coeffs, p))
        throw math_error("min_poly is not irreducible over F_" + p.get_str());
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::FiniteField;
    d->modulus = p;
    d->degree = degree;
    d->min_poly = std::move(min_poly);
    return d;
}

DescPtr RingDescriptor::poly(DescPtr base, std::vector<std::string> vars) {
    if (vars.empty()) throw math_error("polynomial ring needs at least one variable");
    for (const auto& v : vars)
        if (!valid_identifier(v))
            throw math_error("invalid variable name '" + v + "'");
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::Poly;
    d->base = std::move(base);
    d->vars = std::move(vars);
    return d;
}

DescPtr RingDescriptor::quotient(DescPtr base, std::vector<std::string> ideal) {
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::Quotient;
    d->base = std::move(base);
    d->exprs = std::move(ideal);
    return d;
}

DescPtr RingDescriptor::localize(DescPtr base, std::vector<std::string> inverted) {
    if (inverted.empty()) throw math_error("localization needs at least one element");
    auto d = std::make_shared<RingDescriptor>();
    d->kind = Kind::Localize;
    d->base = std::move(base);
    d->exprs = std::move(inverted);
    return d;
}

bool RingDescriptor::equals(const RingDescriptor& o) const {
    if (kind != o.kind || modulus != o.modulus || degree != o.degree || min_poly != o.min_poly ||
        vars != o.vars || exprs != o.exprs)
        return false;
    if ((base == nullptr) != (o.base == nullptr)) return false;
    return base == nullptr || base->equals(*o.base);
}

std::string RingDescriptor::label() const {
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += v[i];
        }
        return s;
    };
    switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::Mod: return "Z/" + modulus.get_str();
        case Kind::PrimeField: return "F_" + modulus.get_str();
        case Kind::FiniteField:
            return "F_" + modulus.get_str() + "^" + std::to_string(degree);
        case Kind::Poly: return base->label() + "[" + join(vars) + "]";
        case Kind::Quotient: return base->label() + "/(" + join(exprs) + ")";
        case Kind::Localize: {
            std::string s = base->label() + "[";
            for (std::size_t i = 0; i < exprs.size(); ++i) {
                if (i) s += ",";
                s += "(" + exprs[i] + ")^(-1)";
            }
            return s + "]";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// irreducibility over F_p (deterministic Rabin criterion)
// ---------------------------------------------------------------------------

namespace {

using UPoly = std::vector<mpz_class>;  // ascending, over F_p

UPoly umod_trim(UPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

UPoly umod_rem(UPoly a, const UPoly& b, const mpz_class& p) {
    mpz_class lead_inv;
    mpz_class lb = b.back();
    mpz_invert(lead_inv.get_mpz_t(), lb.get_mpz_t(), p.get_mpz_t());
    while (a.size() >= b.size()) {
        mpz_class c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = (a[shift + i] - c * b[i]) % p;
            if (a[shift + i] < 0) a[shift + i] += p;
        }
        a = umod_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

UPoly umod_mul(const UPoly& a, const UPoly& b, const UPoly& f, const mpz_class& p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return umod_rem(umod_trim(std::move(r)), f, p);
}

// x^(p^k) mod f
UPoly umod_frobenius_power(const UPoly& f, const mpz_class& p, int k) {
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), k);
    UPoly base = umod_rem({0, 1}, f, p);
    UPoly result = {1};
    mpz_class bit = e;
    // binary powering over the exponent e
    std::vector<bool> bits;
    while (bit > 0) {
        bits.push_back(mpz_tstbit(bit.get_mpz_t(), 0));
        bit >>= 1;
    }
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        result = umod_mul(result, result, f, p);
        if (*it) result = umod_mul(result, base, f, p);
    }
    return result;
}

UPoly umod_gcd(UPoly a, UPoly b, const mpz_class& p) {
    a = umod_trim(std::move(a));
    b = umod_trim(std::move(b));
    while (!b.empty()) {
        UPoly r = umod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UPoly umod_sub(UPoly a, const UPoly& b, const mpz_class& p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = (a[i] - b[i]) % p;
        if (a[i] < 0) a[i] += p;
    }
    return umod_trim(std::move(a));
}

}  // namespace

bool poly_irreducible_mod_p(const std::vector<mpz_class>& coeffs, const mpz_class& p) {
    UPoly f = umod_trim(coeffs);
    if (f.size() < 2) return false;
    int d = static_cast<int>(f.size()) - 1;
    if (d == 1) return true;
    // x^(p^d) == x mod f, and gcd(x^(p^(d/q)) - x, f) = 1 for prime q | d
    UPoly x = {0, 1};
    UPoly xp = umod_frobenius_power(f, p, d);
    if (umod_sub(xp, x, p) != UPoly{}) return false;
    for (int q = 2; q <= d; ++q) {
        if (d % q != 0) continue;
        bool q_prime = true;
        for (int r = 2; r * r <= q; ++r)
            if (q % r == 0) q_prime = false;
        if (!q_prime) continue;
        UPoly xq = umod_frobenius_power(f, p, d / q);
        UPoly g = umod_gcd(f, umod_sub(xq, x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<long> first_irreducible_poly(const mpz_class& p, int degree) {
    if (degree < 1) throw math_error("degree must be >= 1");
    long pi = static_cast<long>(p.get_si());
    // enumerate lower coefficients as base-p digits of a counter
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), p.get_mpz_t(), degree);
    for (mpz_class v = 0; v < total; ++v) {
        std::vector<long> coeffs(degree + 1, 0);
        coeffs[degree] = 1;
        mpz_class w = v;
        for (int i = 0; i < degree; ++i) {
            coeffs[i] = static_cast<long>(mpz_class(w % pi).get_si());
            w /= pi;
        }
        std::vector<mpz_class> cz(coeffs.begin(), coeffs.end());
        if (poly_irreducible_mod_p(cz, p)) return coeffs;
    }
    throw internal_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// flattening
// ---------------------------------------------------------------------------

namespace {

MPoly repack(const MPoly& f, const Packing& from, const Packing& to) {
    MPoly out;
    out.reserve(f.size());
    std::vector<std::uint32_t> e(to.vars(), 0);
    for (const auto& t : f) {
        std::fill(e.begin(), e.end(), 0);
        from.unpack(t.key, e.data());
        out.push_back({to.pack(e), t.c});
    }
    return out;
}

}  // namespace

RingPtr Ring::make(const DescPtr& desc) {
    if (!desc) throw math_error("null ring descriptor");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->desc_ = desc;
    r->flatten();
    return r;
}

void Ring::flatten() {
    const RingDescriptor& d = *desc_;
    bool ff_leaf = false;

    switch (d.kind) {
        case RingDescriptor::Kind::Integers:
            dom_ = BaseDomain::integers();
            known_domain_ = true;
            break;
        case RingDescriptor::Kind::Rationals:
            dom_ = BaseDomain::rationals();
            known_domain_ = true;
            break;
        case RingDescriptor::Kind::Mod:
            if (d.modulus < 2) throw math_error("modulus must be >= 2");
            dom_ = BaseDomain::mod(d.modulus);
            known_domain_ = dom_.is_field();
            break;
        case RingDescriptor::Kind::PrimeField:
            dom_ = BaseDomain::mod(d.modulus);
            known_domain_ = true;
            break;
        case RingDescriptor::Kind::FiniteField: {
            dom_ = BaseDomain::mod(d.modulus);
            known_domain_ = true;
            ff_leaf = true;
            pvars_.push_back({"a", VarInfo::Role::Gen, ""});
            pack_ = Packing::plain(1);
            MPoly mp;
            for (int i = 0; i <= d.degree; ++i) {
                BaseScalar c = dom_.from_mpz(d.min_poly[i]);
                if (!dom_.is_zero(c))
                    mp.push_back({pack_.var_key(0, static_cast<std::uint32_t>(i)), c});
            }
            poly::normalize(dom_, mp);
            rels_.push_back(std::move(mp));
            {
                std::string lbl;
                for (int i = d.degree; i >= 0; --i) {
                    if (d.min_poly[i] == 0) continue;
                    if (!lbl.empty()) lbl += "+";
                    if (i == 0 || d.min_poly[i] != 1) lbl += std::to_string(d.min_poly[i]);
                    if (i > 0 && d.min_poly[i] != 1) lbl += "*";
                    if (i == 1) lbl += "a";
                    if (i > 1) lbl += "a^" + std::to_string(i);
                }
                rel_labels_.push_back(lbl);
            }
            break;
        }
        case RingDescriptor::Kind::Poly:
        case RingDescriptor::Kind::Quotient:
        case RingDescriptor::Kind::Localize: {
            RingPtr base = Ring::make(d.base);
            dom_ = base->dom_;
            pvars_ = base->pvars_;
            known_domain_ = base->known_domain_;

            // parse new material in the base ring
            std::vector<MPoly> new_rels_base;  // in base packing
            std::vector<std::string> new_names;
            if (d.kind == RingDescriptor::Kind::Poly) {
                for (const auto& v : d.vars) {
                    for (const auto& pv : pvars_)
                        if (pv.name == v)
                            throw math_error("variable name '" + v + "' already in use");
                    if (v == "a" && std::any_of(pvars_.begin(), pvars_.end(), [](const VarInfo& pv) {
                            return pv.role == VarInfo::Role::Gen;
                        }))
                        throw math_error("variable name 'a' collides with the field generator");
                    new_names.push_back(v);
                }
                for (std::size_t i = 0; i < new_names.size(); ++i)
                    for (std::size_t j = i + 1; j < new_names.size(); ++j)
                        if (new_names[i] == new_names[j])
                            throw math_error("duplicate variable name '" + new_names[i] + "'");
            } else {
                for (const auto& e : d.exprs) {
                    RingElement g = base->parse(e);
                    if (d.kind == RingDescriptor::Kind::Localize && g.is_zero())
                        throw math_error("cannot invert zero element '" + e + "'");
                    new_rels_base.push_back(base->to_raw(g.payload()));
                }
                known_domain_ = base->known_domain_ && d.kind == RingDescriptor::Kind::Localize;
            }

            int n_inverse = 0;
            if (d.kind == RingDescriptor::Kind::Localize) {
                for (const auto& pv : pvars_)
                    if (pv.role == VarInfo::Role::Inverse) ++n_inverse;
            }

            std::vector<VarInfo> added;
            for (const auto& v : new_names) added.push_back({v, VarInfo::Role::User, ""});
            if (d.kind == RingDescriptor::Kind::Localize)
                for (std::size_t j = 0; j < d.exprs.size(); ++j)
                    added.push_back({"_i" + std::to_string(n_inverse + j), VarInfo::Role::Inverse,
                                     d.exprs[j]});

            std::vector<VarInfo> all = pvars_;
            all.insert(all.end(), added.begin(), added.end());
            Packing P = Packing::plain(std::max<int>(1, static_cast<int>(all.size())));

            rels_.clear();
            rel_labels_ = base->rel_labels_;
            for (const auto& r : base->rels_) rels_.push_back(repack(r, base->pack_, P));
            if (d.kind == RingDescriptor::Kind::Quotient) {
                for (std::size_t j = 0; j < new_rels_base.size(); ++j) {
                    rels_.push_back(repack(new_rels_base[j], base->pack_, P));
                    rel_labels_.push_back(d.exprs[j]);
                }
            } else if (d.kind == RingDescriptor::Kind::Localize) {
                for (std::size_t j = 0; j < new_rels_base.size(); ++j) {
                    int ivar = static_cast<int>(pvars_.size() + new_names.size() + j);
                    MPoly s = repack(new_rels_base[j], base->pack_, P);
                    MPoly rel = poly::mono_mul(dom_, P, s, P.var_key(ivar), dom_.one());
                    rel = poly::sub(dom_, rel, poly::constant(dom_, dom_.one()));
                    rels_.push_back(std::move(rel));
                    rel_labels_.push_back("(" + d.exprs[j] + ")*(" + d.exprs[j] + ")^(-1) - 1");
                }
            }
            pvars_ = std::move(all);
            pack_ = P;
            break;
        }
    }

    if (pvars_.empty()) pack_ = Packing::plain(1);
    if (d.kind == RingDescriptor::Kind::Integers || d.kind == RingDescriptor::Kind::Rationals ||
        d.kind == RingDescriptor::Kind::Mod || d.kind == RingDescriptor::Kind::PrimeField)
        pack_ = Packing::plain(1);

    // fold constant relations into the scalar modulus
    bool changed = true;
    while (changed && !zero_ring_) {
        changed = false;
        for (std::size_t i = 0; i < rels_.size(); ++i) {
            poly::normalize(dom_, rels_[i]);
            if (rels_[i].empty()) {
                rels_.erase(rels_.begin() + i);
                rel_labels_.erase(rel_labels_.begin() + i);
                changed = true;
                break;
            }
            if (!poly::is_constant(rels_[i])) continue;
            if (dom_.kind() == ScalarKind::Rationals) {
                zero_ring_ = true;  // nonzero rational constant generates (1)
                break;
            }
            mpz_class c = dom_.lift(rels_[i].front().c);
            mpz_class m_old = dom_.kind() == ScalarKind::Mod ? dom_.modulus() : mpz_class(0);
            mpz_class m_new;
            mpz_gcd(m_new.get_mpz_t(), m_old.get_mpz_t(), c.get_mpz_t());
            if (m_new == 0) throw internal_error("constant relation folded to zero");
            if (m_new == 1) {
                zero_ring_ = true;
                break;
            }
            BaseDomain nd = BaseDomain::mod(m_new);
            std::vector<MPoly> remapped;
            std::vector<std::string> kept_labels;
            for (std::size_t j = 0; j < rels_.size(); ++j) {
                if (j == i) continue;
                remapped.push_back(poly::map_coeffs(dom_, nd, rels_[j]));
                kept_labels.push_back(rel_labels_[j]);
            }
            dom_ = nd;
            known_domain_ = known_domain_ && dom_.is_field();
            rels_ = std::move(remapped);
            rel_labels_ = std::move(kept_labels);
            changed = true;
            break;
        }
    }

    if (zero_ring_) {
        rep_ = RingRep::Scalar;
        dom_ = BaseDomain::mod(1);
    } else if (dom_.is_field()) {
        // class A: Groebner normal forms
        order_ = grevlex_less(pack_);
        gb_ = groebner::reduced_basis(dom_, pack_, rels_, order_);
        if (groebner::contains_one(gb_)) {
            zero_ring_ = true;
            rep_ = RingRep::Scalar;
            dom_ = BaseDomain::mod(1);
        } else {
            rep_ = pvars_.empty() ? RingRep::Scalar : RingRep::Poly;
        }
    } else {
        classify_b();
    }

    field_ = !zero_ring_ &&
             ((rep_ == RingRep::Scalar && dom_.is_field()) || (ff_leaf && rep_ == RingRep::Poly));

    for (const auto& pv : pvars_)
        if (pv.role != VarInfo::Role::Inverse) visible_vars_.push_back(pv.name);
}

void Ring::classify_b() {
    // scalars are Z or composite Z/m: organize relations into a triangular
    // substitution system plus localization denominators
    const int n = static_cast<int>(pvars_.size());
    subs_.assign(n, std::nullopt);
    frac_vars_.clear();
    frac_elems_.clear();

    std::vector<MPoly> pending = rels_;
    auto apply_subs = [&](const MPoly& f) {
        std::vector<const MPoly*> images(n, nullptr);
        bool any = false;
        for (int i = 0; i < n; ++i)
            if (subs_[i]) {
                images[i] = &*subs_[i];
                any = true;
            }
        if (!any) return f;
        return poly::substitute(dom_, pack_, f, images);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            MPoly r = apply_subs(pending[i]);
            poly::normalize(dom_, r);
            if (r.empty()) {
                pending.erase(pending.begin() + i);
                progress = true;
                break;
            }
            if (poly::is_constant(r)) {
                mpz_class c = dom_.lift(r.front().c);
                mpz_class m_old = dom_.kind() == ScalarKind::Mod ? dom_.modulus() : mpz_class(0);
                mpz_class m_new;
                mpz_gcd(m_new.get_mpz_t(), m_old.get_mpz_t(), c.get_mpz_t());
                if (m_new == 1) {
                    zero_ring_ = true;
                    rep_ = RingRep::Scalar;
                    dom_ = BaseDomain::mod(1);
                    return;
                }
                BaseDomain nd = BaseDomain::mod(m_new);
                std::vector<MPoly> remapped;
                for (auto& q : rels_) remapped.push_back(poly::map_coeffs(dom_, nd, q));
                dom_ = nd;
                rels_ = std::move(remapped);
                known_domain_ = known_domain_ && dom_.is_field();
                if (dom_.is_field()) {
                    // re-run with field machinery
                    order_ = grevlex_less(pack_);
                    gb_ = groebner::reduced_basis(dom_, pack_, rels_, order_);
                    if (groebner::contains_one(gb_)) {
                        zero_ring_ = true;
                        rep_ = RingRep::Scalar;
                        dom_ = BaseDomain::mod(1);
                    } else {
                        rep_ = pvars_.empty() ? RingRep::Scalar : RingRep::Poly;
                    }
                    return;
                }
                classify_b();
                return;
            }

            // localization relation s*ivar - 1
            bool matched = false;
            for (int v = 0; v < n && !matched; ++v) {
                if (pvars_[v].role != VarInfo::Role::Inverse) continue;
                if (subs_[v]) continue;
                if (std::find(frac_vars_.begin(), frac_vars_.end(), v) != frac_vars_.end())
                    continue;
                if (poly::degree_in(pack_, r, v) != 1) continue;
                MPoly s = poly::coeff_of_var_power(dom_, pack_, r, v, 1);
                MPoly rest = poly::coeff_of_var_power(dom_, pack_, r, v, 0);
                MPoly minus_one = poly::constant(dom_, dom_.neg(dom_.one()));
                if (!poly::equal(dom_, rest, minus_one)) continue;
                if (poly::uses_var(pack_, s, v)) continue;
                if (poly::is_constant(s)) {
                    BaseScalar c = poly::constant_coeff(dom_, s);
                    if (auto ci = dom_.inverse(c)) {
                        subs_[v] = poly::constant(dom_, *ci);
                        matched = true;
                        break;
                    }
                    if (dom_.kind() == ScalarKind::Mod) {
                        // nilpotent: inverting it kills the ring; otherwise out of scope
                        mpz_class cc = dom_.lift(c);
                        mpz_class acc = cc % dom_.modulus();
                        bool nilpotent = false;
                        mpz_class powv = acc;
                        for (std::size_t k = 0; k < mpz_sizeinbase(dom_.modulus().get_mpz_t(), 2);
                             ++k) {
                            if (powv == 0) {
                                nilpotent = true;
                                break;
                            }
                            powv = powv * acc % dom_.modulus();
                        }
                        if (nilpotent || powv == 0) {
                            zero_ring_ = true;
                            rep_ = RingRep::Scalar;
                            dom_ = BaseDomain::mod(1);
                            return;
                        }
                        throw unsupported_error(
                            "localization at a non-unit over Z/" + dom_.modulus().get_str() +
                            " is not supported");
                    }
                }
                if (dom_.kind() != ScalarKind::Integers)
                    throw unsupported_error("localization at '" + pvars_[v].src_expr +
                                            "' over Z/" + dom_.modulus().get_str() +
                                            " is not supported");
                frac_vars_.push_back(v);
                frac_elems_.push_back(s);
                matched = true;
            }
            if (matched) {
                pending.erase(pending.begin() + i);
                progress = true;
                break;
            }

            // substitution var - expr (unit leading coefficient)
            for (int v = 0; v < n && !matched; ++v) {
                if (pvars_[v].role == VarInfo::Role::Inverse) continue;
                if (subs_[v]) continue;
                if (poly::degree_in(pack_, r, v) != 1) continue;
                MPoly c = poly::coeff_of_var_power(dom_, pack_, r, v, 1);
                if (!poly::is_constant(c)) continue;
                auto ci = dom_.inverse(poly::constant_coeff(dom_, c));
                if (!ci) continue;
                MPoly rest = poly::coeff_of_var_power(dom_, pack_, r, v, 0);
                // v = -c^{-1} * rest
                subs_[v] = poly::scalar_mul(dom_, rest, dom_.neg(*ci));
                matched = true;
            }
            if (matched) {
                pending.erase(pending.begin() + i);
                progress = true;
                break;
            }
        }
    }
    if (!pending.empty()) {
        std::string base_name = dom_.kind() == ScalarKind::Integers
                                    ? "Z"
                                    : "Z/" + dom_.modulus().get_str();
        throw unsupported_error("quotient ideal over " + base_name +
                                " is not a triangular substitution system");
    }

    // resolve substitution chains
    for (int pass = 0; pass < n + 1; ++pass) {
        bool dirty = false;
        for (int v = 0; v < n; ++v) {
            if (!subs_[v]) continue;
            std::vector<const MPoly*> images(n, nullptr);
            for (int w = 0; w < n; ++w)
                if (w != v && subs_[w] && poly::uses_var(pack_, *subs_[v], w)) {
                    images[w] = &*subs_[w];
                    dirty = true;
                }
            if (images != std::vector<const MPoly*>(n, nullptr))
                subs_[v] = poly::substitute(dom_, pack_, *subs_[v], images);
            if (poly::uses_var(pack_, *subs_[v], v))
                throw unsupported_error("cyclic substitution system in quotient ideal");
        }
        if (!dirty) break;
    }
    for (auto& s : frac_elems_) {
        std::vector<const MPoly*> images(n, nullptr);
        bool any = false;
        for (int w = 0; w < n; ++w)
            if (subs_[w]) {
                images[w] = &*subs_[w];
                any = true;
            }
        if (any) s = poly::substitute(dom_, pack_, s, images);
        poly::normalize(dom_, s);
        if (s.empty()) {
            zero_ring_ = true;
            rep_ = RingRep::Scalar;
            dom_ = BaseDomain::mod(1);
            return;
        }
    }

    rep_ = pvars_.empty() ? RingRep::Scalar : RingRep::Frac;
}

// ---------------------------------------------------------------------------
// payload operations
// ---------------------------------------------------------------------------

mpz_class Ring::characteristic() const {
    if (zero_ring_) return 1;
    if (dom_.kind() == ScalarKind::Mod) return dom_.modulus();
    return 0;
}

std::size_t Ring::field_size() const {
    if (!field_) throw math_error("not a field");
    mpz_class s = dom_.modulus();
    if (desc_->kind == RingDescriptor::Kind::FiniteField) {
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), s.get_mpz_t(), desc_->degree);
        s = t;
    }
    if (!s.fits_ulong_p()) throw unsupported_error("field too large to enumerate");
    return s.get_ui();
}

Scalar Ring::s_zero() const {
    switch (rep_) {
        case RingRep::Scalar: return dom_.zero();
        case RingRep::Poly: return MPoly{};
        case RingRep::Frac: return FracElem{{}, std::vector<std::uint32_t>(frac_vars_.size(), 0)};
    }
    throw internal_error("bad rep");
}

Scalar Ring::s_one() const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar: return dom_.one();
        case RingRep::Poly: return poly::constant(dom_, dom_.one());
        case RingRep::Frac:
            return FracElem{poly::constant(dom_, dom_.one()),
                            std::vector<std::uint32_t>(frac_vars_.size(), 0)};
    }
    throw internal_error("bad rep");
}

Scalar Ring::s_from_mpz(const mpz_class& n) const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar: return dom_.from_mpz(n);
        case RingRep::Poly: return normalize_raw(poly::constant(dom_, dom_.from_mpz(n)));
        case RingRep::Frac:
            return FracElem{poly::constant(dom_, dom_.from_mpz(n)),
                            std::vector<std::uint32_t>(frac_vars_.size(), 0)};
    }
    throw internal_error("bad rep");
}

Scalar Ring::s_from_mpq(const mpq_class& q) const {
    if (dom_.kind() == ScalarKind::Rationals) {
        if (rep_ == RingRep::Scalar) return BaseScalar(q);
        return normalize_raw(poly::constant(dom_, q));
    }
    Scalar num = s_from_mpz(q.get_num());
    Scalar den = s_from_mpz(q.get_den());
    auto inv = s_inverse(den);
    if (!inv)
        throw math_error("denominator " + q.get_den().get_str() + " is not invertible in " +
                         label());
    return s_mul(num, *inv);
}

MPoly Ring::to_raw(const Scalar& v) const {
    switch (rep_) {
        case RingRep::Scalar: return poly::constant(dom_, std::get<BaseScalar>(v));
        case RingRep::Poly: return std::get<MPoly>(v);
        case RingRep::Frac: {
            const FracElem& f = std::get<FracElem>(v);
            MPoly out = f.num;
            for (std::size_t j = 0; j < frac_vars_.size(); ++j)
                if (f.den[j] > 0)
                    out = poly::mono_mul(dom_, pack_, out,
                                         pack_.var_key(frac_vars_[j], f.den[j]), dom_.one());
            return out;
        }
    }
    throw internal_error("bad rep");
}

Scalar Ring::normalize_raw(const MPoly& raw) const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar: {
            MPoly r = raw;
            poly::normalize(dom_, r);
            if (r.empty()) return dom_.zero();
            if (!poly::is_constant(r)) throw internal_error("nonconstant payload in scalar ring");
            return r.front().c;
        }
        case RingRep::Poly:
            return groebner::normal_form(dom_, pack_, raw, gb_, order_);
        case RingRep::Frac:
            return normalize_b(raw);
    }
    throw internal_error("bad rep");
}

Scalar Ring::normalize_b(const MPoly& raw) const {
    const int n = static_cast<int>(pvars_.size());
    std::vector<const MPoly*> images(n, nullptr);
    bool any = false;
    for (int i = 0; i < n; ++i)
        if (subs_[i]) {
            images[i] = &*subs_[i];
            any = true;
        }
    MPoly f = any ? poly::substitute(dom_, pack_, raw, images) : raw;
    poly::normalize(dom_, f);

    FracElem out;
    out.den.assign(frac_vars_.size(), 0);
    if (f.empty()) return out;

    // sweep inverse-variable powers into the denominator
    std::vector<std::uint32_t> maxe(frac_vars_.size(), 0);
    for (const auto& t : f)
        for (std::size_t j = 0; j < frac_vars_.size(); ++j)
            maxe[j] = std::max(maxe[j], pack_.exponent(t.key, frac_vars_[j]));
    bool has_inverse = std::any_of(maxe.begin(), maxe.end(), [](std::uint32_t e) { return e > 0; });
    if (!has_inverse) {
        out.num = std::move(f);
        return out;
    }
    MPoly num;
    for (const auto& t : f) {
        auto exps = pack_.unpack(t.key);
        MPoly term = poly::constant(dom_, t.c);
        for (std::size_t j = 0; j < frac_vars_.size(); ++j) {
            std::uint32_t e = exps[frac_vars_[j]];
            exps[frac_vars_[j]] = 0;
            if (maxe[j] > e)
                term = poly::mul(dom_, pack_, term,
                                 poly::pow(dom_, pack_, frac_elems_[j], maxe[j] - e));
        }
        term = poly::mono_mul(dom_, pack_, term, pack_.pack(exps), dom_.one());
        num = poly::add(dom_, num, term);
    }
    out.num = std::move(num);
    out.den = maxe;
    reduce_frac(out);
    return out;
}

void Ring::reduce_frac(FracElem& f) const {
    if (f.num.empty()) {
        f.den.assign(frac_vars_.size(), 0);
        return;
    }
    for (std::size_t j = 0; j < frac_vars_.size(); ++j) {
        while (f.den[j] > 0) {
            auto q = poly::divide_exact(dom_, pack_, f.num, frac_elems_[j]);
            if (!q) break;
            f.num = std::move(*q);
            --f.den[j];
        }
    }
}

Scalar Ring::s_add(const Scalar& a, const Scalar& b) const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar:
            return dom_.add(std::get<BaseScalar>(a), std::get<BaseScalar>(b));
        case RingRep::Poly:
            return poly::add(dom_, std::get<MPoly>(a), std::get<MPoly>(b));
        case RingRep::Frac: {
            const FracElem& x = std::get<FracElem>(a);
            const FracElem& y = std::get<FracElem>(b);
            FracElem out;
            out.den.resize(frac_vars_.size());
            MPoly nx = x.num, ny = y.num;
            for (std::size_t j = 0; j < frac_vars_.size(); ++j) {
                std::uint32_t e = std::max(x.den[j], y.den[j]);
                out.den[j] = e;
                if (e > x.den[j])
                    nx = poly::mul(dom_, pack_, nx,
                                   poly::pow(dom_, pack_, frac_elems_[j], e - x.den[j]));
                if (e > y.den[j])
                    ny = poly::mul(dom_, pack_, ny,
                                   poly::pow(dom_, pack_, frac_elems_[j], e - y.den[j]));
            }
            out.num = poly::add(dom_, nx, ny);
            reduce_frac(out);
            return out;
        }
    }
    throw internal_error("bad rep");
}

Scalar Ring::s_sub(const Scalar& a, const Scalar& b) const { return s_add(a, s_neg(b)); }

Scalar Ring::s_mul(const Scalar& a, const Scalar& b) const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar:
            return dom_.mul(std::get<BaseScalar>(a), std::get<BaseScalar>(b));
        case RingRep::Poly: {
            MPoly p = poly::mul(dom_, pack_, std::get<MPoly>(a), std::get<MPoly>(b));
            return groebner::normal_form(dom_, pack_, p, gb_, order_);
        }
        case RingRep::Frac: {
            const FracElem& x = std::get<FracElem>(a);
            const FracElem& y = std::get<FracElem>(b);
            FracElem out;
            out.num = poly::mul(dom_, pack_, x.num, y.num);
            out.den.resize(frac_vars_.size());
            for (std::size_t j = 0; j < frac_vars_.size(); ++j) out.den[j] = x.den[j] + y.den[j];
            reduce_frac(out);
            return out;
        }
    }
    throw internal_error("bad rep");
}

Scalar Ring::s_neg(const Scalar& a) const {
    if (zero_ring_) return s_zero();
    switch (rep_) {
        case RingRep::Scalar: return dom_.neg(std::get<BaseScalar>(a));
        case RingRep::Poly: return poly::neg(dom_, std::get<MPoly>(a));
        case RingRep::Frac: {
            FracElem out = std::get<FracElem>(a);
            out.num = poly::neg(dom_, out.num);
            return out;
        }
    }
    throw internal_error("bad rep");
}

bool Ring::s_is_zero(const Scalar& a) const {
    if (zero_ring_) return true;
    switch (rep_) {
        case RingRep::Scalar: return dom_.is_zero(std::get<BaseScalar>(a));
        case RingRep::Poly: return std::get<MPoly>(a).empty();
        case RingRep::Frac: return std::get<FracElem>(a).num.empty();
    }
    throw internal_error("bad rep");
}

bool Ring::s_equal(const Scalar& a, const Scalar& b) const {
    if (zero_ring_) return true;
    switch (rep_) {
        case RingRep::Scalar: return dom_.equal(std::get<BaseScalar>(a), std::get<BaseScalar>(b));
        case RingRep::Poly: return poly::equal(dom_, std::get<MPoly>(a), std::get<MPoly>(b));
        case RingRep::Frac: return s_is_zero(s_sub(a, b));
    }
    throw internal_error("bad rep");
}

std::optional<Scalar> Ring::s_divide_by_int(const Scalar& a, const mpz_class& n) const {
    if (zero_ring_) return s_zero();
    Scalar nel = s_from_mpz(n);
    if (auto inv = s_inverse(nel)) return s_mul(a, *inv);
    if (s_is_zero(a)) return s_zero();
    if (dom_.kind() == ScalarKind::Integers) {
        // exact coefficient-wise division
        auto divide_poly = [&](const MPoly& f) -> std::optional<MPoly> {
            MPoly out;
            for (const auto& t : f) {
                mpz_class c = dom_.lift(t.c);
                if (c % n != 0) return std::nullopt;
                out.push_back({t.key, BaseScalar(mpz_class(c / n))});
            }
            return out;
        };
        switch (rep_) {
            case RingRep::Scalar: {
                mpz_class c = dom_.lift(std::get<BaseScalar>(a));
                if (c % n != 0) return std::nullopt;
                return BaseScalar(mpz_class(c / n));
            }
            case RingRep::Poly: throw internal_error("integer scalars cannot be class A");
            case RingRep::Frac: {
                FracElem out = std::get<FracElem>(a);
                auto q = divide_poly(out.num);
                if (!q) return std::nullopt;
                out.num = std::move(*q);
                return out;
            }
        }
    }
    return std::nullopt;
}

// --- units -----------------------------------------------------------------

std::optional<Scalar> Ring::unit_a(const MPoly& payload) const {
    // a is a unit iff 1 lies in I + (a)
    {
        std::vector<MPoly> gens = gb_;
        gens.push_back(payload);
        auto gba = groebner::reduced_basis(dom_, pack_, gens, order_);
        if (!groebner::contains_one(gba)) return std::nullopt;
    }
    // witness: adjoin y with a*y = 1 and eliminate; since a is a unit the
    // normal form of y is y-free and equals the inverse
    const int n = std::max<int>(1, static_cast<int>(pvars_.size()));
    const int yvar = n;
    Packing Pe = Packing::plain(n + 1);
    auto lift = [&](const MPoly& f) { return repack(f, pack_, Pe); };
    std::vector<MPoly> gens;
    for (const auto& g : gb_) gens.push_back(lift(g));
    MPoly rel = poly::mono_mul(dom_, Pe, lift(payload), Pe.var_key(yvar), dom_.one());
    rel = poly::sub(dom_, rel, poly::constant(dom_, dom_.one()));
    gens.push_back(std::move(rel));
    MonoLess less = elim_less(Pe, yvar);
    auto gbe = groebner::reduced_basis(dom_, Pe, gens, less);
    if (groebner::contains_one(gbe)) throw internal_error("unit with collapsing localization");
    MPoly y = poly::variable(dom_, Pe, yvar);
    MPoly nf = groebner::normal_form(dom_, Pe, y, gbe, less);
    if (poly::uses_var(Pe, nf, yvar)) throw internal_error("unit witness extraction failed");
    return normalize_raw(repack(nf, Pe, pack_));
}

std::optional<Scalar> Ring::unit_b(const Scalar& payload) const {
    if (rep_ == RingRep::Scalar) {
        auto r = dom_.inverse(std::get<BaseScalar>(payload));
        if (!r) return std::nullopt;
        return Scalar(*r);
    }
    const FracElem& f = std::get<FracElem>(payload);
    if (dom_.kind() == ScalarKind::Integers) {
        // unit iff num divides a product of the inverted elements
        if (frac_vars_.empty()) {
            if (!poly::is_constant(f.num)) return std::nullopt;
            mpz_class c = dom_.lift(poly::constant_coeff(dom_, f.num));
            if (c != 1 && c != -1) return std::nullopt;
            FracElem inv{poly::constant(dom_, BaseScalar(c)), f.den};  // den is empty
            return Scalar(inv);
        }
        MPoly S = poly::constant(dom_, dom_.one());
        for (const auto& s : frac_elems_) S = poly::mul(dom_, pack_, S, s);
        mpz_class content = poly::int_content(dom_, f.num);
        std::size_t cmax = poly::total_degree(pack_, f.num) +
                           mpz_sizeinbase(content.get_mpz_t(), 2) + 2;
        MPoly Sc = poly::constant(dom_, dom_.one());
        for (std::size_t C = 0; C <= cmax; ++C) {
            auto q = poly::divide_exact(dom_, pack_, Sc, f.num);
            if (q) {
                FracElem inv;
                inv.num = std::move(*q);
                inv.den.assign(frac_vars_.size(), static_cast<std::uint32_t>(C));
                // multiply by the original denominator monomial
                for (std::size_t j = 0; j < frac_vars_.size(); ++j) {
                    if (f.den[j] > 0)
                        inv.num = poly::mul(dom_, pack_, inv.num,
                                            poly::pow(dom_, pack_, frac_elems_[j], f.den[j]));
                }
                reduce_frac(inv);
                return Scalar(inv);
            }
            Sc = poly::mul(dom_, pack_, Sc, S);
        }
        return std::nullopt;
    }
    // composite Z/m polynomials: unit iff constant term is a unit and all
    // other coefficients are nilpotent
    const mpz_class& m = dom_.modulus();
    BaseScalar c0 = poly::constant_coeff(dom_, f.num);
    auto c0inv = dom_.inverse(c0);
    if (!c0inv) return std::nullopt;
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (const auto& t : f.num) {
        if (t.key == 0) continue;
        mpz_class c = dom_.lift(t.c);
        mpz_class pw;
        mpz_class e(static_cast<unsigned long>(bits));
        mpz_powm(pw.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        if (pw != 0) return std::nullopt;
    }
    // Newton iteration x <- x(2 - f x)
    Scalar x{FracElem{poly::constant(dom_, *c0inv), f.den}};
    Scalar two = s_from_mpz(2);
    Scalar fx = payload;
    for (int it = 0; it < 200; ++it) {
        Scalar prod = s_mul(fx, x);
        if (s_equal(prod, s_one())) return x;
        x = s_mul(x, s_sub(two, prod));
    }
    throw internal_error("unit inversion did not converge");
}

std::optional<Scalar> Ring::s_inverse(const Scalar& a) const {
    if (zero_ring_) return s_zero();
    if (s_is_zero(a)) return std::nullopt;
    switch (rep_) {
        case RingRep::Scalar: {
            auto r = dom_.inverse(std::get<BaseScalar>(a));
            if (!r) return std::nullopt;
            return Scalar(*r);
        }
        case RingRep::Poly: {
            const MPoly& f = std::get<MPoly>(a);
            if (poly::is_constant(f)) {
                auto r = dom_.inverse(poly::constant_coeff(dom_, f));
                if (r) return Scalar(poly::constant(dom_, *r));
            }
            return unit_a(f);
        }
        case RingRep::Frac: return unit_b(a);
    }
    throw internal_error("bad rep");
}

// --- regularity --------------------------------------------------------------

Ring::Regularity Ring::s_is_regular(const Scalar& a) const {
    if (zero_ring_) return {true, std::nullopt};
    if (s_is_zero(a)) return {false, s_one()};
    if (field_ || is_known_domain()) return {true, std::nullopt};

    if (rep_ == RingRep::Scalar) {
        // Z/m: regular iff coprime to the modulus
        if (dom_.kind() != ScalarKind::Mod) return {true, std::nullopt};
        mpz_class v = dom_.lift(std::get<BaseScalar>(a));
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), dom_.modulus().get_mpz_t());
        if (g == 1) return {true, std::nullopt};
        return {false, s_from_mpz(dom_.modulus() / g)};
    }

    if (rep_ == RingRep::Frac) {
        if (dom_.kind() == ScalarKind::Integers) return {true, std::nullopt};  // domain
        // composite Z/m polynomials (McCoy): zero divisor iff a single scalar
        // kills every coefficient
        const FracElem& f = std::get<FracElem>(a);
        mpz_class g = poly::int_content(dom_, f.num);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dom_.modulus().get_mpz_t());
        if (g == 1) return {true, std::nullopt};
        return {false, s_from_mpz(dom_.modulus() / g)};
    }

    // class A: a regular iff (I : a) = I, via the ideal intersection I ∩ (a)
    const MPoly& araw = std::get<MPoly>(a);
    const int n = std::max<int>(1, static_cast<int>(pvars_.size()));
    const int tvar = n;
    Packing Pe = Packing::plain(n + 1);
    auto lift = [&](const MPoly& f) { return repack(f, pack_, Pe); };
    MPoly t = poly::variable(dom_, Pe, tvar);
    MPoly one_minus_t = poly::sub(dom_, poly::constant(dom_, dom_.one()), t);
    std::vector<MPoly> gens;
    for (const auto& g : gb_) gens.push_back(poly::mul(dom_, Pe, lift(g), t));
    gens.push_back(poly::mul(dom_, Pe, lift(araw), one_minus_t));
    MonoLess less = elim_less(Pe, tvar);
    auto gbe = groebner::reduced_basis(dom_, Pe, gens, less);
    for (const auto& h : gbe) {
        if (poly::uses_var(Pe, h, tvar)) continue;
        MPoly hd = repack(h, Pe, pack_);
        auto q = poly::divide_exact(dom_, pack_, hd, araw);
        if (!q) throw internal_error("intersection element not divisible");
        MPoly nf = groebner::normal_form(dom_, pack_, *q, gb_, order_);
        if (!nf.empty()) return {false, Scalar(nf)};
    }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// parse / print
// ---------------------------------------------------------------------------

RingElement Ring::zero() const { return {shared_from_this(), s_zero()}; }
RingElement Ring::one() const { return {shared_from_this(), s_one()}; }
RingElement Ring::from_int(const mpz_class& n) const { return {shared_from_this(), s_from_mpz(n)}; }

RingElement Ring::var(const std::string& name) const {
    for (std::size_t i = 0; i < pvars_.size(); ++i) {
        if (pvars_[i].name != name || pvars_[i].role == VarInfo::Role::Inverse) continue;
        MPoly raw = poly::variable(dom_, pack_, static_cast<int>(i));
        return {shared_from_this(), normalize_raw(raw)};
    }
    throw math_error("unknown variable '" + name + "' in " + label());
}

namespace {

RingElement eval_node(const Ring& ring, const expr::Node& n) {
    using K = expr::Node::Kind;
    RingPtr self = ring.shared_from_this();
    switch (n.kind) {
        case K::Int: return ring.from_int(n.value);
        case K::Var: {
            for (const auto& pv : ring.pvars())
                if (pv.role != Ring::VarInfo::Role::Inverse && pv.name == n.name)
                    return ring.var(n.name);
            throw parse_error("unknown variable '" + n.name + "'", n.pos);
        }
        case K::Add: return eval_node(ring, *n.kids[0]) + eval_node(ring, *n.kids[1]);
        case K::Sub: return eval_node(ring, *n.kids[0]) - eval_node(ring, *n.kids[1]);
        case K::Mul: return eval_node(ring, *n.kids[0]) * eval_node(ring, *n.kids[1]);
        case K::Neg: return -eval_node(ring, *n.kids[0]);
        case K::Pow: {
            RingElement base = eval_node(ring, *n.kids[0]);
            return base.pow(n.value);
        }
    }
    throw internal_error("bad expression node");
}

}  // namespace

RingElement Ring::parse(const std::string& text) const {
    auto ast = expr::parse(text);
    return eval_node(*this, *ast);
}

RingElement parse_element(const RingPtr& ring, const std::string& text) {
    return ring->parse(text);
}

namespace {

struct CoeffStr {
    bool negative;
    std::string mag;  // grammar-safe magnitude, e.g. "3" or "3*2^(-1)"
};

CoeffStr format_base_scalar(const BaseDomain& dom, const BaseScalar& c) {
    switch (dom.kind()) {
        case ScalarKind::Integers: {
            const mpz_class& v = std::get<mpz_class>(c);
            return {v < 0, mpz_class(abs(v)).get_str()};
        }
        case ScalarKind::Rationals: {
            const mpq_class& v = std::get<mpq_class>(c);
            mpz_class num = v.get_num(), den = v.get_den();
            bool neg = num < 0;
            std::string s = mpz_class(abs(num)).get_str();
            if (den != 1) s += "*" + den.get_str() + "^(-1)";
            return {neg, s};
        }
        case ScalarKind::Mod: return {false, dom.lift(c).get_str()};
    }
    throw internal_error("bad scalar kind");
}

}  // namespace

std::string Ring::to_string(const Scalar& v) const {
    if (zero_ring_) return "0";

    auto var_factor = [&](int i, std::uint32_t e) -> std::string {
        const VarInfo& pv = pvars_[i];
        if (pv.role == VarInfo::Role::Inverse) {
            return "(" + pv.src_expr + ")^(-" + std::to_string(e) + ")";
        }
        if (e == 1) return pv.name;
        return pv.name + "^" + std::to_string(e);
    };

    auto poly_to_string = [&](const MPoly& f) -> std::string {
        if (f.empty()) return "0";
        // descending graded-lex
        MPoly terms = f;
        std::sort(terms.begin(), terms.end(), [&](const PolyTerm& a, const PolyTerm& b) {
            std::uint32_t da = pack_.degree(a.key), db = pack_.degree(b.key);
            if (da != db) return da > db;
            return a.key > b.key;
        });
        std::string out;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            CoeffStr cs = format_base_scalar(dom_, terms[k].c);
            std::string mono;
            for (int i = 0; i < static_cast<int>(pvars_.size()); ++i) {
                std::uint32_t e = pack_.exponent(terms[k].key, i);
                if (e == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += var_factor(i, e);
            }
            std::string body;
            if (mono.empty())
                body = cs.mag;
            else if (cs.mag == "1")
                body = mono;
            else
                body = cs.mag + "*" + mono;
            if (k == 0)
                out += (cs.negative ? "-" : "") + body;
            else
                out += (cs.negative ? "-" : "+") + body;
        }
        return out;
    };

    switch (rep_) {
        case RingRep::Scalar: {
            CoeffStr cs = format_base_scalar(dom_, std::get<BaseScalar>(v));
            return (cs.negative ? "-" : "") + cs.mag;
        }
        case RingRep::Poly: return poly_to_string(std::get<MPoly>(v));
        case RingRep::Frac: {
            const FracElem& f = std::get<FracElem>(v);
            bool trivial_den =
                std::all_of(f.den.begin(), f.den.end(), [](std::uint32_t e) { return e == 0; });
            std::string num = poly_to_string(f.num);
            if (trivial_den) return num;
            std::string dens;
            for (std::size_t j = 0; j < frac_vars_.size(); ++j) {
                if (f.den[j] == 0) continue;
                if (!dens.empty()) dens += "*";
                dens += "(" + pvars_[frac_vars_[j]].src_expr + ")^(-" +
                        std::to_string(f.den[j]) + ")";
            }
            if (num == "0") return "0";
            if (num == "1") return dens;
            bool multi = f.num.size() > 1;
            return (multi ? "(" + num + ")" : num) + "*" + dens;
        }
    }
    throw internal_error("bad rep");
}

std::vector<RingElement> Ring::enumerate_elements(std::size_t cap) const {
    if (zero_ring_) return {zero()};
    RingPtr self = shared_from_this();
    if (rep_ == RingRep::Scalar && dom_.kind() == ScalarKind::Mod) {
        if (!dom_.modulus().fits_ulong_p() || dom_.modulus().get_ui() > cap)
            throw unsupported_error("ring too large to enumerate");
        std::vector<RingElement> out;
        for (unsigned long i = 0; i < dom_.modulus().get_ui(); ++i)
            out.push_back(from_int(mpz_class(i)));
        return out;
    }
    if (rep_ == RingRep::Poly && dom_.kind() == ScalarKind::Mod) {
        bool complete = false;
        auto basis = groebner::staircase(pack_, gb_, order_, 64, complete);
        if (!complete) throw unsupported_error("quotient ring is not finite-dimensional");
        if (!dom_.modulus().fits_ulong_p()) throw unsupported_error("ring too large to enumerate");
        unsigned long p = dom_.modulus().get_ui();
        double count = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            count *= static_cast<double>(p);
            if (count > static_cast<double>(cap))
                throw unsupported_error("ring too large to enumerate");
        }
        std::sort(basis.begin(), basis.end(), [&](std::uint64_t a, std::uint64_t b) {
            if (pack_.degree(a) != pack_.degree(b)) return pack_.degree(a) < pack_.degree(b);
            return a < b;
        });
        std::vector<RingElement> out;
        std::vector<unsigned long> digits(basis.size(), 0);
        while (true) {
            MPoly f;
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (digits[i] != 0)
                    f.push_back({basis[i], dom_.from_mpz(mpz_class(digits[i]))});
            poly::normalize(dom_, f);
            out.emplace_back(self, normalize_raw(f));
            std::size_t i = 0;
            while (i < basis.size()) {
                if (++digits[i] < p) break;
                digits[i] = 0;
                ++i;
            }
            if (i == basis.size()) break;
        }
        return out;
    }
    throw unsupported_error("ring class cannot be enumerated");
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

void RingElement::check_same(const RingElement& o) const {
    if (!ring_ || !o.ring_) throw math_error("uninitialized ring element");
    if (!ring_->same_as(*o.ring_))
        throw math_error("ring mismatch: " + ring_->label() + " vs " + o.ring_->label());
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same(o);
    return {ring_, ring_->s_add(v_, o.v_)};
}

RingElement RingElement::operator-(const RingElement& o) const {
    check_same(o);
    return {ring_, ring_->s_sub(v_, o.v_)};
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same(o);
    return {ring_, ring_->s_mul(v_, o.v_)};
}

bool RingElement::operator==(const RingElement& o) const {
    check_same(o);
    return ring_->s_equal(v_, o.v_);
}

RingElement RingElement::pow(const mpz_class& e) const {
    if (e < 0) {
        auto inv = ring_->s_inverse(v_);
        if (!inv)
            throw math_error("negative power of a non-unit: " + to_string() + " in " +
                             ring_->label());
        return RingElement(ring_, *inv).pow(-e);
    }
    if (!e.fits_ulong_p() || e > 1000000) throw math_error("exponent too large");
    unsigned long n = e.get_ui();
    RingElement result = ring_->one();
    RingElement base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

UnitResult is_unit(const RingElement& a) {
    auto inv = a.ring()->s_inverse(a.payload());
    if (!inv) return {false, std::nullopt};
    return {true, RingElement(a.ring(), *inv)};
}

RegularResult is_regular(const RingElement& a) {
    auto r = a.ring()->s_is_regular(a.payload());
    if (r.regular) return {true, std::nullopt};
    return {false, RingElement(a.ring(), *r.witness)};
}

// ---------------------------------------------------------------------------
// homomorphisms
// ---------------------------------------------------------------------------

Scalar RingHom::apply_raw(const MPoly& raw) const {
    const Ring& S = *src_;
    const Ring& D = *dst_;
    Scalar out = D.s_zero();
    for (const auto& t : raw) {
        Scalar c;
        if (S.base_domain().kind() == ScalarKind::Rationals)
            c = D.s_from_mpq(std::get<mpq_class>(t.c));
        else
            c = D.s_from_mpz(S.base_domain().lift(t.c));
        Scalar term = std::move(c);
        for (int i = 0; i < static_cast<int>(S.pvars().size()); ++i) {
            std::uint32_t e = S.packing().exponent(t.key, i);
            if (e == 0) continue;
            Scalar p = images_[i];
            Scalar acc = D.s_one();
            std::uint32_t n = e;
            while (n > 0) {
                if (n & 1) acc = D.s_mul(acc, p);
                n >>= 1;
                if (n) p = D.s_mul(p, p);
            }
            term = D.s_mul(term, acc);
        }
        out = D.s_add(out, term);
    }
    return out;
}

Scalar RingHom::apply_scalar(const Scalar& a) const { return apply_raw(src_->to_raw(a)); }

RingElement RingHom::apply(const RingElement& a) const {
    if (!a.ring()->same_as(*src_)) throw math_error("element does not belong to the source ring");
    return {dst_, apply_scalar(a.payload())};
}

RingHom RingHom::make(const RingPtr& src, const RingPtr& dst,
                      const std::map<std::string, RingElement>& images) {
    RingHom h;
    h.src_ = src;
    h.dst_ = dst;

    mpz_class c = src->characteristic();
    if (c > 1 && !dst->from_int(c).is_zero())
        throw math_error("characteristic mismatch: " + c.get_str() + " does not vanish in " +
                         dst->label());

    h.images_.resize(src->pvars().size(), dst->s_zero());
    for (std::size_t i = 0; i < src->pvars().size(); ++i) {
        const auto& pv = src->pvars()[i];
        if (pv.role == Ring::VarInfo::Role::Inverse) continue;
        auto it = images.find(pv.name);
        if (it == images.end()) throw math_error("no image given for variable '" + pv.name + "'");
        if (!it->second.ring()->same_as(*dst))
            throw math_error("image of '" + pv.name + "' is not in the target ring");
        h.images_[i] = it->second.payload();
    }
    // inverse slots get the witnesses of the images of the inverted elements;
    // raw inverted elements only reference earlier slots
    for (std::size_t i = 0; i < src->pvars().size(); ++i) {
        const auto& pv = src->pvars()[i];
        if (pv.role != Ring::VarInfo::Role::Inverse) continue;
        RingElement s_img(dst, dst->s_zero());
        {
            // the relation s*_i - 1 is stored in src->relations() in order;
            // recover s by parsing the recorded expression in the source and
            // mapping it (cheaper: parse in src, take raw, apply)
            RingElement s_src = src->parse(pv.src_expr);
            s_img = RingElement(dst, h.apply_raw(src->to_raw(s_src.payload())));
        }
        auto u = dst->s_inverse(s_img.payload());
        if (!u)
            throw math_error("relation violation: image of inverted element '" + pv.src_expr +
                             "' is not a unit in " + dst->label());
        h.images_[i] = *u;
    }
    // every defining relation must map to zero
    for (std::size_t i = 0; i < src->relations().size(); ++i) {
        Scalar img = h.apply_raw(src->relations()[i]);
        if (!dst->s_is_zero(img)) {
            throw math_error("images violate the relation '" + src->relation_labels()[i] +
                             "' of " + src->label());
        }
    }
    return h;
}

RingHom RingHom::canonical(const RingPtr& src, const RingPtr& dst) {
    std::map<std::string, RingElement> images;
    for (const auto& pv : src->pvars()) {
        if (pv.role == Ring::VarInfo::Role::Inverse) continue;
        images.emplace(pv.name, dst->var(pv.name));
    }
    return make(src, dst, images);
}

}  // namespace fgl
