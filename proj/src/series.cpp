#include "fgl/series.hpp"

#include <algorithm>

namespace fgl {

namespace {

// Dense triangular accumulator for coefficients mod a small modulus (k <= 2),
// with a map fallback for every other ring class.
struct Accum {
    const Ring* R;
    const Packing* P;
    int k;
    int N;
    bool fast = false;
    bool lazy = false;
    std::int64_t m = 0;
    std::vector<std::int64_t> dense;
    std::map<std::uint64_t, Scalar> acc;

    Accum(const RingPtr& ring, const Packing& pack, int kvars, int bound)
        : R(ring.get()), P(&pack), k(kvars), N(bound) {
        if (ring->small_mod_scalars() && k <= 2 && N <= 2048) {
            fast = true;
            m = ring->small_modulus();
            lazy = m <= 46340;
            std::size_t slots = k == 1 ? std::size_t(N) + 1
                                       : std::size_t(N + 1) * std::size_t(N + 2) / 2;
            dense.assign(slots, 0);
        }
    }

    std::size_t idx(std::uint32_t d, std::uint32_t e1) const {
        return k == 1 ? d : std::size_t(d) * (d + 1) / 2 + e1;
    }

    void add_fast(std::uint32_t d, std::uint32_t e1, std::int64_t v) {
        std::int64_t& slot = dense[idx(d, e1)];
        if (lazy)
            slot += v;
        else
            slot = (slot + v) % m;
    }

    void add(std::uint64_t key, const Scalar& c) {
        std::uint32_t d = P->degree(key);
        if (static_cast<int>(d) > N) return;
        if (fast) {
            add_fast(d, P->exponent(key, 0), std::get<std::int64_t>(std::get<BaseScalar>(c)));
            return;
        }
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, c);
        else
            it->second = R->s_add(it->second, c);
    }

    void add_scaled(std::uint64_t key, const Scalar& a, const Scalar& b) {
        std::uint32_t d = P->degree(key);
        if (static_cast<int>(d) > N) return;
        if (fast) {
            std::int64_t va = std::get<std::int64_t>(std::get<BaseScalar>(a));
            std::int64_t vb = std::get<std::int64_t>(std::get<BaseScalar>(b));
            add_fast(d, P->exponent(key, 0), va * vb % m);
            return;
        }
        Scalar c = R->s_mul(a, b);
        if (R->s_is_zero(c)) return;
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::move(c));
        else
            it->second = R->s_add(it->second, c);
    }

    std::vector<TruncatedSeries::Term> finish() {
        std::vector<TruncatedSeries::Term> out;
        if (fast) {
            for (std::uint32_t d = 0; d <= std::uint32_t(N); ++d) {
                std::uint32_t emax = k == 1 ? 0 : d;
                for (std::uint32_t e1 = 0; e1 <= emax; ++e1) {
                    std::int64_t v = dense[idx(d, e1)] % m;
                    if (v < 0) v += m;
                    if (v == 0) continue;
                    std::uint32_t exps[2] = {e1, d - e1};
                    if (k == 1) exps[0] = d;
                    out.push_back({P->pack(exps), BaseScalar(v)});
                }
            }
            return out;
        }
        for (auto& [key, c] : acc)
            if (!R->s_is_zero(c)) out.push_back({key, std::move(c)});
        return out;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

TruncatedSeries TruncatedSeries::zero(RingPtr ring, std::vector<std::string> vars, int bound) {
    if (vars.empty()) throw math_error("a series needs at least one variable");
    if (bound < 0) throw math_error("truncation bound must be >= 0");
    TruncatedSeries s;
    s.ring_ = std::move(ring);
    s.vars_ = std::move(vars);
    s.bound_ = bound;
    s.pack_ = Packing::graded(static_cast<int>(s.vars_.size()));
    if (bound > static_cast<int>(s.pack_.max_exponent()))
        throw unsupported_error("truncation bound too large for this many variables");
    return s;
}

TruncatedSeries TruncatedSeries::constant(RingPtr ring, std::vector<std::string> vars, int bound,
                                          const RingElement& c) {
    TruncatedSeries s = zero(std::move(ring), std::move(vars), bound);
    if (!c.ring()->same_as(*s.ring_)) throw math_error("constant from a different ring");
    if (!c.is_zero()) s.terms_.push_back({0, c.payload()});
    return s;
}

TruncatedSeries TruncatedSeries::variable(RingPtr ring, std::vector<std::string> vars, int bound,
                                          const std::string& name) {
    TruncatedSeries s = zero(std::move(ring), std::move(vars), bound);
    int i = s.var_index(name);
    if (i < 0) throw math_error("unknown series variable '" + name + "'");
    if (bound >= 1 && !s.ring_->is_zero_ring())
        s.terms_.push_back({s.pack_.var_key(i), s.ring_->s_one()});
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(RingPtr ring, std::vector<std::string> vars, int bound,
                                            std::vector<Term> terms) {
    TruncatedSeries s = zero(std::move(ring), std::move(vars), bound);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.key < b.key; });
    for (auto& t : terms) {
        if (static_cast<int>(s.pack_.degree(t.key)) > bound) continue;
        if (!s.terms_.empty() && s.terms_.back().key == t.key)
            s.terms_.back().c = s.ring_->s_add(s.terms_.back().c, t.c);
        else
            s.terms_.push_back(std::move(t));
        if (!s.terms_.empty() && s.ring_->s_is_zero(s.terms_.back().c)) s.terms_.pop_back();
    }
    return s;
}

int TruncatedSeries::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

RingElement TruncatedSeries::coefficient(const std::vector<std::uint32_t>& exps) const {
    if (exps.size() != vars_.size()) throw math_error("exponent tuple has wrong length");
    std::uint32_t deg = 0;
    for (auto e : exps) deg += e;
    if (static_cast<int>(deg) > bound_)
        throw math_error("coefficient beyond the truncation bound");
    std::uint64_t key = pack_.pack(exps);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, std::uint64_t k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) return {ring_, it->c};
    return {ring_, ring_->s_zero()};
}

TruncatedSeries TruncatedSeries::truncated(int new_bound) const {
    if (new_bound == bound_) return *this;
    if (new_bound > bound_)
        throw math_error("cannot extend a series truncated at " + std::to_string(bound_) +
                         " to bound " + std::to_string(new_bound));
    TruncatedSeries s = zero(ring_, vars_, new_bound);
    for (const auto& t : terms_) {
        if (static_cast<int>(pack_.degree(t.key)) > new_bound) break;
        s.terms_.push_back(t);
    }
    return s;
}

TruncatedSeries TruncatedSeries::embedded(std::vector<std::string> new_vars, int new_bound) const {
    if (new_bound < 0) new_bound = bound_;
    if (new_bound > bound_)
        throw math_error("cannot extend a series truncated at " + std::to_string(bound_) +
                         " to bound " + std::to_string(new_bound));
    TruncatedSeries s = zero(ring_, std::move(new_vars), new_bound);
    std::vector<int> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        map[i] = s.var_index(vars_[i]);
        if (map[i] < 0) throw math_error("variable '" + vars_[i] + "' missing from target list");
    }
    std::vector<std::uint32_t> src(vars_.size()), dst(s.vars_.size());
    for (const auto& t : terms_) {
        if (static_cast<int>(pack_.degree(t.key)) > new_bound) continue;
        pack_.unpack(t.key, src.data());
        std::fill(dst.begin(), dst.end(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) dst[map[i]] = src[i];
        s.terms_.push_back({s.pack_.pack(dst), t.c});
    }
    std::sort(s.terms_.begin(), s.terms_.end(),
              [](const Term& a, const Term& b) { return a.key < b.key; });
    return s;
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (!ring_ || !o.ring_) throw math_error("uninitialized series");
    if (!ring_->same_as(*o.ring_))
        throw math_error("series ring mismatch: " + ring_->label() + " vs " + o.ring_->label());
    if (vars_ != o.vars_) throw math_error("series variable mismatch");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    check_compatible(o);
    int N = std::min(bound_, o.bound_);
    TruncatedSeries s = zero(ring_, vars_, N);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (static_cast<int>(pack_.degree(terms_[i].key)) > N) {
            ++i;
            continue;
        }
        if (static_cast<int>(pack_.degree(o.terms_[j].key)) > N) {
            ++j;
            continue;
        }
        if (terms_[i].key < o.terms_[j].key)
            s.terms_.push_back(terms_[i++]);
        else if (o.terms_[j].key < terms_[i].key)
            s.terms_.push_back(o.terms_[j++]);
        else {
            Scalar c = ring_->s_add(terms_[i].c, o.terms_[j].c);
            if (!ring_->s_is_zero(c)) s.terms_.push_back({terms_[i].key, std::move(c)});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i)
        if (static_cast<int>(pack_.degree(terms_[i].key)) <= N) s.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j)
        if (static_cast<int>(pack_.degree(o.terms_[j].key)) <= N)
            s.terms_.push_back(o.terms_[j]);
    return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries s = *this;
    for (auto& t : s.terms_) t.c = ring_->s_neg(t.c);
    return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + (-o);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    check_compatible(o);
    if (o.terms_.size() < terms_.size()) return o * *this;  // iterate the smaller operand
    int N = std::min(bound_, o.bound_);
    Accum acc(ring_, pack_, static_cast<int>(vars_.size()), N);
    if (acc.fast) {
        for (const auto& ta : terms_) {
            std::uint32_t da = pack_.degree(ta.key);
            if (static_cast<int>(da) > N) break;
            std::int64_t ca = std::get<std::int64_t>(std::get<BaseScalar>(ta.c));
            std::uint32_t ea = pack_.exponent(ta.key, 0);
            for (const auto& tb : o.terms_) {
                std::uint32_t db = pack_.degree(tb.key);
                if (static_cast<int>(da + db) > N) break;
                std::int64_t cb = std::get<std::int64_t>(std::get<BaseScalar>(tb.c));
                acc.add_fast(da + db, ea + pack_.exponent(tb.key, 0), ca * cb % acc.m);
            }
        }
    } else {
        for (const auto& ta : terms_) {
            std::uint32_t da = pack_.degree(ta.key);
            if (static_cast<int>(da) > N) break;
            for (const auto& tb : o.terms_) {
                if (static_cast<int>(da + pack_.degree(tb.key)) > N) break;
                acc.add_scaled(ta.key + tb.key, ta.c, tb.c);
            }
        }
    }
    TruncatedSeries s = zero(ring_, vars_, N);
    s.terms_ = acc.finish();
    return s;
}

TruncatedSeries TruncatedSeries::scaled(const RingElement& c) const {
    if (!c.ring()->same_as(*ring_)) throw math_error("scale factor from a different ring");
    return scaled_scalar(c.payload());
}

TruncatedSeries TruncatedSeries::scaled_scalar(const Scalar& c) const {
    TruncatedSeries s = zero(ring_, vars_, bound_);
    if (ring_->s_is_zero(c)) return s;
    for (const auto& t : terms_) {
        Scalar v = ring_->s_mul(t.c, c);
        if (!ring_->s_is_zero(v)) s.terms_.push_back({t.key, std::move(v)});
    }
    return s;
}

TruncatedSeries TruncatedSeries::mono_mul(const std::vector<std::uint32_t>& exps,
                                          const Scalar& c) const {
    if (exps.size() != vars_.size()) throw math_error("exponent tuple has wrong length");
    TruncatedSeries s = zero(ring_, vars_, bound_);
    if (ring_->s_is_zero(c)) return s;
    std::uint64_t shift = pack_.pack(exps);
    for (const auto& t : terms_) {
        std::uint64_t key = t.key + shift;
        if (static_cast<int>(pack_.degree(key)) > bound_) continue;
        Scalar v = ring_->s_mul(t.c, c);
        if (!ring_->s_is_zero(v)) s.terms_.push_back({key, std::move(v)});
    }
    return s;
}

bool equal_to_bound(const TruncatedSeries& a, const TruncatedSeries& b) {
    int N = std::min(a.bound(), b.bound());
    TruncatedSeries d = a.truncated(N) - b.truncated(N);
    return d.is_zero();
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

TruncatedSeries substitute(const TruncatedSeries& f,
                           const std::map<std::string, TruncatedSeries>& images) {
    if (images.empty()) return f;
    const TruncatedSeries& sample = images.begin()->second;
    const RingPtr& R = f.ring();
    if (!R->same_as(*sample.ring()))
        throw math_error("substitution images live in a different ring");
    std::vector<std::string> tvars = sample.vars();
    int N = f.bound();
    for (const auto& [name, img] : images) {
        if (f.var_index(name) < 0)
            throw math_error("substitution for '" + name + "' which is not a series variable");
        if (!img.ring()->same_as(*R) || img.vars() != tvars)
            throw math_error("substitution images disagree on ring or variables");
        N = std::min(N, img.bound());
        std::vector<std::uint32_t> z(tvars.size(), 0);
        if (!img.coefficient(z).is_zero())
            throw math_error("image of '" + name + "' has a nonzero constant term");
    }

    const int k = static_cast<int>(f.vars().size());
    std::vector<TruncatedSeries> base(k);
    for (int i = 0; i < k; ++i) {
        auto it = images.find(f.vars()[i]);
        if (it != images.end()) {
            base[i] = it->second.truncated(N);
        } else {
            // fall through by name
            TruncatedSeries v = TruncatedSeries::variable(R, tvars, N, f.vars()[i]);
            base[i] = std::move(v);
        }
    }

    // power tables per variable, up to the largest exponent appearing in f
    std::vector<std::uint32_t> maxdeg(k, 0);
    for (const auto& t : f.terms())
        for (int i = 0; i < k; ++i)
            maxdeg[i] = std::max(maxdeg[i], f.packing().exponent(t.key, i));
    std::vector<std::vector<TruncatedSeries>> pows(k);
    for (int i = 0; i < k; ++i) {
        if (maxdeg[i] == 0) continue;
        pows[i].resize(maxdeg[i] + 1);
        pows[i][1] = base[i];
        for (std::uint32_t e = 2; e <= maxdeg[i]; ++e) pows[i][e] = pows[i][e - 1] * base[i];
    }

    Packing tp = Packing::graded(static_cast<int>(tvars.size()));
    Accum acc(R, tp, static_cast<int>(tvars.size()), N);
    std::vector<std::uint32_t> exps(k);
    for (const auto& t : f.terms()) {
        if (static_cast<int>(f.packing().degree(t.key)) > N) continue;
        f.packing().unpack(t.key, exps.data());
        const TruncatedSeries* prod = nullptr;
        TruncatedSeries tmp;
        for (int i = 0; i < k; ++i) {
            if (exps[i] == 0) continue;
            const TruncatedSeries& p = pows[i][exps[i]];
            if (!prod) {
                prod = &p;
            } else {
                tmp = *prod * p;
                prod = &tmp;
            }
        }
        if (!prod) {
            acc.add(0, t.c);
        } else {
            for (const auto& pt : prod->terms()) acc.add_scaled(pt.key, pt.c, t.c);
        }
    }
    TruncatedSeries out = TruncatedSeries::zero(R, tvars, N);
    auto terms = acc.finish();
    return TruncatedSeries::from_terms(R, tvars, N, std::move(terms));
}

// ---------------------------------------------------------------------------
// reversion, derivative, integral, division
// ---------------------------------------------------------------------------

TruncatedSeries reversion(const TruncatedSeries& f) {
    if (f.vars().size() != 1) throw math_error("reversion needs a univariate series");
    const RingPtr& R = f.ring();
    int N = f.bound();
    if (!f.coefficient({0}).is_zero())
        throw math_error("reversion needs a series with zero constant term");
    RingElement c1 = f.coefficient({1});
    auto inv = R->s_inverse(c1.payload());
    if (!inv)
        throw math_error("reversion needs a unit linear coefficient; is_unit failed for '" +
                         c1.to_string() + "' in " + R->label());
    const std::string& x = f.vars()[0];
    TruncatedSeries g = TruncatedSeries::variable(R, f.vars(), N, x).scaled_scalar(*inv);
    if (N < 1) return g;
    Scalar minus_inv = R->s_neg(*inv);
    for (int d = 2; d <= N; ++d) {
        TruncatedSeries comp = substitute(f, {{x, g}});
        Scalar err = comp.coefficient({static_cast<std::uint32_t>(d)}).payload();
        if (R->s_is_zero(err)) continue;
        Scalar corr = R->s_mul(minus_inv, err);
        g = g + TruncatedSeries::variable(R, f.vars(), N, x)
                    .mono_mul({static_cast<std::uint32_t>(d - 1)}, corr);
    }
    return g;
}

TruncatedSeries partial_derivative(const TruncatedSeries& f, const std::string& var) {
    int vi = f.var_index(var);
    if (vi < 0) throw math_error("unknown series variable '" + var + "'");
    const RingPtr& R = f.ring();
    int N = std::max(0, f.bound() - 1);
    TruncatedSeries out = TruncatedSeries::zero(R, f.vars(), N);
    std::vector<TruncatedSeries::Term> terms;
    std::vector<std::uint32_t> exps(f.vars().size());
    for (const auto& t : f.terms()) {
        f.packing().unpack(t.key, exps.data());
        if (exps[vi] == 0) continue;
        Scalar c = R->s_mul(t.c, R->s_from_mpz(exps[vi]));
        if (R->s_is_zero(c)) continue;
        exps[vi] -= 1;
        terms.push_back({f.packing().pack(exps), std::move(c)});
        exps[vi] += 1;
    }
    return TruncatedSeries::from_terms(R, f.vars(), N, std::move(terms));
}

TruncatedSeries formal_integral(const TruncatedSeries& f) {
    if (f.vars().size() != 1) throw math_error("formal integral needs a univariate series");
    const RingPtr& R = f.ring();
    int N = f.bound() + 1;
    std::vector<TruncatedSeries::Term> terms;
    for (const auto& t : f.terms()) {
        std::uint32_t e = f.packing().exponent(t.key, 0);
        auto c = R->s_divide_by_int(t.c, mpz_class(e + 1));
        if (!c)
            throw math_error("inexact division by " + std::to_string(e + 1) +
                             " at degree " + std::to_string(e + 1));
        if (R->s_is_zero(*c)) continue;
        std::uint32_t ne[1] = {e + 1};
        terms.push_back({Packing::graded(1).pack(ne), std::move(*c)});
    }
    return TruncatedSeries::from_terms(R, f.vars(), N, std::move(terms));
}

TruncatedSeries div_unit(const TruncatedSeries& num, const TruncatedSeries& den) {
    if (num.vars() != den.vars() || !num.ring()->same_as(*den.ring()))
        throw math_error("series ring/variable mismatch in division");
    const RingPtr& R = num.ring();
    int N = std::min(num.bound(), den.bound());
    std::vector<std::uint32_t> z(num.vars().size(), 0);
    RingElement d0 = den.coefficient(z);
    auto inv = R->s_inverse(d0.payload());
    if (!inv)
        throw math_error("series division needs a unit constant term; is_unit failed for '" +
                         d0.to_string() + "'");

    const Packing& P = num.packing();
    const int shift_bits = P.width() * P.vars();  // degree field position
    // remainder, updated degree by degree
    std::map<std::uint64_t, Scalar> rem;
    for (const auto& t : num.terms())
        if (static_cast<int>(P.degree(t.key)) <= N) rem.emplace(t.key, t.c);

    std::vector<TruncatedSeries::Term> result;
    std::vector<TruncatedSeries::Term> den_tail;  // degree >= 1 terms of den
    for (const auto& t : den.terms())
        if (P.degree(t.key) >= 1 && static_cast<int>(P.degree(t.key)) <= N)
            den_tail.push_back(t);

    for (int d = 0; d <= N; ++d) {
        std::uint64_t lo = std::uint64_t(d) << shift_bits;
        std::uint64_t hi = std::uint64_t(d + 1) << shift_bits;
        std::vector<TruncatedSeries::Term> slice;
        for (auto it = rem.lower_bound(lo); it != rem.end() && it->first < hi; ++it) {
            Scalar c = R->s_mul(it->second, *inv);
            if (!R->s_is_zero(c)) slice.push_back({it->first, std::move(c)});
        }
        if (slice.empty()) continue;
        for (const auto& s : slice) result.push_back(s);
        // rem -= den_tail * slice
        for (const auto& dt : den_tail) {
            std::uint32_t dd = P.degree(dt.key);
            if (static_cast<int>(dd) + d > N) break;
            for (const auto& st : slice) {
                std::uint64_t key = dt.key + st.key;
                Scalar prod = R->s_neg(R->s_mul(dt.c, st.c));
                auto it = rem.find(key);
                if (it == rem.end())
                    rem.emplace(key, std::move(prod));
                else
                    it->second = R->s_add(it->second, prod);
            }
        }
    }
    return TruncatedSeries::from_terms(R, num.vars(), N, std::move(result));
}

TruncatedSeries series_base_change(const TruncatedSeries& f, const RingHom& h) {
    if (!f.ring()->same_as(*h.source()))
        throw math_error("series does not live over the homomorphism source");
    std::vector<TruncatedSeries::Term> terms;
    for (const auto& t : f.terms()) {
        Scalar c = h.apply_scalar(t.c);
        if (!h.target()->s_is_zero(c)) terms.push_back({t.key, std::move(c)});
    }
    return TruncatedSeries::from_terms(h.target(), f.vars(), f.bound(), std::move(terms));
}

PPowerLead leading_term_in_p_powers(const TruncatedSeries& f, const mpz_class& p) {
    if (f.vars().size() != 1)
        throw math_error("leading p-power analysis needs a univariate series");
    if (f.terms().empty()) return {true, 0, f.ring()->zero()};
    const auto& t = f.terms().front();
    std::uint32_t e = f.packing().exponent(t.key, 0);
    if (e == 0) throw internal_error("p-series has a nonzero constant term");
    mpz_class d(e);
    int n = 0;
    while (d > 1) {
        if (d % p != 0)
            throw internal_error("nonzero coefficient at degree " + std::to_string(e) +
                                 " which is not a power of " + p.get_str());
        d /= p;
        ++n;
    }
    return {false, n, RingElement(f.ring(), t.c)};
}

}  // namespace fgl
