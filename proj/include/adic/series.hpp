#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adic/base_field.hpp"

namespace adic {

/// Degree window used when an operation leaves the tail catalog and the
/// result has to be truncated to an exactly computed head.
inline constexpr int kFallbackDegree = 32;

/// Exponent tuple; unused trailing slots are zero. Negative exponents
/// realize Laurent directions.
using ExpKey = std::array<int, 3>;

/// Two-sided working precision: N bounds p-adic knowledge of the
/// coefficients, D bounds degree knowledge. Absent means exact.
struct Precision {
    std::optional<int> N;
    std::optional<int> D;

    static Precision exact() { return {}; }
    static Precision of(int n, int d) { return {n, d}; }

    Precision meet(const Precision& o) const {
        Precision r;
        if (N && o.N) r.N = std::min(*N, *o.N);
        else r.N = N ? N : o.N;
        if (D && o.D) r.D = std::min(*D, *o.D);
        else r.D = D ? D : o.D;
        return r;
    }
};

/**
 * Closed-form coefficient stream for indices i >= start of a
 * one-variable series. The catalog is deliberately tiny:
 *   geometric       coeff(i) = c * pi^(a*i + b)
 *   supergeometric  coeff(i) = c * pi^(a*i^2),  a > 0
 * Every convergence question in scope is decidable over it.
 */
struct TailSpec {
    enum class Kind { geometric, supergeometric };

    Kind kind = Kind::geometric;
    Rational c = Rational(1);
    Rational a = Rational(0);
    Rational b = Rational(0);
    int start = 0;

    static TailSpec geometric(Rational a, Rational b = Rational(0), Rational c = Rational(1),
                              int start = 0) {
        if (c == 0) throw PreconditionError("TailSpec: zero scale; use an absent tail");
        return TailSpec{Kind::geometric, std::move(c), std::move(a), std::move(b), start};
    }

    static TailSpec supergeometric(Rational a, Rational c = Rational(1), int start = 0) {
        if (c == 0) throw PreconditionError("TailSpec: zero scale; use an absent tail");
        if (a <= 0) throw PreconditionError("TailSpec: supergeometric rate must be positive");
        return TailSpec{Kind::supergeometric, std::move(c), std::move(a), Rational(0), start};
    }

    /// v_p of coefficient i.
    Rational vp_at(long i, const BaseField& k) const {
        Rational law = kind == Kind::geometric ? Rational(a * i + b) : Rational(a * i * i);
        return padic_val(c, Integer(k.prime)) + law;
    }

    FieldElement coeff_at(long i, const BaseField& k) const {
        Rational q = kind == Kind::geometric ? Rational(a * i + b) : Rational(a * i * i);
        if (is_integer(q))
            return FieldElement(c * rat_pow(Rational(k.prime), static_cast<long>(rat_floor(q))));
        if (c == 1) return FieldElement::pi_power(q);
        throw PreconditionError("TailSpec: coefficient with fractional pi exponent and scale != 1");
    }

    bool same_law(const TailSpec& o) const { return kind == o.kind && a == o.a && b == o.b; }
};

/// Fold the pi-power part of a geometric scale into the offset so that
/// equal coefficient laws have equal parameters.
inline TailSpec tail_canonical(const BaseField& k, TailSpec t) {
    if (t.kind == TailSpec::Kind::geometric) {
        Rational v = padic_val(t.c, Integer(k.prime));
        if (v != 0) {
            t.b += v;
            t.c /= rat_pow(Rational(k.prime), static_cast<long>(rat_floor(v)));
        }
    }
    return t;
}

/// Result of evaluating a series under a valuation. When every known
/// coefficient vanishes modulo pi^N the value is only zero at precision N,
/// which is kept distinct from exact Zero.
struct EvalResult {
    ValueGroupElement value = ValueGroupElement::zero();
    std::optional<int> zero_at_precision;

    bool exact() const { return !zero_at_precision.has_value(); }
};

/**
 * Element of a Tate-type algebra over a BaseField model: an exact head of
 * coefficients indexed by exponent tuples, an optional catalog tail for
 * the remaining one-variable coefficients, and a working precision.
 * Values are immutable; all operations return fresh elements.
 */
class SeriesElement {
public:
    SeriesElement(BaseField field, std::vector<std::string> vars)
        : field_(std::move(field)), vars_(std::move(vars)) {
        if (vars_.empty() || vars_.size() > 3)
            throw PreconditionError("SeriesElement: between one and three variables supported");
    }

    static SeriesElement constant(const BaseField& k, std::vector<std::string> vars,
                                  FieldElement c) {
        SeriesElement s(k, std::move(vars));
        if (!c.is_zero()) s.head_[{0, 0}] = std::move(c);
        return s;
    }

    static SeriesElement variable(const BaseField& k, std::vector<std::string> vars,
                                  const std::string& name) {
        SeriesElement s(k, std::move(vars));
        ExpKey key{0, 0};
        key[s.var_index(name)] = 1;
        s.head_[key] = FieldElement(1);
        return s;
    }

    static SeriesElement monomial(const BaseField& k, std::vector<std::string> vars, ExpKey key,
                                  FieldElement c) {
        SeriesElement s(k, std::move(vars));
        for (std::size_t v = s.vars_.size(); v < key.size(); ++v)
            if (key[v] != 0)
                throw PreconditionError("SeriesElement: exponent on a missing variable");
        if (!c.is_zero()) s.head_[key] = std::move(c);
        return s;
    }

    static SeriesElement from_tail(const BaseField& k, const std::string& var, TailSpec tail,
                                   std::map<int, FieldElement> head = {}) {
        SeriesElement s(k, {var});
        for (auto& [i, c] : head) {
            if (i >= tail.start)
                throw PreconditionError("SeriesElement: head overlaps the tail range");
            if (!c.is_zero()) s.head_[{i, 0}] = c;
        }
        s.tail_ = tail_canonical(k, std::move(tail));
        return s;
    }

    const BaseField& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<ExpKey, FieldElement>& head() const { return head_; }
    const std::optional<TailSpec>& tail() const { return tail_; }
    const Precision& precision() const { return prec_; }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        throw PreconditionError("SeriesElement: unknown variable '" + name + "'");
    }

    bool is_zero() const { return head_.empty() && !tail_; }

    bool is_constant() const {
        return !tail_ && (head_.empty() || (head_.size() == 1 && head_.begin()->first == ExpKey{0, 0, 0}));
    }

    FieldElement constant_value() const {
        if (!is_constant()) throw PreconditionError("SeriesElement: not a constant");
        return head_.empty() ? FieldElement(0) : head_.begin()->second;
    }

    bool is_monomial() const { return !tail_ && head_.size() == 1; }

    bool has_laurent_support() const {
        for (const auto& [key, c] : head_)
            if (key[0] < 0 || key[1] < 0 || key[2] < 0) return true;
        return false;
    }

    /// Largest |exponent| appearing in the head (0 for empty head).
    int head_degree() const {
        int d = 0;
        for (const auto& [key, c] : head_)
            d = std::max({d, std::abs(key[0]), std::abs(key[1]), std::abs(key[2])});
        return d;
    }

    /// Coefficient at a one-variable exponent; nullopt when the exponent
    /// lies beyond a finite degree cutoff (unknown).
    std::optional<FieldElement> known_coeff(int i) const {
        require_single_var();
        auto it = head_.find({i, 0});
        if (it != head_.end()) return it->second;
        if (tail_ && i >= tail_->start) return tail_->coeff_at(i, field_);
        if (prec_.D && std::abs(i) > *prec_.D) return std::nullopt;
        return FieldElement(0);
    }

    SeriesElement with_precision(Precision p) const {
        SeriesElement s = *this;
        s.prec_ = s.prec_.meet(p);
        if (s.prec_.D) {
            if (s.tail_) {
                for (int i = s.tail_->start; i <= *s.prec_.D; ++i) {
                    FieldElement c = s.tail_->coeff_at(i, s.field_);
                    if (!c.is_zero()) s.head_[{i, 0}] = c;
                }
                s.tail_.reset();
            }
            std::erase_if(s.head_, [&](const auto& kv) {
                return std::abs(kv.first[0]) > *s.prec_.D ||
                       std::abs(kv.first[1]) > *s.prec_.D || std::abs(kv.first[2]) > *s.prec_.D;
            });
        }
        return s;
    }

    bool operator==(const SeriesElement& o) const {
        if (!(field_ == o.field_) || vars_ != o.vars_) return false;
        if (tail_.has_value() != o.tail_.has_value()) return false;
        if (tail_ && !(tail_->same_law(*o.tail_) && tail_->c == o.tail_->c &&
                       tail_->start == o.tail_->start))
            return false;
        if (head_.size() != o.head_.size()) return false;
        auto it2 = o.head_.begin();
        for (auto it1 = head_.begin(); it1 != head_.end(); ++it1, ++it2) {
            if (it1->first != it2->first) return false;
            if (!fe_equal(field_, it1->second, it2->second)) return false;
        }
        return true;
    }

private:
    void require_single_var() const {
        if (vars_.size() != 1)
            throw PreconditionError("SeriesElement: operation requires a single variable");
    }

    friend SeriesElement se_add(const SeriesElement&, const SeriesElement&);
    friend SeriesElement se_mul(const SeriesElement&, const SeriesElement&);
    friend SeriesElement se_neg(const SeriesElement&);
    friend SeriesElement se_scalar_mul(const FieldElement&, const SeriesElement&);
    friend SeriesElement align_vars(const SeriesElement&, const std::vector<std::string>&);

    BaseField field_;
    std::vector<std::string> vars_;
    std::map<ExpKey, FieldElement> head_;
    std::optional<TailSpec> tail_;
    Precision prec_;
};

/// Rebind a series to another variable context by matching variable
/// names; every variable of f must appear in the target list. Tails are
/// tied to their own single-variable context and do not rebind.
inline SeriesElement align_vars(const SeriesElement& f, const std::vector<std::string>& vars) {
    if (f.vars() == vars) return f;
    if (f.is_constant()) {
        SeriesElement s = SeriesElement::constant(f.field(), vars, f.constant_value());
        s.prec_ = f.prec_;
        return s;
    }
    if (f.tail())
        throw PreconditionError("series variable mismatch: a tailed series does not rebind");
    std::vector<int> slot(f.vars().size(), -1);
    for (std::size_t v = 0; v < f.vars().size(); ++v) {
        for (std::size_t w = 0; w < vars.size(); ++w)
            if (vars[w] == f.vars()[v]) slot[v] = static_cast<int>(w);
        if (slot[v] < 0)
            throw PreconditionError("series variable mismatch: '" + f.vars()[v] +
                                    "' is missing from the requested context");
    }
    SeriesElement s(f.field(), vars);
    for (const auto& [key, c] : f.head()) {
        ExpKey nk{0, 0, 0};
        for (std::size_t v = 0; v < f.vars().size(); ++v)
            nk[static_cast<std::size_t>(slot[v])] = key[v];
        s.head_[nk] = c;
    }
    s.prec_ = f.prec_;
    return s;
}

namespace detail {

inline std::vector<std::string> merged_vars(const SeriesElement& f, const SeriesElement& g) {
    if (f.vars() == g.vars()) return f.vars();
    if (f.is_constant() && !g.is_constant()) return g.vars();
    if (g.is_constant()) return f.vars();
    throw PreconditionError("series variable mismatch: operands live in different contexts "
                            "(rebind with align_vars first)");
}

inline void set_coeff(std::map<ExpKey, FieldElement>& head, const ExpKey& key, FieldElement c) {
    if (c.is_zero()) head.erase(key);
    else head[key] = std::move(c);
}

inline void add_coeff(const BaseField& k, std::map<ExpKey, FieldElement>& head, const ExpKey& key,
                      const FieldElement& c) {
    auto it = head.find(key);
    if (it == head.end()) {
        if (!c.is_zero()) head[key] = c;
        return;
    }
    FieldElement sum = fe_add(k, it->second, c);
    if (sum.is_zero()) head.erase(it);
    else it->second = sum;
}

} // namespace detail

inline SeriesElement se_neg(const SeriesElement& f) {
    SeriesElement s = f;
    for (auto& [key, c] : s.head_) c = fe_neg(c);
    if (s.tail_) s.tail_->c = -s.tail_->c;
    return s;
}

inline SeriesElement se_scalar_mul(const FieldElement& c, const SeriesElement& f) {
    if (c.is_zero()) return SeriesElement::constant(f.field(), f.vars(), FieldElement(0));
    SeriesElement out(f.field(), f.vars());
    out.prec_ = f.prec_;
    for (const auto& [key, coeff] : f.head_)
        detail::set_coeff(out.head_, key, fe_mul(f.field(), c, coeff));
    if (f.tail_) {
        if (!c.is_rational())
            throw PreconditionError("series: scaling a tail by a formal pi power is outside the catalog");
        TailSpec t = *f.tail_;
        t.c *= c.rational_value();
        out.tail_ = tail_canonical(f.field(), t);
    }
    return out;
}

inline SeriesElement se_add(const SeriesElement& f0, const SeriesElement& g0) {
    if (!(f0.field() == g0.field()))
        throw PreconditionError("se_add: incompatible base fields");
    auto vars = detail::merged_vars(f0, g0);
    SeriesElement f = align_vars(f0, vars), g = align_vars(g0, vars);
    Precision prec = f.prec_.meet(g.prec_);

    SeriesElement out(f.field(), vars);
    out.prec_ = prec;

    if (f.tail_ || g.tail_) {
        const bool both = f.tail_ && g.tail_;
        if (both && f.tail_->same_law(*g.tail_)) {
            TailSpec t = *f.tail_;
            t.start = std::max(f.tail_->start, g.tail_->start);
            t.c = f.tail_->c + g.tail_->c;
            // materialize the disagreeing prefix of either tail
            auto materialize = [&](const SeriesElement& s) {
                for (int i = s.tail_->start; i < t.start; ++i)
                    detail::add_coeff(f.field(), out.head_, {i, 0}, s.tail_->coeff_at(i, f.field()));
            };
            materialize(f);
            materialize(g);
            for (const auto& [key, c] : f.head_) detail::add_coeff(f.field(), out.head_, key, c);
            for (const auto& [key, c] : g.head_) detail::add_coeff(f.field(), out.head_, key, c);
            if (t.c != 0) out.tail_ = tail_canonical(f.field(), t);
            return out;
        }
        if (both) {
            // distinct laws: truncate to an exactly computed head
            int d = prec.D.value_or(kFallbackDegree);
            return se_add(f.with_precision(Precision{prec.N, d}),
                          g.with_precision(Precision{prec.N, d}));
        }
        const SeriesElement& tailed = f.tail_ ? f : g;
        const SeriesElement& plain = f.tail_ ? g : f;
        if (plain.prec_.D) {
            // the plain operand is truncated: truncate the tailed one to match
            return se_add(tailed.with_precision(plain.prec_), plain);
        }
        TailSpec t = *tailed.tail_;
        int new_start = std::max(t.start, plain.head_degree() + 1);
        out.tail_ = t;
        out.tail_->start = new_start;
        for (int i = t.start; i < new_start; ++i)
            detail::add_coeff(f.field(), out.head_, {i, 0}, t.coeff_at(i, f.field()));
        for (const auto& [key, c] : tailed.head_) detail::add_coeff(f.field(), out.head_, key, c);
        for (const auto& [key, c] : plain.head_) detail::add_coeff(f.field(), out.head_, key, c);
        return out;
    }

    for (const auto& [key, c] : f.head_) detail::add_coeff(f.field(), out.head_, key, c);
    for (const auto& [key, c] : g.head_) detail::add_coeff(f.field(), out.head_, key, c);
    if (prec.D)
        std::erase_if(out.head_, [&](const auto& kv) {
            return std::abs(kv.first[0]) > *prec.D || std::abs(kv.first[1]) > *prec.D ||
                   std::abs(kv.first[2]) > *prec.D;
        });
    return out;
}

inline SeriesElement se_sub(const SeriesElement& f, const SeriesElement& g) {
    return se_add(f, se_neg(g));
}

inline SeriesElement se_mul(const SeriesElement& f0, const SeriesElement& g0) {
    if (!(f0.field() == g0.field()))
        throw PreconditionError("se_mul: incompatible base fields");
    auto vars = detail::merged_vars(f0, g0);
    SeriesElement f = align_vars(f0, vars), g = align_vars(g0, vars);
    Precision prec = f.prec_.meet(g.prec_);

    if (f.tail_ || g.tail_) {
        const bool both = f.tail_ && g.tail_;
        const SeriesElement& tailed = f.tail_ ? f : g;
        const SeriesElement& other = f.tail_ ? g : f;
        if (!both && other.is_monomial() && !other.prec_.D) {
            const auto& [key, c] = *other.head_.begin();
            int j = key[0];
            const TailSpec& t = *tailed.tail_;
            bool law_ok = (t.kind == TailSpec::Kind::geometric || j == 0) && t.start + j >= 0;
            if (law_ok && c.is_rational()) {
                SeriesElement out(f.field(), vars);
                out.prec_ = prec;
                TailSpec nt = t;
                nt.start = t.start + j;
                nt.c = t.c * c.rational_value();
                if (t.kind == TailSpec::Kind::geometric) nt.b = t.b - t.a * j;
                out.tail_ = tail_canonical(f.field(), nt);
                for (const auto& [hk, hc] : tailed.head_)
                    detail::set_coeff(out.head_, {hk[0] + j, 0}, fe_mul(f.field(), hc, c));
                return out;
            }
        }
        // outside the catalog: compute an exact head up to a finite window
        int d = prec.D.value_or(kFallbackDegree);
        return se_mul(f.with_precision(Precision{prec.N, d}),
                      g.with_precision(Precision{prec.N, d}));
    }

    SeriesElement out(f.field(), vars);
    out.prec_ = prec;
    for (const auto& [ka, ca] : f.head_) {
        for (const auto& [kb, cb] : g.head_) {
            ExpKey key{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
            if (prec.D && (std::abs(key[0]) > *prec.D || std::abs(key[1]) > *prec.D ||
                           std::abs(key[2]) > *prec.D))
                continue;
            detail::add_coeff(f.field(), out.head_, key, fe_mul(f.field(), ca, cb));
        }
    }
    return out;
}

/// Substitute a variable by the monomial c * other^e ("other" may be an
/// existing variable, a fresh name, or var itself for rescaling). Heads only.
inline SeriesElement se_substitute_monomial(const SeriesElement& f, const std::string& var,
                                            const FieldElement& c, const std::string& other,
                                            int e) {
    if (f.tail()) throw PreconditionError("se_substitute_monomial: tails not supported");
    std::size_t vi = static_cast<std::size_t>(f.var_index(var));
    std::vector<std::string> out_vars;
    for (const auto& v : f.vars()) {
        std::string name = v == var ? other : v;
        if (std::find(out_vars.begin(), out_vars.end(), name) == out_vars.end())
            out_vars.push_back(name);
    }
    SeriesElement out = SeriesElement::constant(f.field(), out_vars, FieldElement(0));
    for (const auto& [key, coeff] : f.head()) {
        int kv = key[vi];
        FieldElement nc = coeff;
        for (int t = 0; t < kv; ++t) nc = fe_mul(f.field(), nc, c);
        if (kv < 0) {
            if (!c.is_rational() || c.rational_value() == 0)
                throw PreconditionError("se_substitute_monomial: negative power of a non-unit");
            FieldElement inv(Rational(1) / c.rational_value());
            for (int t = 0; t < -kv; ++t) nc = fe_mul(f.field(), nc, inv);
        }
        std::map<std::string, int> exps;
        for (std::size_t v = 0; v < f.vars().size(); ++v) {
            if (v == vi) exps[other] += key[v] * e;
            else exps[f.vars()[v]] += key[v];
        }
        ExpKey nk{0, 0};
        for (std::size_t v = 0; v < out_vars.size(); ++v) {
            auto it = exps.find(out_vars[v]);
            nk[v] = it == exps.end() ? 0 : it->second;
        }
        out = se_add(out, SeriesElement::monomial(f.field(), out_vars, nk, nc));
    }
    return out.with_precision(f.precision());
}

/// Exact substitution of all variables by scalars; heads only.
inline FieldElement se_substitute(const SeriesElement& f,
                                  const std::vector<FieldElement>& values) {
    if (f.tail()) throw PreconditionError("se_substitute: tails not supported");
    if (values.size() != f.vars().size())
        throw PreconditionError("se_substitute: wrong number of values");
    FieldElement acc(0);
    for (const auto& [key, c] : f.head()) {
        FieldElement term = c;
        for (std::size_t v = 0; v < values.size(); ++v) {
            int e = key[v];
            if (e == 0) continue;
            if (e < 0) {
                if (!values[v].is_rational() || values[v].rational_value() == 0)
                    throw PreconditionError("se_substitute: negative power of zero");
                FieldElement inv(Rational(1) / values[v].rational_value());
                for (int t = 0; t < -e; ++t) term = fe_mul(f.field(), term, inv);
            } else {
                for (int t = 0; t < e; ++t) term = fe_mul(f.field(), term, values[v]);
            }
        }
        acc = fe_add(f.field(), acc, term);
    }
    return acc;
}

/// Re-expand a finite-support one-variable series in powers of (T - alpha)
/// by exact binomial expansion; position j receives sum_i a_i C(i,j) alpha^(i-j).
inline std::map<int, Rational> taylor_shift(const SeriesElement& f, const Rational& alpha) {
    if (f.tail()) throw PreconditionError("taylor_shift: tails not supported");
    if (f.vars().size() != 1) throw PreconditionError("taylor_shift: single variable required");
    if (f.has_laurent_support() && alpha != 0)
        throw PreconditionError("taylor_shift: Laurent support shifts only by 0");
    std::map<int, Rational> in;
    for (const auto& [key, c] : f.head()) {
        if (!c.is_rational())
            throw PreconditionError("taylor_shift: formal pi-power coefficients shift only by 0");
        in[key[0]] = c.rational_value();
    }
    if (alpha == 0) return in;
    std::map<int, Rational> out;
    for (const auto& [i, ci] : in) {
        Rational binom(1); // C(i, j) built incrementally from j = i downward
        Rational power(1);
        // contribution to j from i: C(i,j) alpha^(i-j) c_i
        for (int j = i; j >= 0; --j) {
            Rational contrib = ci * binom * power;
            if (contrib != 0) {
                auto [it, fresh] = out.try_emplace(j, contrib);
                if (!fresh) it->second += contrib;
            }
            if (j > 0) {
                binom = binom * j / (i - j + 1);
                power *= alpha;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

namespace detail {

/// sup over i >= start of r^i; nullopt when unbounded.
inline std::optional<ValueGroupElement> radius_power_sup(const ValueGroupElement& r, long start) {
    ValueGroupElement one = ValueGroupElement::identity(r.rank());
    Ordering c = vg_cmp(r, one);
    if (c == Ordering::EQ) return one;
    if (c == Ordering::LT) return vg_pow(r, start);
    return std::nullopt;
}

} // namespace detail

/**
 * Gauss evaluation max_i |b_i| r^i of the (T - alpha)-expansion b of f.
 * The radius may live in a group of any rank (rank 2 encodes the signed
 * infinitesimal radii); coefficient values embed on the leading axis.
 * Tails are handled by exact domination analysis over the catalog.
 */
inline EvalResult se_gauss_eval(const SeriesElement& f, const FieldElement& alpha,
                                const ValueGroupElement& r) {
    const BaseField& k = f.field();
    if (r.is_zero()) throw PreconditionError("se_gauss_eval: radius must be nonzero (r = Zero)");
    if (f.vars().size() != 1)
        throw PreconditionError("se_gauss_eval: single-variable series required");
    if (!alpha.is_zero() && fe_val(k, alpha) < 0)
        throw PreconditionError("se_gauss_eval: |alpha| <= 1 required");
    const int rank = r.rank();
    ValueGroupElement one = ValueGroupElement::identity(rank);

    const bool shifted = !alpha.is_zero();
    std::map<int, Rational> coeffs; // exact known coefficients after the shift
    if (shifted) {
        if (f.tail())
            throw PreconditionError("se_gauss_eval: tail re-expansion at alpha != 0 is outside the catalog");
        coeffs = taylor_shift(f, alpha.rational_value());
    } else {
        for (const auto& [key, c] : f.head()) {
            if (c.is_pi_power()) coeffs[key[0]] = Rational(0); // handled below
            else coeffs[key[0]] = c.rational_value();
        }
    }

    std::optional<ValueGroupElement> best;          // max over certain terms
    std::optional<ValueGroupElement> uncertain_sup; // bound over uncertain terms
    auto raise = [](std::optional<ValueGroupElement>& slot, const ValueGroupElement& v) {
        if (!slot || vg_lt(*slot, v)) slot = v;
    };

    const std::optional<int>& N = f.precision().N;
    auto consider = [&](long i, const Rational& vp_coeff, bool coeff_known) {
        ValueGroupElement term = vg_mul(
            ValueGroupElement::from_logvec({-vp_coeff}).embedded(rank), vg_pow(r, i));
        if (coeff_known && (!N || vp_coeff < *N)) raise(best, term);
        else raise(uncertain_sup, term);
    };

    for (const auto& [i, c] : coeffs) {
        FieldElement orig = !shifted ? f.head().count({static_cast<int>(i), 0})
                                           ? f.head().at({static_cast<int>(i), 0})
                                           : FieldElement(0)
                                     : FieldElement(c);
        if (!shifted && orig.is_pi_power()) {
            consider(i, orig.pi_exponent(), true);
            continue;
        }
        if (c == 0) continue;
        consider(i, padic_val(c, Integer(k.prime)), true);
    }

    if (shifted && f.precision().D) {
        // the unit-ball part of degree > D feeds every shifted coefficient
        auto sup = detail::radius_power_sup(r, 0);
        if (!sup) throw UndecidableAtPrecision("se_gauss_eval: unbounded radius with a truncated series");
        raise(uncertain_sup, *sup);
    } else if (f.precision().D) {
        auto sup = detail::radius_power_sup(r, *f.precision().D + 1);
        if (!sup) throw UndecidableAtPrecision("se_gauss_eval: unbounded radius with a truncated series");
        raise(uncertain_sup, *sup);
    }

    if (f.tail()) {
        const TailSpec& t = *f.tail();
        long start = t.start;
        Rational vc = padic_val(t.c, Integer(k.prime));
        if (t.kind == TailSpec::Kind::geometric) {
            // term logvec is affine in i: u + i*w
            std::vector<Rational> w(static_cast<std::size_t>(rank), Rational(0));
            w[0] = -t.a;
            for (int q = 0; q < rank; ++q) w[static_cast<std::size_t>(q)] += r.logvec()[static_cast<std::size_t>(q)];
            ValueGroupElement step = ValueGroupElement::from_logvec(w);
            Ordering c = vg_cmp(step, one);
            if (c == Ordering::GT)
                throw PreconditionError("se_gauss_eval: tail is not dominated (terms increase)");
            consider(start, t.vp_at(start, k), true);
            if (c == Ordering::EQ) {
                // constant terms; the single value already covers the max
            }
        } else {
            // first coordinate is concave in i: -a i^2 + r_1 i - vc; integer
            // argmax sits next to the vertex r_1 / (2a)
            Rational vertex = r.logvec()[0] / (2 * t.a);
            std::vector<long> cands{start};
            Integer fl = rat_floor(vertex);
            long flr = static_cast<long>(fl);
            for (long cand : {flr, flr + 1})
                if (cand >= start) cands.push_back(cand);
            for (long i : cands) consider(i, t.vp_at(i, k), true);
        }
    }

    if (!best && !uncertain_sup) return EvalResult{ValueGroupElement::zero(), std::nullopt};
    if (!best) return EvalResult{ValueGroupElement::zero(), N ? N : std::optional<int>(0)};
    if (uncertain_sup && vg_lt(*best, *uncertain_sup))
        throw UndecidableAtPrecision(
            "se_gauss_eval: the maximum hinges on coefficients unknown at precision");
    return EvalResult{*best, std::nullopt};
}

namespace detail {

inline void require_full_stream(const SeriesElement& f, const char* who) {
    if (f.precision().D)
        throw PreconditionError(std::string(who) +
                                ": series truncated in degree has no full coefficient stream");
    if (f.vars().size() != 1)
        throw PreconditionError(std::string(who) + ": single-variable series required");
}

} // namespace detail

/// Membership in k<pi^m T>: |a_i| p^{i m} -> 0, closed form over the catalog.
inline bool se_in_restricted(const SeriesElement& f, const Rational& m) {
    detail::require_full_stream(f, "se_in_restricted");
    if (!f.tail()) return true; // finite support
    const TailSpec& t = *f.tail();
    if (t.kind == TailSpec::Kind::supergeometric) return true;
    return t.a > m;
}

inline bool se_in_restricted(const SeriesElement& f, int m) { return se_in_restricted(f, Rational(m)); }

/// Membership in the entire power series k{{T}} = intersection of all k<pi^m T>.
inline bool se_is_entire(const SeriesElement& f) {
    detail::require_full_stream(f, "se_is_entire");
    if (!f.tail()) return true;
    return f.tail()->kind == TailSpec::Kind::supergeometric;
}

/// Membership in O(D_k(0, |pi^(1/m)|)): |a_i| p^{-i/m} -> 0.
inline bool se_in_open_disc_sections(const SeriesElement& f, int m) {
    if (m < 1) throw PreconditionError("se_in_open_disc_sections: m >= 1 required");
    detail::require_full_stream(f, "se_in_open_disc_sections");
    if (!f.tail()) return true;
    const TailSpec& t = *f.tail();
    if (t.kind == TailSpec::Kind::supergeometric) return true;
    return t.a + Rational(1, m) > 0;
}

/**
 * Per-variable weight sets M_i for the weighted algebras R<T>_M. Only
 * singleton sets {pi^(w_i)} admit the closed-form membership test; the
 * voluminosity check for the Tate scope is that every set contains a
 * nonzero element.
 */
struct WeightDescriptor {
    std::vector<std::vector<FieldElement>> sets;

    static WeightDescriptor singleton_pi_powers(std::vector<Rational> ws) {
        WeightDescriptor d;
        for (auto& w : ws) d.sets.push_back({FieldElement::pi_power(w)});
        return d;
    }

    bool voluminous() const {
        for (const auto& s : sets) {
            bool nonzero = false;
            for (const auto& e : s) nonzero = nonzero || !e.is_zero();
            if (!nonzero) return false;
        }
        return true;
    }

    Rational weight(const BaseField& k, std::size_t i) const {
        if (i >= sets.size()) throw PreconditionError("WeightDescriptor: missing variable weight");
        if (sets[i].size() != 1)
            throw PreconditionError("WeightDescriptor: non-singleton weight sets are outside "
                                    "the supported catalog");
        return fe_val(k, sets[i][0]);
    }
};

/// Membership in R<T>_M (and in R_0<T>_M when integral is set) for
/// singleton weights over the Tate scope.
inline bool se_in_weighted(const SeriesElement& f, const WeightDescriptor& M, bool integral) {
    if (!M.voluminous()) throw PreconditionError("se_in_weighted: weight tuple is not voluminous");
    if (f.precision().D)
        throw PreconditionError("se_in_weighted: series truncated in degree has no full stream");
    if (M.sets.size() != f.vars().size())
        throw PreconditionError("se_in_weighted: one weight set per variable required");
    const BaseField& k = f.field();
    std::vector<Rational> w;
    for (std::size_t i = 0; i < M.sets.size(); ++i) w.push_back(M.weight(k, i));

    // limit condition: v_p(a_i) - <w, i> -> infinity
    bool limit_ok = true;
    if (f.vars().size() == 1 && f.tail()) {
        const TailSpec& t = *f.tail();
        limit_ok = t.kind == TailSpec::Kind::supergeometric || t.a > w[0];
    }
    if (!limit_ok) return false;
    if (!integral) return true;

    for (const auto& [key, c] : f.head()) {
        if (key[0] < 0 || key[1] < 0 || key[2] < 0)
            throw PreconditionError("se_in_weighted: Laurent support is outside the weighted catalog");
        Rational need = w[0] * key[0];
        for (std::size_t v = 1; v < f.vars().size(); ++v) need += w[v] * key[v];
        if (fe_val(k, c) < need) return false;
    }
    if (f.vars().size() == 1 && f.tail()) {
        const TailSpec& t = *f.tail();
        long s = t.start;
        if (t.kind == TailSpec::Kind::geometric) {
            if (t.a > w[0]) {
                if (t.vp_at(s, k) < w[0] * s) return false;
            } else if (t.a == w[0]) {
                if (t.vp_at(s, k) < w[0] * s) return false; // constant gap
            } else {
                return false;
            }
        } else {
            // convex in i: check the integer minimizers of a i^2 - w i + vc
            Rational vertex = w[0] / (2 * t.a);
            long flr = static_cast<long>(rat_floor(vertex));
            for (long i : {s, flr, flr + 1})
                if (i >= s && t.vp_at(i, k) < w[0] * i) return false;
        }
    }
    return true;
}

/// Coefficientwise equality at precision (N, D): differences must vanish
/// modulo pi^N within the degree-D window.
inline bool se_equal_at_precision(const SeriesElement& f, const SeriesElement& g,
                                  const Precision& prec) {
    if (!(f.field() == g.field())) return false;
    SeriesElement d = se_sub(align_vars(f, detail::merged_vars(f, g)),
                             align_vars(g, detail::merged_vars(f, g)));
    const BaseField& k = f.field();
    if (d.tail() && !prec.D) {
        // without a degree window the tail must vanish modulo pi^N as a whole
        const TailSpec& t = *d.tail();
        if (!prec.N) return false;
        Rational min_vp = t.vp_at(t.start, k);
        if (t.kind == TailSpec::Kind::geometric && t.a < 0) return false; // vp unbounded below
        if (min_vp < *prec.N) return false;
        SeriesElement headless = d;
        // fall through on the head with the tail cleared
        d = SeriesElement::constant(d.field(), d.vars(), FieldElement(0));
        for (const auto& [key, c] : headless.head()) d = se_add(d, SeriesElement::monomial(headless.field(), headless.vars(), key, c));
    } else if (prec.D) {
        d = d.with_precision(prec);
    }
    for (const auto& [key, c] : d.head()) {
        if (c.is_zero()) continue;
        if (!prec.N) return false;
        if (fe_val(k, c) < *prec.N) return false;
    }
    return true;
}

inline std::string to_string(const SeriesElement& f) {
    std::string s;
    auto term = [&](const ExpKey& key, const FieldElement& c) {
        std::string mono;
        for (std::size_t v = 0; v < f.vars().size(); ++v) {
            if (key[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += f.vars()[v];
            if (key[v] != 1) mono += "^" + std::to_string(key[v]);
        }
        std::string cs = to_string(c);
        if (mono.empty()) return cs;
        if (cs == "1") return mono;
        if (cs == "-1") return "-" + mono;
        return cs + "*" + mono;
    };
    std::vector<std::pair<ExpKey, FieldElement>> terms(f.head().begin(), f.head().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first[0] + a.first[1] + a.first[2],
            db = b.first[0] + b.first[1] + b.first[2];
        if (da != db) return da > db;
        return a.first > b.first;
    });
    for (const auto& [key, c] : terms) {
        std::string t = term(key, c);
        if (s.empty()) s = t;
        else if (!t.empty() && t[0] == '-') s += " - " + t.substr(1);
        else s += " + " + t;
    }
    if (f.tail()) {
        const TailSpec& t = *f.tail();
        std::string law = t.kind == TailSpec::Kind::geometric
                              ? "p^(" + to_string(t.a) + "*i+" + to_string(t.b) + ")"
                              : "p^(" + to_string(t.a) + "*i^2)";
        std::string tail_s = "sum_{i>=" + std::to_string(t.start) + "} " +
                             (t.c == 1 ? "" : to_string(t.c) + "*") + law + "*" + f.vars()[0] + "^i";
        s = s.empty() ? tail_s : s + " + " + tail_s;
    }
    if (s.empty()) s = "0";
    return s;
}

} // namespace adic
