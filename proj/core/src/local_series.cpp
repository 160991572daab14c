#include "corr/local_series.hpp"

namespace corr {

namespace {

// Powers of the variable-value series v(zeta): z = p + zeta (finite) or
// z = 1/zeta (infinity). Cached positive and negative powers.
template <class K>
struct VarPowers {
    LSeries<K> v, vinv;
    K one;
    std::map<int, LSeries<K>> cache;

    const LSeries<K>& pow(int k) {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        LSeries<K> r = cache.at(0);
        if (k > 0) {
            r = cache.count(k - 1) ? cache.at(k - 1) * v : pow(k - 1) * v;
        } else {
            r = cache.count(k + 1) ? cache.at(k + 1) * vinv : pow(k + 1) * vinv;
        }
        return cache.emplace(k, std::move(r)).first->second;
    }
};

template <class K>
LSeries<K> expand_impl(const RatFun& f, int var, const LocalPoint& pt, int order,
                       const std::function<K(const Rat&)>& from_rat,
                       const std::function<K(const Laurent&)>& from_spectator, const K& one,
                       const K& zero) {
    // Build z(zeta).
    int slack = 0;
    // Denominator factors vanishing at the point raise the needed working
    // order; count them first.
    for (const auto& [k, m] : f.den) {
        (void)k;
        slack += 2 * m;
    }
    slack += 4;
    int word = order + slack + std::max(0, -f.num.min_exp(var));

    VarPowers<K> vp;
    vp.one = one;
    if (pt.at_infinity) {
        LSeries<K> v(-1, word, zero);
        v.set_coeff(-1, one);
        vp.v = v;
        vp.vinv = v.inverse().truncated(word);
    } else if (pt.at_var >= 0) {
        LSeries<K> v(0, word, zero);
        Laurent mono(f.num.nvars);
        ExpVec e(static_cast<size_t>(f.num.nvars), 0);
        e[static_cast<size_t>(pt.at_var)] = 1;
        mono.add_term(e, Rat(1));
        v.set_coeff(0, from_spectator(mono));
        v.set_coeff(1, one);
        vp.v = v;
        vp.vinv = vp.v.inverse().truncated(word);
    } else {
        require(pt.p.is_rational(), "local series expansion: point must be rational here");
        LSeries<K> v(0, word, zero);
        v.set_coeff(0, from_rat(pt.p.a));
        v.set_coeff(1, one);
        vp.v = v;
        vp.vinv = vp.v.inverse().truncated(word);
    }
    LSeries<K> unit(0, word, zero);
    unit.set_coeff(0, one);
    vp.cache.emplace(0, unit);

    // Numerator.
    LSeries<K> acc = LSeries<K>::zero_to(word, zero);
    for (const auto& [e, cval] : f.num.terms) {
        int kv = e.at(static_cast<size_t>(var));
        ExpVec spec = e;
        spec[static_cast<size_t>(var)] = 0;
        Laurent mono(f.num.nvars);
        mono.add_term(spec, cval);
        K coeff = from_spectator(mono);
        acc = acc + vp.pow(kv).scaled_coeff(coeff);
    }
    // Denominator factors.
    for (const auto& [key, m] : f.den) {
        LSeries<K> fv = LSeries<K>::zero_to(word, zero);
        if (key.kind == FactorKey::curve && key.b == var) {
            const Poly& fp = f.table->info(key.a).f;
            for (int i = 0; i <= fp.degree(); ++i)
                if (!is_zero(fp.coeff(i))) fv = fv + vp.pow(i).scaled(fp.coeff(i));
        } else if (key.kind == FactorKey::diag && (key.a == var || key.b == var)) {
            int other = (key.a == var) ? key.b : key.a;
            Laurent lo(f.num.nvars);
            lo.add_term([&] {
                ExpVec e(static_cast<size_t>(f.num.nvars), 0);
                e[static_cast<size_t>(other)] = 1;
                return e;
            }(), Rat(1));
            K oth = from_spectator(lo);
            if (key.a == var) {
                fv = vp.pow(1);
                LSeries<K> c0(0, word, zero);
                c0.set_coeff(0, oth);
                fv = fv - c0;
            } else {
                LSeries<K> c0(0, word, zero);
                c0.set_coeff(0, oth);
                fv = c0 - vp.pow(1);
            }
        } else {
            // Spectator-only factor: a single coefficient.
            Laurent fl = factor_laurent(key, *f.table, f.num.nvars);
            K val = from_spectator(fl);  // polynomial in spectators
            // Need 1/val^m as coefficient; delegated to K's inverse via series.
            LSeries<K> c0(0, word, zero);
            c0.set_coeff(0, val);
            fv = c0;
        }
        LSeries<K> fpow = fv;
        for (int i = 1; i < m; ++i) fpow = fpow * fv;
        acc = acc * fpow.inverse();
    }
    return acc.truncated(order);
}

}  // namespace

LSeries<RatFun> local_expand(const RatFun& f, int var, const LocalPoint& pt, int order) {
    require(pt.at_infinity || pt.p.is_rational(),
            "local_expand: surd points need the QuadExt overload");
    RatFun zero(f.num.nvars, f.table);
    RatFun one = RatFun::constant(f.num.nvars, Rat(1), f.table);
    auto from_rat = [&](const Rat& r) { return RatFun::constant(f.num.nvars, r, f.table); };
    auto from_spec = [&](const Laurent& l) {
        require(!l.depends_on(var), "local_expand: spectator content depends on active variable");
        return RatFun(l, f.table);
    };
    return expand_impl<RatFun>(f, var, pt, order, from_rat, from_spec, one, zero);
}

LSeries<QuadExt> local_expand_quad(const RatFun& f, int var, const LocalPoint& pt, int order) {
    for (int v = 0; v < f.num.nvars; ++v)
        require(v == var || !f.depends_on(v), "local_expand_quad: input must be univariate");
    QuadExt zero, one(Rat(1));
    auto from_rat = [](const Rat& r) { return QuadExt(r); };
    auto from_spec = [&](const Laurent& l) {
        if (l.is_zero()) return QuadExt();
        return QuadExt(l.constant_value());
    };
    auto r = expand_impl<QuadExt>(f, var, pt, order, from_rat, from_spec, one, zero);
    if (!pt.at_infinity && !pt.p.is_rational()) {
        // Redo with the exact surd point in the variable series: cheaper to
        // patch expand_impl via a custom v; assemble manually here.
        int slack = 4;
        for (const auto& [k, m] : f.den) {
            (void)k;
            slack += 2 * m;
        }
        int word = order + slack + std::max(0, -f.num.min_exp(var));
        LSeries<QuadExt> v(0, word, zero);
        v.set_coeff(0, pt.p);
        v.set_coeff(1, one);
        LSeries<QuadExt> acc = LSeries<QuadExt>::zero_to(word, zero);
        std::map<int, LSeries<QuadExt>> cache;
        LSeries<QuadExt> unit(0, word, zero);
        unit.set_coeff(0, one);
        cache.emplace(0, unit);
        LSeries<QuadExt> vinv = v.inverse().truncated(word);
        std::function<const LSeries<QuadExt>&(int)> pw = [&](int k) -> const LSeries<QuadExt>& {
            auto it = cache.find(k);
            if (it != cache.end()) return it->second;
            LSeries<QuadExt> res = (k > 0) ? pw(k - 1) * v : pw(k + 1) * vinv;
            return cache.emplace(k, std::move(res)).first->second;
        };
        for (const auto& [e, cval] : f.num.terms)
            acc = acc + pw(e.at(static_cast<size_t>(var))).scaled(cval);
        for (const auto& [key, m] : f.den) {
            LSeries<QuadExt> fv = LSeries<QuadExt>::zero_to(word, zero);
            require(key.kind == FactorKey::curve && key.b == var,
                    "local_expand_quad: unsupported factor");
            const Poly& fp = f.table->info(key.a).f;
            for (int i = 0; i <= fp.degree(); ++i)
                if (!is_zero(fp.coeff(i))) fv = fv + pw(i).scaled(fp.coeff(i));
            LSeries<QuadExt> fpow = fv;
            for (int i = 1; i < m; ++i) fpow = fpow * fv;
            acc = acc * fpow.inverse();
        }
        return acc.truncated(order);
    }
    return r;
}

RatFun local_residue(const RatFun& f, int var, const LocalPoint& pt, int slack) {
    auto s = local_expand(f, var, pt, slack);
    if (pt.at_infinity) {
        // z = 1/zeta, dz = -dzeta/zeta^2: res_inf f dz = -[zeta^{1}] f(1/zeta) * ... :
        // res_inf = -[zeta^{-1}] (f(1/zeta) * (-1/zeta^2))^{dz part} handled by caller;
        // here return coefficient of zeta^1 of f which multiplies dz = -dzeta/zeta^2:
        // res = - coeff_{zeta^{1}}(f) (from f dz = -f/zeta^2 dzeta).
        return s.coeff(1).scaled(Rat(-1));
    }
    return s.coeff(-1);
}

}  // namespace corr
