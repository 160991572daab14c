#include "corr/ratfun.hpp"

#include <algorithm>

namespace corr {

namespace {

// Exact sign of a + b*sqrt(d), d > 0 not a perfect square.
int sign_quad(const Rat& a, const Rat& b, const Rat& d) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 d.
    Rat lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    // |a| dominates iff a^2 > b^2 d.
    return (lhs > rhs) ? sa : sb;
}

}  // namespace

Side classify_roots(const Poly& monic) {
    if (monic.degree() == 1) {
        Rat r = -monic.coeff(0);
        Rat m = r * r;
        if (m == 1) return Side::boundary;
        return m < 1 ? Side::inside : Side::outside;
    }
    require(monic.degree() == 2, "classify_roots: factor degree must be 1 or 2");
    Rat beta = monic.coeff(1), gamma = monic.coeff(0);
    Rat disc = beta * beta - 4 * gamma;
    if (sgn(disc) < 0) {
        // Conjugate pair, |root|^2 = gamma.
        if (gamma == 1) return Side::boundary;
        return gamma < 1 ? Side::inside : Side::outside;
    }
    require(!rat_is_square(disc, nullptr), "classify_roots: reducible quadratic");
    // Two real roots (-beta +- sqrt(disc))/2; decide |r| vs 1 for each via
    // sign of r^2 - 1 = ((beta^2 + disc - 4) -+ 2 beta sqrt(disc))/4.
    Rat A = beta * beta + disc - 4;
    Side s[2];
    int idx = 0;
    for (int eps : {1, -1}) {
        int sg = sign_quad(A, Rat(-eps) * 2 * beta, disc);
        s[idx++] = (sg == 0) ? Side::boundary : (sg < 0 ? Side::inside : Side::outside);
    }
    if (s[0] == s[1]) return s[0];
    return Side::mixed;
}

int FactorTable::add(const Poly& monic) {
    require(monic.degree() >= 1 && monic.degree() <= 2, "FactorTable::add: degree must be 1 or 2");
    require(is_one(monic.lead()), "FactorTable::add: factor must be monic");
    require(!corr::is_zero(monic.coeff(0)), "FactorTable::add: zero constant term");
    std::lock_guard<std::mutex> lock(mu_);
    for (size_t i = 0; i < infos.size(); ++i)
        if (infos[i].f == monic) return static_cast<int>(i);
    FactorInfo fi;
    fi.f = monic;
    fi.side = classify_roots(monic);
    if (monic.degree() == 1) fi.root = -monic.coeff(0);
    infos.push_back(std::move(fi));
    return static_cast<int>(infos.size() - 1);
}

Laurent factor_laurent(const FactorKey& k, const FactorTable& table, int nvars) {
    Laurent l(nvars);
    if (k.kind == FactorKey::diag) {
        l += Laurent::monomial(nvars, k.a, 1);
        l -= Laurent::monomial(nvars, k.b, 1);
        return l;
    }
    const Poly& f = table.info(k.a).f;
    for (int i = 0; i <= f.degree(); ++i)
        if (!corr::is_zero(f.coeff(i))) l += Laurent::monomial(nvars, k.b, i, f.coeff(i));
    return l;
}

RatFun RatFun::constant(int nv, const Rat& a, const FactorTablePtr& t) {
    RatFun r(nv, t);
    r.num = Laurent::constant(nv, a);
    return r;
}

Rat RatFun::constant_value() const {
    require(den.empty(), "RatFun::constant_value: nontrivial denominator");
    return num.constant_value();
}

void RatFun::reduce() {
    if (num.is_zero()) {
        den.clear();
        return;
    }
    for (auto it = den.begin(); it != den.end();) {
        bool erased = false;
        while (it->second > 0) {
            Laurent q(nvars);
            bool ok;
            if (it->first.kind == FactorKey::diag)
                ok = laurent_div_diag(num, it->first.a, it->first.b, &q);
            else
                ok = laurent_div_poly(num, table->info(it->first.a).f, it->first.b, &q);
            if (!ok) break;
            num = std::move(q);
            if (--it->second == 0) {
                it = den.erase(it);
                erased = true;
                break;
            }
        }
        if (!erased) ++it;
    }
}

RatFun& RatFun::operator+=(const RatFun& o) {
    require(nvars == o.nvars, "RatFun: variable count mismatch");
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    // Common denominator: per-factor max multiplicity.
    std::map<FactorKey, int> cden = den;
    for (const auto& [k, m] : o.den) {
        auto& slot = cden[k];
        slot = std::max(slot, m);
    }
    Laurent lhs = num, rhs = o.num;
    for (const auto& [k, m] : cden) {
        auto itl = den.find(k);
        int ml = (itl == den.end()) ? 0 : itl->second;
        auto itr = o.den.find(k);
        int mr = (itr == o.den.end()) ? 0 : itr->second;
        if (m > ml) {
            Laurent f = factor_laurent(k, *table, nvars);
            for (int i = 0; i < m - ml; ++i) lhs = lhs * f;
        }
        if (m > mr) {
            Laurent f = factor_laurent(k, *table, nvars);
            for (int i = 0; i < m - mr; ++i) rhs = rhs * f;
        }
    }
    num = lhs + rhs;
    den = std::move(cden);
    reduce();
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun operator*(const RatFun& a, const RatFun& b) {
    require(a.nvars == b.nvars, "RatFun: variable count mismatch");
    RatFun r(a.nvars, a.table ? a.table : b.table);
    if (a.is_zero() || b.is_zero()) return r;
    r.num = a.num * b.num;
    r.den = a.den;
    for (const auto& [k, m] : b.den) r.den[k] += m;
    r.reduce();
    return r;
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num = -r.num;
    return r;
}

RatFun RatFun::scaled(const Rat& k) const {
    RatFun r = *this;
    r.num = r.num.scaled(k);
    if (r.num.is_zero()) r.den.clear();
    return r;
}

RatFun RatFun::derivative(int var) const {
    // d(N / prod f_i^{m_i}) = (N' prod f_i - N sum m_i f_i' prod_{j!=i} f_j)
    //                         / prod f_i^{m_i+1}
    RatFun r(nvars, table);
    if (is_zero()) return r;
    bool den_has_var = false;
    for (const auto& [k, m] : den) {
        (void)m;
        if ((k.kind == FactorKey::diag && (k.a == var || k.b == var)) ||
            (k.kind == FactorKey::curve && k.b == var))
            den_has_var = true;
    }
    if (!den_has_var) {
        r.num = num.derivative(var);
        r.den = den;
        if (r.num.is_zero()) r.den.clear();
        r.reduce();
        return r;
    }
    std::vector<std::pair<FactorKey, int>> fs(den.begin(), den.end());
    Laurent prod_all = Laurent::constant(nvars, Rat(1));
    std::vector<Laurent> fl;
    for (const auto& [k, m] : fs) {
        (void)m;
        fl.push_back(factor_laurent(k, *table, nvars));
        prod_all = prod_all * fl.back();
    }
    Laurent top = num.derivative(var) * prod_all;
    for (size_t i = 0; i < fs.size(); ++i) {
        Laurent dfi = fl[i].derivative(var);
        if (dfi.is_zero()) continue;
        Laurent rest = Laurent::constant(nvars, Rat(1));
        for (size_t j = 0; j < fs.size(); ++j)
            if (j != i) rest = rest * fl[j];
        top -= num * dfi.scaled(Rat(fs[i].second)) * rest;
    }
    r.num = std::move(top);
    for (const auto& [k, m] : fs) r.den[k] = m + 1;
    r.reduce();
    return r;
}

bool RatFun::depends_on(int var) const {
    if (num.depends_on(var)) return true;
    for (const auto& [k, m] : den) {
        (void)m;
        if (k.kind == FactorKey::diag && (k.a == var || k.b == var)) return true;
        if (k.kind == FactorKey::curve && k.b == var) return true;
    }
    return false;
}

Laurent RatFun::den_expanded() const {
    Laurent d = Laurent::constant(nvars, Rat(1));
    for (const auto& [k, m] : den) {
        Laurent f = factor_laurent(k, *table, nvars);
        for (int i = 0; i < m; ++i) d = d * f;
    }
    return d;
}

NumFactorization factor_numerator(const Laurent& num, const FactorTablePtr& table) {
    require(!num.is_zero(), "factor_numerator: zero numerator");
    NumFactorization out;
    out.unit = Rat(1);
    out.monomial.assign(static_cast<size_t>(num.nvars), 0);
    Laurent work = num;

    // Pull out the monomial content.
    for (int v = 0; v < num.nvars; ++v) {
        int m = work.min_exp(v);
        if (m != 0) {
            work = work.mul_monomial(v, -m);
            out.monomial[static_cast<size_t>(v)] = m;
        }
    }

    auto try_known = [&]() {
        bool progress = true;
        while (progress && !work.is_constant()) {
            progress = false;
            for (int fid = 0; fid < table->size(); ++fid) {
                for (int v = 0; v < work.nvars; ++v) {
                    if (!work.depends_on(v)) continue;
                    Laurent q(work.nvars);
                    while (laurent_div_poly(work, table->info(fid).f, v, &q)) {
                        work = q;
                        out.factors[{FactorKey::curve, fid, v}]++;
                        progress = true;
                    }
                }
            }
            for (int a = 1; a < work.nvars; ++a)
                for (int b = 0; b < a; ++b) {
                    if (!work.depends_on(a) || !work.depends_on(b)) continue;
                    Laurent q(work.nvars);
                    while (laurent_div_diag(work, a, b, &q)) {
                        work = q;
                        out.factors[{FactorKey::diag, a, b}]++;
                        progress = true;
                    }
                }
        }
    };
    try_known();

    if (work.is_constant()) {
        out.unit = work.constant_value();
        return out;
    }

    // The remainder must be univariate; factor it and register the pieces.
    int the_var = -1;
    for (int v = 0; v < work.nvars; ++v)
        if (work.depends_on(v)) {
            require(the_var == -1, "factor_numerator: multivariate irreducible remainder");
            the_var = v;
        }
    Poly p;
    int lo = work.min_exp(the_var);
    require(lo >= 0, "factor_numerator: internal (monomial content missed)");
    p.c.assign(static_cast<size_t>(work.max_exp(the_var)) + 1, Rat(0));
    for (const auto& [e, a] : work.terms) p.c[static_cast<size_t>(e[static_cast<size_t>(the_var)])] = a;
    p.trim();
    auto fz = poly_factor(p);
    out.unit = fz.lead;
    for (const auto& pf : fz.factors) {
        int fid = table->add(pf.factor);
        out.factors[{FactorKey::curve, fid, the_var}] += pf.multiplicity;
    }
    return out;
}

RatFun RatFun::inverse() const {
    require(!is_zero(), "RatFun::inverse: division by zero");
    auto nf = factor_numerator(num, table);
    RatFun r(nvars, table);
    r.num = Laurent::constant(nvars, 1 / nf.unit);
    for (int v = 0; v < nvars; ++v)
        if (nf.monomial[static_cast<size_t>(v)] != 0)
            r.num = r.num.mul_monomial(v, -nf.monomial[static_cast<size_t>(v)]);
    // Old denominator becomes numerator content.
    for (const auto& [k, m] : den) {
        Laurent f = factor_laurent(k, *table, nvars);
        for (int i = 0; i < m; ++i) r.num = r.num * f;
    }
    r.den = nf.factors;
    r.reduce();
    return r;
}

RatFun RatFun::subst_var(int var, int other) const {
    RatFun r(nvars, table);
    r.num = num.subst_var(var, other);
    for (const auto& [k, m] : den) {
        FactorKey nk = k;
        if (k.kind == FactorKey::diag) {
            int a = k.a == var ? other : k.a;
            int b = k.b == var ? other : k.b;
            require(a != b, "RatFun::subst_var: diagonal factor vanishes");
            nk = {FactorKey::diag, std::max(a, b), std::min(a, b)};
            if (a < b && m % 2 == 1) {
                // (z_a - z_b)^m with swapped order flips sign per odd power.
                r.num = -r.num;
            }
        } else if (k.b == var) {
            nk = {FactorKey::curve, k.a, other};
        }
        r.den[nk] += m;
    }
    r.reduce();
    return r;
}

RatFun RatFun::subst_value(int var, const Rat& value) const {
    RatFun r(nvars, table);
    r.num = num.subst_value(var, value);
    Rat unit(1);
    for (const auto& [k, m] : den) {
        if (k.kind == FactorKey::curve && k.b == var) {
            Rat fv = table->info(k.a).f.eval(value);
            require(sgn(fv) != 0, "RatFun::subst_value: pole hit");
            unit *= rat_pow(fv, m);
            continue;
        }
        if (k.kind == FactorKey::diag && (k.a == var || k.b == var)) {
            // (z_a - z_b)|_{z_a = c} = -(z_b - c); register (zeta - c).
            int partner = (k.a == var) ? k.b : k.a;
            Poly lin;
            lin.c = {-value, Rat(1)};
            if (corr::is_zero(value)) {
                // (z_partner - 0): pure monomial, goes into the numerator.
                r.num = r.num.mul_monomial(partner, -m);
            } else {
                int fid = table->add(lin);
                r.den[{FactorKey::curve, fid, partner}] += m;
            }
            if (k.a == var) {
                // (value - z_b) = -(z_b - value)
                if (m % 2 == 1) r.num = -r.num;
            }
            continue;
        }
        r.den[k] += m;
    }
    r.num = r.num.scaled(1 / unit);
    r.reduce();
    return r;
}

RatFun RatFun::rename(const std::vector<int>& perm, int nv_new) const {
    RatFun r(nv_new, table);
    r.num = num.rename(perm, nv_new);
    for (const auto& [k, m] : den) {
        if (k.kind == FactorKey::curve) {
            int nb = perm.at(static_cast<size_t>(k.b));
            require(nb >= 0, "RatFun::rename: denominator variable dropped");
            r.den[{FactorKey::curve, k.a, nb}] += m;
        } else {
            int na = perm.at(static_cast<size_t>(k.a));
            int nb = perm.at(static_cast<size_t>(k.b));
            require(na >= 0 && nb >= 0 && na != nb, "RatFun::rename: bad diagonal rename");
            if (na < nb) {
                if (m % 2 == 1) r.num = -r.num;
                std::swap(na, nb);
            }
            r.den[{FactorKey::diag, na, nb}] += m;
        }
    }
    r.reduce();
    return r;
}

}  // namespace corr
