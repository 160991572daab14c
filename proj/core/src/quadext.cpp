#include "corr/quadext.hpp"

namespace corr {

namespace {
Rat pick_d(const QuadExt& x, const QuadExt& y) {
    if (sgn(x.b) == 0) return y.d;
    if (sgn(y.b) == 0) return x.d;
    require(x.d == y.d, "QuadExt: mixing different extensions");
    return x.d;
}
}  // namespace

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return {x.a + y.a, x.b + y.b, pick_d(x, y)};
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return {x.a - y.a, x.b - y.b, pick_d(x, y)};
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rat d = pick_d(x, y);
    return {x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a, d};
}

QuadExt QuadExt::inverse() const {
    Rat n = norm();
    require(sgn(n) != 0, "QuadExt::inverse: zero norm");
    return {a / n, -b / n, d};
}

int QuadExt::sign() const {
    if (sgn(b) == 0) return sgn(a);
    require(sgn(d) > 0, "QuadExt::sign: complex extension has no order");
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rat lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

QuadExt quad_eval(const Poly& p, const QuadExt& x) {
    QuadExt v;
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + QuadExt(p.c[i]);
    return v;
}

std::string quad_str(const QuadExt& q) {
    if (q.is_rational()) return rat_str(q.a);
    return rat_str(q.a) + " + " + rat_str(q.b) + "*sqrt(" + rat_str(q.d) + ")";
}

}  // namespace corr
