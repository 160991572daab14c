#pragma once

#include "corr/poly.hpp"

namespace corr {

// Element a + b*sqrt(d) of a quadratic extension of Q; d is a fixed
// non-square rational (negative d gives a complex quadratic field, which
// arithmetic handles identically). Pure rationals carry d = 0.
struct QuadExt {
    Rat a, b, d;

    QuadExt() : a(0), b(0), d(0) {}
    explicit QuadExt(Rat x) : a(std::move(x)), b(0), d(0) {}
    QuadExt(Rat x, Rat y, Rat dd) : a(std::move(x)), b(std::move(y)), d(std::move(dd)) {
        if (sgn(b) == 0) d = 0;
    }

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_rational() const { return sgn(b) == 0; }
    QuadExt conj() const { return {a, -b, d}; }
    Rat norm() const { return a * a - d * b * b; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt operator-() const { return {-a, -b, d}; }
    QuadExt inverse() const;
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b && (sgn(x.b) == 0 || x.d == y.d);
    }

    // Exact sign for real fields (d > 0 or rational).
    int sign() const;
};

QuadExt quad_eval(const Poly& p, const QuadExt& x);

std::string quad_str(const QuadExt& q);

}  // namespace corr
