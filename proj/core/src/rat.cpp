#include "corr/rat.hpp"

namespace corr {

Rat rat_parse(const std::string& s) {
    if (s.empty()) fail("rat_parse: empty string");
    Rat q;
    if (q.set_str(s, 10) != 0) fail("rat_parse: bad rational literal '" + s + "'");
    if (sgn(q.get_den()) == 0) fail("rat_parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        require(sgn(base) != 0, "rat_pow: negative power of zero");
        Rat inv = 1 / base;
        return rat_pow(inv, -e);
    }
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
}

Rat binomial(unsigned long n, unsigned long k) {
    if (k > n) return Rat(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

Rat factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

bool rat_is_square(const Rat& q, Rat* root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        if (root) *root = 0;
        return true;
    }
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(q.get_den_mpz_t()) == 0) return false;
    if (root) {
        Rat r;
        mpz_sqrt(r.get_num_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(r.get_den_mpz_t(), q.get_den_mpz_t());
        r.canonicalize();
        *root = r;
    }
    return true;
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    // FNV-1a style mixing; deterministic across runs and platforms.
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t rat_hash(const Rat& q) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_mpz = [&h](const mpz_class& z) {
        std::string s = z.get_str(16);
        for (char c : s) h = hash_combine(h, static_cast<std::uint64_t>(c));
    };
    mix_mpz(q.get_num());
    h = hash_combine(h, 0x2fULL);
    mix_mpz(q.get_den());
    return h;
}

}  // namespace corr
