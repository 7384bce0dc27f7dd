#include "shifteq/integers.hpp"

#include <algorithm>
#include <stdexcept>

namespace shifteq {

Int exact_div(const Int& a, const Int& b)
{
    if (b == 0) throw std::invalid_argument("exact_div: division by zero");
    if (!divides(b, a)) throw std::invalid_argument("exact_div: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

namespace {

Int pollard_rho(const Int& n)
{
    // Brent's cycle variant; n odd composite, not a prime power edge case.
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int ys = y;
        unsigned long power = 1, lam = 0;
        auto f = [&](const Int& v) { return mod_floor(v * v + Int(c), n); };
        Int q = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            ys = y;
            for (int i = 0; i < 64 && lam < power && d == 1; ++i) {
                y = f(y);
                ++lam;
                q = mod_floor(q * abs(x - y), n);
            }
            d = gcd(q, n);
        }
        if (d != n) return d;
        // backtrack
        d = 1;
        while (d == 1) {
            ys = f(ys);
            d = gcd(abs(x - ys), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(const Int& n, std::map<Int, int>& out)
{
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(exact_div(n, d), out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n)
{
    std::vector<std::pair<Int, int>> out;
    if (n == 0) throw std::invalid_argument("factorize: zero");
    Int m = abs(n);
    for (Int p = 2; p <= 100000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (divides(p, m)) {
            int e = 0;
            while (divides(p, m)) {
                m = exact_div(m, p);
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (m > 1) {
        if (is_probable_prime(m)) {
            out.emplace_back(m, 1);
        } else {
            std::map<Int, int> rest;
            factor_rec(m, rest);
            for (auto& [p, e] : rest) out.emplace_back(p, e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> prime_support(const Int& n)
{
    std::vector<Int> out;
    if (n == 0 || n == 1 || n == -1) return out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

int valuation(const Int& n, const Int& p)
{
    if (n == 0) throw std::invalid_argument("valuation: zero");
    Int m = abs(n);
    int v = 0;
    while (divides(p, m)) {
        m = exact_div(m, p);
        ++v;
    }
    return v;
}

Int coprime_part(const Int& n, const Int& s)
{
    Int m = abs(n);
    if (m == 0) return 0;
    Int d = gcd(m, abs(s));
    while (d > 1) {
        while (divides(d, m)) m = exact_div(m, d);
        d = gcd(m, d);
    }
    // the loop above can leave residual shared primes when s has higher
    // multiplicity; iterate until coprime
    Int g = gcd(m, abs(s));
    while (g > 1) {
        m = exact_div(m, g);
        g = gcd(m, abs(s));
    }
    return m;
}

Int smooth_part(const Int& a, const Int& s)
{
    Int m = abs(a);
    if (m == 0) return 0;
    return exact_div(m, coprime_part(m, s));
}

std::optional<Int> inv_mod(const Int& a, const Int& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

namespace {

// Square roots of a unit a mod odd prime p (Tonelli–Shanks). Empty if a is a
// nonresidue.
std::vector<Int> sqrt_mod_odd_prime(const Int& a, const Int& p)
{
    Int am = mod_floor(a, p);
    if (am == 0) return {0};
    if (kronecker(am, p) != 1) return {};
    Int x;
    if (mod_floor(p, 4) == 3) {
        Int e = (p + 1) / 4;
        mpz_powm(x.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    } else {
        // Tonelli–Shanks
        Int q = p - 1;
        unsigned long s = 0;
        while (divides(2, q)) {
            q = exact_div(q, 2);
            ++s;
        }
        Int z = 2;
        while (kronecker(z, p) != -1) ++z;
        Int m = s, c, t, r;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(t.get_mpz_t(), am.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        Int e = (q + 1) / 2;
        mpz_powm(r.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        while (t != 1) {
            Int tt = t;
            unsigned long i = 0;
            while (tt != 1) {
                tt = mod_floor(tt * tt, p);
                ++i;
            }
            Int b = c;
            for (Int j = 0; j < m - Int(i) - 1; ++j) b = mod_floor(b * b, p);
            m = Int(i);
            c = mod_floor(b * b, p);
            t = mod_floor(t * c, p);
            r = mod_floor(r * b, p);
        }
        x = r;
    }
    Int y = mod_floor(p - x, p);
    if (x == y) return {x};
    if (x > y) std::swap(x, y);
    return {x, y};
}

// All roots of x^2 ≡ a (mod p^e), p prime. Root counts can blow up only
// through high-valuation a; guarded by caller-level desk scale.
std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, int e)
{
    Int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    Int am = mod_floor(a, pe);
    if (am == 0) {
        // x ≡ 0 mod p^ceil(e/2)
        int h = (e + 1) / 2;
        Int ph = 1;
        for (int i = 0; i < h; ++i) ph *= p;
        std::vector<Int> out;
        for (Int x = 0; x < pe; x += ph) out.push_back(x);
        return out;
    }
    int v = 0;
    Int u = am;
    while (divides(p, u)) {
        u = exact_div(u, p);
        ++v;
    }
    if (v % 2 == 1) return {};
    if (v > 0) {
        // x = p^(v/2) * y, y^2 ≡ u (mod p^(e-v)); lift all copies mod p^e
        auto ys = sqrt_mod_prime_power(u, p, e - v);
        Int pv2 = 1;
        for (int i = 0; i < v / 2; ++i) pv2 *= p;
        Int step = 1;
        for (int i = 0; i < e - v; ++i) step *= p;  // roots y live mod p^(e-v)
        std::vector<Int> out;
        Int pevh = 1;  // p^(e - v/2), the period of x
        for (int i = 0; i < e - v / 2; ++i) pevh *= p;
        for (const Int& y : ys) {
            for (Int t = 0; pv2 * (y + t * step) < pe; ++t) {
                Int x = mod_floor(pv2 * (y + t * step), pe);
                out.push_back(x);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.size() > 20000) throw std::runtime_error("sqrt_mod: solution set too large");
        return out;
    }
    // u unit
    if (p == 2) {
        if (e == 1) return {1};
        if (e == 2) return (mod_floor(am, 4) == 1) ? std::vector<Int>{1, 3} : std::vector<Int>{};
        if (mod_floor(am, 8) != 1) return {};
        // lift from x ≡ 1 (mod 8): four roots mod 2^e
        Int x = 1;
        for (int k = 3; k < e; ++k) {
            Int mod_next = pow_int(2, k + 1);
            if (mod_floor(x * x - am, mod_next) != 0) x += pow_int(2, k - 1);
        }
        Int m = pe;
        std::vector<Int> out{mod_floor(x, m), mod_floor(m - x, m), mod_floor(x + m / 2, m),
                             mod_floor(m - x + m / 2, m)};
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    auto base = sqrt_mod_odd_prime(am, p);
    if (base.empty()) return {};
    // Hensel: unique lift of each simple root
    std::vector<Int> out;
    for (Int x : base) {
        Int mod_cur = p;
        for (int k = 1; k < e; ++k) {
            Int mod_next = mod_cur * p;
            Int f = mod_floor(x * x - am, mod_next);
            Int der = mod_floor(2 * x, p);
            Int t = exact_div(f, mod_cur);
            Int corr = mod_floor(-t * inv_mod(der, p).value(), p);
            x = mod_floor(x + corr * mod_cur, mod_next);
            mod_cur = mod_next;
        }
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Int> sqrt_mod(const Int& a, const Int& m)
{
    if (m <= 0) throw std::invalid_argument("sqrt_mod: modulus must be positive");
    if (m == 1) return {0};
    auto fac = factorize(m);
    std::vector<Int> roots{0}, mods{1};
    Int cur = 1;
    for (auto& [p, e] : fac) {
        Int pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        auto part = sqrt_mod_prime_power(a, p, e);
        if (part.empty()) return {};
        std::vector<Int> next;
        next.reserve(roots.size() * part.size());
        if (roots.size() * part.size() > 40000)
            throw std::runtime_error("sqrt_mod: solution set too large");
        // CRT combine cur & pe
        Int inv = inv_mod(cur, pe).value();
        for (const Int& r : roots)
            for (const Int& s : part) {
                Int t = mod_floor((s - r) * inv, pe);
                next.push_back(r + cur * t);
            }
        cur *= pe;
        roots = std::move(next);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::map<Int, Int> monoid_closure_mod(const std::vector<Int>& gens, const Int& m)
{
    if (m <= 0) throw std::invalid_argument("monoid_closure_mod: modulus must be positive");
    std::map<Int, Int> closure;
    closure[mod_floor(1, m)] = 1;
    std::vector<Int> frontier{mod_floor(1, m)};
    while (!frontier.empty()) {
        std::vector<Int> next;
        for (const Int& r : frontier) {
            Int lift = closure[r];
            for (const Int& g : gens) {
                Int nr = mod_floor(r * g, m);
                if (!closure.count(nr)) {
                    closure[nr] = lift * g;
                    next.push_back(nr);
                }
            }
        }
        frontier = std::move(next);
    }
    return closure;
}

}  // namespace shifteq
