#include "shifteq/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shifteq {

BinaryQuadraticForm BinaryQuadraticForm::apply(const IntMatrix& M) const
{
    const Int &p = M.at(0, 0), &q = M.at(0, 1), &r = M.at(1, 0), &s = M.at(1, 1);
    BinaryQuadraticForm g;
    g.a = eval(p, r);
    g.c = eval(q, s);
    g.b = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
    return g;
}

std::string BinaryQuadraticForm::to_string() const
{
    std::ostringstream os;
    os << "(" << a.get_str() << "," << b.get_str() << "," << c.get_str() << ")";
    return os.str();
}

namespace {

const IntMatrix kSwap{{0, -1}, {1, 0}};  // (x,y) -> (-y,x): (a,b,c) -> (c,-b,a)

IntMatrix shear(const Int& k) { return IntMatrix{{1, k}, {0, 1}}; }  // b -> b + 2ak

// positive-definite reduction with transform
ReducedForm reduce_definite(BinaryQuadraticForm f)
{
    IntMatrix M = IntMatrix::identity(2);
    for (int guard = 0; guard < 100000; ++guard) {
        if (abs(f.b) > f.a) {
            // choose k with |b + 2ak| <= a
            Int k = div_floor(f.a - f.b, 2 * f.a);
            IntMatrix T = shear(k);
            f = f.apply(T);
            M = M * T;
            continue;
        }
        if (f.a > f.c) {
            f = f.apply(kSwap);
            M = M * kSwap;
            continue;
        }
        if (f.b < 0 && (f.a == -f.b || f.a == f.c)) {
            // boundary normalization b >= 0
            if (f.a == f.c) {
                f = f.apply(kSwap);
                M = M * kSwap;
            } else {
                IntMatrix T = shear(1);
                f = f.apply(T);
                M = M * T;
            }
            continue;
        }
        return ReducedForm{f, M};
    }
    throw std::logic_error("reduce_definite: no convergence");
}

bool indefinite_reduced(const BinaryQuadraticForm& f, const Int& root)
{
    if (f.b <= 0) return false;
    // |sqrt(D) - 2|a|| < b < sqrt(D), checked with exact integer arithmetic:
    // b <= root (floor) and (root - 2|a| < b strictly in real terms)
    Int t = 2 * abs(f.a);
    // b < sqrt(D): since D is nonsquare, b <= root suffices (b integer)
    if (f.b > root) return false;
    // sqrt(D) - 2|a| < b  <=>  sqrt(D) < b + t  <=>  D < (b+t)^2
    if (f.disc() >= (f.b + t) * (f.b + t)) return false;
    // and also the mirror bound 2|a| - sqrt(D) < b <=> (t - b)^2 < D when t > b
    if (t > f.b && (t - f.b) * (t - f.b) >= f.disc()) return false;
    return true;
}

// single rho step on an indefinite form, with transform
void rho_step(BinaryQuadraticForm& f, IntMatrix& M, const Int& root)
{
    // (a,b,c) -> (c, b', c') with b' ≡ -b (mod 2c), b' in the window
    f = f.apply(kSwap);
    M = M * kSwap;
    const Int a2 = 2 * f.a;
    Int hi = (abs(f.a) > root) ? abs(f.a) : root;
    // pick k so that b + 2ak lies in (hi - 2|a|, hi]
    Int k;
    if (f.a > 0)
        k = div_floor(hi - f.b, a2);
    else
        k = -div_floor(hi - f.b, -a2);
    IntMatrix T = shear(k);
    f = f.apply(T);
    M = M * T;
    if (f.b > hi || f.b <= hi - 2 * abs(f.a)) throw std::logic_error("rho_step: window miss");
}

ReducedForm reduce_indefinite(BinaryQuadraticForm f)
{
    const Int root = isqrt(f.disc());
    IntMatrix M = IntMatrix::identity(2);
    for (int guard = 0; guard < 100000; ++guard) {
        if (indefinite_reduced(f, root)) return ReducedForm{f, M};
        rho_step(f, M, root);
    }
    throw std::logic_error("reduce_indefinite: no convergence");
}

}  // namespace

ReducedForm reduce(const BinaryQuadraticForm& f)
{
    const Int D = f.disc();
    if (is_perfect_square(D)) throw std::invalid_argument("reduce: square discriminant");
    if (D < 0) {
        if (f.a > 0) return reduce_definite(f);
        // negative definite: reduce the negation, same transform
        ReducedForm r = reduce_definite(f.negated());
        return ReducedForm{r.form.negated(), r.transform};
    }
    return reduce_indefinite(f);
}

std::vector<BinaryQuadraticForm> form_cycle(const BinaryQuadraticForm& f)
{
    const Int D = f.disc();
    if (D < 0 || is_perfect_square(D)) throw std::invalid_argument("form_cycle: need indefinite");
    ReducedForm r = reduce(f);
    const Int root = isqrt(D);
    std::vector<BinaryQuadraticForm> cyc{r.form};
    BinaryQuadraticForm cur = r.form;
    IntMatrix M = IntMatrix::identity(2);
    for (int guard = 0; guard < 200000; ++guard) {
        rho_step(cur, M, root);
        if (cur == r.form) return cyc;
        cyc.push_back(cur);
    }
    throw std::logic_error("form_cycle: cycle did not close");
}

std::optional<IntMatrix> equivalent(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g,
                                    bool improper_allowed)
{
    if (f.disc() != g.disc()) throw std::invalid_argument("equivalent: discriminant mismatch");
    if (f.degenerate()) throw std::invalid_argument("equivalent: square discriminant");
    const Int D = f.disc();
    auto proper = [&](const BinaryQuadraticForm& x,
                      const BinaryQuadraticForm& y) -> std::optional<IntMatrix> {
        if (D < 0) {
            if ((x.a > 0) != (y.a > 0)) return std::nullopt;
            ReducedForm rx = reduce(x), ry = reduce(y);
            if (rx.form != ry.form) return std::nullopt;
            IntMatrix M = rx.transform * ry.transform.unimodular_inverse();
            return M;
        }
        ReducedForm rx = reduce(x), ry = reduce(y);
        const Int root = isqrt(D);
        BinaryQuadraticForm cur = rx.form;
        IntMatrix M = IntMatrix::identity(2);
        for (int guard = 0; guard < 200000; ++guard) {
            if (cur == ry.form) {
                IntMatrix full = rx.transform * M * ry.transform.unimodular_inverse();
                return full;
            }
            rho_step(cur, M, root);
            if (cur == rx.form) return std::nullopt;  // closed without a hit
        }
        throw std::logic_error("equivalent: cycle did not close");
    };
    auto res = proper(f, g);
    if (!res && improper_allowed) {
        // try g after the improper flip (x, y) -> (x, -y)
        auto alt = proper(f, g.flipped());
        if (alt) {
            IntMatrix J{{1, 0}, {0, -1}};
            res = *alt * J;  // f.apply(alt) = flipped(g), and flipped(g).apply(J) ... g = f.apply(alt * J)
        }
    }
    if (res && f.apply(*res) != g) throw std::logic_error("equivalent: transform check failed");
    return res;
}

namespace {

// degenerate forms factor into linear pieces; solve by divisor enumeration
std::optional<FormSolution> represent_degenerate(const BinaryQuadraticForm& f, const Int& n)
{
    const Int D = f.disc();
    const Int s = isqrt(D);
    if (f.a == 0 && f.b == 0 && f.c == 0) return std::nullopt;  // n != 0
    if (f.a == 0 && f.b == 0) {
        // c y^2 = n
        if (!divides(f.c, n)) return std::nullopt;
        Int q = exact_div(n, f.c);
        if (!is_perfect_square(q)) return std::nullopt;
        return FormSolution{0, isqrt(q), n};
    }
    if (f.a == 0) {
        // y (b x + c y) = n: y ranges over divisors of n
        std::vector<Int> divs;
        Int an = abs(n);
        for (Int d = 1; d * d <= an; ++d)
            if (divides(d, an)) {
                divs.push_back(d);
                divs.push_back(exact_div(an, d));
            }
        for (const Int& d0 : divs)
            for (int sg = 0; sg < 2; ++sg) {
                Int y = sg ? -d0 : d0;
                Int rest = exact_div(n, y);  // b x + c y = rest
                if (divides(f.b, rest - f.c * y))
                    return FormSolution{exact_div(rest - f.c * y, f.b), y, n};
            }
        return std::nullopt;
    }
    // a != 0: 4a n = (2ax + (b - s) y)(2ax + (b + s) y)
    const Int target = 4 * f.a * n;
    if (s == 0) {
        // perfect square of a linear form
        if (!is_perfect_square(abs(target))) {
            // still may have solutions only if target is a square (sign included)
        }
        if (target < 0) return std::nullopt;
        Int w = isqrt(target);
        if (w * w != target) return std::nullopt;
        // 2ax + by = ±w
        for (int sg = 0; sg < 2; ++sg) {
            Int rhs = sg ? -w : w;
            // solve 2a x + b y = rhs
            Int g = gcd(2 * f.a, f.b);
            if (f.b == 0) {
                if (divides(2 * f.a, rhs)) return FormSolution{exact_div(rhs, 2 * f.a), 0, n};
                continue;
            }
            if (!divides(g, rhs)) continue;
            Int u, v, gg;
            mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), Int(2 * f.a).get_mpz_t(),
                       f.b.get_mpz_t());
            Int scale = exact_div(rhs, g);
            return FormSolution{u * scale, v * scale, n};
        }
        return std::nullopt;
    }
    std::vector<Int> divs;
    Int at = abs(target);
    for (Int d = 1; d * d <= at; ++d)
        if (divides(d, at)) {
            divs.push_back(d);
            divs.push_back(exact_div(at, d));
        }
    for (const Int& d0 : divs)
        for (int sg = 0; sg < 2; ++sg) {
            Int d1 = sg ? -d0 : d0;
            Int d2 = exact_div(target, d1);
            // y = (d2 - d1) / (2s); x = (d1 - (b - s) y) / (2a)
            if (!divides(2 * s, d2 - d1)) continue;
            Int y = exact_div(d2 - d1, 2 * s);
            if (!divides(2 * f.a, d1 - (f.b - s) * y)) continue;
            Int x = exact_div(d1 - (f.b - s) * y, 2 * f.a);
            if (f.eval(x, y) == n) return FormSolution{x, y, n};
        }
    return std::nullopt;
}

}  // namespace

std::optional<FormSolution> represent(const BinaryQuadraticForm& f, const Int& n)
{
    if (n == 0) throw std::invalid_argument("represent: n must be nonzero");
    const Int D = f.disc();
    if (is_perfect_square(D)) return represent_degenerate(f, n);
    if (D < 0) {
        // definite forms take a single sign
        if (f.a > 0 && n < 0) return std::nullopt;
        if (f.a < 0 && n > 0) return std::nullopt;
    }
    // n = g^2 * m over square divisors; primitive representations of m come
    // from square roots of D mod 4|m|
    std::vector<Int> squares;
    Int an = abs(n);
    for (Int g = 1; g * g <= an; ++g)
        if (divides(g * g, an)) squares.push_back(g);
    for (const Int& g : squares) {
        Int m = exact_div(n, g * g);
        Int mod = 4 * abs(m);
        for (const Int& beta : sqrt_mod(mod_floor(D, mod), mod)) {
            Int cc = exact_div(beta * beta - D, 4 * m);
            BinaryQuadraticForm cand{m, beta, cc};
            auto M = equivalent(f, cand, true);
            if (M) {
                // f(M(1,0)) = cand(1,0) = m
                Int x = g * M->at(0, 0), y = g * M->at(1, 0);
                if (f.eval(x, y) != n) throw std::logic_error("represent: transport failed");
                return FormSolution{x, y, n};
            }
        }
    }
    return std::nullopt;
}

bool iso_test_R_J0(const Int& c)
{
    BinaryQuadraticForm f{4, 2, -c};
    return represent(f, 1).has_value() || represent(f, -1).has_value();
}

bool iso_test_R_J1(const Int& c)
{
    BinaryQuadraticForm f{4, 6, 2 - c};
    return represent(f, 1).has_value() || represent(f, -1).has_value();
}

bool iso_test_J0_J1(const Int& c)
{
    BinaryQuadraticForm f{c * (c - 2), -4 * (2 * c - 1), 16};
    return represent(f, 4).has_value() || represent(f, -4).has_value();
}

PellUnit fundamental_solution_pell(const Int& d)
{
    if (d <= 0 || is_perfect_square(d)) throw std::invalid_argument("pell: need positive nonsquare d");
    // squarefree part
    Int d0 = 1;
    for (auto& [p, e] : factorize(d))
        if (e % 2== 1) d0 *= p;
    const Int D0 = (mod_floor(d0, 4) == 1) ? d0 : 4 * d0;
    BinaryQuadraticForm principal =
        (mod_floor(D0, 2) == 0) ? BinaryQuadraticForm{1, 0, exact_div(-D0, 4)}
                                : BinaryQuadraticForm{1, 1, exact_div(1 - D0, 4)};
    // walk the principal cycle: hitting the outer-negated reduced form after
    // half a period yields the norm -1 unit (an improper anti-automorphism);
    // otherwise the full period yields the norm +1 fundamental automorphism.
    // Either way the multiplication matrix encodes (t + u sqrt(D0))/2 with
    // t^2 - D0 u^2 = ±4.
    ReducedForm r = reduce(principal);
    const Int root = isqrt(D0);
    const BinaryQuadraticForm antipode{-r.form.a, r.form.b, -r.form.c};
    BinaryQuadraticForm cur = r.form;
    IntMatrix M = IntMatrix::identity(2);
    IntMatrix A;
    bool found = false;
    for (int guard = 0; guard < 400000 && !found; ++guard) {
        rho_step(cur, M, root);
        if (cur == antipode) {
            IntMatrix J{{1, 0}, {0, -1}};
            A = r.transform * (M * J) * r.transform.unimodular_inverse();
            if (principal.apply(A) != principal.negated())
                throw std::logic_error("pell: anti-automorph check failed");
            found = true;
        } else if (cur == r.form) {
            A = r.transform * M * r.transform.unimodular_inverse();
            if (principal.apply(A) != principal)
                throw std::logic_error("pell: automorph check failed");
            found = true;
        }
    }
    if (!found) throw std::logic_error("pell: principal cycle did not close");
    // A = [[(t - b u)/2, -c u], [a u, (t + b u)/2]] for the principal (a,b,c)
    Int u = A.at(1, 0);  // a = 1
    Int t = A.at(0, 0) + A.at(1, 1);
    if (u < 0) {
        u = -u;
        t = -t;
    }
    if (t < 0) t = -t;
    Int nrm4 = t * t - D0 * u * u;
    if (nrm4 != 4 && nrm4 != -4) throw std::logic_error("pell: automorph norm check failed");
    PellUnit out;
    out.d0 = d0;
    out.norm = (nrm4 == 4) ? 1 : -1;
    if (mod_floor(D0, 4) == 1) {
        // unit (t + u sqrt(d0))/2 in the half-integral basis
        if (mod_floor(t, 2) == 0 && mod_floor(u, 2) == 0) {
            out.x = exact_div(t, 2);
            out.y = exact_div(u, 2);
            out.halved = false;
        } else {
            out.x = t;
            out.y = u;
            out.halved = true;
        }
    } else {
        // D0 = 4 d0: unit (t + 2u sqrt(d0))/2 = t/2 + u sqrt(d0)
        out.x = exact_div(t, 2);
        out.y = u;
        out.halved = false;
    }
    return out;
}

std::vector<BinaryQuadraticForm> reduced_primitive_forms(const Int& D)
{
    if (is_perfect_square(D)) throw std::invalid_argument("census: square discriminant");
    std::vector<BinaryQuadraticForm> out;
    if (D < 0) {
        // |b| <= a <= c, b ≡ D (mod 2), boundary b >= 0
        for (Int a = 1; 4 * a * a <= 3 * abs(D) + 3; ++a) {
            // 3a^2 <= |D| is the usual bound; pad slightly and filter
            for (Int b = -a; b <= a; ++b) {
                if (mod_floor(b - D, 2) != 0) continue;
                Int num = b * b - D;
                if (!divides(4 * a, num)) continue;
                Int c = exact_div(num, 4 * a);
                if (c < a) continue;
                if (b < 0 && (a == -b || a == c)) continue;
                BinaryQuadraticForm f{a, b, c};
                if (!f.primitive()) continue;
                out.push_back(f);
            }
        }
    } else {
        const Int root = isqrt(D);
        for (Int b = 1; b <= root; ++b) {
            if (mod_floor(b - D, 2) != 0) continue;
            Int num = D - b * b;  // = 4|ac|, ac < 0
            if (num <= 0) continue;
            if (!divides(4, num)) continue;
            Int prod = exact_div(num, 4);  // |a c|
            for (Int a1 = 1; a1 * a1 <= prod; ++a1) {
                if (!divides(a1, prod)) continue;
                for (const Int& mag : {a1, exact_div(prod, a1)}) {
                    for (int sa = 0; sa < 2; ++sa) {
                        Int a = sa ? -mag : mag;
                        Int c = exact_div(Int(b * b - D), 4 * a);
                        BinaryQuadraticForm f{a, b, c};
                        if (!f.primitive()) continue;
                        if (!indefinite_reduced(f, root)) continue;
                        out.push_back(f);
                    }
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<BinaryQuadraticForm>> form_class_census(const Int& D)
{
    auto forms = reduced_primitive_forms(D);
    std::vector<std::vector<BinaryQuadraticForm>> classes;
    if (D < 0) {
        for (auto& f : forms) classes.push_back({f});
        return classes;
    }
    std::set<BinaryQuadraticForm> seen;
    for (auto& f : forms) {
        if (seen.count(f)) continue;
        auto cyc = form_cycle(f);
        for (auto& g : cyc) seen.insert(g);
        std::sort(cyc.begin(), cyc.end());
        classes.push_back(std::move(cyc));
    }
    return classes;
}

}  // namespace shifteq
