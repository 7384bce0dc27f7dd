#include "shifteq/intlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shifteq {

std::string AbelianGroupType::to_string() const
{
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

struct SmithWork {
    IntMatrix W, U, Uinv, V, Vinv;

    void row_swap(std::size_t i, std::size_t j)
    {
        for (std::size_t c = 0; c < W.cols(); ++c) std::swap(W.at(i, c), W.at(j, c));
        for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(c, i), U.at(c, j));
        for (std::size_t c = 0; c < Uinv.cols(); ++c) std::swap(Uinv.at(i, c), Uinv.at(j, c));
    }
    void col_swap(std::size_t i, std::size_t j)
    {
        for (std::size_t r = 0; r < W.rows(); ++r) std::swap(W.at(r, i), W.at(r, j));
        for (std::size_t r = 0; r < V.cols(); ++r) std::swap(V.at(i, r), V.at(j, r));
        for (std::size_t r = 0; r < Vinv.rows(); ++r) std::swap(Vinv.at(r, i), Vinv.at(r, j));
    }
    // row_i += q * row_j
    void row_add(std::size_t i, std::size_t j, const Int& q)
    {
        for (std::size_t c = 0; c < W.cols(); ++c) W.at(i, c) += q * W.at(j, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U.at(r, j) -= q * U.at(r, i);
        for (std::size_t c = 0; c < Uinv.cols(); ++c) Uinv.at(i, c) += q * Uinv.at(j, c);
    }
    // col_i += q * col_j
    void col_add(std::size_t i, std::size_t j, const Int& q)
    {
        for (std::size_t r = 0; r < W.rows(); ++r) W.at(r, i) += q * W.at(r, j);
        for (std::size_t c = 0; c < V.cols(); ++c) V.at(j, c) -= q * V.at(i, c);
        for (std::size_t r = 0; r < Vinv.rows(); ++r) Vinv.at(r, i) += q * Vinv.at(r, j);
    }
    void row_negate(std::size_t i)
    {
        for (std::size_t c = 0; c < W.cols(); ++c) W.at(i, c) = -W.at(i, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U.at(r, i) = -U.at(r, i);
        for (std::size_t c = 0; c < Uinv.cols(); ++c) Uinv.at(i, c) = -Uinv.at(i, c);
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& A)
{
    const std::size_t m = A.rows(), n = A.cols();
    SmithWork w{A, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
                IntMatrix::identity(n)};

    const std::size_t k = std::min(m, n);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest nonzero pivot in the trailing block keeps growth tame
            std::size_t pi = t, pj = t;
            Int best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int a = abs(w.W.at(i, j));
                    if (a != 0 && (best == 0 || a < best)) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) goto done;  // trailing block is zero
            if (pi != t) w.row_swap(pi, t);
            if (pj != t) w.col_swap(pj, t);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (w.W.at(i, t) == 0) continue;
                Int q = div_floor(w.W.at(i, t), w.W.at(t, t));
                w.row_add(i, t, -q);
                if (w.W.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w.W.at(t, j) == 0) continue;
                Int q = div_floor(w.W.at(t, j), w.W.at(t, t));
                w.col_add(j, t, -q);
                if (w.W.at(t, j) != 0) clean = false;
            }
            if (clean) break;
        }
    }
done:
    // sign-normalize the diagonal
    for (std::size_t t = 0; t < k; ++t)
        if (w.W.at(t, t) < 0) w.row_negate(t);

    // enforce the divisibility chain
    for (;;) {
        bool fixed = true;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            const Int &a = w.W.at(t, t), &b = w.W.at(t + 1, t + 1);
            if (a == 0 && b != 0) {
                // zeros belong last
                w.row_swap(t, t + 1);
                w.col_swap(t, t + 1);
                fixed = false;
                continue;
            }
            if (a != 0 && b != 0 && !divides(a, b)) {
                // fold b into the pivot: classic gcd trick
                w.col_add(t, t + 1, 1);
                for (;;) {
                    Int q = div_floor(w.W.at(t + 1, t), w.W.at(t, t));
                    w.row_add(t + 1, t, -q);
                    if (w.W.at(t + 1, t) == 0) break;
                    w.row_swap(t, t + 1);
                }
                // re-clear the (t, t+1) entry
                if (w.W.at(t, t + 1) != 0) {
                    Int q = exact_div(w.W.at(t, t + 1), w.W.at(t, t));
                    w.col_add(t + 1, t, -q);
                }
                if (w.W.at(t, t) < 0) w.row_negate(t);
                if (w.W.at(t + 1, t + 1) < 0) w.row_negate(t + 1);
                fixed = false;
            }
        }
        if (fixed) break;
    }
    return SmithResult{w.U, w.W, w.V, w.Uinv, w.Vinv};
}

IntPoly charpoly(const IntMatrix& T)
{
    if (!T.is_square()) throw std::invalid_argument("charpoly: not square");
    const std::size_t n = T.rows();
    std::vector<Int> c(n + 1, 0);
    c[n] = 1;
    IntMatrix M = IntMatrix::identity(n);
    for (std::size_t kk = 1; kk <= n; ++kk) {
        M = T * M;
        Int tr = M.trace();
        Int ck = exact_div(-tr, Int(kk));
        c[n - kk] = ck;
        for (std::size_t i = 0; i < n; ++i) M.at(i, i) += ck;
    }
    return IntPoly(std::move(c));
}

std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> M,
                                               std::vector<Rat> rhs)
{
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    std::vector<long> pivot_col(rows, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        Rat inv = 1 / M[r][c];
        for (std::size_t j = c; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

IntPoly minimal_polynomial(const IntMatrix& T)
{
    if (!T.is_square()) throw std::invalid_argument("minimal_polynomial: not square");
    const std::size_t n = T.rows();
    if (n == 0) return IntPoly::one();
    std::vector<IntMatrix> powers{IntMatrix::identity(n)};
    for (std::size_t d = 1; d <= n; ++d) {
        powers.push_back(powers.back() * T);
        // try monic degree d: T^d + sum_{i<d} x_i T^i = 0
        std::vector<std::vector<Rat>> M(n * n, std::vector<Rat>(d, Rat(0)));
        std::vector<Rat> rhs(n * n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t row = i * n + j;
                for (std::size_t e = 0; e < d; ++e) M[row][e] = Rat(powers[e].at(i, j));
                rhs[row] = Rat(-powers[d].at(i, j));
            }
        auto sol = solve_rational(std::move(M), std::move(rhs));
        if (!sol) continue;
        std::vector<Int> coeffs(d + 1, 0);
        coeffs[d] = 1;
        for (std::size_t e = 0; e < d; ++e) {
            Rat v = (*sol)[e];
            v.canonicalize();
            if (v.get_den() != 1)
                throw std::logic_error("minimal_polynomial: non-integer coefficient");
            coeffs[e] = v.get_num();
        }
        IntPoly mp(std::move(coeffs));
        if (!mp.eval(T).is_zero()) throw std::logic_error("minimal_polynomial: check failed");
        return mp;
    }
    throw std::logic_error("minimal_polynomial: charpoly does not annihilate");
}

AbelianGroupType bowen_franks(const IntMatrix& T, const IntPoly& f)
{
    if (!T.is_square()) throw std::invalid_argument("bowen_franks: not square");
    IntMatrix A = f.eval(T);
    SmithResult s = smith_normal_form(A);
    AbelianGroupType g;
    const std::size_t n = T.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const Int& d = s.D.at(i, i);
        if (d == 0)
            g.free_rank++;
        else if (d >= 2)
            g.torsion.push_back(d);
    }
    return g;
}

std::vector<std::vector<Int>> integer_kernel(const IntMatrix& A)
{
    SmithResult s = smith_normal_form(A);
    const std::size_t n = A.cols();
    const std::size_t k = std::min(A.rows(), n);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = 0; j < n; ++j) {
        bool free_coord = j >= k || s.D.at(j, j) == 0;
        if (!free_coord) continue;
        std::vector<Int> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = s.Vinv.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& A, const std::vector<Int>& b)
{
    if (b.size() != A.rows()) throw std::invalid_argument("solve_integer: rhs size");
    SmithResult s = smith_normal_form(A);
    const std::size_t m = A.rows(), n = A.cols();
    const std::size_t k = std::min(m, n);
    // c = Uinv * b
    std::vector<Int> c(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[i] += s.Uinv.at(i, j) * b[j];
    std::vector<Int> y(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const Int d = (i < k) ? s.D.at(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (i >= n) return std::nullopt;
            if (!divides(d, c[i])) return std::nullopt;
            y[i] = exact_div(c[i], d);
        }
    }
    std::vector<Int> x(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x[i] += s.Vinv.at(i, j) * y[j];
    return IntegerSolution{std::move(x), integer_kernel(A)};
}

NilpotentStrip remove_nilpotent_part(const IntMatrix& T)
{
    if (!T.is_square()) throw std::invalid_argument("remove_nilpotent_part: not square");
    const std::size_t n = T.rows();
    NilpotentStrip out;
    if (n == 0) {
        out.reduced = T;
        out.proj = T;
        out.sect = T;
        return out;
    }
    IntMatrix Tn = T.pow(static_cast<unsigned long>(n));
    auto ker = integer_kernel(Tn);
    const std::size_t k = ker.size();
    if (k == 0) {
        out.reduced = T;
        out.proj = IntMatrix::identity(n);
        out.sect = T;  // lag 1: proj*sect = T = reduced^1, sect*proj = T^1
        out.lag = 1;
        return out;
    }
    // complete the (saturated, hence primitive) kernel basis to a basis of Z^n
    IntMatrix K(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) K.at(i, j) = ker[j][i];
    SmithResult s = smith_normal_form(K);
    for (std::size_t j = 0; j < k; ++j)
        if (s.D.at(j, j) != 1)
            throw std::logic_error("remove_nilpotent_part: kernel basis not primitive");
    // columns of B: first k span the kernel, rest complete it
    IntMatrix B = s.U;
    {
        // replace the first k columns of U by the kernel basis written in U's
        // coordinates: U*D*V = K, so K*Vinv = U*D = first k columns of U
        // (already unit diagonal). Using U itself keeps B unimodular.
    }
    IntMatrix Binv = B.unimodular_inverse();
    IntMatrix M = Binv * T * B;
    // bottom-left block must vanish (kernel is T-invariant)
    const std::size_t q = n - k;
    for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (M.at(i, j) != 0) throw std::logic_error("remove_nilpotent_part: block structure");
    IntMatrix Tq(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) Tq.at(i, j) = M.at(k + i, k + j);

    // nilpotency index of the top-left block
    IntMatrix N(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) N.at(i, j) = M.at(i, j);
    unsigned long lag = 1;
    {
        IntMatrix Np = N;
        while (!Np.is_zero()) {
            Np = Np * N;
            ++lag;
            if (lag > n + 1) throw std::logic_error("remove_nilpotent_part: not nilpotent");
        }
    }
    // proj = [0 | I] Binv ; sect = T^lag * B * [0 ; I]
    IntMatrix proj(q, n);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = Binv.at(k + i, j);
    IntMatrix emb(n, q);
    for (std::size_t i = 0; i < q; ++i) emb.at(k + i, i) = 1;
    IntMatrix sect = T.pow(lag) * B * emb;

    out.reduced = Tq;
    out.rank_drop = k;
    out.proj = proj;
    out.sect = sect;
    out.lag = lag;
    return out;
}

Triangularization triangularize_over_Z(const IntMatrix& T, const Int& lambda)
{
    if (!T.is_square() || T.rows() != 2)
        throw std::invalid_argument("triangularize_over_Z: need a 2x2 matrix");
    IntPoly chi = charpoly(T);
    if (chi.eval(lambda) != 0)
        throw std::invalid_argument("triangularize_over_Z: lambda is not an eigenvalue");
    if (T.at(0, 1) == 0 && T.at(0, 0) == lambda)
        return Triangularization{IntMatrix::identity(2), T};
    const Int mu = T.trace() - lambda;  // the eigenvalue that ends up in slot (2,2)
    IntMatrix shifted = T;
    shifted.at(0, 0) -= mu;
    shifted.at(1, 1) -= mu;
    auto ker = integer_kernel(shifted);
    if (ker.empty()) throw std::logic_error("triangularize_over_Z: no integer eigenvector");
    Int v1 = ker[0][0], v2 = ker[0][1];
    Int g = gcd(v1, v2);
    if (g != 0) {
        v1 = exact_div(v1, g);
        v2 = exact_div(v2, g);
    }
    // complete (v1, v2) to det-1 basis [w | v]
    Int x, y, gg;
    mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), v2.get_mpz_t(), v1.get_mpz_t());
    // x*v2 + y*v1 = 1  ->  w = (x, -y) gives det [w v] = x*v2 - (-y)*v1 = 1
    IntMatrix U{{x, v1}, {-y, v2}};
    if (U.det() != 1) throw std::logic_error("triangularize_over_Z: completion failed");
    IntMatrix lower = U.unimodular_inverse() * T * U;
    if (lower.at(0, 1) != 0 || lower.at(0, 0) != lambda)
        throw std::logic_error("triangularize_over_Z: unexpected shape");
    return Triangularization{U, lower};
}

}  // namespace shifteq
