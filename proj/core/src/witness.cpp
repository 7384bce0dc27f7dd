#include "shifteq/witness.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace shifteq {

bool verify_witness(const IntMatrix& T1, const IntMatrix& T2, const SEWitness& w)
{
    if (!T1.is_square() || !T2.is_square()) throw std::invalid_argument("verify_witness: square matrices required");
    const std::size_t n1 = T1.rows(), n2 = T2.rows();
    if (w.R.rows() != n2 || w.R.cols() != n1 || w.S.rows() != n1 || w.S.cols() != n2)
        throw std::invalid_argument("verify_witness: witness shape mismatch");
    if (w.m < 1) return false;
    if (w.R * T1 != T2 * w.R) return false;
    if (w.S * T2 != T1 * w.S) return false;
    if (w.S * w.R != T1.pow(w.m)) return false;
    if (w.R * w.S != T2.pow(w.m)) return false;
    return true;
}

namespace {

// Column-stacked (row-major) matrix of X -> X*A - B*X acting on n2 x n1
// matrices X.
IntMatrix intertwiner_map(const IntMatrix& A, const IntMatrix& B)
{
    const std::size_t n1 = A.rows(), n2 = B.rows();
    const std::size_t N = n1 * n2;
    IntMatrix phi(N, N);
    // (X*A)_{ij} = sum_k X_{ik} A_{kj};  (B*X)_{ij} = sum_k B_{ik} X_{kj}
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            const std::size_t row = i * n1 + j;
            for (std::size_t k = 0; k < n1; ++k) phi.at(row, i * n1 + k) += A.at(k, j);
            for (std::size_t k = 0; k < n2; ++k) phi.at(row, k * n1 + j) -= B.at(i, k);
        }
    return phi;
}

IntMatrix unvec(const std::vector<Int>& v, std::size_t rows, std::size_t cols)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v[i * cols + j];
    return m;
}

// Coefficient-box bounds L_i such that every lattice point sum(c_i b_i) with
// max-norm <= `bound` (plus optional offset) satisfies |c_i| <= L_i. Uses the
// exact rational left inverse (B^T B)^-1 B^T.
std::vector<Int> coefficient_bounds(const std::vector<std::vector<Int>>& basis, const Int& bound,
                                    const std::vector<Int>* offset)
{
    const std::size_t l = basis.size();
    const std::size_t N = basis[0].size();
    std::vector<std::vector<Rat>> G(l, std::vector<Rat>(l, Rat(0)));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Int s = 0;
            for (std::size_t k = 0; k < N; ++k) s += basis[i][k] * basis[j][k];
            G[i][j] = Rat(s);
        }
    // rows of P = G^-1 B^T, solved column by column
    std::vector<Int> L(l, 0);
    std::vector<std::vector<Rat>> Pi(l, std::vector<Rat>(N));
    for (std::size_t col = 0; col < N; ++col) {
        std::vector<Rat> rhs(l);
        for (std::size_t i = 0; i < l; ++i) rhs[i] = Rat(basis[i][col]);
        auto x = solve_rational(G, rhs);
        if (!x) throw std::logic_error("coefficient_bounds: Gram matrix singular");
        for (std::size_t i = 0; i < l; ++i) Pi[i][col] = (*x)[i];
    }
    for (std::size_t i = 0; i < l; ++i) {
        Rat s(0);
        for (std::size_t k = 0; k < N; ++k) {
            Rat a = Pi[i][k];
            if (a < 0) a = -a;
            Rat reach = Rat(bound);
            if (offset) reach += Rat(abs((*offset)[k]));
            s += a * reach;
        }
        // floor(s)
        Int num = s.get_num(), den = s.get_den();
        L[i] = div_floor(num, den);
    }
    return L;
}

// Enumerates c in the box prod [-L_i, L_i] ordered by (max-norm shell, lex),
// invoking fn(c); stops when fn returns true.
bool enumerate_shells(const std::vector<Int>& L, const std::function<bool(const std::vector<Int>&)>& fn)
{
    Int maxL = 0;
    for (const auto& v : L) maxL = std::max(maxL, v);
    std::vector<Int> c(L.size(), 0);
    for (Int shell = 0; shell <= maxL; ++shell) {
        // odometer over the box, filtered to max-norm == shell
        std::function<bool(std::size_t, bool)> rec = [&](std::size_t idx, bool touched) -> bool {
            if (idx == c.size()) return touched ? fn(c) : false;
            Int lim = std::min(L[idx], shell);
            for (Int v = -lim; v <= lim; ++v) {
                c[idx] = v;
                if (rec(idx + 1, touched || abs(v) == shell)) return true;
            }
            return false;
        };
        if (shell == 0) {
            std::fill(c.begin(), c.end(), Int(0));
            if (fn(c)) return true;
        } else if (rec(0, false)) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<SEWitness> search_witness(const IntMatrix& T1, const IntMatrix& T2,
                                        const SearchBounds& bounds)
{
    if (!T1.is_square() || !T2.is_square())
        throw std::invalid_argument("search_witness: square matrices required");
    const std::size_t n1 = T1.rows(), n2 = T2.rows();
    if (n1 == 0 && n2 == 0) return SEWitness{IntMatrix(0, 0), IntMatrix(0, 0), 1};

    // R T1 = T2 R: lattice of intertwiners, independent of the lag
    IntMatrix phi = intertwiner_map(T1, T2);
    auto rker = integer_kernel(phi);

    for (unsigned long m = 1; m <= bounds.max_lag; ++m) {
        IntMatrix t1m = T1.pow(m), t2m = T2.pow(m);
        auto try_R = [&](const IntMatrix& R) -> std::optional<SEWitness> {
            if (R.max_abs() > bounds.entry_bound) return std::nullopt;
            // solve for S: S T2 = T1 S, S R = T1^m, R S = T2^m  (linear in S)
            const std::size_t rows = n1 * n2 + n1 * n1 + n2 * n2;
            const std::size_t colsN = n1 * n2;
            IntMatrix sys(rows, colsN);
            std::vector<Int> rhs(rows, 0);
            // S is n1 x n2; vec row-major index (i, j) -> i*n2 + j
            std::size_t r0 = 0;
            // S T2 - T1 S = 0
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) {
                    const std::size_t row = r0 + i * n2 + j;
                    for (std::size_t k = 0; k < n2; ++k) sys.at(row, i * n2 + k) += T2.at(k, j);
                    for (std::size_t k = 0; k < n1; ++k) sys.at(row, k * n2 + j) -= T1.at(i, k);
                }
            r0 += n1 * n2;
            // S R = T1^m
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n1; ++j) {
                    const std::size_t row = r0 + i * n1 + j;
                    for (std::size_t k = 0; k < n2; ++k) sys.at(row, i * n2 + k) += R.at(k, j);
                    rhs[row] = t1m.at(i, j);
                }
            r0 += n1 * n1;
            // R S = T2^m
            for (std::size_t i = 0; i < n2; ++i)
                for (std::size_t j = 0; j < n2; ++j) {
                    const std::size_t row = r0 + i * n2 + j;
                    for (std::size_t k = 0; k < n1; ++k) sys.at(row, k * n2 + j) += R.at(i, k);
                    rhs[row] = t2m.at(i, j);
                }
            auto sol = solve_integer(sys, rhs);
            if (!sol) return std::nullopt;
            // look for a solution inside the entry box
            std::vector<Int> part = sol->particular;
            if (sol->kernel.empty()) {
                IntMatrix S = unvec(part, n1, n2);
                if (S.max_abs() > bounds.entry_bound) return std::nullopt;
                SEWitness w{R, S, m};
                return verify_witness(T1, T2, w) ? std::optional<SEWitness>(w) : std::nullopt;
            }
            // greedy size-reduce the particular point against the kernel
            for (int pass = 0; pass < 4; ++pass)
                for (const auto& kb : sol->kernel) {
                    Int num = 0, den = 0;
                    for (std::size_t i = 0; i < kb.size(); ++i) {
                        num += part[i] * kb[i];
                        den += kb[i] * kb[i];
                    }
                    if (den == 0) continue;
                    Int q = div_floor(2 * num + den, 2 * den);  // round(num/den)
                    if (q != 0)
                        for (std::size_t i = 0; i < kb.size(); ++i) part[i] -= q * kb[i];
                }
            auto L = coefficient_bounds(sol->kernel, bounds.entry_bound, &part);
            std::optional<SEWitness> found;
            enumerate_shells(L, [&](const std::vector<Int>& c) {
                std::vector<Int> v = part;
                for (std::size_t bi = 0; bi < sol->kernel.size(); ++bi)
                    if (c[bi] != 0)
                        for (std::size_t i = 0; i < v.size(); ++i)
                            v[i] += c[bi] * sol->kernel[bi][i];
                IntMatrix S = unvec(v, n1, n2);
                if (S.max_abs() > bounds.entry_bound) return false;
                SEWitness w{R, S, m};
                if (verify_witness(T1, T2, w)) {
                    found = w;
                    return true;
                }
                return false;
            });
            return found;
        };

        if (rker.empty()) {
            // only R = 0 intertwines; valid iff both powers vanish
            if (t1m.is_zero() && t2m.is_zero()) {
                SEWitness w{IntMatrix(n2, n1), IntMatrix(n1, n2), m};
                if (verify_witness(T1, T2, w)) return w;
            }
            continue;
        }
        auto L = coefficient_bounds(rker, bounds.entry_bound, nullptr);
        std::optional<SEWitness> found;
        enumerate_shells(L, [&](const std::vector<Int>& c) {
            std::vector<Int> v(n1 * n2, 0);
            for (std::size_t bi = 0; bi < rker.size(); ++bi)
                if (c[bi] != 0)
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[bi] * rker[bi][i];
            IntMatrix R = unvec(v, n2, n1);
            bool rzero = R.is_zero();
            if (rzero && !(t1m.is_zero() && t2m.is_zero())) return false;
            auto w = try_R(R);
            if (w) {
                found = w;
                return true;
            }
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<IntMatrix> search_conjugator(const IntMatrix& T1, const IntMatrix& T2,
                                           const Int& entry_bound)
{
    if (!T1.is_square() || !T2.is_square() || T1.rows() != T2.rows())
        throw std::invalid_argument("search_conjugator: equal square shapes required");
    const std::size_t n = T1.rows();
    if (n == 0) return IntMatrix(0, 0);
    IntMatrix phi = intertwiner_map(T1, T2);
    auto rker = integer_kernel(phi);
    if (rker.empty()) return std::nullopt;
    auto L = coefficient_bounds(rker, entry_bound, nullptr);
    std::optional<IntMatrix> found;
    enumerate_shells(L, [&](const std::vector<Int>& c) {
        std::vector<Int> v(n * n, 0);
        for (std::size_t bi = 0; bi < rker.size(); ++bi)
            if (c[bi] != 0)
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[bi] * rker[bi][i];
        IntMatrix P = unvec(v, n, n);
        if (P.max_abs() > entry_bound) return false;
        Int d = P.det();
        if (d != 1 && d != -1) return false;
        if (P * T1 != T2 * P) return false;  // redundant with the lattice, cheap check
        found = P;
        return true;
    });
    return found;
}

SEWitness witness_from_conjugation(const IntMatrix& T1, const IntMatrix& P)
{
    return SEWitness{P, T1 * P.unimodular_inverse(), 1};
}

SEWitness compose_witness(const SEWitness& w12, const SEWitness& w23)
{
    return SEWitness{w23.R * w12.R, w12.S * w23.S, w12.m + w23.m};
}

SEWitness reverse_witness(const SEWitness& w) { return SEWitness{w.S, w.R, w.m}; }

}  // namespace shifteq
