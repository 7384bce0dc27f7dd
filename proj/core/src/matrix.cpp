#include "shifteq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace shifteq {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
        for (auto& v : r) e_.push_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: shape mismatch in sum");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + (-o); }

IntMatrix IntMatrix::operator-() const
{
    IntMatrix r = *this;
    for (auto& v : r.e_) v = -v;
    return r;
}

IntMatrix IntMatrix::operator*(const Int& s) const
{
    IntMatrix r = *this;
    for (auto& v : r.e_) v *= s;
    return r;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::pow(unsigned long e) const
{
    if (!is_square()) throw std::invalid_argument("IntMatrix::pow: not square");
    IntMatrix r = identity(rows_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = (e >>= 1) ? b * b : b;
    }
    return r;
}

Int IntMatrix::trace() const
{
    if (!is_square()) throw std::invalid_argument("IntMatrix::trace: not square");
    Int t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

Int IntMatrix::det() const
{
    if (!is_square()) throw std::invalid_argument("IntMatrix::det: not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = exact_div(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

bool IntMatrix::is_zero() const
{
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

Int IntMatrix::max_abs() const
{
    Int m = 0;
    for (const auto& v : e_)
        if (shifteq::abs(v) > m) m = shifteq::abs(v);
    return m;
}

IntMatrix IntMatrix::unimodular_inverse() const
{
    Int d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("unimodular_inverse: det not ±1");
    std::size_t n = rows_;
    // adjugate via cofactors; n is tiny everywhere this is used
    IntMatrix adj(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = at(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = minor.det();
            if ((i + j) % 2) cof = -cof;
            adj.at(j, i) = cof;
        }
    return d == 1 ? adj : -adj;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            os << at(i, j).get_str();
            if (j + 1 < cols_) os << ",";
        }
        os << "]";
        if (i + 1 < rows_) os << ",";
    }
    os << "]";
    return os.str();
}

}  // namespace shifteq
