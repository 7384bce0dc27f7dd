#include "shifteq/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace shifteq {

void IntPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::t_power(std::size_t k)
{
    std::vector<Int> c(k + 1, 0);
    c[k] = 1;
    return IntPoly(std::move(c));
}

const Int& IntPoly::coeff(std::size_t k) const
{
    static const Int zero = 0;
    return k < c_.size() ? c_[k] : zero;
}

IntPoly IntPoly::operator+(const IntPoly& o) const
{
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const
{
    std::vector<Int> r = c_;
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const
{
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const
{
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

IntMatrix IntPoly::eval(const IntMatrix& m) const
{
    if (!m.is_square()) throw std::invalid_argument("IntPoly::eval: matrix not square");
    IntMatrix r(m.rows(), m.rows());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * m;
        for (std::size_t i = 0; i < m.rows(); ++i) r.at(i, i) += *it;
    }
    return r;
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& d) const
{
    if (!d.is_monic()) throw std::invalid_argument("divmod_monic: divisor not monic");
    std::vector<Int> rem = c_;
    long dd = d.degree();
    if (dd == 0) return {*this, IntPoly()};
    std::vector<Int> quo(rem.size() > static_cast<std::size_t>(dd)
                             ? rem.size() - dd
                             : 0,
                         0);
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        Int q = rem[i];
        if (q == 0) continue;
        quo[i - dd] = q;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d.coeff(j);
    }
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

Int IntPoly::content() const
{
    Int g = 0;
    for (const auto& v : c_) g = gcd(g, v);
    return g;
}

std::string IntPoly::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Int& a = coeff(i);
        if (a == 0) continue;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? "-" : "+");
        }
        Int mag = abs(a);
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace shifteq
