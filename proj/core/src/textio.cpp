#include "shifteq/textio.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace shifteq {

IntMatrix parse_matrix(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matrix parse: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix parse: expected [[...]]");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw std::invalid_argument("matrix parse: expected rows");
    const std::size_t cols = j[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument("matrix parse: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& cell = j[i][k];
            if (cell.is_number_integer()) {
                m.at(i, k) = Int(static_cast<long>(cell.get<long long>()));
            } else if (cell.is_string()) {
                try {
                    m.at(i, k) = Int(cell.get<std::string>());
                } catch (const std::invalid_argument&) {
                    throw std::invalid_argument("matrix parse: bad integer string");
                }
            } else {
                throw std::invalid_argument("matrix parse: entries must be integers");
            }
        }
    }
    return m;
}

std::string matrix_to_json(const IntMatrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            if (fits_int64(v))
                row.push_back(static_cast<long long>(mpz_get_si(v.get_mpz_t())));
            else
                row.push_back(v.get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit PolyParser(const std::string& text) : s(text) {}

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c)
    {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c)
    {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why)
    {
        throw std::invalid_argument("polynomial parse: " + why + " at position " +
                                    std::to_string(pos));
    }

    IntPoly parse_expr()
    {
        IntPoly acc = eat('-') ? -parse_term() : (eat('+'), parse_term());
        for (;;) {
            if (eat('+'))
                acc = acc + parse_term();
            else if (eat('-'))
                acc = acc - parse_term();
            else
                break;
        }
        return acc;
    }

    IntPoly parse_term()
    {
        IntPoly acc = parse_factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * parse_factor();
                continue;
            }
            // juxtaposition: "2t", "3(...)" style
            skip_ws();
            if (pos < s.size() && (s[pos] == 't' || s[pos] == '(')) {
                acc = acc * parse_factor();
                continue;
            }
            break;
        }
        return acc;
    }

    IntPoly parse_factor()
    {
        IntPoly base = parse_atom();
        if (eat('^')) {
            skip_ws();
            Int e = parse_int();
            if (e < 0) fail("negative exponent");
            IntPoly r = IntPoly::one();
            for (Int i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    IntPoly parse_atom()
    {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            IntPoly inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (s[pos] == 't') {
            ++pos;
            return IntPoly::t_power(1);
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) return IntPoly{parse_int()};
        fail("expected integer, 't' or '('");
    }

    Int parse_int()
    {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        Int v(s.substr(start, pos - start));
        return neg ? Int(-v) : v;
    }
};

}  // namespace

IntPoly parse_poly(const std::string& text)
{
    PolyParser p(text);
    IntPoly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return out;
}

}  // namespace shifteq
