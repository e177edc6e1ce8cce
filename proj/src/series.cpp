#include "abmod/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "abmod/errors.hpp"

namespace abmod {

Rational rat_from_string(const std::string& text) {
    if (text.empty()) throw ParseError(0, 0, "empty rational");
    // mpq_class accepts "p/q" but also tolerates junk like leading '+';
    // validate by hand so errors are predictable.
    size_t i = 0;
    auto digits = [&](size_t from) {
        size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    if (text[i] == '-' || text[i] == '+') ++i;
    size_t after_num = digits(i);
    if (after_num == i) throw ParseError(0, static_cast<int>(i), "expected digits in rational");
    i = after_num;
    if (i < text.size()) {
        if (text[i] != '/') throw ParseError(0, static_cast<int>(i), "unexpected character in rational");
        size_t after_den = digits(i + 1);
        if (after_den == i + 1 || after_den != text.size())
            throw ParseError(0, static_cast<int>(i + 1), "expected digits after '/'");
        if (text.substr(i + 1) == std::string(after_den - i - 1, '0'))
            throw ParseError(0, static_cast<int>(i + 1), "zero denominator");
    }
    Rational r(text.c_str());
    r.canonicalize();
    return r;
}

Series::Series(int trunc) {
    if (trunc < 1) throw PrecisionExhausted("series truncation must be >= 1");
    coeffs_.assign(static_cast<size_t>(trunc), Rational(0));
}

Series::Series(Rational constant, int trunc) : Series(trunc) {
    coeffs_[0] = std::move(constant);
}

Series Series::monomial(Rational c, int power, int trunc) {
    Series s(trunc);
    if (power < trunc) s.coeffs_[power] = std::move(c);
    return s;
}

bool Series::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
}

int Series::valuation() const {
    for (int i = 0; i < trunc(); ++i)
        if (coeffs_[i] != 0) return i;
    return kValInfinity;
}

Series Series::operator-() const {
    Series r(trunc());
    for (int i = 0; i < trunc(); ++i) r.coeffs_[i] = -coeffs_[i];
    return r;
}

Series Series::operator+(const Series& other) const {
    int n = std::min(trunc(), other.trunc());
    Series r(n);
    for (int i = 0; i < n; ++i) r.coeffs_[i] = coeffs_[i] + other.coeffs_[i];
    return r;
}

Series Series::operator-(const Series& other) const {
    int n = std::min(trunc(), other.trunc());
    Series r(n);
    for (int i = 0; i < n; ++i) r.coeffs_[i] = coeffs_[i] - other.coeffs_[i];
    return r;
}

Series Series::operator*(const Series& other) const {
    int n = std::min(trunc(), other.trunc());
    Series r(n);
    for (int i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; i + j < n; ++j) {
            if (other.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
        }
    }
    return r;
}

Series Series::operator*(const Rational& scalar) const {
    Series r(trunc());
    if (scalar == 0) return r;
    for (int i = 0; i < trunc(); ++i) r.coeffs_[i] = coeffs_[i] * scalar;
    return r;
}

Series Series::inverse() const {
    if (coeffs_[0] == 0) throw NotAUnit();
    Series r(trunc());
    Rational c0inv = Rational(1) / coeffs_[0];
    r.coeffs_[0] = c0inv;
    for (int i = 1; i < trunc(); ++i) {
        Rational acc(0);
        for (int j = 1; j <= i; ++j) {
            if (coeffs_[j] == 0) continue;
            acc += coeffs_[j] * r.coeffs_[i - j];
        }
        r.coeffs_[i] = -c0inv * acc;
    }
    return r;
}

Series Series::derivative() const {
    if (trunc() < 2) throw PrecisionExhausted("derivative of a series with trunc < 2");
    Series r(trunc() - 1);
    for (int i = 1; i < trunc(); ++i) r.coeffs_[i - 1] = coeffs_[i] * i;
    return r;
}

Series Series::shifted_up(int m) const {
    Series r(trunc() + m);
    for (int i = 0; i < trunc(); ++i) r.coeffs_[i + m] = coeffs_[i];
    return r;
}

Series Series::shifted_down(int m) const {
    for (int i = 0; i < std::min(m, trunc()); ++i)
        if (coeffs_[i] != 0) throw Error("shifted_down: series not divisible by b^" + std::to_string(m));
    if (trunc() - m < 1) throw PrecisionExhausted("shifted_down below precision floor");
    Series r(trunc() - m);
    for (int i = m; i < trunc(); ++i) r.coeffs_[i - m] = coeffs_[i];
    return r;
}

Series Series::negated_variable() const {
    Series r(trunc());
    for (int i = 0; i < trunc(); ++i)
        r.coeffs_[i] = (i % 2 == 0) ? coeffs_[i] : -coeffs_[i];
    return r;
}

Series Series::with_trunc(int n) const {
    Series r(n);
    for (int i = 0; i < std::min(n, trunc()); ++i) r.coeffs_[i] = coeffs_[i];
    return r;
}

bool Series::operator==(const Series& other) const {
    int n = std::min(trunc(), other.trunc());
    for (int i = 0; i < n; ++i)
        if (coeffs_[i] != other.coeffs_[i]) return false;
    return true;
}

std::string Series::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < trunc(); ++i) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        Rational a = abs(c);
        if (i == 0) {
            out << rat_to_string(a);
        } else {
            if (a != 1) out << rat_to_string(a) << "*";
            out << "b";
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return out.str();
}

namespace {

// Recursive-descent parser for "c0 + c1*b + c2*b^2" with rationals "p/q".
struct SeriesParser {
    const std::string& text;
    int line;
    size_t pos = 0;

    explicit SeriesParser(const std::string& t, int l) : text(t), line(l) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, static_cast<int>(pos), msg);
    }
    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos == text.size();
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    Rational parse_number() {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected number");
        std::string num = text.substr(start, pos - start);
        if (peek() == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == dstart) fail("expected denominator digits");
            std::string den = text.substr(dstart, pos - dstart);
            if (Rational(den.c_str()) == 0) fail("zero denominator");
            Rational r((num + "/" + den).c_str());
            r.canonicalize();
            return r;
        }
        return Rational(num.c_str());
    }

    int parse_power() {
        // after 'b': optional "^k"
        if (peek() != '^') return 1;
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected exponent digits after '^'");
        return std::stoi(text.substr(start, pos - start));
    }

    // term := number ['*' 'b' ['^' k]] | 'b' ['^' k]
    void parse_term(int sign, Series& acc) {
        skip_ws();
        Rational c(1);
        int power = 0;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = parse_number();
            skip_ws();
            if (peek() == '*') {
                ++pos;
                skip_ws();
                if (peek() != 'b') fail("expected 'b' after '*'");
                ++pos;
                power = parse_power();
            }
        } else if (peek() == 'b') {
            ++pos;
            power = parse_power();
        } else {
            fail("expected coefficient or 'b'");
        }
        if (sign < 0) c = -c;
        if (power < acc.trunc())
            acc.set_coeff(power, acc.coeff(power) + c);
    }

    Series parse(int trunc) {
        Series acc(trunc);
        skip_ws();
        int sign = 1;
        if (peek() == '-') { sign = -1; ++pos; }
        else if (peek() == '+') ++pos;
        parse_term(sign, acc);
        while (!at_end()) {
            char op = peek();
            if (op != '+' && op != '-') fail("expected '+' or '-' between terms");
            ++pos;
            parse_term(op == '-' ? -1 : 1, acc);
        }
        return acc;
    }
};

}  // namespace

Series parse_series(const std::string& text, int trunc, int line) {
    SeriesParser p(text, line);
    return p.parse(trunc);
}

}  // namespace abmod
