#pragma once

// Small complex expression language used for custom defining functions and
// scalar fields on the command line:
//   numbers, i, pi, variables z1..zn, + - * / ^, parentheses and the
//   functions re, im, abs, conj, exp, log, sqrt, sin, cos.

#include "plurikernel/core.hpp"

#include <cctype>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace plurikernel {

class Expression {
public:
    using Node = std::function<Complex(const CVec&)>;

    static Expression parse(std::string_view text, int dimension)
    {
        Parser parser{text, 0, dimension};
        Node root = parser.parse_expr();
        parser.skip_ws();
        if (parser.pos != text.size())
            parser.error("unexpected trailing input");
        return Expression(std::string(text), dimension, std::move(root));
    }

    Complex evaluate(const CVec& z) const
    {
        if (z.size() != dimension_)
            fail(ErrorKind::invalid_argument, "expression '" + text_ + "' expects dimension " +
                                                  std::to_string(dimension_));
        return root_(z);
    }

    /// Real part of the value; the imaginary part is required to vanish to
    /// `imag_tolerance` relative to the magnitude.
    double evaluate_real(const CVec& z, double imag_tolerance = 1e-9) const
    {
        const Complex v = evaluate(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorKind::malformed_function, "non-finite value of '" + text_ + "'");
        if (std::abs(v.imag()) > imag_tolerance * std::max(1.0, std::abs(v.real())))
            fail(ErrorKind::malformed_function, "expression '" + text_ + "' is not real-valued");
        return v.real();
    }

    const std::string& text() const { return text_; }
    int dimension() const { return dimension_; }

private:
    Expression(std::string text, int dimension, Node root)
        : text_(std::move(text)), dimension_(dimension), root_(std::move(root))
    {
    }

    struct Parser {
        std::string_view src;
        std::size_t pos;
        int dimension;

        [[noreturn]] void error(const std::string& what) const
        {
            fail(ErrorKind::invalid_argument,
                 "expression parse error: " + what + " at offset " + std::to_string(pos),
                 std::string(src));
        }

        void skip_ws()
        {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }

        bool accept(char c)
        {
            skip_ws();
            if (pos < src.size() && src[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        Node parse_expr()
        {
            Node lhs = parse_term();
            for (;;) {
                if (accept('+')) {
                    Node rhs = parse_term();
                    lhs = [lhs, rhs](const CVec& z) { return lhs(z) + rhs(z); };
                } else if (accept('-')) {
                    Node rhs = parse_term();
                    lhs = [lhs, rhs](const CVec& z) { return lhs(z) - rhs(z); };
                } else {
                    return lhs;
                }
            }
        }

        Node parse_term()
        {
            Node lhs = parse_unary();
            for (;;) {
                if (accept('*')) {
                    Node rhs = parse_unary();
                    lhs = [lhs, rhs](const CVec& z) { return lhs(z) * rhs(z); };
                } else if (accept('/')) {
                    Node rhs = parse_unary();
                    lhs = [lhs, rhs](const CVec& z) { return lhs(z) / rhs(z); };
                } else {
                    return lhs;
                }
            }
        }

        Node parse_unary()
        {
            if (accept('-')) {
                Node inner = parse_unary();
                return [inner](const CVec& z) { return -inner(z); };
            }
            if (accept('+')) return parse_unary();
            return parse_power();
        }

        Node parse_power()
        {
            Node base = parse_primary();
            if (!accept('^')) return base;
            Node expo = parse_unary();
            return [base, expo](const CVec& z) {
                const Complex b = base(z);
                const Complex e = expo(z);
                if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64) {
                    const int k = static_cast<int>(e.real());
                    Complex r = 1.0;
                    for (int j = 0; j < std::abs(k); ++j) r *= b;
                    return k >= 0 ? r : 1.0 / r;
                }
                return std::pow(b, e);
            };
        }

        Node parse_primary()
        {
            skip_ws();
            if (pos >= src.size()) error("unexpected end of input");
            const char c = src[pos];
            if (c == '(') {
                ++pos;
                Node inner = parse_expr();
                if (!accept(')')) error("expected ')'");
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
            error(std::string("unexpected character '") + c + "'");
        }

        Node parse_number()
        {
            const std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
                ++pos;
            if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
                std::size_t look = pos + 1;
                if (look < src.size() && (src[look] == '+' || src[look] == '-')) ++look;
                if (look < src.size() && std::isdigit(static_cast<unsigned char>(src[look]))) {
                    pos = look;
                    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
                }
            }
            double value = 0.0;
            try {
                value = std::stod(std::string(src.substr(start, pos - start)));
            } catch (const std::exception&) {
                error("bad number");
            }
            return [value](const CVec&) { return Complex(value); };
        }

        Node parse_identifier()
        {
            const std::size_t start = pos;
            while (pos < src.size() && std::isalnum(static_cast<unsigned char>(src[pos]))) ++pos;
            const std::string name(src.substr(start, pos - start));

            if (name == "i") return [](const CVec&) { return Complex(0.0, 1.0); };
            if (name == "pi") return [](const CVec&) { return Complex(std::numbers::pi); };
            if (name.size() >= 2 && name[0] == 'z' &&
                name.find_first_not_of("0123456789", 1) == std::string::npos) {
                const int j = std::stoi(name.substr(1));
                if (j < 1 || j > dimension) error("variable " + name + " out of range");
                return [j](const CVec& z) { return z(j - 1); };
            }

            using Fn = Complex (*)(Complex);
            Fn fn = nullptr;
            if (name == "re") fn = [](Complex a) { return Complex(a.real()); };
            else if (name == "im") fn = [](Complex a) { return Complex(a.imag()); };
            else if (name == "abs") fn = [](Complex a) { return Complex(std::abs(a)); };
            else if (name == "conj") fn = [](Complex a) { return std::conj(a); };
            else if (name == "exp") fn = [](Complex a) { return std::exp(a); };
            else if (name == "log") fn = [](Complex a) { return std::log(a); };
            else if (name == "sqrt") fn = [](Complex a) { return std::sqrt(a); };
            else if (name == "sin") fn = [](Complex a) { return std::sin(a); };
            else if (name == "cos") fn = [](Complex a) { return std::cos(a); };
            else error("unknown identifier '" + name + "'");

            if (!accept('(')) error("expected '(' after " + name);
            Node arg = parse_expr();
            if (!accept(')')) error("expected ')'");
            return [fn, arg](const CVec& z) { return fn(arg(z)); };
        }
    };

    std::string text_;
    int dimension_;
    Node root_;
};

}  // namespace plurikernel
