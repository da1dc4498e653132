#include "fracfix/problem.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracfix {

PolynomialSystem::PolynomialSystem(std::vector<std::vector<MonomialTerm>> comps,
                                   std::size_t nv)
    : components(std::move(comps)), n_vars(nv) {
    if (nv == 0) throw DimensionError("PolynomialSystem: n_vars must be positive");
    for (const auto& comp : components)
        for (const auto& t : comp)
            if (t.exponents.size() != nv)
                throw DimensionError("PolynomialSystem: term exponent count disagrees with n_vars");
}

namespace {

// Recursive-descent parser for the line-per-component grammar. Tracks
// line/column for error reporting.
class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    PolynomialSystem parse() {
        std::vector<std::vector<MonomialTerm>> comps;
        std::size_t max_var = 0;
        while (!at_end()) {
            skip_blank();
            if (at_end()) break;
            comps.push_back(parse_line(max_var));
        }
        if (comps.empty()) fail("expected at least one component line");
        for (auto& comp : comps)
            for (auto& t : comp) t.exponents.resize(max_var, 0);
        return PolynomialSystem(std::move(comps), max_var);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    void skip_spaces() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
    }

    void skip_blank() {
        skip_spaces();
        while (!at_end() && peek() == '\n') {
            advance();
            skip_spaces();
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "line " << line_ << ", col " << col_ << ": " << what;
        throw ParseError(os.str());
    }

    bool line_done() {
        skip_spaces();
        return at_end() || peek() == '\n';
    }

    std::vector<MonomialTerm> parse_line(std::size_t& max_var) {
        std::vector<MonomialTerm> terms;
        double sign = 1.0;
        skip_spaces();
        if (!line_done() && (peek() == '+' || peek() == '-')) {
            sign = peek() == '-' ? -1.0 : 1.0;
            advance();
        }
        terms.push_back(parse_term(sign, max_var));
        while (!line_done()) {
            if (peek() == '+') sign = 1.0;
            else if (peek() == '-') sign = -1.0;
            else fail("expected '+', '-' or end of line");
            advance();
            terms.push_back(parse_term(sign, max_var));
        }
        if (!at_end()) advance();  // consume the newline
        return terms;
    }

    MonomialTerm parse_term(double sign, std::size_t& max_var) {
        MonomialTerm t{Complex(sign, 0.0), {}};
        parse_factor(t, max_var);
        skip_spaces();
        while (!line_done() && peek() == '*') {
            advance();
            parse_factor(t, max_var);
            skip_spaces();
        }
        return t;
    }

    void parse_factor(MonomialTerm& t, std::size_t& max_var) {
        skip_spaces();
        if (line_done()) fail("expected a number, '(re,im)' or variable; got end of line");
        const char c = peek();
        if (c == '(') {
            advance();
            const double re = parse_real("real part");
            skip_spaces();
            if (line_done() || peek() != ',') fail("expected ',' in '(re,im)' pair");
            advance();
            const double im = parse_real("imaginary part");
            skip_spaces();
            if (line_done() || peek() != ')') fail("expected ')' closing '(re,im)' pair");
            advance();
            t.coeff *= Complex(re, im);
        } else if (c == 'x') {
            advance();
            const long idx = parse_unsigned("variable index");
            if (idx < 1) fail("variable index must be at least 1");
            long exp = 1;
            skip_spaces();
            if (!line_done() && peek() == '^') {
                advance();
                exp = parse_unsigned("exponent");
            }
            const auto var = static_cast<std::size_t>(idx);
            if (var > max_var) max_var = var;
            if (t.exponents.size() < var) t.exponents.resize(var, 0);
            t.exponents[var - 1] += static_cast<int>(exp);
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            t.coeff *= parse_real("number");
        } else {
            fail(std::string("expected a number, '(re,im)' or variable; got '") + c + "'");
        }
    }

    double parse_real(const char* what) {
        skip_spaces();
        const std::size_t start = pos_;
        if (!at_end() && (peek() == '+' || peek() == '-')) advance();
        bool digits = false;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) { advance(); digits = true; }
        if (!at_end() && peek() == '.') {
            advance();
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) { advance(); digits = true; }
        }
        if (!digits) fail(std::string("expected ") + what);
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            advance();
            if (!at_end() && (peek() == '+' || peek() == '-')) advance();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent digits");
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        return std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    }

    long parse_unsigned(const char* what) {
        skip_spaces();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected ") + what);
        long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            advance();
        }
        return v;
    }
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PolynomialSystem parse_polynomial_system(std::string_view text) {
    return PolyParser(text).parse();
}

std::string to_text(const PolynomialSystem& sys) {
    std::ostringstream os;
    for (std::size_t j = 0; j < sys.components.size(); ++j) {
        if (j) os << '\n';
        const auto& comp = sys.components[j];
        if (comp.empty()) { os << '0'; continue; }
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const MonomialTerm& t = comp[i];
            const bool real_coeff = t.coeff.imag() == 0.0;
            if (real_coeff) {
                const bool neg = std::signbit(t.coeff.real());
                if (i == 0) os << (neg ? "-" : "");
                else os << (neg ? " - " : " + ");
                os << format_double(std::abs(t.coeff.real()));
            } else {
                if (i) os << " + ";
                os << '(' << format_double(t.coeff.real()) << ','
                   << format_double(t.coeff.imag()) << ')';
            }
            for (std::size_t v = 0; v < t.exponents.size(); ++v) {
                if (t.exponents[v] == 0) continue;
                os << "*x" << (v + 1);
                if (t.exponents[v] > 1) os << '^' << t.exponents[v];
            }
        }
    }
    os << '\n';
    return os.str();
}

std::vector<MonomialTerm> symbolic_partial(const PolynomialSystem& sys,
                                           std::size_t component, std::size_t var) {
    if (component >= sys.components.size())
        throw DimensionError("symbolic_partial: component index out of range");
    if (var >= sys.n_vars)
        throw DimensionError("symbolic_partial: variable index out of range");
    std::vector<MonomialTerm> out;
    for (const MonomialTerm& t : sys.components[component]) {
        if (t.exponents[var] < 1) continue;
        MonomialTerm d = t;
        d.coeff *= static_cast<double>(t.exponents[var]);
        d.exponents[var] -= 1;
        out.push_back(std::move(d));
    }
    return out;
}

Complex eval_terms(const std::vector<MonomialTerm>& terms, const CVector& point) {
    Complex s = 0.0;
    for (const MonomialTerm& t : terms) {
        Complex p = t.coeff;
        for (std::size_t v = 0; v < t.exponents.size(); ++v) p *= ipow(point[v], t.exponents[v]);
        s += p;
    }
    return s;
}

Problem builtin_problem() {
    Problem p;
    p.dim = 2;
    p.f = [](const CVector& v) {
        const Complex x = v[0], y = v[1];
        return (2.0 - x * x + x * x * x * y) * std::cos(x) - (2.0 - y * y) * std::cos(y) -
               x * (5.0 - y * y * y * std::cos(y) - 2.0 * std::sin(x)) -
               y * (7.0 + 2.0 * std::sin(y));
    };
    p.grad = [](const CVector& v) {
        const Complex x = v[0], y = v[1];
        const Complex cx = std::cos(x), sx = std::sin(x);
        const Complex cy = std::cos(y), sy = std::sin(y);
        return CVector{
            3.0 * x * x * y * cx + y * y * y * cy + x * x * (1.0 - x * y) * sx - 5.0,
            x * x * x * cx + 3.0 * x * y * y * cy - y * y * (1.0 + x * y) * sy - 7.0};
    };
    p.hess = [](const CVector& v) {
        const Complex x = v[0], y = v[1];
        const Complex cx = std::cos(x), sx = std::sin(x);
        const Complex cy = std::cos(y), sy = std::sin(y);
        CMatrix h(2, 2);
        h(0, 0) = x * ((x + 6.0 * y - x * x * y) * cx + 2.0 * (1.0 - 3.0 * x * y) * sx);
        const Complex off = x * x * (3.0 * cx - x * sx) + y * y * (3.0 * cy - y * sy);
        h(0, 1) = off;
        h(1, 0) = off;
        h(1, 1) = -y * ((y - x * (6.0 - y * y)) * cy + 2.0 * (1.0 + 3.0 * x * y) * sy);
        return h;
    };
    return p;
}

Problem problem_from_system(PolynomialSystem sys) {
    if (sys.components.size() != sys.n_vars)
        throw DimensionError("problem_from_system: system must be square");
    const std::size_t n = sys.n_vars;

    std::vector<std::vector<std::vector<MonomialTerm>>> jac(n);
    for (std::size_t j = 0; j < n; ++j) {
        jac[j].resize(n);
        for (std::size_t k = 0; k < n; ++k) jac[j][k] = symbolic_partial(sys, j, k);
    }

    Problem p;
    p.dim = n;
    p.grad = [sys](const CVector& v) {
        CVector g(sys.n_vars);
        for (std::size_t j = 0; j < sys.n_vars; ++j) g[j] = eval_terms(sys.components[j], v);
        return g;
    };
    p.hess = [jac, n](const CVector& v) {
        CMatrix h(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) h(j, k) = eval_terms(jac[j][k], v);
        return h;
    };
    p.poly_form = std::move(sys);
    return p;
}

}  // namespace fracfix
