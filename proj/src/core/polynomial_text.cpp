#include <algorithm>
#include <cctype>

#include "shannon/error.hpp"
#include "shannon/polynomial.hpp"

namespace shannon {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> variables)
        : text_(text), variables_(variables), dimension_(variables.size()) {}

    Polynomial run() {
        Polynomial p = expression();
        skip_blanks();
        if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::Parse, "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_blanks() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_blanks();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression() {
        skip_blanks();
        Polynomial acc(dimension_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        Polynomial first = product();
        acc += negate ? -first : first;
        for (;;) {
            if (accept('+')) acc += product();
            else if (accept('-')) acc -= product();
            else break;
        }
        return acc;
    }

    Polynomial product() {
        Polynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                Polynomial divisor = unary();
                if (divisor.term_count() != 1 || !divisor.terms().begin()->first.is_one()) {
                    error("division is only allowed by a nonzero constant");
                }
                acc *= 1 / divisor.terms().begin()->second;
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (accept('^')) {
            skip_blanks();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) error("expected a non-negative integer exponent");
            Integer e(std::string(text_.substr(start, pos_ - start)), 10);
            if (!e.fits_ulong_p()) error("exponent too large");
            base = base.pow(e.get_ui());
        }
        return base;
    }

    Polynomial primary() {
        skip_blanks();
        if (pos_ >= text_.size()) error("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')')) error("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Polynomial::constant(dimension_, Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string_view name = text_.substr(start, pos_ - start);
            auto it = std::find(variables_.begin(), variables_.end(), name);
            if (it == variables_.end()) {
                pos_ = start;
                error("unknown variable '" + std::string(name) + "'");
            }
            return Polynomial::variable(dimension_, static_cast<std::size_t>(it - variables_.begin()));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::span<const std::string> variables_;
    std::size_t dimension_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables) {
    if (variables.empty()) fail(ErrorCode::Parse, "no variables declared");
    return Parser(text, variables).run();
}

std::string to_string(const Polynomial& f, std::span<const std::string> variables) {
    if (variables.size() != f.dimension()) fail(ErrorCode::DimensionMismatch, "variable names do not match dimension");
    if (f.is_zero()) return "0";

    std::vector<std::pair<const Monomial*, const Rational*>> order;
    order.reserve(f.term_count());
    for (const auto& [m, c] : f.terms()) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        auto da = a.first->degree();
        auto db = b.first->degree();
        if (da != db) return da > db;
        return *b.first < *a.first;
    });

    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : order) {
        Rational magnitude = *coeff < 0 ? Rational(-*coeff) : *coeff;
        if (first) {
            if (*coeff < 0) out += "-";
        } else {
            out += *coeff < 0 ? " - " : " + ";
        }
        first = false;

        std::string factors;
        for (std::size_t i = 0; i < mono->dimension(); ++i) {
            auto e = (*mono)[i];
            if (e == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += variables[i];
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) {
            out += to_string(magnitude);
        } else if (magnitude == 1) {
            out += factors;
        } else {
            out += to_string(magnitude) + "*" + factors;
        }
    }
    return out;
}

} // namespace shannon
