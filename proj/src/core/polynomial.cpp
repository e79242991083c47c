#include "shannon/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "shannon/error.hpp"

namespace shannon {

namespace {

Exponent checked_add(Exponent a, Exponent b) {
    Exponent out;
    if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::Overflow, "exponent overflow");
    return out;
}

Exponent checked_mul(Exponent a, Exponent b) {
    Exponent out;
    if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::Overflow, "exponent overflow");
    return out;
}

void check_budget(std::size_t terms) {
    if (terms > kTermBudget) {
        fail(ErrorCode::ExpressionSwell, "polynomial exceeded " + std::to_string(kTermBudget) + " terms");
    }
}

Monomial monomial_power(const Monomial& m, Exponent k) {
    std::vector<Exponent> e(m.exponents().begin(), m.exponents().end());
    for (auto& x : e) x = checked_mul(x, k);
    return Monomial(std::move(e));
}

Rational rational_power(const Rational& r, Exponent k) {
    if (k > std::numeric_limits<unsigned long>::max()) fail(ErrorCode::Overflow, "coefficient power too large");
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(k));
    out.canonicalize();
    return out;
}

} // namespace

Monomial Monomial::unit(std::size_t dimension, std::size_t variable, Exponent power) {
    Monomial m(dimension);
    m.exponents_.at(variable) = power;
    return m;
}

Exponent Monomial::degree() const {
    Exponent total = 0;
    for (auto e : exponents_) total = checked_add(total, e);
    return total;
}

bool Monomial::is_one() const noexcept {
    return std::all_of(exponents_.begin(), exponents_.end(), [](Exponent e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (other.dimension() != dimension()) fail(ErrorCode::DimensionMismatch, "monomial dimensions differ");
    std::vector<Exponent> e(exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(e[i], other.exponents_[i]);
    return Monomial(std::move(e));
}

Monomial Monomial::with_exponent(std::size_t variable, Exponent power) const {
    Monomial m(*this);
    m.exponents_.at(variable) = power;
    return m;
}

Exponent OrderValue::value() const {
    if (infinite_) fail(ErrorCode::Internal, "value() of an infinite order");
    return value_;
}

std::string to_string(const OrderValue& v) {
    return v.is_infinite() ? std::string("INFINITY") : std::to_string(v.value());
}

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {}

Polynomial Polynomial::constant(std::size_t dimension, const Rational& value) {
    Polynomial p(dimension);
    p.add_term(Monomial(dimension), value);
    return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t index) {
    if (index >= dimension) fail(ErrorCode::DimensionMismatch, "variable index out of range");
    Polynomial p(dimension);
    p.add_term(Monomial::unit(dimension, index), Rational(1));
    return p;
}

Polynomial Polynomial::term(const Monomial& monomial, const Rational& coefficient) {
    Polynomial p(monomial.dimension());
    p.add_term(monomial, coefficient);
    return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(dimension_)); }

void Polynomial::add_term(const Monomial& monomial, const Rational& coefficient) {
    if (monomial.dimension() != dimension_) fail(ErrorCode::DimensionMismatch, "monomial dimension differs from polynomial");
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::check_dimension(const Polynomial& other) const {
    if (other.dimension_ != dimension_) {
        fail(ErrorCode::DimensionMismatch, "polynomial dimensions differ (" + std::to_string(dimension_) + " vs " +
                                               std::to_string(other.dimension_) + ")");
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dimension(b);
    Polynomial out(a.dimension_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            out.add_term(ma * mb, ca * cb);
        }
        check_budget(out.term_count());
    }
    return out;
}

Polynomial Polynomial::pow(Exponent exponent) const {
    if (terms_.size() == 1) {
        const auto& [m, c] = *terms_.begin();
        return term(monomial_power(m, exponent), rational_power(c, exponent));
    }
    Polynomial result = constant(dimension_, Rational(1));
    Polynomial base(*this);
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

Exponent Polynomial::min_exponent(std::size_t variable) const {
    if (terms_.empty()) return 0;
    Exponent m = std::numeric_limits<Exponent>::max();
    for (const auto& [mono, c] : terms_) m = std::min(m, mono[variable]);
    return m;
}

OrderValue ord(const Polynomial& f) {
    if (f.is_zero()) return OrderValue::infinity();
    Exponent best = std::numeric_limits<Exponent>::max();
    for (const auto& [m, c] : f.terms()) best = std::min(best, m.degree());
    return OrderValue(best);
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
    const std::size_t d = f.dimension();
    if (images.size() != d) {
        fail(ErrorCode::DimensionMismatch, "substitute: expected " + std::to_string(d) + " images, got " +
                                               std::to_string(images.size()));
    }
    std::size_t target = d;
    for (const auto& img : images) {
        if (img.dimension() != images.front().dimension()) fail(ErrorCode::DimensionMismatch, "substitute: image dimensions differ");
        target = img.dimension();
    }
    if (target != d) fail(ErrorCode::DimensionMismatch, "substitute: image dimension differs from source");

    std::vector<std::unordered_map<Exponent, Polynomial>> power_cache(d);
    auto power_of = [&](std::size_t var, Exponent k) -> const Polynomial& {
        auto it = power_cache[var].find(k);
        if (it != power_cache[var].end()) return it->second;
        return power_cache[var].emplace(k, images[var].pow(k)).first->second;
    };

    Polynomial out(target);
    for (const auto& [mono, coeff] : f.terms()) {
        Polynomial piece = Polynomial::constant(target, coeff);
        for (std::size_t i = 0; i < d && !piece.is_zero(); ++i) {
            if (mono[i] == 0) continue;
            piece = piece * power_of(i, mono[i]);
        }
        out += piece;
        check_budget(out.term_count());
    }
    return out;
}

Polynomial exact_divide_by_pivot_power(const Polynomial& f, std::size_t pivot, Exponent k) {
    if (pivot >= f.dimension()) fail(ErrorCode::DimensionMismatch, "pivot index out of range");
    if (k == 0) return f;
    Polynomial out(f.dimension());
    for (const auto& [mono, coeff] : f.terms()) {
        if (mono[pivot] < k) {
            fail(ErrorCode::NotDivisible, "term has pivot exponent " + std::to_string(mono[pivot]) +
                                              " < " + std::to_string(k));
        }
        out.add_term(mono.with_exponent(pivot, mono[pivot] - k), coeff);
    }
    return out;
}

std::vector<std::string> default_variable_names(std::size_t dimension) {
    std::vector<std::string> names;
    if (dimension <= 3) {
        const char* base[] = {"x", "y", "z"};
        for (std::size_t i = 0; i < dimension; ++i) names.emplace_back(base[i]);
    } else {
        for (std::size_t i = 0; i < dimension; ++i) names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

} // namespace shannon
