#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shannon/rational.hpp"

namespace shannon {

using Exponent = std::uint64_t;

/// Exponent vector of a monomial in the parameters of one stage.
class Monomial {
public:
    explicit Monomial(std::size_t dimension) : exponents_(dimension, 0) {}
    explicit Monomial(std::vector<Exponent> exponents) : exponents_(std::move(exponents)) {}

    static Monomial unit(std::size_t dimension, std::size_t variable, Exponent power = 1);

    std::size_t dimension() const noexcept { return exponents_.size(); }
    Exponent operator[](std::size_t i) const { return exponents_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exponents_; }

    /// Total degree; throws Overflow when it does not fit.
    Exponent degree() const;
    bool is_one() const noexcept;

    Monomial operator*(const Monomial& other) const;
    Monomial with_exponent(std::size_t variable, Exponent power) const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<Exponent> exponents_;
};

/// ord value of the order valuation: a natural number or infinity (zero element only).
class OrderValue {
public:
    constexpr OrderValue() = default;
    constexpr explicit OrderValue(Exponent value) : value_(value), infinite_(false) {}
    static constexpr OrderValue infinity() {
        OrderValue v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    /// Precondition: finite.
    Exponent value() const;

    friend constexpr bool operator==(const OrderValue&, const OrderValue&) = default;
    friend constexpr std::strong_ordering operator<=>(const OrderValue& a, const OrderValue& b) {
        if (a.infinite_ || b.infinite_) {
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        }
        return a.value_ <=> b.value_;
    }

private:
    Exponent value_ = 0;
    bool infinite_ = false;
};

std::string to_string(const OrderValue& v);

/// Sparse polynomial with rational coefficients in `dimension` variables,
/// read as an element of the polynomial ring localized at the origin.
/// Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(std::size_t dimension);

    static Polynomial zero(std::size_t dimension) { return Polynomial(dimension); }
    static Polynomial constant(std::size_t dimension, const Rational& value);
    static Polynomial variable(std::size_t dimension, std::size_t index);
    static Polynomial term(const Monomial& monomial, const Rational& coefficient);

    std::size_t dimension() const noexcept { return dimension_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;

    /// Adds `coefficient * monomial`, dropping the entry if it cancels.
    void add_term(const Monomial& monomial, const Rational& coefficient);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    Polynomial pow(Exponent exponent) const;

    /// Greatest exponent k such that variable^k divides every term (0 for the zero polynomial).
    Exponent min_exponent(std::size_t variable) const;

    bool operator==(const Polynomial& other) const = default;

private:
    void check_dimension(const Polynomial& other) const;

    std::size_t dimension_;
    TermMap terms_;
};

/// Order valuation of the regular local ring at the origin: minimum total
/// degree of a term, infinity for zero.
OrderValue ord(const Polynomial& f);

/// Replaces variable i by images[i] and expands.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);

/// Removes pivot^k from every term. Throws NotDivisible if some term has a
/// smaller pivot exponent.
Polynomial exact_divide_by_pivot_power(const Polynomial& f, std::size_t pivot, Exponent k);

/// Upper limit on the number of stored terms produced by a single
/// substitution or product; exceeding it throws ExpressionSwell.
inline constexpr std::size_t kTermBudget = 2'000'000;

// Text form: integer or fraction coefficients, declared variable names, `^`
// for non-negative integer powers, `*`, `+`, `-`, parentheses, and division
// by nonzero constants. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables);
std::string to_string(const Polynomial& f, std::span<const std::string> variables);

/// x, y, z for d <= 3, otherwise x1..xd.
std::vector<std::string> default_variable_names(std::size_t dimension);

} // namespace shannon
