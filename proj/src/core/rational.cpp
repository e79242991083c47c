#include "shannon/rational.hpp"

#include <cctype>

#include "shannon/error.hpp"

namespace shannon {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = trim(s.substr(0, slash));
    if (!is_integer_literal(num)) fail(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
    Rational r(parse_integer(num));
    if (slash != std::string_view::npos) {
        auto den = trim(s.substr(slash + 1));
        if (!is_integer_literal(den)) fail(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
        Integer d = parse_integer(den);
        if (d == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        r = Rational(r.get_num(), d);
        r.canonicalize();
    }
    return r;
}

std::string to_string(const Rational& raw) {
    Rational value = raw;
    value.canonicalize();
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_decimal(const Rational& value, unsigned digits) {
    Integer scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rational magnitude = value < 0 ? Rational(-value) : value;
    magnitude *= scale;
    Integer scaled = magnitude.get_num() / magnitude.get_den();
    std::string body = scaled.get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    if (value < 0) out.insert(0, "-");
    return out;
}

Integer floor(const Rational& value) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& value) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational pow2(long exponent) {
    Integer p = 1;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
    if (exponent < 0) {
        Rational r(Integer(1), p);
        r.canonicalize();
        return r;
    }
    return Rational(p);
}

} // namespace shannon
