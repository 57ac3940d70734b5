#include "rational.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>

namespace affine {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational::Rational(long num, long den) : v_(0) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) return std::nullopt;

    mpq_class value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        const std::string_view num = body.substr(0, slash);
        const std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        value = mpq_class(mpz_class(std::string(num), 10), d);
        value.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        const std::string_view whole = body.substr(0, dot);
        const std::string_view frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
        mpz_class scaled(whole.empty() ? "0" : std::string(whole), 10);
        mpz_class ten_pow = 1;
        for (size_t i = 0; i < frac.size(); ++i) ten_pow *= 10;
        scaled *= ten_pow;
        if (!frac.empty()) scaled += mpz_class(std::string(frac), 10);
        value = mpq_class(scaled, ten_pow);
        value.canonicalize();
    } else {
        if (!all_digits(body)) return std::nullopt;
        value = mpq_class(mpz_class(std::string(body), 10));
    }
    if (negative) value = -value;
    return Rational(std::move(value));
}

std::string Rational::decimal(int digits) const {
    const mpz_class num = v_.get_num();
    const mpz_class den = v_.get_den();
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class scaled = abs(num) * scale;
    // round half away from zero
    mpz_class q = (2 * scaled + den) / (2 * den);
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    std::string frac = s.substr(s.size() - digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    if (is_negative() && out.find_first_not_of("0.") != std::string::npos) out.insert(0, 1, '-');
    return out;
}

}  // namespace affine
