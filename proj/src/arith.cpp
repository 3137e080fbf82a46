#include "descent/arith.hpp"

#include <limits>
#include <sstream>

namespace descent {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t k = start; k < s.size(); ++k) {
        char c = s[k];
        if (c == '/') {
            if (seen_slash) throw InputError("bad rational literal: " + s);
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw InputError("bad rational literal: " + s);
        }
    }
    if (!digit_before || (seen_slash && !digit_after)) throw InputError("bad rational literal: " + s);
    std::string body = s[0] == '+' ? s.substr(1) : s;
    Rational q;
    if (q.set_str(body, 10) != 0) throw InputError("bad rational literal: " + s);
    if (seen_slash && q.get_den() == 0) throw InputError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Integer parse_integer(const std::string& s) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1) throw InputError("expected an integer: " + s);
    return q.get_num();
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational dot(const QVector& a, const QVector& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

Integer dot(const ZVector& a, const ZVector& b) {
    Integer s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

Rational dot(const ZVector& a, const QVector& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

QVector to_qvector(const ZVector& v) { return QVector(v.begin(), v.end()); }

QVector to_qvector(const Point& v) {
    QVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

ZVector to_zvector(const Point& v) {
    ZVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

Point to_point(const ZVector& v) {
    Point out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

bool is_zero(const QVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const ZVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

ZVector primitive(const ZVector& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0 || g == 1) return v;
    ZVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) mpz_divexact(out[k].get_mpz_t(), v[k].get_mpz_t(), g.get_mpz_t());
    return out;
}

ZVector primitive_from_rational(const QVector& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    ZVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        Rational y = v[k] * l;
        out[k] = y.get_num();
    }
    return primitive(out);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
    return r;
}

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

std::int64_t floor_to_int64(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return to_int64(f);
}

Point point_add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = checked_add(a[k], b[k]);
    return r;
}

Point point_sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = checked_sub(a[k], b[k]);
    return r;
}

Point point_scale(const Point& a, std::int64_t c) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = checked_mul(a[k], c);
    return r;
}

std::int64_t point_dot(const Point& a, const Point& b) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s = checked_add(s, checked_mul(a[k], b[k]));
    return s;
}

std::string format_point(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
    os << ')';
    return os.str();
}

std::string format_qvector(const QVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k].get_str();
    os << ')';
    return os.str();
}

}  // namespace descent
