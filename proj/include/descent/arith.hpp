#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace descent {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;
using Point = std::vector<std::int64_t>;

// malformed user input (exit code 2)
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a computed result failed a check (exit code 1)
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// an explicit step or size budget ran out (exit code 3)
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational dot(const QVector& a, const QVector& b);
Integer dot(const ZVector& a, const ZVector& b);
Rational dot(const ZVector& a, const QVector& b);

QVector to_qvector(const ZVector& v);
QVector to_qvector(const Point& v);
ZVector to_zvector(const Point& v);
Point to_point(const ZVector& v);

bool is_zero(const QVector& v);
bool is_zero(const ZVector& v);

// divide by the gcd of the entries; zero vector stays zero
ZVector primitive(const ZVector& v);
// smallest positive integer multiple with integer entries, then made primitive
ZVector primitive_from_rational(const QVector& v);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const Integer& z);
std::int64_t floor_to_int64(const Rational& q);

Point point_add(const Point& a, const Point& b);
Point point_sub(const Point& a, const Point& b);
Point point_scale(const Point& a, std::int64_t c);
std::int64_t point_dot(const Point& a, const Point& b);

std::string format_point(const Point& p);
std::string format_qvector(const QVector& v);

}  // namespace descent
