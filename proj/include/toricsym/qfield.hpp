#pragma once

// Exact arithmetic in Q and Q(sqrt d), and the declared field table used to
// evaluate condition (star) on a base field.

#include "toricsym/intlin.hpp"

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toricsym {

using Rational = mpq_class;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_squarefree(const Integer& d);

// a + b sqrt(d). d == 1 marks the base field Q (then b == 0).
class QuadElement {
public:
  QuadElement() = default;
  explicit QuadElement(Integer d, Rational a = 0, Rational b = 0);

  static QuadElement rational(Rational a) { return QuadElement(Integer(1), std::move(a)); }
  static QuadElement sqrt_of(const Integer& d) { return QuadElement(d, 0, 1); }

  const Integer& d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  QuadElement conjugate() const { return QuadElement(d_, a_, -b_); }

  QuadElement operator+(const QuadElement& o) const;
  QuadElement operator-(const QuadElement& o) const;
  QuadElement operator*(const QuadElement& o) const;
  QuadElement operator/(const QuadElement& o) const;
  QuadElement operator-() const { return QuadElement(d_, -a_, -b_); }

  // Equality across fields compares values: a rational is equal to the
  // same rational embedded in any Q(sqrt d).
  bool operator==(const QuadElement& o) const;

  std::string to_string() const;

private:
  // Lifts a rational operand into the other operand's field.
  static Integer common_field(const QuadElement& x, const QuadElement& y);

  Integer d_ = 1;
  Rational a_ = 0;
  Rational b_ = 0;
};

// Evaluates an arithmetic expression over Q(sqrt d). Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | atom ('^' nonneg-int)?
//   atom   := integer | 's' | 'sqrt(' integer ')' | '(' expr ')'
// 's' denotes sqrt(d); sqrt(k) must have k == d (or be a perfect square).
QuadElement quad_eval(std::string_view expr, const Integer& d);

enum class FieldKind { Rationals, Reals, Quadratic };

struct FieldDescriptor {
  std::string name;
  FieldKind kind = FieldKind::Rationals;
  Integer d = 1;  // only for Quadratic
  // (2): -1 is not a sum of two squares.
  bool star_clause2 = true;
  // (3): sqrt 5 is in the field, or adjoining it keeps clause (2).
  bool star_clause3 = true;
  std::optional<std::pair<QuadElement, QuadElement>> witness;
};

// Checks the descriptor's own invariants (squarefree d, witness lives in the
// field and verifies, Q and R declare clause (2)).
void check_descriptor(const FieldDescriptor& f);

bool verify_negative_one_witness(const FieldDescriptor& f);
bool satisfies_star(const FieldDescriptor& f);

// Q, R, Q(sqrt 5), Q(sqrt -1), Q(sqrt -3), Q(sqrt -7).
const std::vector<FieldDescriptor>& builtin_fields();
const FieldDescriptor& builtin_field(std::string_view name);

// The pair ((1 + sqrt -3)/2, (1 - sqrt -3)/2).
std::pair<QuadElement, QuadElement> sqrt_minus3_witness();

}  // namespace toricsym
