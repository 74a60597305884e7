#include "toricsym/qfield.hpp"

#include <cctype>
#include <sstream>

namespace toricsym {

bool is_squarefree(const Integer& d) {
  Integer n = abs(d);
  if (n == 0) return false;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

QuadElement::QuadElement(Integer d, Rational a, Rational b) : d_(std::move(d)), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 0 || !is_squarefree(d_)) throw FieldError("QuadElement: d = " + d_.get_str() + " is not squarefree");
  if (d_ == 1 && b_ != 0) throw FieldError("QuadElement: nonzero sqrt part over Q");
}

Integer QuadElement::common_field(const QuadElement& x, const QuadElement& y) {
  if (x.d_ == y.d_) return x.d_;
  if (x.d_ == 1) return y.d_;
  if (y.d_ == 1) return x.d_;
  throw FieldError("mixed fields: Q(sqrt " + x.d_.get_str() + ") and Q(sqrt " + y.d_.get_str() + ")");
}

QuadElement QuadElement::operator+(const QuadElement& o) const {
  Integer d = common_field(*this, o);
  return QuadElement(d, a_ + o.a_, b_ + o.b_);
}

QuadElement QuadElement::operator-(const QuadElement& o) const {
  Integer d = common_field(*this, o);
  return QuadElement(d, a_ - o.a_, b_ - o.b_);
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
  Integer d = common_field(*this, o);
  Rational rd(d);
  return QuadElement(d, a_ * o.a_ + rd * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
}

QuadElement QuadElement::operator/(const QuadElement& o) const {
  Integer d = common_field(*this, o);
  if (o.is_zero()) throw FieldError("division by zero");
  // x / y = x * conj(y) / N(y); N(y) != 0 since d is not a square.
  QuadElement lifted(d, o.a_, o.b_);
  Rational n = lifted.norm();
  QuadElement num = QuadElement(d, a_, b_) * lifted.conjugate();
  return QuadElement(d, num.a_ / n, num.b_ / n);
}

bool QuadElement::operator==(const QuadElement& o) const {
  if (a_ != o.a_ || b_ != o.b_) return false;
  return b_ == 0 || d_ == o.d_;
}

std::string QuadElement::to_string() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
    return os.str();
  }
  if (a_ != 0) os << a_ << (b_ > 0 ? " + " : " - ");
  else if (b_ < 0) os << "-";
  Rational ab = abs(b_);
  if (ab != 1) os << ab << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

namespace {

class ExprParser {
public:
  ExprParser(std::string_view s, const Integer& d) : s_(s), d_(d) {}

  QuadElement parse() {
    QuadElement v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FieldError("quad_eval: " + what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  QuadElement expr() {
    QuadElement v = term();
    for (;;) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }
  QuadElement term() {
    QuadElement v = factor();
    for (;;) {
      if (accept('*')) v = v * factor();
      else if (accept('/')) v = v / factor();
      else return v;
    }
  }
  QuadElement factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    QuadElement base = atom();
    if (accept('^')) {
      Integer e = integer();
      QuadElement r = QuadElement::rational(1);
      for (Integer i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }
  QuadElement atom() {
    skip_ws();
    if (accept('(')) {
      QuadElement v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && s_.substr(pos_, 5) == "sqrt(") {
      pos_ += 5;
      bool neg = accept('-');
      Integer k = integer();
      if (neg) k = -k;
      if (!accept(')')) fail("expected ')'");
      return sqrt_value(k);
    }
    if (pos_ < s_.size() && s_[pos_] == 's') {
      ++pos_;
      return sqrt_value(d_);
    }
    return QuadElement::rational(Rational(integer()));
  }
  QuadElement sqrt_value(const Integer& k) {
    if (k >= 0) {
      Integer r = sqrt(k);
      if (r * r == k) return QuadElement::rational(Rational(r));
    }
    if (k != d_) fail("sqrt(" + k.get_str() + ") is not in Q(sqrt " + d_.get_str() + ")");
    return QuadElement::sqrt_of(d_);
  }

  std::string_view s_;
  Integer d_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadElement quad_eval(std::string_view expr, const Integer& d) { return ExprParser(expr, d).parse(); }

void check_descriptor(const FieldDescriptor& f) {
  if (f.kind == FieldKind::Quadratic && (f.d == 1 || !is_squarefree(f.d)))
    throw FieldError(f.name + ": d = " + f.d.get_str() + " is not a squarefree integer != 0, 1");
  if (f.kind != FieldKind::Quadratic && !f.star_clause2)
    throw FieldError(f.name + ": Q and R must declare clause (2)");
  if (!f.witness) return;
  if (f.kind == FieldKind::Reals) throw FieldError(f.name + ": witnesses over R are not representable");
  const Integer field_d = f.kind == FieldKind::Quadratic ? f.d : Integer(1);
  for (const QuadElement* x : {&f.witness->first, &f.witness->second})
    if (x->b() != 0 && x->d() != field_d) throw FieldError(f.name + ": witness element outside the field");
  if (!verify_negative_one_witness(f)) throw FieldError(f.name + ": witness does not satisfy a^2 + b^2 = -1");
}

bool verify_negative_one_witness(const FieldDescriptor& f) {
  if (!f.witness) throw FieldError(f.name + ": no witness present");
  const auto& [a, b] = *f.witness;
  return a * a + b * b == QuadElement::rational(-1);
}

bool satisfies_star(const FieldDescriptor& f) {
  if (f.witness && verify_negative_one_witness(f)) {
    if (f.star_clause2) throw FieldError(f.name + ": declares clause (2) but carries a verifying witness");
    return false;
  }
  // Clause (1): every descriptor kind has characteristic zero.
  return f.star_clause2 && f.star_clause3;
}

std::pair<QuadElement, QuadElement> sqrt_minus3_witness() {
  const Integer d(-3);
  return {QuadElement(d, Rational(1, 2), Rational(1, 2)), QuadElement(d, Rational(1, 2), Rational(-1, 2))};
}

const std::vector<FieldDescriptor>& builtin_fields() {
  static const std::vector<FieldDescriptor> table = [] {
    std::vector<FieldDescriptor> t;
    t.push_back({"Q", FieldKind::Rationals, Integer(1), true, true, std::nullopt});
    t.push_back({"R", FieldKind::Reals, Integer(1), true, true, std::nullopt});
    t.push_back({"Q(sqrt5)", FieldKind::Quadratic, Integer(5), true, true, std::nullopt});
    t.push_back({"Q(sqrt-1)", FieldKind::Quadratic, Integer(-1), false, false,
                 std::pair{QuadElement::sqrt_of(Integer(-1)), QuadElement::rational(0)}});
    t.push_back({"Q(sqrt-3)", FieldKind::Quadratic, Integer(-3), false, false, sqrt_minus3_witness()});
    // -1 is not a sum of two squares in Q(sqrt -7), but it is one in
    // Q(sqrt -7, sqrt 5), so clause (3) fails.
    t.push_back({"Q(sqrt-7)", FieldKind::Quadratic, Integer(-7), true, false, std::nullopt});
    for (const auto& f : t) check_descriptor(f);
    return t;
  }();
  return table;
}

const FieldDescriptor& builtin_field(std::string_view name) {
  for (const auto& f : builtin_fields())
    if (f.name == name) return f;
  throw FieldError("unknown field: " + std::string(name));
}

}  // namespace toricsym
