#include "kolmo/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace kolmo {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational string");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw std::invalid_argument("bad denominator in '" + std::string(text) +
                                  "'");
    }
    Integer den(std::string(den_text), 10);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                  "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    }
    Integer whole = int_part.empty() ? Integer(0)
                                     : Integer(std::string(int_part), 10);
    Integer frac = frac_part.empty() ? Integer(0)
                                     : Integer(std::string(frac_part), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational q(whole * scale + frac, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  return Rational(parse_integer(text));
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
  if (max_den < 1) throw std::invalid_argument("rationalize: max_den < 1");

  // Work on the exact binary value of x so the expansion is deterministic.
  const Rational exact(x);
  Integer h1 = 1, k1 = 0;  // previous convergent
  Integer h2 = 0, k2 = 1;  // the one before
  Rational rest = exact;

  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h = a * h1 + h2;
    Integer k = a * k1 + k2;
    if (k > max_den) {
      Rational best(h1, k1);
      best.canonicalize();
      // Largest admissible semiconvergent (t h1 + h2) / (t k1 + k2).
      Integer t = (Integer(max_den) - k2) / k1;
      if (t > 0) {
        Rational semi(t * h1 + h2, t * k1 + k2);
        semi.canonicalize();
        if (abs(semi - exact) < abs(best - exact)) return semi;
      }
      return best;
    }
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    Rational frac = rest - Rational(a);
    if (frac == 0) {
      Rational r(h1, k1);
      r.canonicalize();
      return r;
    }
    rest = 1 / frac;
  }
}

}  // namespace kolmo
