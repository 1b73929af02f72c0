#pragma once

// JSON field documents:
//
//   {
//     "m": 3, "n": 2,
//     "description": "...",
//     "modes": [ {"parity": "cos", "j": 1, "k": 0, "value": "1"}, ... ]
//   }
//
// A string value is an exact rational ("p/q", integer, or exact decimal); a
// JSON number is a floating coefficient.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kolmo/rational.hpp"
#include "kolmo/trigpoly.hpp"

namespace kolmo {

struct FieldTerm {
  Parity parity = Parity::kCos;
  int j = 0;
  int k = 0;
  std::variant<Rational, double> value;
};

/// Trig polynomial with double coefficients; derivatives are taken termwise.
class FloatField {
 public:
  struct Term {
    Mode mode;
    double value;
  };

  FloatField() = default;
  explicit FloatField(std::vector<Term> terms) : terms_(std::move(terms)) {}
  static FloatField from(const TrigPoly& p);

  const std::vector<Term>& terms() const { return terms_; }
  double eval(double x, double y) const;
  FloatField dx() const;
  FloatField dy() const;

 private:
  std::vector<Term> terms_;
};

struct FieldFile {
  int m = 0;
  int n = 0;
  std::string description;
  std::vector<FieldTerm> modes;
  /// Extra string-valued keys written after "modes" (e.g. "certified_q").
  std::vector<std::pair<std::string, std::string>> extras;

  /// True when every coefficient is an exact rational.
  bool exact() const;
  /// Throws std::invalid_argument when some coefficient is floating.
  TrigPoly to_trigpoly() const;
  FloatField to_float_field() const;

  static FieldFile from_trigpoly(int m, int n, std::string description, const TrigPoly& f);

  std::string to_json() const;
  /// Throws std::invalid_argument with a description of the first problem.
  static FieldFile parse(const std::string& text);

  static FieldFile read(const std::string& path);
  void write(const std::string& path) const;
};

}  // namespace kolmo
