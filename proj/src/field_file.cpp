#include "kolmo/field_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kolmo {

using ordered_json = nlohmann::ordered_json;

FloatField FloatField::from(const TrigPoly& p) {
  std::vector<Term> terms;
  for (const auto& [mode, c] : p.terms()) terms.push_back({mode, to_double(c)});
  return FloatField(std::move(terms));
}

double FloatField::eval(double x, double y) const {
  double v = 0.0;
  for (const Term& t : terms_) {
    const double theta = t.mode.j * x + t.mode.k * y;
    v += t.value * (t.mode.parity == Parity::kCos ? std::cos(theta) : std::sin(theta));
  }
  return v;
}

namespace {

FloatField differentiate(const FloatField& f, bool along_x) {
  std::vector<FloatField::Term> out;
  for (const auto& t : f.terms()) {
    const int w = along_x ? t.mode.j : t.mode.k;
    if (w == 0) continue;
    Mode mode = t.mode;
    if (mode.parity == Parity::kCos) {
      mode.parity = Parity::kSin;
      out.push_back({mode, -w * t.value});
    } else {
      mode.parity = Parity::kCos;
      out.push_back({mode, w * t.value});
    }
  }
  return FloatField(std::move(out));
}

}  // namespace

FloatField FloatField::dx() const { return differentiate(*this, true); }
FloatField FloatField::dy() const { return differentiate(*this, false); }

bool FieldFile::exact() const {
  for (const FieldTerm& t : modes) {
    if (!std::holds_alternative<Rational>(t.value)) return false;
  }
  return true;
}

TrigPoly FieldFile::to_trigpoly() const {
  TrigPoly p;
  for (const FieldTerm& t : modes) {
    const auto* q = std::get_if<Rational>(&t.value);
    if (!q) throw std::invalid_argument("field has floating coefficients; no exact form");
    p.add_term(t.parity, t.j, t.k, *q);
  }
  return p;
}

FloatField FieldFile::to_float_field() const {
  std::vector<FloatField::Term> terms;
  for (const FieldTerm& t : modes) {
    auto [mode, s] = canonical_mode(t.parity, t.j, t.k);
    if (s == 0) continue;
    const double v = std::holds_alternative<Rational>(t.value)
                         ? to_double(std::get<Rational>(t.value))
                         : std::get<double>(t.value);
    terms.push_back({mode, s * v});
  }
  return FloatField(std::move(terms));
}

FieldFile FieldFile::from_trigpoly(int m, int n, std::string description, const TrigPoly& f) {
  FieldFile file;
  file.m = m;
  file.n = n;
  file.description = std::move(description);
  for (const auto& [mode, c] : f.terms()) {
    file.modes.push_back(FieldTerm{mode.parity, mode.j, mode.k, c});
  }
  return file;
}

std::string FieldFile::to_json() const {
  ordered_json doc;
  doc["m"] = m;
  doc["n"] = n;
  doc["description"] = description;
  ordered_json list = ordered_json::array();
  for (const FieldTerm& t : modes) {
    ordered_json entry;
    entry["parity"] = to_string(t.parity);
    entry["j"] = t.j;
    entry["k"] = t.k;
    if (const auto* q = std::get_if<Rational>(&t.value)) {
      entry["value"] = to_string(*q);
    } else {
      entry["value"] = std::get<double>(t.value);
    }
    list.push_back(std::move(entry));
  }
  doc["modes"] = std::move(list);
  for (const auto& [key, value] : extras) doc[key] = value;
  return doc.dump(2) + "\n";
}

FieldFile FieldFile::parse(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("field file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("field file must be a JSON object");
  FieldFile file;
  try {
    file.m = doc.at("m").get<int>();
    file.n = doc.at("n").get<int>();
    if (doc.contains("description")) file.description = doc.at("description").get<std::string>();
    const auto& list = doc.at("modes");
    if (!list.is_array()) throw std::invalid_argument("\"modes\" must be an array");
    for (const auto& entry : list) {
      FieldTerm t;
      t.parity = parse_parity(entry.at("parity").get<std::string>());
      t.j = entry.at("j").get<int>();
      t.k = entry.at("k").get<int>();
      const auto& value = entry.at("value");
      if (value.is_string()) {
        t.value = parse_rational(value.get<std::string>());
      } else if (value.is_number()) {
        t.value = value.get<double>();
      } else {
        throw std::invalid_argument("mode value must be a string or a number");
      }
      file.modes.push_back(std::move(t));
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "m" || key == "n" || key == "description" || key == "modes") continue;
      if (value.is_string()) file.extras.emplace_back(key, value.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed field file: ") + e.what());
  }
  return file;
}

FieldFile FieldFile::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void FieldFile::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field file '" + path + "'");
  out << to_json();
}

}  // namespace kolmo
