#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/format.hpp"
#include "orlicz/morrey.hpp"

namespace orlicz {

// Hand-rolled JSON emission: report keys keep their insertion order and
// non-finite doubles come out as the strings "inf", "-inf", "nan" instead
// of null, so a failed fit stays readable in the output.

inline std::string json_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0.0 ? "\"inf\"" : "\"-inf\"";
  return g17(v);
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default: out += c;
    }
  }
  return out + "\"";
}

inline std::string json_array(std::span<const double> vals) {
  std::string out = "[";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += json_number(vals[i]);
  }
  return out + "]";
}

inline std::string to_json(const condition_witness& w, const std::string& pad) {
  std::string out = pad + "{\"x\": " + json_array(w.x);
  out += ", \"t\": " + json_number(w.t);
  out += ", \"lhs\": " + json_number(w.lhs);
  out += ", \"rhs\": " + json_number(w.rhs) + "}";
  return out;
}

inline std::string to_json(const condition_report& r, const std::string& pad = "") {
  std::string in = pad + "  ";
  std::string out = pad + "{\n";
  out += in + "\"condition\": " + json_string(r.condition) + ",\n";
  out += in + "\"passed\": " + (r.passed ? "true" : "false") + ",\n";
  out += in + "\"constants\": {";
  for (std::size_t i = 0; i < r.constants.size(); ++i) {
    if (i) out += ", ";
    out += json_string(r.constants[i].first) + ": " + json_number(r.constants[i].second);
  }
  out += "},\n";
  out += in + "\"witnesses\": [";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    out += (i ? ",\n" : "\n") + to_json(r.witnesses[i], in + "  ");
  }
  out += r.witnesses.empty() ? "],\n" : "\n" + in + "],\n";
  out += in + "\"grid\": " + json_string(r.grid) + "\n";
  out += pad + "}";
  return out;
}

inline std::string to_json(const morrey_report& r, const std::string& pad = "") {
  std::string in = pad + "  ";
  std::string out = pad + "{\n";
  out += in + "\"center\": " + json_array(r.center) + ",\n";
  out += in + "\"sigma\": " + json_number(r.sigma) + ",\n";
  out += in + "\"K_ref\": " + json_number(r.constant_reference) + ",\n";
  out += in + "\"max_ratio\": " + json_number(r.max_ratio) + ",\n";
  out += in + "\"worst_pair\": [" + json_array(r.arg_y1) + ", " + json_array(r.arg_y2) + "],\n";
  out += in + "\"samples\": " + std::to_string(r.samples) + ",\n";
  out += in + "\"grad_norm\": " + json_number(r.grad_norm) + ",\n";
  out += in + "\"family\": " + json_string(r.family) + ",\n";
  out += in + "\"resolution\": " + std::to_string(r.resolution) + ",\n";
  out += in + "\"seed\": " + std::to_string(r.seed) + "\n";
  out += pad + "}";
  return out;
}

} // namespace orlicz
