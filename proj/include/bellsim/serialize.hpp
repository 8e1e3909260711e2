#pragma once

#include <json.hpp>

#include "bellsim/analysis.hpp"
#include "bellsim/qstate.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j) {
  return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

// XState <-> JSON; the basis order string makes files self-describing.
inline Json to_json(const XState& x) {
  return Json{{"basis", kBasisOrder},
              {"populations", {x.p11, x.p22, x.p33, x.p44}},
              {"c14", complex_to_json(x.c14)},
              {"c23", complex_to_json(x.c23)}};
}

inline XState xstate_from_json(const Json& j) {
  XState x;
  const auto& p = j.at("populations");
  x.p11 = p.at(0).get<double>();
  x.p22 = p.at(1).get<double>();
  x.p33 = p.at(2).get<double>();
  x.p44 = p.at(3).get<double>();
  x.c14 = complex_from_json(j.at("c14"));
  x.c23 = complex_from_json(j.at("c23"));
  return x;
}

// Dense density matrix <-> JSON (row-major 4x4 of {re, im} pairs).
inline Json to_json(const CMat4& m) {
  Json entries = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_to_json(m(i, j)));
    entries.push_back(row);
  }
  return Json{{"basis", kBasisOrder}, {"entries", entries}};
}

inline CMat4 density_from_json(const Json& j) {
  CMat4 m;
  const auto& entries = j.at("entries");
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) m(i, k) = complex_from_json(entries.at(i).at(k));
  return m;
}

inline Json to_json(const SweepRecord& r) {
  return Json{{"omega_t", r.omega_t}, {"b", r.b},       {"b1", r.b1},
              {"b2", r.b2},           {"u1", r.u1},     {"u2", r.u2},
              {"u3", r.u3},           {"c", r.c},       {"p11", r.p11},
              {"p22", r.p22},         {"p33", r.p33},   {"p44", r.p44},
              {"c14_abs", r.c14_abs}, {"c23_abs", r.c23_abs}};
}

}  // namespace bellsim
