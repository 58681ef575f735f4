// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/models.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qramsey/errors.hpp"

namespace qramsey {

using nlohmann::json;

HamiltonianSpec ModelConfig::effective_problem() const {
  if (!penalty) return problem;
  return problem.plus(build_penalty(conserved, penalty->q_target, penalty->lambda));
}

HamiltonianSpec build_heisenberg(const HeisenbergParams& p) {
  if (p.n_qubits < 2) throw ConfigError("heisenberg: need at least 2 qubits");
  if (p.b_prime.size() != static_cast<size_t>(p.n_qubits)) {
    throw ConfigError("heisenberg: b_prime length must equal n_qubits");
  }
  std::vector<Term> terms;
  const int n_bonds = p.boundary == Boundary::Periodic ? p.n_qubits : p.n_qubits - 1;
  for (int i = 0; i < n_bonds; ++i) {
    const int j = (i + 1) % p.n_qubits;
    for (Pauli op : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliString s(p.n_qubits);
      s.set_factor(i, op);
      s.set_factor(j, op);
      terms.push_back(Term{p.j, std::move(s)});
    }
  }
  for (int i = 0; i < p.n_qubits; ++i) {
    terms.push_back(Term{p.b_prime[static_cast<size_t>(i)],
                         PauliString::single(p.n_qubits, i, Pauli::Z)});
  }
  return HamiltonianSpec(p.n_qubits, std::move(terms)).canonical();
}

HamiltonianSpec build_driver(const DriverParams& p) {
  if (p.n_qubits < 2 || p.n_qubits % 2 != 0) {
    throw ConfigError("driver: n_qubits must be even and >= 2");
  }
  if (p.j_pair.size() != static_cast<size_t>(p.n_qubits / 2)) {
    throw ConfigError("driver: j_pair length must equal n_qubits/2");
  }
  if (p.b.size() != static_cast<size_t>(p.n_qubits)) {
    throw ConfigError("driver: b length must equal n_qubits");
  }
  std::vector<Term> terms;
  for (int k = 0; k < p.n_qubits / 2; ++k) {
    const int a = 2 * k, b = 2 * k + 1;
    for (Pauli op : {Pauli::X, Pauli::Y}) {
      PauliString s(p.n_qubits);
      s.set_factor(a, op);
      s.set_factor(b, op);
      terms.push_back(Term{p.j_pair[static_cast<size_t>(k)], std::move(s)});
    }
  }
  for (int i = 0; i < p.n_qubits; ++i) {
    terms.push_back(Term{p.b[static_cast<size_t>(i)],
                         PauliString::single(p.n_qubits, i, Pauli::Z)});
  }
  return HamiltonianSpec(p.n_qubits, std::move(terms)).canonical();
}

HamiltonianSpec build_total_magnetization(int n_qubits) {
  std::vector<Term> terms;
  for (int i = 0; i < n_qubits; ++i) {
    terms.push_back(Term{1.0, PauliString::single(n_qubits, i, Pauli::Z)});
  }
  return HamiltonianSpec(n_qubits, std::move(terms));
}

HamiltonianSpec build_penalty(const HamiltonianSpec& q_op, double q_target,
                              double lambda, int term_budget) {
  if (lambda <= 0.0) throw ConfigError("penalty: lambda must be positive");
  const int n = q_op.n_qubits();
  // S = Q - q * I, expanded symbolically; penalty = -lambda * S^2.
  std::vector<Term> s_terms = q_op.canonical().terms();
  s_terms.push_back(Term{-q_target, PauliString(n)});
  std::map<std::vector<Pauli>, std::complex<double>> acc;
  for (const Term& a : s_terms) {
    for (const Term& b : s_terms) {
      auto [phase, prod] = multiply(a.string, b.string);
      acc[prod.factors()] += phase * a.coefficient * b.coefficient;
      if (acc.size() > static_cast<size_t>(term_budget)) {
        throw ConfigError("penalty expansion exceeds term budget of " +
                          std::to_string(term_budget));
      }
    }
  }
  std::vector<Term> out;
  for (const auto& [factors, coeff] : acc) {
    if (std::abs(coeff.imag()) > 1e-12 * (1.0 + std::abs(coeff.real()))) {
      throw PhysicsError("penalty expansion produced a non-Hermitian term");
    }
    if (coeff.real() == 0.0) continue;
    out.push_back(Term{-lambda * coeff.real(), PauliString(n, factors)});
  }
  return HamiltonianSpec(n, std::move(out)).canonical();
}

GhzHamiltonians build_ghz_hamiltonians(int n_qubits, double b1, double b2,
                                       double b3, const std::vector<double>& b_vec) {
  if (n_qubits % 2 != 0) throw ConfigError("ghz hamiltonians: n_qubits must be even");
  if (b_vec.size() != static_cast<size_t>(n_qubits)) {
    throw ConfigError("ghz hamiltonians: b_vec length must equal n_qubits");
  }
  auto sum_single = [n_qubits](Pauli op, auto coeff_fn) {
    std::vector<Term> terms;
    for (int i = 0; i < n_qubits; ++i) {
      terms.push_back(Term{coeff_fn(i), PauliString::single(n_qubits, i, op)});
    }
    return HamiltonianSpec(n_qubits, std::move(terms));
  };
  auto squared_sum = [n_qubits](Pauli op, double scale) {
    // (sum_i P_i)^2 = N * I + sum_{i != j} P_i P_j
    std::vector<Term> terms;
    terms.push_back(Term{scale * n_qubits, PauliString(n_qubits)});
    for (int i = 0; i < n_qubits; ++i) {
      for (int j = i + 1; j < n_qubits; ++j) {
        PauliString s(n_qubits);
        s.set_factor(i, op);
        s.set_factor(j, op);
        terms.push_back(Term{2.0 * scale, std::move(s)});
      }
    }
    return HamiltonianSpec(n_qubits, std::move(terms));
  };
  GhzHamiltonians out{
      sum_single(Pauli::X, [b1](int) { return b1; }),
      squared_sum(Pauli::Z, -b2),
      squared_sum(Pauli::X, -b3),
      sum_single(Pauli::X, [&b_vec](int i) { return b_vec[static_cast<size_t>(i)]; }),
      sum_single(Pauli::X, [&b_vec](int i) { return b_vec[static_cast<size_t>(i)]; })};
  return out;
}

namespace {

[[noreturn]] void fail_schema(const std::string& msg) {
  throw ConfigError("model file: " + msg);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      fail_schema("unknown key \"" + key + "\" in " + where);
    }
  }
}

std::vector<double> require_number_array(const json& j, size_t len,
                                         const std::string& where) {
  if (!j.is_array() || j.size() != len) {
    fail_schema(where + " must be an array of " + std::to_string(len) + " numbers");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail_schema(where + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

HamiltonianSpec parse_terms(const json& arr, int n_qubits, const std::string& where) {
  if (!arr.is_array() || arr.empty()) {
    fail_schema(where + ".terms must be a non-empty array");
  }
  std::vector<Term> terms;
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_string()) {
      fail_schema(where + ".terms entries must be [coefficient, \"IXYZ...\"] pairs");
    }
    const std::string label = entry[1].get<std::string>();
    if (label.size() != static_cast<size_t>(n_qubits)) {
      fail_schema(where + ": term string \"" + label + "\" length does not match n_qubits");
    }
    terms.push_back(Term{entry[0].get<double>(), PauliString::from_label(label)});
  }
  return HamiltonianSpec(n_qubits, std::move(terms)).canonical();
}

HamiltonianSpec parse_operator(const json& obj, int n_qubits, const std::string& where,
                               std::optional<DriverParams>* driver_out) {
  if (!obj.is_object()) fail_schema(where + " must be an object");
  if (obj.contains("builtin")) {
    reject_unknown_keys(obj, {"builtin", "params"}, where);
    const std::string name = obj.at("builtin").get<std::string>();
    const json params = obj.value("params", json::object());
    if (name == "heisenberg") {
      reject_unknown_keys(params, {"J", "B_prime", "boundary"}, where + ".params");
      HeisenbergParams p;
      p.n_qubits = n_qubits;
      p.j = params.value("J", 1.0);
      if (!params.contains("B_prime")) fail_schema(where + ".params.B_prime is required");
      p.b_prime = require_number_array(params.at("B_prime"),
                                       static_cast<size_t>(n_qubits),
                                       where + ".params.B_prime");
      const std::string boundary = params.value("boundary", "periodic");
      if (boundary == "periodic") p.boundary = Boundary::Periodic;
      else if (boundary == "open") p.boundary = Boundary::Open;
      else fail_schema(where + ".params.boundary must be \"periodic\" or \"open\"");
      return build_heisenberg(p);
    }
    if (name == "xy_driver") {
      reject_unknown_keys(params, {"J_pair", "B"}, where + ".params");
      DriverParams p;
      p.n_qubits = n_qubits;
      if (!params.contains("J_pair") || !params.contains("B")) {
        fail_schema(where + ".params requires J_pair and B");
      }
      if (n_qubits % 2 != 0) {
        fail_schema("xy_driver requires an even n_qubits");
      }
      p.j_pair = require_number_array(params.at("J_pair"),
                                      static_cast<size_t>(n_qubits / 2),
                                      where + ".params.J_pair");
      p.b = require_number_array(params.at("B"), static_cast<size_t>(n_qubits),
                                 where + ".params.B");
      if (driver_out) *driver_out = p;
      return build_driver(p);
    }
    if (name == "total_magnetization") {
      reject_unknown_keys(obj, {"builtin"}, where);
      return build_total_magnetization(n_qubits);
    }
    fail_schema(where + ": unknown builtin \"" + name + "\"");
  }
  if (obj.contains("terms")) {
    reject_unknown_keys(obj, {"terms"}, where);
    return parse_terms(obj.at("terms"), n_qubits, where);
  }
  fail_schema(where + " must provide either \"builtin\" or \"terms\"");
}

}  // namespace

ModelConfig parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column for the error message.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else ++col;
    }
    throw ConfigError("model file: JSON syntax error at line " +
                      std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
  if (!doc.is_object()) fail_schema("top level must be an object");
  reject_unknown_keys(doc, {"n_qubits", "problem", "driver", "conserved",
                            "penalty", "label"},
                      "top level");
  for (const char* key : {"n_qubits", "problem", "driver", "conserved"}) {
    if (!doc.contains(key)) fail_schema(std::string("missing required key \"") + key + "\"");
  }
  if (!doc.at("n_qubits").is_number_integer()) fail_schema("n_qubits must be an integer");
  const int n = doc.at("n_qubits").get<int>();
  if (n < 1 || n > kDefaultDenseCap) {
    fail_schema("n_qubits must be in [1, " + std::to_string(kDefaultDenseCap) + "]");
  }

  ModelConfig cfg;
  cfg.n_qubits = n;
  cfg.problem = parse_operator(doc.at("problem"), n, "problem", nullptr);
  cfg.driver = parse_operator(doc.at("driver"), n, "driver", &cfg.driver_params);
  cfg.conserved = parse_operator(doc.at("conserved"), n, "conserved", nullptr);
  cfg.label = doc.value("label", "");
  if (doc.contains("penalty")) {
    const json& pen = doc.at("penalty");
    reject_unknown_keys(pen, {"lambda", "q"}, "penalty");
    if (!pen.contains("lambda") || !pen.contains("q")) {
      fail_schema("penalty requires lambda and q");
    }
    PenaltyParams pp{pen.at("lambda").get<double>(), pen.at("q").get<double>()};
    if (pp.lambda <= 0.0) fail_schema("penalty.lambda must be positive");
    cfg.penalty = pp;
  }

  // Semantic checks: the declared conserved quantity must commute with both
  // Hamiltonians.
  if (commutator_norm(cfg.conserved, cfg.problem) > 1e-10) {
    fail_schema("declared conserved quantity does not commute with the problem Hamiltonian");
  }
  if (commutator_norm(cfg.conserved, cfg.driver) > 1e-10) {
    fail_schema("declared conserved quantity does not commute with the driving Hamiltonian");
  }
  return cfg;
}

ModelConfig parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

}  // namespace qramsey
