#pragma once
//
// File ingestion and the command-line front end.  Period matrices travel as
// strict JSON documents with separate real/imaginary parts,
//
//   {"g": 5, "re": [[...]], "im": [[...]], "label": "optional"},
//
// unknown fields rejected.  Reports are emitted as deterministic JSON (or a
// text layout listing theta constant, Hessian, eigenvalues and verdict):
// byte-identical for fixed input bytes and flags, across runs and across
// worker-thread counts.
//
// Exit codes: 0 = ran, verdict IN_THETA_NULL_RANK_LE_3 (for `gauss`: the
// boundary check holds); 1 = ran, other verdict; 2 = input error;
// 3 = numerical failure.
//
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thetanull/siegel.hpp"

namespace thetanull {

struct InputDocument {
  int g = 0;
  Eigen::MatrixXd re, im;
  std::string label;      // empty when absent
  bool has_label = false;
};

// Strict parse; throws Parse (with line and field context) or DimensionMismatch.
InputDocument parse_period_matrix(const std::string& text);

// Canonical serialization; parse(serialize(doc)) reproduces doc bit-for-bit.
std::string serialize_input(const InputDocument& doc);

PeriodMatrix to_period_matrix(const InputDocument& doc, double sym_tol = 1e-9);

// "a+bi,a-bi,..." -> complex vector; strict, throws Parse.
Eigen::VectorXcd parse_complex_vector(const std::string& text, int expected_size);

// CLI entry point (subcommands: check, nulls, theta, hessian, gauss); writes
// the report to stdout and diagnostics to stderr, returns the exit code.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace thetanull
