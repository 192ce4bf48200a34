#include "thetanull/cli_io.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetanull/boundary_gauss.hpp"
#include "thetanull/characteristics.hpp"
#include "thetanull/errors.hpp"
#include "thetanull/schottky.hpp"
#include "thetanull/theta_eval.hpp"
#include "thetanull/version.hpp"

namespace thetanull {

namespace {

using json = nlohmann::ordered_json;
using cdouble = std::complex<double>;

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

[[noreturn]] void parse_fail(const std::string& msg) {
  throw Error(ErrorKind::Parse, msg);
}

Eigen::MatrixXd read_matrix(const json& j, const std::string& field, int g) {
  if (!j.is_array() || static_cast<int>(j.size()) != g)
    throw Error(ErrorKind::DimensionMismatch,
                "field '" + field + "' must be an array of " + std::to_string(g) +
                    " rows");
  Eigen::MatrixXd out(g, g);
  for (int r = 0; r < g; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != g)
      throw Error(ErrorKind::DimensionMismatch,
                  "field '" + field + "' row " + std::to_string(r) + " must have " +
                      std::to_string(g) + " entries");
    for (int c = 0; c < g; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number())
        parse_fail("field '" + field + "' entry (" + std::to_string(r) + "," +
                   std::to_string(c) + ") is not a number");
      out(r, c) = v.get<double>();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// complex scalar literal: "a", "bi", "a+bi", "a-bi" (exponents allowed)
// ---------------------------------------------------------------------------
double parse_real(const std::string& s) {
  if (s.empty()) parse_fail("empty number in complex literal");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size()) parse_fail("bad number '" + s + "' in complex literal");
  return v;
}

cdouble parse_complex_scalar(std::string tok) {
  const auto strip = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  strip(tok);
  if (tok.empty()) parse_fail("empty complex entry");
  if (tok.back() != 'i') return {parse_real(tok), 0.0};
  std::string body = tok.substr(0, tok.size() - 1);
  // split "a+b" at the first interior sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t p = 1; p < body.size(); ++p) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_of = [](std::string s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

// ---------------------------------------------------------------------------
// JSON rendering helpers
// ---------------------------------------------------------------------------
json complex_json(const cdouble& v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json matrix_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json cvector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json tool_json() {
  return json{{"name", kToolName}, {"version", kVersion}};
}

json tolerances_json(const Tolerances& tol) {
  return json{{"tol_vanish", tol.tol_vanish},
              {"tol_rank", tol.tol_rank},
              {"target_error", tol.target_error},
              {"target_error_jet", tol.target_error_jet}};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string fmt_complex(const cdouble& v) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", v.real(), v.imag());
  return buf;
}

// ---------------------------------------------------------------------------
// report assembly
// ---------------------------------------------------------------------------
json report_json(const SchottkyReport& rep, const std::string& label, bool has_label,
                 std::optional<double> seconds) {
  json j;
  j["tool"] = tool_json();
  j["label"] = has_label ? json(label) : json(nullptr);
  j["g"] = rep.g;
  j["tolerances"] = tolerances_json(rep.tolerances);
  j["scale"] = rep.scale;
  json consts = json::array();
  for (const auto& [m, ev] : rep.constants) {
    consts.push_back(json{{"char", m.to_string()},
                          {"abs", std::abs(ev.value)},
                          {"rel", std::abs(ev.value) / rep.scale},
                          {"error_bound", ev.error_bound}});
  }
  j["constants"] = std::move(consts);
  json cands = json::array();
  for (const NullCandidate& c : rep.candidates) {
    cands.push_back(json{{"char", c.m.to_string()},
                         {"abs", std::abs(c.theta_value)},
                         {"rel", std::abs(c.theta_value) / c.theta_scale},
                         {"hessian", matrix_json(c.hessian)},
                         {"singular_values", vector_json(c.singular_values)},
                         {"eigenvalues", cvector_json(c.eigenvalues)},
                         {"rank", c.numerical_rank}});
  }
  j["candidates"] = std::move(cands);
  j["min_stratum"] = rep.min_stratum ? json(*rep.min_stratum) : json(nullptr);
  j["verdict"] = to_string(rep.verdict);
  j["timing"] = seconds ? json{{"seconds", *seconds}} : json(nullptr);
  return j;
}

std::string report_text(const SchottkyReport& rep, const std::string& label,
                        bool has_label, std::optional<double> seconds) {
  std::ostringstream os;
  os << kToolName << " " << kVersion << "\n";
  os << "input: " << (has_label ? label : std::string("(unlabeled)")) << "  (g = "
     << rep.g << ")\n";
  os << "tolerances: tol_vanish " << fmt("%g", rep.tolerances.tol_vanish)
     << "  tol_rank " << fmt("%g", rep.tolerances.tol_rank) << "  target "
     << fmt("%g", rep.tolerances.target_error) << "/"
     << fmt("%g", rep.tolerances.target_error_jet) << "\n";
  os << "even theta constants: " << rep.constants.size()
     << "   scale (max modulus): " << fmt("%.6f", rep.scale) << "\n";
  os << "vanishing nulls (|theta| < tol_vanish * scale): " << rep.candidates.size()
     << "\n";
  for (const NullCandidate& c : rep.candidates) {
    os << "\ncharacteristic [" << c.m.to_string() << "]:  |theta| = "
       << fmt("%.6e", std::abs(c.theta_value)) << "  (rel "
       << fmt("%.3e", std::abs(c.theta_value) / c.theta_scale) << ")\n";
    os << "Hessian:\n";
    for (Eigen::Index r = 0; r < c.hessian.rows(); ++r) {
      os << " ";
      for (Eigen::Index cc = 0; cc < c.hessian.cols(); ++cc)
        os << " " << fmt_complex(c.hessian(r, cc));
      os << "\n";
    }
    os << "singular values:";
    for (Eigen::Index k = 0; k < c.singular_values.size(); ++k)
      os << " " << fmt("%.6e", c.singular_values(k));
    os << "\neigenvalues:\n";
    for (Eigen::Index k = 0; k < c.eigenvalues.size(); ++k)
      os << "  " << fmt_complex(c.eigenvalues(k)) << "\n";
    os << "numerical rank: " << c.numerical_rank << "\n";
  }
  os << "\nmin stratum h = "
     << (rep.min_stratum ? std::to_string(*rep.min_stratum) : std::string("NONE"))
     << "\n";
  os << "verdict: " << to_string(rep.verdict) << "\n";
  if (seconds) os << "timing: " << fmt("%.3f", *seconds) << " s\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// subcommand state
// ---------------------------------------------------------------------------
struct CommonOpts {
  std::string input;
  std::string format = "json";
  Tolerances tol;
  bool timing = false;
};

InputDocument load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_period_matrix(buf.str());
}

void emit(const std::string& s) { std::cout << s << std::endl; }

class Timer {
 public:
  std::optional<double> seconds(bool enabled) const {
    if (!enabled) return std::nullopt;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

int cmd_check(const CommonOpts& o) {
  Timer timer;
  const InputDocument doc = load_input(o.input);
  const PeriodMatrix tau = to_period_matrix(doc);
  const SchottkyReport rep =
      (tau.g == 5) ? genus5_verdict(tau, o.tol) : stratum(tau, o.tol).second;
  const auto secs = timer.seconds(o.timing);
  if (o.format == "text")
    emit(report_text(rep, doc.label, doc.has_label, secs));
  else
    emit(report_json(rep, doc.label, doc.has_label, secs).dump(2));
  return rep.verdict == Verdict::IN_THETA_NULL_RANK_LE_3 ? 0 : 1;
}

int cmd_nulls(const CommonOpts& o) {
  Timer timer;
  const InputDocument doc = load_input(o.input);
  const PeriodMatrix tau = to_period_matrix(doc);
  const auto constants = theta_constants_all(tau, o.tol.target_error);
  double scale = 0.0;
  for (const auto& [m, ev] : constants) scale = std::max(scale, std::abs(ev.value));
  const auto vanishing = vanishing_nulls(tau, o.tol.tol_vanish, o.tol.target_error);
  const auto secs = timer.seconds(o.timing);
  if (o.format == "text") {
    std::ostringstream os;
    os << kToolName << " " << kVersion << "\n";
    os << "even theta constants: " << constants.size()
       << "   scale (max modulus): " << fmt("%.6f", scale) << "\n";
    os << "vanishing nulls: " << vanishing.size() << "\n";
    for (const auto& m : vanishing) os << "  [" << m.to_string() << "]\n";
    if (secs) os << "timing: " << fmt("%.3f", *secs) << " s\n";
    emit(os.str());
  } else {
    json j;
    j["tool"] = tool_json();
    j["label"] = doc.has_label ? json(doc.label) : json(nullptr);
    j["g"] = tau.g;
    j["tolerances"] = tolerances_json(o.tol);
    j["scale"] = scale;
    json v = json::array();
    for (const auto& m : vanishing) v.push_back(m.to_string());
    j["vanishing"] = std::move(v);
    j["timing"] = secs ? json{{"seconds", *secs}} : json(nullptr);
    emit(j.dump(2));
  }
  return 0;
}

int cmd_theta(const CommonOpts& o, const std::string& char_str, const std::string& z_str,
              bool jet) {
  Timer timer;
  const InputDocument doc = load_input(o.input);
  const PeriodMatrix tau = to_period_matrix(doc);
  const Characteristic m = char_str.empty() ? Characteristic::zero(tau.g)
                                            : Characteristic::from_string(char_str);
  if (m.g != tau.g)
    throw Error(ErrorKind::DimensionMismatch,
                "characteristic genus does not match the input matrix");
  const Eigen::VectorXcd z = z_str.empty() ? Eigen::VectorXcd::Zero(tau.g)
                                           : parse_complex_vector(z_str, tau.g);
  json j;
  j["tool"] = tool_json();
  j["label"] = doc.has_label ? json(doc.label) : json(nullptr);
  j["g"] = tau.g;
  j["char"] = m.to_string();
  j["z"] = cvector_json(z);
  std::ostringstream os;
  if (!jet) {
    const ThetaEval e = eval_theta(m, z, tau, o.tol.target_error);
    const auto secs = timer.seconds(o.timing);
    if (o.format == "text") {
      os << "theta[" << m.to_string() << "](z) = " << fmt_complex(e.value) << "\n";
      os << "|theta| = " << fmt("%.6e", std::abs(e.value)) << "   error bound "
         << fmt("%.3e", e.error_bound) << "\n";
      os << "terms: " << e.terms_used << "   radius: " << fmt("%.4f", e.radius) << "\n";
      if (secs) os << "timing: " << fmt("%.3f", *secs) << " s\n";
      emit(os.str());
      return 0;
    }
    j["value"] = complex_json(e.value);
    j["abs"] = std::abs(e.value);
    j["error_bound"] = e.error_bound;
    j["terms"] = e.terms_used;
    j["radius"] = e.radius;
    j["timing"] = secs ? json{{"seconds", *secs}} : json(nullptr);
    emit(j.dump(2));
    return 0;
  }
  const ThetaJet e = eval_theta_jet(m, z, tau, o.tol.target_error_jet);
  const auto secs = timer.seconds(o.timing);
  if (o.format == "text") {
    os << "theta[" << m.to_string() << "](z) = " << fmt_complex(e.value)
       << "   (bound " << fmt("%.3e", e.value_error) << ")\n";
    os << "gradient (bound " << fmt("%.3e", e.gradient_error) << "):\n";
    for (Eigen::Index i = 0; i < e.gradient.size(); ++i)
      os << "  " << fmt_complex(e.gradient(i)) << "\n";
    os << "Hessian (bound " << fmt("%.3e", e.hessian_error) << "):\n";
    for (Eigen::Index r = 0; r < e.hessian.rows(); ++r) {
      os << " ";
      for (Eigen::Index c = 0; c < e.hessian.cols(); ++c)
        os << " " << fmt_complex(e.hessian(r, c));
      os << "\n";
    }
    os << "terms: " << e.terms_used << "   radius: " << fmt("%.4f", e.radius) << "\n";
    if (secs) os << "timing: " << fmt("%.3f", *secs) << " s\n";
    emit(os.str());
    return 0;
  }
  j["value"] = complex_json(e.value);
  j["value_error"] = e.value_error;
  j["gradient"] = cvector_json(e.gradient);
  j["gradient_error"] = e.gradient_error;
  j["hessian"] = matrix_json(e.hessian);
  j["hessian_error"] = e.hessian_error;
  j["terms"] = e.terms_used;
  j["radius"] = e.radius;
  j["timing"] = secs ? json{{"seconds", *secs}} : json(nullptr);
  emit(j.dump(2));
  return 0;
}

int cmd_gauss(const CommonOpts& o, const std::string& char_str, const std::string& z_str,
              bool have_seed, std::uint64_t seed, int h) {
  Timer timer;
  const InputDocument doc = load_input(o.input);
  const PeriodMatrix tau = to_period_matrix(doc);
  const int sources = (!char_str.empty()) + (!z_str.empty()) + (have_seed ? 1 : 0);
  if (sources != 1)
    throw Error(ErrorKind::Config,
                "gauss needs exactly one of --char (two-torsion point), --z, or "
                "--seed (sampled divisor point)");
  Eigen::VectorXcd z;
  if (!char_str.empty()) {
    const Characteristic m = Characteristic::from_string(char_str);
    if (m.g != tau.g)
      throw Error(ErrorKind::DimensionMismatch,
                  "characteristic genus does not match the input matrix");
    z = two_torsion_point(m, tau);
  } else if (!z_str.empty()) {
    z = parse_complex_vector(z_str, tau.g);
  } else {
    z = find_divisor_point(tau, seed);
  }

  const BorderedGaussMatrix bg = bordered_gauss(tau, z, o.tol);
  const bool holds = bg.numerical_rank <= h;
  std::optional<int> diff_rank;
  try {
    diff_rank = gauss_diff_rank(tau, z, 1e-4, o.tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BasePoint) throw;  // base points: rank undefined
  }
  const auto secs = timer.seconds(o.timing);

  if (o.format == "text") {
    std::ostringstream os;
    os << kToolName << " " << kVersion << "\n";
    os << "divisor point z' =";
    for (Eigen::Index i = 0; i < z.size(); ++i) os << " " << fmt_complex(z(i));
    os << "\nresidual |theta(z')| = " << fmt("%.3e", std::abs(bg.theta_value))
       << "  (scale " << fmt("%.6f", bg.theta_scale) << ")\n";
    os << "bordered matrix singular values:";
    for (Eigen::Index k = 0; k < bg.singular_values.size(); ++k)
      os << " " << fmt("%.6e", bg.singular_values(k));
    os << "\nbordered rank: " << bg.numerical_rank << "   (h = " << h << ")\n";
    if (diff_rank)
      os << "Gauss differential rank: " << *diff_rank << "\n";
    else
      os << "Gauss differential rank: undefined (base point)\n";
    os << "boundary stratum check (rank <= h): " << (holds ? "holds" : "fails") << "\n";
    if (secs) os << "timing: " << fmt("%.3f", *secs) << " s\n";
    emit(os.str());
  } else {
    json j;
    j["tool"] = tool_json();
    j["label"] = doc.has_label ? json(doc.label) : json(nullptr);
    j["g"] = tau.g;
    j["z"] = cvector_json(z);
    j["residual"] = std::abs(bg.theta_value);
    j["scale"] = bg.theta_scale;
    j["matrix"] = matrix_json(bg.matrix);
    j["singular_values"] = vector_json(bg.singular_values);
    j["rank"] = bg.numerical_rank;
    j["gauss_rank"] = diff_rank ? json(*diff_rank) : json(nullptr);
    j["h"] = h;
    j["holds"] = holds;
    j["timing"] = secs ? json{{"seconds", *secs}} : json(nullptr);
    emit(j.dump(2));
  }
  return holds ? 0 : 1;
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_vanish_rank) {
  sub->add_option("--input", o.input, "period matrix JSON file")->required();
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--target-error", o.tol.target_error,
                  "certified truncation target for values");
  sub->add_option("--target-error-jet", o.tol.target_error_jet,
                  "certified truncation target for derivatives");
  sub->add_flag("--timing", o.timing, "include wall-clock timing in the report");
  if (with_vanish_rank) {
    sub->add_option("--tol-vanish", o.tol.tol_vanish,
                    "vanishing threshold relative to the largest theta constant");
    sub->add_option("--tol-rank", o.tol.tol_rank,
                    "rank threshold relative to the largest singular value");
  }
}

}  // namespace

InputDocument parse_period_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail("invalid JSON at line " +
               std::to_string(line_of_offset(text, e.byte ? e.byte - 1 : 0)) + ": " +
               e.what());
  }
  if (!j.is_object()) parse_fail("top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "g" && key != "re" && key != "im" && key != "label")
      parse_fail("unknown field '" + key + "'");
  }
  if (!j.contains("g")) parse_fail("missing field 'g'");
  if (!j.contains("re")) parse_fail("missing field 're'");
  if (!j.contains("im")) parse_fail("missing field 'im'");
  if (!j["g"].is_number_integer()) parse_fail("field 'g' must be an integer");
  const long long g = j["g"].get<long long>();
  if (g < 1) parse_fail("field 'g' must be positive");
  if (g > kGenusCap)
    throw Error(ErrorKind::GenusTooLarge,
                "genus " + std::to_string(g) + " exceeds the supported cap of " +
                    std::to_string(kGenusCap));
  InputDocument doc;
  doc.g = static_cast<int>(g);
  doc.re = read_matrix(j["re"], "re", doc.g);
  doc.im = read_matrix(j["im"], "im", doc.g);
  if (j.contains("label")) {
    if (!j["label"].is_string()) parse_fail("field 'label' must be a string");
    doc.label = j["label"].get<std::string>();
    doc.has_label = true;
  }
  return doc;
}

std::string serialize_input(const InputDocument& doc) {
  json j;
  j["g"] = doc.g;
  json re = json::array(), im = json::array();
  for (int r = 0; r < doc.g; ++r) {
    json rr = json::array(), ri = json::array();
    for (int c = 0; c < doc.g; ++c) {
      rr.push_back(doc.re(r, c));
      ri.push_back(doc.im(r, c));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  if (doc.has_label) j["label"] = doc.label;
  return j.dump(2) + "\n";
}

PeriodMatrix to_period_matrix(const InputDocument& doc, double sym_tol) {
  Eigen::MatrixXcd raw(doc.g, doc.g);
  for (int r = 0; r < doc.g; ++r)
    for (int c = 0; c < doc.g; ++c) raw(r, c) = cdouble(doc.re(r, c), doc.im(r, c));
  return validate_period_matrix(raw, sym_tol);
}

Eigen::VectorXcd parse_complex_vector(const std::string& text, int expected_size) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  tokens.push_back(cur);
  if (static_cast<int>(tokens.size()) != expected_size)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(expected_size) + " complex entries, got " +
                    std::to_string(tokens.size()));
  Eigen::VectorXcd out(expected_size);
  for (int i = 0; i < expected_size; ++i) out(i) = parse_complex_scalar(tokens[static_cast<std::size_t>(i)]);
  return out;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"vanishing theta nulls, tangent-cone ranks, and the genus-5 weak "
               "Schottky verdict for period matrices"};
  app.require_subcommand(1);

  CommonOpts check_o, nulls_o, theta_o, hess_o, gauss_o;
  std::string theta_char, theta_z, hess_char, hess_z, gauss_char, gauss_z;
  std::uint64_t gauss_seed = 0;
  int gauss_h = 3;

  CLI::App* check = app.add_subcommand(
      "check", "full stratum report and weak Schottky verdict");
  add_common(check, check_o, true);

  CLI::App* nulls = app.add_subcommand("nulls", "list vanishing even theta nulls");
  add_common(nulls, nulls_o, true);

  CLI::App* theta = app.add_subcommand("theta", "evaluate one theta value");
  add_common(theta, theta_o, false);
  theta->add_option("--char", theta_char, "characteristic eps/del (default zero)");
  theta->add_option("--z", theta_z, "complex argument 'a+bi,...' (default 0)");

  CLI::App* hessian = app.add_subcommand("hessian", "evaluate a full order-2 jet");
  add_common(hessian, hess_o, false);
  hessian->add_option("--char", hess_char, "characteristic eps/del (default zero)");
  hessian->add_option("--z", hess_z, "complex argument 'a+bi,...' (default 0)");

  CLI::App* gauss = app.add_subcommand(
      "gauss", "boundary stratum check at a theta-divisor point");
  gauss->set_help_flag("--help", "print help");  // frees -h for the --h option
  add_common(gauss, gauss_o, true);
  gauss->add_option("--char", gauss_char,
                    "characteristic whose two-torsion point to use");
  gauss->add_option("--z", gauss_z, "explicit divisor point 'a+bi,...'");
  CLI::Option* seed_opt =
      gauss->add_option("--seed", gauss_seed, "sample a divisor point with this seed");
  gauss->add_option("--h", gauss_h, "stratum parameter for the rank test (default 3)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << "error: Parse: " << e.what() << std::endl;
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_o);
    if (nulls->parsed()) return cmd_nulls(nulls_o);
    if (theta->parsed()) return cmd_theta(theta_o, theta_char, theta_z, false);
    if (hessian->parsed()) return cmd_theta(hess_o, hess_char, hess_z, true);
    if (gauss->parsed())
      return cmd_gauss(gauss_o, gauss_char, gauss_z, seed_opt->count() > 0, gauss_seed,
                       gauss_h);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << std::endl;
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace thetanull
