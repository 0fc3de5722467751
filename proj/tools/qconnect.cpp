// Copyright 2026 The qconnect Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every invocation prints one JSON result document
// (or a CSV table with --csv) and exits with 0 on success, 1 on invalid input
// and 2 on numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qconnect/confluence.hpp"
#include "qconnect/io.hpp"
#include "qconnect/kernels/series_kernel.hpp"
#include "qconnect/selftest.hpp"

namespace {

using namespace qconnect;
using io::json;

constexpr const char* kCsvHelp =
    "CSV columns: special -> z_re,z_im,value_re,value_im (empty value on an unsafe point); "
    "confluence -> scan,eps,probe,error";

// Complex literals: "re", "re,im" or "re+imi".
cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw DomainError("empty complex number");
  try {
    std::size_t used = 0;
    if (const auto comma = s.find(','); comma != std::string::npos) {
      const double re = std::stod(s.substr(0, comma), &used);
      if (used != comma) throw DomainError("");
      const std::string tail = s.substr(comma + 1);
      const double im = std::stod(tail, &used);
      if (used != tail.size()) throw DomainError("");
      return {re, im};
    }
    if (s.back() == 'i') {
      const std::string body = s.substr(0, s.size() - 1);
      // Split at the last sign that is not part of an exponent.
      std::size_t cut = std::string::npos;
      for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
          cut = k;
          break;
        }
      if (cut == std::string::npos) {
        if (body.empty() || body == "+") return {0.0, 1.0};
        if (body == "-") return {0.0, -1.0};
        const double im = std::stod(body, &used);
        if (used != body.size()) throw DomainError("");
        return {0.0, im};
      }
      const std::string re_s = body.substr(0, cut), im_s = body.substr(cut);
      const double re = std::stod(re_s, &used);
      if (used != re_s.size()) throw DomainError("");
      double im = 0.0;
      if (im_s == "+" || im_s == "-") {
        im = im_s == "+" ? 1.0 : -1.0;
      } else {
        im = std::stod(im_s, &used);
        if (used != im_s.size()) throw DomainError("");
      }
      return {re, im};
    }
    const double re = std::stod(s, &used);
    if (used != s.size()) throw DomainError("");
    return {re, 0.0};
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse complex number '" + text + "'");
  }
}

std::vector<cplx> parse_grid(const std::string& spec, double arg) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() != 4) throw DomainError("--grid expects start,stop,count,log|linear");
  double start = 0.0, stop = 0.0;
  long count = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::logic_error&) {
    throw DomainError("--grid: malformed number in '" + spec + "'");
  }
  if (count < 1 || count > 100000) throw DomainError("--grid: count must lie in [1, 100000]");
  const bool log_scale = parts[3] == "log";
  if (!log_scale && parts[3] != "linear") throw DomainError("--grid: spacing must be log or linear");
  if (log_scale && (start <= 0.0 || stop <= 0.0)) throw DomainError("--grid: log spacing needs positive bounds");
  std::vector<cplx> out;
  const cplx dir = std::polar(1.0, arg);
  for (long k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    const double r = log_scale ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    out.push_back(r * dir);
  }
  return out;
}

struct QOptions {
  std::string q, tau;

  void attach(CLI::App* app) {
    app->add_option("--q", q, "deformation parameter q, |q| > 1 (default 4)");
    app->add_option("--tau", tau, "q = exp(-2 i pi tau); wins over --q");
  }
  std::optional<QParameter> get() const {
    if (!tau.empty()) return QParameter::from_tau(parse_complex(tau));
    if (!q.empty()) return QParameter::from_q(parse_complex(q));
    return std::nullopt;
  }
  /// q = 4 when neither flag is given.
  QParameter require() const {
    if (auto p = get()) return *p;
    return QParameter::from_q(4.0);
  }
};

struct TolOptions {
  double target = 1e-15;
  int max_terms = 200;

  void attach(CLI::App* app) {
    app->add_option("--tol", target, "absolute truncation target for theta series");
    app->add_option("--max-terms", max_terms, "series half-width cap (QCONNECT_MAX_TERMS overrides)");
  }
  SeriesTolerance get() const {
    SeriesTolerance tol{target, max_terms};
    tol.validate();
    tol = tol.with_env_override();
    tol.validate();
    return tol;
  }
};

json tolerance_json(const SeriesTolerance& tol) {
  return {{"series_target", tol.target},
          {"series_max_terms", tol.max_terms},
          {"isa", std::string(kernels::isa_name(kernels::active_isa()))}};
}

std::vector<cplx> points_from(const std::vector<std::string>& z, const std::string& grid, double arg) {
  std::vector<cplx> out;
  for (const std::string& s : z) out.push_back(parse_complex(s));
  if (!grid.empty()) {
    const std::vector<cplx> g = parse_grid(grid, arg);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

void emit(const io::ResultDocument& doc, bool pretty) { std::cout << doc.dump(pretty); }

json dunford_json(const DunfordPair& d) {
  json ev = json::array();
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k)
    ev.push_back({{"value", io::to_json(d.eigenvalues[k])}, {"multiplicity", d.multiplicities[k]}});
  return {{"s", io::to_json(d.s)}, {"u", io::to_json(d.u)}, {"eigenvalues", ev}};
}

std::string csv_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------- special

struct SpecialArgs {
  std::string function;
  QOptions q;
  TolOptions tol;
  std::vector<std::string> z;
  std::string grid;
  double arg = 0.0;
  std::string c, d, a;
  bool csv = false;
};

int run_special(const SpecialArgs& args, bool pretty) {
  const QParameter q = args.q.require();
  const SeriesTolerance tol = args.tol.get();
  const std::vector<cplx> pts = points_from(args.z, args.grid, args.arg);
  const bool on_grid = !args.grid.empty();
  auto need = [](const std::string& s, const char* flag) {
    if (s.empty()) throw DomainError(std::string(flag) + " is required for this function");
    return parse_complex(s);
  };

  io::ResultDocument doc("special " + args.function);
  doc.parameters()["tau"] = io::to_json(q.tau());
  doc.parameters()["q"] = io::to_json(q.q());
  doc.diagnostics() = tolerance_json(tol);
  doc.diagnostics()["unsafe_points"] = json::array();

  if (args.function == "psi") {
    const cplx a = need(args.a, "--a"), c = need(args.c, "--c");
    doc.parameters()["a"] = io::to_json(a);
    doc.parameters()["c"] = io::to_json(c);
    const cplx v = psi(a, c, q, tol);
    doc.outputs()["value"] = io::to_json(v);
    if (args.csv) {
      std::cout << "a_re,a_im,value_re,value_im\n"
                << csv_number(a.real()) << ',' << csv_number(a.imag()) << ',' << csv_number(v.real()) << ','
                << csv_number(v.imag()) << '\n';
    } else {
      emit(doc, pretty);
    }
    return 0;
  }

  if (pts.empty()) throw DomainError("no evaluation points: pass --z or --grid");
  std::optional<cplx> c, d;
  if (args.function == "qchar" || args.function == "phi") c = need(args.c, "--c");
  if (args.function == "phi") d = need(args.d, "--d");
  if (c) doc.parameters()["c"] = io::to_json(*c);
  if (d) doc.parameters()["d"] = io::to_json(*d);

  auto eval = [&](cplx z) -> cplx {
    if (args.function == "theta") return theta(z, q, tol);
    if (args.function == "qlog") return qlog(z, q, tol);
    if (args.function == "qchar") return qchar(*c, z, q, tol);
    return cocycle_phi(*c, *d, z, q, tol);
  };

  std::vector<std::optional<cplx>> values;
  for (cplx z : pts) {
    try {
      values.emplace_back(eval(z));
    } catch (const PoleProximity& e) {
      // Grid sweeps record unsafe points and keep going; explicit points fail.
      if (!on_grid) throw;
      values.emplace_back(std::nullopt);
      doc.diagnostics()["unsafe_points"].push_back(
          {{"z", io::to_json(z)}, {"spiral_point", io::to_json(e.spiral_point())}});
    }
  }

  if (args.csv) {
    std::cout << "z_re,z_im,value_re,value_im\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::cout << csv_number(pts[k].real()) << ',' << csv_number(pts[k].imag()) << ',';
      if (values[k]) std::cout << csv_number(values[k]->real()) << ',' << csv_number(values[k]->imag());
      else std::cout << ',';
      std::cout << '\n';
    }
    return 0;
  }
  json rows = json::array();
  for (std::size_t k = 0; k < pts.size(); ++k)
    rows.push_back({{"z", io::to_json(pts[k])}, {"value", values[k] ? io::to_json(*values[k]) : json(nullptr)}});
  doc.outputs()["values"] = rows;
  emit(doc, pretty);
  return 0;
}

// ---------------------------------------------------------------- reduce

Normalization parse_policy(const std::string& s) {
  if (s == "never") return Normalization::Never;
  if (s == "ifneeded") return Normalization::IfNeeded;
  if (s == "always") return Normalization::Always;
  throw DomainError("--normalize must be never, ifneeded or always");
}

json series_json(const TruncatedMatrixSeries& f, const std::vector<cplx>& pts) {
  json tail = json::array();
  const int K = f.order();
  for (int k = std::max(0, K - 4); k <= K; ++k) tail.push_back({{"k", k}, {"norm", f.coeffs[k].norm()}});
  json out = {{"base", f.base == End::Zero ? "zero" : "infinity"},
              {"constant_form", io::to_json(f.A0.A)},
              {"dunford", dunford_json(f.A0.dunford)},
              {"order", K},
              {"trust_radius", std::isfinite(f.trust_radius) ? json(f.trust_radius) : json("inf")},
              {"recurrence_residual", f.recurrence_residual()},
              {"last_coefficient_norms", tail}};
  json values = json::array();
  const QParameter& q = f.system.q;
  for (cplx z : pts) {
    const GaugeValue g = eval_gauge_detailed(f, z);
    const Matrix lhs = eval_gauge(f, q.q() * z) * f.A0.A;
    const double residual = (lhs - f.system.A.eval(z) * g.value).norm() / std::max(1.0, lhs.norm());
    values.push_back({{"z", io::to_json(z)},
                      {"F", io::to_json(g.value)},
                      {"continuation_steps", g.continuation_steps},
                      {"tail_estimate", g.tail_estimate},
                      {"functional_equation_residual", residual}});
  }
  out["values"] = values;
  return out;
}

struct SystemArgs {
  std::string system;
  int order = kDefaultOrder;
  std::string normalize = "ifneeded";
  std::vector<std::string> z;
  std::string grid;
  double arg = 0.0;
};

json locus_json(const SingularLocus& s) {
  json pts = json::array();
  for (std::size_t k = 0; k < s.points.size(); ++k)
    pts.push_back({{"point", io::to_json(s.points[k])}, {"multiplicity", s.multiplicities[k]}});
  return {{"points", pts}, {"at_zero", s.at_zero}, {"at_infinity", s.at_infinity}};
}

int run_reduce(const SystemArgs& args, const std::string& end, bool pretty) {
  const RationalMatrixSystem original = io::load_system(args.system);
  if (end != "zero" && end != "infinity" && end != "both") throw DomainError("--end must be zero, infinity or both");
  const Normalization policy = parse_policy(args.normalize);
  const std::vector<cplx> pts = points_from(args.z, args.grid, args.arg);

  io::ResultDocument doc("reduce");
  doc.parameters()["system"] = io::to_json(original);
  doc.parameters()["order"] = args.order;
  doc.parameters()["normalize"] = args.normalize;
  doc.parameters()["end"] = end;

  const FuchsianReport report = is_strictly_fuchsian(original);
  doc.diagnostics()["strictly_fuchsian"] = {{"at_zero", report.at_zero}, {"at_infinity", report.at_infinity},
                                            {"messages", report.diagnostics}};
  RationalMatrixSystem sys = original;
  const bool normalize = policy == Normalization::Always ||
                         (policy == Normalization::IfNeeded && !ready_for_reduction(original));
  if (normalize) {
    const NormalizedSystem ns = normalize_both(original);
    sys = ns.system;
    doc.outputs()["normalization"] = {{"steps", ns.steps},
                                      {"rational_steps", ns.rational_steps},
                                      {"system", io::to_json(ns.system)}};
  }
  doc.outputs()["singular_locus"] = locus_json(singular_locus(sys));
  if (end != "infinity") doc.outputs()["zero"] = series_json(reduce_at_zero(sys, args.order), pts);
  if (end != "zero") doc.outputs()["infinity"] = series_json(reduce_at_infty(sys, args.order), pts);
  doc.diagnostics()["unsafe_distance"] = kUnsafeDistance;
  emit(doc, pretty);
  return 0;
}

// ---------------------------------------------------------------- connect

int run_connect(const SystemArgs& args, const TolOptions& tol_opts, bool group, bool twisted_group,
                bool pretty) {
  const RationalMatrixSystem sys = io::load_system(args.system);
  const SeriesTolerance tol = tol_opts.get();
  const std::vector<cplx> pts = points_from(args.z, args.grid, args.arg);
  if (pts.empty()) throw DomainError("no evaluation points: pass --z or --grid");
  const ConnectionTriple t = build_triple(sys, args.order, parse_policy(args.normalize));
  const QParameter& q = t.q();

  io::ResultDocument doc("connect");
  doc.parameters()["system"] = io::to_json(sys);
  doc.parameters()["order"] = args.order;
  doc.parameters()["normalize"] = args.normalize;
  doc.diagnostics() = tolerance_json(tol);
  doc.diagnostics()["unsafe_distance"] = kUnsafeDistance;
  doc.diagnostics()["recurrence_residual"] = {{"zero", t.at_zero.recurrence_residual()},
                                              {"infinity", t.at_infinity.recurrence_residual()}};

  doc.outputs()["A0"] = io::to_json(t.A0().A);
  doc.outputs()["Ainf"] = io::to_json(t.Ainf().A);
  doc.outputs()["reduced_system"] = io::to_json(t.system);
  doc.outputs()["singular_locus"] = locus_json(t.sigma);
  const bool annulus = exponents_in_annulus(t.A0().A, q) && exponents_in_annulus(t.Ainf().A, q);
  json rows = json::array();
  double worst = 0.0;
  for (cplx z : pts) {
    const Matrix P = connection_P(t, z, tol);
    const double ell = (connection_P(t, q.q() * z, tol) - P).norm();
    worst = std::max(worst, ell);
    json row = {{"z", io::to_json(z)},
                {"M", io::to_json(t.M(z))},
                {"P", io::to_json(P)},
                {"Pbreve", io::to_json(pbreve(t, z, tol))},
                {"gamma_path", io::to_json(gamma_path(t, z))},
                {"ellipticity_residual", ell}};
    if (annulus) row["Pbreve_via_psi"] = io::to_json(pbreve_via_psi(t, z, tol));
    rows.push_back(row);
  }
  doc.outputs()["values"] = rows;
  doc.diagnostics()["max_ellipticity_residual"] = worst;
  if (group) {
    json samples = json::array();
    for (const Matrix& g : connection_group_sample(t, pts, twisted_group, tol)) samples.push_back(io::to_json(g));
    doc.outputs()["group_sample"] = {{"twisted", twisted_group}, {"matrices", samples}};
  }
  emit(doc, pretty);
  return 0;
}

// ---------------------------------------------------------------- flat

struct FlatArgs {
  QOptions q;
  std::string A, B;
  long long alpha = 0;
  std::string beta = "0", lambda = "0";
  std::string plethysm;
  std::string z0 = "1.3,0.4";
};

Matrix matrix_arg(const std::string& text, const char* flag) {
  try {
    return io::matrix_from_json(json::parse(text));
  } catch (const json::parse_error&) {
    throw DomainError(std::string(flag) + " must be a JSON matrix such as [[1,0],[0,[2,1]]]");
  }
}

int run_flat(const FlatArgs& args, bool pretty) {
  io::ResultDocument doc("flat");
  const GaloisElement g{{args.alpha, parse_complex(args.beta)}, parse_complex(args.lambda)};
  doc.parameters()["gamma"] = {{"alpha", g.gamma.alpha}, {"beta", io::to_json(g.gamma.beta)}};
  doc.parameters()["lambda"] = io::to_json(g.lambda);

  if (!args.plethysm.empty()) {
    int n = 0, p = 0;
    char comma = 0;
    std::istringstream in(args.plethysm);
    if (!(in >> n >> comma >> p) || comma != ',') throw DomainError("--plethysm expects n,p");
    doc.parameters()["plethysm"] = {n, p};
    doc.outputs()["jordan_sizes"] = jordan_tensor_decompose(n, p);
  }
  if (!args.A.empty()) {
    const QParameter q = args.q.require();
    doc.parameters()["tau"] = io::to_json(q.tau());
    const FlatObject A = FlatObject::make(matrix_arg(args.A, "--A"), q);
    doc.parameters()["A"] = io::to_json(A.A);
    doc.outputs()["dunford"] = dunford_json(A.dunford);
    doc.outputs()["in_group"] = g.in_group(q);
    doc.outputs()["act"] = io::to_json(act(g, A, q));
    if (!args.B.empty()) {
      const FlatObject B = FlatObject::make(matrix_arg(args.B, "--B"), q);
      doc.parameters()["B"] = io::to_json(B.A);
      const cplx z0 = parse_complex(args.z0);
      const DegreeWindow w = required_window(A, B, q);
      json basis = json::array();
      double worst = 0.0;
      for (const LaurentMatrixMorphism& F : hom_space(A, B, q, w)) {
        json terms = json::array();
        for (const auto& [k, Fk] : F.terms) terms.push_back({{"degree", k}, {"coefficient", io::to_json(Fk)}});
        const double res = naturality_check(g, F, A, B, z0, q);
        worst = std::max(worst, res);
        basis.push_back({{"terms", terms}, {"naturality_residual", res}});
      }
      doc.outputs()["hom_basis"] = basis;
      doc.diagnostics()["degree_window"] = {w.lo, w.hi};
      doc.diagnostics()["max_naturality_residual"] = worst;
      doc.diagnostics()["tensor_compat_residual"] = tensor_compat_check(g, A, B, q);
    }
  }
  if (args.A.empty() && args.plethysm.empty()) throw DomainError("flat needs --A and/or --plethysm");
  emit(doc, pretty);
  return 0;
}

// ---------------------------------------------------------------- confluence

struct ConfluenceArgs {
  std::string tau0 = "0,0.25";
  std::vector<double> eps;
  std::string z = "0.5,0.8660254037844386";
  std::string gamma = "0.3,0.1";
  std::string system;
  std::vector<std::string> probes;
  std::string scans = "all";
  int order = 60;
  bool csv = false;
};

// "z1;z2;same|across"
Probe parse_probe(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ';');) parts.push_back(part);
  if (parts.size() != 3 || (parts[2] != "same" && parts[2] != "across"))
    throw DomainError("--probe expects z1;z2;same|across");
  return {parse_complex(parts[0]), parse_complex(parts[1]), parts[2] == "same"};
}

int run_confluence(const ConfluenceArgs& args, bool pretty) {
  std::vector<double> eps = args.eps.empty() ? default_eps_list() : args.eps;
  for (double e : eps)
    if (!(e > 0.0 && e <= 1.0)) throw DomainError("--eps values must lie in (0, 1]");
  std::optional<RationalMatrix> Btilde;
  QParameter q0 = QParameter::from_tau(parse_complex(args.tau0));
  if (!args.system.empty()) {
    // The file's tau (or q) is tau0 and its matrix is Btilde, which may be singular.
    std::ifstream in(args.system);
    if (!in) throw DomainError("cannot open system file " + args.system);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw DomainError(std::string("malformed system file: ") + e.what());
    }
    if (j.contains("tau")) q0 = QParameter::from_tau(io::complex_from_json(j["tau"]));
    else if (j.contains("q")) q0 = QParameter::from_q(io::complex_from_json(j["q"]));
    if (!j.contains("matrix")) throw DomainError("system file needs \"matrix\"");
    Btilde = io::rational_matrix_from_json(j["matrix"]);
  }
  std::string scans = args.scans;
  auto wants = [&](const char* s) { return scans == "all" || scans.find(s) != std::string::npos; };

  io::ResultDocument doc("confluence");
  doc.parameters()["tau0"] = io::to_json(q0.tau());
  doc.parameters()["eps"] = eps;
  doc.diagnostics()["monotonicity_slack"] = 1.2;
  doc.diagnostics()["round_off_floor"] = 1e-12;
  doc.diagnostics()["gamma1_winding"] = kGamma1LimitWinding;
  std::ostringstream csv;
  csv << "scan,eps,probe,error\n";
  auto table = [&](const std::string& name, const std::vector<double>& errors, int probe) {
    for (std::size_t k = 0; k < errors.size(); ++k)
      csv << name << ',' << csv_number(eps[k]) << ',' << probe << ',' << csv_number(errors[k]) << '\n';
    doc.outputs()[name] = {{"errors", errors}, {"non_increasing", non_increasing(errors)}};
  };

  const cplx z = parse_complex(args.z);
  doc.parameters()["z"] = io::to_json(z);
  if (wants("char")) {
    const cplx gamma = parse_complex(args.gamma);
    doc.parameters()["gamma"] = io::to_json(gamma);
    table("char", char_limit_scan(q0, gamma, z, eps), 0);
  }
  if (wants("log")) table("log", log_limit_scan(q0, z, eps), 0);
  if ((wants("local") || wants("connection")) && !Btilde) {
    if (scans != "all") throw DomainError("local and connection scans need --system with Btilde");
  } else if (Btilde) {
    const ConfluentFamily family = ConfluentFamily::standard(q0, *Btilde);
    if (wants("local")) {
      const LocalGeneratorScan s = local_gen_limit(family, eps);
      table("gamma1", s.gamma1, 0);
      table("gamma2", s.gamma2, 0);
    }
    if (wants("connection")) {
      std::vector<Probe> probes;
      for (const std::string& p : args.probes) probes.push_back(parse_probe(p));
      if (probes.empty()) throw DomainError("connection scan needs at least one --probe");
      const std::vector<ScanRow> rows = connection_limit_scan(family, eps, probes, args.order);
      json out = json::array();
      for (std::size_t p = 0; p < probes.size(); ++p) {
        std::vector<double> errors;
        for (const ScanRow& r : rows)
          if (r.probe == static_cast<int>(p)) errors.push_back(r.error);
        for (std::size_t k = 0; k < errors.size(); ++k)
          csv << "connection," << csv_number(eps[k]) << ',' << p << ',' << csv_number(errors[k]) << '\n';
        out.push_back({{"z1", io::to_json(probes[p].z1)},
                       {"z2", io::to_json(probes[p].z2)},
                       {"same_slice", probes[p].same_slice},
                       {"errors", errors},
                       {"non_increasing", non_increasing(errors)}});
      }
      doc.outputs()["connection"] = out;
      doc.parameters()["order"] = args.order;
    }
  }
  if (args.csv) {
    std::cout << csv.str();
  } else {
    emit(doc, pretty);
  }
  return 0;
}

// ---------------------------------------------------------------- selftest

int run_selftest_cmd(const std::string& filter, bool pretty) {
  const std::vector<std::string> modules = selftest_modules();
  if (!filter.empty() && std::find(modules.begin(), modules.end(), filter) == modules.end())
    throw DomainError("unknown selftest module '" + filter + "'");
  io::ResultDocument doc("selftest");
  doc.parameters()["filter"] = filter;
  json checks = json::array();
  bool ok = true;
  for (const CheckResult& r : run_selftest(filter)) {
    ok = ok && r.passed;
    checks.push_back({{"module", r.module},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"value", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
                      {"threshold", r.threshold}});
  }
  doc.outputs()["checks"] = checks;
  doc.outputs()["passed"] = ok;
  emit(doc, pretty);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qconnect: connection matrices of fuchsian q-difference systems"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON result document");

  SpecialArgs sp;
  CLI::App* special = app.add_subcommand("special", "evaluate theta, qlog, qchar, phi or psi");
  special->add_option("function", sp.function, "theta | qlog | qchar | phi | psi")
      ->required()
      ->check(CLI::IsMember({"theta", "qlog", "qchar", "phi", "psi"}));
  sp.q.attach(special);
  sp.tol.attach(special);
  special->add_option("--z", sp.z, "evaluation point(s): re, re,im or re+imi");
  special->add_option("--grid", sp.grid, "start,stop,count,log|linear along a ray");
  special->add_option("--arg", sp.arg, "argument of the --grid ray in radians");
  special->add_option("--c", sp.c, "character value c (qchar, phi, psi)");
  special->add_option("--d", sp.d, "second character value (phi)");
  special->add_option("--a", sp.a, "base point a (psi)");
  special->add_flag("--csv", sp.csv, "print a CSV table instead of JSON");

  SystemArgs red;
  std::string end = "both";
  CLI::App* reduce = app.add_subcommand("reduce", "normalize and reduce a system at 0 and infinity");
  reduce->add_option("--system", red.system, "system file (JSON)")->required();
  reduce->add_option("--order", red.order, "series order K");
  reduce->add_option("--normalize", red.normalize, "never | ifneeded | always");
  reduce->add_option("--end", end, "zero | infinity | both");
  reduce->add_option("--z", red.z, "points at which to evaluate the gauges");
  reduce->add_option("--grid", red.grid, "start,stop,count,log|linear along a ray");
  reduce->add_option("--arg", red.arg, "argument of the --grid ray in radians");

  SystemArgs con;
  TolOptions con_tol;
  bool group = false, twisted = false;
  CLI::App* connect = app.add_subcommand("connect", "connection matrices M, P, P-breve and path samples");
  connect->add_option("--system", con.system, "system file (JSON)")->required();
  connect->add_option("--order", con.order, "series order K");
  connect->add_option("--normalize", con.normalize, "never | ifneeded | always");
  connect->add_option("--z", con.z, "evaluation point(s)");
  connect->add_option("--grid", con.grid, "start,stop,count,log|linear along a ray");
  connect->add_option("--arg", con.arg, "argument of the --grid ray in radians");
  connect->add_flag("--group", group, "also report V(a_i)^-1 V(a_i+1) samples");
  connect->add_flag("--twisted", twisted, "use P-breve for --group samples");
  con_tol.attach(connect);

  FlatArgs fl;
  CLI::App* flat = app.add_subcommand("flat", "Dunford data, hom spaces, Galois action and plethysm");
  fl.q.attach(flat);
  flat->add_option("--A", fl.A, "source matrix as JSON");
  flat->add_option("--B", fl.B, "target matrix as JSON");
  flat->add_option("--alpha", fl.alpha, "integer exponent of gamma1");
  flat->add_option("--beta", fl.beta, "exponent of gamma2");
  flat->add_option("--lambda", fl.lambda, "unipotent exponent lambda");
  flat->add_option("--z0", fl.z0, "base point of the naturality check");
  flat->add_option("--plethysm", fl.plethysm, "n,p: Jordan sizes of J_n (x) J_p");

  ConfluenceArgs cf;
  CLI::App* confluence = app.add_subcommand("confluence", "q -> 1 limit scans");
  confluence->add_option("--tau0", cf.tau0, "base tau0 (default 0.25i)");
  confluence->add_option("--eps", cf.eps, "eps values (default 2^-2 .. 2^-7)");
  confluence->add_option("--z", cf.z, "point for the char and log scans");
  confluence->add_option("--gamma", cf.gamma, "exponent for the char scan");
  confluence->add_option("--system", cf.system, "file holding Btilde (and tau0)");
  confluence->add_option("--probe", cf.probes, "z1;z2;same|across");
  confluence->add_option("--scans", cf.scans, "all, or a list of char,log,local,connection");
  confluence->add_option("--order", cf.order, "series order for the connection scan");
  confluence->add_flag("--csv", cf.csv, "print a CSV table instead of JSON");

  std::string filter;
  CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suites");
  selftest->add_option("--filter", filter, "run one module only");

  for (CLI::App* sub : {special, reduce, connect, flat, confluence, selftest})
    sub->add_flag("--pretty", pretty, "indent the JSON result document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (special->parsed()) return run_special(sp, pretty);
    if (reduce->parsed()) return run_reduce(red, end, pretty);
    if (connect->parsed()) return run_connect(con, con_tol, group, twisted, pretty);
    if (flat->parsed()) return run_flat(fl, pretty);
    if (confluence->parsed()) return run_confluence(cf, pretty);
    if (selftest->parsed()) return run_selftest_cmd(filter, pretty);
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
