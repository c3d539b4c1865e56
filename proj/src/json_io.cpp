#include "rav/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rav {

json qscalar_to_json(const QScalar& x) {
  if (x.is_rational()) return x.a().get_str();
  json j;
  j["a"] = x.a().get_str();
  j["b"] = x.b().get_str();
  j["d"] = x.d();
  return j;
}

QScalar json_to_qscalar(const json& j) {
  if (j.is_string()) return QScalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return QScalar(static_cast<long>(j.get<long long>()));
  if (j.is_object()) {
    check(j.contains("a") && j.contains("b") && j.contains("d"), "ParseError",
          "quadratic scalar needs keys a, b, d");
    check(j["a"].is_string() && j["b"].is_string() && j["d"].is_number_integer(), "ParseError",
          "quadratic scalar: a, b strings and d integer");
    return QScalar(parse_rational(j["a"].get<std::string>()),
                   parse_rational(j["b"].get<std::string>()),
                   static_cast<long>(j["d"].get<long long>()));
  }
  fail("ParseError", "scalar must be a string, an integer, or {a, b, d}");
}

json exact_to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(qscalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix json_to_exact(const json& j) {
  check(j.is_array(), "ParseError", "matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  check(rows > 0, "ParseError", "matrix must have at least one row");
  check(j[0].is_array(), "ParseError", "matrix rows must be arrays");
  int cols = static_cast<int>(j[0].size());
  ExactMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    check(j[static_cast<std::size_t>(i)].is_array() &&
              static_cast<int>(j[static_cast<std::size_t>(i)].size()) == cols,
          "ParseError", "matrix rows must have equal length");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = json_to_qscalar(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  }
  return m;
}

json float_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd json_to_float_matrix(const json& j) {
  check(j.is_array(), "ParseError", "matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  check(rows > 0, "ParseError", "matrix must have at least one row");
  check(j[0].is_array(), "ParseError", "matrix rows must be arrays");
  int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    check(row.is_array() && static_cast<int>(row.size()) == cols, "ParseError",
          "matrix rows must have equal length");
    for (int c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      check(e.is_number(), "ParseError", "float matrix entries must be numbers");
      m(i, c) = e.get<double>();
    }
  }
  return m;
}

json siegel_to_json(const SiegelPoint& z) {
  json j;
  j["g"] = z.g;
  j["mode"] = z.is_exact() ? "exact" : "float";
  if (z.is_exact()) {
    j["X"] = exact_to_json(z.xe);
    j["Y"] = exact_to_json(z.ye);
  } else {
    j["X"] = float_to_json(z.xf);
    j["Y"] = float_to_json(z.yf);
  }
  return j;
}

SiegelPoint json_to_siegel(const json& j) {
  check(j.is_object() && j.contains("mode") && j.contains("X") && j.contains("Y"), "ParseError",
        "period point needs keys mode, X, Y");
  check(j["mode"].is_string(), "ParseError", "mode must be \"exact\" or \"float\"");
  std::string mode = j["mode"].get<std::string>();
  SiegelPoint z;
  if (mode == "exact")
    z = SiegelPoint::exact(json_to_exact(j["X"]), json_to_exact(j["Y"]));
  else if (mode == "float")
    z = SiegelPoint::floating(json_to_float_matrix(j["X"]), json_to_float_matrix(j["Y"]));
  else
    fail("ParseError", "mode must be \"exact\" or \"float\"");
  if (j.contains("g"))
    check(j["g"].is_number_integer() && j["g"].get<int>() == z.g, "ParseError",
          "g does not match the matrix size");
  return z;
}

json jmat_to_json(const ComplexStructure& c) {
  json j;
  j["g"] = c.g;
  j["mode"] = c.mode == Mode::Exact ? "exact" : "float";
  j["J"] = c.mode == Mode::Exact ? exact_to_json(c.je) : float_to_json(c.jf);
  return j;
}

json plane_to_json(const RationalPlane& p) {
  json j;
  j["n"] = p.n();
  j["r"] = p.r();
  j["B"] = exact_to_json(p.basis());
  return j;
}

RationalPlane json_to_plane(const json& j) {
  check(j.is_object() && j.contains("B"), "ParseError", "plane needs key B");
  RationalPlane p = RationalPlane::from_columns(json_to_exact(j["B"]));
  if (j.contains("n"))
    check(j["n"].is_number_integer() && j["n"].get<int>() == p.n(), "ParseError",
          "n does not match the basis");
  if (j.contains("r"))
    check(j["r"].is_number_integer() && j["r"].get<int>() == p.r(), "ParseError",
          "r does not match the basis");
  return p;
}

json real_plane_to_json(const RealPlane& p) {
  json j;
  j["n"] = p.n;
  j["r"] = p.r;
  j["B"] = float_to_json(p.b);
  return j;
}

RealPlane json_to_real_plane(const json& j) {
  check(j.is_object() && j.contains("B"), "ParseError", "plane needs key B");
  RealPlane p = RealPlane::from_span(json_to_float_matrix(j["B"]));
  if (j.contains("r"))
    check(j["r"].is_number_integer() && j["r"].get<int>() == p.r, "ParseError",
          "r does not match the basis rank");
  return p;
}

json qtensor_to_json(const QTensor& t) {
  json j;
  j["g"] = t.g;
  j["m"] = t.m;
  json rows = json::array();
  for (int i = 0; i < t.g; ++i) {
    json row = json::array();
    for (int jj = 0; jj < t.g; ++jj) {
      json fib = json::array();
      for (int c = 0; c < t.m; ++c) fib.push_back(qscalar_to_json(t.at(i, jj, c)));
      row.push_back(std::move(fib));
    }
    rows.push_back(std::move(row));
  }
  j["q"] = std::move(rows);
  return j;
}

QTensor json_to_qtensor(const json& j) {
  check(j.is_object() && j.contains("g") && j.contains("m") && j.contains("q"), "ParseError",
        "tensor needs keys g, m, q");
  check(j["g"].is_number_integer() && j["m"].is_number_integer(), "ParseError",
        "g and m must be integers");
  int g = j["g"].get<int>(), m = j["m"].get<int>();
  check(g >= 1 && m >= 0, "ParseError", "need g >= 1 and m >= 0");
  const json& q = j["q"];
  check(q.is_array() && static_cast<int>(q.size()) == g, "ParseError", "q must have g rows");
  QTensor t(g, m);
  for (int i = 0; i < g; ++i) {
    const json& row = q[static_cast<std::size_t>(i)];
    check(row.is_array() && static_cast<int>(row.size()) == g, "ParseError",
          "q rows must have g entries");
    for (int jj = 0; jj < g; ++jj) {
      const json& fib = row[static_cast<std::size_t>(jj)];
      check(fib.is_array() && static_cast<int>(fib.size()) == m, "ParseError",
            "q entries must have m coordinates");
      for (int c = 0; c < m; ++c)
        t.at(i, jj, c) = json_to_qscalar(fib[static_cast<std::size_t>(c)]);
    }
  }
  check(t.is_symmetric(), "ParseError", "tensor is not symmetric");
  return t;
}

json certificate_to_json(const SubvarietyCertificate& c) {
  json j;
  j["plane"] = plane_to_json(c.plane);
  j["k"] = c.k;
  j["j_stable"] = c.j_stable;
  j["j_residual"] = c.j_residual;
  j["t_stable"] = c.t_stable.has_value() ? json(*c.t_stable) : json(nullptr);
  j["symplectic_rank"] = c.symplectic_rank;
  j["certified"] = c.certified();
  return j;
}

json config_to_json(const Config& c) {
  json j;
  j["tol_fix"] = c.tol_fix;
  j["tol_res"] = c.tol_res;
  j["tol_fstable"] = c.tol_fstable;
  j["denom_bound"] = c.denom_bound;
  j["max_iters"] = c.max_iters;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

void json_update_config(const json& j, Config& c) {
  check(j.is_object(), "ParseError", "config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "tol_fix")
      c.tol_fix = v.get<double>();
    else if (key == "tol_res")
      c.tol_res = v.get<double>();
    else if (key == "tol_fstable")
      c.tol_fstable = v.get<double>();
    else if (key == "denom_bound")
      c.denom_bound = static_cast<long>(v.get<long long>());
    else if (key == "max_iters")
      c.max_iters = v.get<int>();
    else if (key == "seed")
      c.seed = static_cast<unsigned long>(v.get<unsigned long long>());
    else if (key == "threads")
      c.threads = v.get<int>();
    else
      fail("ParseError", "unknown config key: " + key);
  }
  c.validate_fields();
}

json witness_to_json(const DensityWitness& w) {
  json j;
  j["g"] = w.g;
  j["k"] = w.k;
  j["alpha"] = w.alpha;
  j["lambda"] = w.lambda;
  j["M"] = exact_to_json(w.m);
  j["T"] = exact_to_json(w.t);
  j["Z_start"] = siegel_to_json(w.z_start);
  j["Z_found"] = siegel_to_json(w.z_found);
  j["plane"] = plane_to_json(w.plane);
  j["j_residual"] = w.j_residual;
  j["displacement"] = w.displacement;
  j["eps"] = w.eps;
  j["config"] = config_to_json(w.cfg);
  return j;
}

json report_to_json(const CertifyReport& r) {
  json entries = json::array();
  for (const CertifyReport::Entry& e : r.entries) {
    json je;
    je["name"] = e.name;
    je["pass"] = e.pass;
    je["value"] = e.value;
    entries.push_back(std::move(je));
  }
  json j;
  j["entries"] = std::move(entries);
  j["all_pass"] = r.all_pass();
  return j;
}

json fermat_to_json(const FermatReport& r) {
  json j;
  j["d"] = r.d;
  j["g"] = r.g;
  j["m"] = r.m;
  j["passes"] = r.passes;
  j["witness_rank"] = r.witness_rank;
  j["v"] = exact_to_json(r.v);
  return j;
}

json sample_table_to_json(const SampleTable& t) {
  json j;
  j["alpha"] = t.alpha;
  j["lambda"] = t.lambda;
  j["g"] = t.g;
  j["k"] = t.k;
  j["n"] = t.n;
  j["seed"] = t.seed;
  j["eps_schedule"] = t.eps_schedule;
  json rows = json::array();
  for (const SampleRow& r : t.rows) {
    json jr;
    jr["index"] = r.index;
    jr["seed"] = r.seed;
    json cells = json::array();
    for (const SampleCell& c : r.cells) {
      json jc;
      jc["eps"] = c.eps;
      jc["success"] = c.success;
      jc["residual"] = c.residual;
      jc["displacement"] = c.displacement;
      jc["planes_tried"] = c.planes_tried;
      cells.push_back(std::move(jc));
    }
    jr["cells"] = std::move(cells);
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  json summary = json::array();
  for (const SampleSummary& s : t.summary) {
    json js;
    js["eps"] = s.eps;
    js["success_rate"] = s.success_rate;
    js["median_residual"] = s.median_residual;
    js["median_displacement"] = s.median_displacement;
    summary.push_back(std::move(js));
  }
  j["summary"] = std::move(summary);
  return j;
}

namespace {

std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string sample_table_csv(const SampleTable& t) {
  std::ostringstream out;
  out << "index,seed,eps,success,residual,displacement,planes_tried\n";
  for (const SampleRow& r : t.rows)
    for (const SampleCell& c : r.cells)
      out << r.index << ',' << r.seed << ',' << fmt_g17(c.eps) << ',' << (c.success ? 1 : 0)
          << ',' << fmt_g17(c.residual) << ',' << fmt_g17(c.displacement) << ','
          << c.planes_tried << '\n';
  out << "\neps,success_rate,median_residual,median_displacement\n";
  for (const SampleSummary& s : t.summary)
    out << fmt_g17(s.eps) << ',' << fmt_g17(s.success_rate) << ',' << fmt_g17(s.median_residual)
        << ',' << fmt_g17(s.median_displacement) << '\n';
  return out.str();
}

json error_to_json(const DomainError& e) {
  json inner;
  inner["code"] = e.code();
  inner["what"] = e.what();
  json j;
  j["error"] = std::move(inner);
  return j;
}

json load_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    check(static_cast<bool>(in), "ParseError", "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json j = json::parse(text, nullptr, false);
  check(!j.is_discarded(), "ParseError", "malformed JSON in " + path);
  return j;
}

}  // namespace rav
