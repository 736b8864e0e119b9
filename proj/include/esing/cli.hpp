#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "esing/desing.hpp"
#include "esing/diffop.hpp"
#include "esing/parse.hpp"

namespace esing {

using Report = nlohmann::ordered_json;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"desing", "relations", "apparent", "sympow",
                                                 "minop",  "growth",    "series",   "check"};
  return names;
}

inline bool is_command(const std::string& s) {
  for (const auto& c : command_names())
    if (c == s) return true;
  return false;
}

struct Task {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // file order
  int line = 0;
};

struct Flags {
  int order = 50;
  int degree = 8;
  std::optional<Rat> point;
  int N = 1;
  std::optional<std::vector<Poly>> a;
};

/// Problem file: line oriented, '#' starts a comment line.
///   [system]     one matrix row per line, entries separated by ';'
///   [functions]  one E-function spec per line
///   [operator]   p_0; p_1; ...; p_m  (coefficient of D^i, lowest first)
///   [tasks]      command key=value ...
struct ProblemFile {
  std::optional<DiffSystem> system;
  std::vector<std::string> function_specs;
  std::vector<EFunction> functions;
  std::optional<ScalarOperator> op;
  std::vector<Task> tasks;
};

inline std::vector<Poly> parse_poly_list(const std::string& text, int line_no, int col0 = 1) {
  std::vector<Poly> out;
  for (const auto& [field, col] : split_fields(text, ';')) {
    if (trim(field).empty()) throw ParseError("empty list entry", line_no, col0 + col - 1);
    out.push_back(parse_poly(field, 'z', line_no, col0 + col - 1));
  }
  return out;
}

inline ProblemFile parse_problem(const std::string& text) {
  ProblemFile pf;
  std::string section;
  std::vector<std::vector<RatFun>> rows;
  int system_line = 0;
  std::istringstream in(text);
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      section = line.substr(1, line.size() - 2);
      if (section != "system" && section != "functions" && section != "operator" && section != "tasks")
        throw ParseError("unknown section '" + section + "'", line_no, 2);
      if (section == "system") system_line = line_no;
      continue;
    }
    if (section.empty()) throw ParseError("content before the first section", line_no, 1);
    if (section == "system") {
      rows.push_back(parse_row(raw, line_no));
      if (rows.back().size() != rows.front().size()) throw ParseError("ragged matrix row", line_no, 1);
    } else if (section == "functions") {
      pf.function_specs.push_back(line);
      pf.functions.push_back(parse_efunction(raw, line_no));
    } else if (section == "operator") {
      if (pf.op) throw ParseError("operator given twice", line_no, 1);
      pf.op = ScalarOperator(parse_poly_list(raw, line_no));
    } else {
      std::istringstream words(line);
      Task t;
      t.line = line_no;
      words >> t.name;
      if (!is_command(t.name)) throw ParseError("unknown task '" + t.name + "'", line_no, 1);
      std::string kv;
      while (words >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + kv + "'", line_no, 1);
        t.params.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
      pf.tasks.push_back(std::move(t));
    }
  }
  if (!rows.empty()) {
    if (rows.size() != rows.front().size()) throw ParseError("system matrix is not square", system_line, 1);
    RatFunMatrix A(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j) A(i, j) = rows[i][j];
    pf.system = DiffSystem(std::move(A));
  }
  if (pf.system && !pf.functions.empty() && pf.functions.size() != pf.system->dim())
    throw Error("dimension mismatch: system has dimension " + std::to_string(pf.system->dim()) + " but " +
                std::to_string(pf.functions.size()) + " functions are given");
  return pf;
}

inline int parse_int_value(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw Error("invalid integer for " + key + ": '" + v + "'");
  }
}

/// Task parameters override the command-line defaults.
inline Flags apply_params(Flags f, const Task& t) {
  for (const auto& [k, v] : t.params) {
    if (k == "order")
      f.order = parse_int_value(k, v);
    else if (k == "degree")
      f.degree = parse_int_value(k, v);
    else if (k == "N")
      f.N = parse_int_value(k, v);
    else if (k == "point" || k == "xi")
      f.point = parse_rat(v, t.line);
    else if (k == "a")
      f.a = parse_poly_list(v, t.line);
    else
      throw Error("line " + std::to_string(t.line) + ": unknown task parameter '" + k + "'");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Report encoding.

namespace report {

inline Report matrix(const RatFunMatrix& m) {
  Report out = Report::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Report matrix(const PolyMatrix& m) { return matrix(to_ratfun(m)); }

inline Report matrix(const RatMatrix& m) {
  Report out = Report::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Report polys(const std::vector<Poly>& ps) {
  Report out = Report::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

inline Report rats(const std::vector<Rat>& qs) {
  Report out = Report::array();
  for (const auto& q : qs) out.push_back(to_string(q));
  return out;
}

inline std::string z_power(int s) { return "z^" + std::to_string(s); }

}  // namespace report

namespace detail {

inline const DiffSystem& need_system(const ProblemFile& pf) {
  if (!pf.system) throw Error("problem file has no [system] section");
  return *pf.system;
}

inline const std::vector<EFunction>& need_functions(const ProblemFile& pf) {
  if (pf.functions.empty()) throw Error("problem file has no [functions] section");
  return pf.functions;
}

inline std::vector<TruncSeries> function_series(const ProblemFile& pf, int order) {
  std::vector<TruncSeries> out;
  for (const auto& f : need_functions(pf)) out.push_back(f.series(order));
  return out;
}

inline RelationBasis problem_relations(const ProblemFile& pf, const Flags& fl) {
  const auto& S = need_system(pf);
  if (pf.functions.empty()) {
    RelationBasis none;
    none.n = S.dim();
    none.C = PolyMatrix(0, S.dim());
    return none;
  }
  return normalize_basis(find_polynomial_relations(function_series(pf, fl.order), fl.degree));
}

inline std::vector<Poly> combination(const ProblemFile& pf, const Flags& fl) {
  const auto n = need_system(pf).dim();
  if (fl.a) {
    if (fl.a->size() != n) throw Error("coefficient vector length does not match system dimension");
    return *fl.a;
  }
  std::vector<Poly> a(n, Poly(0));
  a[0] = Poly(1);
  return a;
}

}  // namespace detail

inline Report run_desing(const ProblemFile& pf, const Flags& fl) {
  DesingOptions opt;
  opt.order = fl.order;
  opt.degree = fl.degree;
  const auto res = desingularize(detail::need_system(pf), detail::need_functions(pf), opt);
  Report r;
  r["command"] = "desing";
  r["B"] = report::matrix(res.B);
  r["final_system"] = report::matrix(res.final_system.matrix());
  r["final_denominator"] = report::z_power(res.z_power);
  r["step_count"] = res.steps.size();
  Report steps = Report::array();
  for (const auto& s : res.steps) {
    Report js;
    js["alpha"] = to_string(s.alpha);
    js["pole_order"] = s.pole_order;
    js["M"] = report::matrix(s.M);
    js["wronskian_before"] = s.wronskian_before;
    js["wronskian_after"] = s.wronskian_after;
    steps.push_back(std::move(js));
  }
  r["steps"] = std::move(steps);
  Report e = Report::array();
  for (const auto& g : res.e_functions) e.push_back(report::rats(g.coefficients(8)));
  r["e_coefficients"] = std::move(e);
  return r;
}

inline Report run_relations(const ProblemFile& pf, const Flags& fl) {
  const auto raw = find_polynomial_relations(detail::function_series(pf, fl.order), fl.degree);
  const auto B = normalize_basis(raw);
  Report r;
  r["command"] = "relations";
  r["n"] = B.n;
  r["rank"] = B.n - B.rank_deficit();
  r["relations"] = report::matrix(B.C);
  if (fl.point) {
    r["point"] = to_string(*fl.point);
    r["specialization_rank"] = specialization_rank(B, *fl.point);
  }
  return r;
}

inline Report run_minop(const ProblemFile& pf, const Flags& fl) {
  const auto C = detail::problem_relations(pf, fl);
  const auto a = detail::combination(pf, fl);
  const auto mo = minimal_combination_operator(detail::need_system(pf), C, a);
  Report r;
  r["command"] = "minop";
  r["a"] = report::polys(a);
  r["order"] = mo.op.order();
  r["expected_order"] = mo.expected_order;
  r["deltas"] = report::polys(mo.deltas);
  r["operator"] = to_string(mo.op);
  return r;
}

inline Report run_apparent(const ProblemFile& pf, const Flags& fl) {
  if (!fl.point) throw Error("apparent needs --xi");
  const Rat xi = *fl.point;
  const ScalarOperator L =
      pf.op ? *pf.op
            : minimal_combination_operator(detail::need_system(pf), detail::problem_relations(pf, fl),
                                           detail::combination(pf, fl))
                  .op;
  const auto fd = frobenius_analyze(L, xi, fl.order);
  const auto ap = is_apparent(L, xi, fl.order);
  Report r;
  r["command"] = "apparent";
  r["operator"] = to_string(L);
  r["xi"] = to_string(xi);
  r["apparent"] = ap.apparent;
  r["all_vanish"] = ap.all_vanish;
  r["indicial"] = to_string(fd.indicial, 'x');
  Report ex = Report::array();
  for (const auto& [e, mult] : fd.exponents) ex.push_back(Report::array({to_string(e), mult}));
  r["exponents"] = std::move(ex);
  r["regular"] = fd.regular;
  r["log_involved"] = fd.log_involved;
  r["holomorphic_basis_count"] = fd.holomorphic_basis_count;
  if (fd.min_valuation)
    r["min_valuation"] = *fd.min_valuation;
  else
    r["min_valuation"] = nullptr;
  return r;
}

inline Report run_sympow(const ProblemFile& pf, const Flags& fl) {
  const auto sp = sym_power(detail::need_system(pf), fl.N);
  Report r;
  r["command"] = "sympow";
  r["N"] = fl.N;
  Report mons = Report::array();
  for (const auto& m : sp.monomials) mons.push_back(m);
  r["monomials"] = std::move(mons);
  r["system"] = report::matrix(sp.system.matrix());
  return r;
}

inline Report run_growth(const ProblemFile& pf, const Flags& fl) {
  Report r;
  r["command"] = "growth";
  r["K"] = fl.order;
  Report fs = Report::array();
  const auto& funcs = detail::need_functions(pf);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const auto g = growth_report(funcs[i], static_cast<std::size_t>(fl.order));
    Report j;
    j["function"] = pf.function_specs[i];
    j["C"] = g.coeff.C();
    j["B"] = g.coeff.B();
    j["C_half"] = g.C_half;
    j["denominator_C"] = g.denominator.C();
    j["hmax"] = g.hmax;
    j["h_slope"] = g.h_slope;
    j["superexponential"] = g.superexponential;
    fs.push_back(std::move(j));
  }
  r["functions"] = std::move(fs);
  return r;
}

inline Report run_series(const ProblemFile& pf, const Flags& fl) {
  Report r;
  r["command"] = "series";
  r["order"] = fl.order;
  Report fs = Report::array();
  const auto& funcs = detail::need_functions(pf);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    Report j;
    j["function"] = pf.function_specs[i];
    j["taylor"] = report::rats(funcs[i].series(fl.order).coeffs());
    fs.push_back(std::move(j));
  }
  r["functions"] = std::move(fs);
  return r;
}

inline Report run_check(const ProblemFile& pf, const Flags& fl) {
  const auto& S = detail::need_system(pf);
  Report r;
  r["command"] = "check";
  r["dimension"] = S.dim();
  r["denominator"] = to_string(S.denominator());
  r["trace"] = to_string(S.trace());
  const auto locus = singular_locus(S);
  Report pts = Report::array();
  for (const auto& [p, mult] : locus.rational_points) {
    Report j;
    j["point"] = to_string(p);
    j["pole_order"] = S.pole_order(p);
    if (sgn(p) != 0) {
      try {
        j["wronskian_order"] = wronskian_order(S, p);
      } catch (const Error& e) {
        j["wronskian_order"] = nullptr;
        j["note"] = e.what();
      }
    }
    pts.push_back(std::move(j));
  }
  r["rational_singularities"] = std::move(pts);
  Report res = Report::array();
  for (const auto& [f, mult] : locus.residual_factors) res.push_back(to_string(f));
  r["residual_factors"] = std::move(res);
  if (!pf.functions.empty()) r["solves"] = detail::solves(S, pf.functions, fl.order);
  return r;
}

inline Report run_command(const ProblemFile& pf, const std::string& cmd, const Flags& fl) {
  if (cmd == "desing") return run_desing(pf, fl);
  if (cmd == "relations") return run_relations(pf, fl);
  if (cmd == "apparent") return run_apparent(pf, fl);
  if (cmd == "sympow") return run_sympow(pf, fl);
  if (cmd == "minop") return run_minop(pf, fl);
  if (cmd == "growth") return run_growth(pf, fl);
  if (cmd == "series") return run_series(pf, fl);
  if (cmd == "check") return run_check(pf, fl);
  throw Error("unknown command '" + cmd + "'");
}

/// Runs every [tasks] entry in file order; each report records its task line.
inline Report run_tasks(const ProblemFile& pf, const Flags& defaults) {
  Report out = Report::array();
  for (const auto& t : pf.tasks) {
    Report r = run_command(pf, t.name, apply_params(defaults, t));
    r["task_line"] = t.line;
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string summarize(const Report& r) {
  const std::string cmd = r.value("command", "");
  std::ostringstream s;
  s << cmd << ": ";
  if (cmd == "desing")
    s << r["step_count"].get<std::size_t>() << " step(s), final denominator " << r["final_denominator"].get<std::string>();
  else if (cmd == "relations")
    s << r["relations"].size() << " relation(s), rank " << r["rank"].get<std::size_t>();
  else if (cmd == "apparent")
    s << "apparent=" << (r["apparent"].get<bool>() ? "true" : "false")
      << " all_vanish=" << (r["all_vanish"].get<bool>() ? "true" : "false");
  else if (cmd == "sympow")
    s << "dimension " << r["monomials"].size();
  else if (cmd == "minop")
    s << r["operator"].get<std::string>();
  else if (cmd == "growth" || cmd == "series")
    s << r["functions"].size() << " function(s)";
  else if (cmd == "check")
    s << "dimension " << r["dimension"].get<std::size_t>();
  return s.str();
}

}  // namespace esing
