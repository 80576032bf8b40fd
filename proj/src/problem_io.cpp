#include "stlsmooth/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stlsmooth/error.hpp"
#include "stlsmooth/parser.hpp"

namespace stlsmooth {
namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) throw ConfigError(ctx + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(ctx + ": bad \"" + key + "\": " + e.what());
  }
}

Interval noise_of(const json& j, const std::string& ctx) {
  if (!j.contains("noise")) return {};
  const auto v = get<std::vector<double>>(j, "noise", ctx);
  if (v.size() != 2 || !(v[0] <= v[1])) throw ConfigError(ctx + ": noise must be [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

Mat matrix(const json& j, const char* key, const std::string& ctx) {
  const auto rows = get<std::vector<std::vector<double>>>(j, key, ctx);
  if (rows.empty()) return Mat(0, 0);
  Mat m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw ConfigError(ctx + ": ragged matrix " + key);
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

System system_of(const json& j) {
  const std::string ctx = "system";
  const auto type = get<std::string>(j, "type", ctx);
  if (type == "single_integrator_2d") return single_integrator_2d(j.value("dt", 1.0));
  if (type == "double_integrator_2d") return double_integrator_2d(j.value("dt", 1.0));
  if (type == "linear") {
    const Mat A = matrix(j, "A", ctx), B = matrix(j, "B", ctx), C = matrix(j, "C", ctx);
    const Mat D = j.contains("D") ? matrix(j, "D", ctx) : Mat::Zero(C.rows(), B.cols());
    return linear_system(A, B, C, D);
  }
  throw ConfigError("unknown system type '" + type + "'");
}

void add_predicates(PredicateTable& table, const json& preds) {
  if (!preds.is_object()) throw ConfigError("predicates must be an object keyed by name");
  const std::size_t q = table.dim();
  for (const auto& [name, def] : preds.items()) {
    const std::string ctx = "predicate '" + name + "'";
    const auto type = get<std::string>(def, "type", ctx);
    const Interval w = noise_of(def, ctx);
    if (type == "affine") {
      const auto c = get<std::vector<double>>(def, "c", ctx);
      if (q != 0 && c.size() != q) {
        throw DimensionError(ctx + ": c has length " + std::to_string(c.size()) +
                             ", samples have length " + std::to_string(q));
      }
      table.add(Predicate::affine(name, c, def.value("b", 0.0)).with_noise(w));
    } else if (type == "box") {
      const auto ch = get<std::vector<std::size_t>>(def, "channels", ctx);
      const auto x = get<std::vector<double>>(def, "x", ctx);
      const auto y = get<std::vector<double>>(def, "y", ctx);
      if (ch.size() != 2 || x.size() != 2 || y.size() != 2) {
        throw ConfigError(ctx + ": channels, x and y must each have two entries");
      }
      table.add_box(name, ch[0], ch[1], x[0], x[1], y[0], y[1], w);
    } else if (type == "ball") {
      table.add(Predicate::ball(name, q, get<std::vector<std::size_t>>(def, "dims", ctx),
                                get<std::vector<double>>(def, "center", ctx),
                                get<double>(def, "radius", ctx))
                    .with_noise(w));
    } else {
      throw ConfigError(ctx + ": unknown type '" + type + "'");
    }
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PredicateTable parse_predicates_json(std::string_view text, std::size_t q) {
  PredicateTable table(q);
  add_predicates(table, parse_json(text, "predicate file"));
  return table;
}

void add_channel_predicates(PredicateTable& table) {
  const std::size_t q = table.dim();
  for (std::size_t i = 0; i < q; ++i) {
    const std::string name = "s" + std::to_string(i);
    if (table.contains(name)) continue;
    std::vector<double> c(q, 0.0);
    c[i] = 1.0;
    table.add(Predicate::affine(name, std::move(c), 0.0));
  }
}

SynthesisProblem parse_problem_json(std::string_view text) {
  const json j = parse_json(text, "problem file");
  const std::string ctx = "problem";
  System sys = system_of(j.contains("system") ? j.at("system") : json{{"type", "single_integrator_2d"}});
  const auto x0v = get<std::vector<double>>(j, "x0", ctx);
  Vec x0 = Eigen::Map<const Vec>(x0v.data(), static_cast<Eigen::Index>(x0v.size()));
  const std::size_t q = sys.p() + sys.n() + sys.m();

  PredicateTable table(q);
  if (j.contains("predicates")) add_predicates(table, j.at("predicates"));
  add_channel_predicates(table);
  const Formula f = to_nnf(parse(get<std::string>(j, "formula", ctx), table));

  SynthesisProblem prob{j.value("name", std::string("problem")), std::move(sys), x0,
                        get<int>(j, "T", ctx), f};
  prob.control_penalty = j.value("control_penalty", 0.01);
  prob.range_bound = j.value("range_bound", 20.0);

  bool any_noise = false;
  if (j.contains("predicates")) {
    for (const auto& [name, def] : j.at("predicates").items()) {
      const Interval w = noise_of(def, name);
      any_noise = any_noise || w.lo != 0.0 || w.hi != 0.0;
    }
  }
  prob.smooth.noise_enabled = any_noise;
  if (j.contains("smooth")) {
    const json& s = j.at("smooth");
    if (s.contains("srm")) prob.smooth.srm = parse_srm(get<std::string>(s, "srm", "smooth"));
    prob.smooth.defaults.k1 = s.value("k1", prob.smooth.defaults.k1);
    prob.smooth.defaults.k2 = s.value("k2", prob.smooth.defaults.k2);
    prob.smooth.noise_enabled = s.value("noise", any_noise);
    if (s.contains("overrides")) {
      for (const auto& [path, kk] : s.at("overrides").items()) {
        const auto v = kk.get<std::vector<double>>();
        if (v.size() != 2) throw ConfigError("override for " + path + " must be [k1, k2]");
        prob.smooth.overrides[path] = {v[0], v[1]};
      }
    }
  }
  prob.smooth.validate();
  prob.validate();
  return prob;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SynthesisProblem load_problem(const std::string& path) { return parse_problem_json(read_text_file(path)); }

std::string result_to_json(const SynthesisProblem& prob, const SolveResult& res) {
  nlohmann::ordered_json j;
  j["problem"] = prob.name;
  j["srm"] = std::string(to_string(res.config.srm));
  j["k1"] = res.config.defaults.k1;
  j["k2"] = res.config.defaults.k2;
  j["seed"] = res.seed;
  j["smooth_value"] = res.smooth_value;
  j["exact_value"] = res.exact_value;
  j["smooth_cost"] = res.smooth_cost;
  j["exact_cost"] = res.exact_cost;
  j["error_interval"] = {res.error_interval.lo, res.error_interval.hi};
  j["certified_range"] = {res.smooth_value + res.error_interval.lo,
                          res.smooth_value + res.error_interval.hi};
  j["iterations"] = res.iterations;
  j["certified"] = res.certified;
  j["stop_reason"] = res.stop_reason;
  j["stage_exact"] = res.stage_exact;
  auto u = nlohmann::ordered_json::array();
  for (Eigen::Index t = 0; t < res.u_star.cols(); ++t) {
    std::vector<double> col(res.u_star.rows());
    for (Eigen::Index i = 0; i < res.u_star.rows(); ++i) col[static_cast<std::size_t>(i)] = res.u_star(i, t);
    u.push_back(col);
  }
  j["u_star"] = u;
  return j.dump(2);
}

std::string trajectory_csv(const SynthesisProblem& prob, const SolveResult& res) {
  std::ostringstream out;
  write_signal_csv(rollout(prob.system, res.u_star, prob.x0), out);
  return out.str();
}

std::string trace_csv(const SolveResult& res) {
  std::ostringstream out;
  out << "iter,smooth_rho,exact_rho,L,U,grad_norm,smooth_cost\n";
  for (const TraceRecord& r : res.trace) {
    out << r.iter << ',' << num(r.smooth_rho) << ',' << num(r.exact_rho) << ',' << num(r.lo) << ','
        << num(r.hi) << ',' << num(r.grad_norm) << ',' << num(r.smooth_cost) << '\n';
  }
  return out.str();
}

}  // namespace stlsmooth
