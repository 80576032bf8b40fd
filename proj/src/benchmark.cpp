#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "stlsmooth/error.hpp"
#include "stlsmooth/synthesis.hpp"

namespace stlsmooth {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchOptions& opts) {
  if (opts.realizations < 1) throw ConfigError("need at least one realization");
  std::vector<BenchRow> rows;
  for (int id : opts.scps) {
    const SynthesisProblem prob = build_scp(id, opts.noise);
    for (Srm srm : opts.srms) {
      for (double k : opts.ks) {
        SmoothConfig cfg = prob.smooth;
        cfg.srm = srm;
        cfg.defaults = {k, k};
        for (int r = 0; r < opts.realizations; ++r) {
          OptimizeOptions o;
          o.max_iters = opts.max_iters;
          o.seed = static_cast<std::uint64_t>(r);
          const auto start = std::chrono::steady_clock::now();
          const SolveResult res = optimize(prob, cfg, o);
          const auto stop = std::chrono::steady_clock::now();
          BenchRow row;
          row.scp = id;
          row.srm = srm;
          row.k1 = row.k2 = k;
          row.seed = res.seed;
          row.control_cost = res.smooth_value - res.smooth_cost;
          row.smooth_cost = res.smooth_cost;
          row.smooth_rho = res.smooth_value;
          row.lo = res.error_interval.lo;
          row.hi = res.error_interval.hi;
          row.width = res.error_interval.width();
          row.exact_rho = res.exact_value;
          row.exact_cost = res.exact_cost;
          row.iters = res.iterations;
          row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::string bench_runs_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream out;
  out << "scp,srm,k1,k2,seed,control_cost,smooth_cost,smooth_rho,L,U,width,exact_rho,exact_cost,iters";
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const BenchRow& r : rows) {
    out << r.scp << ',' << to_string(r.srm) << ',' << num(r.k1) << ',' << num(r.k2) << ','
        << r.seed << ',' << num(r.control_cost) << ',' << num(r.smooth_cost) << ','
        << num(r.smooth_rho) << ',' << num(r.lo) << ',' << num(r.hi) << ',' << num(r.width) << ','
        << num(r.exact_rho) << ',' << num(r.exact_cost) << ',' << r.iters;
    if (timing) out << ',' << num(r.wall_ms);
    out << '\n';
  }
  return out.str();
}

std::string bench_means_csv(const std::vector<BenchRow>& rows, bool timing) {
  struct Acc {
    int n = 0, sat = 0;
    double v[11] = {};
  };
  using Key = std::tuple<int, int, double, double>;
  std::map<Key, Acc> groups;
  std::vector<Key> order;
  for (const BenchRow& r : rows) {
    const Key key{r.scp, static_cast<int>(r.srm), r.k1, r.k2};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    Acc& a = it->second;
    const double vals[11] = {r.control_cost, r.smooth_cost, r.smooth_rho, r.lo, r.hi, r.width,
                             r.exact_rho, r.exact_cost, static_cast<double>(r.iters), r.wall_ms, 0};
    for (int i = 0; i < 10; ++i) a.v[i] += vals[i];
    a.n += 1;
    a.sat += r.exact_rho > 0.0 ? 1 : 0;
  }
  std::ostringstream out;
  out << "scp,srm,k1,k2,runs,control_cost,smooth_cost,smooth_rho,L,U,width,exact_rho,exact_cost,iters,sat_rate";
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const Key& key : order) {
    const Acc& a = groups.at(key);
    out << std::get<0>(key) << ',' << to_string(static_cast<Srm>(std::get<1>(key))) << ','
        << num(std::get<2>(key)) << ',' << num(std::get<3>(key)) << ',' << a.n;
    for (int i = 0; i < 9; ++i) out << ',' << num(a.v[i] / a.n);
    out << ',' << num(static_cast<double>(a.sat) / a.n);
    if (timing) out << ',' << num(a.v[9] / a.n);
    out << '\n';
  }
  return out.str();
}

void write_benchmark(const std::vector<BenchRow>& rows, const std::string& out_dir, bool timing) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_file(dir / "runs.csv", bench_runs_csv(rows, timing));
  write_file(dir / "means.csv", bench_means_csv(rows, timing));
}

}  // namespace stlsmooth
