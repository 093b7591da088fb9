#include "sinegas/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <thread>

#include "sinegas/asympt.hpp"
#include "sinegas/mfun.hpp"
#include "sinegas/oracles.hpp"

namespace sinegas {

ScanMethod parse_method(const std::string& name) {
  if (name == "nystrom") return ScanMethod::nystrom;
  if (name == "toeplitz") return ScanMethod::toeplitz;
  if (name == "gap") return ScanMethod::gap;
  if (name == "extended") return ScanMethod::extended;
  if (name == "transition") return ScanMethod::transition;
  if (name == "fh") return ScanMethod::fh;
  throw std::invalid_argument("unknown scan method '" + name + "'");
}

std::string method_name(ScanMethod m) {
  switch (m) {
    case ScanMethod::nystrom: return "nystrom";
    case ScanMethod::toeplitz: return "toeplitz";
    case ScanMethod::gap: return "gap";
    case ScanMethod::extended: return "extended";
    case ScanMethod::transition: return "transition";
    default: return "fh";
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::vector<ScanMethod> canonical_methods(const ScanSpec& spec) {
  std::vector<ScanMethod> all = {ScanMethod::nystrom, ScanMethod::toeplitz,
                                 ScanMethod::gap, ScanMethod::extended,
                                 ScanMethod::transition, ScanMethod::fh};
  std::vector<ScanMethod> out;
  for (ScanMethod m : all)
    if (std::find(spec.methods.begin(), spec.methods.end(), m) !=
        spec.methods.end())
      out.push_back(m);
  return out;
}

struct GridPoint {
  double s, v;
};

std::vector<GridPoint> make_grid(const ScanSpec& spec) {
  if (spec.s_values.empty())
    throw std::invalid_argument("scan: empty s grid");
  if (spec.v_values.empty() == spec.kappa_values.empty())
    throw std::invalid_argument(
        "scan: exactly one of v-values / kappa-values must be given");
  std::vector<GridPoint> g;
  for (double s : spec.s_values) {
    if (!spec.v_values.empty())
      for (double v : spec.v_values) g.push_back({s, v});
    else
      for (double k : spec.kappa_values) g.push_back({s, k * s});
  }
  return g;
}

ComparisonRecord eval_point(const GridPoint& gp,
                            const std::vector<ScanMethod>& methods,
                            const ScanSpec& spec, const Config& cfg,
                            const TailTable* tail_tbl) {
  ComparisonRecord rec;
  rec.s = gp.s;
  rec.v = gp.v;
  rec.kappa = gp.v / gp.s;
  GasPoint p = GasPoint::from_v(gp.s, gp.v);
  rec.gamma = p.gamma;
  std::string status;
  auto mark_skip = [&status](ScanMethod m, const std::string& why) {
    if (!status.empty()) status += ";";
    status += "skip:" + method_name(m) + "(" + why + ")";
  };

  int order = spec.fixed_order > 0 ? spec.fixed_order : cfg.order_for(gp.s);
  bool have_oracle = false;
  if (std::find(methods.begin(), methods.end(), ScanMethod::nystrom) !=
      methods.end()) {
    try {
      DetResult r = fredholm_logdet(p, Quadrature::gauss_legendre(order),
                                    cfg.det_tol, Precision::Auto, cfg.dd_v_threshold);
      rec.oracle_logdet = r.log_det;
      rec.oracle_accuracy = r.accuracy_estimate;
      have_oracle = true;
    } catch (const std::exception& e) {
      mark_skip(ScanMethod::nystrom, e.what());
    }
  }

  for (ScanMethod m : methods) {
    if (m == ScanMethod::nystrom) continue;
    std::optional<double> value, budget;
    try {
      switch (m) {
        case ScanMethod::toeplitz:
          value = toeplitz_logdet(spec.toeplitz_n, gp.s, rec.gamma).log_det;
          break;
        case ScanMethod::gap: {
          AsymptoticResult r = gap_expansion(gp.s, cfg);
          value = r.total;
          budget = r.error_budget;
          break;
        }
        case ScanMethod::extended: {
          AsymptoticResult r = extended_expansion(gp.s, gp.v, cfg);
          value = r.total;
          budget = r.error_budget;
          break;
        }
        case ScanMethod::transition: {
          double tail = tail_tbl ? tail_integral(gp.s, gp.v, *tail_tbl)
                                 : tail_integral(gp.s, gp.v);
          AsymptoticResult r = transition_expansion(gp.s, gp.v, tail, cfg);
          value = r.total;
          budget = r.error_budget;
          break;
        }
        default: {
          AsymptoticResult r =
              fh_toeplitz_expansion(spec.toeplitz_n, gp.s, gp.v, cfg);
          value = r.total;
          budget = r.error_budget;
          break;
        }
      }
    } catch (const std::exception& e) {
      mark_skip(m, e.what());
    }
    rec.values.push_back(value);
    rec.budgets.push_back(budget);
    if (value && have_oracle)
      rec.residuals.push_back(*value - *rec.oracle_logdet);
    else
      rec.residuals.push_back(std::nullopt);
  }
  rec.status = status.empty() ? "ok" : status;
  return rec;
}

}  // namespace

std::vector<ComparisonRecord> run_scan(const ScanSpec& spec, const Config& cfg) {
  std::vector<ScanMethod> methods = canonical_methods(spec);
  if (methods.empty()) throw std::invalid_argument("scan: no methods selected");
  std::vector<GridPoint> grid = make_grid(spec);

  // one immutable tail table shared across workers
  std::unique_ptr<TailTable> tail_tbl;
  if (std::find(methods.begin(), methods.end(), ScanMethod::transition) !=
      methods.end()) {
    double kmax = cfg.tail_u_min * 2.0;
    for (const GridPoint& g : grid) kmax = std::max(kmax, g.v / g.s);
    kmax = std::min(kmax, 1.0 - cfg.delta);
    tail_tbl = std::make_unique<TailTable>(TailTable::build(
        kmax, cfg.tail_modes, cfg.tail_cheb, cfg.tail_u_min));
  }

  std::vector<ComparisonRecord> records(grid.size());
  int jobs = spec.jobs > 0 ? spec.jobs : cfg.scan_jobs;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      records[i] = eval_point(grid[i], methods, spec, cfg, tail_tbl.get());
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

void write_csv(std::ostream& os, const ScanSpec& spec,
               const std::vector<ComparisonRecord>& records) {
  std::vector<ScanMethod> methods = canonical_methods(spec);
  bool have_oracle = !methods.empty() && methods.front() == ScanMethod::nystrom;
  os << "# sine-gas scan v1\n";
  std::string header = "s,v,kappa,gamma";
  if (have_oracle) header += ",logdet_nystrom,accuracy_nystrom";
  for (ScanMethod m : methods) {
    if (m == ScanMethod::nystrom) continue;
    std::string n = method_name(m);
    header += ",logdet_" + n + ",resid_" + n + ",budget_" + n;
  }
  header += ",status";
  os << "# columns: " << header << "\n" << header << "\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const ComparisonRecord& r : records) {
    os << format_double(r.s) << ',' << format_double(r.v) << ','
       << format_double(r.kappa) << ',' << format_double(r.gamma);
    if (have_oracle) {
      os << ',' << opt(r.oracle_logdet) << ','
         << (r.oracle_logdet ? format_double(r.oracle_accuracy) : std::string());
    }
    for (size_t i = 0; i < r.values.size(); ++i)
      os << ',' << opt(r.values[i]) << ',' << opt(r.residuals[i]) << ','
         << opt(r.budgets[i]);
    os << ',' << r.status << '\n';
  }
}

}  // namespace sinegas
