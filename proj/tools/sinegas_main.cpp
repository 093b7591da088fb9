// sinegas: evaluate the sine-kernel determinant det(I - gamma K_s) by exact
// oracles (Nystrom quadrature, Toeplitz limit) and by its asymptotic
// expansions, scan the (s,v) plane, and run the verification suites.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinegas/asympt.hpp"
#include "sinegas/kappa_map.hpp"
#include "sinegas/mfun.hpp"
#include "sinegas/oracles.hpp"
#include "sinegas/scan.hpp"
#include "sinegas/verify.hpp"

using json = nlohmann::ordered_json;
using namespace sinegas;

namespace {

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

// 17 significant digits, bit-exact round trips
json jnum(double x) { return json::parse(format_double(x)); }

GasPoint make_point(double s, std::optional<double> gamma,
                    std::optional<double> v) {
  if (gamma.has_value() == v.has_value())
    throw std::domain_error("give exactly one of --gamma / --v");
  return gamma ? GasPoint::from_gamma(s, *gamma) : GasPoint::from_v(s, *v);
}

json terms_json(const AsymptoticResult& r) {
  json t = json::object();
  for (const auto& [name, val] : r.terms) t[name] = jnum(val);
  json out{{"total", jnum(r.total)},
           {"regime", r.regime},
           {"terms", t},
           {"error_budget", jnum(r.error_budget)}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sine-kernel determinant oracles and asymptotics"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value configuration file");

  // det
  auto* det = app.add_subcommand("det", "log det(I - gamma K_s)");
  double det_s = 0;
  std::optional<double> det_gamma, det_v;
  int det_nodes = 0, det_n = 400;
  std::string det_method = "nystrom";
  det->add_option("--s", det_s, "bulk scaling parameter")->required();
  det->add_option("--gamma", det_gamma, "coupling in [0,1]");
  det->add_option("--v", det_v, "v = -0.5 ln(1-gamma)");
  det->add_option("--nodes", det_nodes, "quadrature order (default: auto)");
  det->add_option("--method", det_method, "nystrom | toeplitz");
  det->add_option("--n", det_n, "Toeplitz matrix size (toeplitz method)");

  // dlogdet
  auto* dld = app.add_subcommand("dlogdet", "d/ds log det via the trace formula");
  double dld_s = 0;
  std::optional<double> dld_gamma, dld_v;
  int dld_nodes = 0;
  dld->add_option("--s", dld_s)->required();
  dld->add_option("--gamma", dld_gamma);
  dld->add_option("--v", dld_v);
  dld->add_option("--nodes", dld_nodes);

  // toeplitz
  auto* toe = app.add_subcommand("toeplitz", "Toeplitz determinant D_n of the piecewise symbol");
  double toe_s = 0;
  std::optional<double> toe_gamma, toe_v;
  int toe_n = 400;
  toe->add_option("--s", toe_s)->required();
  toe->add_option("--gamma", toe_gamma);
  toe->add_option("--v", toe_v);
  toe->add_option("--n", toe_n, "matrix size");

  // asym
  auto* asym = app.add_subcommand("asym", "asymptotic expansions with term breakdown");
  double asym_s = 0;
  std::optional<double> asym_gamma, asym_v;
  std::string asym_regime = "auto";
  int asym_n = 400;
  asym->add_option("--s", asym_s)->required();
  asym->add_option("--gamma", asym_gamma);
  asym->add_option("--v", asym_v);
  asym->add_option("--regime", asym_regime, "gap | extended | transition | fh | auto | all");
  asym->add_option("--n", asym_n, "Toeplitz size for the fh regime");

  // mfun
  auto* mf = app.add_subcommand("mfun", "M(x,kappa), Fourier modes, tail integral");
  double mf_kappa = 0;
  std::optional<double> mf_x, mf_s;
  int mf_modes = 0;
  bool mf_tail = false;
  mf->add_option("--kappa", mf_kappa)->required();
  mf->add_option("--x", mf_x, "evaluate M(x,kappa)");
  mf->add_option("--modes", mf_modes, "emit Fourier coefficients a_0..a_N");
  mf->add_flag("--tail", mf_tail, "evaluate the tail integral (needs --s)");
  mf->add_option("--s", mf_s, "s for the tail integral (v = kappa*s)");

  // kappa
  auto* kp = app.add_subcommand("kappa", "elliptic map at kappa");
  double kp_kappa = 0;
  kp->add_option("--kappa", kp_kappa)->required();

  // scan
  auto* sc = app.add_subcommand("scan", "(s,v)-plane scan, CSV on stdout");
  std::string sc_s, sc_v, sc_kappa, sc_methods = "nystrom,extended";
  int sc_order = 0, sc_toeplitz_n = 400, sc_jobs = 0;
  sc->add_option("--s-values", sc_s, "comma-separated s grid")->required();
  sc->add_option("--v-values", sc_v, "comma-separated v grid");
  sc->add_option("--kappa-values", sc_kappa, "comma-separated kappa grid");
  sc->add_option("--methods", sc_methods,
                 "subset of nystrom,toeplitz,gap,extended,transition,fh");
  sc->add_option("--order", sc_order, "fixed quadrature order (default: auto)");
  sc->add_option("--toeplitz-n", sc_toeplitz_n);
  sc->add_option("--jobs", sc_jobs, "worker threads (default: hardware)");

  // verify
  auto* vf = app.add_subcommand("verify", "acceptance suites");
  std::string vf_suite = "all";
  vf->add_option("--suite", vf_suite, "specfun | elliptic | mfun | oracle | asympt | all");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = config_path.empty() ? Config::defaults() : Config::load(config_path);
    if (config_path.empty()) cfg.apply_env();

    if (*det) {
      GasPoint p = make_point(det_s, det_gamma, det_v);
      DetResult r;
      if (det_method == "nystrom") {
        int order = det_nodes > 0 ? det_nodes : cfg.order_for(det_s);
        r = fredholm_logdet(p, Quadrature::gauss_legendre(order), cfg.det_tol);
      } else if (det_method == "toeplitz") {
        r = toeplitz_logdet(det_n, det_s, p.gamma);
      } else {
        throw std::domain_error("unknown --method " + det_method);
      }
      json out{{"log_det", jnum(r.log_det)},
               {"method", r.method},
               {"accuracy_estimate", jnum(r.accuracy_estimate)},
               {"s", jnum(p.s)},
               {"gamma", jnum(p.gamma)},
               {"v", p.v == std::numeric_limits<double>::infinity()
                        ? json("inf")
                        : jnum(p.v)}};
      std::cout << out.dump() << "\n";
    } else if (*dld) {
      GasPoint p = make_point(dld_s, dld_gamma, dld_v);
      int order = dld_nodes > 0 ? dld_nodes : cfg.order_for(dld_s) + 30;
      double d = fredholm_dlogdet_ds(p, Quadrature::gauss_legendre(order));
      json out{{"dlogdet_ds", jnum(d)}, {"s", jnum(p.s)}, {"v", jnum(p.v)}};
      if (p.v > 0.0 && std::isfinite(p.v))
        out["expansion"] = jnum(dlogdet_expansion(p.s, p.v, cfg));
      std::cout << out.dump() << "\n";
    } else if (*toe) {
      GasPoint p = make_point(toe_s, toe_gamma, toe_v);
      DetResult r = toeplitz_logdet(toe_n, toe_s, p.gamma);
      json out{{"log_det", jnum(r.log_det)},
               {"method", r.method},
               {"n", toe_n},
               {"s", jnum(toe_s)},
               {"gamma", jnum(p.gamma)}};
      std::cout << out.dump() << "\n";
    } else if (*asym) {
      GasPoint p = make_point(asym_s, asym_gamma, asym_v);
      json out = json::object();
      std::string regime = asym_regime;
      if (regime == "auto")
        regime = (p.gamma == 1.0 && !p.v_stored) ? "gap" : "extended";
      auto emit = [&](const std::string& name) {
        if (name == "gap") out["gap"] = terms_json(gap_expansion(asym_s, cfg));
        else if (name == "extended")
          out["extended"] = terms_json(extended_expansion(asym_s, p.v, cfg));
        else if (name == "transition") {
          double tail = tail_integral(asym_s, p.v);
          out["transition"] =
              terms_json(transition_expansion(asym_s, p.v, tail, cfg));
        } else if (name == "fh")
          out["fh"] = terms_json(fh_toeplitz_expansion(asym_n, asym_s, p.v, cfg));
        else
          throw std::domain_error("unknown --regime " + name);
      };
      if (regime == "all") {
        emit("gap");
        if (std::isfinite(p.v)) {
          emit("extended");
          if (p.v > 0.0) emit("transition");
          emit("fh");
        }
      } else {
        emit(regime);
      }
      std::cout << out.dump() << "\n";
    } else if (*mf) {
      json out{{"kappa", jnum(mf_kappa)}};
      if (mf_x) out["M"] = jnum(m_eval(*mf_x, mf_kappa));
      if (mf_modes > 0) {
        FourierTable t = fourier_coeffs(mf_kappa, mf_modes);
        json arr = json::array();
        for (int n = 0; n <= t.n_modes; ++n)
          arr.push_back(json{{"n", n},
                             {"re", jnum(t.a[n].real())},
                             {"im", jnum(t.a[n].imag())}});
        out["fourier"] = arr;
      }
      if (mf_tail) {
        if (!mf_s) throw std::domain_error("--tail needs --s");
        double a0 = 0.0;
        TailTable tbl = TailTable::build(std::max(mf_kappa, 2 * cfg.tail_u_min),
                                         cfg.tail_modes, cfg.tail_cheb,
                                         cfg.tail_u_min);
        double t = tail_integral(*mf_s, mf_kappa * *mf_s, tbl, &a0);
        out["tail"] = jnum(t);
        out["tail_a0_part"] = jnum(a0);
        if (std::fabs(t) > cfg.C0)
          out["warning"] = "tail exceeds the configured C0 budget";
      }
      std::cout << out.dump() << "\n";
    } else if (*kp) {
      EllipticData d = build_elliptic_data(kp_kappa, cfg.delta);
      json out{{"kappa", jnum(d.kappa)},
               {"a", jnum(d.pair.a)},
               {"a_prime", jnum(d.pair.a_prime)},
               {"K", jnum(d.pair.K)},
               {"K_prime", jnum(d.pair.K_prime)},
               {"E", jnum(d.pair.E)},
               {"E_prime", jnum(d.pair.E_prime)},
               {"V", jnum(d.V)},
               {"tau_im", jnum(d.tau.imag())},
               {"c_im", jnum(d.c.imag())},
               {"dV_dkappa", jnum(d.dV_dkappa)},
               {"dtau_dkappa_im", jnum(d.dtau_dkappa.imag())},
               {"da_dkappa", jnum(d.da_dkappa)},
               {"phase_identity_residual", jnum(phase_identity_residual(kp_kappa))}};
      std::cout << out.dump() << "\n";
    } else if (*sc) {
      ScanSpec spec;
      spec.s_values = parse_list(sc_s);
      if (!sc_v.empty()) spec.v_values = parse_list(sc_v);
      if (!sc_kappa.empty()) spec.kappa_values = parse_list(sc_kappa);
      std::stringstream ms(sc_methods);
      std::string m;
      while (std::getline(ms, m, ',')) spec.methods.push_back(parse_method(m));
      spec.fixed_order = sc_order;
      spec.toeplitz_n = sc_toeplitz_n;
      spec.jobs = sc_jobs;
      write_csv(std::cout, spec, run_scan(spec, cfg));
    } else if (*vf) {
      int failures = report_checks(run_suite(vf_suite, cfg));
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    json err{{"error", e.what()}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  return 0;
}
