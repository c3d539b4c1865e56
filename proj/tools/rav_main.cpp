#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rav/criterion.hpp"
#include "rav/grassmann.hpp"
#include "rav/json_io.hpp"
#include "rav/realstruct.hpp"
#include "rav/search.hpp"
#include "rav/siegel.hpp"
#include "rav/subvariety.hpp"

namespace {

using rav::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Config resolution: defaults, then --config file, then explicit flags.
struct CfgFlags {
  std::string config_path;
  double tol_fix = 0, tol_res = 0, tol_fstable = 0;
  long denom = 0;
  int max_iters = 0, threads = 0;
  unsigned long seed = 0;
  CLI::Option *o_config = nullptr, *o_tol_fix = nullptr, *o_tol_res = nullptr,
              *o_tol_fstable = nullptr, *o_denom = nullptr, *o_max_iters = nullptr,
              *o_threads = nullptr, *o_seed = nullptr;

  void attach(CLI::App& app) {
    o_config = app.add_option("--config", config_path, "JSON config file (flags win)");
    o_tol_fix = app.add_option("--tol-fix", tol_fix, "fixed-locus tolerance");
    o_tol_res = app.add_option("--tol-res", tol_res, "stability residual tolerance");
    o_tol_fstable = app.add_option("--tol-fstable", tol_fstable, "F-stability tolerance");
    o_denom = app.add_option("--denom", denom, "denominator bound for rational approximation");
    o_max_iters = app.add_option("--max-iters", max_iters, "solver iteration cap");
    o_threads = app.add_option("--threads", threads, "parallelism cap");
    o_seed = app.add_option("--seed", seed, "random seed");
  }

  rav::Config resolve() const {
    rav::Config cfg;
    if (o_config->count()) rav::json_update_config(rav::load_json_file(config_path), cfg);
    if (o_tol_fix->count()) cfg.tol_fix = tol_fix;
    if (o_tol_res->count()) cfg.tol_res = tol_res;
    if (o_tol_fstable->count()) cfg.tol_fstable = tol_fstable;
    if (o_denom->count()) cfg.denom_bound = denom;
    if (o_max_iters->count()) cfg.max_iters = max_iters;
    if (o_threads->count()) cfg.threads = threads;
    if (o_seed->count()) cfg.seed = seed;
    cfg.validate_fields();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"period-matrix computations for polarized real abelian varieties"};
  app.require_subcommand(1);
  CfgFlags cf;
  cf.attach(app);

  int rc = 0;

  // ---- siegel ----
  auto* siegel = app.add_subcommand("siegel", "Siegel space points and their complex structures");
  siegel->require_subcommand(1);
  static std::string si_z, si_gamma, si_m;

  auto* s_validate = siegel->add_subcommand("validate", "check membership in the Siegel space");
  s_validate->add_option("--Z", si_z, "period point JSON")->required();
  s_validate->callback([&] {
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(si_z));
    rav::validate(z);
    json out;
    out["valid"] = true;
    out["g"] = z.g;
    out["mode"] = z.is_exact() ? "exact" : "float";
    emit(out);
  });

  auto* s_jmat = siegel->add_subcommand("jmat", "complex structure J of a period point");
  s_jmat->add_option("--Z", si_z, "period point JSON")->required();
  s_jmat->callback([&] {
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(si_z));
    emit(rav::jmat_to_json(rav::complex_structure(z)));
  });

  auto* s_act = siegel->add_subcommand("act", "symplectic action Z -> (AZ+B)(CZ+D)^-1");
  s_act->add_option("--gamma", si_gamma, "integral symplectic matrix JSON")->required();
  s_act->add_option("--Z", si_z, "period point JSON")->required();
  s_act->callback([&] {
    rav::ExactMatrix gamma = rav::json_to_exact(rav::load_json_file(si_gamma));
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(si_z));
    emit(rav::siegel_to_json(rav::sp_action(gamma, z)));
  });

  auto* s_tau = siegel->add_subcommand("tau", "anti-holomorphic involution Z -> M - conj(Z)");
  s_tau->add_option("--M", si_m, "symmetric integer matrix JSON")->required();
  s_tau->add_option("--Z", si_z, "period point JSON")->required();
  s_tau->callback([&] {
    rav::ExactMatrix m = rav::json_to_exact(rav::load_json_file(si_m));
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(si_z));
    emit(rav::siegel_to_json(rav::tau(m, z)));
  });

  auto* s_fix = siegel->add_subcommand("fix", "fixed-locus membership and nearest fixed point");
  s_fix->add_option("--M", si_m, "symmetric integer matrix JSON")->required();
  s_fix->add_option("--Z", si_z, "period point JSON")->required();
  s_fix->callback([&] {
    rav::Config cfg = cf.resolve();
    rav::ExactMatrix m = rav::json_to_exact(rav::load_json_file(si_m));
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(si_z));
    json out;
    out["in_fixed_locus"] = rav::in_fixed_locus(m, z, cfg.tol_fix);
    out["nearest"] = rav::siegel_to_json(rav::nearest_fixed(m, z));
    emit(out);
  });

  // ---- atlas ----
  auto* atlas = app.add_subcommand("atlas", "classification tables of real structures");
  atlas->require_subcommand(1);
  static int at_g = 0;
  static std::string at_m;

  auto* a_ab = atlas->add_subcommand("abelian", "types (alpha, lambda) with normal forms");
  a_ab->add_option("--g", at_g, "dimension")->required();
  a_ab->callback([&] {
    std::vector<rav::RealStructureType> types = rav::enumerate_ab_types(at_g);
    json arr = json::array();
    for (const rav::RealStructureType& t : types) {
      json jt;
      jt["alpha"] = t.alpha;
      jt["lambda"] = t.lambda;
      jt["M"] = rav::exact_to_json(t.m);
      jt["T"] = rav::exact_to_json(t.t);
      arr.push_back(std::move(jt));
    }
    json out;
    out["g"] = at_g;
    out["count"] = static_cast<int>(types.size());
    out["types"] = std::move(arr);
    emit(out);
  });

  auto* a_cv = atlas->add_subcommand("curves", "topological types (epsilon, k) of real curves");
  a_cv->add_option("--g", at_g, "genus")->required();
  a_cv->callback([&] {
    std::vector<rav::CurveTopologicalType> types = rav::enumerate_curve_types(at_g);
    json arr = json::array();
    for (const rav::CurveTopologicalType& t : types) {
      json jt;
      jt["epsilon"] = t.epsilon;
      jt["k"] = t.k;
      arr.push_back(std::move(jt));
    }
    json out;
    out["g"] = at_g;
    out["count"] = static_cast<int>(types.size());
    out["types"] = std::move(arr);
    emit(out);
  });

  auto* a_cl = atlas->add_subcommand("classify", "invariant (alpha, lambda) of a normal matrix");
  a_cl->add_option("--M", at_m, "symmetric integer matrix JSON")->required();
  a_cl->callback([&] {
    rav::ExactMatrix m = rav::json_to_exact(rav::load_json_file(at_m));
    rav::F2Class c = rav::classify_normal_form(m);
    json out;
    out["g"] = m.rows();
    out["alpha"] = c.alpha;
    out["lambda"] = c.lambda;
    emit(out);
  });

  // ---- sub ----
  auto* sub = app.add_subcommand("sub", "real abelian subvarieties of a period point");
  sub->require_subcommand(1);
  static std::string sb_z, sb_t, sb_l;
  static int sb_k = 1;
  static long sb_height = 1;

  auto* sb_check = sub->add_subcommand("check", "certify one rational plane");
  sb_check->add_option("--Z", sb_z, "exact period point JSON")->required();
  sb_check->add_option("--T", sb_t, "lattice involution JSON")->required();
  sb_check->add_option("--L", sb_l, "rational plane JSON")->required();
  sb_check->callback([&] {
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(sb_z));
    rav::ExactMatrix t = rav::json_to_exact(rav::load_json_file(sb_t));
    rav::RationalPlane l = rav::json_to_plane(rav::load_json_file(sb_l));
    emit(rav::certificate_to_json(rav::is_real_subvariety(z, t, l)));
  });

  auto* sb_search = sub->add_subcommand("search", "enumerate certified planes up to a height");
  sb_search->add_option("--Z", sb_z, "exact period point JSON")->required();
  sb_search->add_option("--k", sb_k, "subvariety dimension")->required();
  sb_search->add_option("--height", sb_height, "max-norm bound on primitive vectors");
  auto* sb_t_opt = sb_search->add_option("--T", sb_t, "optional lattice involution JSON");
  sb_search->callback([&] {
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(sb_z));
    std::optional<rav::ExactMatrix> t;
    if (sb_t_opt->count()) t = rav::json_to_exact(rav::load_json_file(sb_t));
    std::vector<rav::SubvarietyCertificate> found = rav::brute_search(z, sb_k, sb_height, t);
    json arr = json::array();
    for (const rav::SubvarietyCertificate& c : found) arr.push_back(rav::certificate_to_json(c));
    json out;
    out["count"] = static_cast<int>(found.size());
    out["certificates"] = std::move(arr);
    emit(out);
  });

  // ---- criterion ----
  auto* crit = app.add_subcommand("criterion", "exactness criterion for symmetric tensors");
  crit->require_subcommand(1);
  static std::string cr_q, cr_w, cr_eh;
  static int cr_d = 4, cr_k = 1;

  auto* c_check = crit->add_subcommand("check", "exactness and injectivity checks for (q, W)");
  c_check->add_option("--q", cr_q, "tensor JSON")->required();
  c_check->add_option("--W", cr_w, "exact g x k matrix JSON")->required();
  auto* c_ek = c_check->add_flag("--ek", "also test injectivity on W (x) W-perp");
  auto* c_eh = c_check->add_option("--EH", cr_eh, "pairing matrix JSON (default identity)");
  c_check->callback([&] {
    rav::QTensor q = rav::json_to_qtensor(rav::load_json_file(cr_q));
    rav::ExactMatrix w = rav::json_to_exact(rav::load_json_file(cr_w));
    json out;
    out["g"] = q.g;
    out["m"] = q.m;
    out["k"] = w.cols();
    out["condition1"] = rav::check_condition1(q, w);
    if (c_ek->count()) {
      rav::ExactMatrix eh = c_eh->count() ? rav::json_to_exact(rav::load_json_file(cr_eh))
                                          : rav::ExactMatrix::identity(q.g);
      out["ek"] = rav::check_Ek(q, w, eh);
    }
    emit(out);
  });

  auto* c_fermat = crit->add_subcommand("fermat", "injectivity witness for the Fermat curve");
  c_fermat->add_option("--d", cr_d, "curve degree")->required();
  c_fermat->add_option("--k", cr_k, "subspace dimension");
  c_fermat->callback([&] {
    rav::Config cfg = cf.resolve();
    emit(rav::fermat_to_json(rav::fermat_criterion(cr_d, cr_k, cfg.seed)));
  });

  // ---- grassmann ----
  auto* gr = app.add_subcommand("grassmann", "rational approximation in fixed-point Grassmannians");
  gr->require_subcommand(1);
  static std::string gr_f, gr_l;

  auto* g_approx = gr->add_subcommand("approx", "F-stable rational plane near an F-stable plane");
  g_approx->add_option("--F", gr_f, "exact involution JSON")->required();
  g_approx->add_option("--L", gr_l, "real plane JSON {n, r, B}")->required();
  g_approx->callback([&] {
    rav::Config cfg = cf.resolve();
    rav::ExactMatrix f = rav::json_to_exact(rav::load_json_file(gr_f));
    rav::RealPlane l = rav::json_to_real_plane(rav::load_json_file(gr_l));
    rav::RationalPlane p = rav::rational_approx_fixed(f, l, cfg.denom_bound, cfg.tol_fstable);
    json out;
    out["plane"] = rav::plane_to_json(p);
    out["distance"] = rav::subspace_distance(rav::RealPlane::of(p), l);
    emit(out);
  });

  // ---- search ----
  auto* se = app.add_subcommand("search", "density realization: perturb onto the subvariety locus");
  se->require_subcommand(1);
  static std::string se_z;
  static std::vector<int> se_type;
  static int se_k = 1, se_g = 2, se_n = 10;
  static double se_eps = 1e-2;
  static std::vector<double> se_schedule;
  static bool se_csv = false;

  auto* se_run = se->add_subcommand("run", "single witness search from a fixed-locus point");
  se_run->add_option("--Z", se_z, "period point JSON, in the fixed locus")->required();
  se_run->add_option("--type", se_type, "type pair alpha,lambda")
      ->required()
      ->delimiter(',')
      ->expected(2);
  se_run->add_option("--k", se_k, "subvariety dimension")->required();
  se_run->add_option("--eps", se_eps, "displacement budget");
  se_run->callback([&] {
    rav::Config cfg = cf.resolve();
    rav::SiegelPoint z = rav::json_to_siegel(rav::load_json_file(se_z));
    rav::SearchResult sr =
        rav::density_search(z, se_type[0], se_type[1], se_k, se_eps, cfg);
    json out;
    json res;
    res["success"] = sr.success;
    res["planes_tried"] = sr.planes_tried;
    res["best_residual"] = sr.best_residual;
    res["best_displacement"] = sr.best_displacement;
    if (!sr.success) res["failure"] = sr.failure;
    out["result"] = std::move(res);
    if (sr.success) {
      out["witness"] = rav::witness_to_json(*sr.witness);
      out["certify"] = rav::report_to_json(rav::certify(*sr.witness));
    }
    emit(out);
    if (!sr.success) {
      std::cerr << rav::error_to_json(rav::DomainError(
                       sr.failure, "no witness within the displacement budget"))
                       .dump(2)
                << "\n";
      rc = 1;
    }
  });

  auto* se_sample = se->add_subcommand("sample", "success statistics over random starting points");
  se_sample->add_option("--g", se_g, "dimension")->required();
  se_sample->add_option("--k", se_k, "subvariety dimension")->required();
  se_sample->add_option("--type", se_type, "type pair alpha,lambda")
      ->required()
      ->delimiter(',')
      ->expected(2);
  se_sample->add_option("--n", se_n, "number of samples");
  se_sample->add_option("--eps", se_schedule, "displacement budgets (repeatable)");
  se_sample->add_flag("--csv", se_csv, "emit CSV instead of JSON");
  se_sample->callback([&] {
    rav::Config cfg = cf.resolve();
    std::vector<double> schedule = se_schedule.empty()
                                       ? std::vector<double>{1e-2, 5e-2}
                                       : se_schedule;
    rav::SampleTable t = rav::sample_density(se_type[0], se_type[1], se_g, se_k, se_n, schedule,
                                             cfg.seed, cfg);
    if (se_csv)
      std::cout << rav::sample_table_csv(t);
    else
      emit(rav::sample_table_to_json(t));
  });

  for (CLI::App* top : app.get_subcommands(nullptr)) {
    top->fallthrough();
    for (CLI::App* leaf : top->get_subcommands(nullptr)) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rav::DomainError& e) {
    std::cerr << rav::error_to_json(e).dump(2) << "\n";
    return 1;
  }
  return rc;
}
