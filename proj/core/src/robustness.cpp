#include "ggcport/robustness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ggcport/distances.hpp"
#include "ggcport/portfolio.hpp"

namespace ggcport {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double coefficient_at(const LawPath& path, std::size_t i, std::size_t expected) {
  if (path.coefficients.size() == 1) return path.coefficients.front();
  if (path.coefficients.size() != expected)
    throw std::invalid_argument("LawPath: coefficient count does not match the law");
  return path.coefficients[i];
}

FiniteGammaConvolution explicit_convolution(const MixingLaw& law, const char* kind) {
  if (std::holds_alternative<Gig>(law))
    throw unsupported_law_error(std::string("LawPath: ") + kind +
                                " requires an explicitly generated law");
  if (std::holds_alternative<AtomicGgc>(law))
    return to_gamma_convolution(std::get<AtomicGgc>(law).generator());
  return std::get<FiniteGammaConvolution>(law);
}

}  // namespace

MixingLaw law_at(const MixingLaw& target, const LawPath& path, double p) {
  if (path.coefficients.empty())
    throw std::invalid_argument("LawPath: needs at least one coefficient");
  switch (path.kind) {
    case LawPathKind::scale_drift:
    case LawPathKind::shape_drift: {
      const bool was_atomic = std::holds_alternative<AtomicGgc>(target);
      const FiniteGammaConvolution base = explicit_convolution(
          target, path.kind == LawPathKind::scale_drift ? "scale_drift" : "shape_drift");
      std::vector<GammaComponent> comps = base.components();
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const double c = coefficient_at(path, i, comps.size());
        if (path.kind == LawPathKind::scale_drift)
          comps[i].scale *= 1.0 + p * c;
        else
          comps[i].shape *= 1.0 + p * c;
      }
      FiniteGammaConvolution law(base.tau(), std::move(comps));
      if (was_atomic) return AtomicGgc(as_thorin(MixingLaw(law)));
      return law;
    }
    case LawPathKind::drift_shift: {
      const bool was_atomic = std::holds_alternative<AtomicGgc>(target);
      const FiniteGammaConvolution base = explicit_convolution(target, "drift_shift");
      const double c = coefficient_at(path, 0, 1);
      FiniteGammaConvolution law(base.tau() + p * c, base.components());
      if (was_atomic) return AtomicGgc(as_thorin(MixingLaw(law)));
      return law;
    }
    case LawPathKind::gig_path: {
      if (!std::holds_alternative<Gig>(target))
        throw unsupported_law_error("LawPath: gig_path requires a gig law");
      const Gig& base = std::get<Gig>(target);
      if (path.coefficients.size() != 3)
        throw std::invalid_argument("LawPath: gig_path needs exactly 3 coefficients");
      return Gig(base.lambda() * (1.0 + p * path.coefficients[0]),
                 base.a() * (1.0 + p * path.coefficients[1]),
                 base.b() * (1.0 + p * path.coefficients[2]));
    }
  }
  throw std::logic_error("law_at: unknown path kind");
}

std::vector<NmvmModel> make_schedule(const NmvmModel& model, const PerturbationSchedule& spec) {
  if (spec.steps < 1) throw std::invalid_argument("make_schedule: steps must be >= 1");
  if (!(spec.decay > 0.0 && spec.decay < 1.0))
    throw std::invalid_argument("make_schedule: decay must lie in (0, 1)");
  const Eigen::Index d = model.dimension();
  const auto& dir = spec.directions;
  if (dir.dmu.size() != d || dir.dgamma.size() != d || dir.da.rows() != d ||
      dir.da.cols() != d)
    throw std::invalid_argument("make_schedule: direction dimensions do not match the model");

  const Eigen::MatrixXd da_sym = 0.5 * (dir.da + dir.da.transpose());
  std::vector<NmvmModel> out;
  out.reserve(spec.steps);
  double p = 1.0;
  for (std::size_t n = 1; n <= spec.steps; ++n) {
    p *= spec.decay;
    NmvmModel step = model;
    step.mu = model.mu + p * dir.dmu;
    step.gamma_vec = model.gamma_vec + p * dir.dgamma;
    step.a_matrix = model.a_matrix + p * da_sym;
    step.law = law_at(model.law, dir.law_path, p);
    const Eigen::MatrixXd sigma = step.a_matrix * step.a_matrix.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(step.a_matrix);
    if (llt.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("make_schedule: perturbed A not positive definite at step " +
                                  std::to_string(n));
    out.push_back(std::move(step));
  }
  return out;
}

RobustnessReport run_sweep(const NmvmModel& true_model, const MarketSpec& market,
                           const std::vector<NmvmModel>& schedule,
                           const DensityGridSpec& grid) {
  RobustnessReport report;
  report.true_mean = mean(true_model.law);
  report.true_s_hat = integrability_number(true_model.law);
  report.probes = {0.5 * report.true_s_hat, 0.25, 1.0};

  const PortfolioSolution true_sol = optimal_portfolio(true_model, market);
  if (!true_sol.regular)
    throw irregular_model_error(
        "run_sweep: the true model has no regular optimal portfolio; " +
        true_sol.diagnostics.message);
  report.true_q_min = true_sol.q_min;
  report.true_x = true_sol.x_star;
  for (double s : report.probes)
    report.true_probe_values.push_back(laplace(true_model.law, s).value());

  report.steps.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const NmvmModel& model = schedule[i];
    SweepStep step;
    step.n = i + 1;
    step.mean_value = mean(model.law);
    step.s_hat = integrability_number(model.law);
    for (double s : report.probes) step.probe_values.push_back(laplace(model.law, s).value());

    const DistanceReport dist = distance_report(model.law, true_model.law, grid);
    step.d_tv = dist.total_variation;
    step.d_kol = dist.kolmogorov;
    step.fm_lower = dist.fm_lower;
    step.fm_upper = dist.fm_upper;

    const PortfolioSolution sol = optimal_portfolio(model, market);
    step.regular = sol.regular;
    if (sol.regular) {
      step.q_min = sol.q_min;
      step.x_err = (sol.x_star - true_sol.x_star).norm();
    } else {
      step.q_min = std::numeric_limits<double>::quiet_NaN();
      step.x_err = std::numeric_limits<double>::quiet_NaN();
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

std::vector<std::string> ConvergenceSummary::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

ConvergenceSummary check_convergence(const RobustnessReport& report,
                                     const ToleranceSpec& criteria) {
  ConvergenceSummary summary;
  if (report.steps.empty()) {
    summary.checks.push_back({"(i) mean", false, "empty report"});
    summary.all_passed = false;
    return summary;
  }
  const SweepStep& last = report.steps.back();
  const std::size_t count = report.steps.size();

  {
    const double final_err = std::fabs(last.mean_value - report.true_mean);
    bool monotone = true;
    if (count >= 3) {
      const double e1 = std::fabs(report.steps[count - 3].mean_value - report.true_mean);
      const double e2 = std::fabs(report.steps[count - 2].mean_value - report.true_mean);
      const double e3 = std::fabs(report.steps[count - 1].mean_value - report.true_mean);
      monotone = e1 >= e2 && e2 >= e3;
    }
    const bool pass = final_err <= criteria.tol_mean && monotone;
    summary.checks.push_back({"(i) mean", pass,
                              "final |EZ_n - EZ| = " + format_number(final_err) +
                                  (monotone ? "" : "; last three steps not nonincreasing")});
  }
  {
    const double final_err = std::fabs(last.s_hat - report.true_s_hat);
    summary.checks.push_back({"(ii) integrability", final_err <= criteria.tol_in,
                              "final |s_hat_n - s_hat| = " + format_number(final_err)});
  }
  {
    double worst = 0.0;
    for (std::size_t p = 0; p < report.probes.size(); ++p) {
      const double err = std::fabs(last.probe_values[p] - report.true_probe_values[p]);
      worst = std::isnan(err) ? err : std::max(worst, err);
    }
    const bool pass = !std::isnan(worst) && worst <= criteria.tol_laplace;
    summary.checks.push_back({"(iii) laplace", pass,
                              "worst final probe error = " + format_number(worst)});
  }
  {
    const bool pass = last.d_tv <= criteria.tol_distance && last.d_kol <= criteria.tol_distance;
    summary.checks.push_back({"(iv) distance", pass,
                              "final d_tv = " + format_number(last.d_tv) +
                                  ", d_kol = " + format_number(last.d_kol)});
  }
  {
    bool pass = last.regular && last.x_err <= criteria.tol_portfolio &&
                std::fabs(last.q_min - report.true_q_min) <= criteria.tol_qmin;
    std::string detail = last.regular
                             ? "final |x*_n - x*| = " + format_number(last.x_err) +
                                   ", |q_min_n - q_min| = " +
                                   format_number(std::fabs(last.q_min - report.true_q_min))
                             : "final step irregular";
    summary.checks.push_back({"(v) portfolio", pass, detail});
  }

  summary.all_passed = true;
  for (const auto& c : summary.checks) summary.all_passed = summary.all_passed && c.passed;
  return summary;
}

std::vector<double> partial_mean_diagnostic(const std::vector<MixingLaw>& schedule_laws,
                                            const MixingLaw& true_law, double delta) {
  std::vector<double> out;
  out.reserve(schedule_laws.size() + 1);
  for (const auto& law : schedule_laws) out.push_back(thorin_partial_mean(law, delta));
  out.push_back(thorin_partial_mean(true_law, delta));
  return out;
}

std::string robustness_report_csv(const RobustnessReport& report) {
  std::string out = "n,EZ_n,s_hat_n";
  for (std::size_t p = 0; p < report.probes.size(); ++p)
    out += ",laplace_probe_" + std::to_string(p);
  out += ",d_tv,d_kol,fm_lo,fm_hi,q_min_n,x_err\n";
  for (const auto& s : report.steps) {
    out += std::to_string(s.n) + "," + format_number(s.mean_value) + "," +
           format_number(s.s_hat);
    for (double v : s.probe_values) out += "," + format_number(v);
    out += "," + format_number(s.d_tv) + "," + format_number(s.d_kol) + "," +
           format_number(s.fm_lower) + "," + format_number(s.fm_upper) + "," +
           format_number(s.q_min) + "," + format_number(s.x_err) + "\n";
  }
  return out;
}

std::string robustness_report_text(const RobustnessReport& report,
                                   const ConvergenceSummary& summary) {
  std::string out;
  out += "true_mean = " + format_number(report.true_mean) + "\n";
  out += "true_s_hat = " + format_number(report.true_s_hat) + "\n";
  out += "true_q_min = " + format_number(report.true_q_min) + "\n";
  out += "probes =";
  for (double p : report.probes) out += " " + format_number(p);
  out += "\nsteps = " + std::to_string(report.steps.size()) + "\n";
  for (const auto& s : report.steps) {
    out += "step " + std::to_string(s.n) + ": EZ_n=" + format_number(s.mean_value) +
           " s_hat_n=" + format_number(s.s_hat) + " d_tv=" + format_number(s.d_tv) +
           " d_kol=" + format_number(s.d_kol) + " q_min_n=" + format_number(s.q_min) +
           " x_err=" + format_number(s.x_err) + (s.regular ? "" : " [irregular]") + "\n";
  }
  for (const auto& c : summary.checks)
    out += (c.passed ? "[pass] " : "[fail] ") + c.name + ": " + c.detail + "\n";
  out += summary.all_passed ? "all checks passed\n" : "some checks failed\n";
  return out;
}

}  // namespace ggcport
