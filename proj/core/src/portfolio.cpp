#include "ggcport/portfolio.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace ggcport {

namespace {

struct SigmaSolver {
  Eigen::LLT<Eigen::MatrixXd> llt;

  explicit SigmaSolver(const NmvmModel& model) {
    const Eigen::Index d = model.dimension();
    if (model.gamma_vec.size() != d || model.a_matrix.rows() != d ||
        model.a_matrix.cols() != d)
      throw std::invalid_argument("model_constants: inconsistent model dimensions");
    const double scale = std::max(1.0, model.a_matrix.norm());
    if ((model.a_matrix - model.a_matrix.transpose()).norm() > 1e-12 * scale)
      throw std::invalid_argument("model_constants: A must be symmetric");
    const Eigen::MatrixXd sigma = model.a_matrix * model.a_matrix.transpose();
    llt.compute(sigma);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("model_constants: Sigma = A A^T is not positive definite");
    // Near-singular factors make the solves meaningless; reject them.
    const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
    if (diag.minCoeff() <= 1e-150 ||
        diag.minCoeff() < 1e-14 * diag.maxCoeff())
      throw std::invalid_argument("model_constants: Sigma is numerically singular");
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return llt.solve(rhs); }
};

// Golden-section refined by parabolic interpolation on [lo, hi]; f may
// return +inf near the endpoints.
MinimizeResult brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                              double tol, std::size_t max_iter = 500) {
  const double golden = 0.3819660112501051;
  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol * std::fabs(x) + 1e-15;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
    double step = 0.0;
    bool use_golden = true;
    if (std::fabs(e) > tol1 && std::isfinite(fx) && std::isfinite(fw) && std::isfinite(fv)) {
      // parabola through (x, fx), (w, fw), (v, fv)
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double e_old = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
        step = p / q;
        const double u = x + step;
        if (u - a < tol2 || b - u < tol2) step = (x < m) ? tol1 : -tol1;
        use_golden = false;
      }
    }
    if (use_golden) {
      e = (x < m) ? b - x : a - x;
      step = golden * e;
    }
    d = step;
    const double u = (std::fabs(step) >= tol1) ? x + step : x + ((step > 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x)
        b = x;
      else
        a = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, it};
}

}  // namespace

ModelConstants model_constants(const NmvmModel& model, const MarketSpec& market) {
  if (!(market.risk_aversion > 0.0))
    throw std::invalid_argument("model_constants: risk aversion must be > 0");
  if (!(market.initial_wealth > 0.0))
    throw std::invalid_argument("model_constants: initial wealth must be > 0");

  const SigmaSolver solver(model);
  const Eigen::VectorXd excess = model.mu.array() - market.r_f;
  if (excess.norm() == 0.0)
    throw std::invalid_argument("model_constants: mu - 1 r_f must be nonzero");

  ModelConstants out;
  const Eigen::VectorXd sig_gamma = solver.solve(model.gamma_vec);
  const Eigen::VectorXd sig_excess = solver.solve(excess);
  out.cal_a = model.gamma_vec.dot(sig_gamma);
  out.cal_b = model.gamma_vec.dot(sig_excess);
  out.cal_c = excess.dot(sig_excess);
  if (!(out.cal_c > 0.0))
    throw std::invalid_argument("model_constants: excess-return quadratic form vanished");
  out.s_hat = integrability_number(model.law);
  out.theta_hat = std::sqrt((out.cal_a - 2.0 * out.s_hat) / out.cal_c);
  return out;
}

ExtendedReal q_objective(const ModelConstants& constants, const MixingLaw& law, double theta) {
  const double arg = 0.5 * constants.cal_a - 0.5 * theta * theta * constants.cal_c;
  const ExtendedReal ll = log_laplace(law, arg);
  if (ll.divergent()) return ExtendedReal::positive_infinity();
  return std::exp(constants.cal_c * theta + ll.value());
}

MinimizeResult minimize_q(const ModelConstants& constants, const MixingLaw& law, double tol) {
  if (!(constants.theta_hat > 0.0))
    throw std::invalid_argument("minimize_q: empty search interval");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_q: tol must be > 0");
  const double lo = -constants.theta_hat * (1.0 - 1e-9);
  const double hi = -1e-12;
  const auto f = [&](double theta) { return q_objective(constants, law, theta).value(); };
  MinimizeResult res = brent_minimize(f, lo, hi, tol);
  // Boundary attraction: squeezed against -theta_hat with Q still decreasing
  // toward it.
  const double probe = std::max(tol * std::fabs(res.q_min), 1e-13);
  if (res.q_min - lo <= std::max(tol * constants.theta_hat, 1e-10) &&
      f(res.q_min + probe) > res.q_value) {
    throw boundary_attraction_error(
        "minimize_q: minimizer attracted to -theta_hat; no interior solution");
  }
  return res;
}

PortfolioSolution optimal_portfolio(const NmvmModel& model, const MarketSpec& market) {
  const ModelConstants constants = model_constants(model, market);
  PortfolioSolution sol;
  sol.diagnostics.bracket_lo = -constants.theta_hat * (1.0 - 1e-9);
  sol.diagnostics.bracket_hi = -1e-12;
  const double tol = 1e-11;
  MinimizeResult res;
  try {
    res = minimize_q(constants, model.law, tol);
  } catch (const boundary_attraction_error& err) {
    sol.regular = false;
    sol.diagnostics.message = err.what();
    sol.q_min = sol.diagnostics.bracket_lo;
    sol.q_value = std::numeric_limits<double>::infinity();
    sol.x_star = Eigen::VectorXd::Zero(model.dimension());
    return sol;
  }
  sol.q_min = res.q_min;
  sol.q_value = res.q_value;
  sol.diagnostics.iterations = res.iterations;

  const SigmaSolver solver(model);
  const Eigen::VectorXd excess = model.mu.array() - market.r_f;
  const double prefactor = 1.0 / (market.risk_aversion * market.initial_wealth);
  sol.x_star =
      prefactor * (solver.solve(model.gamma_vec) - sol.q_min * solver.solve(excess));
  sol.regular = std::isfinite(sol.q_value);
  if (!sol.regular) sol.diagnostics.message = "Q diverges at the located minimizer";
  return sol;
}

ExtendedReal expected_utility(const NmvmModel& model, const MarketSpec& market,
                              const Eigen::VectorXd& x) {
  if (x.size() != model.dimension())
    throw std::invalid_argument("expected_utility: portfolio dimension mismatch");
  const double aw = market.risk_aversion * market.initial_wealth;
  const Eigen::VectorXd excess = model.mu.array() - market.r_f;
  const Eigen::MatrixXd sigma = model.a_matrix * model.a_matrix.transpose();
  const double arg = aw * x.dot(model.gamma_vec) - 0.5 * aw * aw * x.dot(sigma * x);
  const ExtendedReal ll = log_laplace(model.law, arg);
  if (ll.divergent()) return ExtendedReal::negative_infinity();
  const double log_mag =
      -market.risk_aversion * market.initial_wealth * (1.0 + market.r_f) -
      aw * x.dot(excess) + ll.value();
  return -std::exp(log_mag);
}

}  // namespace ggcport
