#pragma once

// Exact barycentric-monomial integration, symmetric triangle rules
// (degrees 1,2,4,6,8,10) and Gauss-Legendre edge rules. All rules are
// normalized: physical integral = measure * weighted sum.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stokesnc/mesh.hpp"

namespace stokesnc {

/// Triangle rules store barycentric triples per row; edge rules store
/// (t, 1-t, 0) with t in [0,1].
struct QuadratureRule {
  Eigen::Matrix<double, Eigen::Dynamic, 3> points;
  Eigen::VectorXd weights;
  int exact_degree = 0;
};

/// int_K prod lambda_i^alpha_i = |K| d! prod(alpha_i!) / (d + sum alpha)!
/// with d = 2.
inline double barycentric_monomial_integral(const std::array<int, 3>& alphas,
                                            double area) {
  if (area <= 0.0)
    throw std::domain_error("barycentric_monomial_integral: area > 0");
  auto fact = [](int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
  };
  const int total = alphas[0] + alphas[1] + alphas[2];
  return area * 2.0 * fact(alphas[0]) * fact(alphas[1]) * fact(alphas[2]) /
         fact(2 + total);
}

namespace detail {

inline void append_orbit3(std::vector<std::array<double, 3>>& pts,
                          std::vector<double>& w, double a, double weight) {
  const double b = 0.5 * (1.0 - a);
  pts.push_back({a, b, b});
  pts.push_back({b, a, b});
  pts.push_back({b, b, a});
  w.insert(w.end(), 3, weight);
}

inline void append_orbit6(std::vector<std::array<double, 3>>& pts,
                          std::vector<double>& w, double b, double c,
                          double weight) {
  const double a = 1.0 - b - c;
  pts.push_back({a, b, c});
  pts.push_back({a, c, b});
  pts.push_back({b, a, c});
  pts.push_back({b, c, a});
  pts.push_back({c, a, b});
  pts.push_back({c, b, a});
  w.insert(w.end(), 6, weight);
}

inline QuadratureRule make_rule(const std::vector<std::array<double, 3>>& pts,
                                const std::vector<double>& w, int degree) {
  QuadratureRule r;
  r.points.resize(static_cast<Eigen::Index>(pts.size()), 3);
  r.weights.resize(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r.points.row(static_cast<Eigen::Index>(i)) << pts[i][0], pts[i][1],
        pts[i][2];
    r.weights[static_cast<Eigen::Index>(i)] = w[i];
  }
  r.exact_degree = degree;
  return r;
}

inline std::vector<QuadratureRule> build_triangle_rules() {
  std::vector<QuadratureRule> rules;
  {
    QuadratureRule r;
    r.points.resize(1, 3);
    r.points << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    r.weights.resize(1);
    r.weights << 1.0;
    r.exact_degree = 1;
    rules.push_back(r);
  }
  {
    std::vector<std::array<double, 3>> pts;
    std::vector<double> w;
    append_orbit3(pts, w, 2.0 / 3, 1.0 / 3);
    rules.push_back(make_rule(pts, w, 2));
  }
  {
    std::vector<std::array<double, 3>> pts;
    std::vector<double> w;
    append_orbit3(pts, w, 0.10810301816807014, 0.22338158967801144);
    append_orbit3(pts, w, 0.81684757298045840, 0.10995174365532188);
    rules.push_back(make_rule(pts, w, 4));
  }
  {
    std::vector<std::array<double, 3>> pts;
    std::vector<double> w;
    append_orbit3(pts, w, 0.50142650965817714, 0.11678627572637759);
    append_orbit3(pts, w, 0.87382197101699577, 0.05084490637020658);
    append_orbit6(pts, w, 0.31035245103378373, 0.63650249912139867,
                  0.08285107561837454);
    rules.push_back(make_rule(pts, w, 6));
  }
  {
    std::vector<std::array<double, 3>> pts;
    std::vector<double> w;
    pts.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
    w.push_back(0.14431560767777143);
    append_orbit3(pts, w, 0.08141482341457215, 0.09509163426729399);
    append_orbit3(pts, w, 0.65886138449649934, 0.10321737053472224);
    append_orbit3(pts, w, 0.89890554336593664, 0.03245849762319963);
    append_orbit6(pts, w, 0.00839477740994149, 0.26311282963466937,
                  0.02723031417443019);
    rules.push_back(make_rule(pts, w, 8));
  }
  {
    std::vector<std::array<double, 3>> pts;
    std::vector<double> w;
    pts.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
    w.push_back(0.09081799038254093);
    append_orbit3(pts, w, 0.02884473323263100, 0.03672595775641556);
    append_orbit3(pts, w, 0.78103684902970094, 0.04532105943555393);
    append_orbit6(pts, w, 0.14170721941496350, 0.30793983876424941,
                  0.07275791684539892);
    append_orbit6(pts, w, 0.02500353476276089, 0.24667256064000978,
                  0.02832724253110159);
    append_orbit6(pts, w, 0.00954081540031221, 0.06680325101229596,
                  0.00942166696375788);
    rules.push_back(make_rule(pts, w, 10));
  }
  return rules;
}

}  // namespace detail

/// Smallest shipped symmetric rule with exact_degree >= degree.
inline const QuadratureRule& triangle_rule(int degree) {
  static const std::vector<QuadratureRule> rules =
      detail::build_triangle_rules();
  if (degree < 1 || degree > 10)
    throw std::invalid_argument("triangle_rule: degree must be in [1,10]");
  for (const QuadratureRule& r : rules)
    if (r.exact_degree >= degree) return r;
  throw std::logic_error("triangle_rule: table exhausted");
}

/// Gauss-Legendre rule on [0,1], exact for degree <= 2*num_points - 1.
/// Nodes from Newton iteration on P_n; weights 1/((1-x^2) P_n'(x)^2).
inline QuadratureRule edge_gauss_rule(int num_points) {
  if (num_points < 1 || num_points > 10)
    throw std::invalid_argument("edge_gauss_rule: num_points in [1,10]");
  static std::array<QuadratureRule, 11> cache;
  QuadratureRule& r = cache[num_points];
  if (r.weights.size() > 0) return r;
  const int n = num_points;
  r.points.resize(n, 3);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // node on [-1,1]
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double t = 0.5 * (x + 1.0);
    r.points.row(i) << t, 1.0 - t, 0.0;
    r.weights[i] = 0.5 * w;  // scaled to [0,1], weights sum to 1
  }
  r.exact_degree = 2 * n - 1;
  return r;
}

// --- quadrature-loop helpers ---------------------------------------------

/// Integrates f(x) over cell c: f takes the physical point.
template <class F>
double integrate_cell(const Mesh& mesh, int c, int degree, F&& f) {
  const QuadratureRule& rule = triangle_rule(degree);
  const double area = mesh.cell(c).area;
  double s = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    const Vec2 xhat(rule.points(q, 1), rule.points(q, 2));
    s += rule.weights[q] * f(mesh.to_physical(c, xhat));
  }
  return area * s;
}

/// Integrates f(x) over facet fid with an npts Gauss rule.
template <class F>
double integrate_facet(const Mesh& mesh, int fid, int npts, F&& f) {
  const QuadratureRule& rule = edge_gauss_rule(npts);
  const Facet& facet = mesh.facet(fid);
  const Vec2 pa = mesh.vertex(facet.vertex_ids[0]).coords;
  const Vec2 pb = mesh.vertex(facet.vertex_ids[1]).coords;
  double s = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q)
    s += rule.weights[q] * f(pa + rule.points(q, 0) * (pb - pa));
  return facet.length * s;
}

}  // namespace stokesnc
