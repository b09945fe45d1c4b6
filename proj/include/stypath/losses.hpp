#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stypath/common.hpp"

// Perceptual losses and their analytic gradients for gradient-based style
// transfer. Feature matrices are N x M: one row per filter, one column per
// spatial position. Templated so the synthesis loop can run in float while
// oracle tests instantiate double.

namespace stypath {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {
template <typename Scalar>
inline void check_same_shape(const Mat<Scalar>& a, const Mat<Scalar>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()) + ")");
}
}  // namespace detail

// Squared-error content loss: 1/2 * sum_ij (F_out - F_cont)^2.
template <typename Scalar>
Scalar content_loss(const Mat<Scalar>& f_out, const Mat<Scalar>& f_cont) {
  detail::check_same_shape(f_out, f_cont, "content_loss");
  return Scalar(0.5) * (f_out - f_cont).squaredNorm();
}

// Derivative of the content loss w.r.t. F_out, zeroed where the rectified
// activation is not positive (subgradient 0 at exactly 0).
template <typename Scalar>
Mat<Scalar> content_gradient(const Mat<Scalar>& f_out, const Mat<Scalar>& f_cont) {
  detail::check_same_shape(f_out, f_cont, "content_gradient");
  return ((f_out.array() > Scalar(0)).template cast<Scalar>() * (f_out - f_cont).array()).matrix();
}

// Filter-correlation (Gram) matrix G = F * F^T, exactly symmetric by
// construction.
template <typename Scalar>
Mat<Scalar> gram_matrix(const Mat<Scalar>& f) {
  if (f.rows() < 1 || f.cols() < 1) throw ValidationError("gram_matrix: empty feature matrix");
  Mat<Scalar> g = Mat<Scalar>::Zero(f.rows(), f.rows());
  g.template selfadjointView<Eigen::Lower>().rankUpdate(f);
  g.template triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

// Per-layer style loss: 1/(4 N^2 M^2) * sum_ij (G_out - G_sty)^2.
template <typename Scalar>
Scalar style_layer_loss(const Mat<Scalar>& g_out, const Mat<Scalar>& g_sty, int64_t n_l, int64_t m_l) {
  detail::check_same_shape(g_out, g_sty, "style_layer_loss");
  if (n_l <= 0 || m_l <= 0) throw ValidationError("style_layer_loss: N and M must be positive");
  const Scalar denom = Scalar(4) * Scalar(n_l) * Scalar(n_l) * Scalar(m_l) * Scalar(m_l);
  return (g_out - g_sty).squaredNorm() / denom;
}

// Weighted sum of per-layer style losses. Every active layer must have a weight.
template <typename Scalar>
Scalar style_loss_total(const std::map<std::string, Scalar>& per_layer,
                        const std::map<std::string, Scalar>& weights) {
  Scalar total = Scalar(0);
  for (const auto& [name, loss] : per_layer) {
    auto it = weights.find(name);
    if (it == weights.end()) throw ConfigError("style_loss_total: missing weight for layer '" + name + "'");
    total += it->second * loss;
  }
  return total;
}

template <typename Scalar>
std::map<std::string, Scalar> default_layer_weights(const std::vector<std::string>& layers) {
  std::map<std::string, Scalar> w;
  if (layers.empty()) return w;
  const Scalar v = Scalar(1) / Scalar(layers.size());
  for (const auto& l : layers) w[l] = v;
  return w;
}

// Gradient of the per-layer style loss w.r.t. F_out, arranged to the shape of
// F_out: 1/(N^2 M^2) * (G_out - G_sty) * F_out, zeroed where F_out is not
// positive.
template <typename Scalar>
Mat<Scalar> style_gradient(const Mat<Scalar>& f_out, const Mat<Scalar>& g_out, const Mat<Scalar>& g_sty,
                           int64_t n_l, int64_t m_l) {
  detail::check_same_shape(g_out, g_sty, "style_gradient");
  if (g_out.rows() != f_out.rows())
    throw ValidationError("style_gradient: Gram size does not match filter count");
  if (n_l <= 0 || m_l <= 0) throw ValidationError("style_gradient: N and M must be positive");
  const Scalar denom = Scalar(n_l) * Scalar(n_l) * Scalar(m_l) * Scalar(m_l);
  Mat<Scalar> grad = ((g_out - g_sty) * f_out) / denom;
  return ((f_out.array() > Scalar(0)).template cast<Scalar>() * grad.array()).matrix();
}

// Total objective: alpha * content + style.
template <typename Scalar>
Scalar total_loss(Scalar content, Scalar style, Scalar alpha) {
  if (!(alpha > Scalar(0))) throw ValidationError("total_loss: alpha must be positive");
  return alpha * content + style;
}

}  // namespace stypath
