#include <umbra/loss.hpp>

#include <cmath>
#include <stdexcept>

namespace umbra {

ImageLoss image_loss(const Image& rendered, const Image& target,
                     const LossWeights& weights) {
  if (!rendered.same_size(target)) {
    throw std::invalid_argument("rendered/target image size mismatch");
  }
  ImageLoss out;
  out.gradient = Image(rendered.width(), rendered.height());

  const double inv_p = 1.0 / static_cast<double>(rendered.size());
  double l1 = 0.0;
  double l2 = 0.0;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    const double diff = rendered.pixels()[i] - target.pixels()[i];
    l1 += std::abs(diff);
    l2 += diff * diff;
    const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    out.gradient.pixels()[i] =
        (weights.lambda_l1 * sign + 2.0 * weights.lambda_l2 * diff) * inv_p;
  }
  out.value = weights.lambda_l1 * l1 * inv_p + weights.lambda_l2 * l2 * inv_p;
  return out;
}

double total_mesh_loss(double l_img, double l_norm, double l_lap,
                       double l_edge, const LossWeights& weights) {
  return weights.lambda_img * l_img + weights.lambda_norm * l_norm +
         weights.lambda_lap * l_lap + weights.lambda_edge * l_edge;
}

}  // namespace umbra
