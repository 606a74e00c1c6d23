#pragma once

#include <umbra/image.hpp>

namespace umbra {

struct LossWeights {
  // image loss: lambda1 * mean|r - t| + lambda2 * mean (r - t)^2
  double lambda_l1 = 10.0;
  double lambda_l2 = 10.0;
  // total mesh loss: a*L_img + b*L_norm + c*L_lap + d*L_edge
  double lambda_img = 1.6;
  double lambda_norm = 2.1;
  double lambda_lap = 0.9;
  double lambda_edge = 1.8;
};

struct ImageLoss {
  double value = 0.0;
  Image gradient;  // d(value)/d(rendered pixel)
};

// Weighted L1 + L2 image loss with sign(0) = 0.
ImageLoss image_loss(const Image& rendered, const Image& target,
                     const LossWeights& weights);

double total_mesh_loss(double l_img, double l_norm, double l_lap,
                       double l_edge, const LossWeights& weights);

}  // namespace umbra
