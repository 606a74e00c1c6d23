#pragma once

#include <umbra/image.hpp>
#include <umbra/target.hpp>

#include <string>
#include <vector>

namespace umbra {

struct ViewMetrics {
  std::string name;
  double iou = 0.0;
  double dice = 0.0;
};

struct MetricReport {
  std::vector<ViewMetrics> views;
  double mean_iou = 0.0;
  double mean_dice = 0.0;

  static MetricReport from_views(std::vector<ViewMetrics> views);
};

// |A ∩ B| / |A ∪ B| after binarizing both images at bin_threshold.
// Both foregrounds empty counts as 1 by convention.
double iou(const Image& a, const Image& b, double bin_threshold = 0.5);
double dice(const Image& a, const Image& b, double bin_threshold = 0.5);

inline double iou(const TargetImage& a, const TargetImage& b,
                  double bin_threshold = 0.5) {
  return iou(a.image, b.image, bin_threshold);
}
inline double dice(const TargetImage& a, const TargetImage& b,
                   double bin_threshold = 0.5) {
  return dice(a.image, b.image, bin_threshold);
}

// {views: [{name, iou, dice}], mean_iou, mean_dice} as a JSON string.
std::string metric_report_json(const MetricReport& report);

}  // namespace umbra
