#include <umbra/metrics.hpp>

#include <json.hpp>

#include <stdexcept>

namespace umbra {

namespace {

struct Overlap {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t both = 0;
};

Overlap count_overlap(const Image& a, const Image& b, double threshold) {
  if (!a.same_size(b)) {
    throw std::invalid_argument("metric images differ in size");
  }
  Overlap o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool fa = a.pixels()[i] >= threshold;
    const bool fb = b.pixels()[i] >= threshold;
    o.a += fa;
    o.b += fb;
    o.both += fa && fb;
  }
  return o;
}

}  // namespace

double iou(const Image& a, const Image& b, double bin_threshold) {
  const Overlap o = count_overlap(a, b, bin_threshold);
  const std::size_t uni = o.a + o.b - o.both;
  if (uni == 0) return 1.0;
  return static_cast<double>(o.both) / static_cast<double>(uni);
}

double dice(const Image& a, const Image& b, double bin_threshold) {
  const Overlap o = count_overlap(a, b, bin_threshold);
  if (o.a + o.b == 0) return 1.0;
  return 2.0 * static_cast<double>(o.both) /
         static_cast<double>(o.a + o.b);
}

MetricReport MetricReport::from_views(std::vector<ViewMetrics> views) {
  MetricReport r;
  r.views = std::move(views);
  if (!r.views.empty()) {
    for (const ViewMetrics& v : r.views) {
      r.mean_iou += v.iou;
      r.mean_dice += v.dice;
    }
    r.mean_iou /= static_cast<double>(r.views.size());
    r.mean_dice /= static_cast<double>(r.views.size());
  }
  return r;
}

std::string metric_report_json(const MetricReport& report) {
  nlohmann::json views = nlohmann::json::array();
  for (const ViewMetrics& v : report.views) {
    views.push_back({{"name", v.name}, {"iou", v.iou}, {"dice", v.dice}});
  }
  nlohmann::json j{{"views", views},
                   {"mean_iou", report.mean_iou},
                   {"mean_dice", report.mean_dice}};
  return j.dump(2);
}

}  // namespace umbra
