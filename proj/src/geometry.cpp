#include "boxfuse/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boxfuse {

bool is_valid(const BBox& b) {
    return std::isfinite(b.xmin) && std::isfinite(b.ymin) && std::isfinite(b.xmax) &&
           std::isfinite(b.ymax) && b.xmin >= 0.0 && b.ymin >= 0.0 && b.xmax <= 1.0 &&
           b.ymax <= 1.0 && b.xmin <= b.xmax && b.ymin <= b.ymax;
}

BBox clipped(const BBox& b) {
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    return BBox{clamp01(b.xmin), clamp01(b.ymin), clamp01(b.xmax), clamp01(b.ymax)};
}

double area(const BBox& b) {
    return (b.xmax - b.xmin) * (b.ymax - b.ymin);
}

double iou(const BBox& a, const BBox& b) {
    const double ix = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
    const double iy = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double inter = ix * iy;
    const double uni = area(a) + area(b) - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

BBox mean_box(std::span<const BBox> boxes) {
    if (boxes.empty()) throw std::invalid_argument("mean_box: empty box list");
    BBox acc{};
    for (const BBox& b : boxes) {
        acc.xmin += b.xmin;
        acc.ymin += b.ymin;
        acc.xmax += b.xmax;
        acc.ymax += b.ymax;
    }
    const double n = static_cast<double>(boxes.size());
    return BBox{acc.xmin / n, acc.ymin / n, acc.xmax / n, acc.ymax / n};
}

BBox weighted_mean_box(std::span<const BBox> boxes, std::span<const double> weights) {
    if (boxes.empty()) throw std::invalid_argument("weighted_mean_box: empty box list");
    if (boxes.size() != weights.size())
        throw std::invalid_argument("weighted_mean_box: size mismatch");
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    if (wsum <= 0.0) return mean_box(boxes);
    BBox acc{};
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const double w = weights[i];
        acc.xmin += w * boxes[i].xmin;
        acc.ymin += w * boxes[i].ymin;
        acc.xmax += w * boxes[i].xmax;
        acc.ymax += w * boxes[i].ymax;
    }
    return BBox{acc.xmin / wsum, acc.ymin / wsum, acc.xmax / wsum, acc.ymax / wsum};
}

}  // namespace boxfuse
