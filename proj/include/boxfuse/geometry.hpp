#pragma once

#include <span>

namespace boxfuse {

// Axis-aligned box in normalized image coordinates, each value in [0,1].
// xmin <= xmax and ymin <= ymax always; zero-area boxes are legal.
struct BBox {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    friend bool operator==(const BBox&, const BBox&) = default;
};

bool is_valid(const BBox& b);

// Clamps all coordinates into [0,1]. Does not fix inverted boxes.
BBox clipped(const BBox& b);

double area(const BBox& b);

// Intersection over union. Defined as 0 when the union has zero area.
double iou(const BBox& a, const BBox& b);

// Coordinate-wise arithmetic mean. Throws std::invalid_argument on empty input.
BBox mean_box(std::span<const BBox> boxes);

// Score-weighted coordinate-wise mean; falls back to the unweighted mean when
// the weights sum to zero. Sizes must match.
BBox weighted_mean_box(std::span<const BBox> boxes, std::span<const double> weights);

}  // namespace boxfuse
