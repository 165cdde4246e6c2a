#pragma once

#include <vector>

#include "boxfuse/detections.hpp"

namespace boxfuse {

enum class SoftNmsMethod { Hard, Linear, Gaussian };

struct SoftNmsParams {
    SoftNmsMethod method = SoftNmsMethod::Gaussian;
    double iou_threshold = 0.5;  // Nt, used by Hard and Linear
    double sigma = 0.5;          // Gaussian decay width
    double score_floor = 0.001;  // decayed scores below this are dropped
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const SoftNmsParams& p);

// Greedy hard NMS over one (image,label) group: repeatedly keep the
// highest-score detection and delete the rest with iou > nt against it.
// Scores and boxes are never modified. Output in canonical order.
std::vector<Detection> hard_nms(std::vector<Detection> dets, double nt);

// SoftNMS over one (image,label) group. Each round selects the current
// max-score detection and decays the remaining scores by a factor of iou:
//   Gaussian: exp(-iou^2 / sigma), applied to every remaining box
//   Linear:   (1 - iou) when iou > Nt, else unchanged
//   Hard:     0 when iou > Nt, else unchanged
// A detection is dropped the moment a decay leaves its score below
// score_floor. Output sorted by final score (canonical order).
std::vector<Detection> soft_nms(std::vector<Detection> dets, const SoftNmsParams& p);

enum class Suppressor { HardNms, SoftNms };

// Applies the chosen suppressor independently to every (image,label) group.
DetectionSet suppress_set(const DetectionSet& ds, const SoftNmsParams& p, Suppressor algo);

}  // namespace boxfuse
