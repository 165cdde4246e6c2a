#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxfuse/detections.hpp"

namespace boxfuse {

struct MatchParams {
    double iou_match_threshold = 0.5;
};

void validate(const MatchParams& p);

// One class's detections/ground truth gathered across all images.
struct ClassDetection {
    std::string image_id;
    BBox box;
    double score = 0.0;
};

struct ClassGt {
    std::string image_id;
    BBox box;
};

struct MatchResult {
    bool tp = false;
    long gt_index = -1;  // index into the gts span; -1 for false positives
};

// Greedy matching: each detection, in the given (score-descending) order,
// claims the highest-iou unmatched GT box in its image with iou >= threshold.
std::vector<MatchResult> match_class(std::span<const ClassDetection> dets,
                                     std::span<const ClassGt> gts, const MatchParams& p);

// All-point interpolated AP from score-ordered TP/FP flags. Returns 0 when
// gt_count is 0 (such classes are excluded from mAP by the caller).
double average_precision(std::span<const bool> tp_flags, std::size_t gt_count);

struct ClassReport {
    double ap = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long gt_count = 0;
};

struct EvalReport {
    std::map<std::string, ClassReport> per_class;  // classes in GT or detections
    double map = 0.0;  // unweighted mean over classes with gt_count >= 1
};

EvalReport evaluate(const DetectionSet& ds, const GroundTruthSet& gt, const MatchParams& p);

// CSV: `label,ap,tp,fp,fn,gt_count` rows plus a final `__mAP__,<value>,,,,`.
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);

// Human-readable per-class summary, one line per class.
std::string format_report(const EvalReport& report);

// Mean center distance between TP boxes and their matched GT across all
// classes; nullopt when nothing matched. Used to measure localization quality.
std::optional<double> mean_tp_center_error(const DetectionSet& ds, const GroundTruthSet& gt,
                                           const MatchParams& p);

}  // namespace boxfuse
