#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "boxfuse/detections.hpp"

namespace boxfuse {

// Malformed file content. The message carries file, line number and field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or unwritable path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed 6-decimal formatting used by every writer ("0.485225").
std::string fixed6(double v);

// Predictions CSV: header `image_id,label,score,xmin,ymin,xmax,ymax`.
// Every parsed detection gets `source` = source_tag; coordinates are clipped
// to [0,1]; inverted boxes and out-of-range scores are ParseErrors.
DetectionSet read_predictions(const std::filesystem::path& path, std::string_view source_tag);
void write_predictions(const DetectionSet& ds, const std::filesystem::path& path);

// JSON-Lines mirror of the predictions CSV: one object per detection with the
// same seven fields. Same validation rules.
DetectionSet read_predictions_jsonl(const std::filesystem::path& path,
                                    std::string_view source_tag);
void write_predictions_jsonl(const DetectionSet& ds, const std::filesystem::path& path);

// Dispatch on extension: ".jsonl" uses the JSON-Lines codec, anything else CSV.
DetectionSet read_predictions_any(const std::filesystem::path& path,
                                  std::string_view source_tag);
void write_predictions_any(const DetectionSet& ds, const std::filesystem::path& path);

// Ground-truth CSV: header `image_id,label,xmin,ymin,xmax,ymax`.
GroundTruthSet read_ground_truth(const std::filesystem::path& path);
void write_ground_truth(const GroundTruthSet& gt, const std::filesystem::path& path);

// Submission CSV: header `ImageId,PredictionString`; PredictionString is
// space-separated `label score xmin ymin xmax ymax` groups, score descending.
// Images with zero detections produce an empty PredictionString.
void write_submission(const DetectionSet& ds, const std::filesystem::path& path);
DetectionSet read_submission(const std::filesystem::path& path, std::string_view source_tag);

}  // namespace boxfuse
