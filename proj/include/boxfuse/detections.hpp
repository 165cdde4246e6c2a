#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "boxfuse/geometry.hpp"

namespace boxfuse {

// One detected box. `label` and `source` are opaque tokens ("Car", "/m/0cmf2",
// "det3", ...). Scores live in [0,1].
struct Detection {
    BBox box;
    std::string label;
    double score = 0.0;
    std::string source;

    friend bool operator==(const Detection&, const Detection&) = default;
};

// Canonical ordering: score descending, then (xmin,ymin,xmax,ymax)
// lexicographic, then label, then source. Every algorithm in this library
// iterates detections in this order so that outputs are byte-stable.
bool canonical_less(const Detection& a, const Detection& b);

// Per-image detection lists keyed by image id. Images iterate in id order;
// call canonicalize() after bulk insertion to restore per-image ordering.
struct DetectionSet {
    std::map<std::string, std::vector<Detection>> by_image;

    void add(const std::string& image_id, Detection det);
    void canonicalize();
    std::size_t total() const;
    bool empty() const { return by_image.empty(); }
};

struct GtBox {
    BBox box;
    std::string label;

    friend bool operator==(const GtBox&, const GtBox&) = default;
};

struct GroundTruthSet {
    std::map<std::string, std::vector<GtBox>> by_image;

    void add(const std::string& image_id, GtBox box);
    std::size_t total() const;
    bool empty() const { return by_image.empty(); }
};

// Per-image concatenation of all sets; source tags are preserved. The result
// is canonicalized. Throws std::invalid_argument on an empty input list.
DetectionSet pool(std::span<const DetectionSet> sets);

}  // namespace boxfuse
