#include "boxfuse/detections.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxfuse {

bool canonical_less(const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.xmin != b.box.xmin) return a.box.xmin < b.box.xmin;
    if (a.box.ymin != b.box.ymin) return a.box.ymin < b.box.ymin;
    if (a.box.xmax != b.box.xmax) return a.box.xmax < b.box.xmax;
    if (a.box.ymax != b.box.ymax) return a.box.ymax < b.box.ymax;
    if (a.label != b.label) return a.label < b.label;
    return a.source < b.source;
}

void DetectionSet::add(const std::string& image_id, Detection det) {
    by_image[image_id].push_back(std::move(det));
}

void DetectionSet::canonicalize() {
    for (auto& [id, dets] : by_image) std::sort(dets.begin(), dets.end(), canonical_less);
}

std::size_t DetectionSet::total() const {
    std::size_t n = 0;
    for (const auto& [id, dets] : by_image) n += dets.size();
    return n;
}

void GroundTruthSet::add(const std::string& image_id, GtBox box) {
    by_image[image_id].push_back(std::move(box));
}

std::size_t GroundTruthSet::total() const {
    std::size_t n = 0;
    for (const auto& [id, boxes] : by_image) n += boxes.size();
    return n;
}

DetectionSet pool(std::span<const DetectionSet> sets) {
    if (sets.empty()) throw std::invalid_argument("pool: empty set list");
    DetectionSet out;
    for (const DetectionSet& ds : sets)
        for (const auto& [id, dets] : ds.by_image) {
            auto& dst = out.by_image[id];
            dst.insert(dst.end(), dets.begin(), dets.end());
        }
    out.canonicalize();
    return out;
}

}  // namespace boxfuse
