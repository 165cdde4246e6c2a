#include "boxfuse/suppression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boxfuse/parallel.hpp"

namespace boxfuse {

namespace {

// (image,label) groups listed in deterministic order, ready for fan-out.
struct Group {
    const std::string* image_id;
    std::vector<Detection> dets;
};

std::vector<Group> split_groups(const DetectionSet& ds) {
    std::vector<Group> groups;
    for (const auto& [id, dets] : ds.by_image) {
        std::map<std::string, std::vector<Detection>> by_label;
        for (const Detection& d : dets) by_label[d.label].push_back(d);
        for (auto& [label, group] : by_label)
            groups.push_back(Group{&id, std::move(group)});
    }
    return groups;
}

DetectionSet merge_groups(std::vector<Group>&& groups) {
    DetectionSet out;
    for (Group& g : groups) {
        auto& dst = out.by_image[*g.image_id];
        dst.insert(dst.end(), std::make_move_iterator(g.dets.begin()),
                   std::make_move_iterator(g.dets.end()));
    }
    out.canonicalize();
    return out;
}

}  // namespace

void validate(const SoftNmsParams& p) {
    if (!(p.iou_threshold > 0.0 && p.iou_threshold <= 1.0))
        throw std::invalid_argument("iou_threshold must be in (0,1]");
    if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (!(p.score_floor >= 0.0 && p.score_floor < 1.0))
        throw std::invalid_argument("score_floor must be in [0,1)");
}

std::vector<Detection> hard_nms(std::vector<Detection> dets, double nt) {
    std::sort(dets.begin(), dets.end(), canonical_less);
    std::vector<Detection> kept;
    kept.reserve(dets.size());
    std::size_t n = dets.size();
    while (n > 0) {
        // dets[0..n) holds the remaining pool in canonical order.
        Detection top = std::move(dets[0]);
        std::size_t w = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (iou(top.box, dets[i].box) <= nt) dets[w++] = std::move(dets[i]);
        n = w;
        kept.push_back(std::move(top));
    }
    return kept;
}

std::vector<Detection> soft_nms(std::vector<Detection> dets, const SoftNmsParams& p) {
    std::vector<Detection> kept;
    kept.reserve(dets.size());
    while (!dets.empty()) {
        const auto top_it = std::min_element(dets.begin(), dets.end(), canonical_less);
        Detection top = std::move(*top_it);
        dets.erase(top_it);
        std::size_t w = 0;
        for (std::size_t i = 0; i < dets.size(); ++i) {
            const double ov = iou(top.box, dets[i].box);
            double factor = 1.0;
            switch (p.method) {
                case SoftNmsMethod::Gaussian:
                    factor = std::exp(-(ov * ov) / p.sigma);
                    break;
                case SoftNmsMethod::Linear:
                    if (ov > p.iou_threshold) factor = 1.0 - ov;
                    break;
                case SoftNmsMethod::Hard:
                    if (ov > p.iou_threshold) factor = 0.0;
                    break;
            }
            if (factor < 1.0) {
                dets[i].score *= factor;
                if (dets[i].score < p.score_floor) continue;  // dropped
            }
            if (w != i) dets[w] = std::move(dets[i]);
            ++w;
        }
        dets.resize(w);
        kept.push_back(std::move(top));
    }
    std::sort(kept.begin(), kept.end(), canonical_less);
    return kept;
}

DetectionSet suppress_set(const DetectionSet& ds, const SoftNmsParams& p, Suppressor algo) {
    validate(p);
    std::vector<Group> groups = split_groups(ds);
    parallel_for(groups.size(), [&](std::size_t i) {
        groups[i].dets = algo == Suppressor::HardNms
                             ? hard_nms(std::move(groups[i].dets), p.iou_threshold)
                             : soft_nms(std::move(groups[i].dets), p);
    });
    DetectionSet out = merge_groups(std::move(groups));
    // keep images that lost every detection visible in the result
    for (const auto& [id, dets] : ds.by_image) out.by_image[id];
    return out;
}

}  // namespace boxfuse
