#include "boxfuse/voting.hpp"

#include <algorithm>
#include <stdexcept>

#include "boxfuse/parallel.hpp"

namespace boxfuse {

void validate(const VotingParams& p) {
    if (!(p.iou_threshold > 0.0 && p.iou_threshold <= 1.0))
        throw std::invalid_argument("iou_threshold must be in (0,1]");
    if (p.k < 1) throw std::invalid_argument("k must be >= 1");
    if (p.fixed_score_divisor < 0)
        throw std::invalid_argument("fixed_score_divisor must be >= 0");
}

std::pair<Cluster, std::vector<Detection>> cluster_once(std::vector<Detection> dets,
                                                        double iou_threshold) {
    if (dets.empty()) throw std::invalid_argument("cluster_once: empty pool");
    Cluster cluster;
    cluster.members.push_back(std::move(dets.front()));
    std::vector<Detection> remaining;
    remaining.reserve(dets.size());
    const BBox& seed_box = cluster.members.front().box;
    for (std::size_t i = 1; i < dets.size(); ++i) {
        // Membership is seed-relative (not transitive) and inclusive at the
        // threshold, unlike suppression's strict comparison.
        if (iou(seed_box, dets[i].box) >= iou_threshold)
            cluster.members.push_back(std::move(dets[i]));
        else
            remaining.push_back(std::move(dets[i]));
    }
    return {std::move(cluster), std::move(remaining)};
}

Detection vote(const Cluster& cluster, const VotingParams& p) {
    const auto& members = cluster.members;
    const std::size_t voters =
        p.all_member_voting ? members.size()
                            : std::min<std::size_t>(static_cast<std::size_t>(p.k),
                                                    members.size());
    double score_sum = 0.0;
    std::vector<BBox> boxes;
    std::vector<double> weights;
    boxes.reserve(voters);
    for (std::size_t i = 0; i < voters; ++i) {
        score_sum += members[i].score;
        boxes.push_back(members[i].box);
        weights.push_back(members[i].score);
    }
    const double divisor = p.fixed_score_divisor > 0
                               ? static_cast<double>(p.fixed_score_divisor)
                               : static_cast<double>(voters);
    Detection fused;
    fused.label = cluster.seed().label;
    fused.source = kEnsembleSource;
    fused.score = score_sum / divisor;
    if (p.mode == VotingMode::ScoreAndLocation)
        fused.box = p.weighted_location ? weighted_mean_box(boxes, weights) : mean_box(boxes);
    else
        fused.box = cluster.seed().box;
    return fused;
}

namespace {

std::vector<Detection> fuse_group(std::vector<Detection> group, const VotingParams& p) {
    std::sort(group.begin(), group.end(), canonical_less);
    std::vector<Detection> fused;
    while (!group.empty()) {
        auto [cluster, remaining] = cluster_once(std::move(group), p.iou_threshold);
        fused.push_back(vote(cluster, p));
        group = std::move(remaining);
    }
    std::sort(fused.begin(), fused.end(), canonical_less);
    return fused;
}

}  // namespace

DetectionSet topk_voting_nms(const DetectionSet& ds, const VotingParams& p) {
    validate(p);
    struct Group {
        const std::string* image_id;
        std::vector<Detection> dets;
    };
    std::vector<Group> groups;
    for (const auto& [id, dets] : ds.by_image) {
        std::map<std::string, std::vector<Detection>> by_label;
        for (const Detection& d : dets) by_label[d.label].push_back(d);
        for (auto& [label, group] : by_label) groups.push_back(Group{&id, std::move(group)});
    }
    parallel_for(groups.size(),
                 [&](std::size_t i) { groups[i].dets = fuse_group(std::move(groups[i].dets), p); });
    DetectionSet out;
    for (Group& g : groups) {
        auto& dst = out.by_image[*g.image_id];
        dst.insert(dst.end(), std::make_move_iterator(g.dets.begin()),
                   std::make_move_iterator(g.dets.end()));
    }
    out.canonicalize();
    for (const auto& [id, dets] : ds.by_image) out.by_image[id];
    return out;
}

DetectionSet ensemble(std::span<const DetectionSet> sets, const VotingParams& p) {
    validate(p);
    return topk_voting_nms(pool(sets), p);
}

}  // namespace boxfuse
