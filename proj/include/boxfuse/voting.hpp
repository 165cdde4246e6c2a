#pragma once

#include <span>
#include <utility>
#include <vector>

#include "boxfuse/detections.hpp"

namespace boxfuse {

enum class VotingMode { ScoreOnly, ScoreAndLocation };

// Source tag carried by every fused detection.
inline constexpr const char* kEnsembleSource = "ensemble";

struct VotingParams {
    double iou_threshold = 0.5;
    int k = 3;
    VotingMode mode = VotingMode::ScoreAndLocation;
    // All cluster members vote regardless of k (the plain voting variant).
    bool all_member_voting = false;
    // Score-weighted location average instead of the plain mean. Off by default.
    bool weighted_location = false;
    // When > 0, the fused score divides the voter-score sum by this fixed
    // count (e.g. the number of models) instead of the actual voter count.
    int fixed_score_divisor = 0;
};

void validate(const VotingParams& p);

// One cluster of same-image, same-label detections. members[0] is the seed
// (highest score); every member has iou(seed.box, member.box) >= threshold.
struct Cluster {
    std::vector<Detection> members;

    const Detection& seed() const { return members.front(); }
};

// Pops the seed (first element) plus every detection within iou_threshold of
// it out of `dets`, returning the cluster and the remaining pool. `dets` must
// be canonically sorted and non-empty (throws std::invalid_argument otherwise).
std::pair<Cluster, std::vector<Detection>> cluster_once(std::vector<Detection> dets,
                                                        double iou_threshold);

// Fuses a cluster into one detection: the top-m members by score vote, with
// m = min(k, cluster size) (every member when all_member_voting). The fused
// score is the mean voter score; the fused box is the voter mean box in
// ScoreAndLocation mode and the seed box in ScoreOnly mode.
Detection vote(const Cluster& cluster, const VotingParams& p);

// Repeats cluster_once + vote until each (image,label) pool is empty. Every
// input detection lands in exactly one cluster.
DetectionSet topk_voting_nms(const DetectionSet& ds, const VotingParams& p);

// pool(sets) followed by topk_voting_nms. Multi-scale merging is the same
// call with scale-tagged sources.
DetectionSet ensemble(std::span<const DetectionSet> sets, const VotingParams& p);

}  // namespace boxfuse
