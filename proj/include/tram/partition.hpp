#pragma once

#include <vector>

#include "tram/device.hpp"

namespace tram {

struct RewardWeights {
    double omega1 = 0.5;  ///< weight of the T2-similarity term
    double omega2 = 0.5;  ///< weight of the calibration-reliability term
};

/// A set of physical qubits inducing a connected subgraph, plus its mean
/// normalized-T2 score.
struct Community {
    std::vector<int> members;  // sorted
    double mean_score = 0.0;
};

struct MergeRecord {
    int left = -1;   ///< tree node id of the first merged community
    int right = -1;  ///< tree node id of the second
    double reward = 0.0;
    std::vector<int> members;  // sorted union
};

/// Binary merge forest over the coupling graph: nodes 0..n-1 are the qubit
/// leaves, internal nodes are appended in merge order. Disconnected devices
/// yield one root per component.
class HierarchyTree {
public:
    HierarchyTree(int num_leaves, std::vector<MergeRecord> merges);

    [[nodiscard]] int num_leaves() const { return num_leaves_; }
    [[nodiscard]] int num_internal() const { return static_cast<int>(merges_.size()); }
    [[nodiscard]] int size() const { return num_leaves_ + num_internal(); }
    /// Merge record of internal node id (>= num_leaves).
    [[nodiscard]] const MergeRecord& merge(int node_id) const;
    [[nodiscard]] const std::vector<MergeRecord>& merges() const { return merges_; }
    [[nodiscard]] std::vector<int> members(int node_id) const;
    [[nodiscard]] std::vector<int> roots() const;

private:
    int num_leaves_;
    std::vector<MergeRecord> merges_;
};

struct Partition {
    std::vector<int> members;          // sorted physical qubit indices
    std::vector<double> reward_trail;  // reward values along the merge history
    double mean_t2_us = 0.0;
};

/// Modularity of a disjoint vertex cover: Q = sum_i (e_ii - a_i^2), where
/// e_ii is the fraction of edges inside community i (counted once), e_ij
/// the fraction between i and j, and a_i = sum_j e_ij. Requires >= 1 edge.
[[nodiscard]] double modularity(const std::vector<std::vector<int>>& communities,
                                const DeviceModel& dev);

/// Scale-free symmetric similarity of two community T2 scores:
/// (2*mi*mj / (mi^2 + mj^2)) * sqrt((mi + mj)/2). Defined for mi, mj > 0.
[[nodiscard]] double t2_similarity(double m_i, double m_j);

/// Calibration-reliability term: mean of E (average two-qubit gate success
/// rate over inter-community edges) and V (average readout success rate over
/// members of both communities). Requires the pair to be adjacent.
[[nodiscard]] double error_term(const Community& ci, const Community& cj,
                                const DeviceModel& dev);

/// Merge reward F = (Q_merged - Q_origin) + omega1 * T2-similarity +
/// omega2 * error term, evaluated against the current cover. The scores
/// vector holds per-qubit normalized T2 (see normalize_t2). Non-adjacent
/// pairs are rejected.
[[nodiscard]] double reward(const Community& ci, const Community& cj,
                            const std::vector<std::vector<int>>& cover, const DeviceModel& dev,
                            const std::vector<double>& scores, const RewardWeights& w);

/// Full agglomerative merge tree: starting from singletons, repeatedly merge
/// the adjacent pair maximizing the reward. Ties prefer the pair whose
/// combined member set is lexicographically smallest.
[[nodiscard]] HierarchyTree build_hierarchy(const DeviceModel& dev, const RewardWeights& w,
                                            double epsilon = 1e-8);

/// Runs the merge loop until a community of exactly n_target qubits
/// appears. Merges that would overshoot n_target are deferred while a
/// non-overshooting candidate exists; if every candidate overshoots, the
/// best merge is taken and the result trimmed by greedily dropping its
/// weakest degree-1 qubits. n_target == 1 degenerates to picking the best
/// single qubit by omega1 * score + omega2 * (1 - readout_error).
[[nodiscard]] Partition select_partition(const DeviceModel& dev, const RewardWeights& w,
                                         int n_target, double epsilon = 1e-8);

}  // namespace tram
