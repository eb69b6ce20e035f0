#include "tram/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tram/log.hpp"

namespace tram {

HierarchyTree::HierarchyTree(int num_leaves, std::vector<MergeRecord> merges)
    : num_leaves_(num_leaves), merges_(std::move(merges)) {}

const MergeRecord& HierarchyTree::merge(int node_id) const {
    if (node_id < num_leaves_ || node_id >= size()) {
        throw std::out_of_range("not an internal node id");
    }
    return merges_[static_cast<size_t>(node_id - num_leaves_)];
}

std::vector<int> HierarchyTree::members(int node_id) const {
    if (node_id < 0 || node_id >= size()) throw std::out_of_range("bad node id");
    if (node_id < num_leaves_) return {node_id};
    return merge(node_id).members;
}

std::vector<int> HierarchyTree::roots() const {
    std::vector<char> is_child(static_cast<size_t>(size()), 0);
    for (const auto& m : merges_) {
        is_child[static_cast<size_t>(m.left)] = 1;
        is_child[static_cast<size_t>(m.right)] = 1;
    }
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        if (!is_child[static_cast<size_t>(i)]) out.push_back(i);
    }
    return out;
}

double modularity(const std::vector<std::vector<int>>& communities, const DeviceModel& dev) {
    if (dev.edges().empty()) throw std::invalid_argument("modularity needs at least one edge");
    const int n = dev.num_qubits();
    std::vector<int> comm_of(static_cast<size_t>(n), -1);
    for (size_t c = 0; c < communities.size(); ++c) {
        for (int v : communities[c]) {
            if (v < 0 || v >= n || comm_of[static_cast<size_t>(v)] != -1) {
                throw std::invalid_argument("communities must form a disjoint cover");
            }
            comm_of[static_cast<size_t>(v)] = static_cast<int>(c);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (comm_of[static_cast<size_t>(v)] == -1) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " not covered");
        }
    }
    const double total = static_cast<double>(dev.edges().size());
    std::vector<double> intra(communities.size(), 0.0);
    std::vector<double> incident(communities.size(), 0.0);  // intra + cross, per community
    for (const auto& e : dev.edges()) {
        const int ci = comm_of[static_cast<size_t>(e.q0)];
        const int cj = comm_of[static_cast<size_t>(e.q1)];
        if (ci == cj) {
            intra[static_cast<size_t>(ci)] += 1.0;
            incident[static_cast<size_t>(ci)] += 1.0;
        } else {
            incident[static_cast<size_t>(ci)] += 1.0;
            incident[static_cast<size_t>(cj)] += 1.0;
        }
    }
    double q = 0.0;
    for (size_t c = 0; c < communities.size(); ++c) {
        const double a = incident[c] / total;
        q += intra[c] / total - a * a;
    }
    return q;
}

double t2_similarity(double m_i, double m_j) {
    if (m_i <= 0 || m_j <= 0) throw std::invalid_argument("community scores must be positive");
    const double balance = 2.0 * m_i * m_j / (m_i * m_i + m_j * m_j);
    return balance * std::sqrt((m_i + m_j) / 2.0);
}

double error_term(const Community& ci, const Community& cj, const DeviceModel& dev) {
    std::vector<char> in_i(static_cast<size_t>(dev.num_qubits()), 0);
    std::vector<char> in_j(static_cast<size_t>(dev.num_qubits()), 0);
    for (int v : ci.members) in_i[static_cast<size_t>(v)] = 1;
    for (int v : cj.members) in_j[static_cast<size_t>(v)] = 1;
    double gate_success = 0.0;
    int inter_edges = 0;
    for (const auto& e : dev.edges()) {
        const bool cross = (in_i[static_cast<size_t>(e.q0)] && in_j[static_cast<size_t>(e.q1)]) ||
                           (in_j[static_cast<size_t>(e.q0)] && in_i[static_cast<size_t>(e.q1)]);
        if (cross) {
            gate_success += 1.0 - e.two_qubit_error;
            ++inter_edges;
        }
    }
    if (inter_edges == 0) {
        throw std::invalid_argument("error term requires at least one inter-community edge");
    }
    double readout_success = 0.0;
    int members = 0;
    for (const auto& group : {std::cref(ci.members), std::cref(cj.members)}) {
        for (int v : group.get()) {
            readout_success += 1.0 - dev.qubit(v).readout_error;
            ++members;
        }
    }
    const double e_mean = gate_success / static_cast<double>(inter_edges);
    const double v_mean = readout_success / static_cast<double>(members);
    return (e_mean + v_mean) / 2.0;
}

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

double mean_of(const std::vector<int>& members, const std::vector<double>& values) {
    double sum = 0.0;
    for (int v : members) sum += values[static_cast<size_t>(v)];
    return sum / static_cast<double>(members.size());
}

/// Live agglomeration state shared by tree construction and partition
/// selection. Reward trails carry (merge step, reward) so a community's
/// history stays chronological across lineages.
struct LiveMerge {
    const DeviceModel& dev;
    std::vector<double> scores;
    RewardWeights w;

    std::vector<Community> comms;
    std::vector<int> node_ids;
    std::vector<std::vector<std::pair<int, double>>> trails;
    std::vector<MergeRecord> merges;
    int step = 0;

    LiveMerge(const DeviceModel& d, const RewardWeights& weights, double epsilon)
        : dev(d), w(weights) {
        scores = d.num_qubits() > 1 ? normalize_t2(d, epsilon)
                                    : std::vector<double>{1.0};
        for (int q = 0; q < d.num_qubits(); ++q) {
            comms.push_back(Community{{q}, scores[static_cast<size_t>(q)]});
            node_ids.push_back(q);
            trails.emplace_back();
        }
    }

    [[nodiscard]] std::vector<std::vector<int>> cover() const {
        std::vector<std::vector<int>> out;
        out.reserve(comms.size());
        for (const auto& c : comms) out.push_back(c.members);
        return out;
    }

    /// Distinct adjacent live-community index pairs (a < b).
    [[nodiscard]] std::vector<std::pair<int, int>> adjacent_pairs() const {
        std::vector<int> comm_of(static_cast<size_t>(dev.num_qubits()), -1);
        for (size_t c = 0; c < comms.size(); ++c) {
            for (int v : comms[c].members) comm_of[static_cast<size_t>(v)] = static_cast<int>(c);
        }
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : dev.edges()) {
            int a = comm_of[static_cast<size_t>(e.q0)];
            int b = comm_of[static_cast<size_t>(e.q1)];
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            pairs.emplace_back(a, b);
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        return pairs;
    }

    [[nodiscard]] double reward_of(int a, int b, double q_origin) const {
        auto merged_cover = cover();
        merged_cover[static_cast<size_t>(a)] =
            sorted_union(comms[static_cast<size_t>(a)].members,
                         comms[static_cast<size_t>(b)].members);
        merged_cover.erase(merged_cover.begin() + b);
        const double delta_q = modularity(merged_cover, dev) - q_origin;
        const double sim =
            t2_similarity(comms[static_cast<size_t>(a)].mean_score,
                          comms[static_cast<size_t>(b)].mean_score);
        const double ev = error_term(comms[static_cast<size_t>(a)],
                                     comms[static_cast<size_t>(b)], dev);
        return delta_q + w.omega1 * sim + w.omega2 * ev;
    }

    /// Best pair by reward; ties prefer the lexicographically smallest
    /// combined member set, which keeps merge order reproducible.
    [[nodiscard]] std::pair<int, int> pick(const std::vector<std::pair<int, int>>& pairs,
                                           double q_origin, double* best_reward) const {
        double best = -std::numeric_limits<double>::infinity();
        std::pair<int, int> best_pair{-1, -1};
        std::vector<int> best_members;
        for (const auto& [a, b] : pairs) {
            const double f = reward_of(a, b, q_origin);
            if (f < best) continue;
            auto members = sorted_union(comms[static_cast<size_t>(a)].members,
                                        comms[static_cast<size_t>(b)].members);
            if (f > best || members < best_members) {
                best = f;
                best_pair = {a, b};
                best_members = std::move(members);
            }
        }
        *best_reward = best;
        return best_pair;
    }

    /// Merges live communities a and b; returns the index of the result.
    int apply(int a, int b, double f) {
        auto& ca = comms[static_cast<size_t>(a)];
        auto& cb = comms[static_cast<size_t>(b)];
        MergeRecord rec;
        rec.left = node_ids[static_cast<size_t>(a)];
        rec.right = node_ids[static_cast<size_t>(b)];
        rec.reward = f;
        rec.members = sorted_union(ca.members, cb.members);
        const int new_node = dev.num_qubits() + static_cast<int>(merges.size());
        merges.push_back(rec);

        std::vector<std::pair<int, double>> trail;
        std::merge(trails[static_cast<size_t>(a)].begin(), trails[static_cast<size_t>(a)].end(),
                   trails[static_cast<size_t>(b)].begin(), trails[static_cast<size_t>(b)].end(),
                   std::back_inserter(trail));
        trail.emplace_back(step++, f);

        ca.members = merges.back().members;
        ca.mean_score = mean_of(ca.members, scores);
        node_ids[static_cast<size_t>(a)] = new_node;
        trails[static_cast<size_t>(a)] = std::move(trail);
        comms.erase(comms.begin() + b);
        node_ids.erase(node_ids.begin() + b);
        trails.erase(trails.begin() + b);
        return a;
    }
};

double selection_value(const DeviceModel& dev, const std::vector<double>& scores, int q,
                       const RewardWeights& w) {
    return w.omega1 * scores[static_cast<size_t>(q)] +
           w.omega2 * (1.0 - dev.qubit(q).readout_error);
}

/// Greedy trim toward n_target: drop the weakest degree-1 qubit of the
/// induced subgraph at each step (falling back to the weakest non-cut qubit
/// when the subgraph has no leaves), so connectivity is preserved.
std::vector<int> trim_to_size(std::vector<int> members, int n_target, const DeviceModel& dev,
                              const std::vector<double>& scores, const RewardWeights& w) {
    while (static_cast<int>(members.size()) > n_target) {
        std::vector<int> degree(members.size(), 0);
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                if (dev.connected(members[i], members[j])) {
                    ++degree[i];
                    ++degree[j];
                }
            }
        }
        auto keeps_connected = [&](size_t skip) {
            std::vector<int> rest;
            for (size_t i = 0; i < members.size(); ++i) {
                if (i != skip) rest.push_back(members[i]);
            }
            if (rest.empty()) return true;
            std::vector<char> seen(rest.size(), 0);
            std::vector<size_t> stack{0};
            seen[0] = 1;
            size_t reached = 1;
            while (!stack.empty()) {
                const size_t u = stack.back();
                stack.pop_back();
                for (size_t v = 0; v < rest.size(); ++v) {
                    if (!seen[v] && dev.connected(rest[u], rest[v])) {
                        seen[v] = 1;
                        ++reached;
                        stack.push_back(v);
                    }
                }
            }
            return reached == rest.size();
        };
        int chosen = -1;
        double chosen_value = 0.0;
        for (int pass = 0; pass < 2 && chosen < 0; ++pass) {
            for (size_t i = 0; i < members.size(); ++i) {
                if (pass == 0 && degree[i] != 1) continue;
                if (pass == 1 && !keeps_connected(i)) continue;
                const double value = selection_value(dev, scores, members[i], w);
                if (chosen < 0 || value < chosen_value) {
                    chosen = static_cast<int>(i);
                    chosen_value = value;
                }
            }
        }
        if (chosen < 0) throw std::logic_error("cannot trim partition without disconnecting it");
        members.erase(members.begin() + chosen);
    }
    return members;
}

Partition finish_partition(std::vector<int> members,
                           const std::vector<std::pair<int, double>>& trail,
                           const DeviceModel& dev) {
    Partition p;
    p.members = std::move(members);
    for (const auto& [step, f] : trail) p.reward_trail.push_back(f);
    double t2 = 0.0;
    for (int q : p.members) t2 += dev.qubit(q).t2_us;
    p.mean_t2_us = t2 / static_cast<double>(p.members.size());
    return p;
}

}  // namespace

double reward(const Community& ci, const Community& cj,
              const std::vector<std::vector<int>>& cover, const DeviceModel& dev,
              const std::vector<double>& scores, const RewardWeights& w) {
    bool adjacent = false;
    std::vector<char> in_i(static_cast<size_t>(dev.num_qubits()), 0);
    std::vector<char> in_j(static_cast<size_t>(dev.num_qubits()), 0);
    for (int v : ci.members) in_i[static_cast<size_t>(v)] = 1;
    for (int v : cj.members) in_j[static_cast<size_t>(v)] = 1;
    for (const auto& e : dev.edges()) {
        if ((in_i[static_cast<size_t>(e.q0)] && in_j[static_cast<size_t>(e.q1)]) ||
            (in_j[static_cast<size_t>(e.q0)] && in_i[static_cast<size_t>(e.q1)])) {
            adjacent = true;
            break;
        }
    }
    if (!adjacent) throw std::invalid_argument("reward requires an adjacent community pair");

    const double q_origin = modularity(cover, dev);
    std::vector<std::vector<int>> merged_cover;
    bool replaced = false;
    for (const auto& group : cover) {
        if (group == ci.members || group == cj.members) {
            if (!replaced) {
                merged_cover.push_back(sorted_union(ci.members, cj.members));
                replaced = true;
            }
            continue;
        }
        merged_cover.push_back(group);
    }
    if (!replaced) throw std::invalid_argument("cover does not contain the given communities");
    const double q_merged = modularity(merged_cover, dev);
    return (q_merged - q_origin) + w.omega1 * t2_similarity(ci.mean_score, cj.mean_score) +
           w.omega2 * error_term(ci, cj, dev);
}

HierarchyTree build_hierarchy(const DeviceModel& dev, const RewardWeights& w, double epsilon) {
    LiveMerge state(dev, w, epsilon);
    while (true) {
        const auto pairs = state.adjacent_pairs();
        if (pairs.empty()) break;
        const double q_origin = modularity(state.cover(), dev);
        double f = 0.0;
        const auto [a, b] = state.pick(pairs, q_origin, &f);
        state.apply(a, b, f);
    }
    return HierarchyTree(dev.num_qubits(), std::move(state.merges));
}

Partition select_partition(const DeviceModel& dev, const RewardWeights& w, int n_target,
                           double epsilon) {
    if (n_target < 1 || n_target > dev.num_qubits()) {
        throw std::invalid_argument("n_target must lie in [1, num_qubits]");
    }
    if (n_target == 1) {
        // The merge loop starts at pair size 2; a singleton request reduces
        // to scanning qubits by omega1*score + omega2*(1 - readout_error).
        const auto scores = dev.num_qubits() > 1 ? normalize_t2(dev, epsilon)
                                                 : std::vector<double>{1.0};
        int best = 0;
        double best_value = selection_value(dev, scores, 0, w);
        for (int q = 1; q < dev.num_qubits(); ++q) {
            const double value = selection_value(dev, scores, q, w);
            if (value > best_value) {
                best = q;
                best_value = value;
            }
        }
        return finish_partition({best}, {}, dev);
    }

    LiveMerge state(dev, w, epsilon);
    while (true) {
        const auto all_pairs = state.adjacent_pairs();
        if (all_pairs.empty()) break;
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [a, b] : all_pairs) {
            const auto size_a = state.comms[static_cast<size_t>(a)].members.size();
            const auto size_b = state.comms[static_cast<size_t>(b)].members.size();
            if (static_cast<int>(size_a + size_b) <= n_target) pairs.emplace_back(a, b);
        }
        const bool overshoot = pairs.empty();
        if (overshoot) pairs = all_pairs;

        const double q_origin = modularity(state.cover(), dev);
        double f = 0.0;
        const auto [a, b] = state.pick(pairs, q_origin, &f);
        const int merged = state.apply(a, b, f);
        const auto& community = state.comms[static_cast<size_t>(merged)];
        if (static_cast<int>(community.members.size()) == n_target) {
            return finish_partition(community.members, state.trails[static_cast<size_t>(merged)],
                                    dev);
        }
        if (overshoot) {
            log_debug("partition overshoot at size " + std::to_string(community.members.size()) +
                      "; trimming to " + std::to_string(n_target));
            auto members = trim_to_size(community.members, n_target, dev, state.scores, w);
            std::sort(members.begin(), members.end());
            return finish_partition(std::move(members),
                                    state.trails[static_cast<size_t>(merged)], dev);
        }
    }
    throw std::runtime_error("no connected subgraph of " + std::to_string(n_target) +
                             " qubits exists on device '" + dev.name() + "'");
}

}  // namespace tram
