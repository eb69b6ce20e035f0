#include "tram/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tram {

Heatmap::Heatmap(int num_logical, double phi) : n_(num_logical), phi_(phi) {
    if (num_logical <= 0) throw std::invalid_argument("heatmap needs at least one qubit");
    if (phi < 0) throw std::invalid_argument("phi must be nonnegative");
    hm_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0.0);
}

void Heatmap::accumulate(int i, int j, double w) {
    if (i == j) throw std::invalid_argument("heatmap entries are off-diagonal");
    hm_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)] += w;
    hm_[static_cast<size_t>(j) * static_cast<size_t>(n_) + static_cast<size_t>(i)] += w;
}

double Heatmap::row_sum(int i) const {
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += at(i, j);
    return sum;
}

std::vector<std::pair<int, int>> Heatmap::active_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (at(i, j) > 0.0) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

double time_weight(int k, int total, double phi) {
    if (k < 1 || k > total) throw std::out_of_range("reverse-order index out of range");
    if (phi < 0) throw std::invalid_argument("phi must be nonnegative");
    return std::exp(phi * (1.0 - static_cast<double>(k) / static_cast<double>(total)));
}

Heatmap build_heatmap(const CircuitDag& dag, double phi) {
    Heatmap hm(dag.circuit().num_qubits(), phi);
    const auto order = reverse_two_qubit_order(dag);
    const int total = static_cast<int>(order.size());
    for (int k = 1; k <= total; ++k) {
        const Gate& g = dag.gate(order[static_cast<size_t>(k - 1)]);
        hm.accumulate(g.qubits[0], g.qubits[1], time_weight(k, total, phi));
    }
    return hm;
}

Mapping::Mapping(int num_logical, int num_physical)
    : log_to_phys_(static_cast<size_t>(num_logical), -1),
      phys_to_log_(static_cast<size_t>(num_physical), -1) {
    if (num_logical > num_physical) {
        throw std::invalid_argument("more logical qubits than physical qubits");
    }
}

void Mapping::assign(int logical, int physical) {
    if (log_to_phys_.at(static_cast<size_t>(logical)) >= 0) {
        throw std::logic_error("logical qubit already assigned");
    }
    if (phys_to_log_.at(static_cast<size_t>(physical)) >= 0) {
        throw std::logic_error("physical qubit already occupied");
    }
    log_to_phys_[static_cast<size_t>(logical)] = physical;
    phys_to_log_[static_cast<size_t>(physical)] = logical;
}

void Mapping::unassign(int logical) {
    const int p = log_to_phys_.at(static_cast<size_t>(logical));
    if (p < 0) return;
    log_to_phys_[static_cast<size_t>(logical)] = -1;
    phys_to_log_[static_cast<size_t>(p)] = -1;
}

bool Mapping::is_complete() const {
    return std::all_of(log_to_phys_.begin(), log_to_phys_.end(), [](int p) { return p >= 0; });
}

void Mapping::swap_physical(int pa, int pb) {
    const int la = phys_to_log_.at(static_cast<size_t>(pa));
    const int lb = phys_to_log_.at(static_cast<size_t>(pb));
    if (la >= 0) log_to_phys_[static_cast<size_t>(la)] = pb;
    if (lb >= 0) log_to_phys_[static_cast<size_t>(lb)] = pa;
    std::swap(phys_to_log_[static_cast<size_t>(pa)], phys_to_log_[static_cast<size_t>(pb)]);
}

double global_cost(const Heatmap& hm, const RoutingCostTable& costs, const Mapping& m) {
    double total = 0.0;
    for (const auto& [i, j] : hm.active_pairs()) {
        total += hm.at(i, j) * costs.cost(m.physical(i), m.physical(j));
    }
    return total;
}

namespace {

/// Interaction-weight contribution of one logical qubit under a hypothetical
/// physical position; used for incremental cost deltas during refinement.
double attachment_cost(const Heatmap& hm, const RoutingCostTable& costs, const Mapping& m,
                       int logical, int at_physical, int ignore_logical = -1) {
    double sum = 0.0;
    for (int j = 0; j < hm.num_logical(); ++j) {
        if (j == logical || j == ignore_logical) continue;
        const double w = hm.at(logical, j);
        if (w > 0.0) sum += w * costs.cost(at_physical, m.physical(j));
    }
    return sum;
}

}  // namespace

Mapping greedy_assign(const Heatmap& hm, const RoutingCostTable& costs,
                      const Partition& partition, const DeviceModel& dev) {
    const int n_logical = hm.num_logical();
    if (static_cast<int>(partition.members.size()) < n_logical) {
        throw std::invalid_argument("partition smaller than the circuit width");
    }
    Mapping m(n_logical, dev.num_qubits());

    // Hottest logical pairs first; ties fall back to index order.
    auto logical_pairs = hm.active_pairs();
    std::stable_sort(logical_pairs.begin(), logical_pairs.end(),
                     [&](const auto& a, const auto& b) {
                         return hm.at(a.first, a.second) > hm.at(b.first, b.second);
                     });

    // Cheapest physical pairs first (all pairs inside the partition, not
    // just coupled ones: a distant pair is simply expensive).
    std::vector<std::pair<int, int>> physical_pairs;
    for (size_t i = 0; i < partition.members.size(); ++i) {
        for (size_t j = i + 1; j < partition.members.size(); ++j) {
            physical_pairs.emplace_back(partition.members[i], partition.members[j]);
        }
    }
    std::stable_sort(physical_pairs.begin(), physical_pairs.end(),
                     [&](const auto& a, const auto& b) {
                         return costs.cost(a.first, a.second) < costs.cost(b.first, b.second);
                     });

    // Mean routing cost to the rest of the partition decides which endpoint
    // of a pair is "better"; the endpoint hosting the heavier logical qubit.
    std::vector<double> mean_cost(static_cast<size_t>(dev.num_qubits()), 0.0);
    for (int p : partition.members) {
        double sum = 0.0;
        for (int q : partition.members) {
            if (q != p) sum += costs.cost(p, q);
        }
        mean_cost[static_cast<size_t>(p)] =
            partition.members.size() > 1
                ? sum / static_cast<double>(partition.members.size() - 1)
                : 0.0;
    }

    auto place_near = [&](int logical, int anchor_physical) {
        int best = -1;
        double best_cost = 0.0;
        for (int p : partition.members) {
            if (m.logical_at(p) >= 0) continue;
            const double c = costs.cost(anchor_physical, p);
            if (best < 0 || c < best_cost) {
                best = p;
                best_cost = c;
            }
        }
        if (best < 0) throw std::logic_error("no free partition qubit left");
        m.assign(logical, best);
    };

    for (const auto& [qi, qj] : logical_pairs) {
        const bool pi = m.is_assigned(qi);
        const bool pj = m.is_assigned(qj);
        if (pi && pj) continue;
        if (pi != pj) {
            place_near(pi ? qj : qi, m.physical(pi ? qi : qj));
            continue;
        }
        // Both free: first fully-free physical pair in cost order.
        for (const auto& [pa, pb] : physical_pairs) {
            if (m.logical_at(pa) >= 0 || m.logical_at(pb) >= 0) continue;
            const bool qi_heavier = hm.row_sum(qi) >= hm.row_sum(qj);
            const bool pa_better = mean_cost[static_cast<size_t>(pa)] <=
                                   mean_cost[static_cast<size_t>(pb)];
            const int heavy = qi_heavier ? qi : qj;
            const int light = qi_heavier ? qj : qi;
            m.assign(heavy, pa_better ? pa : pb);
            m.assign(light, pa_better ? pb : pa);
            break;
        }
        if (!m.is_assigned(qi)) throw std::logic_error("no free physical pair left");
    }

    // Leftover logical qubits (no two-qubit interactions) take the remaining
    // partition qubits in descending T2 order.
    std::vector<int> free_physical;
    for (int p : partition.members) {
        if (m.logical_at(p) < 0) free_physical.push_back(p);
    }
    std::stable_sort(free_physical.begin(), free_physical.end(), [&](int a, int b) {
        return dev.qubit(a).t2_us > dev.qubit(b).t2_us;
    });
    size_t next = 0;
    for (int q = 0; q < n_logical; ++q) {
        if (!m.is_assigned(q)) m.assign(q, free_physical.at(next++));
    }
    return m;
}

Mapping refine_mapping(Mapping m, const Heatmap& hm, const RoutingCostTable& costs,
                       const Partition& partition, int budget) {
    if (!m.is_complete()) throw std::invalid_argument("refinement needs a complete mapping");
    const int n_logical = m.num_logical();
    int accepted = 0;
    bool improved = true;
    while (improved && accepted < budget) {
        improved = false;
        // Exchange the physical hosts of two logical qubits.
        for (int a = 0; a < n_logical && !improved; ++a) {
            for (int b = a + 1; b < n_logical; ++b) {
                const int pa = m.physical(a);
                const int pb = m.physical(b);
                const double before = attachment_cost(hm, costs, m, a, pa, b) +
                                      attachment_cost(hm, costs, m, b, pb, a) +
                                      2.0 * hm.at(a, b) * costs.cost(pa, pb);
                const double after = attachment_cost(hm, costs, m, a, pb, b) +
                                     attachment_cost(hm, costs, m, b, pa, a) +
                                     2.0 * hm.at(a, b) * costs.cost(pb, pa);
                if (after < before) {
                    m.swap_physical(pa, pb);
                    ++accepted;
                    improved = true;
                    break;
                }
            }
        }
        if (improved) continue;
        // Move one logical qubit onto an unused partition qubit.
        for (int a = 0; a < n_logical && !improved; ++a) {
            const int pa = m.physical(a);
            for (int p : partition.members) {
                if (m.logical_at(p) >= 0) continue;
                const double before = attachment_cost(hm, costs, m, a, pa);
                const double after = attachment_cost(hm, costs, m, a, p);
                if (after < before) {
                    m.swap_physical(pa, p);
                    ++accepted;
                    improved = true;
                    break;
                }
            }
        }
    }
    return m;
}

Mapping initial_mapping(const Circuit& c, const CircuitDag& dag, const DeviceModel& dev,
                        const Partition& partition, const RoutingCostTable& costs, double phi,
                        int refine_budget) {
    if (c.num_qubits() > static_cast<int>(partition.members.size())) {
        throw std::invalid_argument("circuit width exceeds the partition size");
    }
    const Heatmap hm = build_heatmap(dag, phi);
    Mapping m = greedy_assign(hm, costs, partition, dev);
    const int budget =
        refine_budget >= 0 ? refine_budget : 10 * c.num_qubits() * c.num_qubits();
    return refine_mapping(std::move(m), hm, costs, partition, budget);
}

}  // namespace tram
