#include "tram/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tram/log.hpp"

namespace tram {

DeviceModel::DeviceModel(std::string name, int num_qubits,
                         std::vector<CalibrationRecord> qubits, std::vector<EdgeRecord> edges)
    : name_(std::move(name)),
      num_qubits_(num_qubits),
      qubits_(std::move(qubits)),
      edges_(std::move(edges)) {
    if (num_qubits_ <= 0) throw std::invalid_argument("device needs at least one qubit");
    if (static_cast<int>(qubits_.size()) != num_qubits_) {
        throw std::invalid_argument("expected one calibration record per qubit");
    }
    std::vector<char> seen(static_cast<size_t>(num_qubits_), 0);
    for (auto& q : qubits_) {
        if (q.qubit < 0 || q.qubit >= num_qubits_) {
            throw std::invalid_argument("calibration qubit id out of range");
        }
        if (seen[static_cast<size_t>(q.qubit)]++) {
            throw std::invalid_argument("duplicate calibration record for qubit " +
                                        std::to_string(q.qubit));
        }
        if (q.t1_us <= 0 || q.t2_us <= 0) {
            throw std::invalid_argument("T1 and T2 must be positive (qubit " +
                                        std::to_string(q.qubit) + ")");
        }
        if (q.readout_error < 0 || q.readout_error >= 1 || q.single_qubit_error < 0 ||
            q.single_qubit_error >= 1) {
            throw std::invalid_argument("error probabilities must lie in [0,1) (qubit " +
                                        std::to_string(q.qubit) + ")");
        }
        // Physical bound: 1/T2 = 1/(2*T1) + 1/Tphi with Tphi > 0 forces T2 <= 2*T1.
        if (q.t2_us > 2.0 * q.t1_us + 1e-9) {
            warn("qubit " + std::to_string(q.qubit) + " reports T2 > 2*T1 (" +
                 std::to_string(q.t2_us) + " vs " + std::to_string(q.t1_us) +
                 "); clamping T2 to 2*T1");
            q.t2_us = 2.0 * q.t1_us;
        }
    }
    std::sort(qubits_.begin(), qubits_.end(),
              [](const auto& a, const auto& b) { return a.qubit < b.qubit; });

    adj_.resize(static_cast<size_t>(num_qubits_));
    edge_index_.assign(static_cast<size_t>(num_qubits_) * static_cast<size_t>(num_qubits_), -1);
    for (size_t i = 0; i < edges_.size(); ++i) {
        auto& e = edges_[i];
        if (e.q0 == e.q1) throw std::invalid_argument("self-loop edge on qubit " +
                                                      std::to_string(e.q0));
        if (e.q0 < 0 || e.q1 < 0 || e.q0 >= num_qubits_ || e.q1 >= num_qubits_) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (e.q0 > e.q1) std::swap(e.q0, e.q1);
        if (e.two_qubit_error < 0 || e.two_qubit_error >= 1) {
            throw std::invalid_argument("two_qubit_error must lie in [0,1)");
        }
        if (e.gate_duration_ns <= 0) {
            throw std::invalid_argument("gate_duration_ns must be positive");
        }
        auto& slot = edge_index_[static_cast<size_t>(e.q0) * static_cast<size_t>(num_qubits_) +
                                 static_cast<size_t>(e.q1)];
        if (slot != -1) {
            throw std::invalid_argument("duplicate edge " + std::to_string(e.q0) + "-" +
                                        std::to_string(e.q1));
        }
        slot = static_cast<int>(i);
        adj_[static_cast<size_t>(e.q0)].push_back(e.q1);
        adj_[static_cast<size_t>(e.q1)].push_back(e.q0);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    if (!is_connected_graph()) {
        warn("device '" + name_ + "' has a disconnected coupling graph");
    }
}

bool DeviceModel::connected(int a, int b) const {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    return edge_index_[static_cast<size_t>(a) * static_cast<size_t>(num_qubits_) +
                       static_cast<size_t>(b)] >= 0;
}

const EdgeRecord& DeviceModel::edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    const int id = edge_index_.at(static_cast<size_t>(a) * static_cast<size_t>(num_qubits_) +
                                  static_cast<size_t>(b));
    if (id < 0) {
        throw std::invalid_argument("qubits " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are not coupled");
    }
    return edges_[static_cast<size_t>(id)];
}

bool DeviceModel::is_connected_graph() const {
    if (num_qubits_ == 0) return true;
    std::vector<char> seen(static_cast<size_t>(num_qubits_), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj_[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == num_qubits_;
}

double DeviceModel::mean_two_qubit_duration_ns() const {
    if (edges_.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.gate_duration_ns;
    return sum / static_cast<double>(edges_.size());
}

namespace {

DeviceModel device_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("device file: expected a JSON object");
    for (const char* key : {"name", "num_qubits", "qubits", "edges"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("device file: missing field '") + key + "'");
        }
    }
    std::vector<CalibrationRecord> qubits;
    for (const auto& q : j.at("qubits")) {
        CalibrationRecord rec;
        rec.qubit = q.at("id").get<int>();
        rec.t1_us = q.at("t1_us").get<double>();
        rec.t2_us = q.at("t2_us").get<double>();
        rec.readout_error = q.at("readout_error").get<double>();
        rec.single_qubit_error = q.at("single_qubit_error").get<double>();
        qubits.push_back(rec);
    }
    std::vector<EdgeRecord> edges;
    for (const auto& e : j.at("edges")) {
        EdgeRecord rec;
        rec.q0 = e.at("q0").get<int>();
        rec.q1 = e.at("q1").get<int>();
        rec.two_qubit_error = e.at("two_qubit_error").get<double>();
        rec.gate_duration_ns = e.at("gate_duration_ns").get<double>();
        edges.push_back(rec);
    }
    return DeviceModel(j.at("name").get<std::string>(), j.at("num_qubits").get<int>(),
                       std::move(qubits), std::move(edges));
}

}  // namespace

DeviceModel load_device(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open device file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("device file '" + path + "': " + e.what());
    }
    return device_from_json(j);
}

DeviceModel device_from_json_text(const std::string& text) {
    return device_from_json(nlohmann::json::parse(text));
}

std::vector<double> normalize_t2(const DeviceModel& dev, double epsilon) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& q : dev.qubits()) {
        lo = std::min(lo, q.t2_us);
        hi = std::max(hi, q.t2_us);
    }
    if (hi == lo) {
        throw std::invalid_argument(
            "T2 normalization requires at least two distinct T2 values");
    }
    std::vector<double> scores(static_cast<size_t>(dev.num_qubits()));
    for (const auto& q : dev.qubits()) {
        scores[static_cast<size_t>(q.qubit)] = (q.t2_us - lo) / (hi - lo) + epsilon;
    }
    return scores;
}

double edge_weight(const EdgeRecord& e) {
    if (e.two_qubit_error >= 1.0) {
        throw std::invalid_argument("edge weight undefined for error rate >= 1");
    }
    return -std::log1p(-e.two_qubit_error);
}

double swap_weight(const EdgeRecord& e) { return 3.0 * edge_weight(e); }

std::vector<std::vector<double>> err_distance(const DeviceModel& dev) {
    const int n = dev.num_qubits();
    std::vector<double> w(dev.edges().size());
    for (size_t i = 0; i < dev.edges().size(); ++i) w[i] = edge_weight(dev.edges()[i]);

    std::vector<std::vector<double>> dist(
        static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), kUnreachable));
    using Item = std::pair<double, int>;
    for (int src = 0; src < n; ++src) {
        auto& d = dist[static_cast<size_t>(src)];
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        d[static_cast<size_t>(src)] = 0.0;
        pq.emplace(0.0, src);
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (du > d[static_cast<size_t>(u)]) continue;
            for (int v : dev.neighbors(u)) {
                const double cand = du + edge_weight(dev.edge(u, v));
                if (cand < d[static_cast<size_t>(v)]) {
                    d[static_cast<size_t>(v)] = cand;
                    pq.emplace(cand, v);
                }
            }
        }
    }
    // Summation order differs per source, which can leave the two triangles
    // an ulp apart; mirror so the matrix is exactly symmetric.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            dist[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                dist[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return dist;
}

double dwell_penalty(const CalibrationRecord& q, double t_us) {
    if (t_us < 0) throw std::invalid_argument("dwell time must be nonnegative");
    return 1.0 - std::exp(-t_us / q.t2_us);
}

RoutingCostTable::RoutingCostTable(const DeviceModel& dev, double eta, double dwell_time_us)
    : eta_(eta), dwell_time_us_(dwell_time_us), d_err_(err_distance(dev)) {
    if (eta < 0) throw std::invalid_argument("eta must be nonnegative");
    p_.resize(static_cast<size_t>(dev.num_qubits()));
    for (const auto& q : dev.qubits()) {
        p_[static_cast<size_t>(q.qubit)] = dwell_penalty(q, dwell_time_us);
    }
}

double default_dwell_time_us(const DeviceModel& dev) {
    return dev.mean_two_qubit_duration_ns() / 1000.0;
}

int induced_hop_diameter(const DeviceModel& dev, const std::vector<int>& subset) {
    std::vector<int> local(static_cast<size_t>(dev.num_qubits()), -1);
    for (size_t i = 0; i < subset.size(); ++i) local[static_cast<size_t>(subset[i])] =
        static_cast<int>(i);
    const int m = static_cast<int>(subset.size());
    int diameter = 0;
    for (int s = 0; s < m; ++s) {
        std::vector<int> hops(static_cast<size_t>(m), -1);
        std::queue<int> q;
        hops[static_cast<size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : dev.neighbors(subset[static_cast<size_t>(u)])) {
                const int lv = local[static_cast<size_t>(v)];
                if (lv >= 0 && hops[static_cast<size_t>(lv)] < 0) {
                    hops[static_cast<size_t>(lv)] = hops[static_cast<size_t>(u)] + 1;
                    q.push(lv);
                }
            }
        }
        for (int h : hops) diameter = std::max(diameter, h);
    }
    return diameter;
}

}  // namespace tram
