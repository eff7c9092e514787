#include "bmera/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmera {

std::string to_string(GateMode m) {
    switch (m) {
        case GateMode::Identity: return "identity";
        case GateMode::RandomHaar: return "random_haar";
        case GateMode::RandomGaussian: return "random_gaussian";
        case GateMode::Explicit: return "explicit";
    }
    throw std::logic_error("unreachable");
}

GateMode gate_mode_from_string(const std::string& s) {
    if (s == "identity") return GateMode::Identity;
    if (s == "random_haar") return GateMode::RandomHaar;
    if (s == "random_gaussian") return GateMode::RandomGaussian;
    if (s == "explicit") return GateMode::Explicit;
    throw std::invalid_argument("unknown gate_mode: " + s);
}

int CircuitSpec::side() const { return 1 << T; }

int CircuitSpec::n_sites() const {
    return dim == 1 ? (1 << T) : (1 << (2 * T));
}

void CircuitSpec::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("spec: dim must be 1 or 2");
    if (T < 1 || T > 14) throw std::invalid_argument("spec: T out of range");
    if (chi < 2) throw std::invalid_argument("spec: chi must be >= 2");
    if (static_cast<int>(tree.size()) != T)
        throw std::invalid_argument("spec: tree must have exactly T entries");
    const int max_bf = dim == 1 ? 2 : 4;
    for (int f : tree)
        if (f < 1 || f > max_bf)
            throw std::invalid_argument("spec: branch factor outside the legal set");
    if (dim == 2 && gate_mode != GateMode::RandomGaussian && gate_mode != GateMode::Identity)
        throw std::invalid_argument("spec: 2D circuits exist on the Gaussian path only");
}

nlohmann::json CircuitSpec::to_json() const {
    return nlohmann::json{{"dim", dim},       {"T", T},
                          {"chi", chi},       {"tree", tree},
                          {"gate_mode", to_string(gate_mode)},
                          {"uniform", uniform}, {"seed", seed}};
}

CircuitSpec CircuitSpec::from_json(const nlohmann::json& j) {
    static const std::vector<std::string> keys = {"dim", "T", "chi", "tree",
                                                  "gate_mode", "uniform", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
            throw std::invalid_argument("spec json: unknown key '" + it.key() + "'");
    }
    for (const auto& k : keys)
        if (!j.contains(k)) throw std::invalid_argument("spec json: missing key '" + k + "'");
    CircuitSpec s;
    s.dim = j.at("dim").get<int>();
    s.T = j.at("T").get<int>();
    s.chi = j.at("chi").get<int>();
    s.tree = j.at("tree").get<std::vector<int>>();
    s.gate_mode = gate_mode_from_string(j.at("gate_mode").get<std::string>());
    s.uniform = j.at("uniform").get<bool>();
    s.seed = j.at("seed").get<uint64_t>();
    s.validate();
    return s;
}

int branch_offset_1d(const std::string& path) {
    int v = 0;
    for (size_t j = 0; j < path.size(); ++j)
        if (path[j] == 'B') v |= 1 << j;
    return v;
}

std::vector<std::string> live_addresses(const CircuitSpec& spec, int level) {
    const int k = spec.T - level;
    if (k < 0) throw std::invalid_argument("live_addresses: level above T");
    const char* letters = spec.dim == 1 ? "AB" : "0123";
    std::vector<std::string> paths = {""};
    for (int j = 1; j <= k; ++j) {
        const int step = spec.T - j;
        const int nf = spec.tree[step];
        std::vector<std::string> next;
        next.reserve(paths.size() * nf);
        for (const auto& p : paths)
            for (int c = 0; c < nf; ++c) next.push_back(p + letters[c]);
        paths = std::move(next);
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

StepLayout step_layout(int t) {
    if (t < 0) throw std::invalid_argument("step_layout: negative level");
    const int m = 1 << t;
    StepLayout s;
    s.level = t;
    s.merged_size = 2 * m;
    s.interleave_map.resize(2 * m);
    for (int i = 0; i < m; ++i) {
        s.interleave_map[i] = 2 * i;          // branch A
        s.interleave_map[m + i] = 2 * i + 1;  // branch B
    }
    for (int i = 0; i < m; ++i) s.layer1.emplace_back(2 * i, 2 * i + 1);
    if (t >= 1)
        for (int i = 0; i < m; ++i)
            s.layer2.emplace_back(2 * i + 1, (2 * i + 2) % (2 * m));
    return s;
}

void for_each_placement_1d(
    const CircuitSpec& spec,
    const std::function<void(int, const std::string&, int, int, int, int)>& fn) {
    for (int t = 0; t < spec.T; ++t) {
        const StepLayout layout = step_layout(t);
        for (const std::string& q : live_addresses(spec, t + 1)) {
            const int stride = 1 << q.size();
            const int off = branch_offset_1d(q);
            auto wire = [&](int p) { return p * stride + off; };
            for (int i = 0; i < static_cast<int>(layout.layer1.size()); ++i)
                fn(t, q, 1, i, wire(layout.layer1[i].first), wire(layout.layer1[i].second));
            for (int i = 0; i < static_cast<int>(layout.layer2.size()); ++i)
                fn(t, q, 2, i, wire(layout.layer2[i].first), wire(layout.layer2[i].second));
        }
    }
}

int64_t placement_count_1d(const CircuitSpec& spec) {
    int64_t count = 0;
    for (int t = 0; t < spec.T; ++t) {
        int64_t parents = 1;
        for (int s = t + 1; s < spec.T; ++s) parents *= spec.tree[s];
        const int64_t per_merge = (t == 0) ? 1 : 2LL << t;  // m + m, layer 2 absent at t=0
        count += parents * per_merge;
    }
    return count;
}

const UnitaryGate& BranchingCircuit::gate(int level, const std::string& branch,
                                          int layer, int position) const {
    GateKey key = spec_.uniform ? GateKey{level, "", layer, 0}
                                : GateKey{level, branch, layer, position};
    auto it = gates_.find(key);
    if (it == gates_.end())
        throw std::invalid_argument("circuit: no gate stored for requested placement");
    return it->second;
}

namespace {

BranchingCircuit build_impl(const CircuitSpec& spec,
                            const std::map<GateKey, UnitaryGate>* supplied) {
    spec.validate();
    if (spec.dim != 1)
        throw std::invalid_argument("build_circuit: dense circuits are 1D only");
    if (spec.gate_mode == GateMode::RandomGaussian)
        throw std::invalid_argument(
            "build_circuit: random_gaussian gates live on the Gaussian path");
    if (spec.gate_mode == GateMode::Explicit && supplied == nullptr)
        throw std::invalid_argument("build_circuit: explicit mode needs a gate table");

    const int d = spec.chi * spec.chi;
    Rng rng(spec.seed);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

    std::map<GateKey, UnitaryGate> gates;
    auto emit = [&](const GateKey& key) {
        if (gates.count(key)) return;
        switch (spec.gate_mode) {
            case GateMode::Identity:
                gates.emplace(key, UnitaryGate{2, id});
                break;
            case GateMode::RandomHaar:
                gates.emplace(key, UnitaryGate{2, haar_unitary(d, rng)});
                break;
            case GateMode::Explicit: {
                auto it = supplied->find(key);
                if (it == supplied->end())
                    throw std::invalid_argument("build_circuit: missing explicit gate");
                if (unitarity_error(it->second.matrix) > 1e-12)
                    throw std::invalid_argument("build_circuit: supplied gate not unitary");
                gates.emplace(key, it->second);
                break;
            }
            case GateMode::RandomGaussian:
                throw std::logic_error("unreachable");
        }
    };

    if (spec.uniform) {
        for (int t = 0; t < spec.T; ++t) {
            emit(GateKey{t, "", 1, 0});
            if (t >= 1) emit(GateKey{t, "", 2, 0});
        }
    } else {
        for_each_placement_1d(spec, [&](int t, const std::string& q, int layer,
                                        int pos, int, int) {
            emit(GateKey{t, q, layer, pos});
        });
    }
    return BranchingCircuit(spec, std::move(gates));
}

}  // namespace

BranchingCircuit build_circuit(const CircuitSpec& spec) {
    return build_impl(spec, nullptr);
}

BranchingCircuit build_circuit(const CircuitSpec& spec,
                               const std::map<GateKey, UnitaryGate>& supplied) {
    return build_impl(spec, &supplied);
}

int64_t parameter_count(const BranchingCircuit& circuit) {
    const int64_t chi = circuit.spec().chi;
    return circuit.stored_gate_count() * chi * chi * chi * chi;
}

namespace {

// apply a two-wire gate to a chi-ary register of n wires (wire 0 fastest)
void apply_gate_register(std::vector<cplx>& amps, int chi, int n, int w1, int w2,
                         const Eigen::MatrixXcd& u) {
    const int64_t s1 = static_cast<int64_t>(std::pow(chi, w1) + 0.5);
    const int64_t s2 = static_cast<int64_t>(std::pow(chi, w2) + 0.5);
    const int64_t total = amps.size();
    std::vector<cplx> block(chi * chi);
    for (int64_t base = 0; base < total; ++base) {
        // visit each (w1, w2)-block once, at digit-0 representatives
        if ((base / s1) % chi != 0 || (base / s2) % chi != 0) continue;
        for (int a = 0; a < chi; ++a)
            for (int b = 0; b < chi; ++b) block[a * chi + b] = amps[base + a * s1 + b * s2];
        for (int a = 0; a < chi; ++a)
            for (int b = 0; b < chi; ++b) {
                cplx acc(0.0, 0.0);
                for (int c = 0; c < chi; ++c)
                    for (int e = 0; e < chi; ++e)
                        acc += u(a * chi + b, c * chi + e) * block[c * chi + e];
                amps[base + a * s1 + b * s2] = acc;
            }
    }
}

}  // namespace

Eigen::MatrixXcd isometry_view(const BranchingCircuit& circuit, int t) {
    const CircuitSpec& spec = circuit.spec();
    if (t < 0 || t >= spec.T) throw std::invalid_argument("isometry_view: level out of range");
    if (spec.tree[t] != 1)
        throw std::invalid_argument("isometry_view: level is not pruned");
    const int n = 1 << (t + 1);  // merged wires
    double rows_d = std::pow(spec.chi, n);
    if (rows_d > (1 << 16) + 0.5)
        throw std::invalid_argument("isometry_view: merged space too large");
    const int64_t rows = static_cast<int64_t>(rows_d + 0.5);
    const int64_t cols = static_cast<int64_t>(std::pow(spec.chi, n / 2) + 0.5);

    const auto parents = live_addresses(spec, t + 1);
    const std::string& q = parents.front();
    const StepLayout layout = step_layout(t);

    // register wires are the merged ring positions; branch-A input basis
    // state i occupies the even positions
    Eigen::MatrixXcd w(rows, cols);
    for (int64_t col = 0; col < cols; ++col) {
        std::vector<cplx> amps(rows, cplx(0.0, 0.0));
        int64_t idx = 0;
        int64_t rest = col;
        for (int p = 0; p < n / 2; ++p) {  // A digit p lands on merged wire 2p
            const int digit = static_cast<int>(rest % spec.chi);
            rest /= spec.chi;
            idx += digit * static_cast<int64_t>(std::pow(spec.chi, 2 * p) + 0.5);
        }
        amps[idx] = 1.0;
        for (int i = 0; i < static_cast<int>(layout.layer1.size()); ++i)
            apply_gate_register(amps, spec.chi, n, layout.layer1[i].first,
                                layout.layer1[i].second,
                                circuit.gate(t, q, 1, i).matrix);
        for (int i = 0; i < static_cast<int>(layout.layer2.size()); ++i)
            apply_gate_register(amps, spec.chi, n, layout.layer2[i].first,
                                layout.layer2[i].second,
                                circuit.gate(t, q, 2, i).matrix);
        for (int64_t r = 0; r < rows; ++r) w(r, col) = amps[r];
    }

    Eigen::MatrixXcd gram = w.adjoint() * w;
    gram.diagonal().array() -= 1.0;
    if (gram.cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("isometry_view: W^dag W deviates from identity");
    return w;
}

}  // namespace bmera
