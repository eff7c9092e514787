#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bmera/linalg.hpp"

#include <json.hpp>

namespace bmera {

enum class GateMode { Identity, RandomHaar, RandomGaussian, Explicit };

std::string to_string(GateMode m);
GateMode gate_mode_from_string(const std::string& s);

// Full description of a branching circuit instance. In 1D there are
// N = 2^T wires; in 2D (Gaussian path only) a 2^T x 2^T lattice.
struct CircuitSpec {
    int dim = 1;
    int T = 1;
    int chi = 2;
    std::vector<int> tree;  // per-level branch factor, tree[t] for step t
    GateMode gate_mode = GateMode::Identity;
    bool uniform = false;   // share gates across branches and positions
    uint64_t seed = 0;

    int n_sites() const;    // 2^T (1D) or 4^T (2D)
    int side() const;       // 2^T
    void validate() const;  // throws std::invalid_argument

    nlohmann::json to_json() const;
    // strict: exactly the keys {dim, T, chi, tree, gate_mode, uniform, seed}
    static CircuitSpec from_json(const nlohmann::json& j);
};

// Branch labels are strings over {A, B} (1D) or {0..3} (2D); the front
// letter is the choice made at the top split, so letter j (1-based)
// corresponds to step T - j. An instance at level t has a path of length
// T - t.
struct BranchAddress {
    std::string path;
    int level;
};

// Positions the letter contributes to the global wire id: front letter is
// the least significant bit.
int branch_offset_1d(const std::string& path);

// Lexicographically sorted live branch paths at `level` for the given tree.
std::vector<std::string> live_addresses(const CircuitSpec& spec, int level);

// One merge step: two rings of m = 2^t wires interleave into a ring of 2m.
// interleave_map[p] gives the merged position of input p (inputs 0..m-1 are
// branch A, m..2m-1 branch B). Gate positions are 0-based pair indices:
// layer 1 acts on merged (2i, 2i+1), layer 2 on (2i+1, 2i+2 mod 2m).
// Layer 2 is omitted at t = 0 where it would act on the same pair again.
struct StepLayout {
    int level = 0;
    int merged_size = 0;
    std::vector<int> interleave_map;
    std::vector<std::pair<int, int>> layer1;
    std::vector<std::pair<int, int>> layer2;
};

StepLayout step_layout(int t);

struct GateKey {
    int level;
    std::string branch;
    int layer;
    int position;
    auto operator<=>(const GateKey&) const = default;
};

class BranchingCircuit {
  public:
    BranchingCircuit(CircuitSpec spec, std::map<GateKey, UnitaryGate> gates)
        : spec_(std::move(spec)), gates_(std::move(gates)) {}

    const CircuitSpec& spec() const { return spec_; }
    // Resolves through the uniform flag: uniform circuits ignore branch and
    // position, storing one layer-1 and one layer-2 gate per level.
    const UnitaryGate& gate(int level, const std::string& branch, int layer,
                            int position) const;
    bool pruned(int level) const { return spec_.tree[level] == 1; }
    int stored_gate_count() const { return static_cast<int>(gates_.size()); }
    const std::map<GateKey, UnitaryGate>& gates() const { return gates_; }
    std::map<GateKey, UnitaryGate>& mutable_gates() { return gates_; }

  private:
    CircuitSpec spec_;
    std::map<GateKey, UnitaryGate> gates_;
};

// Gates are drawn (or filled with identities) in deterministic enumeration
// order: level ascending, parent branch lexicographic, layer 1 then 2,
// position ascending. Explicit mode takes the caller's table and checks
// that every demanded placement resolves.
BranchingCircuit build_circuit(const CircuitSpec& spec);
BranchingCircuit build_circuit(const CircuitSpec& spec,
                               const std::map<GateKey, UnitaryGate>& supplied);

// Number of two-wire gate placements in the circuit diagram (swaps excluded).
// Full 1D branching gives N*T - N/2.
int64_t placement_count_1d(const CircuitSpec& spec);

// Stored generic gates x chi^4.
int64_t parameter_count(const BranchingCircuit& circuit);

// Visits every 1D placement in enumeration order with its global wire pair.
// fn(level, parent_branch, layer, position, w1, w2).
void for_each_placement_1d(
    const CircuitSpec& spec,
    const std::function<void(int, const std::string&, int, int, int, int)>& fn);

// Effective isometric map W = V(. x |0...0>) of a pruned level as an
// explicit chi^{2^{t+1}} x chi^{2^t} matrix (columns: images of A-input
// basis states). Uses the gates of the lexicographically first live parent
// at level t+1. W^dag W = I is verified before returning.
Eigen::MatrixXcd isometry_view(const BranchingCircuit& circuit, int t);

}  // namespace bmera
