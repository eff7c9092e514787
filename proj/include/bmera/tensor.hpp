#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bmera {

using cplx = std::complex<double>;

enum class LegTag { Ket, Bra };

struct Leg {
    int dim;
    LegTag tag;
    bool operator==(const Leg&) const = default;
};

// Dense complex tensor whose indices are wire legs. Layout is C order:
// the first leg is the slowest index. Every reordering operation records
// the permutation applied through its argument; there is no hidden state.
class WireTensor {
  public:
    WireTensor() = default;
    explicit WireTensor(std::vector<Leg> legs);
    static WireTensor scalar(cplx value);

    int rank() const { return static_cast<int>(legs_.size()); }
    const std::vector<Leg>& legs() const { return legs_; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }
    int64_t size() const { return static_cast<int64_t>(data_.size()); }

    cplx& at(std::span<const int> idx);
    cplx at(std::span<const int> idx) const;

  private:
    std::vector<Leg> legs_;
    std::vector<cplx> data_;
};

// Sum over the paired legs of a and b. Result legs: unpaired legs of a in
// order, then unpaired legs of b. Pairs are (leg index in a, leg index in b).
WireTensor contract(const WireTensor& a, const WireTensor& b,
                    std::span<const std::pair<int, int>> pairs);

// Result leg i is input leg perm[i].
WireTensor permute(const WireTensor& t, std::span<const int> perm);

// Tie two legs of equal dimension together and sum (internal trace).
WireTensor self_trace(const WireTensor& t, int leg_i, int leg_j);

// rho has legs [ket_0 .. ket_{n-1}, bra_0 .. bra_{n-1}]; wire i owns legs
// (i, n+i). Returns the reduced matrix on `keep` (given in ascending order of
// desired output wires), with the same ket/bra layout. Trace is preserved.
WireTensor partial_trace(const WireTensor& rho, int n_wires,
                         std::span<const int> keep);

// Entry-wise complex conjugate; legs keep their order, tags flip Ket<->Bra.
WireTensor conjugate(const WireTensor& t);

}  // namespace bmera
