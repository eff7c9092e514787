#include "bmera/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bmera {

namespace {

int64_t total_size(const std::vector<Leg>& legs) {
    int64_t n = 1;
    for (const Leg& l : legs) {
        if (l.dim < 1) throw std::invalid_argument("tensor leg dimension must be >= 1");
        n *= l.dim;
    }
    return n;
}

std::vector<int64_t> strides_of(const std::vector<Leg>& legs) {
    std::vector<int64_t> s(legs.size());
    int64_t acc = 1;
    for (int i = static_cast<int>(legs.size()) - 1; i >= 0; --i) {
        s[i] = acc;
        acc *= legs[i].dim;
    }
    return s;
}

}  // namespace

WireTensor::WireTensor(std::vector<Leg> legs)
    : legs_(std::move(legs)), data_(total_size(legs_), cplx(0.0, 0.0)) {}

WireTensor WireTensor::scalar(cplx value) {
    WireTensor t{std::vector<Leg>{}};
    t.data_[0] = value;
    return t;
}

cplx& WireTensor::at(std::span<const int> idx) {
    const auto s = strides_of(legs_);
    int64_t off = 0;
    for (size_t i = 0; i < s.size(); ++i) off += idx[i] * s[i];
    return data_[off];
}

cplx WireTensor::at(std::span<const int> idx) const {
    return const_cast<WireTensor*>(this)->at(idx);
}

WireTensor permute(const WireTensor& t, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != t.rank())
        throw std::invalid_argument("permute: wrong permutation length");
    std::vector<Leg> out_legs(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) out_legs[i] = t.legs()[perm[i]];
    WireTensor out(out_legs);

    const auto in_strides = strides_of(t.legs());
    const auto out_strides = strides_of(out_legs);
    // stride of output axis i in the input flat array
    std::vector<int64_t> gather(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) gather[i] = in_strides[perm[i]];

    const int r = t.rank();
    std::vector<int> idx(r, 0);
    const auto& src = t.data();
    auto& dst = out.data();
    int64_t in_off = 0;
    for (int64_t o = 0; o < out.size(); ++o) {
        dst[o] = src[in_off];
        for (int ax = r - 1; ax >= 0; --ax) {
            if (++idx[ax] < out_legs[ax].dim) {
                in_off += gather[ax];
                break;
            }
            in_off -= gather[ax] * (out_legs[ax].dim - 1);
            idx[ax] = 0;
        }
    }
    return out;
}

WireTensor contract(const WireTensor& a, const WireTensor& b,
                    std::span<const std::pair<int, int>> pairs) {
    std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
    for (auto [ia, ib] : pairs) {
        if (ia < 0 || ia >= a.rank() || ib < 0 || ib >= b.rank())
            throw std::invalid_argument("contract: leg index out of range");
        if (a_paired[ia] || b_paired[ib])
            throw std::invalid_argument("contract: leg paired twice");
        if (a.legs()[ia].dim != b.legs()[ib].dim)
            throw std::invalid_argument("contract: dimension mismatch on paired legs");
        a_paired[ia] = true;
        b_paired[ib] = true;
    }

    std::vector<int> a_perm, b_perm;
    for (int i = 0; i < a.rank(); ++i)
        if (!a_paired[i]) a_perm.push_back(i);
    int64_t m = 1, k = 1, n = 1;
    for (int i : a_perm) m *= a.legs()[i].dim;
    for (auto [ia, ib] : pairs) {
        a_perm.push_back(ia);
        b_perm.push_back(ib);
        k *= a.legs()[ia].dim;
    }
    std::vector<int> b_free;
    for (int i = 0; i < b.rank(); ++i)
        if (!b_paired[i]) b_free.push_back(i);
    for (int i : b_free) {
        b_perm.push_back(i);
        n *= b.legs()[i].dim;
    }

    WireTensor ap = permute(a, a_perm);
    WireTensor bp = permute(b, b_perm);

    std::vector<Leg> out_legs;
    for (int i = 0; i < static_cast<int>(a_perm.size()) - static_cast<int>(pairs.size()); ++i)
        out_legs.push_back(ap.legs()[i]);
    for (int i : b_free) out_legs.push_back(b.legs()[i]);
    WireTensor out(out_legs);

    // row-major data: map as (m x k) * (k x n)
    using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const Mat> ma(ap.data().data(), m, k);
    Eigen::Map<const Mat> mb(bp.data().data(), k, n);
    Eigen::Map<Mat> mo(out.data().data(), m, n);
    mo.noalias() = ma * mb;
    return out;
}

WireTensor self_trace(const WireTensor& t, int leg_i, int leg_j) {
    if (leg_i == leg_j || leg_i < 0 || leg_j < 0 || leg_i >= t.rank() || leg_j >= t.rank())
        throw std::invalid_argument("self_trace: bad leg indices");
    if (t.legs()[leg_i].dim != t.legs()[leg_j].dim)
        throw std::invalid_argument("self_trace: dimension mismatch");
    // permute traced legs to the back and sum the diagonal blocks
    std::vector<int> perm;
    for (int i = 0; i < t.rank(); ++i)
        if (i != leg_i && i != leg_j) perm.push_back(i);
    perm.push_back(leg_i);
    perm.push_back(leg_j);
    WireTensor tp = permute(t, perm);

    std::vector<Leg> out_legs(tp.legs().begin(), tp.legs().end() - 2);
    WireTensor out(out_legs);
    const int d = t.legs()[leg_i].dim;
    const auto& src = tp.data();
    auto& dst = out.data();
    for (int64_t o = 0; o < out.size(); ++o) {
        cplx acc(0.0, 0.0);
        const int64_t base = o * d * d;
        for (int x = 0; x < d; ++x) acc += src[base + x * d + x];
        dst[o] = acc;
    }
    return out;
}

WireTensor partial_trace(const WireTensor& rho, int n_wires,
                         std::span<const int> keep) {
    if (rho.rank() != 2 * n_wires)
        throw std::invalid_argument("partial_trace: rho must have 2*n_wires legs");
    for (int i = 0; i < n_wires; ++i)
        if (rho.legs()[i].dim != rho.legs()[n_wires + i].dim)
            throw std::invalid_argument("partial_trace: unmatched bra/ket pair");
    std::vector<bool> kept(n_wires, false);
    for (int w : keep) {
        if (w < 0 || w >= n_wires)
            throw std::invalid_argument("partial_trace: keep set not a subset of wires");
        if (kept[w]) throw std::invalid_argument("partial_trace: duplicate wire in keep");
        kept[w] = true;
    }

    WireTensor out = rho;
    int traced_before = 0;
    for (int w = 0; w < n_wires; ++w) {
        if (kept[w]) continue;
        const int cur_wires = n_wires - traced_before;
        const int wk = w - traced_before;  // current position of wire w
        out = self_trace(out, wk, cur_wires + wk);
        ++traced_before;
    }

    // reorder the surviving wires (currently ascending) to match `keep`
    std::vector<int> ascending;
    for (int w = 0; w < n_wires; ++w)
        if (kept[w]) ascending.push_back(w);
    const int nk = static_cast<int>(keep.size());
    std::vector<int> perm(2 * nk);
    for (int i = 0; i < nk; ++i) {
        const auto pos = std::find(ascending.begin(), ascending.end(), keep[i]) - ascending.begin();
        perm[i] = static_cast<int>(pos);
        perm[nk + i] = static_cast<int>(nk + pos);
    }
    return permute(out, perm);
}

WireTensor conjugate(const WireTensor& t) {
    std::vector<Leg> legs = t.legs();
    for (Leg& l : legs) l.tag = (l.tag == LegTag::Ket) ? LegTag::Bra : LegTag::Ket;
    WireTensor out(legs);
    for (int64_t i = 0; i < t.size(); ++i) out.data()[i] = std::conj(t.data()[i]);
    return out;
}

}  // namespace bmera
