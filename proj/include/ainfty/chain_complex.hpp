// Chain complexes indexed by homological degree, homology by exact ranks.
#pragma once

#include <map>
#include <optional>

#include "ainfty/graded_space.hpp"

namespace ainfty {

/// Degrees [lo, hi] in which truncation provably does not alter homology.
struct CertifiedRange {
    int lo{0};
    int hi{-1}; // empty when hi < lo
    bool contains(int n) const { return lo <= n && n <= hi; }
    bool empty() const { return hi < lo; }
};

/// d_n : C_n -> C_{n-1}; d_n . d_{n+1} = 0 for all stored n (testable).
template <typename K>
struct ChainComplex {
    std::map<int, SpacePtr<K>> components;
    std::map<int, GradedMap<K>> differentials;
    CertifiedRange certified;

    int dim(int n) const
    {
        auto it = components.find(n);
        return it == components.end() ? 0 : it->second->dim();
    }

    const GradedMap<K>* differential(int n) const
    {
        auto it = differentials.find(n);
        return it == differentials.end() ? nullptr : &it->second;
    }

    /// Verifies d^2 = 0; returns the failing degree if any.
    std::optional<int> square_violation() const
    {
        for (const auto& [n, dn] : differentials) {
            auto up = differentials.find(n + 1);
            if (up == differentials.end())
                continue;
            if (!compose(dn, up->second).is_zero_map())
                return n + 1;
        }
        return std::nullopt;
    }

    void require_square_zero() const
    {
        if (auto bad = square_violation())
            throw Error("differential does not square to zero out of degree " +
                        std::to_string(*bad));
    }
};

/// dim H_n = kernel_dim(d_n) - rank(d_{n+1}); reported only inside the
/// certified range.
template <typename K>
std::map<int, int> homology_dims(const ChainComplex<K>& c)
{
    c.require_square_zero();
    std::map<int, int> dims;
    for (const auto& [n, space] : c.components) {
        if (!c.certified.contains(n))
            continue;
        int cycles = space->dim();
        if (const auto* dn = c.differential(n))
            cycles = kernel_dim(*dn);
        int boundaries = 0;
        if (const auto* dup = c.differential(n + 1))
            boundaries = rank(*dup);
        dims[n] = cycles - boundaries;
    }
    return dims;
}

/// Slices a degree -1 endomorphism of one big graded space into a per-degree
/// chain complex. Basis order within each degree follows the space order.
template <typename K>
ChainComplex<K> slice_complex(const SpacePtr<K>& space, const GradedMap<K>& d,
                              CertifiedRange certified)
{
    if (d.degree() != -1)
        throw Error("slice_complex expects a degree -1 differential");
    ChainComplex<K> out;
    out.certified = certified;
    std::map<int, std::vector<int>> by_degree;
    for (int i = 0; i < space->dim(); ++i)
        by_degree[space->degree(i)].push_back(i);
    std::map<int, std::map<int, int>> local; // degree -> global index -> local index
    for (const auto& [n, idxs] : by_degree) {
        std::vector<std::string> names;
        std::vector<int> degrees;
        for (std::size_t k = 0; k < idxs.size(); ++k) {
            names.push_back(space->name(idxs[k]));
            degrees.push_back(n);
            local[n][idxs[k]] = static_cast<int>(k);
        }
        out.components[n] = std::make_shared<GradedSpace<K>>(
            space->label() + "[" + std::to_string(n) + "]", std::move(names), std::move(degrees));
    }
    for (const auto& [n, idxs] : by_degree) {
        auto below = out.components.find(n - 1);
        if (below == out.components.end()) {
            // still must be a valid (zero-target) differential when entries exist
            bool any = false;
            for (int gi : idxs)
                any |= !d.column(gi).empty();
            if (any)
                throw Error("differential leaves the sliced degree range at degree " +
                            std::to_string(n));
            continue;
        }
        GradedMap<K> dn(out.components[n], below->second, -1);
        for (std::size_t k = 0; k < idxs.size(); ++k)
            for (const auto& [j, v] : d.column(idxs[k]))
                dn.add_entry(static_cast<int>(k), local[n - 1].at(j), v);
        out.differentials.emplace(n, std::move(dn));
    }
    return out;
}

} // namespace ainfty
