#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangles/graph.hpp"

namespace tangles {

// Brute-force ground truth on tiny graphs: explicit separation families over
// subsets of [n] encoded as bitmasks, checked against the tangle axioms by
// exhaustive enumeration.  Hard cap n <= 20.

inline constexpr int kOracleMaxVertices = 20;

struct TangleFamily {
    int n = 0;
    double order = 0.0;
    std::vector<uint32_t> members;  // ascending bitmask order

    bool contains(uint32_t mask) const {
        return std::binary_search(members.begin(), members.end(), mask);
    }
    uint32_t universe() const { return n == 32 ? ~0u : (1u << n) - 1u; }
};

namespace detail {

inline void check_oracle_cap(int n) {
    if (n > kOracleMaxVertices)
        throw EnumerationCapExceeded("tangle oracle: n = " + std::to_string(n) +
                                     " exceeds the 2^n enumeration cap of " +
                                     std::to_string(kOracleMaxVertices));
}

}  // namespace detail

// All S with kappa(S) < k, both orientations, ascending bitmask order.
inline std::vector<uint32_t> low_order_separations(const WeightedGraph& g, double k) {
    detail::check_oracle_cap(g.n());
    const auto edges = g.edges();
    std::vector<uint32_t> out;
    const uint32_t full = g.n() == 0 ? 0u : (1u << g.n());
    for (uint32_t mask = 0; mask < full; ++mask)
        if (edge_connectivity_bits(edges, mask) < k) out.push_back(mask);
    return out;
}

struct AxiomCheck {
    bool pass = true;
    std::string axiom;                  // "T.0" .. "T.3" when violated
    std::vector<uint32_t> witnesses;    // offending set(s)

    explicit operator bool() const { return pass; }
};

// Checks T.0 (members below order), T.1 (every low-order separation oriented
// exactly one way), T.2 (every member triple intersects) and T.3 (no
// singleton member); returns the first violation in that order.
inline AxiomCheck verify_tangle_axioms(const WeightedGraph& g, const TangleFamily& family) {
    detail::check_oracle_cap(g.n());
    const auto edges = g.edges();
    AxiomCheck out;

    for (uint32_t m : family.members) {
        if (!(edge_connectivity_bits(edges, m) < family.order)) {
            out.pass = false;
            out.axiom = "T.0";
            out.witnesses = {m};
            return out;
        }
    }

    const uint32_t universe = family.universe();
    const uint32_t total = g.n() == 0 ? 0u : (1u << g.n());
    for (uint32_t mask = 0; mask < total; ++mask) {
        if (!(edge_connectivity_bits(edges, mask) < family.order)) continue;
        const bool has = family.contains(mask);
        const bool has_compl = family.contains(universe & ~mask);
        if (has == has_compl) {  // neither oriented, or both
            out.pass = false;
            out.axiom = "T.1";
            out.witnesses = {mask};
            return out;
        }
    }

    // T.2 on the inclusion-minimal members: a triple of members always
    // contains a triple of minimal members with a subset intersection.
    std::vector<uint32_t> minimal;
    for (uint32_t m : family.members) {
        bool is_min = true;
        for (uint32_t other : minimal)
            if ((other & m) == other && other != m) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(m);
    }
    for (size_t i = 0; i < minimal.size(); ++i)
        for (size_t j = i; j < minimal.size(); ++j) {
            const uint32_t ij = minimal[i] & minimal[j];
            for (size_t l = j; l < minimal.size(); ++l)
                if ((ij & minimal[l]) == 0u) {
                    out.pass = false;
                    out.axiom = "T.2";
                    out.witnesses = {minimal[i], minimal[j], minimal[l]};
                    return out;
                }
        }

    for (uint32_t m : family.members)
        if (std::popcount(m) == 1) {
            out.pass = false;
            out.axiom = "T.3";
            out.witnesses = {m};
            return out;
        }
    return out;
}

// The explicit family T_G(W) = {S : kappa(S) < (2/9)|W|^2 w_W and
// |S/\W| > |W\S|}, with its order.
inline TangleFamily materialize_clique_tangle(const WeightedGraph& g, const std::vector<int>& w) {
    detail::check_oracle_cap(g.n());
    if (w.size() < 2) throw std::invalid_argument("materialize_clique_tangle: |W| must be >= 2");
    if (!is_clique(g, w))
        throw NonCliqueError("materialize_clique_tangle: W does not induce a clique");
    const auto edges = g.edges();
    const double ww = min_clique_weight(g, w);
    const double size = static_cast<double>(w.size());

    TangleFamily family;
    family.n = g.n();
    family.order = 2.0 / 9.0 * size * size * ww;

    uint32_t wmask = 0;
    for (int v : w) {
        g.check_vertex(v);
        wmask |= 1u << v;
    }
    const int wsize = static_cast<int>(w.size());
    const uint32_t total = g.n() == 0 ? 0u : (1u << g.n());
    for (uint32_t mask = 0; mask < total; ++mask) {
        const int in_w = std::popcount(mask & wmask);
        if (2 * in_w <= wsize) continue;
        if (edge_connectivity_bits(edges, mask) < family.order) family.members.push_back(mask);
    }
    return family;
}

struct IncomparabilityResult {
    bool incomparable = false;
    uint32_t witness = 0;  // S in T1 with complement in T2, lowest bitmask
};

inline IncomparabilityResult incomparable(const TangleFamily& t1, const TangleFamily& t2) {
    if (t1.n != t2.n) throw DimensionMismatch("incomparable: families on different universes");
    const uint32_t universe = t1.universe();
    for (uint32_t m : t1.members)
        if (t2.contains(universe & ~m)) return {true, m};
    return {false, 0};
}

}  // namespace tangles
