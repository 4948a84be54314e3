#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <tuple>
#include <vector>

#include "tangles/errors.hpp"
#include "tangles/mixture.hpp"
#include "tangles/regions.hpp"
#include "tangles/weight.hpp"

namespace tangles {

// Data-derived similarity graph on vertices 0..n-1.  Kernel graphs are
// complete by construction and use a dense symmetric matrix; delta graphs
// and hand-built test graphs use sorted adjacency lists.
class WeightedGraph {
public:
    static WeightedGraph sparse(int n) {
        WeightedGraph g;
        g.n_ = n;
        g.adj_.resize(static_cast<size_t>(n));
        return g;
    }

    static WeightedGraph dense(int n) {
        WeightedGraph g;
        g.n_ = n;
        g.dense_ = true;
        g.matrix_.assign(static_cast<size_t>(n) * n, 0.0);
        return g;
    }

    int n() const { return n_; }
    bool is_dense() const { return dense_; }

    void add_edge(int i, int j, double w) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::invalid_argument("add_edge: self-loop");
        if (!(w > 0.0)) throw std::invalid_argument("add_edge: weight must be positive");
        if (dense_) {
            matrix_[static_cast<size_t>(i) * n_ + j] = w;
            matrix_[static_cast<size_t>(j) * n_ + i] = w;
        } else {
            adj_[i].push_back({j, w});
            adj_[j].push_back({i, w});
            sorted_ = false;
        }
    }

    double weight(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        if (i == j) return 0.0;
        if (dense_) return matrix_[static_cast<size_t>(i) * n_ + j];
        for (const auto& [k, w] : adj_[i])
            if (k == j) return w;
        return 0.0;
    }

    bool has_edge(int i, int j) const { return weight(i, j) > 0.0; }

    struct Edge {
        int i, j;
        double w;
    };

    // Edges with i < j, in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        if (dense_) {
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) {
                    const double w = matrix_[static_cast<size_t>(i) * n_ + j];
                    if (w > 0.0) out.push_back({i, j, w});
                }
        } else {
            for (int i = 0; i < n_; ++i)
                for (const auto& [j, w] : adj_[i])
                    if (j > i) out.push_back({i, j, w});
            std::sort(out.begin(), out.end(),
                      [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
        }
        return out;
    }

    const std::vector<std::pair<int, double>>& neighbors(int i) const {
        if (dense_) throw std::logic_error("neighbors: dense graph");
        return adj_[i];
    }

    void finalize() {
        if (dense_ || sorted_) return;
        for (auto& lst : adj_) std::sort(lst.begin(), lst.end());
        sorted_ = true;
    }

    void check_vertex(int i) const {
        if (i < 0 || i >= n_) throw InvalidIndex("vertex index out of range");
    }

private:
    int n_ = 0;
    bool dense_ = false;
    bool sorted_ = false;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> matrix_;
};

// Delta model: unit edge iff distance <= delta (exact IEEE comparison, no
// epsilon: ties have probability zero under the data model).  Kernel model:
// all pairs, weight exp(-dist^2 / 2c^2).
inline WeightedGraph build_graph(const Dataset& data, const WeightModel& model) {
    const int n = static_cast<int>(data.n);
    if (model.kind == WeightModel::Kind::DeltaNeighborhood) {
        WeightedGraph g = WeightedGraph::sparse(n);
        const double d2 = model.parameter * model.parameter;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (dist_sq(data.point(i), data.point(j), data.d) <= d2) g.add_edge(i, j, 1.0);
        g.finalize();
        return g;
    }
    WeightedGraph g = WeightedGraph::dense(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(i, j, model.weight_sq(dist_sq(data.point(i), data.point(j), data.d)));
    return g;
}

// V_A: indices of the data points lying in the region.
inline std::vector<int> vertices_in(const Dataset& data, const Region& region) {
    if (region.dim != data.d) throw DimensionMismatch("vertices_in: dimension mismatch");
    std::vector<int> out;
    for (long long i = 0; i < data.n; ++i)
        if (region.contains(data.point(i))) out.push_back(static_cast<int>(i));
    return out;
}

namespace detail {

inline std::vector<char> index_mask(const WeightedGraph& g, const std::vector<int>& s) {
    std::vector<char> mask(static_cast<size_t>(g.n()), 0);
    for (int i : s) {
        g.check_vertex(i);
        mask[static_cast<size_t>(i)] = 1;
    }
    return mask;
}

}  // namespace detail

// kappa_G(S): total weight of edges with exactly one endpoint in S.
inline double edge_connectivity(const WeightedGraph& g, const std::vector<char>& mask) {
    double total = 0.0;
    if (g.is_dense()) {
        for (int i = 0; i < g.n(); ++i) {
            if (!mask[i]) continue;
            for (int j = 0; j < g.n(); ++j)
                if (!mask[j]) total += g.weight(i, j);
        }
        return total;
    }
    for (int i = 0; i < g.n(); ++i) {
        if (!mask[i]) continue;
        for (const auto& [j, w] : g.neighbors(i))
            if (!mask[j]) total += w;
    }
    return total;
}

inline double edge_connectivity(const WeightedGraph& g, const std::vector<int>& s) {
    return edge_connectivity(g, detail::index_mask(g, s));
}

// Bitmask variant for exhaustive enumeration (n <= 20).
inline double edge_connectivity_bits(const std::vector<WeightedGraph::Edge>& edges,
                                     uint32_t mask) {
    double total = 0.0;
    for (const auto& e : edges)
        if (((mask >> e.i) & 1u) != ((mask >> e.j) & 1u)) total += e.w;
    return total;
}

inline bool is_clique(const WeightedGraph& g, const std::vector<int>& w) {
    for (size_t a = 0; a < w.size(); ++a)
        for (size_t b = a + 1; b < w.size(); ++b)
            if (!g.has_edge(w[a], w[b])) return false;
    return true;
}

// w_W: minimum edge weight inside W, or 1 when W spans no edge.
inline double min_clique_weight(const WeightedGraph& g, const std::vector<int>& w) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < w.size(); ++a)
        for (size_t b = a + 1; b < w.size(); ++b) {
            const double wt = g.weight(w[a], w[b]);
            if (wt > 0.0) m = std::min(m, wt);
        }
    return std::isfinite(m) ? m : 1.0;
}

struct CliqueTangleTest {
    bool is_tangle_nonempty = false;
    bool contains_S = false;
    double order = 0.0;
};

// Evaluates the clique-tangle membership inequalities for the cut S:
// order (2/9)|W|^2 w_W, majority |S/\W| > |W\S|, and kappa(S) < order.
inline CliqueTangleTest clique_tangle_test(const WeightedGraph& g, const std::vector<int>& w,
                                           const std::vector<int>& s) {
    if (!is_clique(g, w)) throw NonCliqueError("clique_tangle_test: W does not induce a clique");
    CliqueTangleTest out;
    const double ww = min_clique_weight(g, w);
    const double size = static_cast<double>(w.size());
    out.order = 2.0 / 9.0 * size * size * ww;
    out.is_tangle_nonempty = w.size() >= 2;
    const auto mask = detail::index_mask(g, s);
    long long in_s = 0;
    for (int v : w)
        if (mask[static_cast<size_t>(v)]) ++in_s;
    const long long out_s = static_cast<long long>(w.size()) - in_s;
    out.contains_S = edge_connectivity(g, mask) < out.order && in_s > out_s;
    return out;
}

// Debug dump: one "i j weight" line per edge.
inline void dump_edge_list(const WeightedGraph& g, std::ostream& os) {
    for (const auto& e : g.edges()) os << e.i << ' ' << e.j << ' ' << e.w << '\n';
}

}  // namespace tangles
