#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bee/errors.hpp"

namespace bee {

/// Undirected simple graph on n vertices stored as a dense symmetric 0/1
/// matrix with vertex degrees kept in sync.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n) : n_(n), adj_(std::size_t(n) * n, 0), deg_(n, 0) {
        if (n < 1) throw InputError("SimpleGraph: n must be >= 1");
    }

    static SimpleGraph complete(int n) {
        SimpleGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
        return g;
    }

    static SimpleGraph cycle(int n) {
        SimpleGraph g(n);
        for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
        return g;
    }

    int n() const { return n_; }
    std::int64_t pair_count() const { return std::int64_t(n_) * (n_ - 1) / 2; }
    std::int64_t edge_count() const { return edges_; }
    double edge_density() const {
        return n_ < 2 ? 0.0 : double(edges_) / double(pair_count());
    }

    bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }
    int degree(int i) const { return deg_[i]; }
    const std::uint8_t* row(int i) const { return adj_.data() + std::size_t(i) * n_; }

    void add_edge(int i, int j) {
        check_pair(i, j);
        if (!has_edge(i, j)) toggle(i, j);
    }

    void toggle(int i, int j) {
        check_pair(i, j);
        const std::uint8_t v = adj_[idx(i, j)] ^ 1u;
        adj_[idx(i, j)] = v;
        adj_[idx(j, i)] = v;
        const int d = v ? 1 : -1;
        deg_[i] += d;
        deg_[j] += d;
        edges_ += d;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (has_edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    bool operator==(const SimpleGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    std::size_t idx(int i, int j) const { return std::size_t(i) * n_ + j; }
    void check_pair(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
            throw InputError("SimpleGraph: invalid vertex pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") for n=" + std::to_string(n_));
        }
    }

    int n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<int> deg_;
    std::int64_t edges_ = 0;
};

// Plain-text edge list: n on the first line, then one "i j" pair per line,
// 0-based. Text after '#' is ignored, as are blank lines.
inline SimpleGraph read_edge_list(std::istream& in) {
    std::string line;
    int n = -1;
    SimpleGraph g;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::min(line.find('#'), line.size()));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n) || n < 1) {
                throw InputError("edge list line " + std::to_string(lineno) +
                                 ": expected vertex count");
            }
            g = SimpleGraph(n);
            continue;
        }
        int i = 0, j = 0;
        std::string rest;
        if (!(ls >> i >> j) || (ls >> rest)) {
            throw InputError("edge list line " + std::to_string(lineno) + ": expected 'i j'");
        }
        if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
            throw InputError("edge list line " + std::to_string(lineno) + ": bad pair");
        }
        g.add_edge(i, j);
    }
    if (n < 0) throw InputError("edge list: missing vertex count");
    return g;
}

inline void write_edge_list(std::ostream& out, const SimpleGraph& g) {
    out << g.n() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

/// The constraint subgraph F: m vertices, k edges, maximum degree d.
class SubgraphSpec {
public:
    // Shapes with closed-form homomorphism counts; an edge is the 1-star.
    enum class Shape { General, Star, Triangle };

    SubgraphSpec(int m, std::vector<std::pair<int, int>> edges, std::string name = "custom")
        : m_(m), edges_(std::move(edges)), name_(std::move(name)) {
        validate();
        classify();
    }

    static SubgraphSpec edge() { return {2, {{0, 1}}, "edge"}; }
    static SubgraphSpec star(int k) {
        if (k < 1) throw InputError("star: k must be >= 1");
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= k; ++i) e.emplace_back(0, i);
        return {k + 1, std::move(e), k == 1 ? "edge" : std::to_string(k) + "-star"};
    }
    static SubgraphSpec cycle(int m) {
        if (m < 3) throw InputError("cycle: m must be >= 3");
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
        return {m, std::move(e), m == 3 ? "triangle" : std::to_string(m) + "-cycle"};
    }
    static SubgraphSpec triangle() { return cycle(3); }

    int m() const { return m_; }
    int k() const { return int(edges_.size()); }
    int d() const { return d_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& name() const { return name_; }
    Shape shape() const { return shape_; }
    // Center vertex when shape() == Star.
    int star_center() const { return center_; }

private:
    void validate() {
        if (m_ < 1) throw InputError("subgraph: m must be >= 1");
        if (edges_.empty()) throw InputError("subgraph: needs at least one edge");
        std::vector<std::pair<int, int>> seen;
        for (auto& [a, b] : edges_) {
            if (a < 0 || b < 0 || a >= m_ || b >= m_) {
                throw InputError("subgraph: edge endpoint out of range");
            }
            if (a == b) throw InputError("subgraph: self-loop");
            seen.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw InputError("subgraph: repeated edge");
        }
        std::vector<int> deg(m_, 0);
        for (auto [a, b] : edges_) {
            ++deg[a];
            ++deg[b];
        }
        d_ = *std::max_element(deg.begin(), deg.end());
        deg_ = std::move(deg);
    }

    void classify() {
        const int k = this->k();
        const int isolated = int(std::count(deg_.begin(), deg_.end(), 0));
        if (isolated != 0) return;
        if (m_ == k + 1 && d_ == k) {
            shape_ = Shape::Star;
            center_ = int(std::find(deg_.begin(), deg_.end(), k) - deg_.begin());
            return;
        }
        if (k == 3 && m_ == 3) shape_ = Shape::Triangle;
    }

    int m_;
    std::vector<std::pair<int, int>> edges_;
    std::string name_;
    std::vector<int> deg_;
    int d_ = 0;
    Shape shape_ = Shape::General;
    int center_ = -1;
};

} // namespace bee
