#pragma once

// Homomorphism counts hom(F, G) (all maps V(F) -> V(G) sending edges to
// edges, injective or not) and their exact change under a single edge toggle.
// Densities are hom / n^m, the integral of the block graphon of G.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bee/errors.hpp"
#include "bee/graph.hpp"

namespace bee {

class HomCounter {
public:
    explicit HomCounter(SubgraphSpec F) : F_(std::move(F)) {}

    const SubgraphSpec& subgraph() const { return F_; }

    std::int64_t count(const SimpleGraph& G) const {
        check_size(G);
        switch (F_.shape()) {
        case SubgraphSpec::Shape::Star: {
            std::int64_t s = 0;
            for (int v = 0; v < G.n(); ++v) s += ipow(G.degree(v), F_.k());
            return s;
        }
        case SubgraphSpec::Shape::Triangle: return 6 * triangles(G);
        case SubgraphSpec::Shape::General: break;
        }
        return count_general(G);
    }

    double density(const SimpleGraph& G) const { return double(count(G)) / norm(G.n()); }

    /// hom(F, G + {i,j} toggled) - hom(F, G).
    std::int64_t delta(const SimpleGraph& G, int i, int j) const {
        check_size(G);
        if (i == j) throw InputError("hom delta: i == j");
        const int sign = G.has_edge(i, j) ? -1 : 1;
        switch (F_.shape()) {
        case SubgraphSpec::Shape::Star: {
            const int k = F_.k();
            const int di = G.degree(i), dj = G.degree(j);
            return ipow(di + sign, k) - ipow(di, k) + ipow(dj + sign, k) - ipow(dj, k);
        }
        case SubgraphSpec::Shape::Triangle: return sign * 6 * codegree(G, i, j);
        case SubgraphSpec::Shape::General: break;
        }
        return sign * maps_through_pair(G, i, j);
    }

    double delta_density(const SimpleGraph& G, int i, int j) const {
        return double(delta(G, i, j)) / norm(G.n());
    }

    // Reference path that ignores the closed forms for stars and triangles.
    std::int64_t count_general(const SimpleGraph& G) const {
        return backtrack(G, -1, -1, -1);
    }

    std::int64_t delta_general(const SimpleGraph& G, int i, int j) const {
        return (G.has_edge(i, j) ? -1 : 1) * maps_through_pair(G, i, j);
    }

    double norm(int n) const { return std::pow(double(n), F_.m()); }

private:
    static std::int64_t ipow(std::int64_t b, int e) {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    void check_size(const SimpleGraph& G) const {
        if (double(F_.m()) * std::log2(double(G.n())) >= 62.0) {
            throw ResourceError("hom count n^m overflows 64-bit integers");
        }
    }

    static std::int64_t codegree(const SimpleGraph& G, int i, int j) {
        const std::uint8_t* ri = G.row(i);
        const std::uint8_t* rj = G.row(j);
        std::int64_t c = 0;
        for (int v = 0; v < G.n(); ++v) c += ri[v] & rj[v];
        return c;
    }

    static std::int64_t triangles(const SimpleGraph& G) {
        std::int64_t t = 0;
        for (int a = 0; a < G.n(); ++a) {
            const std::uint8_t* ra = G.row(a);
            for (int b = a + 1; b < G.n(); ++b) {
                if (!ra[b]) continue;
                const std::uint8_t* rb = G.row(b);
                for (int c = b + 1; c < G.n(); ++c) t += ra[c] & rb[c];
            }
        }
        return t;
    }

    // Maps into G+ = G with {i,j} present that send at least one F-edge onto
    // {i,j}: sum over the first F-edge t so mapped and its orientation, with
    // earlier F-edges required to avoid {i,j}.
    std::int64_t maps_through_pair(const SimpleGraph& G, int i, int j) const {
        std::int64_t total = 0;
        for (int t = 0; t < F_.k(); ++t) {
            total += backtrack(G, t, i, j);
            total += backtrack(G, t, j, i);
        }
        return total;
    }

    // Counts maps phi with every F-edge on an edge of G. With t >= 0 the pair
    // {x,y} is forced present, F-edge t is pinned to phi(a_t)=x, phi(b_t)=y,
    // and F-edges with index < t must not land on {x,y}.
    std::int64_t backtrack(const SimpleGraph& G, int t, int x, int y) const {
        const int m = F_.m();
        const auto& E = F_.edges();
        std::vector<std::vector<std::pair<int, int>>> nbr(m);  // (neighbor, edge index)
        for (int e = 0; e < int(E.size()); ++e) {
            nbr[E[e].first].emplace_back(E[e].second, e);
            nbr[E[e].second].emplace_back(E[e].first, e);
        }
        // Assignment order: pinned endpoints first, then BFS so that every
        // later vertex of a component has an already placed neighbour.
        std::vector<int> order;
        std::vector<char> placed(m, 0);
        const auto push = [&](int v) {
            placed[v] = 1;
            order.push_back(v);
        };
        if (t >= 0) {
            push(E[t].first);
            push(E[t].second);
        }
        for (std::size_t head = 0;;) {
            while (head < order.size()) {
                for (auto [w, e] : nbr[order[head]]) if (!placed[w]) push(w);
                ++head;
            }
            int next = -1;
            for (int v = 0; v < m && next < 0; ++v) if (!placed[v]) next = v;
            if (next < 0) break;
            push(next);
        }

        const auto adjacent = [&](int p, int q, int e) {
            if (t >= 0 && ((p == x && q == y) || (p == y && q == x))) return e >= t;
            return p != q && G.has_edge(p, q);
        };

        std::vector<int> phi(m, -1);
        const int start = t >= 0 ? 2 : 0;
        if (t >= 0) {
            phi[E[t].first] = x;
            phi[E[t].second] = y;
        }
        const int n = G.n();
        const auto rec = [&](auto&& self, int depth) -> std::int64_t {
            if (depth == m) return 1;
            const int v = order[depth];
            std::int64_t sum = 0;
            for (int c = 0; c < n; ++c) {
                bool ok = true;
                for (auto [w, e] : nbr[v]) {
                    if (phi[w] >= 0 && !adjacent(c, phi[w], e)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                phi[v] = c;
                sum += self(self, depth + 1);
                phi[v] = -1;
            }
            return sum;
        };
        return rec(rec, start);
    }

    SubgraphSpec F_;
};

/// t(F, G) = hom(F, G) / n^m.
inline double hom_density(const SubgraphSpec& F, const SimpleGraph& G) {
    return HomCounter(F).density(G);
}

/// t(F, h) at the constant graphon h = p.
inline double hom_density_constant(double p, double k) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("hom_density_constant: p outside [0,1]");
    return std::pow(p, k);
}

/// t(F, G with {i,j} toggled) - t(F, G).
inline double hom_delta_on_toggle(const SubgraphSpec& F, const SimpleGraph& G, int i, int j) {
    return HomCounter(F).delta_density(G, i, j);
}

} // namespace bee
