#include "lipeq/signature.hpp"

#include "lipeq/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace lipeq {

namespace {

// Adjacency key: for each ordered vertex pair the sorted multiset of edge
// exponents between them.
using AdjKey = std::map<std::pair<int, int>, std::vector<int>>;

AdjKey adjacency(const GraphDirectedSystem& gds) {
    AdjKey adj;
    for (const auto& e : gds.edges) adj[{e.from, e.to}].push_back(e.ratio_exponent());
    for (auto& [_, exps] : adj) std::sort(exps.begin(), exps.end());
    return adj;
}

// Relabeled flat encoding under perm (perm[old] = new position); vector form
// so candidates compare lexicographically without string churn.
std::vector<int> encode(const GraphDirectedSystem& gds, const AdjKey& adj,
                        const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t old = 0; old < perm.size(); ++old) inv[perm[old]] = static_cast<int>(old);
    std::vector<int> out;
    out.push_back(gds.vertex_count);
    for (int u = 0; u < gds.vertex_count; ++u)
        for (int v = 0; v < gds.vertex_count; ++v) {
            auto it = adj.find({inv[u], inv[v]});
            if (it == adj.end()) continue;
            out.push_back(u);
            out.push_back(v);
            out.push_back(static_cast<int>(it->second.size()));
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
    return out;
}

// Iterated degree/label refinement. Returns a stable color per vertex;
// colors are canonical (derived from invariants only), so sorting cells by
// color is order-independent.
std::vector<int> refine_colors(const GraphDirectedSystem& gds) {
    const int n = gds.vertex_count;
    using Key = std::vector<int>;
    std::vector<Key> keys(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> outs, ins;
        for (const auto& e : gds.edges) {
            if (e.from == v) outs.push_back(e.ratio_exponent());
            if (e.to == v) ins.push_back(e.ratio_exponent());
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        Key k;
        k.push_back(static_cast<int>(outs.size()));
        k.push_back(static_cast<int>(ins.size()));
        k.insert(k.end(), outs.begin(), outs.end());
        k.push_back(-1);
        k.insert(k.end(), ins.begin(), ins.end());
        keys[v] = std::move(k);
    }

    auto assign = [&](const std::vector<Key>& ks) {
        std::vector<Key> sorted(ks);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> color(n);
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), ks[v]) - sorted.begin());
        return color;
    };

    std::vector<int> color = assign(keys);
    for (int round = 0; round < n; ++round) {
        std::vector<Key> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<int, int>> outs, ins;
            for (const auto& e : gds.edges) {
                if (e.from == v) outs.emplace_back(e.ratio_exponent(), color[e.to]);
                if (e.to == v) ins.emplace_back(e.ratio_exponent(), color[e.from]);
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            Key k{color[v], -2};
            for (auto& [x, y] : outs) {
                k.push_back(x);
                k.push_back(y);
            }
            k.push_back(-1);
            for (auto& [x, y] : ins) {
                k.push_back(x);
                k.push_back(y);
            }
            next[v] = std::move(k);
        }
        std::vector<int> refined = assign(next);
        if (refined == color) break;
        color = std::move(refined);
    }
    return color;
}

std::string render(const std::vector<int>& code) {
    std::string s;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(code[i]);
    }
    return s;
}

}  // namespace

CanonicalSignature canonical_signature(const GraphDirectedSystem& gds) {
    const int n = gds.vertex_count;
    AdjKey adj = adjacency(gds);
    std::vector<int> color = refine_colors(gds);

    // Cells in color order; canonical candidates are exactly the orderings
    // that list cell 0 first, cell 1 second, etc.
    std::vector<std::vector<int>> cells;
    int max_color = 0;
    for (int c : color) max_color = std::max(max_color, c);
    cells.resize(max_color + 1);
    for (int v = 0; v < n; ++v) cells[color[v]].push_back(v);

    long long candidates = 1;
    for (const auto& cell : cells) {
        for (std::size_t i = 2; i <= cell.size(); ++i) {
            candidates *= static_cast<long long>(i);
            if (candidates > 40320)
                throw std::runtime_error(
                    "canonical labeling: refinement left cells too large to enumerate");
        }
    }

    std::vector<int> best_perm;
    std::vector<int> best_code;
    std::vector<std::vector<int>> cell_perm(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) cell_perm[c] = cells[c];

    auto consider = [&]() {
        std::vector<int> perm(n);
        int pos = 0;
        for (const auto& cp : cell_perm)
            for (int old : cp) perm[old] = pos++;
        std::vector<int> code = encode(gds, adj, perm);
        if (best_code.empty() || code < best_code) {
            best_code = std::move(code);
            best_perm = std::move(perm);
        }
    };

    auto walk = [&](auto&& self, std::size_t cell_index) -> void {
        if (cell_index == cells.size()) {
            consider();
            return;
        }
        auto& cp = cell_perm[cell_index];
        std::sort(cp.begin(), cp.end());
        do {
            self(self, cell_index + 1);
        } while (std::next_permutation(cp.begin(), cp.end()));
    };
    walk(walk, 0);

    CanonicalSignature sig;
    sig.encoding = render(best_code);
    sig.ordering = std::move(best_perm);
    return sig;
}

std::optional<std::vector<int>> find_isomorphism(const GraphDirectedSystem& a,
                                                 const GraphDirectedSystem& b) {
    if (a.vertex_count != b.vertex_count) return std::nullopt;
    CanonicalSignature sa = canonical_signature(a);
    CanonicalSignature sb = canonical_signature(b);
    if (sa.encoding != sb.encoding) return std::nullopt;
    std::vector<int> b_at_position(b.vertex_count);
    for (int old = 0; old < b.vertex_count; ++old) b_at_position[sb.ordering[old]] = old;
    std::vector<int> out(a.vertex_count);
    for (int old = 0; old < a.vertex_count; ++old) out[old] = b_at_position[sa.ordering[old]];
    return out;
}

std::vector<int> match_edges(const GraphDirectedSystem& a, const GraphDirectedSystem& b,
                             const std::vector<int>& vertex_map) {
    if (static_cast<int>(vertex_map.size()) != a.vertex_count ||
        a.vertex_count != b.vertex_count)
        throw SignatureMismatch("vertex map arity does not match");
    std::vector<bool> seen(b.vertex_count, false);
    for (int v : vertex_map) {
        if (v < 0 || v >= b.vertex_count || seen[v])
            throw SignatureMismatch("vertex map is not a bijection");
        seen[v] = true;
    }

    using ClassKey = std::tuple<int, int, int>;  // (from, to, exponent) in b's labels
    std::map<ClassKey, std::vector<int>> groups_a, groups_b;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const auto& e = a.edges[i];
        groups_a[{vertex_map[e.from], vertex_map[e.to], e.ratio_exponent()}].push_back(
            static_cast<int>(i));
    }
    for (std::size_t i = 0; i < b.edges.size(); ++i) {
        const auto& e = b.edges[i];
        groups_b[{e.from, e.to, e.ratio_exponent()}].push_back(static_cast<int>(i));
    }
    if (groups_a.size() != groups_b.size())
        throw SignatureMismatch("vertex map does not preserve edge classes");

    // Within a class, order deterministically by (word, shift) so repeated
    // runs pair the same edges.
    auto edge_sort = [](const GraphDirectedSystem& g) {
        return [&g](int x, int y) {
            const auto& ex = g.edges[x];
            const auto& ey = g.edges[y];
            return std::tie(ex.via, ex.map.shift) < std::tie(ey.via, ey.map.shift);
        };
    };

    std::vector<int> out(a.edges.size(), -1);
    for (auto& [key, ida] : groups_a) {
        auto it = groups_b.find(key);
        if (it == groups_b.end() || it->second.size() != ida.size())
            throw SignatureMismatch("edge class counts differ under the vertex map");
        auto& idb = it->second;
        std::sort(ida.begin(), ida.end(), edge_sort(a));
        std::sort(idb.begin(), idb.end(), edge_sort(b));
        for (std::size_t i = 0; i < ida.size(); ++i) out[ida[i]] = idb[i];
    }
    return out;
}

}  // namespace lipeq
